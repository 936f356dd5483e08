"""Anticanonical models: ambient spaces, singular points, birational maps."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .poly import ArityMismatchError, MultiPoly


class PointStatus(str, enum.Enum):
    SINGULAR = "singular"
    SMOOTH = "smooth"
    NOT_ON_SURFACE = "not_on_surface"


class UnsupportedChartError(ValueError):
    """The point has no nonzero coordinate of weight 1."""


@dataclass(frozen=True)
class AmbientSpace:
    """P^d (all weights 1) or the weighted spaces P(2,1,1,1), P(3,2,1,1)."""

    weights: tuple[int, ...]

    @classmethod
    def projective(cls, dim: int) -> "AmbientSpace":
        if dim < 3:
            raise ValueError("anticanonical models use P^d only for d >= 3")
        return cls((1,) * (dim + 1))

    @classmethod
    def weighted(cls, weights: Sequence[int]) -> "AmbientSpace":
        w = tuple(weights)
        if w not in ((2, 1, 1, 1), (3, 2, 1, 1)):
            raise ValueError(f"unsupported weight vector {w}")
        return cls(w)

    @classmethod
    def for_degree(cls, degree: int) -> "AmbientSpace":
        if degree >= 3:
            return cls.projective(degree)
        if degree == 2:
            return cls.weighted((2, 1, 1, 1))
        if degree == 1:
            return cls.weighted((3, 2, 1, 1))
        raise ValueError(f"no anticanonical model space for degree {degree}")

    @property
    def ncoords(self) -> int:
        return len(self.weights)

    @property
    def is_weighted(self) -> bool:
        return any(w != 1 for w in self.weights)

    @property
    def surface_codim(self) -> int:
        return self.ncoords - 3

    def __str__(self) -> str:
        if not self.is_weighted:
            return f"P{self.ncoords - 1}"
        return "P(" + ",".join(map(str, self.weights)) + ")"


def weighted_degree(p: MultiPoly, space: AmbientSpace) -> int | None:
    """Common weighted degree of the monomials of p, None if mixed."""
    found = None
    for m in p.terms:
        d = sum(e * w for e, w in zip(m, space.weights))
        if found is None:
            found = d
        elif found != d:
            return None
    return found


def _dehomogenize_point(
    point: Sequence[int | Fraction], space: AmbientSpace
) -> tuple[int, list[Fraction]]:
    """Chart index j (weight 1, coordinate nonzero) and the affine point.

    Rescaling by lambda = point[j]^-1 acts as x_i -> x_i / lambda^{w_i},
    which is a legitimate chart of the weighted space since w_j = 1.
    """
    j = None
    for i, (w, c) in enumerate(zip(space.weights, point)):
        if w == 1 and c != 0:
            j = i
            break
    if j is None:
        raise UnsupportedChartError(
            f"point {tuple(point)} has no nonzero weight-1 coordinate"
        )
    lam = Fraction(point[j])
    affine = [Fraction(c) / lam ** w for c, w in zip(point, space.weights)]
    return j, affine


def _matrix_rank(rows: list[list[Fraction]]) -> int:
    m = [row[:] for row in rows if any(row)]
    rank = 0
    cols = len(m[0]) if m else 0
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
        rank += 1
        if r == len(m):
            break
    return rank


def singular_point_check(
    equations: Sequence[MultiPoly],
    point: Sequence[int | Fraction],
    space: AmbientSpace,
) -> PointStatus:
    """Classify a point of the ambient space against the surface equations.

    Works in an affine chart around a nonzero weight-1 coordinate; the point
    is singular exactly when all equations vanish and the Jacobian drops
    below the codimension of the surface.
    """
    if any(p.arity != space.ncoords for p in equations):
        raise ArityMismatchError("equation arity does not match the ambient space")
    j, affine = _dehomogenize_point(point, space)
    if any(f.evaluate(affine) != 0 for f in equations):
        return PointStatus.NOT_ON_SURFACE
    rows = []
    for f in equations:
        rows.append(
            [f.derivative(i).evaluate(affine) for i in range(space.ncoords) if i != j]
        )
    rank = _matrix_rank(rows)
    expected = space.surface_codim
    if rank > expected:
        raise ArithmeticError("Jacobian rank exceeds the surface codimension")
    return PointStatus.SINGULAR if rank < expected else PointStatus.SMOOTH


@dataclass(frozen=True)
class RationalMap:
    """Map between (weighted) projective spaces, one polynomial per target coordinate."""

    source: AmbientSpace
    target: AmbientSpace
    components: tuple[MultiPoly, ...]

    def __post_init__(self):
        if len(self.components) != self.target.ncoords:
            raise ValueError("one component per target coordinate required")
        for p in self.components:
            if not p.is_zero() and p.arity != self.source.ncoords:
                raise ArityMismatchError("component arity mismatch")

    def compose(self, inner: Sequence[MultiPoly]) -> list[MultiPoly]:
        """Substitute polynomials for the source coordinates."""
        return [p.substitute(list(inner)) for p in self.components]


def proportional(
    left: Sequence[MultiPoly], right: Sequence[MultiPoly]
) -> bool:
    """Whether two coordinate tuples agree projectively: l_i r_j == l_j r_i."""
    n = len(left)
    if n != len(right):
        return False
    for i, j in combinations(range(n), 2):
        if left[i] * right[j] != left[j] * right[i]:
            return False
    return True


def linear_system_has_solution(
    equations: Sequence[MultiPoly], ncoords: int
) -> bool:
    """Whether linear forms have a common nonzero solution (projective point)."""
    rows = []
    for f in equations:
        row = [Fraction(0)] * ncoords
        for m, c in f.terms.items():
            if sum(m) != 1:
                raise ValueError("only linear forms supported")
            row[m.index(1)] = c
        rows.append(row)
    return _matrix_rank(rows) < ncoords
