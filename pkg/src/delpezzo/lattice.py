"""Exact arithmetic in the Picard lattice of a blow-up of the projective plane.

The lattice for degree d is Z^{10-d} with basis l_0, ..., l_r (r = 9-d) and
diagonal intersection form (+1, -1, ..., -1).  Everything here is pure and
immutable; coefficient vectors are plain int tuples internally.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence


class LatticeMismatchError(ValueError):
    """Operands live in Picard lattices of different degrees."""


def _dot(a: Sequence[int], b: Sequence[int]) -> int:
    s = a[0] * b[0]
    for x, y in zip(a[1:], b[1:]):
        s -= x * y
    return s


@dataclass(frozen=True)
class Lattice:
    """Picard lattice of a degree-d blow-up of P^2 (signature (1, 9-d)).

    The two non-blow-up degree-8 surfaces (P^1 x P^1 and F_2) have a
    different basis and are not represented by this class.
    """

    degree: int

    def __post_init__(self) -> None:
        if not 1 <= self.degree <= 9:
            raise ValueError(f"degree must be in 1..9, got {self.degree}")

    @property
    def rank(self) -> int:
        return 10 - self.degree

    def cls(self, *coeffs: int) -> "DivisorClass":
        return DivisorClass(tuple(coeffs), self.degree)

    def zero(self) -> "DivisorClass":
        return DivisorClass((0,) * self.rank, self.degree)

    def basis(self, i: int) -> "DivisorClass":
        c = [0] * self.rank
        c[i] = 1
        return DivisorClass(tuple(c), self.degree)

    def anticanonical(self) -> "DivisorClass":
        return DivisorClass((3,) + (-1,) * (self.rank - 1), self.degree)


@dataclass(frozen=True)
class DivisorClass:
    """Integer vector in the basis l_0, ..., l_r of Pic, for one degree."""

    coeffs: tuple[int, ...]
    degree: int

    def __post_init__(self) -> None:
        if len(self.coeffs) != 10 - self.degree:
            raise ValueError(
                f"degree {self.degree} needs {10 - self.degree} coefficients, "
                f"got {len(self.coeffs)}"
            )

    @property
    def lattice(self) -> Lattice:
        return Lattice(self.degree)

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        _check(self, other)
        return DivisorClass(
            tuple(a + b for a, b in zip(self.coeffs, other.coeffs)), self.degree
        )

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        _check(self, other)
        return DivisorClass(
            tuple(a - b for a, b in zip(self.coeffs, other.coeffs)), self.degree
        )

    def __mul__(self, n: int) -> "DivisorClass":
        return DivisorClass(tuple(n * a for a in self.coeffs), self.degree)

    __rmul__ = __mul__

    def __neg__(self) -> "DivisorClass":
        return DivisorClass(tuple(-a for a in self.coeffs), self.degree)

    def self_int(self) -> int:
        return _dot(self.coeffs, self.coeffs)

    def k_degree(self) -> int:
        """Pairing with the anticanonical class."""
        return intersect(self, self.lattice.anticanonical())

    def __repr__(self) -> str:
        return f"D{self.coeffs}"


def _check(a: DivisorClass, b: DivisorClass) -> None:
    if a.degree != b.degree:
        raise LatticeMismatchError(
            f"classes from degree {a.degree} and degree {b.degree} lattices"
        )


def intersect(a: DivisorClass, b: DivisorClass) -> int:
    """Intersection number a.b = a0*b0 - sum_{i>=1} ai*bi."""
    _check(a, b)
    return _dot(a.coeffs, b.coeffs)


def anticanonical(ctx: Lattice) -> DivisorClass:
    """The class 3*l_0 - l_1 - ... - l_r; its self-intersection is the degree."""
    return ctx.anticanonical()


def reflect(root: DivisorClass, d: DivisorClass) -> DivisorClass:
    """Weyl reflection of d in a (-2)-class: d + (d.root) * root."""
    _check(root, d)
    if root.self_int() != -2:
        raise ValueError(f"reflection requires a (-2)-class, got {root}")
    m = intersect(root, d)
    return DivisorClass(
        tuple(a + m * r for a, r in zip(d.coeffs, root.coeffs)), d.degree
    )


def _isqrt(n: int) -> int:
    return math.isqrt(n) if n >= 0 else -1


def _solve_vectors(
    rank: int,
    anti: Sequence[int],
    self_int: int,
    k_deg: int,
    ortho: Sequence[Sequence[int]] = (),
) -> Iterator[tuple[int, ...]]:
    """All integer vectors D with D.D = self_int, D.anti = k_deg, D.e = 0.

    anti must have positive self-intersection.  Termination: decompose
    D = (k/deg)*anti + D_perp; the complement of anti is negative definite,
    so |D_perp|^2 = k^2/deg - self_int bounds every coordinate functional by
    Cauchy-Schwarz.  The search is a DFS over coordinates with partial-sum
    pruning on both the quadratic and the linear constraints.
    """
    deg = _dot(anti, anti)
    if deg <= 0:
        raise ValueError("anticanonical vector must have positive square")
    s_num = k_deg * k_deg - self_int * deg  # deg * |D_perp|^2
    if s_num < 0:
        return

    # Exact per-coordinate bounds: for a unit coordinate functional u,
    # |deg*(D.u) - k*(u.anti)| <= sqrt(s_num * t_u) with
    # t_u = (u.anti)^2 - (u.u)*deg.
    lo = [0] * rank
    hi = [0] * rank
    for i in range(rank):
        ua = anti[i] if i == 0 else -anti[i]  # (basis_i . anti)
        uu = 1 if i == 0 else -1
        t_u = ua * ua - uu * deg
        bound = _isqrt(s_num * t_u)
        # deg*(D.u) in [k*ua - bound, k*ua + bound]; coefficient a_i = (D.u)
        # for i = 0 and a_i = -(D.u) for i >= 1.
        vlo = -(-(k_deg * ua - bound) // deg)  # ceil
        vhi = (k_deg * ua + bound) // deg  # floor
        if i == 0:
            lo[i], hi[i] = vlo, vhi
        else:
            lo[i], hi[i] = -vhi, -vlo

    ortho = [tuple(e) for e in ortho]
    coeffs = [0] * rank

    # Remaining-range tables for the linear constraints.
    def lin_tables(vec: Sequence[int]) -> tuple[list[int], list[int]]:
        # partial contribution of coordinates >= i to vec-pairing
        lo_t = [0] * (rank + 1)
        hi_t = [0] * (rank + 1)
        for i in range(rank - 1, -1, -1):
            g = vec[i] if i == 0 else -vec[i]
            opts = (g * lo[i], g * hi[i])
            lo_t[i] = lo_t[i + 1] + min(opts)
            hi_t[i] = hi_t[i + 1] + max(opts)
        return lo_t, hi_t

    anti_lo, anti_hi = lin_tables(anti)
    ortho_tabs = [lin_tables(e) for e in ortho]

    def rec(i: int, quad: int, lin_anti: int, lin_ortho: list[int]) -> Iterator[tuple[int, ...]]:
        if i == rank:
            if quad == self_int and lin_anti == k_deg and all(v == 0 for v in lin_ortho):
                yield tuple(coeffs)
            return
        # quadratic prune: remaining coordinates only subtract (i >= 1)
        if i >= 1 and quad < self_int:
            return
        for v in range(lo[i], hi[i] + 1):
            coeffs[i] = v
            q = quad + (v * v if i == 0 else -v * v)
            ga = anti[i] if i == 0 else -anti[i]
            la = lin_anti + ga * v
            if not (la + anti_lo[i + 1] <= k_deg <= la + anti_hi[i + 1]):
                continue
            lo_list = []
            ok = True
            for j, e in enumerate(ortho):
                ge = e[i] if i == 0 else -e[i]
                le = lin_ortho[j] + ge * v
                lo_t, hi_t = ortho_tabs[j]
                if not (le + lo_t[i + 1] <= 0 <= le + hi_t[i + 1]):
                    ok = False
                    break
                lo_list.append(le)
            if ok:
                yield from rec(i + 1, q, la, lo_list)
        coeffs[i] = 0

    yield from rec(0, 0, 0, [0] * len(ortho))


_SUPPORTED = {(-2, 0), (-1, 1)}


def enumerate_classes(ctx: Lattice, self_int: int, k_degree: int) -> frozenset[DivisorClass]:
    """All classes with given self-intersection and pairing against -K.

    Supported: (-2, 0) (roots of R_d) and (-1, 1) ((-1)-classes).
    """
    if (self_int, k_degree) not in _SUPPORTED:
        raise ValueError(f"unsupported (self_int, k_degree) = {(self_int, k_degree)}")
    anti = ctx.anticanonical().coeffs
    return frozenset(
        DivisorClass(v, ctx.degree)
        for v in _solve_vectors(ctx.rank, anti, self_int, k_degree)
    )


def neg1_curves(ctx: Lattice, twos: Iterable[DivisorClass]) -> frozenset[DivisorClass]:
    """Classes of (-1)-curves on the surface with the given (-2)-curves.

    Filters the (-1)-classes by non-negative pairing with every element of
    twos, which must consist of (-2, 0)-classes.
    """
    twos = list(twos)
    for t in twos:
        if t.self_int() != -2 or t.k_degree() != 0:
            raise ValueError(f"{t} is not a (-2)-class orthogonal to -K")
    return frozenset(
        d
        for d in enumerate_classes(ctx, -1, 1)
        if all(intersect(d, t) >= 0 for t in twos)
    )


def sort_classes(classes: Iterable[DivisorClass]) -> list[DivisorClass]:
    """Deterministic ordering used everywhere classes are listed."""
    return sorted(classes, key=lambda d: d.coeffs)
