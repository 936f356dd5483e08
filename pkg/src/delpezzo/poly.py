"""Exact multivariate polynomial arithmetic over the rationals.

Monomials are exponent tuples of fixed arity, coefficients are Fractions,
and the canonical form never stores zeros.  The module also provides
division by a single polynomial (exact quotient or certified
non-membership), a small Buchberger completion for ideal-membership of the
catalog's curve ideals, and Pic-graded degree computation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .lattice import DivisorClass


class ArityMismatchError(ValueError):
    pass


class GroebnerResourceError(RuntimeError):
    """Buchberger completion exceeded its hard caps."""


def _grlex_key(m: tuple[int, ...]) -> tuple:
    return (sum(m), m)


class MultiPoly:
    """Immutable multivariate polynomial with Fraction coefficients."""

    __slots__ = ("arity", "terms", "_hash")

    def __init__(self, arity: int, terms: Mapping[tuple[int, ...], Fraction] | None = None):
        self.arity = arity
        clean: dict[tuple[int, ...], Fraction] = {}
        if terms:
            for m, c in terms.items():
                if len(m) != arity:
                    raise ArityMismatchError(f"monomial {m} has arity != {arity}")
                c = Fraction(c)
                if c:
                    clean[m] = c
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, *a):  # immutability guard
        if a[0] in ("arity", "terms", "_hash") and not hasattr(self, "_hash"):
            object.__setattr__(self, *a)
        else:
            raise AttributeError("MultiPoly is immutable")

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, arity: int) -> "MultiPoly":
        return cls(arity, {})

    @classmethod
    def constant(cls, arity: int, c) -> "MultiPoly":
        return cls(arity, {(0,) * arity: Fraction(c)})

    @classmethod
    def variable(cls, arity: int, i: int) -> "MultiPoly":
        m = [0] * arity
        m[i] = 1
        return cls(arity, {tuple(m): Fraction(1)})

    @classmethod
    def monomial(cls, arity: int, expo: Sequence[int], c=1) -> "MultiPoly":
        return cls(arity, {tuple(expo): Fraction(c)})

    @classmethod
    def variables(cls, arity: int) -> list["MultiPoly"]:
        return [cls.variable(arity, i) for i in range(arity)]

    # -- ring operations -------------------------------------------------------

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.arity != self.arity:
                raise ArityMismatchError(
                    f"arity {self.arity} vs {other.arity}"
                )
            return other
        return MultiPoly.constant(self.arity, other)

    def __add__(self, other) -> "MultiPoly":
        other = self._coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, Fraction(0)) + c
        return MultiPoly(self.arity, out)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.arity, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "MultiPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "MultiPoly":
        return (-self) + other

    def __mul__(self, other) -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            c = Fraction(other)
            return MultiPoly(self.arity, {m: v * c for m, v in self.terms.items()})
        other = self._coerce(other)
        out: dict[tuple[int, ...], Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                v = out.get(m)
                out[m] = c1 * c2 if v is None else v + c1 * c2
        return MultiPoly(self.arity, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "MultiPoly":
        if n < 0:
            raise ValueError("negative power")
        out = MultiPoly.constant(self.arity, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.constant(self.arity, other)
        return (
            isinstance(other, MultiPoly)
            and self.arity == other.arity
            and self.terms == other.terms
        )

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(
                self, "_hash", hash((self.arity, frozenset(self.terms.items())))
            )
        return self._hash

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -- queries ---------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def leading(self) -> tuple[tuple[int, ...], Fraction]:
        """Leading monomial and coefficient under graded-lex order."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        m = max(self.terms, key=_grlex_key)
        return m, self.terms[m]

    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=0)

    def substitute(self, values: Sequence["MultiPoly"]) -> "MultiPoly":
        """Full substitution of every variable by a polynomial."""
        if len(values) != self.arity:
            raise ArityMismatchError("one value per variable required")
        if not values:
            raise ArityMismatchError("cannot substitute in arity-0 polynomial")
        out_arity = values[0].arity
        out = MultiPoly.zero(out_arity)
        pow_cache: dict[tuple[int, int], MultiPoly] = {}

        def power(i: int, e: int) -> MultiPoly:
            key = (i, e)
            p = pow_cache.get(key)
            if p is None:
                p = values[i] ** e
                pow_cache[key] = p
            return p

        for m, c in self.terms.items():
            term = MultiPoly.constant(out_arity, c)
            for i, e in enumerate(m):
                if e:
                    term = term * power(i, e)
            out = out + term
        return out

    def evaluate(self, point: Sequence[Fraction]) -> Fraction:
        if len(point) != self.arity:
            raise ArityMismatchError("one coordinate per variable required")
        total = Fraction(0)
        for m, c in self.terms.items():
            v = c
            for x, e in zip(point, m):
                if e:
                    v *= Fraction(x) ** e
            total += v
        return total

    def derivative(self, i: int) -> "MultiPoly":
        out: dict[tuple[int, ...], Fraction] = {}
        for m, c in self.terms.items():
            if m[i]:
                mm = list(m)
                mm[i] -= 1
                out[tuple(mm)] = c * m[i]
        return MultiPoly(self.arity, out)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for m in sorted(self.terms, key=_grlex_key, reverse=True):
            c = self.terms[m]
            mono = "*".join(
                f"x{i}" + (f"^{e}" if e > 1 else "")
                for i, e in enumerate(m)
                if e
            )
            bits.append(f"{c}" + (f"*{mono}" if mono else ""))
        return " + ".join(bits)


def _mono_divides(a: tuple[int, ...], b: tuple[int, ...]) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _mono_div(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(x - y for x, y in zip(a, b))


def _mono_lcm(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(max(x, y) for x, y in zip(a, b))


def exact_divide(f: MultiPoly, r: MultiPoly) -> MultiPoly | None:
    """Quotient q with f = q*r, or None when f is not a multiple of r.

    Multivariate division under graded-lex; a single polynomial is a
    Groebner basis of the principal ideal it generates, so a zero remainder
    is equivalent to membership.
    """
    if r.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if f.arity != r.arity:
        raise ArityMismatchError("arity mismatch in division")
    lm, lc = r.leading()
    q: dict[tuple[int, ...], Fraction] = {}
    work = f
    while not work.is_zero():
        m, c = work.leading()
        if not _mono_divides(lm, m):
            return None
        qm = _mono_div(m, lm)
        qc = c / lc
        q[qm] = q.get(qm, Fraction(0)) + qc
        work = work - MultiPoly.monomial(f.arity, qm, qc) * r
    return MultiPoly(f.arity, q)


def _reduce(f: MultiPoly, basis: list[MultiPoly]) -> MultiPoly:
    """Full reduction of f modulo the basis (top-reduction loop)."""
    arity = f.arity
    remainder: dict[tuple[int, ...], Fraction] = {}
    work = f
    leads = [g.leading() for g in basis]
    while not work.is_zero():
        m, c = work.leading()
        for g, (lm, lc) in zip(basis, leads):
            if _mono_divides(lm, m):
                work = work - MultiPoly.monomial(arity, _mono_div(m, lm), c / lc) * g
                break
        else:
            remainder[m] = remainder.get(m, Fraction(0)) + c
            work = work - MultiPoly.monomial(arity, m, c)
    return MultiPoly(arity, remainder)


def groebner_reduce(
    f: MultiPoly,
    gens: Sequence[MultiPoly],
    max_basis: int = 160,
    max_degree: int = 24,
) -> MultiPoly:
    """Remainder of f after full reduction by a Groebner basis of (gens).

    Zero remainder is equivalent to ideal membership.  The completion is a
    plain Buchberger loop with the lcm criterion, adequate for the small
    curve ideals this package verifies; caps guard against runaway input.
    """
    basis = [g for g in gens if not g.is_zero()]
    if not basis:
        raise ValueError("need at least one nonzero generator")
    if any(g.arity != f.arity for g in basis):
        raise ArityMismatchError("arity mismatch in groebner_reduce")
    pairs = [(i, j) for i in range(len(basis)) for j in range(i + 1, len(basis))]
    while pairs:
        i, j = pairs.pop(0)
        lmi, lci = basis[i].leading()
        lmj, lcj = basis[j].leading()
        lcm = _mono_lcm(lmi, lmj)
        if lcm == tuple(a + b for a, b in zip(lmi, lmj)):
            continue  # coprime leading monomials: S-poly reduces to zero
        s = (
            MultiPoly.monomial(f.arity, _mono_div(lcm, lmi), Fraction(1) / lci) * basis[i]
            - MultiPoly.monomial(f.arity, _mono_div(lcm, lmj), Fraction(1) / lcj)
            * basis[j]
        )
        rem = _reduce(s, basis)
        if rem.is_zero():
            continue
        if rem.total_degree() > max_degree or len(basis) >= max_basis:
            raise GroebnerResourceError(
                f"basis size {len(basis)}, degree {rem.total_degree()}"
            )
        basis.append(rem)
        k = len(basis) - 1
        pairs.extend((i2, k) for i2 in range(k))
    return _reduce(f, basis)


@dataclass(frozen=True)
class GradedRing:
    """Polynomial ring whose variables carry Pic degrees."""

    variable_degrees: tuple[DivisorClass, ...]

    @property
    def arity(self) -> int:
        return len(self.variable_degrees)


def graded_degree(p: MultiPoly, ring: GradedRing) -> DivisorClass | None:
    """Common Pic degree of all monomials of p, or None when inhomogeneous.

    The zero polynomial and constants have the zero class.
    """
    if p.arity != ring.arity:
        raise ArityMismatchError("polynomial arity does not match the graded ring")
    degs = ring.variable_degrees
    zero = DivisorClass((0,) * len(degs[0].coeffs), degs[0].degree) if degs else None
    found: DivisorClass | None = None
    if not p.terms:
        return zero
    for m in p.terms:
        d = zero
        for e, g in zip(m, degs):
            if e:
                d = d + e * g
        if found is None:
            found = d
        elif found != d:
            return None
    return found


def monomial_degree(expo: Sequence[int], ring: GradedRing) -> DivisorClass:
    degs = ring.variable_degrees
    d = DivisorClass((0,) * len(degs[0].coeffs), degs[0].degree)
    for e, g in zip(expo, degs):
        if e:
            d = d + e * g
    return d
