"""Counting monomials in graded generator sets.

The central quantity is the number of ways to write a class D as a
non-negative integral combination of generator degrees D_1, ..., D_t.
Termination of that count needs a functional w with (w, D_i) >= 1 for all i,
which exists because the effective cone is strictly convex; we find one by
exact rational linear programming (a phase-1 simplex over Fractions).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterator, Sequence

from .lattice import DivisorClass, Lattice, _dot


def euler_char(d: DivisorClass) -> int:
    """chi(O(D)) = ((D,D) + (D,-K))/2 + 1; integral on these lattices."""
    num = d.self_int() + d.k_degree()
    if num % 2:
        raise ArithmeticError(f"odd (D,D)+(D,-K) for {d}; corrupted class")
    return num // 2 + 1


def _form_row(d: Sequence[int]) -> tuple[int, ...]:
    """Coefficients of w -> (w, d) as a linear functional in w's coordinates."""
    return (d[0],) + tuple(-x for x in d[1:])


def _phase1_feasible(rows: list[list[Fraction]]) -> list[Fraction] | None:
    """Feasible point of {x : sum_j a_ij x_j >= b_i} by exact phase-1 simplex.

    rows are [a_1, ..., a_n, b] with b > 0.  Free variables are split into
    positive parts, surplus variables bring the system to equality form, and
    one artificial variable per row gives the starting basis; Bland's rule
    guarantees termination.
    """
    m = len(rows)
    n = len(rows[0]) - 1
    # columns: x+ (n), x- (n), surplus (m), artificial (m)
    ncols = 2 * n + 2 * m
    tab = []
    for i, r in enumerate(rows):
        row = [Fraction(0)] * (ncols + 1)
        for j in range(n):
            row[j] = r[j]
            row[n + j] = -r[j]
        row[2 * n + i] = Fraction(-1)
        row[2 * n + m + i] = Fraction(1)
        row[-1] = r[-1]
        tab.append(row)
    basis = [2 * n + m + i for i in range(m)]
    # objective: minimize the sum of artificial variables; expressed through
    # the basic rows, the reduced cost vector starts as -sum of rows
    obj = [Fraction(0)] * (ncols + 1)
    for row in tab:
        for j in range(ncols + 1):
            obj[j] -= row[j]
    for k in range(2 * n + m, ncols):  # basic artificials have reduced cost 0
        obj[k] = Fraction(0)

    while True:
        enter = next(
            (j for j in range(ncols) if obj[j] < 0),  # Bland: smallest index
            None,
        )
        if enter is None:
            break
        ratios = [
            (tab[i][-1] / tab[i][enter], basis[i], i)
            for i in range(m)
            if tab[i][enter] > 0
        ]
        if not ratios:
            return None  # unbounded phase-1 cannot happen, but be safe
        _, _, piv = min(ratios)
        prow = tab[piv]
        inv = Fraction(1) / prow[enter]
        tab[piv] = [v * inv for v in prow]
        prow = tab[piv]
        for i in range(m):
            if i != piv and tab[i][enter]:
                f = tab[i][enter]
                tab[i] = [a - f * b for a, b in zip(tab[i], prow)]
        if obj[enter]:
            f = obj[enter]
            obj = [a - f * b for a, b in zip(obj, prow)]
        basis[piv] = enter

    if -obj[-1] != 0:  # residual artificial mass: infeasible
        return None
    x = [Fraction(0)] * n
    for i, b in enumerate(basis):
        if b < n:
            x[b] += tab[i][-1]
        elif b < 2 * n:
            x[b - n] -= tab[i][-1]
    return x


def positive_functional(degrees: Sequence[DivisorClass]) -> tuple[int, ...]:
    """Integer vector w with (w, D_i) >= 1 for every degree D_i.

    Solved exactly; raises ValueError when infeasible (the degrees then do
    not lie in a strictly convex cone, e.g. contain D and -D).
    """
    degrees = list(degrees)
    if not degrees:
        return ()
    n = len(degrees[0].coeffs)
    rows = [
        [Fraction(c) for c in _form_row(d.coeffs)] + [Fraction(1)] for d in degrees
    ]
    sol = _phase1_feasible(rows)
    if sol is None:
        raise ValueError("no positive functional exists for these degrees")
    scale = 1
    for v in sol:
        scale = scale * v.denominator // _gcd(scale, v.denominator)
    w = tuple(int(v * scale) for v in sol)
    # scaling by >= 1 preserves the constraints: (w, D_i) >= scale >= 1
    assert all(_dot(w, d.coeffs) >= 1 for d in degrees)
    return w


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


class CombinationCounter:
    """Counts/enumerates non-negative integral combinations of fixed degrees."""

    def __init__(self, degrees: Sequence[DivisorClass]):
        self.degrees = list(degrees)
        self.n = len(degrees[0].coeffs) if degrees else 0
        self._w = positive_functional(self.degrees)
        self._weights = [self._pair_w(d.coeffs) for d in self.degrees]
        # heavy degrees first: fewer branches at the top of the DFS
        self._order = sorted(
            range(len(self.degrees)), key=lambda i: -self._weights[i]
        )

    def _pair_w(self, coeffs: Sequence[int]) -> int:
        return _dot(self._w, coeffs)

    def count(self, target: DivisorClass) -> int:
        return sum(1 for _ in self.iter_combinations(target))

    def iter_combinations(self, target: DivisorClass) -> Iterator[tuple[int, ...]]:
        """Yield exponent vectors n with sum n_i * D_i = target."""
        if not self.degrees:
            if all(c == 0 for c in target.coeffs):
                yield ()
            return
        order = self._order
        degs = [self.degrees[i].coeffs for i in order]
        wts = [self._weights[i] for i in order]
        t = len(degs)
        expo = [0] * t

        def rec(i: int, rest: list[int], budget: int) -> Iterator[tuple[int, ...]]:
            if budget < 0:
                return
            if i == t:
                if all(c == 0 for c in rest):
                    out = [0] * t
                    for k, e in zip(order, expo):
                        out[k] = e
                    yield tuple(out)
                return
            d = degs[i]
            top = budget // wts[i]
            if i == t - 1:
                # last variable: solve directly
                k = _exact_multiple(rest, d, top)
                if k is not None:
                    expo[i] = k
                    yield from rec(t, [r - k * c for r, c in zip(rest, d)], budget - k * wts[i])
                    expo[i] = 0
                return
            for k in range(top + 1):
                expo[i] = k
                yield from rec(
                    i + 1,
                    [r - k * c for r, c in zip(rest, d)],
                    budget - k * wts[i],
                )
            expo[i] = 0

        budget = self._pair_w(target.coeffs)
        yield from rec(0, list(target.coeffs), budget)


def _exact_multiple(rest: Sequence[int], d: Sequence[int], top: int) -> int | None:
    """k in [0, top] with rest == k*d, if any."""
    k = None
    for r, c in zip(rest, d):
        if c == 0:
            if r != 0:
                return None
        else:
            if r % c:
                return None
            kk = r // c
            if k is None:
                k = kk
            elif k != kk:
                return None
    if k is None:  # d == 0 cannot happen for generator degrees
        return 0 if all(r == 0 for r in rest) else None
    if k < 0 or k > top:
        return None
    return k


def count_combinations(target: DivisorClass, degrees: Sequence[DivisorClass]) -> int:
    """Number of ways to express target as sum n_i * degrees_i, n_i >= 0."""
    if all(c == 0 for c in target.coeffs):
        return 1
    return CombinationCounter(degrees).count(target)
