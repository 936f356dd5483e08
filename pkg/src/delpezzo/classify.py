"""Classification of Cox rings: toric, one relation, or at least two relations.

The decision procedure walks contractions of (-1)-curves up to degree 9,
carrying generator degrees back down: every generator degree is a negative
curve, the anticanonical class (at most twice), or the pullback of a nef
generator degree from a contraction.  Dimension counting against the Euler
characteristic then fixes the generator multiplicities and the relation
degree.

Contractions are represented inside the ambient lattice: contracting a
(-1)-class e moves to the sublattice orthogonal to e with anticanonical
class -K + e, so pullbacks of candidate degrees are literal vector
identities and no change of basis is ever needed.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from functools import cached_property

from . import dynkin
from .counting import CombinationCounter
from .enumeration import SurfaceType, make_type
from .lattice import DivisorClass, _solve_vectors, intersect, sort_classes


class Verdict(str, enum.Enum):
    TORIC = "toric"
    ONE_RELATION = "one_relation"
    MULTI_RELATION = "multi_relation"


class MultiReason(str, enum.Enum):
    TOO_MANY_NEGATIVE_CURVES = "too_many_negative_curves"
    CONTRACTION_ARGUMENT = "contraction_argument"
    COUNTING_SURPLUS = "counting_surplus"


class InconclusiveError(RuntimeError):
    """The counting scan hit its bound without settling the classification."""


@dataclass(frozen=True)
class CoxPresentation:
    """Generator degrees (negative curves first, then nef) and relation data."""

    generator_degrees: tuple[DivisorClass, ...]
    relation_degree: DivisorClass | None = None
    relation_monomials: tuple[tuple[int, ...], ...] = ()


@dataclass(frozen=True)
class Classification:
    verdict: Verdict
    presentation: CoxPresentation | None = None
    reason: MultiReason | None = None
    #: chain of contracted-type invariants justifying a contraction argument
    contraction_witness: tuple[tuple[int, str, int], ...] = ()
    #: True for degree-1 inputs, where the generator-degree recursion is
    #: applied beyond its proven range and results lean on the verified models
    assumption_dependent: bool = False


@dataclass(frozen=True)
class _Result:
    kind: Verdict
    neg: tuple[DivisorClass, ...] = ()
    nef: tuple[DivisorClass, ...] = ()
    rel: DivisorClass | None = None
    reason: MultiReason | None = None
    witness: tuple[tuple[int, str, int], ...] = ()

    @property
    def gens(self) -> tuple[DivisorClass, ...]:
        return self.neg + self.nef


class _Surface:
    """A surface in the contraction tree, embedded in the ambient lattice."""

    def __init__(
        self,
        ambient_degree: int,
        anti: DivisorClass,
        twos: tuple[DivisorClass, ...],
        ortho: frozenset[DivisorClass],
    ):
        self.ambient_degree = ambient_degree
        self.anti = anti
        self.twos = twos
        self.ortho = ortho
        self.degree = anti.self_int()
        self.rank = 10 - ambient_degree - len(ortho)

    @property
    def key(self):
        return (self.anti, frozenset(self.twos), self.ortho)

    @cached_property
    def neg1s(self) -> tuple[DivisorClass, ...]:
        return self._classes(-1, 1, twos_filter=True)

    def _classes(self, self_int: int, k_deg: int, twos_filter: bool) -> tuple[DivisorClass, ...]:
        n = 10 - self.ambient_degree
        ortho = [e.coeffs for e in self.ortho]
        out = [
            DivisorClass(v, self.ambient_degree)
            for v in _solve_vectors(n, self.anti.coeffs, self_int, k_deg, ortho)
        ]
        if twos_filter:
            out = [d for d in out if all(intersect(d, c) >= 0 for c in self.twos)]
        return tuple(sort_classes(out))

    @cached_property
    def invariant(self) -> tuple[int, str, int]:
        return (self.degree, dynkin.format_ade(dynkin.ade_multiset(self.twos)), len(self.neg1s))

    def chi(self, d: DivisorClass) -> int:
        num = d.self_int() + intersect(d, self.anti)
        if num % 2:
            raise ArithmeticError(f"non-integral Euler characteristic for {d}")
        return num // 2 + 1

    def contract(self, e: DivisorClass) -> "_Surface":
        return _Surface(
            self.ambient_degree,
            self.anti + e,
            tuple(c for c in self.twos if intersect(c, e) == 0),
            self.ortho | {e},
        )


class Classifier:
    """Memoizing classification engine.

    All state is insert-only memoization of pure results, so a shared
    instance may be used from several workers.
    """

    def __init__(self, scan_bound: int = 9):
        self.scan_bound = scan_bound
        self._results: dict = {}
        self._verdicts: dict = {}
        self._counters: dict = {}

    # -- counting helpers ---------------------------------------------------

    def _counter(self, gens: tuple[DivisorClass, ...]) -> CombinationCounter:
        c = self._counters.get(gens)
        if c is None:
            c = CombinationCounter(list(gens))
            self._counters[gens] = c
        return c

    def _count(self, gens: tuple[DivisorClass, ...], target: DivisorClass) -> int:
        if all(c == 0 for c in target.coeffs):
            return 1
        return self._counter(gens).count(target)

    # -- candidate ordering -------------------------------------------------

    def _order_candidates(self, s: _Surface, cands: set[DivisorClass]) -> list[DivisorClass]:
        """Sort candidates compatibly with the effective-cone partial order.

        Primary key is the pairing with -K; within a tie the difference of
        two comparable classes is a sum of (-2)-classes, so a topological
        sort against expressibility in the twos breaks the tie, then lex.
        """
        by_pair: dict[int, list[DivisorClass]] = {}
        for d in cands:
            p = intersect(d, s.anti)
            if p <= self.scan_bound:
                by_pair.setdefault(p, []).append(d)
        out: list[DivisorClass] = []
        for p in sorted(by_pair):
            batch = sort_classes(by_pair[p])
            if len(batch) > 1 and s.twos:
                batch = self._topo_batch(s, batch)
            out.extend(batch)
        return out

    def _topo_batch(self, s: _Surface, batch: list[DivisorClass]) -> list[DivisorClass]:
        twos = tuple(s.twos)
        n = len(batch)
        after: dict[int, set[int]] = {i: set() for i in range(n)}
        for i, j in itertools.permutations(range(n), 2):
            diff = batch[j] - batch[i]
            if any(c != 0 for c in diff.coeffs) and self._count(twos, diff) > 0:
                after[j].add(i)  # i must come before j
        out = []
        done: set[int] = set()
        while len(done) < n:
            ready = sorted(
                (i for i in range(n) if i not in done and after[i] <= done),
                key=lambda i: batch[i].coeffs,
            )
            if not ready:  # cycles cannot happen for a strict partial order
                raise RuntimeError("candidate ordering failed")
            out.append(batch[ready[0]])
            done.add(ready[0])
        return out

    # -- relation-degree search ----------------------------------------------

    def _find_relation_degree(
        self,
        s: _Surface,
        gens: tuple[DivisorClass, ...],
        target: DivisorClass,
        scanned: list[DivisorClass],
    ) -> DivisorClass | None:
        """Smallest effective degree whose single relation explains all counts."""
        counter = self._counter(gens)
        subsums: set[DivisorClass] = set()
        zero = DivisorClass((0,) * len(target.coeffs), target.degree)
        for combo in counter.iter_combinations(target):
            ranges = [range(k + 1) for k in combo]
            for sub in itertools.product(*ranges):
                if not any(sub):
                    continue
                vec = zero
                for k, g in zip(sub, gens):
                    if k:
                        vec = vec + k * g
                subsums.add(vec)
        ordered = sorted(
            subsums, key=lambda d: (intersect(d, s.anti), d.coeffs)
        )
        chi_t = s.chi(target)
        cnt_t = self._count(gens, target)
        negcurves = tuple(s.twos) + tuple(s.neg1s)
        for d0 in ordered:
            # a relation lives in a nef degree with at least two monomials:
            # a single monomial cannot vanish in the integral Cox ring, and a
            # non-nef degree would make the relation divisible by a generator
            if any(intersect(d0, c) < 0 for c in negcurves):
                continue
            if self._count(gens, d0) < 2:
                continue
            if cnt_t - self._count(gens, target - d0) > chi_t:
                continue
            ok = True
            for dp in scanned:
                if self._count(gens, dp) - self._count(gens, dp - d0) != s.chi(dp):
                    ok = False
                    break
            if ok:
                return d0
        return None

    # -- main recursion -------------------------------------------------------

    def classify_surface(self, s: _Surface) -> _Result:
        key = s.key
        hit = self._results.get(key)
        if hit is not None:
            return hit
        res = self._classify(s)
        self._results[key] = res
        inv = s.invariant
        self._verdicts.setdefault(inv, (res.kind, res.reason, res.witness))
        return res

    def _verdict_hint(self, s: _Surface):
        return self._verdicts.get(s.invariant)

    def _classify(self, s: _Surface) -> _Result:
        d = s.degree
        if d == 9:
            line = DivisorClass(tuple(c // 3 for c in s.anti.coeffs), s.ambient_degree)
            if 3 * line != s.anti:
                raise RuntimeError("degree-9 anticanonical class not divisible by 3")
            return _Result(Verdict.TORIC, neg=(), nef=(line,) * 3)
        if d == 8:
            return self._classify_degree8(s)

        neg1s = s.neg1s
        ncurves = len(s.twos) + len(neg1s)
        if ncurves >= 14 - d:
            return _Result(
                Verdict.MULTI_RELATION, reason=MultiReason.TOO_MANY_NEGATIVE_CURVES
            )

        children: list[_Result] = []
        for e in neg1s:
            child = s.contract(e)
            hint = self._verdict_hint(child)
            if hint is not None and hint[0] is Verdict.MULTI_RELATION:
                return _Result(
                    Verdict.MULTI_RELATION,
                    reason=MultiReason.CONTRACTION_ARGUMENT,
                    witness=(child.invariant,) + hint[2],
                )
            r = self.classify_surface(child)
            if r.kind is Verdict.MULTI_RELATION:
                return _Result(
                    Verdict.MULTI_RELATION,
                    reason=MultiReason.CONTRACTION_ARGUMENT,
                    witness=(child.invariant,) + r.witness,
                )
            children.append(r)

        return self._scan(s, children)

    def _classify_degree8(self, s: _Surface) -> _Result:
        neg1s = s.neg1s
        if len(neg1s) == 1:  # blow-up of P^2 in one point
            e = neg1s[0]
            rulings = s._classes(0, 2, twos_filter=True)
            cubics = [c for c in s._classes(1, 3, twos_filter=True) if intersect(c, e) == 0]
            if len(rulings) != 1 or len(cubics) != 1:
                raise RuntimeError("unexpected degree-8 blow-up lattice data")
            return _Result(Verdict.TORIC, neg=(e,), nef=(rulings[0], rulings[0], cubics[0]))
        if neg1s:
            raise RuntimeError("degree-8 surface with several (-1)-classes")
        rulings = s._classes(0, 2, twos_filter=True)
        if not s.twos:  # P^1 x P^1
            if len(rulings) != 2:
                raise RuntimeError("quadric lattice should have two rulings")
            u, w = rulings
            return _Result(Verdict.TORIC, neg=(), nef=(u, u, w, w))
        if len(s.twos) == 1 and len(rulings) == 1:  # F_2
            c = s.twos[0]
            f = rulings[0]
            return _Result(Verdict.TORIC, neg=(c,), nef=(f, f, c + 2 * f))
        raise RuntimeError("unrecognized degree-8 lattice")

    def _scan(self, s: _Surface, children: list[_Result]) -> _Result:
        d = s.degree
        target_total = 13 - d
        neg = tuple(s.twos) + tuple(s.neg1s)
        gens: tuple[DivisorClass, ...] = neg
        nef: list[DivisorClass] = []
        rel: DivisorClass | None = None

        cands: set[DivisorClass] = {s.anti}
        for r in children:
            cands.update(r.nef)
        scanned: list[DivisorClass] = []
        for cand in self._order_candidates(s, cands):
            chi = s.chi(cand)
            cnt = self._count(gens, cand)
            eff = cnt - (self._count(gens, cand - rel) if rel else 0)
            if eff > chi:
                if rel is not None:
                    return _Result(
                        Verdict.MULTI_RELATION, reason=MultiReason.COUNTING_SURPLUS
                    )
                rel = self._find_relation_degree(s, gens, cand, scanned)
                if rel is None:
                    return _Result(
                        Verdict.MULTI_RELATION, reason=MultiReason.COUNTING_SURPLUS
                    )
                eff = cnt - self._count(gens, cand - rel)
            if eff < chi:
                missing = chi - eff
                if cand == s.anti and missing > 2:
                    raise RuntimeError(
                        "more than two generators required at -K; corrupted input"
                    )
                gens = gens + (cand,) * missing
                nef.extend([cand] * missing)
                if len(gens) > target_total:
                    return _Result(
                        Verdict.MULTI_RELATION, reason=MultiReason.COUNTING_SURPLUS
                    )
            scanned.append(cand)

        total = len(gens)
        if total == target_total and rel is None:
            rel = self._hunt_anticanonical(s, gens, scanned)
        if total == target_total:
            return _Result(Verdict.ONE_RELATION, neg=neg, nef=tuple(nef), rel=rel)
        if total == target_total - 1 and rel is None:
            return _Result(Verdict.TORIC, neg=neg, nef=tuple(nef))
        raise InconclusiveError(
            f"scan finished with {total} generators and relation {rel} "
            f"for a degree-{d} surface"
        )

    def _hunt_anticanonical(
        self, s: _Surface, gens: tuple[DivisorClass, ...], scanned: list[DivisorClass]
    ) -> DivisorClass:
        """With 13-d generators and no relation yet, it must appear in k*(-K)."""
        scanned = list(scanned)
        # -2K is always enough to expose a relation of anticanonical pairing
        # <= degree; low degrees need higher multiples, bounded via scan_bound
        k_max = max(2, self.scan_bound // s.degree)
        k = 1
        while k <= k_max:
            target = k * s.anti
            chi = s.chi(target)
            cnt = self._count(gens, target)
            if cnt < chi:
                raise InconclusiveError(
                    f"missing sections at {k}(-K) with full generator set"
                )
            if cnt > chi:
                rel = self._find_relation_degree(s, gens, target, scanned)
                if rel is None:
                    raise InconclusiveError(
                        f"no single relation degree explains the counts at {k}(-K)"
                    )
                return rel
            scanned.append(target)
            k += 1
        raise InconclusiveError(
            f"no relation found in multiples of -K within bound {self.scan_bound}"
        )

    # -- public entry ---------------------------------------------------------

    def classify(self, t: SurfaceType) -> Classification:
        s = _Surface(
            t.degree,
            t.simple_twos[0].lattice.anticanonical()
            if t.simple_twos
            else DivisorClass((3,) + (-1,) * (9 - t.degree), t.degree),
            tuple(t.simple_twos),
            frozenset(),
        )
        res = self.classify_surface(s)
        flagged = t.degree == 1
        if res.kind is Verdict.MULTI_RELATION:
            return Classification(
                Verdict.MULTI_RELATION,
                reason=res.reason,
                contraction_witness=res.witness,
                assumption_dependent=flagged,
            )
        pres = CoxPresentation(
            generator_degrees=tuple(sort_classes(res.neg)) + tuple(sort_classes(res.nef)),
            relation_degree=res.rel,
        )
        return Classification(res.kind, presentation=pres, assumption_dependent=flagged)


_default = Classifier()


def classify_type(t: SurfaceType, classifier: Classifier | None = None) -> Classification:
    """Classify a surface type (shared default engine, memoized)."""
    return (classifier or _default).classify(t)


def classify_roots(
    degree: int,
    twos: list[DivisorClass] | tuple[DivisorClass, ...],
    classifier: Classifier | None = None,
) -> Classification:
    """Classify from a degree and a simple system of (-2)-classes."""
    return classify_type(make_type(degree, tuple(twos)), classifier)
