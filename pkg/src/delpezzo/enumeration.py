"""Enumeration of types of generalized del Pezzo surfaces of a given degree.

A type of degree d <= 7 corresponds to an ADE subsystem of the root system
R_d, excluding four subsystems that only occur in characteristic 2.  The
search grows simple systems root by root; two simple systems give the same
type exactly when degree, ADE label multiset, and number of (-1)-curves
agree, so one representative per such invariant is kept.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import dynkin
from .lattice import DivisorClass, Lattice, enumerate_classes, intersect, neg1_curves, sort_classes

#: root counts of R_d for d = 7..1 (A1, A2+A1, A4, D5, E6, E7, E8)
ROOT_COUNTS = {7: 2, 6: 8, 5: 20, 4: 40, 3: 72, 2: 126, 1: 240}

#: subsystems excluded because they occur only in characteristic 2
CHAR2_EXCLUSIONS: dict[int, frozenset[dynkin.AdeMultiset]] = {
    2: frozenset({dynkin.parse_ade("7A1")}),
    1: frozenset(
        {dynkin.parse_ade("7A1"), dynkin.parse_ade("8A1"), dynkin.parse_ade("D4+4A1")}
    ),
}


@dataclass(frozen=True)
class SurfaceType:
    """One type: degree, a simple system of (-2)-classes, and its invariants."""

    degree: int
    simple_twos: tuple[DivisorClass, ...]
    minus_ones: frozenset[DivisorClass]
    ade: dynkin.AdeMultiset
    num_lines: int

    @property
    def invariant(self) -> tuple[int, dynkin.AdeMultiset, int]:
        return (self.degree, self.ade, self.num_lines)

    @property
    def ade_label(self) -> str:
        return dynkin.format_ade(self.ade)

    def __repr__(self) -> str:
        return f"SurfaceType(d={self.degree}, {self.ade_label}, {self.num_lines} lines)"


def make_type(degree: int, simple_twos: tuple[DivisorClass, ...] | list[DivisorClass]) -> SurfaceType:
    """Build a SurfaceType from a simple system, computing its invariants."""
    ctx = Lattice(degree)
    twos = tuple(simple_twos)
    ade = dynkin.ade_multiset(twos)
    ones = neg1_curves(ctx, twos)
    return SurfaceType(degree, twos, ones, ade, len(ones))


def _ade_key(ms: dynkin.AdeMultiset) -> tuple:
    return tuple(dynkin._ade_sort_key(c) for c in ms)


def enumerate_types(degree: int) -> list[SurfaceType]:
    """All types of generalized del Pezzo surfaces of the given degree.

    Level-by-level search over simple systems with dedup by the invariant
    triple (degree, ADE multiset, number of lines).  Characteristic-2-only
    subsystems are removed.  Degrees 8 and 9 have no root enumeration; they
    are covered by the hardcoded table in `degree_ge8_types`.
    """
    if not 1 <= degree <= 7:
        raise ValueError(f"enumerate_types needs 1 <= degree <= 7, got {degree}")
    ctx = Lattice(degree)
    roots = sort_classes(enumerate_classes(ctx, -2, 0))
    found: dict[tuple, SurfaceType] = {}
    empty = make_type(degree, ())
    found[empty.invariant] = empty
    level = [empty]
    seen_sets: set[frozenset[DivisorClass]] = {frozenset()}
    while level:
        nxt: dict[tuple, SurfaceType] = {}
        for t in level:
            for r in roots:
                if r in t.simple_twos:
                    continue
                if any(intersect(r, s) not in (0, 1) for s in t.simple_twos):
                    continue
                key = frozenset(t.simple_twos) | {r}
                if key in seen_sets:
                    continue
                seen_sets.add(key)
                twos = tuple(sort_classes(key))
                try:
                    cand = make_type(degree, twos)
                except dynkin.InvalidSimpleSystemError:
                    continue
                if cand.invariant in found or cand.invariant in nxt:
                    continue
                nxt[cand.invariant] = cand
        found.update(nxt)
        level = list(nxt.values())
    excluded = CHAR2_EXCLUSIONS.get(degree, frozenset())
    out = [t for t in found.values() if t.ade not in excluded]
    out.sort(key=lambda t: (len(t.simple_twos), _ade_key(t.ade), -t.num_lines))
    return out


def find_type(degree: int, ade: str | dynkin.AdeMultiset, num_lines: int | None = None) -> SurfaceType:
    """Locate the enumerated type with the given ADE label (and line count).

    The line count is only needed when two types share degree and label.
    """
    ms = dynkin.parse_ade(ade) if isinstance(ade, str) else ade
    hits = [t for t in enumerate_types(degree) if t.ade == ms]
    if num_lines is not None:
        hits = [t for t in hits if t.num_lines == num_lines]
    if not hits:
        raise KeyError(f"no type {dynkin.format_ade(ms)} in degree {degree}")
    if len(hits) > 1:
        counts = sorted(t.num_lines for t in hits)
        raise KeyError(
            f"type {dynkin.format_ade(ms)} in degree {degree} is ambiguous; "
            f"line counts {counts}"
        )
    return hits[0]


def build_ext_dynkin(t: SurfaceType) -> dynkin.ExtDynkin:
    """Extended Dynkin diagram of the negative curves of a type."""
    return dynkin.build_ext_dynkin(t.simple_twos, t.minus_ones)


def contraction_sequence(t: SurfaceType) -> list[DivisorClass]:
    """Contraction order of 9-d negative curves down to P^2."""
    if t.degree > 7:
        return []
    return dynkin.contraction_sequence(build_ext_dynkin(t), 9 - t.degree)


#: (degree, ADE label, line count, cyclic diagram of Cox generator
#: self-intersections) for the surfaces of degree >= 8 plus the blow-up
#: degree-7 table; the first two degree-8 rows are P^1 x P^1 and F_2,
#: which live outside the blow-up lattice.
DEGREE_GE8_TYPES: tuple[tuple[int, str, int, tuple[int, ...]], ...] = (
    (9, "-", 0, (1, 1, 1)),
    (8, "-", 1, (1, 0, -1, 0)),
    (8, "-", 0, (0, 0, 0, 0)),
    (8, "A1", 0, (2, 0, -2, 0)),
)
