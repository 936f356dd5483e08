"""ADE identification of simple systems and extended Dynkin diagram operations."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .lattice import DivisorClass, intersect, sort_classes

# An ADE multiset is a tuple of (family, rank) pairs, e.g.
# (("E", 6), ("A", 2)), sorted by descending rank then family E > D > A.
AdeComponent = tuple[str, int]
AdeMultiset = tuple[AdeComponent, ...]

_FAMILY_ORDER = {"E": 0, "D": 1, "A": 2}


class InvalidSimpleSystemError(ValueError):
    """The given classes do not form a simple system of an ADE root subsystem."""


def _component_label(size: int, arms: list[int]) -> AdeComponent:
    """Classify one connected tree component by its arm structure."""
    if not arms:  # single vertex or path handled by caller
        return ("A", size)
    arms = sorted(arms)
    if len(arms) != 3:
        raise InvalidSimpleSystemError(f"branch vertex with {len(arms)} arms")
    a, b, c = arms
    if a != 1:
        raise InvalidSimpleSystemError(f"arm lengths {arms} are not ADE")
    if b == 1:
        return ("D", size)
    if b == 2 and c in (2, 3, 4):
        return ("E", size)
    raise InvalidSimpleSystemError(f"arm lengths {arms} are not ADE")


def ade_components(roots: Sequence[DivisorClass]) -> list[tuple[AdeComponent, tuple[int, ...]]]:
    """Split a simple system into connected components with their ADE labels.

    Returns (label, member indices) per component.  Raises
    InvalidSimpleSystemError when pairings fall outside {0, 1} or a component
    is not a simply-laced Dynkin tree.
    """
    n = len(roots)
    adj: list[list[int]] = [[] for _ in range(n)]
    for i in range(n):
        if roots[i].self_int() != -2:
            raise InvalidSimpleSystemError(f"{roots[i]} has self-intersection != -2")
        for j in range(i + 1, n):
            p = intersect(roots[i], roots[j])
            if p not in (0, 1):
                raise InvalidSimpleSystemError(
                    f"pairing {p} between {roots[i]} and {roots[j]}"
                )
            if p == 1:
                adj[i].append(j)
                adj[j].append(i)

    seen = [False] * n
    out = []
    for start in range(n):
        if seen[start]:
            continue
        comp = []
        stack = [start]
        seen[start] = True
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in adj[v]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        edges = sum(len(adj[v]) for v in comp) // 2
        if edges != len(comp) - 1:
            raise InvalidSimpleSystemError("component contains a cycle")
        branch = [v for v in comp if len(adj[v]) >= 3]
        if len(branch) > 1 or any(len(adj[v]) > 3 for v in comp):
            raise InvalidSimpleSystemError("component has too much branching")
        if not branch:
            label = ("A", len(comp))
        else:
            c = branch[0]
            arms = []
            for w in adj[c]:
                length = 1
                prev, cur = c, w
                while True:
                    nxt = [u for u in adj[cur] if u != prev]
                    if not nxt:
                        break
                    prev, cur = cur, nxt[0]
                    length += 1
                arms.append(length)
            label = _component_label(len(comp), arms)
        out.append((label, tuple(sorted(comp))))
    out.sort(key=lambda t: (_ade_sort_key(t[0]), t[1]))
    return out


def _ade_sort_key(c: AdeComponent) -> tuple[int, int]:
    return (-c[1], _FAMILY_ORDER[c[0]])


def ade_multiset(roots: Sequence[DivisorClass]) -> AdeMultiset:
    return tuple(label for label, _ in ade_components(roots))


def format_ade(ms: AdeMultiset) -> str:
    """Canonical label string, e.g. '2A3+A1', 'E6+A2', '-' for empty."""
    if not ms:
        return "-"
    parts = []
    i = 0
    while i < len(ms):
        j = i
        while j < len(ms) and ms[j] == ms[i]:
            j += 1
        count = j - i
        fam, rank = ms[i]
        parts.append(f"{count if count > 1 else ''}{fam}{rank}")
        i = j
    return "+".join(parts)


def parse_ade(text: str) -> AdeMultiset:
    """Inverse of format_ade ('-', 'A1', '2A3+A1', ...)."""
    text = text.strip()
    if text in ("-", "", "none", "0"):
        return ()
    comps: list[AdeComponent] = []
    for part in text.split("+"):
        part = part.strip()
        k = 0
        while k < len(part) and part[k].isdigit():
            k += 1
        count = int(part[:k]) if k else 1
        fam = part[k].upper()
        rank = int(part[k + 1 :])
        if fam not in _FAMILY_ORDER:
            raise ValueError(f"unknown ADE family in {part!r}")
        comps.extend([(fam, rank)] * count)
    return tuple(sorted(comps, key=_ade_sort_key))


@dataclass
class ExtDynkin:
    """Extended Dynkin diagram of negative curves: a labelled multigraph.

    vertices carry a fixed DivisorClass identifier and a mutable
    self-intersection; edges is a symmetric matrix of intersection numbers.
    """

    classes: list[DivisorClass]
    self_ints: list[int]
    edges: list[list[int]]

    @classmethod
    def from_classes(cls, classes: Sequence[DivisorClass]) -> "ExtDynkin":
        n = len(classes)
        edges = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                edges[i][j] = edges[j][i] = intersect(classes[i], classes[j])
        return cls(list(classes), [c.self_int() for c in classes], edges)

    def index_of(self, c: DivisorClass) -> int:
        return self.classes.index(c)

    def contract(self, vertex: DivisorClass | int) -> "ExtDynkin":
        """Blow down a (-1)-vertex.

        The removed vertex e raises every other self-intersection by
        (e.v)^2 and adds (e.v)*(e.w) edges between remaining vertices.
        """
        k = vertex if isinstance(vertex, int) else self.index_of(vertex)
        if self.self_ints[k] != -1:
            raise ValueError(
                f"can only contract a (-1)-vertex, got self-intersection "
                f"{self.self_ints[k]}"
            )
        keep = [i for i in range(len(self.classes)) if i != k]
        classes = [self.classes[i] for i in keep]
        self_ints = [self.self_ints[i] + self.edges[i][k] ** 2 for i in keep]
        edges = [
            [self.edges[i][j] + self.edges[i][k] * self.edges[j][k] for j in keep]
            for i in keep
        ]
        for i in range(len(keep)):
            edges[i][i] = 0
        return ExtDynkin(classes, self_ints, edges)


def build_ext_dynkin(simple_twos: Sequence[DivisorClass], minus_ones: Iterable[DivisorClass]) -> ExtDynkin:
    """Diagram on the negative curves: (-2)-vertices first, then (-1)-vertices."""
    return ExtDynkin.from_classes(list(simple_twos) + sort_classes(minus_ones))


@dataclass
class ContractionStep:
    vertex: DivisorClass
    original_self_int: int
    multiplicities: dict[int, int] = field(default_factory=dict)


def contraction_sequence(diagram: ExtDynkin, count: int) -> list[DivisorClass]:
    """A sequence of `count` diagram contractions of (-1)-vertices down to P^2.

    Greedy with backtracking: always contract the lexicographically smallest
    available (-1)-vertex first.  Returns the contracted classes in order
    rho_r, ..., rho_1.
    """

    def rec(diag: ExtDynkin, left: int) -> list[DivisorClass] | None:
        if left == 0:
            return []
        cands = sort_classes(
            diag.classes[i] for i in range(len(diag.classes)) if diag.self_ints[i] == -1
        )
        for c in cands:
            rest = rec(diag.contract(c), left - 1)
            if rest is not None:
                return [c] + rest
        return None

    seq = rec(diagram, count)
    if seq is None:
        raise RuntimeError("no full contraction sequence exists; invalid type data")
    return seq


def rederive_classes(diagram: ExtDynkin, count: int) -> dict[DivisorClass, DivisorClass]:
    """Recompute every vertex class from a contraction sequence alone.

    Uses only the diagram combinatorics: a vertex contracted at step i is
    l_i (or l_i - l_j when it started at self-intersection -2 and was raised
    by step j); a surviving vertex of final self-intersection a0^2 with
    multiplicity a_i against step i is a0*l_0 - sum a_i*l_i.  The result maps
    each original class to its recomputed expression, which must agree.
    """
    seq = contraction_sequence(diagram, count)
    degree = diagram.classes[0].degree if diagram.classes else None
    # Step numbers: seq[0] is rho_r with r = count, ..., seq[-1] is rho_1.
    step_of = {c: count - t for t, c in enumerate(seq)}
    diag = diagram
    mults: dict[DivisorClass, dict[int, int]] = {c: {} for c in diagram.classes}
    raised_by: dict[DivisorClass, int] = {}
    for t, c in enumerate(seq):
        i = count - t
        k = diag.index_of(c)
        for j, other in enumerate(diag.classes):
            if other == c:
                continue
            m = diag.edges[diag.index_of(other)][k]
            if m:
                mults[other][i] = m
                if diag.self_ints[diag.index_of(other)] == -2 and m == 1:
                    raised_by.setdefault(other, i)
        diag = diag.contract(c)

    out: dict[DivisorClass, DivisorClass] = {}
    n = count + 1  # rank of Pic
    for idx, c in enumerate(diagram.classes):
        coeffs = [0] * n
        if c in step_of:
            if diagram.self_ints[diagram.index_of(c)] == -1:
                coeffs[step_of[c]] = 1
            else:  # started at -2, raised once, then contracted
                coeffs[step_of[c]] = 1
                coeffs[raised_by[c]] = -1
        else:
            final = diag.self_ints[diag.index_of(c)]
            a0 = math_isqrt(final)
            coeffs[0] = a0
            for i, m in mults[c].items():
                coeffs[i] = -m
        out[c] = DivisorClass(tuple(coeffs), 9 - count)
    return out


def math_isqrt(n: int) -> int:
    import math

    r = math.isqrt(n)
    if r * r != n:
        raise RuntimeError(f"expected a perfect square self-intersection, got {n}")
    return r
