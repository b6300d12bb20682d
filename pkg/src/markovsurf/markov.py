"""Markov triples, mutations and the Markov tree."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence

from .errors import NonPositiveEntry, NotAdjacent, NotExtendable, NotMarkov, check
from .exact import integer_sqrt

log = logging.getLogger(__name__)


def _markov_value(x: int, y: int, z: int) -> int:
    return x * x + y * y + z * z - 3 * x * y * z


def is_markov(t: Sequence[int]) -> bool:
    x, y, z = t
    if min(t) < 1:
        raise NonPositiveEntry(f"entries must be >= 1, got {tuple(t)}")
    return _markov_value(x, y, z) == 0


@dataclass(frozen=True, order=True)
class MarkovTriple:
    """A normalized (ascending) Markov triple."""

    x: int
    y: int
    z: int

    def __post_init__(self):
        if not (self.x <= self.y <= self.z):
            raise ValueError(f"triple not normalized: {self.as_tuple()}")
        if not is_markov(self.as_tuple()):
            raise NotMarkov(f"{self.as_tuple()} is not a Markov triple")
        # consequences of the equation, kept as cheap sanity checks
        check(math.gcd(self.x, self.y) == math.gcd(self.y, self.z) == math.gcd(self.x, self.z) == 1)
        check(self.x % 3 and self.y % 3 and self.z % 3)

    @classmethod
    def of(cls, *entries: int) -> "MarkovTriple":
        if len(entries) == 1:
            entries = tuple(entries[0])
        return cls(*sorted(int(e) for e in entries))

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.x, self.y, self.z)

    def __iter__(self):
        return iter(self.as_tuple())

    def squared(self) -> tuple[int, int, int]:
        return (self.x ** 2, self.y ** 2, self.z ** 2)

    def label(self) -> str:
        return f"({self.x},{self.y},{self.z})"

    def mutations(self) -> list["MarkovTriple"]:
        return [mutate(self, i) for i in range(3)]


ROOT = MarkovTriple(1, 1, 1)


def mutate_raw(t: Sequence[int], position: int) -> tuple[int, int, int]:
    """Mutation on an unnormalized triple; an involution for fixed ``position``."""
    t = list(t)
    a, b = (t[i] for i in range(3) if i != position)
    t[position] = 3 * a * b - t[position]
    return tuple(t)


def mutate(t: MarkovTriple, position: int) -> MarkovTriple:
    return MarkovTriple.of(mutate_raw(t.as_tuple(), position))


@dataclass(frozen=True, order=True)
class MarkovEdge:
    """Adjacent triples ``(l1, k1, k2)`` and ``(k1, k2, l2)`` sharing the pair ``k1 <= k2``."""

    k1: int
    k2: int
    l1: int
    l2: int

    def __post_init__(self):
        if not (1 <= self.k1 <= self.k2 and 1 <= self.l1 <= self.l2):
            raise ValueError(f"edge entries not ordered: {self}")
        if self.l1 * self.l2 != self.k1 ** 2 + self.k2 ** 2 or self.l1 + self.l2 != 3 * self.k1 * self.k2:
            raise NotAdjacent(f"({self.k1},{self.k2}) with thirds ({self.l1},{self.l2}) is not a Markov edge")
        check(math.gcd(self.l1, self.l2) == 1)

    @classmethod
    def from_pair(cls, k1: int, k2: int) -> "MarkovEdge":
        k1, k2 = sorted((k1, k2))
        l1, l2 = adjacent_thirds(k1, k2)
        return cls(k1, k2, l1, l2)

    @property
    def triples(self) -> tuple[MarkovTriple, MarkovTriple]:
        return MarkovTriple.of(self.l1, self.k1, self.k2), MarkovTriple.of(self.k1, self.k2, self.l2)

    def label(self) -> str:
        a, b = self.triples
        return f"{a.label()}--{b.label()}"


def adjacent_thirds(k1: int, k2: int) -> tuple[int, int]:
    """The two integers completing ``(k1, k2)`` to Markov triples, smaller first."""
    if not 1 <= k1 <= k2:
        raise ValueError(f"need 1 <= k1 <= k2, got ({k1}, {k2})")
    s = 3 * k1 * k2
    disc = s * s - 4 * (k1 * k1 + k2 * k2)
    if disc < 0:
        raise NotExtendable(f"({k1},{k2}): negative discriminant {disc}")
    r, exact = integer_sqrt(disc)
    if not exact or (s - r) % 2:
        raise NotExtendable(f"({k1},{k2}): discriminant {disc} is not a perfect square")
    l1, l2 = (s - r) // 2, (s + r) // 2
    if l1 < 1:
        raise NotExtendable(f"({k1},{k2}): non-positive third {l1}")
    return l1, l2


def edge_between(t: MarkovTriple, u: MarkovTriple) -> MarkovEdge:
    if t == u:
        raise NotAdjacent("a triple is not adjacent to itself")
    tt, uu = t.as_tuple(), u.as_tuple()
    candidates = []
    for i in range(3):
        for j in range(3):
            rest_t = sorted(tt[:i] + tt[i + 1:])
            rest_u = sorted(uu[:j] + uu[j + 1:])
            if rest_t != rest_u:
                continue
            k1, k2 = rest_t
            l1, l2 = sorted((tt[i], uu[j]))
            if l1 * l2 == k1 * k1 + k2 * k2 and l1 + l2 == 3 * k1 * k2:
                candidates.append((l1, k1, k2, l2))
    if not candidates:
        raise NotAdjacent(f"{t.label()} and {u.label()} do not differ by a mutation")
    l1, k1, k2, l2 = min(candidates)
    return MarkovEdge(k1, k2, l1, l2)


@dataclass
class TreeLevel:
    depth: int
    vertices: list[MarkovTriple] = field(default_factory=list)
    edges: list[MarkovEdge] = field(default_factory=list)
    # parent of each vertex, same order as ``vertices``; None at the root
    parents: list[Optional[MarkovTriple]] = field(default_factory=list)


def expand_tree(max_depth: int) -> list[TreeLevel]:
    """Breadth-first levels ``0..max_depth`` of the Markov tree rooted at (1,1,1)."""
    if max_depth < 0:
        raise ValueError("max_depth must be >= 0")
    levels = [TreeLevel(0, [ROOT], [], [None])]
    seen = {ROOT}
    for depth in range(1, max_depth + 1):
        prev = levels[-1]
        found: dict[MarkovTriple, MarkovTriple] = {}
        for v, parent in zip(prev.vertices, prev.parents):
            for child in v.mutations():
                if child == v or child == parent:
                    continue
                if child in seen or (child in found and found[child] != v):
                    log.warning("triple %s reached along two branches; merged", child.label())
                    continue
                found.setdefault(child, v)
        level = TreeLevel(depth)
        for child in sorted(found):
            level.vertices.append(child)
            level.parents.append(found[child])
            level.edges.append(edge_between(found[child], child))
        seen.update(found)
        levels.append(level)
    return levels


def iter_triples_up_to(max_entry: int) -> Iterator[MarkovTriple]:
    """All Markov triples whose largest entry is at most ``max_entry``.

    The largest entry strictly grows when moving away from the root beyond
    (1,1,2), so the tree can be pruned at the first vertex exceeding the bound.
    """
    if max_entry < 1:
        return
    stack: list[tuple[MarkovTriple, Optional[MarkovTriple]]] = [(ROOT, None)]
    seen = set()
    while stack:
        v, parent = stack.pop()
        if v in seen or v.z > max_entry:
            continue
        seen.add(v)
        yield v
        for child in v.mutations():
            if child != v and child != parent:
                stack.append((child, v))


def fibonacci(n: int) -> int:
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a


def is_fibonacci_branch(t: MarkovTriple) -> bool:
    return t.x == 1


def odd_fibonacci_indices(t: MarkovTriple) -> Optional[tuple[int, int]]:
    """Indices ``(2n-1, 2n+1)`` with ``y = F(2n-1)`` and ``z = F(2n+1)`` on the Fibonacci branch."""
    if not is_fibonacci_branch(t):
        return None
    i = 1
    while True:
        fy, fz = fibonacci(i), fibonacci(i + 2)
        if fy == t.y and fz == t.z:
            return i, i + 2
        if fy > t.y:
            raise AssertionError(f"{t.label()} on the Fibonacci branch but not Fibonacci")
        i += 2


def tree_to_dot(levels: Sequence[TreeLevel]) -> str:
    lines = ["graph markov_tree {"]
    for level in levels:
        for v in level.vertices:
            lines.append(f'  "{v.label()}" [label="{v.label()}"];')
    for level in levels:
        for v, p in zip(level.vertices, level.parents):
            if p is not None:
                lines.append(f'  "{p.label()}" -- "{v.label()}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def triple_to_json(t: MarkovTriple) -> list[str]:
    return [str(e) for e in t]


def edge_to_json(e: MarkovEdge) -> dict:
    a, b = e.triples
    return {
        "k1": str(e.k1), "k2": str(e.k2), "l1": str(e.l1), "l2": str(e.l2),
        "triples": [triple_to_json(a), triple_to_json(b)],
    }


def tree_to_json(levels: Sequence[TreeLevel], edges: bool = False) -> dict:
    out = []
    for level in levels:
        entry = {"depth": level.depth, "vertices": [triple_to_json(v) for v in level.vertices]}
        if edges:
            entry["edges"] = [edge_to_json(e) for e in level.edges]
        out.append(entry)
    return {"maxDepth": levels[-1].depth if levels else 0, "levels": out}
