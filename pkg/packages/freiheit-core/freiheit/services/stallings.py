"""
Stallings foldings for finitely generated subgroups of F_n.

The subgroup <w_1, ..., w_m> is read off a bouquet of m subdivided loops at
the basepoint; folding identifies edges with the same label leaving (or
entering) a vertex, and trimming hairs gives the core graph. The rank of
the subgroup is E - V + 1 of the core.
"""

import logging
from collections import deque
from collections.abc import Sequence
from dataclasses import dataclass

from freiheit.models.words import FreeWord, ambient_rank

logger = logging.getLogger(__name__)

# An edge (source, generator index, target), read positively from source
Edge = tuple[int, int, int]


class _UnionFind:
    def __init__(self, size: int):
        self.parent = list(range(size))

    def find(self, node: int) -> int:
        while self.parent[node] != node:
            self.parent[node] = self.parent[self.parent[node]]
            node = self.parent[node]
        return node

    def join(self, u: int, v: int) -> bool:
        ru, rv = self.find(u), self.find(v)
        if ru == rv:
            return False
        # Keep the smaller label as root so the basepoint stays 0
        if rv < ru:
            ru, rv = rv, ru
        self.parent[rv] = ru
        return True


@dataclass(frozen=True)
class StallingsGraph:
    """
    A labelled graph with basepoint 0.

    Attributes:
        vertex_count: Vertices are 0 .. vertex_count - 1
        edges: Sorted (source, generator, target) triples
        ambient_rank: n for a subgroup of F_n
    """

    vertex_count: int
    edges: tuple[Edge, ...]
    ambient_rank: int = 0
    basepoint: int = 0

    @property
    def rank(self) -> int:
        """E - V + 1; the rank of the subgroup when the graph is a folded core."""
        return len(self.edges) - self.vertex_count + 1

    def degree(self, v: int) -> int:
        return sum((s == v) + (t == v) for s, _, t in self.edges)

    def is_folded(self) -> bool:
        """No vertex has two outgoing or two incoming edges with the same label."""
        outgoing = {(s, g) for s, g, _ in self.edges}
        incoming = {(t, g) for _, g, t in self.edges}
        return len(outgoing) == len(self.edges) and len(incoming) == len(self.edges)

    def is_core(self) -> bool:
        return all(self.degree(v) >= 2 for v in range(self.vertex_count) if v != self.basepoint)

    def read(self, word: FreeWord) -> int | None:
        """Vertex reached by reading word from the basepoint, None if it falls off."""
        forward = {(s, g): t for s, g, t in self.edges}
        backward = {(t, g): s for s, g, t in self.edges}
        v = self.basepoint
        for gen, exp in word.letters:
            v = forward.get((v, gen)) if exp == 1 else backward.get((v, gen))
            if v is None:
                return None
        return v

    def contains(self, word: FreeWord) -> bool:
        """Membership in the subgroup: word reads a closed path at the basepoint."""
        return self.read(word) == self.basepoint

    def to_dict(self) -> dict:
        return {
            "vertices": self.vertex_count,
            "edges": [list(e) for e in self.edges],
            "basepoint": self.basepoint,
            "ambient_rank": self.ambient_rank,
            "rank": self.rank,
        }


def _bouquet(words: Sequence[FreeWord]) -> tuple[int, list[Edge]]:
    edges: list[Edge] = []
    count = 1
    for word in words:
        if word.is_identity():
            continue
        path = [0] + list(range(count, count + len(word) - 1)) + [0]
        count += len(word) - 1
        for (gen, exp), src, dst in zip(word.letters, path, path[1:]):
            edges.append((src, gen, dst) if exp == 1 else (dst, gen, src))
    return count, edges


def _fold_edges(count: int, edges: list[Edge]) -> list[Edge]:
    uf = _UnionFind(count)
    changed = True
    while changed:
        changed = False
        edges = sorted({(uf.find(s), g, uf.find(t)) for s, g, t in edges})
        outgoing: dict[tuple[int, int], int] = {}
        incoming: dict[tuple[int, int], int] = {}
        for s, g, t in edges:
            if (s, g) in outgoing and outgoing[(s, g)] != t:
                changed |= uf.join(outgoing[(s, g)], t)
            outgoing.setdefault((s, g), t)
            if (t, g) in incoming and incoming[(t, g)] != s:
                changed |= uf.join(incoming[(t, g)], s)
            incoming.setdefault((t, g), s)
    return sorted({(uf.find(s), g, uf.find(t)) for s, g, t in edges})


def _trim(edges: list[Edge], basepoint: int = 0) -> list[Edge]:
    edges = list(edges)
    while True:
        degree: dict[int, int] = {}
        for s, _, t in edges:
            degree[s] = degree.get(s, 0) + 1
            degree[t] = degree.get(t, 0) + 1
        hairs = {v for v, d in degree.items() if d == 1 and v != basepoint}
        if not hairs:
            return edges
        edges = [e for e in edges if e[0] not in hairs and e[2] not in hairs]


def _relabel(edges: list[Edge], basepoint: int = 0) -> tuple[int, tuple[Edge, ...]]:
    """Number vertices in breadth-first order from the basepoint."""
    neighbours: dict[int, list[int]] = {}
    for s, _, t in edges:
        neighbours.setdefault(s, []).append(t)
        neighbours.setdefault(t, []).append(s)
    order = {basepoint: 0}
    queue = deque([basepoint])
    while queue:
        v = queue.popleft()
        for u in sorted(neighbours.get(v, [])):
            if u not in order:
                order[u] = len(order)
                queue.append(u)
    relabelled = sorted((order[s], g, order[t]) for s, g, t in edges)
    return len(order), tuple(relabelled)


def fold(words: Sequence[FreeWord], rank: int | None = None) -> StallingsGraph:
    """
    Folded core graph of <words> <= F_rank.

    Deterministic for a fixed input order; identity words contribute nothing.
    """
    words = list(words)
    n = ambient_rank(words) if rank is None else rank
    if ambient_rank(words) > n:
        raise ValueError(f"Words use generators outside F_{n}")
    count, edges = _bouquet(words)
    edges = _trim(_fold_edges(count, edges))
    vertex_count, edges = _relabel(edges)
    graph = StallingsGraph(vertex_count=vertex_count, edges=edges, ambient_rank=n)
    logger.debug(f"Folded {len(words)} words into {vertex_count} vertices, {len(edges)} edges")
    return graph


def subgroup_rank(words: Sequence[FreeWord], rank: int | None = None) -> int:
    return fold(words, rank).rank


def are_independent(words: Sequence[FreeWord], rank: int | None = None) -> bool:
    """True when the words freely generate a free group of rank len(words)."""
    if any(w.is_identity() for w in words):
        return False
    return subgroup_rank(words, rank) == len(words)


__all__ = [
    "StallingsGraph",
    "fold",
    "subgroup_rank",
    "are_independent",
]
