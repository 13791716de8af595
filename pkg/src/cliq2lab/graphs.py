"""Edges, plain graphs and double graphs.

A plain graph is a ``frozenset`` of :class:`Edge`; vertices are implicit as
edge endpoints, so isolated vertices cannot be represented.  A double graph
is an ordered pair of edge-disjoint plain graphs.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, NamedTuple

from .params import LabError

PlainGraph = frozenset  # frozenset[Edge]
EMPTY: frozenset = frozenset()


class GraphError(LabError, ValueError):
    pass


class Edge(NamedTuple):
    lo: int
    hi: int

    @classmethod
    def of(cls, x: int, y: int) -> "Edge":
        if x == y:
            raise GraphError(f"loop edge {{{x},{y}}}")
        if x < 1 or y < 1:
            raise GraphError(f"vertices are 1-based, got {{{x},{y}}}")
        return cls(x, y) if x < y else cls(y, x)

    def __str__(self) -> str:
        return f"({self.lo},{self.hi})"


def graph(edges: Iterable) -> frozenset:
    """Build a plain graph from ``Edge`` values or ``(x, y)`` pairs."""
    return frozenset(e if isinstance(e, Edge) else Edge.of(*e) for e in edges)


@dataclass(frozen=True, slots=True)
class DoubleGraph:
    pos: frozenset
    neg: frozenset

    def __post_init__(self) -> None:
        if not isinstance(self.pos, frozenset):
            object.__setattr__(self, "pos", graph(self.pos))
        if not isinstance(self.neg, frozenset):
            object.__setattr__(self, "neg", graph(self.neg))
        if not self.pos.isdisjoint(self.neg):
            clash = sorted(self.pos & self.neg)
            raise GraphError(f"positive and negative parts share edges {clash}")

    def side(self, sign: str) -> frozenset:
        return self.pos if sign == "+" else self.neg

    def sort_key(self) -> tuple:
        return (len(self.pos) + len(self.neg), sorted(self.pos), sorted(self.neg))

    def __str__(self) -> str:
        from .formats import format_double_graph

        return format_double_graph(self)

    __repr__ = __str__


EMPTY_DOUBLE = DoubleGraph(EMPTY, EMPTY)


def canonical(family: Iterable[DoubleGraph]) -> list[DoubleGraph]:
    """Members of a family in the package-wide deterministic order."""
    return sorted(set(family), key=DoubleGraph.sort_key)


def vertices(g: Iterable[Edge]) -> frozenset:
    out = set()
    for e in g:
        out.add(e.lo)
        out.add(e.hi)
    return frozenset(out)


def star(xs: Iterable[int], ys: Iterable[int]) -> frozenset:
    """All unordered pairs {x, y} with x in xs, y in ys and x != y."""
    ys = tuple(ys)
    return frozenset(Edge.of(x, y) for x in xs for y in ys if x != y)


def complete_graph(vs: Iterable[int]) -> frozenset:
    """Edge set of the complete graph on ``vs``; empty when ``|vs| <= 1``."""
    return _complete(frozenset(vs))


@lru_cache(maxsize=1 << 16)
def _complete(vs: frozenset) -> frozenset:
    return frozenset(Edge(x, y) for x, y in combinations(sorted(vs), 2))


def non_edges(g: frozenset) -> frozenset:
    return complete_graph(vertices(g)) - g


def is_k_clique(g: frozenset, k: int) -> bool:
    vs = vertices(g)
    return len(vs) == k and g == complete_graph(vs)


def vertex_norm(d: DoubleGraph) -> int:
    """max(|v(D+)|, |v(D-)|)."""
    return max(len(vertices(d.pos)), len(vertices(d.neg)))


def in_d_ell(d: DoubleGraph, ell: int) -> bool:
    return vertex_norm(d) <= ell


def merge(d: DoubleGraph, e: DoubleGraph) -> DoubleGraph | None:
    """Componentwise union, or ``None`` when the union's parts clash."""
    pos = d.pos | e.pos
    neg = d.neg | e.neg
    if not pos.isdisjoint(neg):
        return None
    return DoubleGraph(pos, neg)


def merge_bounded(d: DoubleGraph, e: DoubleGraph, ell: int) -> DoubleGraph | None:
    out = merge(d, e)
    if out is None or not in_d_ell(out, ell):
        return None
    return out


def subset_pm(d: DoubleGraph, e: DoubleGraph) -> bool:
    return d.pos <= e.pos and d.neg <= e.neg


def subset_mp(d: DoubleGraph, e: DoubleGraph) -> bool:
    return d.pos <= e.pos or d.neg <= e.neg


def coloring_graph(f: tuple[int, ...]) -> frozenset:
    """Bichromatic edges of a coloring given as ``f[0]`` = color of vertex 1."""
    m = len(f)
    return frozenset(
        Edge(x + 1, y + 1) for x in range(m) for y in range(x + 1, m) if f[x] != f[y]
    )


def check_coloring(f: tuple[int, ...], m: int, k: int) -> None:
    if len(f) != m:
        raise GraphError(f"coloring has length {len(f)}, expected {m}")
    bad = [c for c in f if not 1 <= c <= k - 1]
    if bad:
        raise GraphError(f"colors must lie in 1..{k - 1}, got {bad}")


def check_graph(g: Iterable[Edge], m: int) -> None:
    for e in g:
        if not (1 <= e.lo < e.hi <= m):
            raise GraphError(f"edge {e} outside vertex universe [1..{m}]")


class EdgeIndex:
    """Lexicographic bijection between 1..n and the edges of K_m."""

    def __init__(self, m: int):
        if m < 0:
            raise GraphError("m must be non-negative")
        self.m = m
        self.edges: tuple[Edge, ...] = tuple(
            Edge(x, y) for x in range(1, m + 1) for y in range(x + 1, m + 1)
        )
        self.n = len(self.edges)
        self._index = {e: i + 1 for i, e in enumerate(self.edges)}

    def edge_of_index(self, i: int) -> Edge:
        if not 1 <= i <= self.n:
            raise IndexError(f"edge index {i} out of range 1..{self.n}")
        return self.edges[i - 1]

    def index_of_edge(self, e: Edge | tuple[int, int]) -> int:
        e = e if isinstance(e, Edge) else Edge.of(*e)
        try:
            return self._index[e]
        except KeyError:
            raise IndexError(f"edge {e} not in K_{self.m}") from None

    def mask(self, g: Iterable[Edge]) -> int:
        """Bit i-1 set for every edge with index i."""
        out = 0
        for e in g:
            out |= 1 << (self._index[e] - 1)
        return out


@lru_cache(maxsize=None)
def edge_index(m: int) -> EdgeIndex:
    return EdgeIndex(m)


def vertex_mask(g: Iterable[Edge]) -> int:
    out = 0
    for e in g:
        out |= (1 << (e.lo - 1)) | (1 << (e.hi - 1))
    return out
