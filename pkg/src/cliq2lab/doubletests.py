"""Positive and negative double tests, CLIQ2 and NOCLIQ2 membership."""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, product
from typing import NamedTuple

import numpy as np

from .bounds import binom, pos2_bracket
from .graphs import (
    DoubleGraph,
    coloring_graph,
    complete_graph,
    edge_index,
    vertex_mask,
)
from .params import DEFAULT_CAP, Caps


class ColoringPair(NamedTuple):
    f: tuple[int, ...]
    g: tuple[int, ...]


def pos2_count_formula(m: int, k: int) -> int:
    """C(m,k) * [C(m-k,k) + k*C(m-k,k-1)]."""
    return binom(m, k) * pos2_bracket(m, k)


def k_cliques(m: int, k: int) -> list[frozenset]:
    return [complete_graph(frozenset(vs)) for vs in combinations(range(1, m + 1), k)]


def enum_pos2(m: int, k: int, caps: Caps | None = None) -> list[DoubleGraph]:
    """All pairs of edge-disjoint k-cliques, in canonical order."""
    caps = caps or Caps()
    cliques = k_cliques(m, k)
    caps.check("POS2 candidate pairs", len(cliques) ** 2)
    out = [
        DoubleGraph(a, b) for a in cliques for b in cliques if a.isdisjoint(b)
    ]
    out.sort(key=DoubleGraph.sort_key)
    return out


def colorings(m: int, k: int, caps: Caps | None = None) -> list[tuple[int, ...]]:
    caps = caps or Caps()
    caps.check("colorings", (k - 1) ** m)
    return list(product(range(1, k), repeat=m))


def enum_neg2(m: int, k: int, caps: Caps | None = None) -> list[ColoringPair]:
    """Ordered coloring pairs (f, g) whose coloring graphs share no edge."""
    caps = caps or Caps()
    caps.check("NEG2 candidate pairs", (k - 1) ** (2 * m))
    fs = colorings(m, k, caps)
    graphs = [coloring_graph(f) for f in fs]
    return [
        ColoringPair(f, g)
        for f, cf in zip(fs, graphs)
        for g, cg in zip(fs, graphs)
        if cf.isdisjoint(cg)
    ]


def in_cliq2(d: DoubleGraph, k: int) -> bool:
    """Both parts contain a k-clique."""
    return _has_k_clique(d.pos, k) and _has_k_clique(d.neg, k)


def _has_k_clique(g: frozenset, k: int) -> bool:
    if len(g) < k * (k - 1) // 2:
        return False
    adj: dict[int, set[int]] = {}
    for e in g:
        adj.setdefault(e.lo, set()).add(e.hi)
        adj.setdefault(e.hi, set()).add(e.lo)

    def extend(clique_size: int, candidates: set[int]) -> bool:
        if clique_size == k:
            return True
        for v in sorted(candidates):
            if extend(clique_size + 1, candidates & adj[v]):
                return True
            candidates = candidates - {v}
            if clique_size + len(candidates) < k:
                return False
        return False

    return extend(0, set(adj))


def in_nocliq2(d: DoubleGraph, m: int, k: int, caps: Caps | None = None) -> bool:
    space = test_space(m, k, caps or Caps())
    return space.nocliq2(d)


class TestSpace:
    """POS2 and NEG2 for one (m, k), with fast acceptance filters.

    Acceptance of a positive test ``<K(A), K(B)>`` by ``E`` reduces to vertex
    containment ``v(E+) <= A`` and ``v(E-) <= B`` because both parts of the
    test are complete graphs; that is what the vectorised filter uses.
    """

    __test__ = False  # not a pytest class

    def __init__(self, m: int, k: int, caps: Caps | None = None, *, negatives: bool = True):
        self.m, self.k = m, k
        self.caps = caps or Caps()
        self.pos2 = enum_pos2(m, k, self.caps)
        self._pos_a = np.array([vertex_mask(d.pos) for d in self.pos2], dtype=np.uint64)
        self._pos_b = np.array([vertex_mask(d.neg) for d in self.pos2], dtype=np.uint64)
        self.has_negatives = negatives
        if negatives:
            idx = edge_index(m)
            self.colorings = colorings(m, k, self.caps)
            self.coloring_masks = [idx.mask(coloring_graph(f)) for f in self.colorings]
            self.neg2 = enum_neg2(m, k, self.caps)
            pos = {f: i for i, f in enumerate(self.colorings)}
            self._neg_idx = [(pos[c.f], pos[c.g]) for c in self.neg2]
            self._f_proj = sorted({self.coloring_masks[i] for i, _ in self._neg_idx})
            self._g_proj = sorted({self.coloring_masks[j] for _, j in self._neg_idx})

    @property
    def pos2_set(self) -> frozenset:
        return frozenset(self.pos2)

    @property
    def neg2_set(self) -> frozenset:
        return frozenset(self.neg2)

    def _need_negatives(self) -> None:
        if not self.has_negatives:
            raise RuntimeError("test space was built without NEG2")

    def ac_pos(self, family) -> frozenset:
        """POS2 members accepted (componentwise inclusion) by some member."""
        if not self.pos2:
            return frozenset()
        hit = np.zeros(len(self.pos2), dtype=bool)
        for a, b in {(vertex_mask(e.pos), vertex_mask(e.neg)) for e in family}:
            a_, b_ = np.uint64(a), np.uint64(b)
            hit |= ((self._pos_a & a_) == a_) & ((self._pos_b & b_) == b_)
        return frozenset(self.pos2[i] for i in np.flatnonzero(hit))

    def ac_neg(self, family) -> frozenset:
        """NEG2 pairs accepted (disjunctive inclusion) by some member."""
        self._need_negatives()
        idx = edge_index(self.m)
        pos_masks = {idx.mask(e.pos) for e in family}
        neg_masks = {idx.mask(e.neg) for e in family}
        f_ok = [any(pm & ~cf == 0 for pm in pos_masks) for cf in self.coloring_masks]
        g_ok = [any(nm & ~cg == 0 for nm in neg_masks) for cg in self.coloring_masks]
        return frozenset(
            self.neg2[t] for t, (i, j) in enumerate(self._neg_idx) if f_ok[i] or g_ok[j]
        )

    def nocliq2(self, d: DoubleGraph) -> bool:
        self._need_negatives()
        idx = edge_index(self.m)
        pm, nm = idx.mask(d.pos), idx.mask(d.neg)
        return any(pm & ~cf == 0 for cf in self._f_proj) or any(
            nm & ~cg == 0 for cg in self._g_proj
        )


@lru_cache(maxsize=32)
def _cached_space(m: int, k: int, caps: Caps, negatives: bool) -> TestSpace:
    return TestSpace(m, k, caps, negatives=negatives)


def test_space(m: int, k: int, caps: Caps | None = None, *, negatives: bool = True) -> TestSpace:
    caps = caps or Caps()
    if negatives:
        return _cached_space(m, k, caps, True)
    return _cached_space(m, k, caps, False)


test_space.__test__ = False  # type: ignore[attr-defined]

__all__ = [
    "ColoringPair",
    "DEFAULT_CAP",
    "TestSpace",
    "colorings",
    "enum_neg2",
    "enum_pos2",
    "in_cliq2",
    "in_nocliq2",
    "k_cliques",
    "pos2_count_formula",
    "test_space",
]
