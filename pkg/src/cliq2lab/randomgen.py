"""Seeded generators for families, set systems, formulas and circuits.

Every generator takes an explicit ``seed`` (an int or a sequence of ints)
and builds its own ``numpy.random.Generator``, so one call is reproducible
on its own.  The default shapes below are the ones the test suites use.
"""

from __future__ import annotations

from itertools import combinations

import numpy as np

from .circuits import AND, FALSE, NOT, OR, TRUE, VAR, BoolCircuit, Gate
from .formulas import Formula, land, lor, nvar, var
from .graphs import DoubleGraph, Edge, edge_index

FORMULA_MAX_NODES = 12
CIRCUIT_MAX_GATES = 25
CIRCUIT_MAX_VARS = 10


def rng_for(seed) -> np.random.Generator:
    return np.random.default_rng(seed)


def random_plain_graph(rng: np.random.Generator, m: int, ell: int, max_edges: int = 3) -> frozenset:
    """A graph on at most ``ell`` vertices of ``[m]``."""
    size = int(rng.integers(2, min(ell, m) + 1)) if ell >= 2 else 0
    vs = sorted(int(v) + 1 for v in rng.choice(m, size=size, replace=False))
    pairs = list(combinations(vs, 2))
    if not pairs:
        return frozenset()
    count = int(rng.integers(1, min(max_edges, len(pairs)) + 1))
    pick = rng.choice(len(pairs), size=count, replace=False)
    return frozenset(Edge.of(*pairs[int(i)]) for i in pick)


def random_double_graph(rng: np.random.Generator, m: int, ell: int, *, p_empty: float = 0.3) -> DoubleGraph:
    pos = frozenset() if rng.random() < p_empty else random_plain_graph(rng, m, ell)
    neg = frozenset() if rng.random() < p_empty else random_plain_graph(rng, m, ell)
    return DoubleGraph(pos, neg - pos)


def random_family(seed, m: int, ell: int = 3, max_size: int = 4) -> frozenset:
    """A small family in D^ell, possibly empty."""
    rng = rng_for(seed)
    size = int(rng.integers(0, max_size + 1))
    return frozenset(random_double_graph(rng, m, ell) for _ in range(size))


def random_large_family(seed, m: int, ell: int, size: int) -> frozenset:
    """A family of about ``size`` members, big enough to force plucking."""
    rng = rng_for(seed)
    out: set[DoubleGraph] = set()
    attempts = 0
    while len(out) < size and attempts < 20 * size:
        out.add(random_double_graph(rng, m, ell, p_empty=0.1))
        attempts += 1
    return frozenset(out)


def random_set_system(seed, count: int, ell: int, universe: int) -> list[frozenset]:
    """``count`` distinct sets of size 1..ell over ``range(1, universe + 1)``."""
    rng = rng_for(seed)
    out: set[frozenset] = set()
    while len(out) < count:
        size = int(rng.integers(1, ell + 1))
        out.add(frozenset(int(v) + 1 for v in rng.choice(universe, size=size, replace=False)))
    return sorted(out, key=lambda s: (len(s), sorted(s)))


def random_formula(seed, n: int, max_nodes: int = FORMULA_MAX_NODES, *, p_neg: float = 0.4) -> Formula:
    """A random binary DMN formula with at most ``max_nodes`` tree nodes.

    Leaves are literals over ``v1..vn``; constants are left out since the
    stipulations absorb them at construction time anyway.
    """
    rng = rng_for(seed)
    budget = int(rng.integers(1, max_nodes + 1))
    if budget % 2 == 0:
        budget -= 1  # a full binary tree has an odd node count

    def build(nodes: int) -> Formula:
        if nodes == 1:
            i = int(rng.integers(1, n + 1))
            return nvar(i) if rng.random() < p_neg else var(i)
        left = 2 * int(rng.integers(0, (nodes - 1) // 2)) + 1
        a, b = build(left), build(nodes - 1 - left)
        return lor(a, b) if rng.random() < 0.5 else land(a, b)

    return build(budget)


def random_circuit(
    seed,
    max_gates: int = CIRCUIT_MAX_GATES,
    max_vars: int = CIRCUIT_MAX_VARS,
    *,
    p_not: float = 0.3,
) -> BoolCircuit:
    """A random dag with NOT gates, never NOT directly over NOT.

    Gates are created in order and each internal gate picks inputs among the
    earlier ones, which makes sharing common.  The last gate is the root and
    unreachable gates are pruned, so the final size may be smaller.
    """
    rng = rng_for(seed)
    nvars = int(rng.integers(1, max_vars + 1))
    total = int(rng.integers(1, max_gates + 1))
    gates: dict[str, Gate] = {}
    ids: list[str] = []

    unused: list[str] = []

    def pick() -> str:
        # prefer gates nothing reads yet, so most of the dag ends up under the root
        if unused and rng.random() < 0.75:
            return unused.pop(int(rng.integers(0, len(unused))))
        return ids[int(rng.integers(0, len(ids)))]

    for j in range(total):
        gid = f"g{j + 1}"
        r = rng.random()
        if not ids or r < 0.25:
            if rng.random() < 0.05:
                gates[gid] = Gate(TRUE if rng.random() < 0.5 else FALSE)
            else:
                gates[gid] = Gate(VAR, (), f"x{int(rng.integers(1, nvars + 1))}")
        elif r < 0.25 + p_not * 0.75:
            child = pick()
            if gates[child].kind == NOT:
                child = gates[child].children[0]
                if child in unused:
                    unused.remove(child)
            gates[gid] = Gate(NOT, (child,))
        else:
            a, b = pick(), pick()
            gates[gid] = Gate(AND if rng.random() < 0.5 else OR, (a, b))
        ids.append(gid)
        unused.append(gid)
    root = ids[-1]
    keep, stack = set(), [root]
    while stack:
        g = stack.pop()
        if g not in keep:
            keep.add(g)
            stack.extend(gates[g].children)
    return BoolCircuit({g: gates[g] for g in ids if g in keep}, root)


def random_assignment(rng: np.random.Generator, n: int) -> tuple[int, ...]:
    return tuple(int(v) for v in rng.integers(0, 3, size=n))


def random_rail_assignment(rng: np.random.Generator, m: int) -> dict[str, int]:
    n = edge_index(m).n
    return {f"{r}{i}": int(rng.integers(0, 2)) for r in "xy" for i in range(1, n + 1)}


__all__ = [
    "CIRCUIT_MAX_GATES",
    "CIRCUIT_MAX_VARS",
    "FORMULA_MAX_NODES",
    "random_assignment",
    "random_circuit",
    "random_double_graph",
    "random_family",
    "random_formula",
    "random_large_family",
    "random_plain_graph",
    "random_rail_assignment",
    "random_set_system",
    "rng_for",
]
