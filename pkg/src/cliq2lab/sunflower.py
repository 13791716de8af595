"""Sunflower search and two-sided plucking of double-graph families."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .graphs import DoubleGraph, complete_graph, vertices, canonical
from .params import LabError, Params, sunflower_threshold


class SunflowerNotFound(LabError):
    pass


def _set_key(s: frozenset) -> tuple:
    return (len(s), tuple(sorted(s)))


@dataclass(frozen=True)
class Sunflower:
    petals: tuple[frozenset, ...]
    core: frozenset

    def __post_init__(self) -> None:
        if len(set(self.petals)) != len(self.petals):
            raise ValueError("sunflower petals must be distinct")
        for i, a in enumerate(self.petals):
            for b in self.petals[i + 1 :]:
                if a & b != self.core:
                    raise ValueError(
                        f"petals {sorted(a)} and {sorted(b)} meet in "
                        f"{sorted(a & b)}, not the core {sorted(self.core)}"
                    )

    def __len__(self) -> int:
        return len(self.petals)


def distinct_vertex_sets(family: Iterable[DoubleGraph], side: str) -> frozenset:
    if side == "+":
        return frozenset(vertices(d.pos) for d in family)
    return frozenset(vertices(d.neg) for d in family)


def vertex_set_norm(family: Iterable[DoubleGraph]) -> int:
    family = list(family)
    return max(
        len(distinct_vertex_sets(family, "+")),
        len(distinct_vertex_sets(family, "-")),
    )


def _greedy(sets: list[frozenset], p: int) -> tuple[list[frozenset], frozenset] | None:
    # maximal pairwise-disjoint subfamily in canonical order, else recurse on a link
    chosen: list[frozenset] = []
    used: set = set()
    for s in sets:
        if used.isdisjoint(s):
            chosen.append(s)
            used |= s
            if len(chosen) == p:
                return chosen, frozenset()
    freq = Counter(x for s in sets for x in s)
    if not freq:
        return None
    top = max(freq.values())
    x = min(v for v, c in freq.items() if c == top)
    link = sorted({s - {x} for s in sets if x in s}, key=_set_key)
    found = _greedy(link, p)
    if found is None:
        return None
    petals, core = found
    return [s | {x} for s in petals], core | {x}


def _exhaustive(sets: list[frozenset], p: int, budget: int) -> tuple[list[frozenset], frozenset] | None:
    cores = {frozenset()}
    for i, a in enumerate(sets):
        for b in sets[i + 1 :]:
            cores.add(a & b)
    steps = 0
    for core in sorted(cores, key=_set_key):
        residue = [(s - core, s) for s in sets if core <= s]
        if len(residue) < p:
            continue
        # petals pairwise meet exactly in the core: residues pairwise disjoint,
        # and at most one residue may be empty
        picked: list[tuple[frozenset, frozenset]] = []

        def dfs(start: int, used: frozenset) -> bool:
            nonlocal steps
            if len(picked) == p:
                return True
            for t in range(start, len(residue)):
                steps += 1
                if steps > budget:
                    raise SunflowerNotFound(f"exhaustive search budget {budget} exhausted")
                r, s = residue[t]
                if used.isdisjoint(r) and not (not r and any(not q for q, _ in picked)):
                    picked.append((r, s))
                    if dfs(t + 1, used | r):
                        return True
                    picked.pop()
                if len(residue) - t - 1 < p - len(picked) - 1:
                    break
            return False

        if dfs(0, frozenset()):
            return [s for _, s in picked], core
    return None


def find_sunflower(
    sets: Iterable[frozenset],
    p: int,
    ell: int | None = None,
    *,
    exhaustive: bool = True,
    budget: int = 200_000,
) -> Sunflower | None:
    """Find a sunflower with ``p`` petals among distinct vertex sets.

    The Erdos-Rado construction runs first: take a greedy maximal disjoint
    subfamily, and if it has fewer than ``p`` members recurse on the link of
    the most frequent element (ties go to the smallest vertex).  Above
    ``(p-1)^ell * ell!`` sets it cannot fail.  Below that threshold an
    exhaustive search over candidate cores is tried when ``exhaustive`` is
    set, bounded by ``budget`` search steps.
    """
    ordered = sorted(set(frozenset(s) for s in sets), key=_set_key)
    if ell is not None:
        too_big = [s for s in ordered if len(s) > ell]
        if too_big:
            raise ValueError(f"set {sorted(too_big[0])} has more than {ell} elements")
    if p < 1 or len(ordered) < p:
        return None
    found = _greedy(ordered, p)
    if found is None and ell is not None and len(ordered) > sunflower_threshold(p, ell):
        raise AssertionError("greedy sunflower search failed above the Erdos-Rado threshold")
    if found is None and exhaustive:
        found = _exhaustive(ordered, p, budget)
    if found is None:
        return None
    petals, core = found
    return Sunflower(tuple(sorted(petals, key=_set_key)), frozenset(core))


@dataclass
class PluckStep:
    side: str
    sunflower: Sunflower
    replaced: list[tuple[DoubleGraph, DoubleGraph | None]]
    count_before: int
    count_after: int

    @property
    def dropped(self) -> list[DoubleGraph]:
        return [before for before, after in self.replaced if after is None]


@dataclass
class PluckTrace:
    steps: list[PluckStep] = field(default_factory=list)
    result: frozenset = frozenset()
    initial_norm: int = 0

    def __len__(self) -> int:
        return len(self.steps)

    def format(self) -> str:
        from .formats import format_double_graph, format_family

        lines = [f"steps = {len(self.steps)}", f"initial_norm = {self.initial_norm}"]
        for i, st in enumerate(self.steps, 1):
            sf = st.sunflower
            lines.append(f"step {i}")
            lines.append(f"  side = {st.side}")
            lines.append(
                "  petals = " + " ".join("{" + ",".join(map(str, sorted(s))) + "}" for s in sf.petals)
            )
            lines.append("  core = {" + ",".join(map(str, sorted(sf.core))) + "}")
            lines.append(f"  count = {st.count_before} -> {st.count_after}")
            for before, after in st.replaced:
                tail = format_double_graph(after) if after is not None else "DROPPED (parts clash)"
                lines.append(f"  {format_double_graph(before)} => {tail}")
        lines.append("result")
        lines.extend("  " + line for line in format_family(self.result).splitlines())
        return "\n".join(lines) + "\n"


def _check_d_ell(family: Iterable[DoubleGraph], ell: int) -> None:
    for d in family:
        if len(vertices(d.pos)) > ell or len(vertices(d.neg)) > ell:
            raise ValueError(f"{d} has a part with more than ell={ell} vertices")


def pluck(
    family: Iterable[DoubleGraph],
    params: Params,
    *,
    set_size: int | None = None,
) -> tuple[frozenset, PluckTrace]:
    """Pluck sunflowers until both sides have at most ``L`` distinct vertex sets.

    Each elementary step picks a side with more than ``L`` distinct vertex
    sets (``+`` first), finds a ``p``-petal sunflower among them and replaces
    every member whose vertex set on that side is a petal by a copy whose
    side is the complete graph on the core.  Copies whose parts would then
    share an edge are dropped and reported in the trace.
    """
    current = frozenset(family)
    ell = params.ell
    _check_d_ell(current, ell)
    bound = set_size if set_size is not None else ell
    trace = PluckTrace(initial_norm=vertex_set_norm(current))
    while True:
        plus = distinct_vertex_sets(current, "+")
        minus = distinct_vertex_sets(current, "-")
        if max(len(plus), len(minus)) <= params.L:
            break
        side, sets = ("+", plus) if len(plus) > params.L else ("-", minus)
        sf = find_sunflower(sets, params.p, bound, budget=params.caps.sunflower_search)
        if sf is None:
            raise SunflowerNotFound(
                f"no {params.p}-petal sunflower among {len(sets)} vertex sets "
                f"on side {side} (L={params.L})"
            )
        petals = set(sf.petals)
        core_graph = complete_graph(sf.core)
        replaced: list[tuple[DoubleGraph, DoubleGraph | None]] = []
        kept = []
        for d in canonical(current):
            if vertices(d.side(side)) not in petals:
                kept.append(d)
                continue
            other = d.neg if side == "+" else d.pos
            if not core_graph.isdisjoint(other):
                replaced.append((d, None))
                continue
            new = DoubleGraph(core_graph, d.neg) if side == "+" else DoubleGraph(d.pos, core_graph)
            replaced.append((d, new))
            kept.append(new)
        current = frozenset(kept)
        trace.steps.append(
            PluckStep(side, sf, replaced, len(sets), len(distinct_vertex_sets(current, side)))
        )
    trace.result = current
    return current, trace


def pluck_step_bound(norm: int, p: int) -> Fraction:
    """Maximum number of elementary pluckings, 2*norm/(p-1)."""
    return Fraction(2 * norm, p - 1)


__all__ = [
    "PluckStep",
    "PluckTrace",
    "Sunflower",
    "SunflowerNotFound",
    "distinct_vertex_sets",
    "find_sunflower",
    "pluck_step_bound",
    "pluck",
    "vertex_set_norm",
]
