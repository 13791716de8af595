"""Three-valued evaluation, equivalence sweeps and the base operator.

Values are encoded as ``0``, ``1`` and ``UNDEF = 2``.  Conjunction is the
minimum under ``0 < UNDEF < 1``.  Disjunction in the default ``"exact"``
mode is the maximum under ``UNDEF < 0 < 1``, so an undefined disjunct loses
to a false one; ``"kleene"`` mode uses ``0 < UNDEF < 1`` for both.  A
conjunction whose flattened spine holds a literal and its negation is 0 in
both modes.

Assignments over ``n`` edge variables are enumerated in lexicographic order
of their value tuples, position 1 most significant, with ``0 < 1 < UNDEF``
by encoding.  Sweeps split that order into fixed blocks; counterexamples
are always the least failing index, whatever the worker count.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from .doubletests import in_cliq2, k_cliques, test_space
from .formats import UNDEF, format_assignment
from .formulas import (
    BOT,
    NEG,
    OR,
    POS,
    TOP,
    TOP_REP,
    Formula,
    big_and,
    big_or,
    nvar,
    sem_set,
    subterms,
    var,
)
from .graphs import DoubleGraph, edge_index
from .params import Caps, LabError, Params

MODES = ("exact", "kleene")
BLOCK = 1 << 14

# rank tables: value -> position in the relevant order, and back
_AND_RANK = np.array([0, 2, 1], dtype=np.uint8)
_AND_UNRANK = np.array([0, UNDEF, 1], dtype=np.uint8)
_OR_RANK = {
    "exact": np.array([1, 2, 0], dtype=np.uint8),
    "kleene": np.array([0, 2, 1], dtype=np.uint8),
}
_OR_UNRANK = {
    "exact": np.array([UNDEF, 0, 1], dtype=np.uint8),
    "kleene": np.array([0, UNDEF, 1], dtype=np.uint8),
}
_NOT = np.array([1, 0, UNDEF], dtype=np.uint8)


def _check_mode(mode: str) -> None:
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")


def tri_and(x: int, y: int) -> int:
    return int(_AND_UNRANK[min(_AND_RANK[x], _AND_RANK[y])])


def tri_or(x: int, y: int, mode: str = "exact") -> int:
    r = _OR_RANK[mode]
    return int(_OR_UNRANK[mode][max(r[x], r[y])])


def tri_not(x: int) -> int:
    return int(_NOT[x])


# -- formulas ------------------------------------------------------------------


def eval_formula(phi: Formula, theta: Sequence[int], mode: str = "exact") -> int:
    """||phi|| under one assignment (theta[i-1] is the value of v_i)."""
    _check_mode(mode)
    val: dict[int, int] = {}
    for t in subterms(phi):
        if t.op == TOP:
            v = 1
        elif t.op == BOT:
            v = 0
        elif t.op == POS:
            v = theta[t.index - 1]
        elif t.op == NEG:
            v = tri_not(theta[t.index - 1])
        elif t.op == OR:
            v = tri_or(val[id(t.a)], val[id(t.b)], mode)
        else:
            v = 0 if t.contradictory else tri_and(val[id(t.a)], val[id(t.b)])
        val[id(t)] = v
    return val[id(phi)]


def eval_batch(phi: Formula, thetas: np.ndarray, mode: str = "exact") -> np.ndarray:
    """Vectorised ``eval_formula`` over the rows of an ``(N, n)`` uint8 array."""
    _check_mode(mode)
    rows = thetas.shape[0]
    orr, oru = _OR_RANK[mode], _OR_UNRANK[mode]
    val: dict[int, np.ndarray] = {}
    for t in subterms(phi):
        if t.op == TOP:
            v = np.ones(rows, dtype=np.uint8)
        elif t.op == BOT:
            v = np.zeros(rows, dtype=np.uint8)
        elif t.op == POS:
            v = thetas[:, t.index - 1]
        elif t.op == NEG:
            v = _NOT[thetas[:, t.index - 1]]
        elif t.op == OR:
            v = oru[np.maximum(orr[val[id(t.a)]], orr[val[id(t.b)]])]
        elif t.contradictory:
            v = np.zeros(rows, dtype=np.uint8)
        else:
            v = _AND_UNRANK[np.minimum(_AND_RANK[val[id(t.a)]], _AND_RANK[val[id(t.b)]])]
        val[id(t)] = v
    return np.asarray(val[id(phi)], dtype=np.uint8)


# -- families ------------------------------------------------------------------


def formula_of(obj, m: int | None = None) -> Formula:
    """F(.) of a family, a double graph or a plain graph (edge variables via m)."""
    if isinstance(obj, DoubleGraph):
        idx = edge_index(_need_m(m))
        lits = [var(idx.index_of_edge(e)) for e in sorted(obj.pos)]
        lits += [nvar(idx.index_of_edge(e)) for e in sorted(obj.neg)]
        return big_and(lits)
    if obj is TOP_REP:
        from .formulas import top

        return top()
    obj = list(obj) if not isinstance(obj, list) else obj
    if obj and not isinstance(obj[0], DoubleGraph):
        # a plain graph: a set of edges
        idx = edge_index(_need_m(m))
        return big_and(var(idx.index_of_edge(e)) for e in sorted(obj))
    return big_or(formula_of(d, m) for d in sorted(obj, key=DoubleGraph.sort_key))


def _need_m(m: int | None) -> int:
    if m is None:
        raise ValueError("m is needed to map edges to variables")
    return m


def _family_columns(family, m: int) -> list[tuple[np.ndarray, np.ndarray]]:
    idx = edge_index(m)
    return [
        (
            np.array([idx.index_of_edge(e) - 1 for e in d.pos], dtype=np.intp),
            np.array([idx.index_of_edge(e) - 1 for e in d.neg], dtype=np.intp),
        )
        for d in family
    ]


def eval_family_batch(family, thetas: np.ndarray, m: int, mode: str = "exact") -> np.ndarray:
    """||X|| for a family (or TOP_REP) over the rows of ``thetas``."""
    _check_mode(mode)
    rows = thetas.shape[0]
    if family is TOP_REP:
        return np.ones(rows, dtype=np.uint8)
    orr, oru = _OR_RANK[mode], _OR_UNRANK[mode]
    acc = None
    for pos_cols, neg_cols in _family_columns(family, m):
        r = np.full(rows, 2, dtype=np.uint8)  # rank of 1, the empty conjunction
        if pos_cols.size:
            r = np.minimum(r, _AND_RANK[thetas[:, pos_cols]].min(axis=1))
        if neg_cols.size:
            r = np.minimum(r, _AND_RANK[_NOT[thetas[:, neg_cols]]].min(axis=1))
        member = orr[_AND_UNRANK[r]]
        acc = member if acc is None else np.maximum(acc, member)
    if acc is None:
        return np.zeros(rows, dtype=np.uint8)
    return oru[acc]


def eval_setrep(rep, theta: Sequence[int], m: int, mode: str = "exact") -> int:
    arr = np.asarray([theta], dtype=np.uint8)
    return int(eval_family_batch(rep, arr, m, mode)[0])


# -- assignment spaces ----------------------------------------------------------


def assignments(start: int, stop: int, n: int) -> np.ndarray:
    """Rows ``start..stop-1`` of the lexicographic enumeration of {0,1,?}^n."""
    idx = np.arange(start, stop, dtype=np.int64)
    powers = 3 ** np.arange(n - 1, -1, -1, dtype=np.int64)
    return ((idx[:, None] // powers[None, :]) % 3).astype(np.uint8)


def assignment_of_index(i: int, n: int) -> tuple[int, ...]:
    return tuple(int(x) for x in assignments(i, i + 1, n)[0])


def sampled_assignments(seed: int, block: int, rows: int, n: int) -> np.ndarray:
    rng = np.random.default_rng([seed, block])
    return rng.integers(0, 3, size=(rows, n), dtype=np.uint8)


@dataclass
class Verdict:
    holds: bool
    exhaustive: bool
    checked: int
    seed: int | None = None
    counterexample: tuple | None = None
    detail: str = ""

    def describe(self) -> str:
        how = "exhaustive" if self.exhaustive else f"sampled, seed {self.seed}, {self.checked} samples"
        return f"{'holds' if self.holds else 'fails'} ({how})"

    def lines(self, prefix: str = "") -> list[str]:
        out = [
            f"{prefix}holds = {str(self.holds).lower()}",
            f"{prefix}verdict = {'exhaustive' if self.exhaustive else 'sampled'}",
            f"{prefix}checked = {self.checked}",
        ]
        if self.seed is not None and not self.exhaustive:
            out.append(f"{prefix}seed = {self.seed}")
        if self.counterexample is not None:
            out.append(f"{prefix}counterexample = {format_assignment(self.counterexample) or '(all ?)'}")
        if self.detail:
            out.append(f"{prefix}detail = {self.detail}")
        return out


def sweep(
    n: int,
    bad_rows: Callable[[np.ndarray], np.ndarray],
    *,
    caps: Caps | None = None,
    seed: int = 0,
    samples: int = 100_000,
    workers: int = 1,
    block: int = BLOCK,
) -> Verdict:
    """Run ``bad_rows`` (rows -> boolean failure mask) over the assignment space.

    The space is enumerated exhaustively when ``3^n`` is within the
    assignment cap, otherwise ``samples`` seeded random rows are checked.
    """
    caps = caps or Caps()
    total = 3**n
    exhaustive = total <= caps.assignments
    count = total if exhaustive else samples
    starts = list(range(0, count, block))

    def run(b: int):
        lo, hi = starts[b], min(starts[b] + block, count)
        rows = assignments(lo, hi, n) if exhaustive else sampled_assignments(seed, b, hi - lo, n)
        bad = np.flatnonzero(bad_rows(rows))
        if bad.size == 0:
            return None
        return lo + int(bad[0]), tuple(int(x) for x in rows[bad[0]])

    if workers > 1 and len(starts) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            found = [r for r in pool.map(run, range(len(starts))) if r is not None]
    else:
        found = []
        for b in range(len(starts)):
            r = run(b)
            if r is not None:
                found.append(r)
                break
    if not found:
        return Verdict(True, exhaustive, count, None if exhaustive else seed)
    first = min(found)
    return Verdict(False, exhaustive, count, None if exhaustive else seed, first[1])


# -- sides of an equivalence -----------------------------------------------------


class Cliq2:
    """The (never materialised) family CLIQ2 as an evaluation oracle on the 1-fiber."""

    def __init__(self, k: int):
        self.k = k


def cliq2_batch(thetas: np.ndarray, m: int, k: int) -> np.ndarray:
    """in_cliq2(D[theta]) for every row: ones and zeros each contain a k-clique."""
    idx = edge_index(m)
    cols = np.array(
        [[idx.index_of_edge(e) - 1 for e in sorted(c)] for c in k_cliques(m, k)], dtype=np.intp
    )
    if cols.size == 0:
        return np.zeros(thetas.shape[0], dtype=bool)
    vals = thetas[:, cols]  # rows x cliques x edges
    pos = (vals == 1).all(axis=2).any(axis=1)
    neg = (vals == 0).all(axis=2).any(axis=1)
    return pos & neg


def _one_fiber(side, m: int, mode: str) -> Callable[[np.ndarray], np.ndarray]:
    if isinstance(side, Cliq2):
        return lambda rows: cliq2_batch(rows, m, side.k)
    full = _values(side, m, mode)
    return lambda rows: full(rows) == 1


def _values(side, m: int, mode: str) -> Callable[[np.ndarray], np.ndarray]:
    if isinstance(side, Cliq2):
        raise ValueError("only the 1-fiber of CLIQ2 is available; use equiv_approx")
    if isinstance(side, Formula):
        rep = sem_set(side, m)  # phi ~ X means S(phi) ~ X
        return lambda rows: eval_family_batch(rep, rows, m, mode)
    if isinstance(side, DoubleGraph):
        side = frozenset({side})
    return lambda rows: eval_family_batch(side, rows, m, mode)


def equiv_sim(a, b, m: int, *, mode: str = "exact", caps: Caps | None = None,
              seed: int = 0, samples: int = 100_000, workers: int = 1) -> Verdict:
    """a ~ b: equal values under every assignment.  Formulas stand for S(phi)."""
    fa, fb = _values(a, m, mode), _values(b, m, mode)
    return sweep(m * (m - 1) // 2, lambda rows: fa(rows) != fb(rows),
                 caps=caps, seed=seed, samples=samples, workers=workers)


def equiv_approx(a, b, m: int, *, mode: str = "exact", caps: Caps | None = None,
                 seed: int = 0, samples: int = 100_000, workers: int = 1) -> Verdict:
    """a ~~ b: the value-1 sets coincide.  Formulas stand for S(phi)."""
    fa, fb = _one_fiber(a, m, mode), _one_fiber(b, m, mode)
    return sweep(m * (m - 1) // 2, lambda rows: fa(rows) != fb(rows),
                 caps=caps, seed=seed, samples=samples, workers=workers)


def value_agreement_check(phi: Formula, m: int, *, mode: str = "exact", fiber: bool = False,
                  caps: Caps | None = None, seed: int = 0, samples: int = 100_000,
                  workers: int = 1) -> Verdict:
    """Compare the direct value ||phi|| with ||S(phi)||.

    With ``fiber`` only the value-1 sets are compared.
    """
    rep = sem_set(phi, m)

    def bad(rows):
        x = eval_batch(phi, rows, mode)
        y = eval_family_batch(rep, rows, m, mode)
        return (x == 1) != (y == 1) if fiber else x != y

    return sweep(m * (m - 1) // 2, bad, caps=caps, seed=seed, samples=samples, workers=workers)


# -- characteristic assignments and the base -------------------------------------


def char_assignment(d: DoubleGraph, m: int) -> tuple[int, ...]:
    """1 on D+ indices, 0 on D- indices, undefined elsewhere."""
    idx = edge_index(m)
    theta = [UNDEF] * idx.n
    for e in d.pos:
        theta[idx.index_of_edge(e) - 1] = 1
    for e in d.neg:
        theta[idx.index_of_edge(e) - 1] = 0
    return tuple(theta)


def tri_graph(theta: Sequence[int], m: int) -> DoubleGraph:
    """D[theta]: edges valued 1 on the positive side, 0 on the negative side."""
    idx = edge_index(m)
    pos = frozenset(idx.edges[i] for i, v in enumerate(theta) if v == 1)
    neg = frozenset(idx.edges[i] for i, v in enumerate(theta) if v == 0)
    return DoubleGraph(pos, neg)


def base(family: Iterable[DoubleGraph]) -> frozenset:
    """The subset-minimal members under componentwise inclusion."""
    members = sorted(set(family), key=DoubleGraph.sort_key)
    kept: list[DoubleGraph] = []
    for d in members:
        if not any(e.pos <= d.pos and e.neg <= d.neg for e in kept):
            kept.append(d)
    return frozenset(kept)


def materialize_cliq2(m: int, k: int, caps: Caps | None = None) -> list[DoubleGraph]:
    """Every double graph on K_m whose parts both contain a k-clique."""
    caps = caps or Caps()
    n = m * (m - 1) // 2
    caps.check("double graphs", 3**n)
    out: list[DoubleGraph] = []
    for lo in range(0, 3**n, BLOCK):
        rows = assignments(lo, min(lo + BLOCK, 3**n), n)
        for r in rows[cliq2_batch(rows, m, k)]:
            out.append(tri_graph(r, m))
    return out


# -- property checks ---------------------------------------------------------


@dataclass
class CliqueBaseReport:
    cliq2_size: int
    base_size: int
    pos2_size: int
    holds: bool

    def lines(self) -> list[str]:
        return [
            f"cliq2 = {self.cliq2_size}",
            f"base = {self.base_size}",
            f"pos2 = {self.pos2_size}",
            f"verdict = {'PASS' if self.holds else 'FAIL'}",
        ]


def cliq2_base_check(m: int, k: int, caps: Caps | None = None) -> CliqueBaseReport:
    caps = caps or Caps()
    cl = materialize_cliq2(m, k, caps)
    b = base(cl)
    pos2 = test_space(m, k, caps, negatives=False).pos2_set
    return CliqueBaseReport(len(cl), len(b), len(pos2), b == pos2)


@dataclass
class BaseEquivalenceReport:
    x_sim_base: Verdict
    y_sim_base: Verdict
    x_approx_y: Verdict
    bases_equal: bool

    @property
    def item1(self) -> bool:
        return self.x_sim_base.holds and self.y_sim_base.holds

    @property
    def item2(self) -> bool:
        return (not self.x_approx_y.holds) or self.bases_equal

    @property
    def holds(self) -> bool:
        return self.item1 and self.item2

    def lines(self) -> list[str]:
        out = ["item1 X ~ B(X)"] + self.x_sim_base.lines("  ")
        out += ["item1 Y ~ B(Y)"] + self.y_sim_base.lines("  ")
        out += ["item2 X ~~ Y"] + self.x_approx_y.lines("  ")
        out.append(f"bases_equal = {str(self.bases_equal).lower()}")
        out.append(f"item1 = {'PASS' if self.item1 else 'FAIL'}")
        out.append(f"item2 = {'PASS' if self.item2 else 'FAIL'}")
        return out


def lemma19_check(xs, ys, m: int, *, mode: str = "exact", **kw) -> BaseEquivalenceReport:
    xs, ys = frozenset(xs), frozenset(ys)
    return BaseEquivalenceReport(
        x_sim_base=equiv_sim(xs, base(xs), m, mode=mode, **kw),
        y_sim_base=equiv_sim(ys, base(ys), m, mode=mode, **kw),
        x_approx_y=equiv_approx(xs, ys, m, mode=mode, **kw),
        bases_equal=base(xs) == base(ys),
    )


class PremiseFailure(LabError):
    def __init__(self, msg: str, verdict: Verdict):
        super().__init__(msg)
        self.verdict = verdict


@dataclass
class CliqueFormulaReport:
    premise: Verdict
    ac_pos_ok: bool
    ac_neg_empty: bool
    missing_positive: DoubleGraph | None
    accepted_negative: object | None

    @property
    def holds(self) -> bool:
        return self.premise.holds and self.ac_pos_ok and self.ac_neg_empty

    def lines(self) -> list[str]:
        out = ["premise phi ~~ CLIQ2"] + self.premise.lines("  ")
        out.append(f"ac_pos_equals_pos2 = {str(self.ac_pos_ok).lower()}")
        out.append(f"ac_neg_empty = {str(self.ac_neg_empty).lower()}")
        if self.missing_positive is not None:
            out.append(f"missing_positive = {self.missing_positive}")
        if self.accepted_negative is not None:
            c = self.accepted_negative
            out.append("accepted_negative = f=" + "".join(map(str, c.f)) + " g=" + "".join(map(str, c.g)))
        out.append(f"verdict = {'PASS' if self.holds else 'FAIL'}")
        return out


def lemma20_check(phi: Formula, params: Params, *, strict_premise: bool = False,
                  mode: str = "exact", workers: int = 1, seed: int = 0,
                  samples: int = 100_000) -> CliqueFormulaReport:
    """Premise phi ~~ CLIQ2, then the two acceptance conclusions.

    With ``strict_premise`` a failing premise raises :class:`PremiseFailure`
    carrying the least witness assignment.
    """
    from .formulas import ac_neg_rep, ac_pos_rep

    m, k = params.m, params.k
    premise = equiv_approx(phi, Cliq2(k), m, mode=mode, caps=params.caps,
                           workers=workers, seed=seed, samples=samples)
    if strict_premise and not premise.holds:
        raise PremiseFailure("phi is not ~~ CLIQ2", premise)
    space = test_space(m, k, params.caps)
    rep = sem_set(phi, m)
    acp, acn = ac_pos_rep(rep, params), ac_neg_rep(rep, params)
    missing = space.pos2_set - acp
    return CliqueFormulaReport(
        premise=premise,
        ac_pos_ok=acp == space.pos2_set,
        ac_neg_empty=not acn,
        missing_positive=min(missing, key=DoubleGraph.sort_key) if missing else None,
        accepted_negative=min(acn) if acn else None,
    )


__all__ = [
    "BLOCK",
    "Cliq2",
    "CliqueBaseReport",
    "BaseEquivalenceReport",
    "CliqueFormulaReport",
    "MODES",
    "PremiseFailure",
    "Verdict",
    "assignment_of_index",
    "assignments",
    "base",
    "char_assignment",
    "cliq2_batch",
    "equiv_approx",
    "equiv_sim",
    "eval_batch",
    "eval_family_batch",
    "eval_formula",
    "eval_setrep",
    "formula_of",
    "in_cliq2",
    "value_agreement_check",
    "cliq2_base_check",
    "lemma19_check",
    "lemma20_check",
    "materialize_cliq2",
    "sampled_assignments",
    "sweep",
    "tri_and",
    "tri_graph",
    "tri_not",
    "tri_or",
]
