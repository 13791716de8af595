"""Seeded check suites shared by the command line and the acceptance tests.

Each runner returns a :class:`CheckResult`: a pass flag, report lines in the
``key = value`` format and a plain dict for JSON output.  Runners never
print; deciding what to show is the caller's business.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from .approx import (
    ac_neg,
    ac_pos,
    approx_join,
    check_regime,
    deviation,
    product,
)
from .circuits import (
    circuit_size,
    cliq2_rail_circuit,
    demorgan_convert,
    dmn_of_rail_circuit,
    eval_columns,
    rail_columns,
    truth_table,
)
from .doubletests import colorings, enum_neg2, enum_pos2, k_cliques, pos2_count_formula, test_space
from .formats import format_assignment
from .formulas import cs, format_formula, deviation_chain_violations
from .graphs import DoubleGraph, coloring_graph, edge_index
from .params import Caps, Params, sunflower_threshold
from .randomgen import (
    random_circuit,
    random_family,
    random_formula,
    random_large_family,
    random_set_system,
)
from .semantics import (
    BLOCK,
    Cliq2,
    assignments,
    base,
    cliq2_batch,
    equiv_approx,
    value_agreement_check,
    lemma19_check,
)
from .sunflower import find_sunflower, pluck_step_bound, pluck, vertex_set_norm


@dataclass
class CheckResult:
    name: str
    passed: bool
    lines: list[str] = field(default_factory=list)
    data: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {"check": self.name, "passed": self.passed, **self.data}


def _status(ok: bool) -> str:
    return "PASS" if ok else "FAIL"


# -- counting and disjointness -------------------------------------------------


def pos2_counts(m: int, k: int, caps: Caps | None = None) -> CheckResult:
    enumerated = len(enum_pos2(m, k, caps))
    formula = pos2_count_formula(m, k)
    ok = enumerated == formula
    return CheckResult(
        "pos2-count",
        ok,
        [f"enumerated={enumerated} formula={formula} {_status(ok)}"],
        {"enumerated": enumerated, "formula": formula},
    )


def neg2_bound(m: int, k: int, caps: Caps | None = None) -> CheckResult:
    count = len(enum_neg2(m, k, caps))
    bound = (k - 1) ** (2 * m)
    ok = count < bound
    return CheckResult("neg2-bound", ok, [f"neg2={count} bound={bound} {_status(ok)}"],
                       {"neg2": count, "bound": bound})


def _all_rows_masks(rows: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    weights = np.uint64(1) << np.arange(rows.shape[1], dtype=np.uint64)
    pos = ((rows == 1).astype(np.uint64) * weights).sum(axis=1, dtype=np.uint64)
    neg = ((rows == 0).astype(np.uint64) * weights).sum(axis=1, dtype=np.uint64)
    return pos, neg


def cliq2_disjoint(m: int, k: int, caps: Caps | None = None) -> CheckResult:
    """No double graph over K_m is both in CLIQ2 and in NOCLIQ2 (exhaustive)."""
    caps = caps or Caps()
    n = edge_index(m).n
    total = 3**n
    caps.check("double graphs", total)
    space = test_space(m, k, caps)
    f_masks = np.array(space._f_proj, dtype=np.uint64)
    g_masks = np.array(space._g_proj, dtype=np.uint64)
    both = cliq = nocliq = 0
    witness = None
    for lo in range(0, total, BLOCK):
        rows = assignments(lo, min(lo + BLOCK, total), n)
        pos, neg = _all_rows_masks(rows)
        in_c = cliq2_batch(rows, m, k)
        in_n = ((pos[:, None] & ~f_masks[None, :]) == 0).any(axis=1) | (
            (neg[:, None] & ~g_masks[None, :]) == 0
        ).any(axis=1)
        hit = np.flatnonzero(in_c & in_n)
        if hit.size and witness is None:
            witness = tuple(int(x) for x in rows[hit[0]])
        both += int(hit.size)
        cliq += int(in_c.sum())
        nocliq += int(in_n.sum())
    lines = [f"double_graphs = {total}", f"cliq2 = {cliq}", f"nocliq2 = {nocliq}", f"both = {both}"]
    if witness is not None:
        lines.append(f"witness = {format_assignment(witness)}")
    lines.append(f"verdict = {_status(both == 0)}")
    return CheckResult("cliq2-disjoint", both == 0, lines,
                       {"double_graphs": total, "cliq2": cliq, "nocliq2": nocliq, "both": both})


def pigeonhole(m: int, k: int, caps: Caps | None = None) -> CheckResult:
    """No k-clique sits inside any coloring graph with k-1 colors."""
    idx = edge_index(m)
    cliques = [idx.mask(c) for c in k_cliques(m, k)]
    cols = colorings(m, k, caps)
    bad = [(f, c) for f in cols for c in cliques if c & ~idx.mask(coloring_graph(f)) == 0]
    ok = not bad
    return CheckResult(
        "pigeonhole",
        ok,
        [f"colorings={len(cols)} cliques={len(cliques)} contained={len(bad)} {_status(ok)}"],
        {"colorings": len(cols), "cliques": len(cliques), "contained": len(bad)},
    )


# -- product conditions and acceptance -------------------------------------------


class _AllGraphs:
    """AC over every double graph on K_m, as boolean masks over 3^n rows."""

    def __init__(self, m: int, caps: Caps):
        n = edge_index(m).n
        caps.check("double graphs", 3**n)
        self.m = m
        self.pos, self.neg = _all_rows_masks(assignments(0, 3**n, n))

    def ac(self, family) -> np.ndarray:
        idx = edge_index(self.m)
        hit = np.zeros(self.pos.shape[0], dtype=bool)
        for e in family:
            a, b = np.uint64(idx.mask(e.pos)), np.uint64(idx.mask(e.neg))
            hit |= ((self.pos & a) == a) & ((self.neg & b) == b)
        return hit


def conditions23(params: Params, trials: int = 200, seed: int = 0) -> CheckResult:
    """Commutativity, associativity, distributivity, the union inclusion and monotonicity of the product."""
    m, ell = params.m, params.ell
    failures: list[str] = []
    for t in range(trials):
        x = random_family((seed, t, 0), m, ell)
        y = random_family((seed, t, 1), m, ell)
        z = random_family((seed, t, 2), m, ell)
        xp = x | random_family((seed, t, 3), m, ell)
        yp = y | random_family((seed, t, 4), m, ell)
        checks = {
            "1 commutative": product(x, y) == product(y, x),
            "1 associative": product(x, product(y, z)) == product(product(x, y), z),
            "2 distributive": product(x, y | z) == product(x, y) | product(x, z),
            "2 union inclusion": (x | product(y, z)) <= product(x | y, x | z),
            "3 monotone": product(x, y) <= product(xp, yp),
        }
        failures += [f"trial {t}: condition {name}" for name, ok in checks.items() if not ok]
    ok = not failures
    lines = [f"trials = {trials}", f"seed = {seed}", f"violations = {len(failures)}"]
    lines += failures[:10]
    lines.append(f"verdict = {_status(ok)}")
    return CheckResult("conditions23", ok, lines, {"trials": trials, "violations": failures})


def acceptance_algebra(params: Params, trials: int = 200, seed: int = 0) -> CheckResult:
    """Acceptance of unions, products and intersections over all of D at small m."""
    m, ell, caps = params.m, params.ell, params.caps
    universe = _AllGraphs(m, caps)
    space = test_space(m, params.k, caps)
    failures: list[str] = []
    fixed = {
        "1 AC(empty)": not universe.ac(frozenset()).any(),
        "1 ACp(empty)": not ac_pos(frozenset(), params),
        "1 ACn(empty)": not ac_neg(frozenset(), params),
        "2 ACp(POS2)": ac_pos(space.pos2_set, params) == space.pos2_set,
        "2 ACn(NEG2)": ac_neg(
            frozenset(DoubleGraph(coloring_graph(c.f), coloring_graph(c.g)) for c in space.neg2),
            params,
        ) == space.neg2_set,
    }
    failures += [f"item {name}" for name, ok in fixed.items() if not ok]
    for t in range(trials):
        x = random_family((seed, t, 0), m, ell)
        y = random_family((seed, t, 1), m, ell) | frozenset(list(x)[:1])
        xy, both = x | y, x & y
        prod = product(x, y)
        ax, ay = universe.ac(x), universe.ac(y)
        px, py = ac_pos(x, params), ac_pos(y, params)
        nx, ny = ac_neg(x, params), ac_neg(y, params)
        items = {
            "3a": np.array_equal(universe.ac(xy), ax | ay),
            "3b": ac_pos(xy, params) == px | py,
            "3c": ac_neg(xy, params) == nx | ny,
            "4a": bool((universe.ac(both) <= universe.ac(prod)).all())
            and np.array_equal(universe.ac(prod), ax & ay),
            "4b": ac_pos(both, params) <= ac_pos(prod, params) == px & py,
            "4c": ac_neg(both, params) <= ac_neg(prod, params) <= nx & ny,
        }
        failures += [f"trial {t}: item {name}" for name, ok in items.items() if not ok]
    ok = not failures
    lines = [f"trials = {trials}", f"seed = {seed}", f"violations = {len(failures)}"]
    lines += failures[:10]
    lines.append(f"verdict = {_status(ok)}")
    return CheckResult("acceptance-algebra", ok, lines, {"trials": trials, "violations": failures})


# -- sunflowers and plucking -------------------------------------------------------


def sunflower_completeness(ell: int, p: int, trials: int = 100, seed: int = 0) -> CheckResult:
    size = sunflower_threshold(p, ell) + 1
    misses = []
    for t in range(trials):
        sets = random_set_system((seed, t), size, ell, universe=2 * size)
        sf = find_sunflower(sets, p, ell)
        if sf is None or not set(sf.petals) <= set(sets):
            misses.append(t)
    ok = not misses
    return CheckResult(
        "sunflower",
        ok,
        [f"ell={ell} p={p} sets={size} trials={trials} missing={len(misses)} {_status(ok)}"],
        {"ell": ell, "p": p, "sets": size, "trials": trials, "missing": misses},
    )


def pluck_steps(params: Params, trials: int = 100, seed: int = 0, size: int = 600) -> CheckResult:
    """Elementary pluckings per run stay within 2 * ||v(X)|| / (p - 1)."""
    over, short_steps, rows = [], 0, []
    total_steps = 0
    for t in range(trials):
        fam = random_large_family((seed, t), params.m, params.ell, size)
        norm = vertex_set_norm(fam)
        _, trace = pluck(fam, params)
        bound = pluck_step_bound(norm, params.p)
        total_steps += len(trace)
        if len(trace) > bound:
            over.append(t)
        short_steps += sum(st.count_before - st.count_after != params.p - 1 for st in trace.steps)
        rows.append((norm, len(trace), bound))
    ok = not over
    lines = [
        f"trials = {trials}",
        f"seed = {seed}",
        f"steps_total = {total_steps}",
        f"max_steps = {max(r[1] for r in rows) if rows else 0}",
        f"over_bound = {len(over)}",
        f"steps_not_exactly_p_minus_1 = {short_steps}",
        f"verdict = {_status(ok)}",
    ]
    return CheckResult("pluck-steps", ok, lines, {"trials": trials, "steps_total": total_steps,
                                             "over_bound": over, "steps_not_exactly_p_minus_1": short_steps})


def _regime_pair(seed, t: int, params: Params, size: int) -> tuple[frozenset, frozenset]:
    """Two families inside the approximator regime whose union needs plucking."""
    x, _ = pluck(random_large_family((seed, t, 0), params.m, params.ell, size), params)
    y, _ = pluck(random_large_family((seed, t, 1), params.m, params.ell, size), params)
    return x, y


def join_preserves_positives(params: Params, trials: int = 100, seed: int = 0, *, large: bool = False,
           size: int = 400) -> CheckResult:
    """Joins never lose a positive test."""
    nonempty, triggered = [], 0
    for t in range(trials):
        if large:
            x, y = _regime_pair(seed, t, params, size)
            check_regime(x, params, "X")
            check_regime(y, params, "Y")
            exact = x | y
            joined, trace = approx_join(x, y, params, with_trace=True)
            triggered += bool(len(trace))
            lost = ac_pos(exact, params) - ac_pos(joined, params)
            count = len(lost)
        else:
            x = random_family((seed, t, 0), params.m, params.ell)
            y = random_family((seed, t, 1), params.m, params.ell)
            rep = deviation("join-pos", x, y, params)
            count = rep.count
        if count:
            nonempty.append(t)
    ok = not nonempty
    lines = [f"trials = {trials}", f"seed = {seed}"]
    if large:
        lines.append(f"pluck_triggered = {triggered}")
    lines += [f"nonempty_deviations = {len(nonempty)}", f"verdict = {_status(ok)}"]
    return CheckResult("join-preserves-positives", ok, lines,
                       {"trials": trials, "nonempty": nonempty, "pluck_triggered": triggered})


# -- formulas ---------------------------------------------------------------------


def deviation_chains(params: Params, trials: int = 500, seed: int = 0) -> CheckResult:
    bad, plucked = [], 0
    n = params.n
    for t in range(trials):
        phi = random_formula((seed, t), n)
        violations = deviation_chain_violations(phi, params)
        if violations:
            bad.append((t, format_formula(phi), [v.line() for v in violations]))
    ok = not bad
    lines = [f"trials = {trials}", f"seed = {seed}", f"violating_formulas = {len(bad)}"]
    for t, text, vs in bad[:5]:
        lines.append(f"trial {t}: {text}")
        lines += ["  " + v for v in vs[:3]]
    lines.append(f"verdict = {_status(ok)}")
    return CheckResult("deviation-chains", ok, lines, {"trials": trials, "violations": bad, "plucked": plucked})


def value_agreement(m: int, trials: int = 200, seed: int = 0, *, mode: str = "exact", fiber: bool = False,
            samples: int = 100_000, sampled: bool = False, caps: Caps | None = None,
            workers: int = 1) -> CheckResult:
    """Direct value of phi against the value of S(phi).

    Exhaustive when the space fits the assignment cap, unless ``sampled``
    is set; sampled runs split ``samples`` evenly across the formulas.
    """
    caps = caps or Caps()
    if sampled:
        caps = replace(caps, assignments=0)
    n = m * (m - 1) // 2
    per = max(1, samples // trials)
    failing = []
    checked = 0
    exhaustive = True
    for t in range(trials):
        phi = random_formula((seed, t), n)
        v = value_agreement_check(phi, m, mode=mode, fiber=fiber, caps=caps, seed=seed * 1_000_003 + t,
                          samples=per, workers=workers)
        checked += v.checked
        exhaustive &= v.exhaustive
        if not v.holds:
            failing.append((t, format_formula(phi), format_assignment(v.counterexample) or "(all ?)"))
    ok = not failing
    relation = "fiber" if fiber else "values"
    lines = [
        f"m = {m}",
        f"mode = {mode}",
        f"compare = {relation}",
        f"formulas = {trials}",
        f"verdict = {'exhaustive' if exhaustive else 'sampled'}",
        f"pairs_checked = {checked}",
        f"disagreeing_formulas = {len(failing)}",
    ]
    for t, text, theta in failing[:5]:
        lines.append(f"trial {t}: {text} at {theta}")
    lines.append(f"result = {_status(ok)}")
    return CheckResult("value-agreement", ok, lines, {"m": m, "mode": mode, "compare": relation,
                                              "pairs_checked": checked, "failing": failing})


def base_equivalence(m: int, trials: int = 50, seed: int = 0, *, mode: str = "exact", ell: int = 3,
            caps: Caps | None = None) -> CheckResult:
    """Random X against itself plus an absorbed member."""
    item1_fail, item2_fail = [], []
    for t in range(trials):
        x = random_family((seed, t, 0), m, ell) or frozenset({DoubleGraph(frozenset(), frozenset())})
        extra = random_family((seed, t, 1), m, ell, max_size=1)
        y = x | frozenset(
            DoubleGraph(d.pos | e.pos, d.neg | e.neg)
            for d in list(x)[:1]
            for e in extra
            if (d.pos | e.pos).isdisjoint(d.neg | e.neg)
        )
        rep = lemma19_check(x, y, m, mode=mode, caps=caps)
        if not rep.item1:
            item1_fail.append(t)
        if not rep.item2:
            item2_fail.append(t)
    ok = not item1_fail and not item2_fail
    lines = [
        f"m = {m}",
        f"mode = {mode}",
        f"trials = {trials}",
        f"item1_failures = {len(item1_fail)}",
        f"item2_failures = {len(item2_fail)}",
        f"verdict = {_status(ok)}",
    ]
    return CheckResult("base-equivalence", ok, lines, {"item1_failures": item1_fail, "item2_failures": item2_fail})


# -- circuits ---------------------------------------------------------------------


def demorgan_size(trials: int = 1000, seed: int = 0) -> CheckResult:
    too_big, disagree, grew = [], [], 0
    for t in range(trials):
        c = random_circuit((seed, t))
        star = demorgan_convert(c)
        if circuit_size(star) > 2 * circuit_size(c) or star.has_negation():
            too_big.append(t)
        names = c.variables()
        if not np.array_equal(truth_table(c, names), truth_table(star, names)):
            disagree.append(t)
        grew += circuit_size(star) > circuit_size(c)
    ok = not too_big and not disagree
    lines = [
        f"circuits = {trials}",
        f"seed = {seed}",
        f"size_violations = {len(too_big)}",
        f"truth_table_mismatches = {len(disagree)}",
        f"grew = {grew}",
        f"verdict = {_status(ok)}",
    ]
    return CheckResult("demorgan-size", ok, lines, {"size_violations": too_big, "mismatches": disagree, "grew": grew})


def rail_chain(m: int, k: int, *, caps: Caps | None = None, workers: int = 1) -> CheckResult:
    """Brute-force rail circuit for CLIQ2, its DMN image, and both semantic checks."""
    caps = caps or Caps()
    circuit = cliq2_rail_circuit(m, k)
    psi = dmn_of_rail_circuit(circuit, m)
    n = edge_index(m).n
    total = 3**n
    caps.check("assignments", total, caps.assignments)
    mismatch = None
    for lo in range(0, total, BLOCK):
        rows = assignments(lo, min(lo + BLOCK, total), n)
        got = eval_columns(circuit, rail_columns(rows))
        bad = np.flatnonzero(got != cliq2_batch(rows, m, k))
        if bad.size:
            mismatch = tuple(int(x) for x in rows[bad[0]])
            break
    verdict = equiv_approx(psi, Cliq2(k), m, caps=caps, workers=workers)
    size_ok = cs(psi) <= 2 * circuit_size(circuit)
    ok = mismatch is None and verdict.holds and size_ok
    lines = [
        f"m = {m}",
        f"k = {k}",
        f"circuit_size = {circuit_size(circuit)}",
        f"cs_psi = {cs(psi)}",
        f"size_bound = {_status(size_ok)}",
        f"rail_eval_matches_cliq2 = {str(mismatch is None).lower()}",
    ]
    if mismatch is not None:
        lines.append(f"mismatch = {format_assignment(mismatch)}")
    lines += ["psi ~~ CLIQ2"] + verdict.lines("  ")
    lines.append(f"verdict = {_status(ok)}")
    return CheckResult("rail", ok, lines, {"circuit_size": circuit_size(circuit), "cs_psi": cs(psi),
                                           "rail_matches": mismatch is None, "psi_approx_cliq2": verdict.holds})


def dichotomy_experiment(phi, params: Params, *, workers: int = 1, mode: str = "exact") -> CheckResult:
    """The two-case report plus the semantic premise phi ~~ CLIQ2.

    The dichotomy premises are acceptance statements; the sweep confirms
    the semantic statement they come from.  Raises ``PremiseError`` when
    an acceptance premise fails.
    """
    from .formulas import theorem13_dichotomy

    rep = theorem13_dichotomy(phi, params)
    verdict = equiv_approx(phi, Cliq2(params.k), params.m, mode=mode, caps=params.caps,
                           workers=workers)
    lines = rep.lines() + ["semantic premise phi ~~ CLIQ2"] + verdict.lines("  ")
    return CheckResult("dichotomy", verdict.holds, lines, {"case": rep.case})


def base_is_antichain(m: int, k: int) -> bool:
    pos2 = frozenset(enum_pos2(m, k))
    return base(pos2) == pos2


__all__ = [
    "CheckResult",
    "base_is_antichain",
    "conditions23",
    "pos2_counts",
    "cliq2_disjoint",
    "acceptance_algebra",
    "pluck_steps",
    "join_preserves_positives",
    "deviation_chains",
    "value_agreement",
    "base_equivalence",
    "demorgan_size",
    "neg2_bound",
    "pigeonhole",
    "rail_chain",
    "sunflower_completeness",
    "dichotomy_experiment",
]
