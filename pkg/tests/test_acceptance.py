"""End-to-end acceptance suite.

Each test records one ``criterion N ... PASS|FAIL`` line, printed together
in an "acceptance criteria" section at the end of the pytest run, and then
asserts the criterion as stated, including its time budget.  Criteria 8 and 13 are
expected to fail; see the project notes for the analysis.
"""

import time
from contextlib import contextmanager
from itertools import combinations, product as cartesian

import pytest

from cliq2lab import checks
from cliq2lab.bounds import check_appendix_b
from cliq2lab.circuits import circuit_size
from cliq2lab.doubletests import enum_pos2, pos2_count_formula
from cliq2lab.graphs import complete_graph
from cliq2lab.params import Params
from cliq2lab.semantics import cliq2_base_check, formula_of, lemma20_check

P5 = Params(m=5, k=3, ell=3, p=4, L=162)

pytestmark = pytest.mark.slow


@contextmanager
def criterion(log, number, title, budget):
    """Time the body and record the single verdict line for one criterion."""
    box = {"ok": False, "detail": ""}
    start = time.perf_counter()
    try:
        yield box
    finally:
        elapsed = time.perf_counter() - start
        within = elapsed < budget
        verdict = "PASS" if box["ok"] and within else "FAIL"
        extra = f" {box['detail']}" if box["detail"] else ""
        log.append(f"criterion {number:2d} {title}: {verdict} ({elapsed:.1f}s of {budget}s){extra}")
    assert box["ok"], box["detail"]
    assert within, f"took {elapsed:.1f}s, budget {budget}s"


def brute_pos2(m, k):
    cliques = [complete_graph(c) for c in combinations(range(1, m + 1), k)]
    return sum(1 for a, b in cartesian(cliques, cliques) if not a & b)


def test_criterion_01_pos2_counting(verdicts):
    with criterion(verdicts, 1, "positive test counting", 5) as box:
        points = [(4, 3), (5, 3), (6, 3), (7, 3), (8, 3)]
        counts = [len(enum_pos2(m, k)) for m, k in points]
        formula = [pos2_count_formula(m, k) for m, k in points]
        brute = [brute_pos2(m, k) for m, k in points[:3]]
        box["ok"] = counts == formula and counts[:3] == brute == [0, 30, 200]
        box["detail"] = f"counts={counts}"


def test_criterion_02_cliq2_nocliq2_disjoint(verdicts):
    with criterion(verdicts, 2, "CLIQ2 and NOCLIQ2 disjoint over all double graphs", 60) as box:
        r = checks.cliq2_disjoint(5, 3)
        box["ok"], box["detail"] = r.passed, " ".join(r.lines)


def test_criterion_03_acceptance_algebra(verdicts):
    with criterion(verdicts, 3, "union conditions and acceptance algebra", 60) as box:
        a = checks.conditions23(P5, 200, 0)
        b = checks.acceptance_algebra(P5, 200, 0)
        box["ok"] = a.passed and b.passed
        box["detail"] = f"conditions={a.passed} algebra={b.passed}"


def test_criterion_04_sunflower_completeness(verdicts):
    with criterion(verdicts, 4, "sunflower found above the threshold", 5) as box:
        runs = [checks.sunflower_completeness(2, 3, 100), checks.sunflower_completeness(3, 3, 100)]
        box["ok"] = all(r.passed for r in runs)
        box["detail"] = " | ".join(r.lines[0] for r in runs)


def test_criterion_05_pluck_step_bound(verdicts):
    with criterion(verdicts, 5, "plucking terminates within the step bound", 60) as box:
        r = checks.pluck_steps(Params(m=12, k=3, ell=3, p=4, L=162), 100, 0)
        box["ok"] = r.passed
        box["detail"] = f"steps={r.data['steps_total']}"


def test_criterion_06_join_keeps_positive_tests(verdicts):
    with criterion(verdicts, 6, "join loses no positive tests", 120) as box:
        small = checks.join_preserves_positives(P5, 100, 0)
        large = checks.join_preserves_positives(Params(m=12, k=3, ell=3, p=4, L=162), 100, 0, large=True)
        box["ok"] = small.passed and large.passed
        box["detail"] = f"large_triggered={large.data['pluck_triggered']}"


def test_criterion_07_deviation_chains(verdicts):
    with criterion(verdicts, 7, "deviation inclusion chains on random formulas", 300) as box:
        r = checks.deviation_chains(P5, 500, 0)
        box["ok"] = r.passed
        box["detail"] = f"violations={len(r.data['violations'])} plucked={r.data['plucked']}"


def test_criterion_08_value_agreement(verdicts):
    with criterion(verdicts, 8, "formula and set semantics agree on every value", 120) as box:
        small = checks.value_agreement(4, 200, 0)
        large = checks.value_agreement(6, 200, 0, sampled=True)
        box["ok"] = small.passed and large.passed
        box["detail"] = " ".join(ln for ln in small.lines + large.lines if "disagree" in ln)


def test_criterion_08_value_one_fiber(verdicts):
    # the value-1 sets do agree; printed as a companion line, not a criterion
    r = checks.value_agreement(4, 200, 0, fiber=True)
    verdicts.append(f"criterion  8 companion, value-1 sets only: {'PASS' if r.passed else 'FAIL'}")
    assert r.passed


def test_criterion_09_base_of_cliq2(verdicts):
    with criterion(verdicts, 9, "base of CLIQ2 equals the positive tests", 60) as box:
        rep = cliq2_base_check(5, 3)
        box["ok"] = rep.holds and rep.base_size == 30
        box["detail"] = " ".join(rep.lines())


def test_criterion_10_positive_test_formula(verdicts):
    with criterion(verdicts, 10, "positive test formula characterises CLIQ2", 120) as box:
        phi = formula_of(frozenset(enum_pos2(5, 3)), 5)
        rep = lemma20_check(phi, P5)
        box["ok"] = rep.holds and rep.premise.exhaustive and rep.ac_pos_ok and rep.ac_neg_empty


def test_criterion_11_demorgan_size(verdicts):
    with criterion(verdicts, 11, "negation pushing at most doubles the size", 120) as box:
        r = checks.demorgan_size(1000, 0)
        box["ok"] = r.passed
        box["detail"] = " ".join(r.lines[-2:])


def test_criterion_12_rail_chain(verdicts):
    with criterion(verdicts, 12, "double-rail chain for CLIQ2", 300) as box:
        r = checks.rail_chain(5, 3)
        box["ok"] = r.passed
        box["detail"] = " ".join(r.lines)


def test_criterion_13_inequality_chain(verdicts):
    with criterion(verdicts, 13, "seven inequalities at m = 2^48", 1) as box:
        rep = check_appendix_b(log2m=48)
        box["ok"] = rep.all_hold
        box["detail"] = f"failing={rep.failing}"


def test_criterion_14_dichotomy_is_reproducible(verdicts):
    with criterion(verdicts, 14, "dichotomy experiment decides a case reproducibly", 300) as box:
        phi = formula_of(frozenset(enum_pos2(5, 3)), 5)
        runs = [checks.dichotomy_experiment(phi, P5, workers=w) for w in (1, 1, 4)]
        same = len({"\n".join(r.lines) for r in runs}) == 1
        box["ok"] = same and runs[0].data["case"] in (1, 2)
        box["detail"] = f"case={runs[0].data['case']} identical={same}"


def test_criterion_15_pigeonhole(verdicts):
    with criterion(verdicts, 15, "no k-clique inside any coloring graph", 5) as box:
        runs = [checks.pigeonhole(m, 3) for m in (5, 6, 7)]
        box["ok"] = all(r.passed for r in runs)
        box["detail"] = " | ".join(r.lines[0] for r in runs)


def test_sizes_of_reference_circuits_are_sane():
    # guards the criterion 12 fixture against silently shrinking to nothing
    from cliq2lab.circuits import cliq2_rail_circuit

    assert circuit_size(cliq2_rail_circuit(5, 3)) > 100
