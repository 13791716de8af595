import math
from fractions import Fraction
from pathlib import Path

import pytest

from cliq2lab.bounds import (
    binom,
    bound_expressions,
    check_appendix_b,
    compare,
    iroot,
    log2_int_bounds,
    PowerProduct,
    schedule,
    theorem13_threshold,
)
from cliq2lab.params import ParamError, Params

GOLDEN = Path(__file__).parent / "golden"


def test_binomials_vanish_out_of_range():
    assert binom(5, 2) == 10
    assert binom(2, -1) == 0
    assert binom(2, 3) == 0


def test_integer_roots():
    assert iroot(2**48, 8) == 64
    assert iroot(100, 8) is None


def test_log2_intervals_bracket_the_float_log():
    for n in (3, 10, 3071, math.factorial(64)):
        lo, hi = log2_int_bounds(n, 40)
        assert lo <= Fraction(math.log2(n)) + Fraction(1, 10**9)
        assert Fraction(math.log2(n)) - Fraction(1, 10**9) <= hi
        assert hi - lo < Fraction(1, 2**30)


def test_exact_comparison_of_equal_products():
    a = PowerProduct.of((2, 8))
    b = PowerProduct.of((3, 4))
    assert compare(a, b) == 0
    assert compare(PowerProduct.of((1, 3071)), PowerProduct.of((1, 3072))) < 0


def test_schedule_at_2_48():
    s = schedule(log2m=48)
    assert (s.ell, s.k, s.p) == (64, 4096, 3072)
    assert s.L == 3071**64 * math.factorial(64)
    assert s.chain_ok


def test_schedule_at_2_24_breaks_the_chain():
    s = schedule(log2m=24)
    assert (s.ell, s.k, s.p) == (8, 64, 192)
    assert not s.chain_ok
    with pytest.raises(ParamError, match="chain"):
        schedule(log2m=24, strict=True)


def test_schedule_needs_an_eighth_power():
    with pytest.raises(ParamError):
        schedule(100)
    with pytest.raises(ParamError):
        schedule(log2m=20)


def float_log2_sides(a, eps=0.01):
    """Both sides of each inequality in log2, from floats and lgamma only."""
    m = 2.0**a
    ell = 2 ** (a // 8)
    k, p = ell * ell, ell * a
    lf = math.lgamma(ell + 1) / math.log(2)
    log_L = ell * math.log2(p - 1) + lf
    r = ell * math.log2((m - ell) / k)
    return {
        "ell_factorial": (lf, ell / 8 * a, "<"),
        "p_minus_1_pow_ell": (ell * math.log2(p - 1), (0.125 + eps) * ell * a, "<"),
        "L": (log_L, (0.25 + eps) * ell * a, "<"),
        "L_squared": (2 * log_L, (0.5 + 2 * eps) * ell * a, "<"),
        "ratio_pow_ell": (r, 2 / 3 * ell * a, ">"),
        "ratio_pow_ell_over_L2": (r - 2 * log_L, ell / 7 * a, ">"),
        "quarter_2p_over_L2": (p - 2 - 2 * log_L, ell / 3 * a, ">"),
    }


@pytest.mark.parametrize("a", [16, 24, 32, 40, 48, 56])
def test_chain_verdicts_match_float_oracle(a):
    rep = check_appendix_b(log2m=a)
    oracle = float_log2_sides(a)
    assert [r.name for r in rep.results] == list(oracle)
    for r in rep.results:
        lhs, rhs, rel = oracle[r.name]
        assert abs(lhs - rhs) > 1e-6
        assert r.holds == (lhs < rhs if rel == "<" else lhs > rhs)


def test_chain_report_at_2_48_matches_golden():
    rep = check_appendix_b(log2m=48)
    assert "\n".join(rep.lines()) + "\n" == (GOLDEN / "chain_2_48.txt").read_text()
    assert rep.failing == [
        "p_minus_1_pow_ell", "L", "L_squared", "ratio_pow_ell_over_L2", "quarter_2p_over_L2"
    ]


def test_factorial_inequality_at_2_48():
    r = check_appendix_b(log2m=48).results[0]
    assert r.name == "ell_factorial" and r.holds
    assert math.factorial(64) < 2**384


def test_sub_threshold_m_lists_failures():
    rep = check_appendix_b(log2m=24)
    assert rep.failing and not rep.all_hold


def test_epsilon_must_be_positive():
    with pytest.raises(ParamError):
        check_appendix_b(log2m=48, epsilon=0)


def test_size_threshold():
    th = theorem13_threshold(2**56)
    assert th.exact_log2() == 1024
    assert th.is_met(2**1024)
    assert not th.is_met(2**1023)
    assert not theorem13_threshold(2**8).is_met(1)
    with pytest.raises(ParamError):
        theorem13_threshold(100)


def test_size_threshold_grows_with_m():
    logs = [theorem13_threshold(2 ** (8 * t)).exact_log2() for t in range(1, 9)]
    assert logs == sorted(logs) and len(set(logs)) == len(logs)


def test_bound_expressions_at_desk_scale():
    b = bound_expressions(Params(m=5, k=3, ell=3, p=4, L=162))
    assert b.neg_total == 1024
    assert b.join_neg == 41472
    assert b.chain_lower == 256
    assert b.join_pos == 0
    assert not b.applicable


def test_degenerate_meet_bound():
    b = bound_expressions(Params(m=6, k=3, ell=3, p=4, L=162))
    assert b.meet_pos == 0 and b.meet_degenerate


def test_meet_neg_bound_at_desk_scale():
    b = bound_expressions(Params(m=5, k=3, ell=3, p=4, L=162))
    assert b.meet_neg == 162 * 162 * 1024 // 8
    assert b.meet_neg == b.join_neg * 162 / 2


def test_out_of_reach_m_is_refused_quickly():
    with pytest.raises(ParamError, match="too large"):
        check_appendix_b(log2m=256)
    with pytest.raises(ParamError, match="too large"):
        schedule(log2m=136)
    assert schedule(log2m=128).ell == 1 << 16
