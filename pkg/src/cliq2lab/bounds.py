"""Exact evaluation of the parameter schedule and the counting bounds.

Nothing in this module touches floating point.  Quantities of the form
``prod(base_i ** c_i)`` with rational exponents are compared through
``log2`` intervals computed by integer repeated squaring; the intervals are
refined until the comparison is decided, and exact equality is settled by
clearing denominators.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from .params import ParamError, Params


def binom(n: int, r: int) -> int:
    """Binomial coefficient, 0 outside ``0 <= r <= n``."""
    if n < 0 or r < 0 or r > n:
        return 0
    from math import comb

    return comb(n, r)


def iroot(x: int, e: int) -> int | None:
    """Exact integer ``e``-th root of ``x``, or ``None``."""
    if x < 0:
        return None
    if x < 2:
        return x
    r = 1 << -(-x.bit_length() // e)
    while True:
        nr = ((e - 1) * r + x // r ** (e - 1)) // e
        if nr >= r:
            break
        r = nr
    while r**e > x:
        r -= 1
    while (r + 1) ** e <= x:
        r += 1
    return r if r**e == x else None


# -- log2 intervals -----------------------------------------------------------


def log2_int_bounds(n: int, bits: int) -> tuple[Fraction, Fraction]:
    """Rational ``lo <= log2(n) <= hi`` with ``hi - lo <= 2**(1-bits)``."""
    if n < 1:
        raise ValueError("log2 of a non-positive integer")
    e = n.bit_length() - 1
    if n == 1 << e:
        return Fraction(e), Fraction(e)
    prec = bits + 16
    shift = prec - e
    if shift >= 0:
        lo_z = hi_z = n << shift
    else:
        lo_z = n >> -shift
        hi_z = lo_z + (1 if n & ((1 << -shift) - 1) else 0)
    two = 2 << prec

    acc = 0
    z = lo_z
    for _ in range(bits):
        z = (z * z) >> prec
        acc <<= 1
        if z >= two:
            z >>= 1
            acc |= 1
    lo = e + Fraction(acc, 1 << bits)

    acc = 0
    z = hi_z
    for _ in range(bits):
        z = -((-z * z) >> prec)
        acc <<= 1
        if z >= two:
            z = (z + 1) >> 1
            acc |= 1
    tail = 1 if z <= two else 2
    hi = e + Fraction(acc + tail, 1 << bits)
    return lo, hi


def log2_bounds(x: Fraction | int, bits: int) -> tuple[Fraction, Fraction]:
    x = Fraction(x)
    if x <= 0:
        raise ValueError("log2 of a non-positive number")
    nlo, nhi = log2_int_bounds(x.numerator, bits)
    dlo, dhi = log2_int_bounds(x.denominator, bits)
    return nlo - dhi, nhi - dlo


@dataclass(frozen=True)
class PowerProduct:
    """``prod(base ** exponent)`` over positive rational bases."""

    terms: tuple[tuple[Fraction, Fraction], ...]  # (exponent, base)

    @classmethod
    def of(cls, *terms: tuple) -> "PowerProduct":
        return cls(tuple((Fraction(c), Fraction(b)) for c, b in terms))

    def __mul__(self, other: "PowerProduct") -> "PowerProduct":
        return PowerProduct(self.terms + other.terms)

    def inverse(self) -> "PowerProduct":
        return PowerProduct(tuple((-c, b) for c, b in self.terms))

    def log2_interval(self, bits: int) -> tuple[Fraction, Fraction]:
        lo = hi = Fraction(0)
        for c, b in self.terms:
            if c == 0 or b == 1:
                continue
            blo, bhi = log2_bounds(b, bits)
            if c > 0:
                lo += c * blo
                hi += c * bhi
            else:
                lo += c * bhi
                hi += c * blo
        return lo, hi

    def exact_power(self, d: int) -> Fraction:
        """The value raised to ``d``; ``d`` must clear every exponent denominator."""
        out = Fraction(1)
        for c, b in self.terms:
            e = c * d
            if e.denominator != 1:
                raise ValueError("exponent denominator not cleared")
            out *= b ** int(e)
        return out

    def common_denominator(self) -> int:
        d = 1
        for c, _ in self.terms:
            d = d * c.denominator // _gcd(d, c.denominator)
        return d


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def compare(lhs: PowerProduct, rhs: PowerProduct, *, max_bits: int = 1 << 14) -> int:
    """Sign of ``lhs - rhs`` (-1, 0 or 1), decided exactly."""
    bits = 32
    while bits <= max_bits:
        llo, lhi = lhs.log2_interval(bits)
        rlo, rhi = rhs.log2_interval(bits)
        if lhi < rlo:
            return -1
        if llo > rhi:
            return 1
        if bits >= 256:
            d = (lhs * rhs).common_denominator()
            if lhs.exact_power(d) == rhs.exact_power(d):
                return 0
        bits *= 2
    d = (lhs * rhs).common_denominator()
    a, b = lhs.exact_power(d), rhs.exact_power(d)
    return (a > b) - (a < b)


def format_bound(x: Fraction, places: int = 6, *, up: bool) -> str:
    """Decimal rendering of ``x`` rounded outward (down for ``up=False``)."""
    scale = 10**places
    num = x * scale
    q = -((-num.numerator) // num.denominator) if up else num.numerator // num.denominator
    sign = "-" if q < 0 else ""
    q = abs(q)
    return f"{sign}{q // scale}.{q % scale:0{places}d}"


# -- schedule -----------------------------------------------------------------


@dataclass(frozen=True)
class Schedule:
    m: int
    log2m: int
    ell: int
    k: int
    p: int
    L: int
    chain_ok: bool

    def params(self, *, strict: bool = True) -> Params:
        return Params(m=self.m, k=self.k, ell=self.ell, p=self.p, L=self.L, strict=strict)


MAX_EXACT_ELL = 1 << 16


def schedule(
    m: int | None = None,
    *,
    log2m: int | None = None,
    strict: bool = False,
    max_ell: int = MAX_EXACT_ELL,
) -> Schedule:
    """ell = m^(1/8), k = m^(1/4), p = ell*log2(m), L = (p-1)^ell * ell!.

    ``m`` must be a power of two whose exponent is a multiple of 8 so that
    every entry is an exact integer.  ``strict`` raises when the chain
    ``2 < ell < p < k < m`` fails; otherwise it is only reported.  Past
    ``max_ell`` the exact ``L`` would take hours to build, so that is an error too.
    """
    if (m is None) == (log2m is None):
        raise ParamError("give exactly one of m or log2m")
    if m is None:
        m = 1 << log2m
    if m < 2 or m & (m - 1):
        raise ParamError(f"m={m} is not a power of two, so p = ell*log2(m) is not an integer")
    a = m.bit_length() - 1
    if a % 8:
        raise ParamError(f"m=2^{a} is not a perfect 8th power")
    ell = 1 << (a // 8)
    if ell > max_ell:
        raise ParamError(f"ell={ell} too large for exact factorials (max {max_ell})")
    k = ell * ell
    p = ell * a
    L = (p - 1) ** ell * factorial(ell)
    chain_ok = 2 < ell < p < k < m
    if strict and not chain_ok:
        raise ParamError(f"chain 2 < ell < p < k < m fails: ell={ell} p={p} k={k} m=2^{a}")
    return Schedule(m=m, log2m=a, ell=ell, k=k, p=p, L=L, chain_ok=chain_ok)


# -- asymptotic inequality chain ---------------------------------------------


@dataclass(frozen=True)
class InequalityResult:
    name: str
    relation: str  # "<" or ">"
    lhs: PowerProduct
    rhs: PowerProduct
    holds: bool
    lhs_bounds: tuple[Fraction, Fraction]
    rhs_bounds: tuple[Fraction, Fraction]

    def line(self) -> str:
        (a, b), (c, d) = self.lhs_bounds, self.rhs_bounds
        verdict = "PASS" if self.holds else "FAIL"
        return (
            f"{self.name} = lhs_log2_bounds [{format_bound(a, up=False)},{format_bound(b, up=True)}] "
            f"rhs_log2_bounds [{format_bound(c, up=False)},{format_bound(d, up=True)}] {verdict}"
        )


@dataclass
class ChainReport:
    m: int
    epsilon: Fraction
    schedule: Schedule
    results: list[InequalityResult] = field(default_factory=list)

    @property
    def all_hold(self) -> bool:
        return all(r.holds for r in self.results)

    @property
    def failing(self) -> list[str]:
        return [r.name for r in self.results if not r.holds]

    def lines(self) -> list[str]:
        s = self.schedule
        out = [
            f"m = 2^{s.log2m}",
            f"epsilon = {self.epsilon}",
            f"ell = {s.ell}",
            f"k = {s.k}",
            f"p = {s.p}",
            f"chain_2<ell<p<k<m = {str(s.chain_ok).lower()}",
        ]
        out.extend(r.line() for r in self.results)
        out.append(f"verdict = {'PASS' if self.all_hold else 'FAIL'}")
        return out


def _decide(name: str, lhs: PowerProduct, rel: str, rhs: PowerProduct, bits: int = 64) -> InequalityResult:
    sign = compare(lhs, rhs)
    holds = sign < 0 if rel == "<" else sign > 0
    return InequalityResult(
        name, rel, lhs, rhs, holds, lhs.log2_interval(bits), rhs.log2_interval(bits)
    )


def check_appendix_b(
    m: int | None = None,
    epsilon: Fraction | str | int = Fraction(1, 100),
    *,
    log2m: int | None = None,
    max_ell: int = MAX_EXACT_ELL,
) -> ChainReport:
    """Decide the seven asymptotic inequalities at a concrete ``m``.

    Each is evaluated as an exact comparison of power products; failures
    are reported, never raised.
    """
    eps = Fraction(epsilon)
    if eps <= 0:
        raise ParamError("epsilon must be positive")
    s = schedule(m, log2m=log2m, max_ell=max_ell)
    ell, k, p, L, mm = s.ell, s.k, s.p, s.L, s.m
    P = PowerProduct.of
    ratio = Fraction(mm - ell, k)
    checks = [
        ("ell_factorial", P((1, factorial(ell))), "<", P((Fraction(ell, 8), mm))),
        ("p_minus_1_pow_ell", P((ell, p - 1)), "<", P(((Fraction(1, 8) + eps) * ell, mm))),
        ("L", P((1, L)), "<", P(((Fraction(1, 4) + eps) * ell, mm))),
        ("L_squared", P((2, L)), "<", P(((Fraction(1, 2) + 2 * eps) * ell, mm))),
        ("ratio_pow_ell", P((ell, ratio)), ">", P((Fraction(2, 3) * ell, mm))),
        ("ratio_pow_ell_over_L2", P((ell, ratio), (-2, L)), ">", P((Fraction(ell, 7), mm))),
        ("quarter_2p_over_L2", P((1, Fraction(1, 4)), (-2, L), (p, 2)), ">", P((Fraction(ell, 3), mm))),
    ]
    report = ChainReport(m=mm, epsilon=eps, schedule=s)
    for name, lhs, rel, rhs in checks:
        report.results.append(_decide(name, lhs, rel, rhs))
    return report


# -- size threshold for the dichotomy ------------------------------------------


@dataclass(frozen=True)
class Threshold:
    """``m ** (ell / 7)``; membership queries are exact integer comparisons."""

    m: int
    ell: int

    def is_met(self, n: int) -> bool:
        if n <= 0:
            return False
        return n**7 >= self.m**self.ell

    def log2_bounds(self, bits: int = 64) -> tuple[Fraction, Fraction]:
        lo, hi = log2_int_bounds(self.m, bits)
        c = Fraction(self.ell, 7)
        return c * lo, c * hi

    def exact_log2(self) -> Fraction | None:
        if self.m & (self.m - 1) == 0:
            return Fraction(self.ell * (self.m.bit_length() - 1), 7)
        return None


def theorem13_threshold(m: int, ell: int | None = None) -> Threshold:
    if ell is None:
        root = iroot(m, 8)
        if root is None:
            raise ParamError(f"m={m} is not a perfect 8th power; pass ell explicitly")
        ell = root
    return Threshold(m=m, ell=ell)


# -- bound expressions --------------------------------------------------------


@dataclass(frozen=True)
class Bounds:
    neg_total: int
    pos2_count: int
    join_pos: int
    join_neg: Fraction
    meet_pos: int
    meet_neg: Fraction
    chain_lower: Fraction
    meet_degenerate: bool
    applicable: bool

    def pos_count_form(self, cs: int) -> int:
        """cs * L^2 * C(m-ell-1, k-ell-1) * [...] (the bound printed for negatives)."""
        return cs * self.meet_pos

    def neg_count_form(self, cs: int) -> Fraction:
        """cs * L^2 * 2^(1-p) * (k-1)^(2m) (the bound printed for positives)."""
        return cs * self.meet_neg

    def as_dict(self) -> dict:
        return {
            "neg_total": self.neg_total,
            "pos2_count": self.pos2_count,
            "join_pos": self.join_pos,
            "join_neg": self.join_neg,
            "meet_pos": self.meet_pos,
            "meet_neg": self.meet_neg,
            "chain_lower": self.chain_lower,
            "meet_degenerate": self.meet_degenerate,
            "applicable": self.applicable,
        }


def pos2_bracket(m: int, k: int) -> int:
    return binom(m - k, k) + k * binom(m - k, k - 1)


def bounds_applicable(params: Params) -> bool:
    """Whether the counting bounds' hypotheses hold for these parameters.

    The hypotheses are ``k = ell^2`` and "m sufficiently large"; the latter
    is witnessed by the parameters matching the final schedule at an ``m``
    where every inequality of the asymptotic chain holds.
    """
    if params.k != params.ell**2:
        return False
    try:
        s = schedule(params.m)
    except ParamError:
        return False
    if (s.ell, s.k, s.p, s.L) != (params.ell, params.k, params.p, params.L):
        return False
    try:
        return check_appendix_b(params.m).all_hold
    except ParamError:
        return False


def bound_expressions(params: Params) -> Bounds:
    m, k, ell, p, L = params.m, params.k, params.ell, params.p, params.L
    neg_total = (k - 1) ** (2 * m)
    two_pow = lambda e: Fraction(2) ** e  # noqa: E731
    return Bounds(
        neg_total=neg_total,
        pos2_count=binom(m, k) * pos2_bracket(m, k),
        join_pos=0,
        join_neg=L * two_pow(2 - p) * neg_total,
        meet_pos=L * L * binom(m - ell - 1, k - ell - 1) * pos2_bracket(m, k),
        meet_neg=L * L * two_pow(1 - p) * neg_total,
        chain_lower=Fraction(neg_total, 4),
        meet_degenerate=(k - ell - 1 < 0 or m - ell - 1 < k - ell - 1),
        applicable=bounds_applicable(params),
    )


__all__ = [
    "Bounds",
    "ChainReport",
    "InequalityResult",
    "PowerProduct",
    "Schedule",
    "Threshold",
    "binom",
    "bound_expressions",
    "bounds_applicable",
    "check_appendix_b",
    "compare",
    "iroot",
    "log2_bounds",
    "log2_int_bounds",
    "pos2_bracket",
    "schedule",
    "theorem13_threshold",
]
