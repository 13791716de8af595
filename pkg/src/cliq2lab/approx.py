"""Products, acceptance sets, the approximators and their deviations."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .bounds import bound_expressions
from .doubletests import ColoringPair, test_space
from .graphs import DoubleGraph, in_d_ell, merge, merge_bounded, subset_mp, subset_pm
from .params import LabError, Params
from .sunflower import PluckTrace, pluck, vertex_set_norm

KINDS = ("join-pos", "join-neg", "meet-pos", "meet-neg")


class PreconditionError(LabError, ValueError):
    pass


def product(xs: Iterable[DoubleGraph], ys: Iterable[DoubleGraph]) -> frozenset:
    """X (.) Y: all defined merges; clashing pairs contribute nothing."""
    ys = tuple(ys)
    out = set()
    for d in xs:
        for e in ys:
            u = merge(d, e)
            if u is not None:
                out.add(u)
    return frozenset(out)


def product_bounded(xs: Iterable[DoubleGraph], ys: Iterable[DoubleGraph], ell: int) -> frozenset:
    ys = tuple(ys)
    out = set()
    for d in xs:
        for e in ys:
            u = merge_bounded(d, e, ell)
            if u is not None:
                out.add(u)
    return frozenset(out)


def accepts_pm(family: Iterable[DoubleGraph], d: DoubleGraph) -> bool:
    return any(subset_pm(e, d) for e in family)


def accepts_mp(family: Iterable[DoubleGraph], c: DoubleGraph) -> bool:
    return any(subset_mp(e, c) for e in family)


def ac_pos(family: Iterable[DoubleGraph], params: Params) -> frozenset:
    return test_space(params.m, params.k, params.caps, negatives=False).ac_pos(family)


def ac_neg(family: Iterable[DoubleGraph], params: Params) -> frozenset:
    return test_space(params.m, params.k, params.caps).ac_neg(family)


def check_regime(family: Iterable[DoubleGraph], params: Params, what: str = "family") -> None:
    """Raise unless the family lies in D^ell and has at most L vertex sets per side."""
    family = frozenset(family)
    for d in family:
        if not in_d_ell(d, params.ell):
            raise PreconditionError(f"{what}: member {d} is outside D^ell (ell={params.ell})")
    norm = vertex_set_norm(family)
    if norm > params.L:
        raise PreconditionError(f"{what}: {norm} distinct vertex sets exceeds L={params.L}")


def approx_join(xs, ys, params: Params, *, with_trace: bool = False):
    """X |_| Y = PL(X u Y)."""
    xs, ys = frozenset(xs), frozenset(ys)
    check_regime(xs, params, "X")
    check_regime(ys, params, "Y")
    result, trace = pluck(xs | ys, params)
    return (result, trace) if with_trace else result


def approx_meet(xs, ys, params: Params, *, with_trace: bool = False):
    """X |~| Y = PL(X (.)^ell Y)."""
    xs, ys = frozenset(xs), frozenset(ys)
    check_regime(xs, params, "X")
    check_regime(ys, params, "Y")
    result, trace = pluck(product_bounded(xs, ys, params.ell), params)
    return (result, trace) if with_trace else result


@dataclass
class DeviationReport:
    kind: str
    members: list
    count: int
    bound: Fraction
    bound_applicable: bool
    product_norm: int | None = None
    pluck_steps: int = 0

    def lines(self) -> list[str]:
        from .formats import format_double_graph

        out = [
            f"kind = {self.kind}",
            f"count = {self.count}",
            f"bound = {self.bound}",
            f"bound_applicable = {str(self.bound_applicable).lower()}",
            f"pluck_steps = {self.pluck_steps}",
        ]
        if self.product_norm is not None:
            out.append(f"product_vertex_norm = {self.product_norm}")
        for x in self.members:
            if isinstance(x, ColoringPair):
                out.append("  f=" + "".join(map(str, x.f)) + " g=" + "".join(map(str, x.g)))
            else:
                out.append("  " + format_double_graph(x))
        return out

    def as_dict(self) -> dict:
        return {
            "kind": self.kind,
            "count": self.count,
            "bound": str(self.bound),
            "bound_applicable": self.bound_applicable,
            "product_vertex_norm": self.product_norm,
            "pluck_steps": self.pluck_steps,
            "members": [
                {"f": list(x.f), "g": list(x.g)} if isinstance(x, ColoringPair) else str(x)
                for x in self.members
            ],
        }


def _sorted_members(s: frozenset) -> list:
    if not s:
        return []
    first = next(iter(s))
    if isinstance(first, ColoringPair):
        return sorted(s)
    return sorted(s, key=DoubleGraph.sort_key)


def deviation(kind: str, xs, ys, params: Params) -> DeviationReport:
    """Exact double deviation of one approximator step.

    Join deviations compare X u Y with X |_| Y; meet deviations compare the
    unbounded product X (.) Y with X |~| Y.
    """
    if kind not in KINDS:
        raise ValueError(f"unknown deviation kind {kind!r}; expected one of {KINDS}")
    xs, ys = frozenset(xs), frozenset(ys)
    op, side = kind.split("-")
    if op == "join":
        exact = xs | ys
        approx, trace = approx_join(xs, ys, params, with_trace=True)
    else:
        exact = product(xs, ys)
        approx, trace = approx_meet(xs, ys, params, with_trace=True)
    b = bound_expressions(params)
    if side == "pos":
        diff = ac_pos(exact, params) - ac_pos(approx, params)
    else:
        diff = ac_neg(approx, params) - ac_neg(exact, params)
    bound = {
        "join-pos": Fraction(b.join_pos),
        "join-neg": b.join_neg,
        "meet-pos": Fraction(b.meet_pos),
        "meet-neg": b.meet_neg,
    }[kind]
    return DeviationReport(
        kind=kind,
        members=_sorted_members(diff),
        count=len(diff),
        bound=bound,
        bound_applicable=b.applicable,
        product_norm=vertex_set_norm(product(xs, ys)) if op == "meet" else None,
        pluck_steps=len(trace),
    )


__all__ = [
    "DeviationReport",
    "KINDS",
    "PreconditionError",
    "PluckTrace",
    "ac_neg",
    "ac_pos",
    "accepts_mp",
    "accepts_pm",
    "approx_join",
    "approx_meet",
    "check_regime",
    "deviation",
    "product",
    "product_bounded",
]
