"""Command line front end.

Every subcommand builds a list of ``key = value`` report lines from a
library call and prints them, or with ``--json`` prints the same lines
folded into a tree (see :func:`lines_to_tree`).

Exit status: 0 when every check passes, 1 when a check fails, 2 for usage,
input and resource errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import bounds as bnd
from . import checks
from .approx import KINDS, approx_join, approx_meet, deviation
from .circuits import demorgan_convert, dmn_of_rail_circuit, circuit_size, graph_of_tri, parse_circuit, rail_of_tri
from .doubletests import enum_neg2, enum_pos2
from .formats import format_assignment, format_double_graph, format_family, format_tri, parse_assignment, parse_family
from .formulas import PremiseError, cs, format_formula, parse_formula
from .params import Caps, LabError, Params, ResourceCapExceeded
from .semantics import (
    MODES,
    Cliq2,
    base,
    equiv_approx,
    equiv_sim,
    eval_formula,
    formula_of,
    cliq2_base_check,
    lemma19_check,
    lemma20_check,
)
from .sunflower import pluck


class Outcome:
    def __init__(self, lines: list[str], ok: bool = True):
        self.lines, self.ok = lines, ok


# -- input helpers -------------------------------------------------------------


def _read(spec: str) -> str:
    """``-`` is stdin, ``@path`` or an existing path is a file, anything else is literal text."""
    if spec == "-":
        return sys.stdin.read()
    if spec.startswith("@"):
        return Path(spec[1:]).read_text()
    path = Path(spec)
    if path.is_file():
        return path.read_text()
    return spec


def _family(spec: str) -> frozenset:
    return parse_family(_read(spec).replace(";", "\n"))


def _params(a) -> Params:
    return Params(m=a.m, k=a.k, ell=a.ell, p=a.p, L=a.L, strict=a.strict, caps=Caps.from_env())


def _pos2_formula(params: Params):
    return formula_of(frozenset(enum_pos2(params.m, params.k, params.caps)), params.m)


def _formula_or_pos2(a, params: Params):
    if a.formula:
        return parse_formula(_read(a.formula), params.n)
    return _pos2_formula(params)


def _side(spec: str, m: int, k: int):
    """An equivalence operand: ``cliq2``, a formula, or a family."""
    if spec == "cliq2":
        return Cliq2(k)
    text = _read(spec).strip()
    if text.startswith("+[") or text.startswith("#") or "\n+[" in text:
        return parse_family(text.replace(";", "\n"))
    return parse_formula(text, m * (m - 1) // 2)


# -- commands ---------------------------------------------------------------------


def cmd_enum(a) -> Outcome:
    caps = Caps.from_env()
    if a.what == "pos2":
        fam = enum_pos2(a.m, a.k, caps)
        lines = [f"pos2 = {len(fam)}"]
        if a.list:
            lines += format_family(fam).splitlines()
    else:
        pairs = enum_neg2(a.m, a.k, caps)
        lines = [f"neg2 = {len(pairs)}"]
        if a.list:
            lines += ["f=" + "".join(map(str, c.f)) + " g=" + "".join(map(str, c.g)) for c in pairs]
    return Outcome(lines)


def cmd_check(a) -> Outcome:
    params = _params(a)
    caps = params.caps
    name = a.what
    if name == "lemma1":
        results = [checks.pos2_counts(a.m, a.k, caps)]
        if a.exhaustive:
            results.append(checks.neg2_bound(a.m, a.k, caps))
            results.append(checks.cliq2_disjoint(a.m, a.k, caps))
            results.append(checks.pigeonhole(a.m, a.k, caps))
        return Outcome([ln for r in results for ln in r.lines], all(r.passed for r in results))
    if name == "conditions23":
        r = checks.conditions23(params, a.trials or 200, a.seed)
    elif name == "lemma3":
        r = checks.acceptance_algebra(params, a.trials or 200, a.seed)
    elif name == "lemma7":
        r = checks.pluck_steps(params, a.trials or 100, a.seed, size=a.size)
    elif name == "lemma9":
        r = checks.join_preserves_positives(params, a.trials or 100, a.seed, large=a.large, size=a.size)
    elif name == "lemma11":
        r = checks.deviation_chains(params, a.trials or 500, a.seed)
    elif name == "lemma15":
        r = checks.value_agreement(a.m, a.trials or 200, a.seed, mode=a.mode, fiber=a.fiber,
                           samples=a.samples, sampled=a.sampled, caps=caps, workers=a.workers)
    elif name == "lemma18":
        rep = cliq2_base_check(a.m, a.k, caps)
        return Outcome(rep.lines(), rep.holds)
    elif name == "lemma19":
        if a.x and a.y:
            rep = lemma19_check(_family(a.x), _family(a.y), a.m, mode=a.mode, caps=caps,
                                seed=a.seed, samples=a.samples, workers=a.workers)
            return Outcome(rep.lines(), rep.holds)
        r = checks.base_equivalence(a.m, a.trials or 50, a.seed, mode=a.mode, ell=a.ell, caps=caps)
    elif name == "lemma20":
        phi = _formula_or_pos2(a, params)
        rep = lemma20_check(phi, params, mode=a.mode, workers=a.workers, seed=a.seed, samples=a.samples)
        return Outcome([f"cs = {cs(phi)}"] + rep.lines(), rep.holds)
    elif name == "lemma22":
        r = checks.demorgan_size(a.trials or 1000, a.seed)
    else:  # pragma: no cover - argparse restricts the choices
        raise LabError(f"unknown check {name}")
    return Outcome(r.lines, r.passed)


def cmd_pluck(a) -> Outcome:
    params = _params(a)
    result, trace = pluck(_family(a.family), params, set_size=a.set_size)
    return Outcome(trace.format().splitlines())


def cmd_approx(a) -> Outcome:
    params = _params(a)
    op = approx_join if a.op == "join" else approx_meet
    result, trace = op(_family(a.x), _family(a.y), params, with_trace=True)
    lines = [f"op = {a.op}", f"size = {len(result)}", f"pluck_steps = {len(trace)}"]
    return Outcome(lines + format_family(result).splitlines())


def cmd_deviation(a) -> Outcome:
    rep = deviation(a.kind, _family(a.x), _family(a.y), _params(a))
    return Outcome(rep.lines())


def cmd_eval(a) -> Outcome:
    n = a.m * (a.m - 1) // 2
    phi = parse_formula(_read(a.formula), n)
    theta = parse_assignment(a.assign or "", n)
    value = eval_formula(phi, theta, a.mode)
    return Outcome([f"formula = {format_formula(phi)}", f"assignment = {format_assignment(theta)}",
                    f"mode = {a.mode}", f"value = {format_tri(value)}"])


def cmd_equiv(a) -> Outcome:
    lhs, rhs = _side(a.a, a.m, a.k), _side(a.b, a.m, a.k)
    kw = dict(mode=a.mode, caps=Caps.from_env(), seed=a.seed, samples=a.samples, workers=a.workers)
    if a.relation == "sim":
        v = equiv_sim(lhs, rhs, a.m, **kw)
    else:
        v = equiv_approx(lhs, rhs, a.m, **kw)
    return Outcome([f"relation = {a.relation}", f"mode = {a.mode}"] + v.lines(), v.holds)


def cmd_base(a) -> Outcome:
    fam = _family(a.family)
    b = base(fam)
    return Outcome([f"size = {len(fam)}", f"base = {len(b)}"] + format_family(b).splitlines())


def cmd_demorgan(a) -> Outcome:
    c = parse_circuit(_read(a.circuit))
    star = demorgan_convert(c)
    ok = circuit_size(star) <= 2 * circuit_size(c)
    lines = [f"size = {circuit_size(c)}", f"converted_size = {circuit_size(star)}",
             f"size_bound = {'PASS' if ok else 'FAIL'}"]
    return Outcome(lines + star.format().splitlines(), ok)


def cmd_rail(a) -> Outcome:
    if a.circuit:
        psi = dmn_of_rail_circuit(parse_circuit(_read(a.circuit)), a.m)
        return Outcome([f"formula = {format_formula(psi)}", f"cs = {cs(psi)}"])
    if a.assign is not None:
        n = a.m * (a.m - 1) // 2
        theta = parse_assignment(a.assign, n)
        beta = rail_of_tri(theta)
        return Outcome([
            "x = " + "".join(map(str, beta.x)),
            "y = " + "".join(map(str, beta.y)),
            f"graph = {format_double_graph(graph_of_tri(theta, a.m))}",
        ])
    r = checks.rail_chain(a.m, a.k, caps=Caps.from_env(), workers=a.workers)
    return Outcome(r.lines, r.passed)


def cmd_bounds(a) -> Outcome:
    if a.what == "appendixB":
        rep = bnd.check_appendix_b(a.m_exact, Fraction(a.epsilon), log2m=a.log2m)
        return Outcome(rep.lines(), rep.all_hold)
    if a.what == "schedule":
        s = bnd.schedule(a.m_exact, log2m=a.log2m, strict=a.strict)
        return Outcome([f"m = 2^{s.log2m}", f"ell = {s.ell}", f"k = {s.k}", f"p = {s.p}",
                        f"L = {s.L}", f"chain = {'PASS' if s.chain_ok else 'FAIL'}"], s.chain_ok)
    m = a.m_exact if a.m_exact is not None else 1 << a.log2m
    th = bnd.theorem13_threshold(m)
    lo, hi = th.log2_bounds()
    exact = th.exact_log2()
    lines = [f"m = {m}", f"ell = {th.ell}",
             f"threshold_log2 = {exact}" if exact is not None
             else f"threshold_log2_bounds = [{bnd.format_bound(lo, up=False)},{bnd.format_bound(hi, up=True)}]"]
    if a.size is not None:
        lines.append(f"size = {a.size}")
        lines.append(f"meets_threshold = {str(th.is_met(a.size)).lower()}")
    return Outcome(lines)


def cmd_experiment(a) -> Outcome:
    params = _params(a)
    phi = _formula_or_pos2(a, params)
    try:
        r = checks.dichotomy_experiment(phi, params, workers=a.workers, mode=a.mode)
    except PremiseError as exc:
        return Outcome(["premise = FAIL", f"reason = {exc.reason}", f"witness = {exc.witness}"], False)
    return Outcome(r.lines, r.passed)


# -- parser ---------------------------------------------------------------------


def _add_params(p: argparse.ArgumentParser, *, m: int = 5) -> None:
    p.add_argument("--m", type=int, default=m)
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--ell", type=int, default=3)
    p.add_argument("--p", type=int, default=4)
    p.add_argument("--L", type=int, default=None)
    p.add_argument("--strict", action="store_true", help="enforce 2 < ell < p < k < m")


def _add_run(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--mode", choices=MODES, default="exact")
    p.add_argument("--samples", type=int, default=100_000)


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="cliq2lab", description=__doc__.splitlines()[0])
    top.add_argument("--json", action="store_true", help="print the report as a JSON tree")
    sub = top.add_subparsers(dest="command", required=True)
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--json", action="store_true", default=argparse.SUPPRESS)

    p = sub.add_parser("enum", parents=[shared], help="enumerate positive or negative tests")
    p.add_argument("what", choices=["pos2", "neg2"])
    _add_params(p)
    p.add_argument("--list", action="store_true")
    p.set_defaults(func=cmd_enum)

    p = sub.add_parser("check", parents=[shared], help="run one property check")
    p.add_argument("what", choices=["lemma1", "lemma3", "lemma7", "lemma9", "lemma11", "lemma15",
                                    "lemma18", "lemma19", "lemma20", "lemma22", "conditions23"])
    _add_params(p)
    _add_run(p)
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--size", type=int, default=600, help="family size for plucking suites")
    p.add_argument("--large", action="store_true", help="lemma9: pluck-triggering pairs")
    p.add_argument("--fiber", action="store_true", help="lemma15: compare value-1 sets only")
    p.add_argument("--sampled", action="store_true", help="lemma15: sample even when exhaustive fits")
    p.add_argument("--exhaustive", action="store_true", help="lemma1: add disjointness and pigeonhole")
    p.add_argument("--x", help="lemma19: first family")
    p.add_argument("--y", help="lemma19: second family")
    p.add_argument("--formula", help="lemma20: formula text or file (default F(POS2))")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("pluck", parents=[shared], help="pluck a family and print the trace")
    p.add_argument("family")
    _add_params(p)
    p.add_argument("--set-size", type=int, default=None)
    p.set_defaults(func=cmd_pluck)

    p = sub.add_parser("approx", parents=[shared], help="approximate join or meet of two families")
    p.add_argument("op", choices=["join", "meet"])
    p.add_argument("x")
    p.add_argument("y")
    _add_params(p)
    p.set_defaults(func=cmd_approx)

    p = sub.add_parser("deviation", parents=[shared], help="deviation of one approximator step")
    p.add_argument("kind", choices=KINDS)
    p.add_argument("x")
    p.add_argument("y")
    _add_params(p)
    p.set_defaults(func=cmd_deviation)

    p = sub.add_parser("eval", parents=[shared], help="three-valued value of a formula")
    p.add_argument("formula")
    p.add_argument("--assign", default="", help="comma-separated index=0|1|?")
    p.add_argument("--m", type=int, default=4)
    p.add_argument("--mode", choices=MODES, default="exact")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("equiv", parents=[shared], help="compare two formulas, families or cliq2")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--relation", choices=["sim", "approx"], default="approx")
    p.add_argument("--m", type=int, default=4)
    p.add_argument("--k", type=int, default=3)
    _add_run(p)
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("base", parents=[shared], help="minimal members of a family")
    p.add_argument("family")
    p.set_defaults(func=cmd_base)

    p = sub.add_parser("demorgan", parents=[shared], help="push negations of a circuit to the leaves")
    p.add_argument("circuit")
    p.set_defaults(func=cmd_demorgan)

    p = sub.add_parser("rail", parents=[shared], help="double-rail encoding")
    p.add_argument("--m", type=int, default=5)
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--assign", default=None, help="show the rails of one assignment")
    p.add_argument("--circuit", default=None, help="translate a rail circuit to a formula")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_rail)

    p = sub.add_parser("bounds", parents=[shared], help="exact parameter schedule and inequalities")
    p.add_argument("what", choices=["appendixB", "schedule", "thresholds"])
    g = p.add_mutually_exclusive_group()
    g.add_argument("--log2m", type=int, default=None)
    g.add_argument("--m", dest="m_exact", type=int, default=None)
    p.add_argument("--epsilon", default="1/100")
    p.add_argument("--strict", action="store_true")
    p.add_argument("--size", type=int, default=None, help="thresholds: circuit size to test")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("experiment", parents=[shared], help="two-case experiment on a formula")
    p.add_argument("what", choices=["theorem13"])
    _add_params(p)
    _add_run(p)
    p.add_argument("--formula", default=None)
    p.set_defaults(func=cmd_experiment)
    return top


# -- output ---------------------------------------------------------------------


def lines_to_tree(lines: list[str]) -> dict:
    """Fold report lines into nested dicts.

    ``key = value`` becomes a field; a line without `` = `` opens a section
    that collects the indented lines after it (or, if nothing is indented
    under it, is appended to the ``lines`` list of its parent).
    """
    root: dict = {}
    stack: list[tuple[int, dict]] = [(-1, root)]
    for i, raw in enumerate(lines):
        depth = len(raw) - len(raw.lstrip(" "))
        text = raw.strip()
        while depth <= stack[-1][0]:
            stack.pop()
        node = stack[-1][1]
        key, sep, value = text.partition(" = ")
        if sep:
            node[key] = value
            continue
        nxt = lines[i + 1] if i + 1 < len(lines) else ""
        if len(nxt) - len(nxt.lstrip(" ")) > depth:
            child: dict = {}
            node.setdefault("sections", []).append({"title": text, **{"fields": child}})
            stack.append((depth, child))
        else:
            node.setdefault("lines", []).append(text)
    return root


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    a = parser.parse_args(argv)
    try:
        out = a.func(a)
    except (ResourceCapExceeded, LabError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if a.json:
        tree = {"command": a.command, "passed": out.ok, "report": lines_to_tree(out.lines)}
        print(json.dumps(tree, indent=2, sort_keys=False))
    else:
        for line in out.lines:
            print(line)
    return 0 if out.ok else 1


__all__ = ["build_parser", "lines_to_tree", "main"]
