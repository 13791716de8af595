"""Negation-normal formulas over edge variables and their set representations.

Formulas are hash-consed: building the same term twice returns the same
object, so ``cs`` (the number of distinct subterms) is just the size of the
reachable node set.  The constant rules ``T | x = T``, ``F & x = F``,
``T & x = x`` and ``F | x = x`` are applied when a node is built.

Text grammar (whitespace is ignored)::

    phi := 'T' | 'F' | 'v' INT | '~v' INT | '(' phi ('|' | '&') phi ')'
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from typing import Iterable, Union

from .approx import ac_neg, ac_pos, approx_join, approx_meet, product
from .bounds import Bounds, bound_expressions, theorem13_threshold
from .doubletests import test_space
from .graphs import DoubleGraph, EMPTY, edge_index
from .params import LabError, Params
from .sunflower import vertex_set_norm

TOP, BOT, POS, NEG, OR, AND = "T", "F", "pos", "neg", "or", "and"


class FormulaSyntaxError(LabError, ValueError):
    def __init__(self, msg: str, pos: int):
        super().__init__(f"{msg} at position {pos}")
        self.pos = pos


class Formula:
    """One interned node.  Compare with ``is``; ``==`` is identity too."""

    __slots__ = ("op", "a", "b", "index", "_hash", "spine", "contradictory", "__weakref__")

    def __init__(self, op, a=None, b=None, index=0):
        self.op, self.a, self.b, self.index = op, a, b, index
        self._hash = hash((op, id(a), id(b), index))
        self.spine: frozenset = frozenset()
        self.contradictory = False
        if op == AND:
            lits = set()
            for c in (a, b):
                if c.op == AND:
                    lits |= c.spine
                elif c.op in (POS, NEG):
                    lits.add((c.op, c.index))
            self.spine = frozenset(lits)
            self.contradictory = any((NEG, i) in self.spine for o, i in self.spine if o == POS)

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other) -> bool:
        return self is other

    def __or__(self, other: "Formula") -> "Formula":
        return lor(self, other)

    def __and__(self, other: "Formula") -> "Formula":
        return land(self, other)

    @property
    def is_literal(self) -> bool:
        return self.op in (POS, NEG)

    def children(self) -> tuple:
        return (self.a, self.b) if self.op in (OR, AND) else ()

    def __repr__(self) -> str:
        return f"Formula({format_formula(self)})"

    __str__ = lambda self: format_formula(self)  # noqa: E731


_table: dict[tuple, Formula] = {}
_lock = threading.Lock()


def _intern(op, a=None, b=None, index=0) -> Formula:
    key = (op, a, b, index)
    node = _table.get(key)
    if node is not None:
        return node
    with _lock:
        node = _table.get(key)
        if node is None:
            node = Formula(op, a, b, index)
            _table[key] = node
    return node


def top() -> Formula:
    return _intern(TOP)


def bot() -> Formula:
    return _intern(BOT)


def var(i: int) -> Formula:
    if i < 1:
        raise ValueError(f"variable indices start at 1, got {i}")
    return _intern(POS, index=i)


def nvar(i: int) -> Formula:
    if i < 1:
        raise ValueError(f"variable indices start at 1, got {i}")
    return _intern(NEG, index=i)


def lor(a: Formula, b: Formula) -> Formula:
    if a.op == TOP or b.op == TOP:
        return top()
    if a.op == BOT:
        return b
    if b.op == BOT:
        return a
    return _intern(OR, a, b)


def land(a: Formula, b: Formula) -> Formula:
    if a.op == BOT or b.op == BOT:
        return bot()
    if a.op == TOP:
        return b
    if b.op == TOP:
        return a
    return _intern(AND, a, b)


def big_or(items: Iterable[Formula]) -> Formula:
    """Right-nested disjunction; the empty disjunction is F."""
    items = list(items)
    out = bot()
    for x in reversed(items):
        out = lor(x, out)
    return out


def big_and(items: Iterable[Formula]) -> Formula:
    """Right-nested conjunction; the empty conjunction is T."""
    items = list(items)
    out = top()
    for x in reversed(items):
        out = land(x, out)
    return out


def subterms(phi: Formula) -> list[Formula]:
    """Distinct subterms in post-order (children before parents)."""
    seen: set[int] = set()
    order: list[Formula] = []
    stack: list[tuple[Formula, bool]] = [(phi, False)]
    while stack:
        node, done = stack.pop()
        if done:
            order.append(node)
            continue
        if id(node) in seen:
            continue
        seen.add(id(node))
        stack.append((node, True))
        for c in reversed(node.children()):
            if id(c) not in seen:
                stack.append((c, False))
    return order


def cs(phi: Formula) -> int:
    return len(subterms(phi))


def max_var(phi: Formula) -> int:
    return max((t.index for t in subterms(phi) if t.is_literal), default=0)


# -- text format -------------------------------------------------------------


def parse_formula(text: str, n: int | None = None) -> Formula:
    """Parse the fully parenthesised grammar, optionally checking indices <= n."""
    stack: list = []  # Formula values and pending '(' / operator markers
    i, size = 0, len(text)

    def push_value(f: Formula, at: int) -> None:
        if stack and isinstance(stack[-1], Formula):
            raise FormulaSyntaxError("expected '|' or '&'", at)
        stack.append(f)

    while i < size:
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch == "(":
            if stack and isinstance(stack[-1], Formula):
                raise FormulaSyntaxError("unexpected '('", i)
            stack.append(("(", i))
            i += 1
        elif ch in "|&":
            after_open = len(stack) >= 2 and isinstance(stack[-2], tuple) and stack[-2][0] == "("
            if not stack or not isinstance(stack[-1], Formula) or not after_open:
                raise FormulaSyntaxError(f"unexpected {ch!r}", i)
            stack.append((ch, i))
            i += 1
        elif ch == ")":
            if len(stack) < 4 or not isinstance(stack[-1], Formula) or not isinstance(stack[-3], Formula):
                raise FormulaSyntaxError("unexpected ')'", i)
            right, (op, _), left, opener = stack[-1], stack[-2], stack[-3], stack[-4]
            if op not in "|&" or not isinstance(opener, tuple) or opener[0] != "(":
                raise FormulaSyntaxError("unexpected ')'", i)
            del stack[-4:]
            push_value(lor(left, right) if op == "|" else land(left, right), i)
            i += 1
        elif ch in "TF":
            push_value(top() if ch == "T" else bot(), i)
            i += 1
        elif ch == "v" or (ch == "~" and text.startswith("~v", i)):
            start = i
            neg = ch == "~"
            i += 2 if neg else 1
            j = i
            while j < size and text[j].isdigit():
                j += 1
            if j == i:
                raise FormulaSyntaxError("expected a variable index", i)
            idx = int(text[i:j])
            if idx < 1:
                raise FormulaSyntaxError("variable index must be >= 1", i)
            if n is not None and idx > n:
                raise FormulaSyntaxError(f"variable index {idx} exceeds n={n}", i)
            push_value(nvar(idx) if neg else var(idx), start)
            i = j
        else:
            raise FormulaSyntaxError(f"unexpected character {ch!r}", i)
    if len(stack) != 1 or not isinstance(stack[0], Formula):
        raise FormulaSyntaxError("incomplete formula", size)
    return stack[0]


def format_formula(phi: Formula) -> str:
    out: dict[int, str] = {}
    for t in subterms(phi):
        if t.op == TOP:
            s = "T"
        elif t.op == BOT:
            s = "F"
        elif t.op == POS:
            s = f"v{t.index}"
        elif t.op == NEG:
            s = f"~v{t.index}"
        else:
            sym = "|" if t.op == OR else "&"
            s = f"({out[id(t.a)]} {sym} {out[id(t.b)]})"
        out[id(t)] = s
    return out[id(phi)]


# -- set representations -----------------------------------------------------


class _TopRep:
    """The T element of {T} u P(D)."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self) -> str:
        return "TOP"

    def __reduce__(self):
        return (_TopRep, ())


TOP_REP = _TopRep()
SetRep = Union[_TopRep, frozenset]


def literal_family(t: Formula, m: int) -> frozenset:
    e = edge_index(m).edge_of_index(t.index)
    if t.op == POS:
        return frozenset({DoubleGraph(frozenset({e}), EMPTY)})
    return frozenset({DoubleGraph(EMPTY, frozenset({e}))})


def _check_vars(phi: Formula, m: int) -> None:
    n = m * (m - 1) // 2
    top_idx = max_var(phi)
    if top_idx > n:
        raise ValueError(f"variable v{top_idx} exceeds n={n} for m={m}")


def sem_sets(phi: Formula, m: int) -> dict[Formula, SetRep]:
    """S(t) for every subterm t of phi."""
    _check_vars(phi, m)
    out: dict[Formula, SetRep] = {}
    for t in subterms(phi):
        if t.op == TOP:
            out[t] = TOP_REP
        elif t.op == BOT:
            out[t] = frozenset()
        elif t.is_literal:
            out[t] = literal_family(t, m)
        else:
            x, y = out[t.a], out[t.b]
            if t.op == OR:
                out[t] = TOP_REP if (x is TOP_REP or y is TOP_REP) else x | y
            elif x is TOP_REP:
                out[t] = y
            elif y is TOP_REP:
                out[t] = x
            else:
                out[t] = product(x, y)
    return out


def sem_set(phi: Formula, m: int) -> SetRep:
    return sem_sets(phi, m)[phi]


def approx_sets(phi: Formula, params: Params) -> dict[Formula, SetRep]:
    """AP(t) for every subterm t of phi."""
    _check_vars(phi, params.m)
    out: dict[Formula, SetRep] = {}
    for t in subterms(phi):
        if t.op == TOP:
            out[t] = TOP_REP
        elif t.op == BOT:
            out[t] = frozenset()
        elif t.is_literal:
            out[t] = literal_family(t, params.m)
        else:
            x, y = out[t.a], out[t.b]
            if t.op == OR:
                out[t] = TOP_REP if (x is TOP_REP or y is TOP_REP) else approx_join(x, y, params)
            elif x is TOP_REP:
                out[t] = y
            elif y is TOP_REP:
                out[t] = x
            else:
                out[t] = approx_meet(x, y, params)
    return out


def approx_set(phi: Formula, params: Params) -> SetRep:
    return approx_sets(phi, params)[phi]


def ac_pos_rep(rep: SetRep, params: Params) -> frozenset:
    if rep is TOP_REP:
        return test_space(params.m, params.k, params.caps, negatives=False).pos2_set
    return ac_pos(rep, params)


def ac_neg_rep(rep: SetRep, params: Params) -> frozenset:
    if rep is TOP_REP:
        return test_space(params.m, params.k, params.caps).neg2_set
    return ac_neg(rep, params)


# -- total deviations and the composition chains -----------------------------


@dataclass
class Deviations:
    """Total deviations of every subterm of one formula."""

    phi: Formula
    params: Params
    S: dict
    AP: dict
    pos: dict = field(default_factory=dict)
    neg: dict = field(default_factory=dict)
    ac_pos_S: dict = field(default_factory=dict)
    ac_pos_AP: dict = field(default_factory=dict)
    ac_neg_S: dict = field(default_factory=dict)
    ac_neg_AP: dict = field(default_factory=dict)


def total_deviations(phi: Formula, params: Params, *, negatives: bool = True) -> Deviations:
    S = sem_sets(phi, params.m)
    AP = approx_sets(phi, params)
    dev = Deviations(phi, params, S, AP)
    for t in S:
        dev.ac_pos_S[t] = ac_pos_rep(S[t], params)
        dev.ac_pos_AP[t] = ac_pos_rep(AP[t], params)
        dev.pos[t] = dev.ac_pos_S[t] - dev.ac_pos_AP[t]
        if negatives:
            dev.ac_neg_S[t] = ac_neg_rep(S[t], params)
            dev.ac_neg_AP[t] = ac_neg_rep(AP[t], params)
            dev.neg[t] = dev.ac_neg_AP[t] - dev.ac_neg_S[t]
    return dev


def total_deviation_pos(phi: Formula, params: Params) -> frozenset:
    return total_deviations(phi, params, negatives=False).pos[phi]


def total_deviation_neg(phi: Formula, params: Params) -> frozenset:
    return total_deviations(phi, params).neg[phi]


@dataclass
class ChainViolation:
    item: int
    node: Formula
    stray: frozenset

    def line(self) -> str:
        return f"item {self.item} fails at {format_formula(self.node)}: {len(self.stray)} stray tests"


def step_deviations(x: SetRep, y: SetRep, op: str, params: Params) -> tuple[frozenset, frozenset]:
    """Positive and negative step deviation of one approximator applied to AP children."""
    if x is TOP_REP or y is TOP_REP:
        return frozenset(), frozenset()
    if op == OR:
        exact, approx = x | y, approx_join(x, y, params)
    else:
        exact, approx = product(x, y), approx_meet(x, y, params)
    pos = ac_pos(exact, params) - ac_pos(approx, params)
    neg = ac_neg(approx, params) - ac_neg(exact, params)
    return pos, neg


def deviation_chain_violations(phi: Formula, params: Params) -> list[ChainViolation]:
    """Check the four inclusion chains at every compound subterm of phi.

    Items: 1 = positive/or, 2 = positive/and, 3 = negative/or, 4 = negative/and.
    """
    dev = total_deviations(phi, params)
    bad: list[ChainViolation] = []
    for t in subterms(phi):
        if t.op not in (OR, AND):
            continue
        step_pos, step_neg = step_deviations(dev.AP[t.a], dev.AP[t.b], t.op, params)
        base = 1 if t.op == OR else 2
        stray = dev.pos[t] - (dev.pos[t.a] | dev.pos[t.b] | step_pos)
        if stray:
            bad.append(ChainViolation(base, t, stray))
        stray = dev.neg[t] - (dev.neg[t.a] | dev.neg[t.b] | step_neg)
        if stray:
            bad.append(ChainViolation(base + 2, t, stray))
    return bad


# -- counting report ---------------------------------------------------------


@dataclass
class WitnessCheck:
    positive_test: DoubleGraph
    member: DoubleGraph
    t_plus: int
    t_minus: int
    product_size: int
    product_in_neg2: int
    accepted: int

    def lines(self) -> list[str]:
        return [
            f"witness_positive_test = {self.positive_test}",
            f"witness_member = {self.member}",
            f"T_plus = {self.t_plus}",
            f"T_minus = {self.t_minus}",
            f"T_plus_x_T_minus = {self.product_size}",
            f"T_plus_x_T_minus_in_NEG2 = {self.product_in_neg2}",
            f"T_plus_x_T_minus_in_NEG2_accepted = {self.accepted}",
        ]


def _injective_on(f: tuple, vs: frozenset) -> bool:
    colors = [f[v - 1] for v in vs]
    return len(set(colors)) == len(colors)


def witness_check(ap: frozenset, params: Params) -> WitnessCheck | None:
    """Enumerate the colorings injective on the witness member's vertex sets."""
    from .graphs import vertices

    space = test_space(params.m, params.k, params.caps)
    for d in space.pos2:
        for e in sorted(ap, key=DoubleGraph.sort_key):
            if e.pos <= d.pos and e.neg <= d.neg:
                vp, vn = vertices(e.pos), vertices(e.neg)
                tp = {f for f in space.colorings if _injective_on(f, vp)}
                tm = {g for g in space.colorings if _injective_on(g, vn)}
                accepted = ac_neg(ap, params)
                inside = [c for c in space.neg2 if c.f in tp and c.g in tm]
                return WitnessCheck(
                    positive_test=d,
                    member=e,
                    t_plus=len(tp),
                    t_minus=len(tm),
                    product_size=len(tp) * len(tm),
                    product_in_neg2=len(inside),
                    accepted=sum(1 for c in inside if c in accepted),
                )
    return None


@dataclass
class DeviationCountReport:
    cs: int
    dev_pos: int
    dev_neg: int
    bounds: Bounds
    ac_pos_ap: int
    ac_neg_ap: int
    witness: WitnessCheck | None

    @property
    def item3_premise(self) -> bool:
        return self.ac_pos_ap > 0

    def lines(self) -> list[str]:
        b = self.bounds
        printed_neg = b.pos_count_form(self.cs)
        printed_pos = b.neg_count_form(self.cs)
        out = [
            f"cs = {self.cs}",
            f"dev_pos = {self.dev_pos}",
            f"dev_neg = {self.dev_neg}",
            f"bounds_applicable = {str(b.applicable).lower()}",
            f"item1_as_printed = dev_neg {self.dev_neg} < {printed_neg} {_verdict(self.dev_neg < printed_neg)}",
            f"item2_as_printed = dev_pos {self.dev_pos} <= {printed_pos} {_verdict(self.dev_pos <= printed_pos)}",
            f"item1_swapped = dev_pos {self.dev_pos} < {printed_neg} {_verdict(self.dev_pos < printed_neg)}",
            f"item2_swapped = dev_neg {self.dev_neg} <= {printed_pos} {_verdict(self.dev_neg <= printed_pos)}",
            f"ac_pos_ap = {self.ac_pos_ap}",
            f"ac_neg_ap = {self.ac_neg_ap}",
        ]
        if self.item3_premise:
            ok = self.ac_neg_ap >= b.chain_lower
            out.append(f"item3 = ac_neg_ap {self.ac_neg_ap} >= {b.chain_lower} {_verdict(ok)}")
        else:
            out.append("item3 = skipped (ac_pos_ap is empty)")
        if self.witness is not None:
            out.extend(self.witness.lines())
        return out


def _verdict(ok: bool) -> str:
    return "PASS" if ok else "FAIL"


def lemma12_report(phi: Formula, params: Params) -> DeviationCountReport:
    dev = total_deviations(phi, params)
    ap = dev.AP[phi]
    wit = None
    if dev.ac_pos_AP[phi] and ap is not TOP_REP:
        wit = witness_check(ap, params)
    return DeviationCountReport(
        cs=cs(phi),
        dev_pos=len(dev.pos[phi]),
        dev_neg=len(dev.neg[phi]),
        bounds=bound_expressions(params),
        ac_pos_ap=len(dev.ac_pos_AP[phi]),
        ac_neg_ap=len(dev.ac_neg_AP[phi]),
        witness=wit,
    )


# -- the two-case experiment -------------------------------------------------


class PremiseError(LabError):
    def __init__(self, msg: str, witness: str):
        super().__init__(f"{msg}; witness: {witness}")
        self.reason = msg
        self.witness = witness


@dataclass
class DichotomyReport:
    params: Params
    cs: int
    case: int
    pos2: int
    neg2: int
    ap_size: int
    ap_vertex_norm: int
    ac_pos_ap: int
    ac_neg_ap: int
    dev_pos: int
    dev_neg: int
    bounds: Bounds
    threshold_met: bool
    extra: list = field(default_factory=list)

    def lines(self) -> list[str]:
        p, b = self.params, self.bounds
        out = [
            f"params = {p.describe()}",
            f"cs = {self.cs}",
            f"pos2 = {self.pos2}",
            f"neg2 = {self.neg2}",
            f"ap_size = {self.ap_size}",
            f"ap_vertex_norm = {self.ap_vertex_norm}",
            f"ac_pos_ap = {self.ac_pos_ap}",
            f"ac_neg_ap = {self.ac_neg_ap}",
            f"dev_pos = {self.dev_pos}",
            f"dev_neg = {self.dev_neg}",
            f"case = {self.case}",
        ]
        if self.case == 1:
            lhs = b.pos_count_form(self.cs)
            out.append(f"case1_lhs = cs*L^2*C(m-ell-1,k-ell-1)*bracket = {lhs}")
            out.append(f"case1_rhs = |POS2| = {self.pos2}")
            out.append(f"case1_chain = {_verdict(lhs >= self.pos2)}")
        else:
            lhs = b.neg_count_form(self.cs)
            out.append(f"case2_lhs = cs*L^2*2^(1-p)*(k-1)^(2m) = {lhs}")
            out.append(f"case2_mid = dev_neg = {self.dev_neg}")
            out.append(f"case2_rhs = (k-1)^(2m)/4 = {b.chain_lower}")
            out.append(f"case2_chain_upper = {_verdict(lhs >= self.dev_neg)}")
            out.append(f"case2_chain_lower = {_verdict(self.dev_neg >= b.chain_lower)}")
        out.append(f"bounds_applicable = {str(b.applicable).lower()}")
        out.append(f"threshold_met = {str(self.threshold_met).lower()}")
        out.extend(self.extra)
        return out


def theorem13_dichotomy(phi: Formula, params: Params) -> DichotomyReport:
    """Decide which case of the two-case argument applies and measure both sides."""
    space = test_space(params.m, params.k, params.caps)
    dev = total_deviations(phi, params)
    acp, acn = dev.ac_pos_S[phi], dev.ac_neg_S[phi]
    if acp != space.pos2_set:
        missing = min(space.pos2_set - acp, key=DoubleGraph.sort_key)
        raise PremiseError("AC^p(phi) != POS2", f"no accepted positive test {missing}" if not acp else f"{missing} not accepted")
    if acn:
        c = min(acn)
        raise PremiseError("AC^n(phi) is not empty", f"accepted negative pair f={c.f} g={c.g}")
    ap = dev.AP[phi]
    ap_fam = frozenset() if ap is TOP_REP else ap
    case = 1 if not dev.ac_pos_AP[phi] else 2
    size = cs(phi)
    return DichotomyReport(
        params=params,
        cs=size,
        case=case,
        pos2=len(space.pos2),
        neg2=len(space.neg2),
        ap_size=len(ap_fam),
        ap_vertex_norm=vertex_set_norm(ap_fam),
        ac_pos_ap=len(dev.ac_pos_AP[phi]),
        ac_neg_ap=len(dev.ac_neg_AP[phi]),
        dev_pos=len(dev.pos[phi]),
        dev_neg=len(dev.neg[phi]),
        bounds=bound_expressions(params),
        threshold_met=theorem13_threshold(params.m, params.ell).is_met(size),
    )


__all__ = [
    "AND",
    "BOT",
    "ChainViolation",
    "Deviations",
    "DichotomyReport",
    "Formula",
    "FormulaSyntaxError",
    "DeviationCountReport",
    "NEG",
    "OR",
    "POS",
    "PremiseError",
    "SetRep",
    "TOP",
    "TOP_REP",
    "WitnessCheck",
    "ac_neg_rep",
    "ac_pos_rep",
    "approx_set",
    "approx_sets",
    "big_and",
    "big_or",
    "bot",
    "cs",
    "format_formula",
    "land",
    "deviation_chain_violations",
    "lemma12_report",
    "literal_family",
    "lor",
    "max_var",
    "nvar",
    "parse_formula",
    "sem_set",
    "sem_sets",
    "step_deviations",
    "subterms",
    "theorem13_dichotomy",
    "top",
    "total_deviation_neg",
    "total_deviation_pos",
    "total_deviations",
    "var",
]
