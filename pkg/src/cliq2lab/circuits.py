"""Boolean circuits with negation, De Morgan conversion and the double-rail encoding.

Circuit text format, one gate per line (``;`` also separates gates)::

    g1 = VAR x1
    g2 = NOT g1
    g3 = AND g1 g2        # also OR
    g4 = TRUE             # also FALSE
    root g3

A NOT gate whose input is another NOT gate is folded away at parse time
(with a warning); gates that the root cannot reach are discarded.
"""

from __future__ import annotations

import re
import warnings
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .formulas import Formula, bot, land, lor, nvar, top, var
from .graphs import DoubleGraph, GraphError, edge_index
from .params import LabError

# gate kinds
VAR, NVAR, TRUE, FALSE, AND, OR, NOT = "var", "nvar", "true", "false", "and", "or", "not"
_ARITY = {VAR: 0, NVAR: 0, TRUE: 0, FALSE: 0, AND: 2, OR: 2, NOT: 1}
_DUAL = {VAR: NVAR, NVAR: VAR, TRUE: FALSE, FALSE: TRUE, AND: OR, OR: AND}


class CircuitError(LabError, ValueError):
    pass


class RailConflict(GraphError):
    pass


@dataclass(frozen=True)
class Gate:
    kind: str
    children: tuple = ()
    name: str | None = None  # variable name for VAR / NVAR leaves

    def label(self) -> str:
        if self.kind in (VAR, NVAR):
            return ("~" if self.kind == NVAR else "") + str(self.name)
        return self.kind


@dataclass(frozen=True)
class BoolCircuit:
    gates: Mapping  # id -> Gate
    root: object

    def __post_init__(self) -> None:
        _validate(self.gates, self.root)

    def __len__(self) -> int:
        return len(self.gates)

    def variables(self) -> list[str]:
        return sorted({g.name for g in self.gates.values() if g.kind in (VAR, NVAR)}, key=_name_key)

    def topo(self) -> list:
        """Gate ids with children before parents, in a deterministic order."""
        order, seen = [], set()
        stack = [(self.root, False)]
        while stack:
            gid, done = stack.pop()
            if done:
                order.append(gid)
                continue
            if gid in seen:
                continue
            seen.add(gid)
            stack.append((gid, True))
            for c in reversed(self.gates[gid].children):
                if c not in seen:
                    stack.append((c, False))
        return order

    def has_negation(self) -> bool:
        return any(g.kind == NOT for g in self.gates.values())

    def format(self) -> str:
        names = {gid: f"g{i}" for i, gid in enumerate(self.topo(), 1)}
        lines = []
        for gid in self.topo():
            g = self.gates[gid]
            if g.kind == VAR:
                rhs = f"VAR {g.name}"
            elif g.kind == NVAR:
                rhs = f"NVAR {g.name}"
            elif g.kind in (TRUE, FALSE):
                rhs = g.kind.upper()
            else:
                rhs = g.kind.upper() + " " + " ".join(names[c] for c in g.children)
            lines.append(f"{names[gid]} = {rhs}")
        lines.append(f"root {names[self.root]}")
        return "\n".join(lines) + "\n"


def _name_key(name: str):
    m = re.fullmatch(r"([A-Za-z_]*)(\d+)", name)
    return (m.group(1), int(m.group(2))) if m else (name, -1)


def _validate(gates: Mapping, root) -> None:
    if root not in gates:
        raise CircuitError(f"root {root} is not a gate")
    for gid, g in gates.items():
        if g.kind not in _ARITY:
            raise CircuitError(f"gate {gid}: unknown kind {g.kind!r}")
        if len(g.children) != _ARITY[g.kind]:
            raise CircuitError(
                f"gate {gid}: {g.kind.upper()} takes {_ARITY[g.kind]} inputs, got {len(g.children)}"
            )
        for c in g.children:
            if c not in gates:
                raise CircuitError(f"gate {gid}: unknown input {c}")
        if g.kind == NOT and gates[g.children[0]].kind == NOT:
            raise CircuitError(f"gate {gid}: NOT of a NOT gate")
    _check_acyclic(gates)


def _check_acyclic(gates: Mapping) -> None:
    color = dict.fromkeys(gates, 0)
    for start in gates:
        if color[start]:
            continue
        stack = [(start, iter(gates[start].children))]
        color[start] = 1
        while stack:
            gid, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                color[gid] = 2
                stack.pop()
            elif color[nxt] == 1:
                raise CircuitError(f"cycle through gate {nxt}")
            elif color[nxt] == 0:
                color[nxt] = 1
                stack.append((nxt, iter(gates[nxt].children)))


def _reachable(gates: Mapping, root) -> dict:
    keep, stack = set(), [root]
    while stack:
        gid = stack.pop()
        if gid in keep:
            continue
        keep.add(gid)
        stack.extend(gates[gid].children)
    return {gid: g for gid, g in gates.items() if gid in keep}


def normalize(gates: Mapping, root) -> tuple[dict, object, int]:
    """Fold NOT-NOT chains and drop unreachable gates; returns the fold count."""
    gates = dict(gates)
    folds = 0

    def strip(gid):
        nonlocal folds
        while gates[gid].kind == NOT and gates[gates[gid].children[0]].kind == NOT:
            gid = gates[gates[gid].children[0]].children[0]
            folds += 1
        return gid

    for gid in list(gates):
        g = gates[gid]
        if g.children:
            gates[gid] = Gate(g.kind, tuple(strip(c) for c in g.children), g.name)
    root = strip(root)
    return _reachable(gates, root), root, folds


_LINE = re.compile(r"^(\w+)\s*=\s*(\w+)((?:\s+\w+)*)\s*$")


def parse_circuit(text: str) -> BoolCircuit:
    gates: dict[str, Gate] = {}
    root = None
    items = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        for part in raw.split("#", 1)[0].split(";"):
            if part.strip():
                items.append((lineno, part.strip()))
    for lineno, item in items:
        if item.startswith("root"):
            bits = item.split()
            if len(bits) != 2:
                raise CircuitError(f"line {lineno}: expected 'root gID'")
            root = bits[1]
            continue
        m = _LINE.match(item)
        if not m:
            raise CircuitError(f"line {lineno}: cannot parse {item!r}")
        gid, op, rest = m.group(1), m.group(2).upper(), m.group(3).split()
        if gid in gates:
            raise CircuitError(f"line {lineno}: gate {gid} defined twice")
        if op in ("VAR", "NVAR"):
            if len(rest) != 1:
                raise CircuitError(f"line {lineno}: {op} takes one variable name")
            gates[gid] = Gate(VAR if op == "VAR" else NVAR, (), rest[0])
        elif op in ("TRUE", "FALSE", "AND", "OR", "NOT"):
            kind = op.lower()
            if len(rest) != _ARITY[kind]:
                raise CircuitError(
                    f"line {lineno}: {op} takes {_ARITY[kind]} inputs, got {len(rest)}"
                )
            gates[gid] = Gate(kind, tuple(rest))
        else:
            raise CircuitError(f"line {lineno}: unknown gate kind {op}")
    if root is None:
        raise CircuitError("missing 'root gID' line")
    if root not in gates:
        raise CircuitError(f"root {root} is not a gate")
    for gid, g in gates.items():
        for c in g.children:
            if c not in gates:
                raise CircuitError(f"gate {gid}: unknown input {c}")
    _check_acyclic(gates)
    gates, root, folds = normalize(gates, root)
    if folds:
        warnings.warn(f"folded {folds} double negation(s)", stacklevel=2)
    return BoolCircuit(gates, root)


def circuit_size(c: BoolCircuit) -> int:
    return len(c.gates)


# -- evaluation -----------------------------------------------------------------


def eval_circuit(c: BoolCircuit, beta: Mapping[str, int]) -> int:
    missing = [v for v in c.variables() if v not in beta]
    if missing:
        raise CircuitError(f"no value for variable(s) {missing}")
    cols = {name: np.array([bool(beta[name])]) for name in c.variables()}
    return int(eval_columns(c, cols)[0])


def eval_columns(c: BoolCircuit, cols: Mapping[str, np.ndarray]) -> np.ndarray:
    """Vectorised evaluation; ``cols`` maps each variable to a boolean column."""
    rows = len(next(iter(cols.values()))) if cols else 1
    val: dict = {}
    for gid in c.topo():
        g = c.gates[gid]
        if g.kind == VAR:
            v = np.asarray(cols[g.name], dtype=bool)
        elif g.kind == NVAR:
            v = ~np.asarray(cols[g.name], dtype=bool)
        elif g.kind == TRUE:
            v = np.ones(rows, dtype=bool)
        elif g.kind == FALSE:
            v = np.zeros(rows, dtype=bool)
        elif g.kind == NOT:
            v = ~val[g.children[0]]
        elif g.kind == AND:
            v = val[g.children[0]] & val[g.children[1]]
        else:
            v = val[g.children[0]] | val[g.children[1]]
        val[gid] = v
    return val[c.root]


def truth_table(c: BoolCircuit, names: Sequence[str] | None = None) -> np.ndarray:
    """Outputs on all 2^v points; variable ``names[0]`` is the most significant bit."""
    names = list(names) if names is not None else c.variables()
    v = len(names)
    idx = np.arange(1 << v, dtype=np.int64)
    cols = {name: ((idx >> (v - 1 - j)) & 1).astype(bool) for j, name in enumerate(names)}
    if not names:
        cols = {}
    out = eval_columns(c, cols)
    return np.broadcast_to(out, (1 << v,)).copy()


# -- De Morgan conversion -----------------------------------------------------------


def demorgan_convert(c: BoolCircuit) -> BoolCircuit:
    """Push negations to the leaves with one dual twin per gate.

    Every non-NOT gate ``x`` may appear positively as ``(x, +)`` and, when it
    sits under an odd number of negations, as its dual ``(x, -)``: AND and OR
    swap, TRUE and FALSE swap, a variable becomes its negated leaf.  Inputs
    that pass through a NOT gate switch the twin.  A negated root gets a
    fresh root node carrying the dual of the negated gate.  Only nodes
    reachable from the new root are kept.
    """
    gates = c.gates

    def target(child, sign: str):
        g = gates[child]
        if g.kind == NOT:
            return (g.children[0], "-" if sign == "+" else "+")
        return (child, sign)

    def make(node_gate: Gate, sign: str, kids) -> Gate:
        kind = node_gate.kind if sign == "+" else _DUAL[node_gate.kind]
        return Gate(kind, tuple(kids), node_gate.name)

    root_gate = gates[c.root]
    if root_gate.kind == NOT:
        inner = root_gate.children[0]
        start = ("r", inner)
        pending = {start: (gates[inner], "-")}
    else:
        start = (c.root, "+")
        pending = {start: (root_gate, "+")}
    out: dict = {}
    stack = [start]
    while stack:
        node = stack.pop()
        if node in out:
            continue
        g, sign = pending[node]
        kids = [target(ch, sign) for ch in g.children]
        out[node] = make(g, sign, kids)
        for kid in kids:
            if kid not in out:
                pending[kid] = (gates[kid[0]], kid[1])
                stack.append(kid)
    return BoolCircuit(out, start)


# -- double rail ------------------------------------------------------------------


@dataclass(frozen=True)
class RailAssignment:
    x: tuple[int, ...]
    y: tuple[int, ...]

    def as_dict(self) -> dict[str, int]:
        d = {f"x{i}": v for i, v in enumerate(self.x, 1)}
        d.update({f"y{i}": v for i, v in enumerate(self.y, 1)})
        return d


def rail_of_tri(theta: Sequence[int]) -> RailAssignment:
    return RailAssignment(
        tuple(1 if v == 1 else 0 for v in theta),
        tuple(1 if v == 0 else 0 for v in theta),
    )


def graph_of_rail(beta: RailAssignment, m: int) -> DoubleGraph:
    idx = edge_index(m)
    if len(beta.x) != idx.n or len(beta.y) != idx.n:
        raise CircuitError(f"rail assignment needs {idx.n} values per rail")
    clash = [i + 1 for i in range(idx.n) if beta.x[i] and beta.y[i]]
    if clash:
        raise RailConflict(f"both rails set for variable(s) {clash}")
    return DoubleGraph(
        frozenset(idx.edges[i] for i in range(idx.n) if beta.x[i]),
        frozenset(idx.edges[i] for i in range(idx.n) if beta.y[i]),
    )


def graph_of_tri(theta: Sequence[int], m: int) -> DoubleGraph:
    return graph_of_rail(rail_of_tri(theta), m)


def rail_columns(thetas: np.ndarray) -> dict[str, np.ndarray]:
    """Rail values for a batch of three-valued assignments."""
    cols = {}
    for i in range(thetas.shape[1]):
        cols[f"x{i + 1}"] = thetas[:, i] == 1
        cols[f"y{i + 1}"] = thetas[:, i] == 0
    return cols


_RAIL = re.compile(r"([xy])(\d+)")


def dmn_of_rail_circuit(c: BoolCircuit, m: int) -> Formula:
    """Substitute x_i -> v_i and y_i -> ~v_i, convert, and read back a formula."""
    n = edge_index(m).n
    subst = {}
    for gid, g in c.gates.items():
        if g.kind in (VAR, NVAR):
            match = _RAIL.fullmatch(str(g.name))
            if not match or not 1 <= int(match.group(2)) <= n:
                raise CircuitError(f"{g.name!r} is not a rail variable for m={m}")
            negative = (match.group(1) == "y") != (g.kind == NVAR)
            subst[gid] = Gate(NVAR if negative else VAR, (), f"v{match.group(2)}")
        else:
            subst[gid] = g
    star = demorgan_convert(BoolCircuit(subst, c.root))
    return formula_of_circuit(star)


def formula_of_circuit(c: BoolCircuit) -> Formula:
    """Read a negation-free circuit back as a hash-consed formula."""
    if c.has_negation():
        raise CircuitError("circuit still contains NOT gates")
    val: dict = {}
    for gid in c.topo():
        g = c.gates[gid]
        if g.kind in (VAR, NVAR):
            i = int(str(g.name).lstrip("v"))
            f = var(i) if g.kind == VAR else nvar(i)
        elif g.kind == TRUE:
            f = top()
        elif g.kind == FALSE:
            f = bot()
        elif g.kind == AND:
            f = land(val[g.children[0]], val[g.children[1]])
        else:
            f = lor(val[g.children[0]], val[g.children[1]])
        val[gid] = f
    return val[c.root]


def cliq2_rail_circuit(m: int, k: int) -> BoolCircuit:
    """Disjunction over POS2 of the conjunction of the test's rail variables."""
    from .doubletests import enum_pos2

    idx = edge_index(m)
    gates: dict[str, Gate] = {}
    for i in range(1, idx.n + 1):
        gates[f"x{i}"] = Gate(VAR, (), f"x{i}")
        gates[f"y{i}"] = Gate(VAR, (), f"y{i}")
    terms = []
    for t, d in enumerate(enum_pos2(m, k)):
        leaves = [f"x{idx.index_of_edge(e)}" for e in sorted(d.pos)]
        leaves += [f"y{idx.index_of_edge(e)}" for e in sorted(d.neg)]
        acc = leaves[-1]
        for j, leaf in enumerate(reversed(leaves[:-1])):
            gid = f"t{t}a{j}"
            gates[gid] = Gate(AND, (leaf, acc))
            acc = gid
        terms.append(acc)
    if not terms:
        gates["false"] = Gate(FALSE)
        return BoolCircuit(_reachable(gates, "false"), "false")
    acc = terms[-1]
    for j, term in enumerate(reversed(terms[:-1])):
        gid = f"o{j}"
        gates[gid] = Gate(OR, (term, acc))
        acc = gid
    return BoolCircuit(_reachable(gates, acc), acc)


def circuit_of_formula(phi: Formula) -> BoolCircuit:
    """One gate per distinct subterm."""
    from .formulas import AND as F_AND, BOT, NEG, POS, TOP, subterms

    gates, ids = {}, {}
    for j, t in enumerate(subterms(phi)):
        gid = f"g{j + 1}"
        ids[id(t)] = gid
        if t.op == TOP:
            gates[gid] = Gate(TRUE)
        elif t.op == BOT:
            gates[gid] = Gate(FALSE)
        elif t.op == POS:
            gates[gid] = Gate(VAR, (), f"v{t.index}")
        elif t.op == NEG:
            gates[gid] = Gate(NVAR, (), f"v{t.index}")
        else:
            kind = AND if t.op == F_AND else OR
            gates[gid] = Gate(kind, (ids[id(t.a)], ids[id(t.b)]))
    return BoolCircuit(gates, ids[id(phi)])


__all__ = [
    "AND",
    "BoolCircuit",
    "CircuitError",
    "FALSE",
    "Gate",
    "NOT",
    "NVAR",
    "OR",
    "RailAssignment",
    "RailConflict",
    "TRUE",
    "VAR",
    "circuit_of_formula",
    "circuit_size",
    "cliq2_rail_circuit",
    "demorgan_convert",
    "dmn_of_rail_circuit",
    "eval_circuit",
    "eval_columns",
    "formula_of_circuit",
    "graph_of_rail",
    "graph_of_tri",
    "normalize",
    "parse_circuit",
    "rail_columns",
    "rail_of_tri",
    "truth_table",
]
