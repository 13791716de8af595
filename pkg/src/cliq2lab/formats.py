"""Line-oriented text formats for double graphs, families and assignments.

Double graph grammar (whitespace between tokens is ignored)::

    double := '+' side '-' side
    side   := '[' edge* ']'
    edge   := '(' INT ',' INT ')'

A family file holds one double graph per line.  ``#`` starts a comment that
runs to the end of the line; blank lines are skipped.

Assignment strings are comma separated ``index=value`` items with value in
``0``, ``1`` or ``?``; indices that are not listed are undefined (``?``).
"""

from __future__ import annotations

import re
from typing import Iterable

from .graphs import DoubleGraph, Edge, GraphError, canonical, graph

UNDEF = 2
_EDGE = re.compile(r"\(\s*(\d+)\s*,\s*(\d+)\s*\)")
_SIDE = re.compile(r"\[\s*((?:\(\s*\d+\s*,\s*\d+\s*\)\s*)*)\]")
_DOUBLE = re.compile(
    r"^\s*\+\s*(\[[^\]]*\])\s*-\s*(\[[^\]]*\])\s*$"
)


class FormatError(GraphError):
    pass


def format_graph(g: Iterable[Edge]) -> str:
    return "[" + "".join(str(e) for e in sorted(g)) + "]"


def format_double_graph(d: DoubleGraph) -> str:
    return f"+{format_graph(d.pos)} -{format_graph(d.neg)}"


def _parse_side(text: str) -> frozenset:
    match = _SIDE.fullmatch(text.strip())
    if not match:
        raise FormatError(f"malformed edge list {text!r}")
    return graph((int(a), int(b)) for a, b in _EDGE.findall(match.group(1)))


def parse_double_graph(text: str) -> DoubleGraph:
    match = _DOUBLE.match(text)
    if not match:
        raise FormatError(f"malformed double graph {text!r}")
    return DoubleGraph(_parse_side(match.group(1)), _parse_side(match.group(2)))


def parse_family(text: str) -> frozenset:
    members = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            members.append(parse_double_graph(line))
        except GraphError as exc:
            raise FormatError(f"line {lineno}: {exc}") from None
    return frozenset(members)


def format_family(family: Iterable[DoubleGraph]) -> str:
    return "".join(format_double_graph(d) + "\n" for d in canonical(family))


def parse_assignment(text: str, n: int) -> tuple[int, ...]:
    values = [UNDEF] * n
    for item in filter(None, (s.strip() for s in text.split(","))):
        key, sep, val = item.partition("=")
        if not sep:
            raise FormatError(f"expected index=value, got {item!r}")
        i = int(key)
        if not 1 <= i <= n:
            raise FormatError(f"index {i} out of range 1..{n}")
        if val not in ("0", "1", "?"):
            raise FormatError(f"value must be 0, 1 or ?, got {val!r}")
        values[i - 1] = UNDEF if val == "?" else int(val)
    return tuple(values)


def format_assignment(theta: Iterable[int]) -> str:
    return ",".join(
        f"{i}={v}" for i, v in enumerate(theta, 1) if v != UNDEF
    )


def format_tri(value: int) -> str:
    return "?" if value == UNDEF else str(value)
