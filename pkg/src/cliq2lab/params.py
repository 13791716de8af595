"""Run parameters, resource caps and the errors shared across the package."""

from __future__ import annotations

import os
from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import factorial

DEFAULT_CAP = 10**8


class LabError(Exception):
    """Base class for every error raised by cliq2lab."""


class ParamError(LabError, ValueError):
    pass


class ResourceCapExceeded(LabError):
    def __init__(self, what: str, size: int, cap: int):
        super().__init__(f"{what}: {size} objects exceeds cap {cap}")
        self.what = what
        self.size = size
        self.cap = cap


@dataclass(frozen=True)
class Caps:
    """Upper limits on enumerated objects; exceeding one is a hard error."""

    enumeration: int = DEFAULT_CAP
    assignments: int = 3**15
    sunflower_search: int = 200_000

    @classmethod
    def from_env(cls) -> "Caps":
        kw = {}
        for name, var in (
            ("enumeration", "CLIQ2LAB_CAP"),
            ("assignments", "CLIQ2LAB_ASSIGNMENT_CAP"),
            ("sunflower_search", "CLIQ2LAB_SUNFLOWER_CAP"),
        ):
            if var in os.environ:
                kw[name] = int(os.environ[var])
        return cls(**kw)

    def check(self, what: str, size: int, cap: int | None = None) -> None:
        limit = self.enumeration if cap is None else cap
        if size > limit:
            raise ResourceCapExceeded(what, size, limit)


def sunflower_threshold(p: int, ell: int) -> int:
    """(p-1)^ell * ell!, the size above which a p-petal sunflower must exist."""
    return (p - 1) ** ell * factorial(ell)


@dataclass(frozen=True)
class Params:
    """Instance sizes for one run.

    ``strict`` enforces ``2 < ell < p < k < m``; relaxed desk mode only
    asks for ``2 <= ell``, ``2 <= p`` and ``2 <= k <= m``.
    """

    m: int
    k: int
    ell: int = 3
    p: int = 4
    L: int | None = None
    strict: bool = False
    caps: Caps = field(default_factory=Caps)

    def __post_init__(self) -> None:
        if self.L is None:
            object.__setattr__(self, "L", sunflower_threshold(self.p, self.ell))
        if self.strict:
            if not (2 < self.ell < self.p < self.k < self.m):
                raise ParamError(
                    f"strict mode needs 2 < ell < p < k < m, got "
                    f"ell={self.ell} p={self.p} k={self.k} m={self.m}"
                )
        else:
            if self.ell < 2 or self.p < 2 or self.k < 2 or self.k > self.m:
                raise ParamError(
                    f"need ell >= 2, p >= 2, 2 <= k <= m; got "
                    f"ell={self.ell} p={self.p} k={self.k} m={self.m}"
                )
        if self.L < 1:
            raise ParamError(f"L must be >= 1, got {self.L}")

    @property
    def n(self) -> int:
        return self.m * (self.m - 1) // 2

    def with_(self, **changes) -> "Params":
        return replace(self, **changes)

    def describe(self) -> str:
        mode = "strict" if self.strict else "relaxed"
        return f"m={self.m} k={self.k} ell={self.ell} p={self.p} L={self.L} mode={mode}"


def parse_fraction(text: str) -> Fraction:
    return Fraction(text)
