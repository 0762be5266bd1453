# Copyright (c) 2025 Twistforge Developers
# SPDX-License-Identifier: BSD 3-Clause

"""Kodaira symbols, reduction kinds and the local data record."""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from typing import Any

_SYMBOLS = ("I", "II", "III", "IV", "I*", "IV*", "III*", "II*")
_PATTERN = re.compile(r"^(I|II|III|IV)(\d*)(\*?)$")


@dataclass(frozen=True, order=True)
class KodairaType:
    """A Kodaira symbol: I_n, II, III, IV, I*_n, IV*, III* or II*.

    ``n`` is set exactly for the ``"I"`` and ``"I*"`` symbols.
    """

    symbol: str
    n: int | None = None

    def __post_init__(self):
        if self.symbol not in _SYMBOLS:
            raise ValueError(f"Unknown Kodaira symbol '{self.symbol}'.")
        indexed = self.symbol in ("I", "I*")
        if indexed and (self.n is None or self.n < 0):
            raise ValueError(f"Kodaira symbol '{self.symbol}' needs an index n >= 0, got {self.n}.")
        if not indexed and self.n is not None:
            raise ValueError(f"Kodaira symbol '{self.symbol}' takes no index, got {self.n}.")

    @classmethod
    def I(cls, n: int) -> KodairaType:  # noqa: E743
        return cls("I", n)

    @classmethod
    def Istar(cls, n: int) -> KodairaType:
        return cls("I*", n)

    @classmethod
    def parse(cls, text: str) -> KodairaType:
        """Parse the compact form used in reports: ``"I0"``, ``"I5"``, ``"I4*"``, ``"IV*"``, ..."""
        match = _PATTERN.match(text.strip())
        if match is None:
            raise ValueError(f"Cannot parse Kodaira symbol '{text}'.")
        roman, index, star = match.groups()
        if index:
            if roman != "I":
                raise ValueError(f"Only I and I* take an index: '{text}'.")
            return cls(roman + star, int(index))
        if roman == "I":
            raise ValueError(f"Missing index in '{text}'.")
        return cls(roman + star)

    @property
    def is_star(self) -> bool:
        return self.symbol.endswith("*")

    @property
    def family(self) -> str:
        """The table-row key: I0, In, II, III, IV, I0*, In*, IV*, III* or II*."""
        if self.symbol == "I":
            return "I0" if self.n == 0 else "In"
        if self.symbol == "I*":
            return "I0*" if self.n == 0 else "In*"
        return self.symbol

    def __str__(self) -> str:
        if self.symbol == "I":
            return f"I{self.n}"
        if self.symbol == "I*":
            return f"I{self.n}*"
        return self.symbol


II = KodairaType("II")
III = KodairaType("III")
IV = KodairaType("IV")
IV_STAR = KodairaType("IV*")
III_STAR = KodairaType("III*")
II_STAR = KodairaType("II*")

FAMILIES = ("I0", "In", "II", "III", "IV", "I0*", "In*", "IV*", "III*", "II*")


class ReductionKind(Enum):
    GOOD = "good"
    SPLIT_MULTIPLICATIVE = "split"
    NONSPLIT_MULTIPLICATIVE = "nonsplit"
    ADDITIVE = "additive"


def component_count(kodaira: KodairaType) -> int:
    """Number of irreducible components m of the special fiber."""
    if kodaira.symbol == "I":
        return max(kodaira.n or 0, 1)
    if kodaira.symbol == "I*":
        return (kodaira.n or 0) + 5
    return {"II": 1, "III": 2, "IV": 3, "IV*": 7, "III*": 8, "II*": 9}[kodaira.symbol]


def ogg_conductor(kodaira: KodairaType, delta: int) -> int:
    """Conductor exponent from Ogg's formula f = δ - m + 1."""
    return delta - component_count(kodaira) + 1


def reduction_kind(kodaira: KodairaType, split: bool | None = None) -> ReductionKind:
    """Reduction kind of a type; ``split`` is only consulted for I_n with n > 0."""
    if kodaira.symbol == "I" and kodaira.n == 0:
        return ReductionKind.GOOD
    if kodaira.symbol == "I":
        if split is None:
            raise ValueError(f"Splitness is required for multiplicative type {kodaira}.")
        return ReductionKind.SPLIT_MULTIPLICATIVE if split else ReductionKind.NONSPLIT_MULTIPLICATIVE
    return ReductionKind.ADDITIVE


@dataclass(frozen=True)
class LocalData:
    """Local data of an elliptic curve at a prime."""

    type: KodairaType
    """Kodaira symbol of the special fiber."""
    delta: int
    """Valuation of the minimal discriminant."""
    f: int
    """Conductor exponent."""
    c: int
    """Tamagawa number."""
    m: int
    """Number of components of the special fiber."""
    reduction: ReductionKind
    """Good, split or nonsplit multiplicative, or additive."""

    def __post_init__(self):
        if self.m != component_count(self.type):
            raise ValueError(f"Type {self.type} has {component_count(self.type)} components, got m = {self.m}.")
        if self.f != self.delta - self.m + 1:
            raise ValueError(f"Ogg's formula fails for {self.type}: f = {self.f}, δ = {self.delta}, m = {self.m}.")
        if not 1 <= self.c <= self.m:
            raise ValueError(f"Tamagawa number {self.c} out of range for {self.type}.")

    @classmethod
    def build(cls, kodaira: KodairaType, delta: int, c: int, split: bool | None = None) -> LocalData:
        """Local data with m and f derived from the type and δ."""
        m = component_count(kodaira)
        return cls(kodaira, delta, delta - m + 1, c, m, reduction_kind(kodaira, split))

    def to_json(self) -> dict[str, Any]:
        return {
            "type": str(self.type),
            "delta": self.delta,
            "f": self.f,
            "c": self.c,
            "m": self.m,
            "reduction": self.reduction.value,
        }

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> LocalData:
        return cls(
            KodairaType.parse(data["type"]),
            int(data["delta"]),
            int(data["f"]),
            int(data["c"]),
            int(data["m"]),
            ReductionKind(data["reduction"]),
        )


def type_of_family(family: str, n: int | None = None) -> KodairaType:
    """The Kodaira type of a table family key, with ``n`` filled in for In and In*."""
    if family == "I0":
        return KodairaType.I(0)
    if family == "I0*":
        return KodairaType.Istar(0)
    if family in ("In", "In*"):
        if n is None or n <= 0:
            raise ValueError(f"Family {family} needs n > 0, got {n}.")
        return KodairaType.I(n) if family == "In" else KodairaType.Istar(n)
    return KodairaType(family)
