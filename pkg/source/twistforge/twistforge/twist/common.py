# Copyright (c) 2025 Twistforge Developers
# SPDX-License-Identifier: BSD 3-Clause

"""Types shared by the odd-p and Q_2 twist routines."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Any

from ..conditions import Context
from ..errors import TableMismatch
from ..kodaira import LocalData
from ..weierstrass import TwistClass, canonicalize_twist
from .tables import FastRow, fast_rows


class TwistPath(Enum):
    """How the twisted local data was obtained."""

    TABLE_FAST = "fast"
    MODEL_DERIVED = "model"


@dataclass(frozen=True)
class TwistLocalData:
    """Local data of E and of its quadratic twist E^d at one prime."""

    base: LocalData
    twisted: LocalData
    d: TwistClass
    p: int
    path: TwistPath
    oracle_normalized: bool = False
    """The model route had to normalize the twisted model with Tate's algorithm, so ``twisted`` is not
    independent of the oracle."""

    def to_json(self) -> dict[str, Any]:
        record: dict[str, Any] = {
            "p": self.p,
            "d": self.d.d,
            "v_d": self.d.v_d,
            "path": self.path.value,
            "base": self.base.to_json(),
            "twisted": self.twisted.to_json(),
        }
        if self.oracle_normalized:
            record["oracle_normalized"] = True
        return record


def as_twist_class(d: TwistClass | int, p: int) -> TwistClass:
    """Canonical twist class of ``d`` at ``p``."""
    if isinstance(d, TwistClass):
        if d.p != p:
            raise ValueError(f"Twist class {d} was built for p = {d.p}, not p = {p}.")
        return d if d.canonical else canonicalize_twist(d.d, p)
    return canonicalize_twist(d, p)


def first_fast_row(name: str, family: str, v_d: int, ctx: Context) -> FastRow:
    """The first row of a fast table whose condition holds."""
    for row in fast_rows(name, family, v_d):
        if row.condition(ctx):
            return row
    raise TableMismatch(f"No {name} row for family {family} with v(d) = {v_d} applies.")
