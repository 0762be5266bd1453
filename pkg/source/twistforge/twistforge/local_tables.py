# Copyright (c) 2025 Twistforge Developers
# SPDX-License-Identifier: BSD 3-Clause

"""Strongly-minimal patterns with their Tamagawa conditions, and the Q_2 tables for c, δ and f.

Rows are data written in the condition language of :mod:`twistforge.conditions`; the functions
in :mod:`twistforge.strongly_minimal` only interpret them.
"""

from __future__ import annotations

from dataclasses import dataclass

from .conditions import (
    Condition,
    Context,
    Pattern,
    Value,
    compile_condition,
    compile_pattern,
    compile_value,
    model_context,
)
from .errors import TableMismatch
from .kodaira import KodairaType, type_of_family
from .padic_core import INFINITY, valuation
from .weierstrass import WeierstrassModel, matches, valuation_vector


@dataclass(frozen=True)
class Branch:
    """One ``condition -> value`` cell of a table row."""

    condition: Condition
    value: Value

    @classmethod
    def of(cls, condition: str, value: str) -> Branch:
        return cls(compile_condition(condition), compile_value(value))


def first_branch(branches: tuple[Branch, ...], ctx: Context, where: str) -> int:
    """Evaluate the first branch whose condition holds."""
    for branch in branches:
        if branch.condition(ctx):
            return branch.value(ctx)
    raise TableMismatch(f"No branch of {where} applies.")


@dataclass(frozen=True)
class NRule:
    """Recovers n from a coefficient valuation as ``multiplier * v(coefficient) + offset``."""

    coefficient: str
    multiplier: int
    offset: int

    def index(self, model: WeierstrassModel, p: int) -> int | None:
        v = valuation(getattr(model, self.coefficient), p)
        if v == INFINITY:
            return None
        return self.multiplier * int(v) + self.offset


@dataclass(frozen=True)
class TableRow:
    """A strongly-minimal pattern for one Kodaira family and residue characteristic."""

    key: str
    family: str
    char: str
    """``"2"`` or ``"odd"``."""
    pattern: Pattern
    branches: tuple[Branch, ...]
    n_rule: NRule | None = None
    parity: int | None = None
    """Required parity of n, if the row covers only odd or only even n."""

    def index(self, model: WeierstrassModel, p: int) -> int | None:
        """The n this row would assign to ``model``, or None when the row cannot apply."""
        if self.n_rule is None:
            return None
        n = self.n_rule.index(model, p)
        if n is None or n <= 0:
            return None
        if self.parity is not None and n % 2 != self.parity:
            return None
        return n

    def kodaira_type(self, n: int | None) -> KodairaType:
        return type_of_family(self.family, n)

    def matches(self, model: WeierstrassModel, p: int) -> tuple[bool, int | None]:
        """Whether ``model`` matches this row at ``p``, and the recovered n."""
        n = self.index(model, p)
        if self.n_rule is not None and n is None:
            return False, None
        ctx = model_context(model, p, n=n)
        side = self.pattern.side
        extra = (lambda: side(ctx)) if side is not None else None
        return matches(valuation_vector(model, p), self.pattern.vector(ctx), extra), n


def _row(key, family, char, pattern, branches, n_rule=None, parity=None) -> TableRow:
    return TableRow(
        key=key,
        family=family,
        char=char,
        pattern=compile_pattern(pattern),
        branches=tuple(Branch.of(cond, value) for cond, value in branches),
        n_rule=NRule(*n_rule) if n_rule else None,
        parity=parity,
    )


# ---------------------------------------------------------------------------
# Strongly-minimal models
# ---------------------------------------------------------------------------

_ROOTS = "1 + roots(a2/p, a4/p^2, a6/p^3)"

STRONGLY_MINIMAL_ROWS: tuple[TableRow, ...] = (
    # residue characteristic 2
    _row("2:I0:a", "I0", "2", "(=0, 0, 2, 1, =0)", [("always", "1")]),
    _row("2:I0:b", "I0", "2", "(=0, 0, 2, =0, 1)", [("always", "1")]),
    _row("2:I0:c", "I0", "2", "(1, 1, =0, 0, 0)", [("always", "1")]),
    _row(
        "2:In:odd",
        "In",
        "2",
        "(=0, 0, =(n+1)/2, (n+1)/2, =n)",
        [("imT(a2/a1^2)", "n"), ("not imT(a2/a1^2)", "1")],
        n_rule=("a6", 1, 0),
        parity=1,
    ),
    _row(
        "2:In:even",
        "In",
        "2",
        "(=0, 0, (n+2)/2, =n/2, n+1)",
        [("imT(a2/a1^2)", "n"), ("not imT(a2/a1^2)", "2")],
        n_rule=("a4", 2, 0),
        parity=0,
    ),
    _row("2:II", "II", "2", "(1, 1, 1, 1, =1)", [("always", "1")]),
    _row("2:III", "III", "2", "(1, 1, 1, =1, 2)", [("always", "2")]),
    _row("2:IV", "IV", "2", "(1, 1, =1, 2, 2)", [("not imT(a6/a3^2)", "1"), ("imT(a6/a3^2)", "3")]),
    _row("2:I0*", "I0*", "2", "(1, 1, 2, 3, =3)", [("always", _ROOTS)]),
    _row(
        "2:In*:odd",
        "In*",
        "2",
        "(1, =1, =(n+3)/2, (n+5)/2, n+3)",
        [("not imT(a6/a3^2)", "2"), ("imT(a6/a3^2)", "4")],
        n_rule=("a3", 2, -3),
        parity=1,
    ),
    _row(
        "2:In*:even",
        "In*",
        "2",
        "(1, =1, (n+4)/2, =(n+4)/2, n+3)",
        [("not imT(p*a6/a4^2)", "2"), ("imT(p*a6/a4^2)", "4")],
        n_rule=("a4", 2, -4),
        parity=0,
    ),
    _row("2:IV*", "IV*", "2", "(1, 2, =2, 3, 4)", [("not imT(a6/a3^2)", "1"), ("imT(a6/a3^2)", "3")]),
    _row("2:III*", "III*", "2", "(1, 2, 3, =3, 5)", [("always", "2")]),
    _row("2:II*", "II*", "2", "(1, 2, 3, 4, =5)", [("always", "1")]),
    # odd residue characteristic
    _row("odd:I0", "I0", "odd", "(inf, 0, inf, 0, 0 | v(disc) = 0)", [("always", "1")]),
    _row(
        "odd:In:odd",
        "In",
        "odd",
        "(inf, =0, inf, (n+3)/2, =n)",
        [("legendre(a2) = 1", "n"), ("legendre(a2) = -1", "nprime")],
        n_rule=("a6", 1, 0),
        parity=1,
    ),
    _row(
        "odd:In:even",
        "In",
        "odd",
        "(inf, =0, inf, (n+4)/2, =n)",
        [("legendre(a2) = 1", "n"), ("legendre(a2) = -1", "nprime")],
        n_rule=("a6", 1, 0),
        parity=0,
    ),
    _row("odd:II", "II", "odd", "(inf, 1, inf, 1, =1)", [("always", "1")]),
    _row("odd:III", "III", "odd", "(inf, 1, inf, =1, 2)", [("always", "2")]),
    _row(
        "odd:IV",
        "IV",
        "odd",
        "(inf, 1, inf, 2, =2)",
        [("legendre(a6/p^2) = -1", "1"), ("legendre(a6/p^2) = 1", "3")],
    ),
    _row("odd:I0*", "I0*", "odd", "(inf, 1, inf, 2, 3 | v(disc) = 6)", [("always", _ROOTS)]),
    _row(
        "odd:In*:odd",
        "In*",
        "odd",
        "(inf, =1, inf, (n+5)/2, =n+3)",
        [("legendre(a6/p^(n+3)) = -1", "2"), ("legendre(a6/p^(n+3)) = 1", "4")],
        n_rule=("a6", 1, -3),
        parity=1,
    ),
    _row(
        "odd:In*:even",
        "In*",
        "odd",
        "(inf, =1, inf, (n+6)/2, =n+3)",
        [("legendre(-a6/(a2*p^(n+2))) = -1", "2"), ("legendre(-a6/(a2*p^(n+2))) = 1", "4")],
        n_rule=("a6", 1, -3),
        parity=0,
    ),
    _row(
        "odd:IV*",
        "IV*",
        "odd",
        "(inf, 2, inf, 3, =4)",
        [("legendre(a6/p^4) = -1", "1"), ("legendre(a6/p^4) = 1", "3")],
    ),
    _row("odd:III*", "III*", "odd", "(inf, 2, inf, =3, 5)", [("always", "2")]),
    _row("odd:II*", "II*", "odd", "(inf, 2, inf, 4, =5)", [("always", "1")]),
)
"""Strongly-minimal patterns and Tamagawa conditions, by family and residue characteristic."""

ROWS_BY_KEY = {row.key: row for row in STRONGLY_MINIMAL_ROWS}


def rows_for_prime(p: int) -> tuple[TableRow, ...]:
    char = "2" if p == 2 else "odd"
    return tuple(row for row in STRONGLY_MINIMAL_ROWS if row.char == char)


# ---------------------------------------------------------------------------
# Tamagawa numbers over Q_2 from valuations only
# ---------------------------------------------------------------------------

TAMAGAWA_Q2: dict[str, tuple[Branch, ...]] = {
    "I0": (Branch.of("always", "1"),),
    "In": (
        Branch.of("n odd and v(a2) = 0", "1"),
        Branch.of("n even and v(a2) = 0", "2"),
        Branch.of("v(a2) >= 1", "n"),
    ),
    "II": (Branch.of("always", "1"),),
    "III": (Branch.of("always", "2"),),
    "IV": (Branch.of("v(a6) = 2", "1"), Branch.of("v(a6) >= 3", "3")),
    "I0*": (Branch.of("v(a2) = 1", "1"), Branch.of("v(a2) >= 2", "2")),
    "In*": (Branch.of("v(a6) = n+3", "2"), Branch.of("v(a6) >= n+4", "4")),
    "IV*": (Branch.of("v(a6) = 4", "1"), Branch.of("v(a6) >= 5", "3")),
    "III*": (Branch.of("always", "2"),),
    "II*": (Branch.of("always", "1"),),
}
"""Tamagawa numbers over Q_2, where the Artin-Schreier tests reduce to valuation comparisons."""


# ---------------------------------------------------------------------------
# Minimal discriminant valuation and conductor exponent over Q_2
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DiscConductorRow:
    condition: Condition
    delta: Value
    f: Value


def _dc(condition: str, delta: str, f: str) -> DiscConductorRow:
    return DiscConductorRow(compile_condition(condition), compile_value(delta), compile_value(f))


DISC_CONDUCTOR_Q2: dict[str, tuple[DiscConductorRow, ...]] = {
    "I0": (_dc("always", "0", "0"),),
    "In": (_dc("always", "n", "1"),),
    "II": (
        _dc("v(a3) = 1", "4", "4"),
        _dc("v(a3) >= 2 and v(a1) >= 2", "6", "6"),
        _dc("v(a3) >= 2 and v(a1) = 1 and v(a4) = 1", "7", "7"),
        _dc("v(a3) >= 2 and v(a1) = 1 and v(a4) >= 2", "6", "6"),
    ),
    "III": (
        _dc("v(a3) = 1", "4", "3"),
        _dc("v(a3) >= 2 and v(a1) = 1", "6", "5"),
        _dc("v(a3) >= 2 and v(a1) >= 2 and v(a2) = 1 and v(a3^2 + 4*a6) = 4", "9", "8"),
        _dc("v(a3) >= 2 and v(a1) >= 2 and v(a2) = 1 and v(a3^2 + 4*a6) >= 5", "8", "7"),
        _dc("v(a3) >= 2 and v(a1) >= 2 and v(a2) >= 2 and v(a3^2 + 4*a6) = 4", "8", "7"),
        _dc("v(a3) >= 2 and v(a1) >= 2 and v(a2) >= 2 and v(a3^2 + 4*a6) >= 5", "9", "8"),
    ),
    "IV": (_dc("always", "4", "2"),),
    "I0*": (
        _dc("v(a3) = 2", "8", "4"),
        _dc("v(a3) >= 3 and v(a1) = 1", "9", "5"),
        _dc("v(a3) >= 3 and v(a1) >= 2", "10", "6"),
    ),
    "In*": (
        _dc("n = 1", "8", "3"),
        _dc("n = 2 and v(a1) = 1", "10", "4"),
        _dc("n = 2 and v(a1) >= 2 and v(a3) = 3", "13", "7"),
        _dc("n = 2 and v(a1) >= 2 and v(a3) >= 4", "12", "6"),
        _dc("n = 3 and v(a1) = 1", "11", "4"),
        _dc("n = 3 and v(a1) >= 2", "12", "5"),
        _dc("n >= 4 and v(a1) = 1", "8 + n", "4"),
        _dc("n >= 4 and v(a1) >= 2", "10 + n", "6"),
    ),
    "IV*": (_dc("always", "8", "2"),),
    "III*": (
        _dc("v(a1) = 1", "10", "3"),
        _dc("v(a1) >= 2 and v(a3) = 3", "12", "5"),
        _dc("v(a1) >= 2 and v(a3) >= 4 and v(a6) = 5 and v(a1^2 + 4*a2) = 4", "15", "8"),
        _dc("v(a1) >= 2 and v(a3) >= 4 and v(a6) = 5 and v(a1^2 + 4*a2) >= 5", "14", "7"),
        _dc("v(a1) >= 2 and v(a3) >= 4 and v(a6) >= 6 and v(a1^2 + 4*a2) = 4", "14", "7"),
        _dc("v(a1) >= 2 and v(a3) >= 4 and v(a6) >= 6 and v(a1^2 + 4*a2) >= 5", "15", "8"),
    ),
    "II*": (
        _dc("v(a1) = 1", "11", "3"),
        _dc("v(a1) >= 2 and v(a3) = 3", "12", "4"),
        _dc("v(a1) >= 2 and v(a3) >= 4", "14", "6"),
    ),
}
"""Minimal discriminant valuation and conductor exponent over Q_2, by family."""
