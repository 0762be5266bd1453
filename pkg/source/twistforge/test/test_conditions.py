# Copyright (c) 2025 Twistforge Developers
# SPDX-License-Identifier: BSD 3-Clause

from __future__ import annotations

from fractions import Fraction

import pytest

from twistforge.conditions import compile_condition, compile_expression, compile_pattern, compile_value, model_context
from twistforge.errors import TableLoadError
from twistforge.weierstrass import WeierstrassModel


def ctx_of(ainvs, p, **extra):
    return model_context(WeierstrassModel.from_ainvs(ainvs), p, **extra)


@pytest.mark.parametrize(
    "text, ainvs, p, extra, expected",
    [
        ("always", (0, 0, 0, 1, 1), 5, {}, True),
        ("v(a6) >= 2", (0, 0, 2, 0, 4), 2, {}, True),
        ("v(a3) = 2", (0, 0, 2, 0, 4), 2, {}, False),
        ("v(a4) >= 100", (0, 0, 2, 0, 4), 2, {}, True),
        ("v(a3^2 + 4*a6) = 2", (0, 0, 2, 0, 4), 2, {}, True),
        ("v(a1) = 1 and v(a4) = 3", (2, 0, 0, 8, 0), 2, {}, True),
        ("v(a1) >= 2 or v(a4) = 3", (2, 0, 0, 8, 0), 2, {}, True),
        ("v(a1) >= 2 or v(a4) = 4", (2, 0, 0, 8, 0), 2, {}, False),
        ("legendre(a2) = 1", (0, 4, 0, 0, 1), 5, {}, True),
        ("legendre(a6/p^2) = -1", (0, 0, 0, 0, 50), 5, {}, True),
        ("imT(a2/a1^2)", (1, 0, 0, 0, 1), 2, {}, True),
        ("not imT(a6/a3^2)", (0, 0, 2, 0, 4), 2, {}, True),
        ("n odd", (0, 0, 0, 1, 1), 5, {"n": 3}, True),
        ("n even and n >= 4", (0, 0, 0, 1, 1), 5, {"n": 4}, True),
        ("n >= 5", (0, 0, 0, 1, 1), 5, {"n": 4}, False),
        ("d = 3 mod 4", (0, 0, 0, 1, 1), 2, {"d": 7}, True),
        ("d in {1, 5} mod 8", (0, 0, 0, 1, 1), 2, {"d": 13}, True),
        ("d*a6 + d - 1 = 0 mod 8", (0, 0, 2, 0, 4), 2, {"d": 5}, True),
        ("v(disc) = 4", (0, 0, 2, 0, 4), 2, {}, True),
        ("k = 4 and c = 1", (0, 0, 2, 0, 4), 2, {"k": 4, "c": 1}, True),
    ],
)
def test_conditions(text, ainvs, p, extra, expected):
    assert compile_condition(text)(ctx_of(ainvs, p, **extra)) is expected


def test_whitespace_is_normalized():
    assert compile_condition("v(a6)   >=  2") is compile_condition("v(a6) >= 2")


def test_polynomials_are_substituted():
    expr = compile_expression("P1 + 1", {"P1": "a1*d"})
    assert expr({"a1": Fraction(2), "d": Fraction(3)}) == 7
    condition = compile_condition("v(P1) >= 3", {"P1": "a1*d"})
    assert condition(ctx_of((4, 0, 0, 0, 1), 2, d=6))


def test_expressions_stay_exact():
    assert compile_expression("a1/2")({"a1": Fraction(1)}) == Fraction(1, 2)
    assert compile_expression("(n+1)/2")({"n": Fraction(4)}) == Fraction(5, 2)
    assert compile_expression("a6/p^3")(ctx_of((0, 0, 0, 0, 3), 2)) == Fraction(3, 8)


def test_unbound_symbol_is_reported():
    with pytest.raises(KeyError, match="'d'"):
        compile_expression("d + 1")({"a1": Fraction(0)})


def test_nprime_follows_n():
    assert ctx_of((0, 0, 0, 1, 1), 5, n=3)["nprime"] == 1
    assert ctx_of((0, 0, 0, 1, 1), 5, n=4)["nprime"] == 2
    assert "n" not in ctx_of((0, 0, 0, 1, 1), 5, n=None)


def test_values():
    assert compile_value("n")({"n": Fraction(5)}) == 5
    assert compile_value("8 + n")({"n": Fraction(4)}) == 12
    with pytest.raises(ValueError):
        compile_value("n/2")({"n": Fraction(3)})


def test_cubic_root_value():
    value = compile_value("1 + roots(a2/p, a4/p^2, a6/p^3)")
    # X^3 + X^2 + 1 has no root in F_2
    assert value(ctx_of((0, 2, 0, 0, 8), 2)) == 1
    assert value(ctx_of((0, 4, 4, 8, 8), 2)) == 2


def test_inline_and_trailing_side_conditions():
    inline = compile_pattern("(inf, 0, inf, 0, 0 | v(disc) = 0)")
    trailing = compile_pattern("(inf, 0, inf, 0, 0) | v(disc) = 0")
    for pattern in (inline, trailing):
        assert pattern.side is not None
        assert str(pattern.vector({})) == "(inf, 0, inf, 0, 0)"
        assert pattern.side(ctx_of((0, 0, 0, 1, 1), 5))


def test_pattern_depending_on_n():
    pattern = compile_pattern("(=0, 0, =(n+1)/2, (n+1)/2, =n)")
    assert pattern.side is None
    assert str(pattern.vector({"n": Fraction(3)})) == "(=0, 0, =2, 2, =3)"
    with pytest.raises(ValueError):
        pattern.vector({"n": Fraction(4)})


@pytest.mark.parametrize(
    "bad",
    [
        "v(a1) ~ 2",
        "v(a1 = 2",
        "not v(a1) = 1",
        "v(x) = 1",
        "imT(a1) extra",
        "a1 ~~ 3",
    ],
)
def test_bad_conditions(bad):
    with pytest.raises(TableLoadError):
        compile_condition(bad)


@pytest.mark.parametrize("bad", ["0, 0, 0, 0, 0", "(0, 0, 0, 0)", "(=inf, 0, 0, 0, 0)", "(0, 0, 0, 0, 0) junk"])
def test_bad_patterns(bad):
    with pytest.raises(TableLoadError):
        compile_pattern(bad)


def test_bad_cubic_value():
    with pytest.raises(TableLoadError):
        compile_value("1 + roots(a1, a2)")
