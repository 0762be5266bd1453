# Copyright (c) 2025 Twistforge Developers
# SPDX-License-Identifier: BSD 3-Clause

from __future__ import annotations

from fractions import Fraction

import pytest
from conftest import isomorphisms, models
from hypothesis import given, settings
from hypothesis import strategies as st

from twistforge.errors import ZeroTwist
from twistforge.weierstrass import (
    Isomorphism,
    ValuationVector,
    WeierstrassModel,
    apply_isomorphism,
    canonicalize_twist,
    compose,
    integral_model,
    inverse,
    matches,
    twist_model,
    valuation_vector,
)


def E(*ainvs) -> WeierstrassModel:
    return WeierstrassModel.from_ainvs(ainvs)


def test_invariants_of_y2_equals_x3_plus_1():
    inv = E(0, 0, 0, 0, 1).invariants
    assert (inv.b2, inv.b4, inv.b6, inv.b8) == (0, 0, 4, 0)
    assert inv.delta == -432


def test_singular_and_nonsingular_discriminants():
    assert E(1, 0, 0, 0, 0).is_singular
    assert E(0, 0, 0, -1, 0).discriminant == 64


def test_from_ainvs_accepts_fraction_strings():
    model = E("1/2", 0, "-3/4", 1, 2)
    assert model.a1 == Fraction(1, 2)
    assert model.to_json() == ["1/2", 0, "-3/4", 1, 2]
    assert not model.is_integral(2)
    assert model.is_integral(3)


def test_identity_isomorphism_fixes_the_model():
    model = E(1, -1, 1, 0, 0)
    assert apply_isomorphism(model, Isomorphism.identity()) == model


def test_y_translation_keeps_discriminant():
    model = E(0, 0, 0, 0, 1)
    moved = apply_isomorphism(model, Isomorphism(1, 0, 0, -1))
    assert moved == E(0, 0, -2, 0, 0)
    assert moved.discriminant == model.discriminant


def test_scaling_by_two_divides_discriminant_by_4096():
    model = E(1, 2, 3, 4, 5)
    assert apply_isomorphism(model, Isomorphism(2)).discriminant == model.discriminant / 4096


@settings(max_examples=100, deadline=None)
@given(models(), isomorphisms())
def test_discriminant_scales_by_u_to_the_minus_12(model, phi):
    assert apply_isomorphism(model, phi).discriminant == model.discriminant / phi.u**12


@settings(max_examples=100, deadline=None)
@given(models(), isomorphisms(), isomorphisms())
def test_compose_applies_first_then_second(model, first, second):
    expected = apply_isomorphism(apply_isomorphism(model, first), second)
    assert apply_isomorphism(model, compose(first, second)) == expected


@settings(max_examples=50, deadline=None)
@given(isomorphisms())
def test_inverse(phi):
    assert compose(phi, inverse(phi)).is_identity
    assert compose(Isomorphism.identity(), phi) == phi


def test_compose_translations_adds_r():
    assert compose(Isomorphism(1, 2), Isomorphism(1, 5)) == Isomorphism(1, 7)


def test_integral_model_clears_denominators():
    model, phi = integral_model(E(0, 0, 0, Fraction(1, 16), Fraction(1, 64)), 2)
    assert phi == Isomorphism(Fraction(1, 2))
    assert model == E(0, 0, 0, 1, 1)


def test_valuation_vectors():
    assert str(valuation_vector(E(0, 0, 0, 0, 1), 2)) == "(inf, inf, inf, inf, =0)"
    assert valuation_vector(E(2, 4, 8, 16, 64), 2) == ValuationVector.parse("(=1, =2, =3, =4, =6)")
    assert valuation_vector(E(1, 2, 0, 12, 18), 3) == ValuationVector.parse("(=0, =0, inf, =1, =2)")


@pytest.mark.parametrize(
    "vector, pattern, expected",
    [
        ("(=0, =0, inf, =3, =5)", "(=0, 0, 2, 1, =0)", False),
        ("(inf, =1, inf, =1, =1)", "(inf, 1, inf, 1, =1)", True),
        ("(=1, =2, =3, =4, =5)", "(1, 2, 3, 4, =5)", True),
        ("(=1, =1, =3, =4, =5)", "(1, 2, 3, 4, =5)", False),
    ],
)
def test_matches(vector, pattern, expected):
    assert matches(ValuationVector.parse(vector), ValuationVector.parse(pattern)) is expected


def test_matches_consults_the_side_condition():
    vector = ValuationVector.parse("(inf, =1, inf, =1, =1)")
    pattern = ValuationVector.parse("(inf, 1, inf, 1, =1)")
    assert not matches(vector, pattern, lambda: False)


def test_twist_model_examples():
    assert twist_model(E(0, 3, 0, 5, 7), 1) == E(0, 12, 0, 80, 448)
    assert twist_model(E(1, 0, 0, 0, 1), -1) == E(0, -1, 0, 0, -64)
    assert twist_model(E(0, 0, 0, 1, 0), 2) == E(0, 0, 0, 64, 0)
    with pytest.raises(ZeroTwist):
        twist_model(E(0, 0, 0, 1, 0), 0)


@settings(max_examples=50, deadline=None)
@given(models(), st.integers(-30, 30).filter(lambda d: d != 0))
def test_twist_model_discriminant(model, d):
    assert twist_model(model, d).discriminant == 2**12 * d**6 * model.discriminant


@pytest.mark.parametrize(
    "d, p, canonical, v_d",
    [
        (9, 2, 1, 0),
        (12, 2, 3, 0),
        (-1, 2, 7, 0),
        (6, 2, 6, 1),
        (-8, 2, 14, 1),
        (12, 5, 2, 0),
        (50, 5, 2, 0),
        (75, 5, 2, 0),
        (-4, 7, 3, 0),
    ],
)
def test_canonicalize_twist(d, p, canonical, v_d):
    twist = canonicalize_twist(d, p)
    assert (twist.d, twist.v_d) == (canonical, v_d)
    assert twist.canonical


def test_canonicalize_twist_rejects_zero():
    with pytest.raises(ZeroTwist):
        canonicalize_twist(0, 3)


@settings(max_examples=100, deadline=None)
@given(st.integers(-500, 500).filter(lambda d: d != 0), st.sampled_from((2, 3, 5, 7)), st.integers(1, 12))
def test_canonical_class_ignores_squares(d, p, k):
    assert canonicalize_twist(d * k * k, p).d == canonicalize_twist(d, p).d
