# Copyright (c) 2025 Twistforge Developers
# SPDX-License-Identifier: BSD 3-Clause

from __future__ import annotations

from fractions import Fraction

import pytest
from conftest import SMALL_PRIMES, minimal_model, models
from hypothesis import given, settings
from hypothesis import strategies as st

from twistforge.errors import Char2Required, NotIntegral, NotMinimal, NotStronglyMinimal, SingularModel
from twistforge.local_tables import STRONGLY_MINIMAL_ROWS, rows_for_prime
from twistforge.padic_core import valuation
from twistforge.strongly_minimal import (
    base_local_data,
    classify,
    classify_or_raise,
    disc_conductor_q2,
    is_split,
    tamagawa_from_row,
    tamagawa_q2,
    to_strongly_minimal,
)
from twistforge.tate import tate_local_data
from twistforge.weierstrass import Isomorphism, WeierstrassModel, apply_isomorphism


def E(*ainvs) -> WeierstrassModel:
    return WeierstrassModel.from_ainvs(ainvs)


def test_row_keys_are_unique_and_split_by_characteristic():
    keys = [row.key for row in STRONGLY_MINIMAL_ROWS]
    assert len(keys) == len(set(keys))
    assert all(row.char == "2" for row in rows_for_prime(2))
    assert all(row.char == "odd" for row in rows_for_prime(7))


@pytest.mark.parametrize(
    "ainvs, p, row, kodaira, c",
    [
        ((0, 0, 2, 0, 4), 2, "2:IV", "IV", 1),
        ((2, 0, 0, 8, 0), 2, "2:III*", "III*", 2),
        ((2, 0, 0, 0, 2), 2, "2:II", "II", 1),
        ((0, 0, 0, 3, 0), 3, "odd:III", "III", 2),
        ((0, 0, 0, 27, 0), 3, "odd:III*", "III*", 2),
        ((0, 0, 0, 0, 25), 5, "odd:IV", "IV", 3),
        ((0, 0, 0, 0, 625), 5, "odd:IV*", "IV*", 3),
        ((0, 0, 0, 0, 1250), 5, "odd:IV*", "IV*", 1),
        ((0, 0, 0, 1, 1), 5, "odd:I0", "I0", 1),
    ],
)
def test_classify(ainvs, p, row, kodaira, c):
    S = classify(E(*ainvs), p)
    assert S is not None
    assert (S.matched_row, str(S.type)) == (row, kodaira)
    assert tamagawa_from_row(S) == c


def test_classify_rejects_models_outside_every_pattern(curve_11a1):
    assert classify(curve_11a1, 11) is None
    assert classify(E(0, 1, 0, 0, 2), 2) is None
    assert classify(E(0, 0, 0, Fraction(1, 2), 1), 2) is None


def test_classify_or_raise(curve_11a1):
    with pytest.raises(NotStronglyMinimal):
        classify_or_raise(curve_11a1, 11)


@pytest.mark.parametrize(
    "ainvs, delta, f",
    [((0, 0, 2, 0, 4), 4, 2), ((2, 0, 0, 8, 0), 10, 3), ((2, 0, 0, 0, 2), 6, 6)],
)
def test_disc_conductor_q2(ainvs, delta, f):
    assert disc_conductor_q2(classify_or_raise(E(*ainvs), 2)) == (delta, f)


def test_q2_tables_need_p_equal_two():
    S = classify_or_raise(E(0, 0, 0, 3, 0), 3)
    with pytest.raises(Char2Required):
        tamagawa_q2(S)
    with pytest.raises(Char2Required):
        disc_conductor_q2(S)


def test_normalizes_11a1(curve_11a1):
    S, phi = to_strongly_minimal(curve_11a1, 11)
    assert S.matched_row == "odd:In:odd"
    assert str(S.type) == "I5"
    assert apply_isomorphism(curve_11a1, phi) == S.model
    assert S.model.a1 == 0 and S.model.a3 == 0
    assert valuation(S.model.a4, 11) >= 4
    assert is_split(S) is True
    assert base_local_data(S) == tate_local_data(curve_11a1, 11).local_data


def test_normalizes_type_ii_at_two():
    S, phi = to_strongly_minimal(E(0, 1, 0, 0, 2), 2)
    assert phi == Isomorphism(1, 0, 1, 0)
    assert S.model == E(2, 0, 0, 0, 2)
    data = base_local_data(S, tamagawa=tamagawa_q2)
    assert (str(data.type), data.delta, data.f, data.c) == ("II", 6, 6, 1)


def test_strongly_minimal_input_is_returned_unchanged(iii_star_q2):
    S, phi = to_strongly_minimal(iii_star_q2, 2)
    assert phi.is_identity
    assert S.model == iii_star_q2


def test_to_strongly_minimal_errors(curve_11a1):
    with pytest.raises(SingularModel):
        to_strongly_minimal(E(0, 0, 0, 0, 0), 5)
    with pytest.raises(NotIntegral):
        to_strongly_minimal(E(0, 0, 0, Fraction(1, 2), 1), 2)
    with pytest.raises(NotMinimal):
        to_strongly_minimal(apply_isomorphism(curve_11a1, Isomorphism(Fraction(1, 5))), 5)


@settings(max_examples=150, deadline=None)
@given(models(), st.sampled_from(SMALL_PRIMES))
def test_table_local_data_matches_tate(model, p):
    minimal = minimal_model(model, p)
    S, phi = to_strongly_minimal(minimal, p)
    assert apply_isomorphism(minimal, phi) == S.model
    assert base_local_data(S) == tate_local_data(model, p).local_data


@settings(max_examples=150, deadline=None)
@given(models())
def test_q2_tamagawa_from_valuations_matches_row_conditions(model):
    S, _ = to_strongly_minimal(minimal_model(model, 2), 2)
    assert tamagawa_q2(S) == tamagawa_from_row(S)
