# Copyright (c) 2025 Twistforge Developers
# SPDX-License-Identifier: BSD 3-Clause

from __future__ import annotations

import pytest
from conftest import minimal_model, models
from hypothesis import given, settings
from hypothesis import strategies as st

from twistforge.errors import OddPrimeRequired
from twistforge.kodaira import ReductionKind
from twistforge.strongly_minimal import classify_or_raise, to_strongly_minimal
from twistforge.tate import tate_local_data
from twistforge.twist import TwistPath, twist_data_odd, twist_local_data, twist_strongly_minimal_odd
from twistforge.twist.common import as_twist_class
from twistforge.weierstrass import (
    Isomorphism,
    TwistClass,
    WeierstrassModel,
    apply_isomorphism,
    smallest_nonresidue,
    twist_model,
)

ODD_PRIMES = (3, 5, 7)


def E(*ainvs) -> WeierstrassModel:
    return WeierstrassModel.from_ainvs(ainvs)


def summary(data):
    return str(data.type), data.delta, data.f, data.c


@pytest.mark.parametrize(
    "ainvs, p, d, model_d, twisted",
    [
        ((0, 0, 0, 3, 0), 3, 3, (0, 0, 0, 27, 0), ("III*", 9, 2, 2)),
        ((0, 0, 0, 1, 1), 5, 2, (0, 0, 0, 4, 8), ("I0", 0, 0, 1)),
        ((0, 0, 0, 0, 5), 5, 5, (0, 0, 0, 0, 625), ("IV*", 8, 2, 3)),
        ((0, 0, 0, 0, 10), 5, 5, (0, 0, 0, 0, 1250), ("IV*", 8, 2, 1)),
    ],
)
def test_twists_of_strongly_minimal_models(ainvs, p, d, model_d, twisted):
    S = classify_or_raise(E(*ainvs), p)
    F, phi = twist_strongly_minimal_odd(S, d)
    assert F.model == E(*model_d)
    assert apply_isomorphism(twist_model(S.model, d), phi) == F.model
    data = twist_data_odd(S, d)
    assert summary(data.twisted) == twisted
    assert data.path is TwistPath.TABLE_FAST


def test_divided_family_uses_the_extra_scaling():
    S = classify_or_raise(E(0, 0, 0, 27, 0), 3)
    F, phi = twist_strongly_minimal_odd(S, 3)
    assert phi == Isomorphism(6)
    assert str(F.type) == "III"
    assert F.model == E(0, 0, 0, 3, 0)


def test_11a1_twisted_by_a_non_residue(curve_11a1):
    data = twist_local_data(curve_11a1, 11, 2)
    assert summary(data.base) == ("I5", 5, 1, 5)
    assert data.base.reduction is ReductionKind.SPLIT_MULTIPLICATIVE
    assert summary(data.twisted) == ("I5", 5, 1, 1)
    assert data.twisted.reduction is ReductionKind.NONSPLIT_MULTIPLICATIVE


def test_11a1_twisted_by_the_prime(curve_11a1):
    data = twist_local_data(curve_11a1, 11, 11)
    assert str(data.twisted.type) == "I5*"
    assert data.twisted == tate_local_data(twist_model(curve_11a1, 11), 11).local_data


def test_trivial_twist_returns_the_base(curve_11a1):
    data = twist_local_data(curve_11a1, 11, 9)
    assert data.d.d == 1
    assert data.twisted == data.base


def test_to_json(curve_11a1):
    payload = twist_local_data(curve_11a1, 11, -11).to_json()
    assert payload["p"] == 11
    assert payload["v_d"] == 1
    assert payload["path"] == "fast"
    assert payload["base"]["type"] == "I5"


def test_odd_routine_rejects_p_equal_two(iv_q2):
    S = classify_or_raise(iv_q2, 2)
    with pytest.raises(OddPrimeRequired):
        twist_data_odd(S, 3)
    with pytest.raises(OddPrimeRequired):
        twist_strongly_minimal_odd(S, 3)


def test_twist_class_for_another_prime_is_rejected():
    with pytest.raises(ValueError):
        as_twist_class(TwistClass(3, 5), 7)


def _classes(p):
    u = smallest_nonresidue(p)
    return (u, p, u * p)


@settings(max_examples=120, deadline=None)
@given(models(), st.sampled_from(ODD_PRIMES), st.integers(0, 2))
def test_twisted_data_matches_tate(model, p, which):
    d = _classes(p)[which]
    data = twist_local_data(minimal_model(model, p), p, d)
    assert data.base == tate_local_data(model, p).local_data
    assert data.twisted == tate_local_data(twist_model(model, d), p).local_data


@settings(max_examples=60, deadline=None)
@given(models(), st.sampled_from(ODD_PRIMES), st.integers(0, 2))
def test_twisting_twice_returns_the_base(model, p, which):
    d = _classes(p)[which]
    data = twist_local_data(minimal_model(model, p), p, d)
    back = twist_local_data(minimal_model(twist_model(model, d), p), p, d)
    assert back.base == data.twisted
    assert back.twisted == data.base


@settings(max_examples=60, deadline=None)
@given(models(), st.sampled_from(ODD_PRIMES), st.integers(0, 2), st.integers(1, 6))
def test_only_the_square_class_matters(model, p, which, k):
    d = _classes(p)[which]
    minimal = minimal_model(model, p)
    assert twist_local_data(minimal, p, d * k * k) == twist_local_data(minimal, p, d)


@settings(max_examples=60, deadline=None)
@given(models(), st.sampled_from(ODD_PRIMES), st.integers(0, 2))
def test_twisted_model_is_reached_from_the_twist_model(model, p, which):
    d = _classes(p)[which]
    S, _ = to_strongly_minimal(minimal_model(model, p), p)
    F, phi = twist_strongly_minimal_odd(S, d)
    assert apply_isomorphism(twist_model(S.model, d), phi) == F.model
