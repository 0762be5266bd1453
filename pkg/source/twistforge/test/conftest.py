# Copyright (c) 2025 Twistforge Developers
# SPDX-License-Identifier: BSD 3-Clause

"""Shared fixtures and hypothesis strategies."""

from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import assume
from hypothesis import strategies as st

from twistforge.tate import tate_local_data
from twistforge.weierstrass import Isomorphism, WeierstrassModel

SMALL_PRIMES = (2, 3, 5, 7)

coefficients = st.integers(min_value=-12, max_value=12)
small_coefficients = st.integers(min_value=-4, max_value=4)
nonzero_ints = st.integers(min_value=-60, max_value=60).filter(lambda x: x != 0)
rationals = st.fractions(max_denominator=30).filter(lambda x: abs(x) < 10**6)


@st.composite
def models(draw, coefficient=coefficients) -> WeierstrassModel:
    """Nonsingular integral models."""
    ainvs = draw(st.tuples(*(coefficient for _ in range(5))))
    model = WeierstrassModel.from_ainvs(ainvs)
    assume(not model.is_singular)
    return model


@st.composite
def isomorphisms(draw) -> Isomorphism:
    u = draw(st.sampled_from([Fraction(1), Fraction(-1), Fraction(2), Fraction(1, 3), Fraction(-5, 2)]))
    r, s, w = (draw(st.integers(min_value=-6, max_value=6)) for _ in range(3))
    return Isomorphism(u, r, s, w)


def minimal_model(model: WeierstrassModel, p: int) -> WeierstrassModel:
    return tate_local_data(model, p).minimal_model


@pytest.fixture
def curve_11a1() -> WeierstrassModel:
    """y^2 + y = x^3 - x^2 - 10x - 20, split multiplicative of type I5 at 11."""
    return WeierstrassModel.from_ainvs([0, -1, 1, -10, -20])


@pytest.fixture
def iii_star_q2() -> WeierstrassModel:
    """A strongly-minimal III* model over Q_2 with v(a1) = 1."""
    return WeierstrassModel.from_ainvs([2, 0, 0, 8, 0])


@pytest.fixture
def iv_q2() -> WeierstrassModel:
    """A strongly-minimal IV model over Q_2: V = (inf, inf, =1, inf, =2)."""
    return WeierstrassModel.from_ainvs([0, 0, 2, 0, 4])
