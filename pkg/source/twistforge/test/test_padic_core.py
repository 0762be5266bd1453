# Copyright (c) 2025 Twistforge Developers
# SPDX-License-Identifier: BSD 3-Clause

from __future__ import annotations

from fractions import Fraction

import pytest
from conftest import SMALL_PRIMES, nonzero_ints, rationals
from hypothesis import given, settings
from hypothesis import strategies as st

from twistforge.errors import Char2Required, NotAPrime, NotAUnit, NotIntegral, OddPrimeRequired
from twistforge.padic_core import (
    INFINITY,
    artin_schreier_in_image,
    check_prime,
    count_cubic_roots_mod_p,
    has_quadratic_root,
    legendre,
    residue_mod,
    unit_part_mod,
    valuation,
)


@pytest.mark.parametrize(
    "x, p, expected",
    [(12, 2, 2), (0, 5, INFINITY), (Fraction(5, 9), 3, -2), (7, 7, 1), (-48, 2, 4), (Fraction(3, 4), 3, 1)],
)
def test_valuation(x, p, expected):
    assert valuation(x, p) == expected


def test_valuation_accepts_fraction_strings():
    assert valuation("-8/27", 3) == -3


@settings(max_examples=200, deadline=None)
@given(rationals, rationals, st.sampled_from(SMALL_PRIMES))
def test_valuation_laws(x, y, p):
    assert valuation(x * y, p) == valuation(x, p) + valuation(y, p)
    assert valuation(x + y, p) >= min(valuation(x, p), valuation(y, p))
    if valuation(x, p) != valuation(y, p):
        assert valuation(x + y, p) == min(valuation(x, p), valuation(y, p))


@pytest.mark.parametrize("x, p, k, expected", [(Fraction(7, 3), 2, 2, 1), (1, 2, 3, 1), (5, 2, 2, 1), (-1, 2, 3, 7)])
def test_unit_part_mod(x, p, k, expected):
    assert unit_part_mod(x, p, k) == expected


def test_unit_part_mod_rejects_non_units():
    with pytest.raises(NotAUnit):
        unit_part_mod(6, 2)
    with pytest.raises(NotAUnit):
        unit_part_mod(0, 5)


def test_residue_mod_handles_non_units_and_rejects_denominators():
    assert residue_mod(6, 2, 2) == 2
    assert residue_mod(Fraction(1, 3), 5) == 2
    with pytest.raises(NotIntegral):
        residue_mod(Fraction(1, 2), 2)


@pytest.mark.parametrize("x, p, k", [(Fraction(1, 3), 5, 1), (Fraction(-7, 9), 11, 2), (Fraction(3, 5), 2, 3)])
def test_residues_of_fractions_are_plain_ints(x, p, k):
    # Fraction arithmetic and json reject sympy's gmpy integers.
    assert type(residue_mod(x, p, k)) is int
    assert type(unit_part_mod(x, p, k)) is int


@settings(max_examples=100, deadline=None)
@given(nonzero_ints, st.sampled_from((3, 5, 7, 11)))
def test_residue_agrees_with_integer_arithmetic(x, p):
    assert residue_mod(x, p, 2) == x % p**2


@pytest.mark.parametrize("u, p, expected", [(1, 7, 1), (2, 7, 1), (2, 5, -1), (3, 7, -1), (Fraction(1, 2), 7, 1)])
def test_legendre(u, p, expected):
    assert legendre(u, p) == expected


def test_legendre_needs_odd_prime_and_unit():
    with pytest.raises(OddPrimeRequired):
        legendre(1, 2)
    with pytest.raises(NotAUnit):
        legendre(10, 5)


@pytest.mark.parametrize("a, expected", [(0, True), (6, True), (3, False), (Fraction(1, 3), False)])
def test_artin_schreier_in_image(a, expected):
    assert artin_schreier_in_image(a, 2) is expected


def test_artin_schreier_needs_two():
    with pytest.raises(Char2Required):
        artin_schreier_in_image(0, 3)


@pytest.mark.parametrize(
    "c2, c1, c0, p, expected",
    [
        (0, 0, 0, 5, 1),
        (0, -1, 0, 5, 3),
        # X^3 + X^2 + 1 has no root in F_2
        (1, 0, 1, 2, 0),
        (0, 0, -1, 7, 3),
        (0, 0, -2, 7, 0),
        (-2, 1, 0, 3, 2),
    ],
)
def test_count_cubic_roots(c2, c1, c0, p, expected):
    assert count_cubic_roots_mod_p(c2, c1, c0, p) == expected


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10), st.integers(0, 10), st.integers(0, 10), st.sampled_from(SMALL_PRIMES))
def test_count_cubic_roots_matches_enumeration(c2, c1, c0, p):
    roots = sum(1 for x in range(p) if (x**3 + c2 * x * x + c1 * x + c0) % p == 0)
    assert count_cubic_roots_mod_p(c2, c1, c0, p) == roots


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10), st.integers(0, 10), st.integers(0, 10), st.sampled_from(SMALL_PRIMES))
def test_has_quadratic_root_matches_enumeration(a, b, c, p):
    expected = any((a * x * x + b * x + c) % p == 0 for x in range(p))
    assert has_quadratic_root(a, b, c, p) is expected


@pytest.mark.parametrize("p", [0, 1, 4, 9, -3])
def test_check_prime_rejects(p):
    with pytest.raises(NotAPrime):
        check_prime(p)
