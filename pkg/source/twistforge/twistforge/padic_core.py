# Copyright (c) 2025 Twistforge Developers
# SPDX-License-Identifier: BSD 3-Clause

"""Exact p-adic valuations and residue-field arithmetic over Q_p.

Coefficients are :class:`fractions.Fraction` values. Valuations are integers, with ``INFINITY``
(``math.inf``) standing for the valuation of zero. It compares above every integer and absorbs
addition.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Union

from sympy import isprime, legendre_symbol, mod_inverse
from sympy.ntheory import multiplicity
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_degree, gf_gcd, gf_pow_mod, gf_sub

from .errors import Char2Required, NotAPrime, NotAUnit, NotIntegral, OddPrimeRequired

INFINITY = math.inf
"""Valuation of zero."""

Rational = Union[int, Fraction]
Valuation = Union[int, float]


def as_rational(x: Rational | str) -> Fraction:
    """Convert an integer, a fraction or an exact-fraction string such as ``"-1/4"`` to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool) or isinstance(x, float):
        raise TypeError(f"Expected an exact rational, got {type(x).__name__} '{x}'.")
    return Fraction(x)


@lru_cache(maxsize=256)
def check_prime(p: int) -> int:
    """Return ``p`` if it is a prime, otherwise raise :class:`NotAPrime`."""
    if not isinstance(p, int) or isinstance(p, bool) or p < 2 or not isprime(p):
        raise NotAPrime(f"Expected a prime, got '{p}'.")
    return p


def valuation(x: Rational, p: int) -> Valuation:
    """The normalized p-adic valuation of ``x``; ``INFINITY`` for zero."""
    x = as_rational(x)
    if x == 0:
        return INFINITY
    num, den = x.numerator, x.denominator
    v = 0
    if num % p == 0:
        v += int(multiplicity(p, abs(num)))
    if den % p == 0:
        v -= int(multiplicity(p, den))
    return v


def residue_mod(x: Rational, p: int, k: int = 1) -> int:
    """Residue of a p-integral rational modulo ``p**k``, in ``range(p**k)``.

    Raises:
        NotIntegral: If ``v_p(x) < 0``.
    """
    x = as_rational(x)
    if k < 1:
        raise ValueError(f"Residue exponent must be positive, got {k}.")
    modulus = p**k
    if x.denominator % p == 0:
        raise NotIntegral(f"{x} is not {p}-integral.")
    if x.denominator == 1:
        return x.numerator % modulus
    return int(x.numerator * mod_inverse(x.denominator, modulus)) % modulus


def unit_part_mod(x: Rational, p: int, k: int = 1) -> int:
    """Residue of a p-adic unit modulo ``p**k``.

    Raises:
        NotAUnit: If ``x`` is zero or ``v_p(x) != 0``.
    """
    v = valuation(x, p)
    if v != 0:
        raise NotAUnit(f"{x} is not a {p}-adic unit (valuation {v}).")
    return residue_mod(x, p, k)


def legendre(u: Rational, p: int) -> int:
    """Legendre symbol of a p-adic unit: +1 iff its residue is a square in F_p."""
    if p == 2:
        raise OddPrimeRequired("The Legendre symbol is only defined for odd primes.")
    return int(legendre_symbol(unit_part_mod(u, p), p))


def artin_schreier_in_image(a: Rational, p: int) -> bool:
    """Whether the residue of ``a`` lies in the image of T(x) = x^2 + x on F_2.

    Over F_2 the image of T is {0}, so this is the test ``a ≡ 0 mod 2``.
    """
    if p != 2:
        raise Char2Required(f"The Artin-Schreier test needs residue characteristic 2, got p = {p}.")
    return residue_mod(a, 2) == 0


def count_cubic_roots_mod_p(c2: Rational, c1: Rational, c0: Rational, p: int) -> int:
    """Number of distinct roots in F_p of X^3 + c2 X^2 + c1 X + c0.

    Computed as the degree of gcd(f, X^p - X) over F_p.
    """
    f = [ZZ(1), ZZ(residue_mod(c2, p)), ZZ(residue_mod(c1, p)), ZZ(residue_mod(c0, p))]
    x_to_p = gf_pow_mod([ZZ(1), ZZ(0)], p, f, p, ZZ)
    frobenius_minus_x = gf_sub(x_to_p, [ZZ(1), ZZ(0)], p, ZZ)
    if not frobenius_minus_x:
        return 3
    return max(gf_degree(gf_gcd(f, frobenius_minus_x, p, ZZ)), 0)


def has_quadratic_root(a: Rational, b: Rational, c: Rational, p: int) -> bool:
    """Whether a X^2 + b X + c has a root in F_p (coefficients p-integral)."""
    a, b, c = (residue_mod(t, p) for t in (a, b, c))
    if a == 0:
        return b != 0 or c == 0
    if p == 2:
        return any((a * x * x + b * x + c) % 2 == 0 for x in (0, 1))
    disc = (b * b - 4 * a * c) % p
    return disc == 0 or int(legendre_symbol(disc, p)) == 1
