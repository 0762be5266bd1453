# Copyright (c) 2025 Twistforge Developers
# SPDX-License-Identifier: BSD 3-Clause

"""Exception hierarchy for the twistforge package.

Every error raised on purpose by the library derives from :class:`TwistforgeError`, so callers
(and the command-line front end) can catch the whole family at once.
"""

from __future__ import annotations


class TwistforgeError(Exception):
    """Base class of all twistforge errors."""


class NotAUnit(TwistforgeError, ValueError):
    """An element expected to be a p-adic unit has nonzero valuation."""


class OddPrimeRequired(TwistforgeError, ValueError):
    """An operation defined only for odd residue characteristic was called at p = 2."""


class Char2Required(TwistforgeError, ValueError):
    """An operation defined only for residue characteristic 2 was called at an odd prime."""


class NotAPrime(TwistforgeError, ValueError):
    """The given modulus is not a prime number."""


class ZeroTwist(TwistforgeError, ValueError):
    """A quadratic twist by zero was requested."""


class SingularModel(TwistforgeError, ValueError):
    """The Weierstrass model has discriminant zero."""


class NotIntegral(TwistforgeError, ValueError):
    """The Weierstrass model is not integral at the prime."""


class NotMinimal(TwistforgeError, ValueError):
    """The Weierstrass model is not minimal at the prime."""


class NotStronglyMinimal(TwistforgeError, ValueError):
    """The Weierstrass model does not match any strongly-minimal pattern at the prime."""


class TableMismatch(TwistforgeError, AssertionError):
    """A table lookup produced a model or value that contradicts the table row it came from."""


class UnknownPolynomial(TwistforgeError, KeyError):
    """The requested twist condition polynomial is not in the embedded table."""


class TableLoadError(TwistforgeError):
    """An embedded table data file is malformed."""


class InternalLoopBound(TwistforgeError, RuntimeError):
    """A bounded normalization loop exceeded its iteration cap."""


class NotADisagreement(TwistforgeError, ValueError):
    """A witness handed to the minimizer does not disagree between the compared paths."""


class CorpusSpecError(TwistforgeError, ValueError):
    """A differential-run corpus description is malformed."""
