# Copyright (c) 2025 Twistforge Developers
# SPDX-License-Identifier: BSD 3-Clause

"""Weierstrass models, admissible changes of variables, valuation vectors and quadratic twists."""

from __future__ import annotations

import math
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache

from .errors import ZeroTwist
from .padic_core import INFINITY, Rational, Valuation, as_rational, check_prime, legendre, residue_mod, valuation

COEFFICIENT_NAMES = ("a1", "a2", "a3", "a4", "a6")
COEFFICIENT_WEIGHTS = (1, 2, 3, 4, 6)


def _format_rational(x: Fraction) -> int | str:
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class Invariants:
    """The b-invariants, c-invariants and discriminant of a Weierstrass model."""

    b2: Fraction
    b4: Fraction
    b6: Fraction
    b8: Fraction
    c4: Fraction
    c6: Fraction
    delta: Fraction


@dataclass(frozen=True)
class WeierstrassModel:
    """The model y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 with exact rational coefficients.

    Construction does not reject singular models; operations that need an elliptic curve raise
    :class:`~twistforge.errors.SingularModel` instead.
    """

    a1: Fraction
    a2: Fraction
    a3: Fraction
    a4: Fraction
    a6: Fraction

    def __post_init__(self):
        for name in COEFFICIENT_NAMES:
            object.__setattr__(self, name, as_rational(getattr(self, name)))

    @classmethod
    def from_ainvs(cls, ainvs: Sequence[Rational | str]) -> WeierstrassModel:
        """Build a model from ``[a1, a2, a3, a4, a6]``, given as integers, fractions or strings like ``"-1/4"``."""
        if len(ainvs) != 5:
            raise ValueError(f"Expected five a-invariants, got {len(ainvs)}: {list(ainvs)}.")
        return cls(*(as_rational(a) for a in ainvs))

    @property
    def ainvs(self) -> tuple[Fraction, Fraction, Fraction, Fraction, Fraction]:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    def as_dict(self) -> dict[str, Fraction]:
        return dict(zip(COEFFICIENT_NAMES, self.ainvs))

    def to_json(self) -> list[int | str]:
        """JSON-friendly a-invariants: integers where integral, otherwise ``"p/q"`` strings."""
        return [_format_rational(a) for a in self.ainvs]

    @cached_property
    def invariants(self) -> Invariants:
        a1, a2, a3, a4, a6 = self.ainvs
        b2 = a1 * a1 + 4 * a2
        b4 = 2 * a4 + a1 * a3
        b6 = a3 * a3 + 4 * a6
        b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
        c4 = b2 * b2 - 24 * b4
        c6 = -b2 * b2 * b2 + 36 * b2 * b4 - 216 * b6
        delta = 9 * b2 * b4 * b6 - b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6
        return Invariants(b2, b4, b6, b8, c4, c6, delta)

    @property
    def discriminant(self) -> Fraction:
        return self.invariants.delta

    @property
    def is_singular(self) -> bool:
        return self.discriminant == 0

    def is_integral(self, p: int) -> bool:
        return all(a.denominator % p != 0 for a in self.ainvs)

    def __str__(self) -> str:
        return "[" + ",".join(str(_format_rational(a)) for a in self.ainvs) + "]"


def invariants(model: WeierstrassModel) -> Invariants:
    """The b2, b4, b6, b8, c4, c6 and Δ of a model."""
    return model.invariants


@dataclass(frozen=True)
class Isomorphism:
    """The admissible change of variables (x, y) -> (u^2 x + r, u^3 y + u^2 s x + w), written [u, r, s, w]."""

    u: Fraction
    r: Fraction = Fraction(0)
    s: Fraction = Fraction(0)
    w: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("u", "r", "s", "w"):
            object.__setattr__(self, name, as_rational(getattr(self, name)))
        if self.u == 0:
            raise ValueError("An isomorphism needs u != 0.")

    @classmethod
    def identity(cls) -> Isomorphism:
        return cls(Fraction(1))

    @property
    def is_identity(self) -> bool:
        return self.u == 1 and self.r == 0 and self.s == 0 and self.w == 0

    def to_json(self) -> list[int | str]:
        return [_format_rational(x) for x in (self.u, self.r, self.s, self.w)]

    def __str__(self) -> str:
        return "[" + ",".join(str(x) for x in self.to_json()) + "]"


def apply_isomorphism(model: WeierstrassModel, phi: Isomorphism) -> WeierstrassModel:
    """Transform ``model`` by ``phi``; the discriminant scales by u^-12."""
    a1, a2, a3, a4, a6 = model.ainvs
    u, r, s, t = phi.u, phi.r, phi.s, phi.w
    return WeierstrassModel(
        (a1 + 2 * s) / u,
        (a2 - s * a1 + 3 * r - s * s) / u**2,
        (a3 + r * a1 + 2 * t) / u**3,
        (a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t) / u**4,
        (a6 + r * a4 + r * r * a2 + r**3 - t * a3 - t * t - r * t * a1) / u**6,
    )


def compose(first: Isomorphism, second: Isomorphism) -> Isomorphism:
    """The isomorphism that applies ``first`` and then ``second``."""
    u1, r1, s1, t1 = first.u, first.r, first.s, first.w
    u2, r2, s2, t2 = second.u, second.r, second.s, second.w
    return Isomorphism(
        u1 * u2,
        r1 + u1 * u1 * r2,
        s1 + u1 * s2,
        t1 + u1 * u1 * s1 * r2 + u1**3 * t2,
    )


def compose_all(isomorphisms: Iterable[Isomorphism]) -> Isomorphism:
    total = Isomorphism.identity()
    for phi in isomorphisms:
        total = compose(total, phi)
    return total


def inverse(phi: Isomorphism) -> Isomorphism:
    u, r, s, t = phi.u, phi.r, phi.s, phi.w
    return Isomorphism(1 / u, -r / u**2, -s / u, (r * s - t) / u**3)


def integral_model(model: WeierstrassModel, p: int) -> tuple[WeierstrassModel, Isomorphism]:
    """Clear p-denominators with [p^-k, 0, 0, 0] for the least k >= 0 making the model p-integral."""
    k = 0
    for a, weight in zip(model.ainvs, COEFFICIENT_WEIGHTS):
        v = valuation(a, p)
        if v < 0:
            k = max(k, math.ceil(-v / weight))
    if k == 0:
        return model, Isomorphism.identity()
    phi = Isomorphism(Fraction(1, p**k))
    return apply_isomorphism(model, phi), phi


# ---------------------------------------------------------------------------
# Valuation vectors
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ValuationSlot:
    """One entry of a valuation vector: ``v(a_i) >= value``, or ``v(a_i) = value`` when exact."""

    value: Valuation
    exact: bool = False

    def __post_init__(self):
        if self.exact and self.value == INFINITY:
            raise ValueError("An exact valuation slot cannot be infinite.")

    def admits(self, v: Valuation) -> bool:
        if self.exact:
            return v == self.value
        return v >= self.value

    def __str__(self) -> str:
        text = "inf" if self.value == INFINITY else str(self.value)
        return f"={text}" if self.exact else text


@dataclass(frozen=True)
class ValuationVector:
    """Five valuation slots, one for each of a1, a2, a3, a4, a6."""

    slots: tuple[ValuationSlot, ValuationSlot, ValuationSlot, ValuationSlot, ValuationSlot]

    def __post_init__(self):
        if len(self.slots) != 5:
            raise ValueError(f"A valuation vector has five slots, got {len(self.slots)}.")

    @classmethod
    def parse(cls, text: str) -> ValuationVector:
        """Parse a numeric vector such as ``"(=0, 0, inf, 3, =5)"``."""
        body = text.strip()
        if not (body.startswith("(") and body.endswith(")")):
            raise ValueError(f"Valuation vector must be parenthesized: '{text}'.")
        slots = []
        for entry in body[1:-1].split(","):
            entry = entry.strip()
            exact = entry.startswith("=")
            raw = entry[1:].strip() if exact else entry
            value: Valuation = INFINITY if raw in ("inf", "∞") else int(raw)
            slots.append(ValuationSlot(value, exact))
        return cls(tuple(slots))  # type: ignore[arg-type]

    def values(self) -> tuple[Valuation, ...]:
        return tuple(slot.value for slot in self.slots)

    def __getitem__(self, index: int) -> ValuationSlot:
        return self.slots[index]

    def __str__(self) -> str:
        return "(" + ", ".join(str(slot) for slot in self.slots) + ")"


def valuation_vector(model: WeierstrassModel, p: int) -> ValuationVector:
    """The exact valuations of a1, ..., a6; zero coefficients give an (inexact) infinite slot."""
    slots = []
    for a in model.ainvs:
        v = valuation(a, p)
        slots.append(ValuationSlot(v, exact=v != INFINITY))
    return ValuationVector(tuple(slots))  # type: ignore[arg-type]


def matches(vector: ValuationVector, pattern: ValuationVector, extra: Callable[[], bool] | None = None) -> bool:
    """Whether the valuations in ``vector`` satisfy ``pattern`` and the optional side condition."""
    for actual, wanted in zip(vector.slots, pattern.slots):
        if not wanted.admits(actual.value):
            return False
    return extra() if extra is not None else True


# ---------------------------------------------------------------------------
# Quadratic twists
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TwistClass:
    """A quadratic twist parameter at a prime, optionally in canonical form."""

    d: int
    p: int
    canonical: bool = False
    v_d: int = field(init=False)

    def __post_init__(self):
        if self.d == 0:
            raise ZeroTwist("Cannot twist by d = 0.")
        object.__setattr__(self, "v_d", int(valuation(self.d, self.p)))

    @property
    def unit_part(self) -> int:
        return self.d // self.p**self.v_d

    def unit_residue(self, k: int = 1) -> int:
        """The unit part of d modulo p^k."""
        return residue_mod(self.unit_part, self.p, k)

    @property
    def is_trivial(self) -> bool:
        """Whether d is a square in Q_p."""
        return canonicalize_twist(self.d, self.p).d == 1

    def __str__(self) -> str:
        return str(self.d)


@lru_cache(maxsize=None)
def smallest_nonresidue(p: int) -> int:
    """The least positive quadratic non-residue modulo an odd prime."""
    return next(n for n in range(2, p) if legendre(n, p) == -1)


def canonicalize_twist(d: int, p: int) -> TwistClass:
    """Reduce d to a fixed representative of its class in Q_p^* / (Q_p^*)^2.

    The representative has v_p(d) in {0, 1}; its unit part is 1 or the least non-residue for
    odd p, and one of 1, 3, 5, 7 for p = 2.
    """
    check_prime(p)
    if d == 0:
        raise ZeroTwist("Cannot twist by d = 0.")
    v = int(valuation(d, p))
    unit = d // p**v
    if p == 2:
        unit_class = unit % 8
    else:
        unit_class = 1 if legendre(unit, p) == 1 else smallest_nonresidue(p)
    return TwistClass(p ** (v % 2) * unit_class, p, canonical=True)


def twist_model(model: WeierstrassModel, d: TwistClass | int) -> WeierstrassModel:
    """The model y^2 = x^3 + d b2 x^2 + 8 d^2 b4 x + 16 d^3 b6 of the quadratic twist by d."""
    dd = Fraction(d.d if isinstance(d, TwistClass) else d)
    if dd == 0:
        raise ZeroTwist("Cannot twist by d = 0.")
    inv = model.invariants
    return WeierstrassModel(Fraction(0), dd * inv.b2, Fraction(0), 8 * dd * dd * inv.b4, 16 * dd**3 * inv.b6)
