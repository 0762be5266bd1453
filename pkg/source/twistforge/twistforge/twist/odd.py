# Copyright (c) 2025 Twistforge Developers
# SPDX-License-Identifier: BSD 3-Clause

"""Quadratic twists at an odd prime."""

from __future__ import annotations

import math
from fractions import Fraction

from ..config import StrongMinCfg
from ..errors import OddPrimeRequired, TableMismatch
from ..kodaira import LocalData
from ..local_tables import first_branch
from ..padic_core import valuation
from ..strongly_minimal import (
    StronglyMinimalModel,
    base_local_data,
    classify,
    is_split,
    raise_a4,
    tamagawa_from_row,
)
from ..utils.logging import get_logger
from ..weierstrass import Isomorphism, TwistClass, apply_isomorphism, compose, twist_model
from .common import TwistLocalData, TwistPath, as_twist_class, first_fast_row

logger = get_logger(__name__)

_DIVIDED_FAMILIES = ("I0*", "In*", "IV*", "III*", "II*")
"""Base families whose v(d) = 1 twist is non-minimal until divided by [p, 0, 0, 0]."""


def _check_odd(S: StronglyMinimalModel) -> None:
    if S.p == 2:
        raise OddPrimeRequired("The odd-p twist routine was called with p = 2.")


def twist_strongly_minimal_odd(
    S: StronglyMinimalModel, d: TwistClass | int, cfg: StrongMinCfg | None = None
) -> tuple[StronglyMinimalModel, Isomorphism]:
    """Strongly-minimal model of E^d at an odd prime.

    The twist model is scaled by [2, 0, 0, 0] to (0, d a2, 0, d^2 a4, d^3 a6), divided by
    [p, 0, 0, 0] when v(d) = 1 and E has additive potentially good star type, and finally has
    v(a4) raised when the twist has multiplicative reduction.

    Args:
        S: Strongly-minimal model of E at an odd prime.
        d: The twist parameter.
        cfg: Loop caps for the v(a4) translation.

    Returns:
        The strongly-minimal model of E^d and the isomorphism from ``twist_model(S.model, d)`` onto it.

    Raises:
        OddPrimeRequired: If ``S.p`` is 2.
        TableMismatch: If the constructed model does not have the type the odd_twist table predicts.
    """
    _check_odd(S)
    p = S.p
    d = as_twist_class(d, p)
    family = S.type.family
    ctx = S.context(d=d.d)
    expected = first_fast_row("odd_twist", family, d.v_d, ctx).type.evaluate(ctx)

    phi = Isomorphism(2, 0, 0, 0)
    if d.v_d == 1 and family in _DIVIDED_FAMILIES:
        phi = compose(phi, Isomorphism(p, 0, 0, 0))
    model = apply_isomorphism(twist_model(S.model, d), phi)

    result = classify(model, p)
    if result is None and expected.family == "In" and valuation(model.a2, p) == 0:
        target = math.ceil(Fraction((expected.n or 0) + 3, 2))
        model, step = raise_a4(model, p, target, cfg)
        phi = compose(phi, step)
        result = classify(model, p)
    if result is None:
        raise TableMismatch(f"Twist of {S.model} by d = {d} at p = {p} gave {model}, which is not strongly minimal.")
    if result.type != expected:
        raise TableMismatch(
            f"Twist of {S.model} ({S.type}) by d = {d} at p = {p} has type {result.type}, table predicts {expected}."
        )
    logger.debug(f"twist {S.model} by d={d} at p={p}: {model} via {phi} ({result.matched_row})")
    return result, phi


def twist_data_odd(S: StronglyMinimalModel, d: TwistClass | int, cfg: StrongMinCfg | None = None) -> TwistLocalData:
    """Local data of E and E^d at an odd prime.

    Type and Tamagawa number of the twist come from the odd_twist table; δ and f of the twist come from its
    strongly-minimal model, whose type, Tamagawa number and splitness are checked against the row.

    Raises:
        OddPrimeRequired: If ``S.p`` is 2.
        TableMismatch: If the table and the twisted model disagree.
    """
    _check_odd(S)
    p = S.p
    d = as_twist_class(d, p)
    base = base_local_data(S)
    if d.is_trivial:
        return TwistLocalData(base, base, d, p, TwistPath.TABLE_FAST)

    ctx = S.context(d=d.d, c=base.c)
    row = first_fast_row("odd_twist", S.type.family, d.v_d, ctx)
    type_d = row.type.evaluate(ctx)
    c_d = first_branch(row.c_d, ctx, f"odd_twist row {row.key}")
    split = row.split(ctx) if row.split is not None else None

    F, _ = twist_strongly_minimal_odd(S, d, cfg)
    c_model = tamagawa_from_row(F)
    if c_model != c_d:
        raise TableMismatch(f"odd_twist row {row.key} gives c^d = {c_d}, the twisted model {F.model} gives {c_model}.")
    if split is not None and split != is_split(F):
        raise TableMismatch(f"odd_twist row {row.key} and the twisted model {F.model} disagree on splitness.")

    delta_d = int(valuation(F.model.discriminant, p))
    try:
        twisted = LocalData.build(type_d, delta_d, c_d, split)
    except ValueError as err:
        raise TableMismatch(f"Inconsistent twisted data from odd_twist row {row.key}: {err}") from err
    logger.debug(f"odd_twist {row.key}: {S.type} -> {type_d}, c^d = {c_d}")
    return TwistLocalData(base, twisted, d, p, TwistPath.TABLE_FAST)
