# Copyright (c) 2025 Twistforge Developers
# SPDX-License-Identifier: BSD 3-Clause

"""Quadratic twists over Q_2.

Two routes produce the local data of E^d:

* the fast route reads type, δ, f and c of the twist from q2_unit_twist (unit d only),
* the model route selects a row of q2_model_unit (v(d) = 0) or q2_model_ramified (v(d) = 1),
  applies the matching q2_isomorphisms entry to the twist model, asserts the resulting valuation
  vector and reads the local data of the strongly-minimal twist from the Q_2 tables.
"""

from __future__ import annotations

from ..conditions import model_context
from ..config import StrongMinCfg
from ..errors import Char2Required, NotMinimal, NotStronglyMinimal, TableMismatch
from ..kodaira import LocalData, component_count, reduction_kind
from ..local_tables import first_branch
from ..strongly_minimal import (
    StronglyMinimalModel,
    base_local_data,
    classify,
    tamagawa_q2,
    to_strongly_minimal,
)
from ..utils.logging import get_logger
from ..weierstrass import (
    Isomorphism,
    TwistClass,
    apply_isomorphism,
    compose,
    matches,
    twist_model,
    valuation_vector,
)
from .common import TwistLocalData, TwistPath, as_twist_class, first_fast_row
from .tables import ModelRow, isomorphism_entry, model_rows

logger = get_logger(__name__)


def _check_two(S: StronglyMinimalModel) -> None:
    if S.p != 2:
        raise Char2Required(f"The Q_2 twist routine needs p = 2, got p = {S.p}.")


def select_model_row(S: StronglyMinimalModel, d: TwistClass) -> ModelRow:
    """The first q2_model_ramified/q2_model_unit row whose conditions hold for ``S`` and ``d``."""
    ctx = S.context(d=d.d)
    for row in model_rows(S.type.family, d.v_d):
        if row.condition(ctx):
            return row
    table = "q2_model_unit" if d.v_d == 0 else "q2_model_ramified"
    raise TableMismatch(f"No {table} row applies to {S.model} ({S.type}) with d = {d}.")


def _twist_model_route(
    S: StronglyMinimalModel, d: TwistClass, cfg: StrongMinCfg | None
) -> tuple[StronglyMinimalModel, Isomorphism, bool]:
    row = select_model_row(S, d)
    ctx = S.context(d=d.d)
    entry = isomorphism_entry(d.v_d, S.type.family, row.j)
    phi = entry.evaluate(ctx)
    model = apply_isomorphism(twist_model(S.model, d), phi)

    if not model.is_integral(2):
        raise TableMismatch(f"{row.key} (j = {row.j}) maps the twist of {S.model} by d = {d} to non-integral {model}.")
    ctx_f = model_context(model, 2, n=S.n, d=d.d)
    side = row.pattern.side
    extra = (lambda: side(ctx_f)) if side is not None else None
    wanted = row.pattern.vector(ctx_f)
    if not matches(valuation_vector(model, 2), wanted, extra):
        raise TableMismatch(
            f"{row.key} (j = {row.j}): {model} has valuations {valuation_vector(model, 2)}, expected {row.pattern}."
        )

    expected = row.type.evaluate(ctx)
    oracle_normalized = False
    result = classify(model, 2)
    if result is None:
        # the row pattern is coarser than the classification patterns; normalizing consults the oracle
        try:
            result, step = to_strongly_minimal(model, 2, cfg)
        except (NotMinimal, NotStronglyMinimal) as err:
            raise TableMismatch(f"{row.key} (j = {row.j}) produced {model}, which cannot be normalized: {err}") from err
        phi = compose(phi, step)
        oracle_normalized = True
    if result.type != expected:
        raise TableMismatch(f"{row.key} (j = {row.j}): twisted model has type {result.type}, expected {expected}.")
    logger.debug(f"{row.key}: F_{row.j} = {result.model} via {phi} ({result.matched_row})")
    return result, phi, oracle_normalized


def twist_strongly_minimal_q2(
    S: StronglyMinimalModel, d: TwistClass | int, cfg: StrongMinCfg | None = None
) -> tuple[StronglyMinimalModel, Isomorphism]:
    """Strongly-minimal model of E^d over Q_2.

    Args:
        S: Strongly-minimal model of E at p = 2.
        d: The twist parameter.
        cfg: Loop caps used when the table model still needs normalizing.

    Returns:
        The strongly-minimal model of E^d and the isomorphism from ``twist_model(S.model, d)`` onto it.

    Raises:
        Char2Required: If ``S.p`` is not 2.
        TableMismatch: If no row applies, the transformed model misses the row's valuation
            pattern, or its type differs from the row's.
    """
    _check_two(S)
    result, phi, _ = _twist_model_route(S, as_twist_class(d, 2), cfg)
    return result, phi


def _fast_twisted(S: StronglyMinimalModel, d: TwistClass, base: LocalData) -> LocalData:
    ctx = S.context(d=d.d, k=base.delta, c=base.c)
    row = first_fast_row("q2_unit_twist", S.type.family, 0, ctx)
    try:
        if row.delta is not None and row.delta(ctx) != base.delta:
            raise TableMismatch(f"q2_unit_twist row {row.key} gives δ = {row.delta(ctx)}, base δ = {base.delta}.")
        if row.f is not None and row.f(ctx) != base.f:
            raise TableMismatch(f"q2_unit_twist row {row.key} gives f = {row.f(ctx)}, base f = {base.f}.")
        if row.delta_d is None or row.f_d is None:
            raise TableMismatch(f"q2_unit_twist row {row.key} lacks δ^d or f^d.")
        kodaira = row.type.evaluate(ctx)
        split = row.split(ctx) if row.split is not None else None
        c_d = first_branch(row.c_d, ctx, f"q2_unit_twist row {row.key}")
        twisted = LocalData(
            kodaira,
            row.delta_d(ctx),
            row.f_d(ctx),
            c_d,
            component_count(kodaira),
            reduction_kind(kodaira, split),
        )
    except ValueError as err:
        raise TableMismatch(f"Inconsistent data from q2_unit_twist row {row.key}: {err}") from err
    logger.debug(f"q2_unit_twist {row.key}: {S.type} -> {twisted.type}")
    return twisted


def twist_data_q2(
    S: StronglyMinimalModel,
    d: TwistClass | int,
    path: TwistPath | None = None,
    cfg: StrongMinCfg | None = None,
) -> TwistLocalData:
    """Local data of E and E^d over Q_2.

    Args:
        S: Strongly-minimal model of E at p = 2.
        d: The twist parameter.
        path: TABLE_FAST reads q2_unit_twist and is only available for v(d) = 0; MODEL_DERIVED goes
            through :func:`twist_strongly_minimal_q2`. Defaults to TABLE_FAST for unit d.
        cfg: Loop caps for the model route.

    Returns:
        The local data of E and E^d. ``oracle_normalized`` is set when the tabulated model
        matched its row but no classification pattern, and was normalized by the oracle.

    Raises:
        Char2Required: If ``S.p`` is not 2.
        TableMismatch: If a table row is missing or contradicts the model.
    """
    _check_two(S)
    d = as_twist_class(d, 2)
    base = base_local_data(S)
    if path is None or d.v_d == 1:
        path = TwistPath.TABLE_FAST if d.v_d == 0 else TwistPath.MODEL_DERIVED
    if d.is_trivial:
        return TwistLocalData(base, base, d, 2, path)
    if path is TwistPath.TABLE_FAST:
        return TwistLocalData(base, _fast_twisted(S, d, base), d, 2, path)
    F, _, oracle_normalized = _twist_model_route(S, d, cfg)
    twisted = base_local_data(F, tamagawa=tamagawa_q2)
    return TwistLocalData(base, twisted, d, 2, path, oracle_normalized)
