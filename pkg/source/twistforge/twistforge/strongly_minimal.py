# Copyright (c) 2025 Twistforge Developers
# SPDX-License-Identifier: BSD 3-Clause

"""Strongly-minimal models: normalization, classification and local data read from coefficients."""

from __future__ import annotations

import math
from collections.abc import Callable
from dataclasses import dataclass
from fractions import Fraction

from .conditions import model_context
from .config import StrongMinCfg
from .errors import (
    Char2Required,
    InternalLoopBound,
    NotIntegral,
    NotMinimal,
    NotStronglyMinimal,
    SingularModel,
    TableMismatch,
)
from .kodaira import KodairaType, LocalData, ReductionKind, component_count, reduction_kind
from .local_tables import DISC_CONDUCTOR_Q2, TAMAGAWA_Q2, TableRow, first_branch, rows_for_prime
from .padic_core import check_prime, residue_mod, valuation
from .tate import multiplicative_splitness, tate_local_data
from .utils.logging import get_logger
from .weierstrass import Isomorphism, WeierstrassModel, apply_isomorphism, compose

logger = get_logger(__name__)


@dataclass(frozen=True)
class StronglyMinimalModel:
    """A model matching one strongly-minimal row at ``p``."""

    model: WeierstrassModel
    p: int
    type: KodairaType
    row: TableRow

    @property
    def matched_row(self) -> str:
        return self.row.key

    @property
    def n(self) -> int | None:
        return self.type.n

    def context(self, **extra) -> dict[str, Fraction]:
        """Condition-evaluation context with the model's coefficients and n bound."""
        return model_context(self.model, self.p, n=self.type.n, **extra)


def classify(model: WeierstrassModel, p: int) -> StronglyMinimalModel | None:
    """Match ``model`` against the strongly-minimal rows for ``p``.

    Returns:
        The matched model, or None if the model is not strongly minimal at ``p``.

    Raises:
        TableMismatch: If two rows match, which the tables rule out.
    """
    check_prime(p)
    if model.is_singular or not model.is_integral(p):
        return None
    found: list[StronglyMinimalModel] = []
    for row in rows_for_prime(p):
        ok, n = row.matches(model, p)
        if ok:
            found.append(StronglyMinimalModel(model, p, row.kodaira_type(n), row))
    if len(found) > 1:
        keys = ", ".join(s.matched_row for s in found)
        raise TableMismatch(f"{model} matches several strongly-minimal rows at p = {p}: {keys}.")
    return found[0] if found else None


def classify_or_raise(model: WeierstrassModel, p: int) -> StronglyMinimalModel:
    result = classify(model, p)
    if result is None:
        raise NotStronglyMinimal(f"{model} is not strongly minimal at p = {p}.")
    return result


# ---------------------------------------------------------------------------
# Normalization
# ---------------------------------------------------------------------------


class _Normalizer:
    """Applies [1, r, s, w] steps to a working model and records their composite."""

    def __init__(self, model: WeierstrassModel, p: int, phi: Isomorphism, cap: int):
        self.model = model
        self.p = p
        self.phi = phi
        self.cap = cap

    def v(self, name: str) -> int | float:
        return valuation(getattr(self.model, name), self.p)

    def apply(self, r=0, s=0, w=0) -> None:
        step = Isomorphism(1, r, s, w)
        if not step.is_identity:
            self.model = apply_isomorphism(self.model, step)
            self.phi = compose(self.phi, step)

    def raise_a4(self, target: int) -> None:
        """Translate x until v(a4) >= target, keeping a1 = a3 = 0 (odd p)."""
        for _ in range(self.cap):
            if self.v("a4") >= target:
                return
            E = self.model
            self.apply(r=(self.p**target - E.a4) / (2 * E.a2))
        if self.v("a4") < target:
            raise InternalLoopBound(f"Could not raise v(a4) to {target} within {self.cap} steps at p = {self.p}.")

    def clear_a3_a4(self, target: int) -> None:
        """Alternately kill a4 with a y-translation and a3 with an x-translation (p = 2, a1 a unit)."""
        for _ in range(self.cap):
            if min(self.v("a3"), self.v("a4")) >= target:
                return
            E = self.model
            self.apply(w=E.a4 / E.a1)
            E = self.model
            self.apply(r=-E.a3 / E.a1)
        if min(self.v("a3"), self.v("a4")) < target:
            raise InternalLoopBound(f"Could not raise v(a3), v(a4) to {target} within {self.cap} steps at p = 2.")


def raise_a4(
    model: WeierstrassModel, p: int, target: int, cfg: StrongMinCfg | None = None
) -> tuple[WeierstrassModel, Isomorphism]:
    """Translate x until v(a4) >= target on a model with a1 = a3 = 0 and a2 a unit at odd p."""
    cfg = cfg or StrongMinCfg()
    cap = int(valuation(model.discriminant, p)) + cfg.loop_slack
    work = _Normalizer(model, p, Isomorphism.identity(), cap)
    work.raise_a4(target)
    return work.model, work.phi


def _normalize_odd(work: _Normalizer, kodaira: KodairaType) -> None:
    E = work.model
    work.apply(s=-E.a1 / 2, w=-E.a3 / 2)
    n = kodaira.n or 0
    if kodaira.family == "In":
        work.raise_a4(math.ceil(Fraction(n + 3, 2)))
    elif kodaira.family == "In*":
        work.raise_a4(math.ceil(Fraction(n + 5, 2)))


def _normalize_two(work: _Normalizer, kodaira: KodairaType) -> None:
    family = kodaira.family
    E = work.model
    if family == "I0":
        if work.v("a1") >= 1:
            work.apply(r=E.a2)
        else:
            work.apply(r=3 * E.a3 / E.a1)
    elif family == "In":
        n = kodaira.n or 0
        if n % 2:
            half = (n + 1) // 2
            work.clear_a3_a4(half)
            if work.v("a3") > half:
                work.apply(r=2**half)
        else:
            work.clear_a3_a4(n // 2 + 1)
            work.apply(w=2 ** (n // 2))
    elif family in ("II", "III", "IV"):
        if residue_mod(E.a2, 2) == 1:
            work.apply(s=1)
    elif family == "I0*":
        if work.v("a4") == 2:
            work.apply(r=2)


def to_strongly_minimal(
    model: WeierstrassModel, p: int, cfg: StrongMinCfg | None = None
) -> tuple[StronglyMinimalModel, Isomorphism]:
    """Find a strongly-minimal model isomorphic to ``model`` over Q_p.

    The model is first put into the normal form Tate's algorithm exits with, then moved into
    the strongly-minimal pattern of its type by changes of variables with u = 1.

    Args:
        model: A p-integral, p-minimal model.
        p: The prime.
        cfg: Loop caps. Defaults to :class:`~twistforge.config.StrongMinCfg`.

    Returns:
        The strongly-minimal model and the isomorphism from ``model`` onto it.

    Raises:
        SingularModel: If the discriminant is zero.
        NotIntegral: If the model is not p-integral.
        NotMinimal: If the model is not p-minimal.
        NotStronglyMinimal: If normalization does not reach a strongly-minimal pattern.
    """
    cfg = cfg or StrongMinCfg()
    check_prime(p)
    if model.is_singular:
        raise SingularModel(f"Model {model} has zero discriminant.")
    if not model.is_integral(p):
        raise NotIntegral(f"Model {model} is not {p}-integral.")

    direct = classify(model, p)
    if direct is not None:
        return direct, Isomorphism.identity()

    oracle = tate_local_data(model, p)
    if oracle.restarts:
        raise NotMinimal(
            f"Model {model} is not minimal at p = {p}: v(Δ) = {valuation(model.discriminant, p)}, "
            f"minimal δ = {oracle.local_data.delta}."
        )
    kodaira = oracle.local_data.type
    cap = int(valuation(model.discriminant, p)) + cfg.loop_slack
    work = _Normalizer(oracle.minimal_model, p, oracle.isomorphism, cap)
    if p == 2:
        _normalize_two(work, kodaira)
    else:
        _normalize_odd(work, kodaira)

    result = classify(work.model, p)
    if result is None or result.type != kodaira:
        found = "no row" if result is None else f"row {result.matched_row}"
        raise NotStronglyMinimal(f"Normalizing {model} at p = {p} (type {kodaira}) reached {work.model}, {found}.")
    logger.debug(f"{model} at p={p}: strongly minimal {work.model} via {work.phi} ({result.matched_row})")
    return result, work.phi


# ---------------------------------------------------------------------------
# Local data from the tables
# ---------------------------------------------------------------------------


def tamagawa_from_row(S: StronglyMinimalModel) -> int:
    """Tamagawa number from the matched row's conditions."""
    return first_branch(S.row.branches, S.context(), f"row {S.matched_row}")


def tamagawa_q2(S: StronglyMinimalModel) -> int:
    """Tamagawa number over Q_2 from valuation conditions only."""
    if S.p != 2:
        raise Char2Required(f"The Q_2 Tamagawa table needs p = 2, got p = {S.p}.")
    return first_branch(TAMAGAWA_Q2[S.type.family], S.context(), f"the Q_2 Tamagawa table ({S.type})")


def disc_conductor_q2(S: StronglyMinimalModel) -> tuple[int, int]:
    """Minimal discriminant valuation and conductor exponent over Q_2."""
    if S.p != 2:
        raise Char2Required(f"The Q_2 discriminant table needs p = 2, got p = {S.p}.")
    ctx = S.context()
    for row in DISC_CONDUCTOR_Q2[S.type.family]:
        if row.condition(ctx):
            return row.delta(ctx), row.f(ctx)
    raise TableMismatch(f"No discriminant/conductor row applies to {S.model} ({S.type}).")


def is_split(S: StronglyMinimalModel) -> bool | None:
    """Splitness of multiplicative reduction; None for other types."""
    if S.type.family != "In":
        return None
    return multiplicative_splitness(S.model, S.p) is ReductionKind.SPLIT_MULTIPLICATIVE


def base_local_data(
    S: StronglyMinimalModel, tamagawa: Callable[[StronglyMinimalModel], int] = tamagawa_from_row
) -> LocalData:
    """Local data read from the tables.

    c comes from ``tamagawa`` (the matched row by default), δ and f from the Q_2 table or, at odd p,
    from v(Δ) and Ogg's formula.
    """
    c = tamagawa(S)
    m = component_count(S.type)
    if S.p == 2:
        delta, f = disc_conductor_q2(S)
    else:
        delta = int(valuation(S.model.discriminant, S.p))
        f = delta - m + 1
    try:
        return LocalData(S.type, delta, f, c, m, reduction_kind(S.type, is_split(S)))
    except ValueError as err:
        raise TableMismatch(f"Inconsistent table data for {S.model} at p = {S.p}: {err}") from err
