# Copyright (c) 2025 Twistforge Developers
# SPDX-License-Identifier: BSD 3-Clause

"""Tate's algorithm over Q_p.

This is the reference oracle: it makes no use of the strongly-minimal tables and is used to
check every fast path. Steps follow Silverman's exposition; translations are chosen as the
smallest nonnegative residues so that the output model is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .config import TateCfg
from .errors import InternalLoopBound, SingularModel
from .kodaira import II, II_STAR, III, III_STAR, IV, IV_STAR, KodairaType, LocalData, ReductionKind
from .padic_core import check_prime, count_cubic_roots_mod_p, has_quadratic_root, residue_mod, valuation
from .utils.logging import get_logger
from .weierstrass import Isomorphism, WeierstrassModel, apply_isomorphism, compose, integral_model

logger = get_logger(__name__)


@dataclass(frozen=True)
class TateResult:
    """Output of :func:`tate_local_data`."""

    local_data: LocalData
    minimal_model: WeierstrassModel
    """A p-minimal integral model, the working model at the point the type was decided."""
    isomorphism: Isomorphism
    """Maps the input model onto ``minimal_model``."""
    restarts: int = 0
    """How many times the model was found non-minimal and rescaled."""


@dataclass
class _State:
    model: WeierstrassModel
    p: int
    phi: Isomorphism = field(default_factory=Isomorphism.identity)

    def apply(self, r=0, s=0, t=0, u=1) -> None:
        step = Isomorphism(u, r, s, t)
        if step.is_identity:
            return
        self.model = apply_isomorphism(self.model, step)
        self.phi = compose(self.phi, step)

    def v(self, x: Fraction) -> int | float:
        return valuation(x, self.p)

    def res(self, x: Fraction) -> int:
        return residue_mod(x, self.p)


def multiplicative_splitness(model: WeierstrassModel, p: int) -> ReductionKind:
    """Split or nonsplit multiplicative reduction of a model whose node is at the origin mod p.

    The tangent directions at the node are the roots of T^2 + a1 T - a2.
    """
    if has_quadratic_root(1, model.a1, -model.a2, p):
        return ReductionKind.SPLIT_MULTIPLICATIVE
    return ReductionKind.NONSPLIT_MULTIPLICATIVE


def _translate_singular_point(state: _State) -> None:
    p = state.p
    E = state.model
    inv = E.invariants
    if p == 2:
        if state.res(inv.b2) == 0:
            r = state.res(E.a4)
            t = residue_mod(r * (1 + E.a2 + E.a4) + E.a6, 2)
        else:
            r = state.res(E.a3)
            t = residue_mod(r + E.a4, 2)
    elif p == 3:
        r = state.res(-inv.b6) if state.res(inv.b2) == 0 else state.res(-inv.b2 * inv.b4)
        t = residue_mod(E.a1 * r + E.a3, 3)
    else:
        if state.res(inv.c4) == 0:
            r = state.res(-inv.b2 / 12)
        else:
            r = state.res(-(inv.c6 + inv.b2 * inv.c4) / (12 * inv.c4))
        t = state.res(-(E.a1 * r + E.a3) / 2)
    state.apply(r=r, t=t)


def _istar_subprocedure(state: _State, cfg: TateCfg) -> tuple[int, int]:
    """Locate the I*_n index by alternately translating y and x; returns (n, c)."""
    p = state.p
    ix = iy = 3
    mx = my = p * p
    for _ in range(cfg.subloop_cap):
        E = state.model
        a2t, a3t, a6t = E.a2 / p, E.a3 / my, E.a6 / (mx * my)
        if state.v(a3t * a3t + 4 * a6t) == 0:
            c = 4 if has_quadratic_root(1, a3t, -a6t, p) else 2
            return ix + iy - 5, c
        t = my * (residue_mod(a6t, 2) if p == 2 else state.res(-a3t / 2))
        state.apply(t=t)
        my *= p
        iy += 1
        E = state.model
        a2t, a4t, a6t = E.a2 / p, E.a4 / (p * mx), E.a6 / (mx * my)
        if state.v(a4t * a4t - 4 * a6t * a2t) == 0:
            c = 4 if has_quadratic_root(a2t, a4t, a6t, p) else 2
            return ix + iy - 5, c
        r = mx * (residue_mod(a6t / a2t, 2) if p == 2 else state.res(-a4t / (2 * a2t)))
        state.apply(r=r)
        mx *= p
        ix += 1
    raise InternalLoopBound(f"I*_n sub-procedure exceeded {cfg.subloop_cap} iterations at p = {p}.")


def _tate_pass(state: _State, cfg: TateCfg) -> tuple[KodairaType, int, bool | None] | None:
    """One pass of the algorithm. Returns (type, c, split) or None when the model is not minimal."""
    p = state.p
    if state.v(state.model.discriminant) == 0:
        return KodairaType.I(0), 1, None

    _translate_singular_point(state)
    E = state.model
    inv = E.invariants
    v_delta = int(state.v(inv.delta))

    if state.v(inv.c4) == 0:
        split = multiplicative_splitness(E, p) is ReductionKind.SPLIT_MULTIPLICATIVE
        return KodairaType.I(v_delta), v_delta if split else 2 - v_delta % 2, split
    if state.v(E.a6) < 2:
        return II, 1, None
    if state.v(inv.b8) < 3:
        return III, 2, None
    if state.v(inv.b6) < 3:
        c = 3 if has_quadratic_root(1, E.a3 / p, -E.a6 / p**2, p) else 1
        return IV, c, None

    # the singular point is now a triple point of the reduced cubic
    if p == 2:
        s = state.res(E.a2)
        t = 2 * residue_mod(E.a6 / 4, 2)
    else:
        s = state.res(-E.a1 / 2)
        t = p * state.res(-E.a3 / (2 * p))
    state.apply(s=s, t=t)
    E = state.model

    b, c, d = E.a2 / p, E.a4 / p**2, E.a6 / p**3
    w = 27 * d * d - b * b * c * c + 4 * b**3 * d - 18 * b * c * d + 4 * c**3
    x = 3 * c - b * b
    if state.v(w) == 0:
        return KodairaType.Istar(0), 1 + count_cubic_roots_mod_p(b, c, d, p), None
    if state.v(x) == 0:
        if p == 2:
            r = residue_mod(c, 2)
        elif p == 3:
            r = state.res(c / b)
        else:
            r = state.res((b * c - 9 * d) / (2 * x))
        state.apply(r=p * r)
        n, tamagawa = _istar_subprocedure(state, cfg)
        return KodairaType.Istar(n), tamagawa, None

    # triple root
    if p == 2:
        r = residue_mod(b, 2)
    elif p == 3:
        r = state.res(-d)
    else:
        r = state.res(-b / 3)
    state.apply(r=p * r)
    E = state.model
    a3t, a6t = E.a3 / p**2, E.a6 / p**4
    if state.v(a3t * a3t + 4 * a6t) == 0:
        return IV_STAR, 3 if has_quadratic_root(1, a3t, -a6t, p) else 1, None
    t = -(p**2) * residue_mod(a6t, 2) if p == 2 else p**2 * state.res(-a3t / 2)
    state.apply(t=t)
    E = state.model
    if state.v(E.a4) < 4:
        return III_STAR, 2, None
    if state.v(E.a6) < 6:
        return II_STAR, 1, None
    return None


def tate_local_data(model: WeierstrassModel, p: int, cfg: TateCfg | None = None) -> TateResult:
    """Local data of ``model`` at ``p`` by Tate's algorithm.

    Args:
        model: Any nonsingular model with rational coefficients.
        p: The prime.
        cfg: Loop caps. Defaults to :class:`~twistforge.config.TateCfg`.

    Returns:
        The local data, a minimal model and the isomorphism onto it.

    Raises:
        SingularModel: If the discriminant is zero.
        InternalLoopBound: If a loop cap is exceeded.
    """
    cfg = cfg or TateCfg()
    check_prime(p)
    if model.is_singular:
        raise SingularModel(f"Model {model} has zero discriminant.")
    integral, phi = integral_model(model, p)
    state = _State(integral, p, phi)
    for restarts in range(cfg.restart_cap + 1):
        outcome = _tate_pass(state, cfg)
        if outcome is not None:
            kodaira, c, split = outcome
            delta = int(state.v(state.model.discriminant))
            if restarts:
                logger.debug(f"{model} at p={p}: minimal after {restarts} restart(s)")
            return TateResult(LocalData.build(kodaira, delta, c, split), state.model, state.phi, restarts)
        state.apply(u=p)
    raise InternalLoopBound(f"Tate's algorithm exceeded {cfg.restart_cap} restarts for {model} at p = {p}.")
