# Copyright (c) 2025 Twistforge Developers
# SPDX-License-Identifier: BSD 3-Clause

"""Greedy shrinking of disagreement witnesses."""

from __future__ import annotations

from collections.abc import Iterator
from fractions import Fraction

from ..errors import NotADisagreement
from ..twist import TwistPath
from ..utils.logging import get_logger
from ..weierstrass import Isomorphism, TwistClass, WeierstrassModel, apply_isomorphism
from .harness import evaluate_curve

logger = get_logger(__name__)


def _size(model: WeierstrassModel) -> Fraction:
    return sum((abs(a) for a in model.ainvs), Fraction(0))


def _disagrees(model: WeierstrassModel, d: int, p: int, path: TwistPath | None) -> bool:
    if model.is_singular or any(a.denominator != 1 for a in model.ainvs):
        return False
    outcomes = evaluate_curve([int(a) for a in model.ainvs], p, [d]) or []
    return any(not o.agrees for o in outcomes if path is None or o.path == path.value)


def _candidates(model: WeierstrassModel, p: int) -> Iterator[WeierstrassModel]:
    scaled = apply_isomorphism(model, Isomorphism(p))
    if all(a.denominator == 1 for a in scaled.ainvs):
        yield scaled
    ainvs = list(model.ainvs)
    for i, a in enumerate(ainvs):
        if a == 0:
            continue
        for smaller in (Fraction(int(a / 2)), a - 1 if a > 0 else a + 1):
            yield WeierstrassModel.from_ainvs(ainvs[:i] + [smaller] + ainvs[i + 1 :])


def minimize_witness(
    model: WeierstrassModel, d: TwistClass | int, p: int, path: TwistPath | None = None
) -> WeierstrassModel:
    """Shrink a disagreement witness while it keeps disagreeing.

    Candidates are the model scaled by [p, 0, 0, 0] when it stays integral, then each nonzero
    coefficient halved or moved one step toward zero. The first candidate that still disagrees
    is taken and the search restarts; the sum of |a_i| strictly drops with every step.

    Args:
        model: A nonsingular model with integer coefficients.
        d: The twist parameter.
        p: The prime.
        path: Only disagreements on this path count; any path when None.

    Returns:
        A locally minimal witness; ``model`` itself when no candidate disagrees.

    Raises:
        NotADisagreement: If ``model`` does not disagree to begin with.
    """
    dd = d.d if isinstance(d, TwistClass) else d
    if not _disagrees(model, dd, p, path):
        raise NotADisagreement(f"{model} with d = {dd} at p = {p} does not disagree.")
    current = model
    improved = True
    while improved:
        improved = False
        for candidate in _candidates(current, p):
            if _size(candidate) < _size(current) and _disagrees(candidate, dd, p, path):
                logger.debug(f"minimize: {current} -> {candidate}")
                current = candidate
                improved = True
                break
    return current
