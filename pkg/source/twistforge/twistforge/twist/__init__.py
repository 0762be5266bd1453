# Copyright (c) 2025 Twistforge Developers
# SPDX-License-Identifier: BSD 3-Clause

"""Local data of quadratic twists, at odd primes and over Q_2."""

from __future__ import annotations

from ..config import StrongMinCfg
from ..strongly_minimal import StronglyMinimalModel, to_strongly_minimal
from ..weierstrass import Isomorphism, TwistClass, WeierstrassModel
from .common import TwistLocalData, TwistPath, as_twist_class
from .odd import twist_data_odd, twist_strongly_minimal_odd
from .q2 import select_model_row, twist_data_q2, twist_strongly_minimal_q2
from .tables import (
    TABLE_NAMES,
    TwistConditionPolynomial,
    TwistIsomorphismEntry,
    evaluate_prj,
    polynomial_entry,
    render_table,
    table_digest,
    twist_tables,
)


def twist_strongly_minimal(
    S: StronglyMinimalModel, d: TwistClass | int, cfg: StrongMinCfg | None = None
) -> tuple[StronglyMinimalModel, Isomorphism]:
    """Strongly-minimal model of E^d and the isomorphism from ``twist_model(S.model, d)`` onto it."""
    if S.p == 2:
        return twist_strongly_minimal_q2(S, d, cfg)
    return twist_strongly_minimal_odd(S, d, cfg)


def twist_local_data(
    model: WeierstrassModel,
    p: int,
    d: TwistClass | int,
    path: TwistPath | None = None,
    cfg: StrongMinCfg | None = None,
) -> TwistLocalData:
    """Local data of a p-minimal model and of its twist by ``d``.

    Args:
        model: A p-integral, p-minimal model of E.
        p: The prime.
        d: The twist parameter; any non-zero integer, reduced to its square class.
        path: Route at p = 2, see :func:`twist_data_q2`. Ignored at odd p.
        cfg: Loop caps.
    """
    S, _ = to_strongly_minimal(model, p, cfg)
    d = as_twist_class(d, p)
    if p == 2:
        return twist_data_q2(S, d, path, cfg)
    return twist_data_odd(S, d, cfg)


__all__ = [
    "TABLE_NAMES",
    "TwistConditionPolynomial",
    "TwistIsomorphismEntry",
    "TwistLocalData",
    "TwistPath",
    "as_twist_class",
    "evaluate_prj",
    "polynomial_entry",
    "render_table",
    "select_model_row",
    "table_digest",
    "twist_data_odd",
    "twist_data_q2",
    "twist_local_data",
    "twist_strongly_minimal",
    "twist_strongly_minimal_odd",
    "twist_strongly_minimal_q2",
    "twist_tables",
]
