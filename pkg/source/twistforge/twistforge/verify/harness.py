# Copyright (c) 2025 Twistforge Developers
# SPDX-License-Identifier: BSD 3-Clause

"""Differential runs: table-driven local data against Tate's algorithm."""

from __future__ import annotations

import itertools
import time
from collections.abc import Iterable, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Any

from ..config import HarnessCfg, resolve_jobs
from ..errors import TwistforgeError
from ..kodaira import LocalData
from ..strongly_minimal import base_local_data, to_strongly_minimal
from ..tate import tate_local_data
from ..twist import TwistPath, twist_data_odd, twist_data_q2
from ..utils.logging import get_logger
from ..weierstrass import TwistClass, WeierstrassModel, canonicalize_twist, twist_model
from .corpus import CorpusFilters, CorpusSpec

logger = get_logger(__name__)

Ainvs = tuple[int, int, int, int, int]


@dataclass(frozen=True)
class Outcome:
    """One comparison of a fast path with the oracle for a (curve, d, path) triple."""

    ainvs: Ainvs
    p: int
    d: int
    path: str
    base_fast: LocalData | None
    base_oracle: LocalData | None
    twisted_fast: LocalData | None
    twisted_oracle: LocalData | None
    error: str | None = None
    minimized: Ainvs | None = None
    oracle_normalized: bool = False
    """The fast path borrowed a normalization step from the oracle for E^d."""

    @property
    def agrees(self) -> bool:
        return self.error is None and self.base_fast == self.base_oracle and self.twisted_fast == self.twisted_oracle

    @property
    def sort_key(self) -> tuple:
        return (self.ainvs, self.d, self.path)

    def to_json(self) -> dict[str, Any]:
        def dump(data: LocalData | None) -> dict[str, Any] | None:
            return data.to_json() if data is not None else None

        record: dict[str, Any] = {
            "kind": "result",
            "ainvs": list(self.ainvs),
            "p": self.p,
            "d": self.d,
            "path": self.path,
            "agree": self.agrees,
            "base_fast": dump(self.base_fast),
            "base_oracle": dump(self.base_oracle),
            "twisted_fast": dump(self.twisted_fast),
            "twisted_oracle": dump(self.twisted_oracle),
        }
        if self.error is not None:
            record["error"] = self.error
        if self.minimized is not None:
            record["minimized"] = list(self.minimized)
        if self.oracle_normalized:
            record["oracle_normalized"] = True
        return record

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> Outcome:
        def load(value: dict[str, Any] | None) -> LocalData | None:
            return LocalData.from_json(value) if value is not None else None

        minimized = data.get("minimized")
        return cls(
            ainvs=tuple(int(a) for a in data["ainvs"]),  # type: ignore[arg-type]
            p=int(data["p"]),
            d=int(data["d"]),
            path=str(data["path"]),
            base_fast=load(data.get("base_fast")),
            base_oracle=load(data.get("base_oracle")),
            twisted_fast=load(data.get("twisted_fast")),
            twisted_oracle=load(data.get("twisted_oracle")),
            error=data.get("error"),
            minimized=tuple(int(a) for a in minimized) if minimized is not None else None,  # type: ignore[arg-type]
            oracle_normalized=bool(data.get("oracle_normalized", False)),
        )


@dataclass
class DiffReport:
    """Outcome of a differential run."""

    spec: CorpusSpec
    outcomes: list[Outcome] = field(default_factory=list)
    skipped_singular: int = 0
    filtered: int = 0
    """Nonsingular curves excluded by the corpus filters; not part of ``total``."""
    elapsed: float = 0.0

    @property
    def disagreements(self) -> list[Outcome]:
        return [o for o in self.outcomes if not o.agrees]

    @property
    def agreements(self) -> int:
        return sum(1 for o in self.outcomes if o.agrees)

    @property
    def oracle_normalized(self) -> int:
        """Outcomes whose fast path leaned on the oracle to normalize E^d."""
        return sum(1 for o in self.outcomes if o.oracle_normalized)

    @property
    def total(self) -> int:
        return len(self.outcomes) + self.skipped_singular

    @property
    def ok(self) -> bool:
        return not self.disagreements


def _paths_for(p: int, d: TwistClass, paths: Sequence[str]) -> list[TwistPath]:
    if p != 2:
        return [TwistPath.TABLE_FAST]
    if d.v_d == 1:
        return [TwistPath.MODEL_DERIVED]
    return [TwistPath(name) for name in paths]


def evaluate_curve(
    ainvs: Sequence[int],
    p: int,
    dset: Iterable[TwistClass | int],
    paths: Sequence[str] = ("fast", "model"),
    filters: CorpusFilters | None = None,
) -> list[Outcome] | None:
    """Compare every fast path with the oracle for one nonsingular curve and each d.

    The oracle runs on the curve itself and on ``twist_model(E, d)``; the fast paths start from
    the strongly-minimal model of the oracle's minimal model. An oracle failure is recorded in
    ``Outcome.error`` like any other and never aborts the run.

    Returns:
        One outcome per (d, path), or None when ``filters`` reject the curve's type.
    """
    model = WeierstrassModel.from_ainvs(ainvs)
    key: Ainvs = tuple(int(a) for a in ainvs)  # type: ignore[assignment]
    error: str | None = None
    base_oracle = base_fast = None
    try:
        oracle = tate_local_data(model, p)
    except TwistforgeError as err:
        error = f"{type(err).__name__}: oracle on E: {err}"
    else:
        base_oracle = oracle.local_data
        if filters is not None and not filters.admits_type(base_oracle.type):
            return None
        try:
            S, _ = to_strongly_minimal(oracle.minimal_model, p)
            base_fast = base_local_data(S)
        except TwistforgeError as err:
            error = f"{type(err).__name__}: {err}"

    outcomes = []
    for d in dset:
        d = d if isinstance(d, TwistClass) else canonicalize_twist(d, p)
        twisted_oracle = None
        oracle_error = None
        try:
            twisted_oracle = tate_local_data(twist_model(model, d), p).local_data
        except TwistforgeError as err:
            oracle_error = f"{type(err).__name__}: oracle on E^d: {err}"
        for path in _paths_for(p, d, paths):
            fast = None
            item_error = error or oracle_error
            if error is None:
                try:
                    fast = twist_data_q2(S, d, path) if p == 2 else twist_data_odd(S, d)
                except TwistforgeError as err:
                    item_error = item_error or f"{type(err).__name__}: {err}"
            outcomes.append(
                Outcome(
                    key,
                    p,
                    d.d,
                    path.value,
                    base_fast,
                    base_oracle,
                    fast.twisted if fast is not None else None,
                    twisted_oracle,
                    item_error,
                    oracle_normalized=fast is not None and fast.oracle_normalized,
                )
            )
    return outcomes


def _evaluate_chunk(
    chunk: list[Ainvs], p: int, dset: tuple[TwistClass, ...], paths: tuple[str, ...], filters: CorpusFilters
) -> tuple[list[Outcome], int]:
    outcomes: list[Outcome] = []
    filtered = 0
    for ainvs in chunk:
        result = evaluate_curve(ainvs, p, dset, paths, filters)
        if result is None:
            filtered += 1
        else:
            outcomes.extend(result)
    return outcomes, filtered


def _chunks(items: list[Ainvs], size: int) -> list[list[Ainvs]]:
    return [items[i : i + size] for i in range(0, len(items), size)]


def run_differential(spec: CorpusSpec, cfg: HarnessCfg | None = None) -> DiffReport:
    """Run every curve of the corpus through the fast paths and the oracle.

    Disagreements are data: they land in the report, optionally shrunk by
    :func:`~twistforge.verify.minimize.minimize_witness`. Results are sorted by
    (ainvs, d, path), so serial and parallel runs produce the same report.
    """
    from .minimize import minimize_witness

    cfg = cfg or HarnessCfg()
    start = time.perf_counter()
    report = DiffReport(spec)

    work: list[Ainvs] = []
    for ainvs, model in zip(_box_tuples(spec), spec.models()):
        if model is None:
            report.skipped_singular += 1
        elif not spec.filters.admits_model(model, spec.p):
            report.filtered += 1
        else:
            work.append(ainvs)

    jobs = resolve_jobs(cfg.jobs)
    chunks = _chunks(work, cfg.chunk_size)
    logger.info(f"corpus: {len(work)} curves x {len(spec.dset)} twists at p = {spec.p}, {jobs} job(s)")
    args = (spec.p, spec.dset, tuple(cfg.paths), spec.filters)
    if jobs > 1 and len(chunks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_evaluate_chunk, chunks, *([arg] * len(chunks) for arg in args)))
    else:
        results = [_evaluate_chunk(chunk, *args) for chunk in chunks]

    outcomes: list[Outcome] = []
    for chunk_outcomes, filtered in results:
        outcomes.extend(chunk_outcomes)
        report.filtered += filtered
    outcomes.sort(key=lambda o: o.sort_key)

    if cfg.minimize:
        for i, outcome in enumerate(outcomes):
            if outcome.agrees:
                continue
            path = TwistPath(outcome.path)
            smaller = minimize_witness(WeierstrassModel.from_ainvs(outcome.ainvs), outcome.d, spec.p, path)
            minimized = tuple(int(a) for a in smaller.ainvs)
            if minimized != outcome.ainvs:
                outcomes[i] = replace(outcome, minimized=minimized)

    report.outcomes = outcomes
    report.elapsed = time.perf_counter() - start
    logger.info(
        f"done in {report.elapsed:.1f}s: {report.agreements} agreements, {len(report.disagreements)} disagreements, "
        f"{report.oracle_normalized} oracle-normalized, {report.skipped_singular} singular"
    )
    return report


def _box_tuples(spec: CorpusSpec) -> Iterable[Ainvs]:
    return itertools.product(*(range(lo, hi + 1) for lo, hi in spec.box))  # type: ignore[return-value]


# ---------------------------------------------------------------------------
# Transition witnesses
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TransitionWitness:
    """A curve whose twist realizes a requested change of Kodaira family."""

    ainvs: Ainvs
    d: int
    base: LocalData
    twisted: LocalData


def find_transition_witnesses(
    spec: CorpusSpec, transitions: Iterable[tuple[str, str, int]]
) -> dict[tuple[str, str, int], TransitionWitness | None]:
    """First curve of the corpus, per requested (family, twisted family, v(d)), realizing that transition.

    Families are table keys such as ``"In"`` or ``"IV*"``. Types come from the oracle only.
    """
    wanted = {tuple(t): None for t in transitions}
    found: dict[tuple[str, str, int], TransitionWitness | None] = dict(wanted)  # type: ignore[arg-type]
    for ainvs, model in zip(_box_tuples(spec), spec.models()):
        if model is None or not spec.filters.admits_model(model, spec.p):
            continue
        try:
            base = tate_local_data(model, spec.p).local_data
            twists = [(d, tate_local_data(twist_model(model, d), spec.p).local_data) for d in spec.dset]
        except TwistforgeError as err:
            logger.warning(f"skipping {list(ainvs)}: {type(err).__name__}: {err}")
            continue
        for d, twisted in twists:
            key = (base.type.family, twisted.type.family, d.v_d)
            if key in found and found[key] is None:
                found[key] = TransitionWitness(ainvs, d.d, base, twisted)
                logger.debug(f"witness {key}: {list(ainvs)} with d = {d}")
        if all(w is not None for w in found.values()):
            break
    return found
