# Copyright (c) 2025 Twistforge Developers
# SPDX-License-Identifier: BSD 3-Clause

"""Curve corpora for differential runs.

A corpus is described by a JSON document::

    {
        "p": 2,
        "box": {"a1": [-4, 4], "a2": [-4, 4], "a3": [-4, 4], "a4": [-4, 4], "a6": [-4, 4]},
        "dset": [-1, 3, 2],
        "filters": {"max_disc_valuation": 12, "types": ["III*", "I2*"]}
    }

``box`` may also be a list of five ``[lo, hi]`` pairs. Curves are enumerated lexicographically
over (a1, a2, a3, a4, a6).
"""

from __future__ import annotations

import itertools
import json
import os
from collections.abc import Iterator
from dataclasses import dataclass, field
from typing import Any

from ..errors import CorpusSpecError, NotAPrime, ZeroTwist
from ..kodaira import KodairaType
from ..padic_core import check_prime, valuation
from ..weierstrass import COEFFICIENT_NAMES, TwistClass, WeierstrassModel, canonicalize_twist


@dataclass(frozen=True)
class CorpusFilters:
    """Optional restrictions on the curves of a corpus."""

    max_disc_valuation: int | None = None
    """Skip models with v(Δ) above this bound."""

    types: tuple[KodairaType, ...] = ()
    """Keep only curves whose base Kodaira type is listed (checked after the oracle runs)."""

    def admits_model(self, model: WeierstrassModel, p: int) -> bool:
        if self.max_disc_valuation is None:
            return True
        return valuation(model.discriminant, p) <= self.max_disc_valuation

    def admits_type(self, kodaira: KodairaType) -> bool:
        return not self.types or kodaira in self.types


@dataclass(frozen=True)
class CorpusSpec:
    """A coefficient box, a prime and a set of twist classes."""

    p: int
    box: tuple[tuple[int, int], ...]
    dset: tuple[TwistClass, ...]
    filters: CorpusFilters = field(default_factory=CorpusFilters)

    def __post_init__(self):
        if len(self.box) != 5:
            raise CorpusSpecError(f"A coefficient box needs five ranges, got {len(self.box)}.")

    @property
    def size(self) -> int:
        """Number of coefficient tuples in the box."""
        total = 1
        for lo, hi in self.box:
            total *= max(hi - lo + 1, 0)
        return total

    def models(self) -> Iterator[WeierstrassModel | None]:
        """Every model in the box in lexicographic order; singular tuples yield None."""
        ranges = [range(lo, hi + 1) for lo, hi in self.box]
        for ainvs in itertools.product(*ranges):
            model = WeierstrassModel.from_ainvs(ainvs)
            yield None if model.is_singular else model

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> CorpusSpec:
        try:
            p = check_prime(int(data["p"]))
        except KeyError:
            raise CorpusSpecError("Corpus spec is missing 'p'.") from None
        except (TypeError, ValueError, NotAPrime) as err:
            raise CorpusSpecError(f"Corpus spec has a bad prime: {err}") from err
        box = _parse_box(data.get("box"))
        dset = _parse_dset(data.get("dset", [1]), p)
        filters = _parse_filters(data.get("filters") or {})
        return cls(p, box, dset, filters)

    @classmethod
    def from_json(cls, path: str) -> CorpusSpec:
        """Load a spec file.

        Raises:
            CorpusSpecError: If the file is missing or malformed.
        """
        if not os.path.isfile(path):
            raise CorpusSpecError(f"Corpus spec file '{path}' does not exist.")
        with open(path, encoding="utf-8") as f:
            try:
                data = json.load(f)
            except json.JSONDecodeError as err:
                raise CorpusSpecError(f"Corpus spec file '{path}' is not valid JSON: {err}") from err
        if not isinstance(data, dict):
            raise CorpusSpecError(f"Corpus spec file '{path}' must hold a JSON object.")
        return cls.from_dict(data)

    def to_dict(self) -> dict[str, Any]:
        return {
            "p": self.p,
            "box": {name: list(bounds) for name, bounds in zip(COEFFICIENT_NAMES, self.box)},
            "dset": [d.d for d in self.dset],
            "filters": {
                "max_disc_valuation": self.filters.max_disc_valuation,
                "types": [str(t) for t in self.filters.types],
            },
        }


def _parse_range(value: Any, name: str) -> tuple[int, int]:
    if not isinstance(value, (list, tuple)) or len(value) != 2:
        raise CorpusSpecError(f"Range for {name} must be [lo, hi], got {value!r}.")
    try:
        lo, hi = int(value[0]), int(value[1])
    except (TypeError, ValueError):
        raise CorpusSpecError(f"Range for {name} must hold integers, got {value!r}.") from None
    return lo, hi


def _parse_box(box: Any) -> tuple[tuple[int, int], ...]:
    if isinstance(box, dict):
        unknown = set(box) - set(COEFFICIENT_NAMES)
        if unknown:
            raise CorpusSpecError(f"Unknown coefficients in box: {', '.join(sorted(unknown))}.")
        missing = [name for name in COEFFICIENT_NAMES if name not in box]
        if missing:
            raise CorpusSpecError(f"Box is missing ranges for {', '.join(missing)}.")
        return tuple(_parse_range(box[name], name) for name in COEFFICIENT_NAMES)
    if isinstance(box, list) and len(box) == 5:
        return tuple(_parse_range(value, name) for name, value in zip(COEFFICIENT_NAMES, box))
    raise CorpusSpecError(f"Box must map a1 ... a6 to [lo, hi] or list five ranges, got {box!r}.")


def _parse_dset(dset: Any, p: int) -> tuple[TwistClass, ...]:
    if not isinstance(dset, list) or not dset:
        raise CorpusSpecError(f"dset must be a non-empty list of integers, got {dset!r}.")
    classes: list[TwistClass] = []
    for value in dset:
        if not isinstance(value, int) or isinstance(value, bool):
            raise CorpusSpecError(f"dset entries must be integers, got {value!r}.")
        try:
            d = canonicalize_twist(value, p)
        except ZeroTwist as err:
            raise CorpusSpecError(str(err)) from err
        if d not in classes:
            classes.append(d)
    return tuple(classes)


def _parse_filters(filters: Any) -> CorpusFilters:
    if not isinstance(filters, dict):
        raise CorpusSpecError(f"filters must be a JSON object, got {filters!r}.")
    unknown = set(filters) - {"max_disc_valuation", "types"}
    if unknown:
        raise CorpusSpecError(f"Unknown filters: {', '.join(sorted(unknown))}.")
    bound = filters.get("max_disc_valuation")
    try:
        types = tuple(KodairaType.parse(str(t)) for t in filters.get("types", []))
    except ValueError as err:
        raise CorpusSpecError(f"Bad Kodaira type in filters: {err}") from err
    return CorpusFilters(int(bound) if bound is not None else None, types)
