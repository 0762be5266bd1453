# Copyright (c) 2025 Twistforge Developers
# SPDX-License-Identifier: BSD 3-Clause

"""Loading, lookup and rendering of the embedded twist tables.

The tables ship as TOML documents in ``twist/data``:

* ``odd_twist``: types and Tamagawa numbers of twists at odd p,
* ``q2_unit_twist``: local data of twists over Q_2 for unit d,
* ``q2_model_ramified`` / ``q2_model_unit``: conditions selecting the isomorphism onto a strongly-minimal twist
  model over Q_2, with the expected valuation vector, for v(d) = 1 / v(d) = 0,
* ``q2_isomorphisms``: those isomorphisms,
* ``q2_polynomials``: the polynomials referenced as ``P1``, ``P2``, ... by the other tables.
"""

from __future__ import annotations

import hashlib
import os
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any

import toml

from ..conditions import (
    CompiledExpression,
    Condition,
    Context,
    Pattern,
    Value,
    compile_condition,
    compile_expression,
    compile_pattern,
    compile_value,
)
from ..errors import TableLoadError, TableMismatch, UnknownPolynomial
from ..kodaira import FAMILIES, KodairaType
from ..local_tables import Branch
from ..strongly_minimal import StronglyMinimalModel
from ..weierstrass import Isomorphism, TwistClass

DATA_DIR = os.path.join(os.path.dirname(os.path.realpath(__file__)), "data")
TABLE_NAMES = (
    "odd_twist",
    "q2_unit_twist",
    "q2_model_unit",
    "q2_model_ramified",
    "q2_isomorphisms",
    "q2_polynomials",
)

_TEMPLATE_RE = re.compile(r"^I\{(.+)\}(\*?)$")
_REFERENCE_RE = re.compile(r"\bP(\d+)\b")


@dataclass(frozen=True)
class TypeTemplate:
    """A Kodaira type that may depend on n, written ``I{n+4}*`` or literally as ``II*``."""

    text: str
    index: CompiledExpression | None = None
    star: bool = False

    @classmethod
    def parse(cls, text: str) -> TypeTemplate:
        match = _TEMPLATE_RE.match(text.strip())
        if match is None:
            try:
                KodairaType.parse(text)
            except ValueError as err:
                raise TableLoadError(f"Bad Kodaira type '{text}': {err}") from err
            return cls(text.strip())
        return cls(text.strip(), compile_expression(match.group(1)), bool(match.group(2)))

    def evaluate(self, ctx: Context) -> KodairaType:
        if self.index is None:
            return KodairaType.parse(self.text)
        n = self.index(ctx)
        if n.denominator != 1 or n < 0:
            raise TableMismatch(f"Type template '{self.text}' gives index {n}.")
        return KodairaType.Istar(int(n)) if self.star else KodairaType.I(int(n))

    def __str__(self) -> str:
        return self.text


@dataclass(frozen=True)
class TwistIsomorphismEntry:
    """One row of q2_isomorphisms."""

    v_d: int
    family: str
    j: int
    u: CompiledExpression
    r: CompiledExpression
    s: CompiledExpression
    w: CompiledExpression

    def evaluate(self, ctx: Context) -> Isomorphism:
        u = self.u(ctx)
        if u == 0:
            raise TableMismatch(f"Isomorphism ({self.v_d}, {self.family}, {self.j}) has u = 0 here.")
        return Isomorphism(u, self.r(ctx), self.s(ctx), self.w(ctx))

    @property
    def cells(self) -> tuple[str, str, str, str]:
        return (self.u.text, self.r.text, self.s.text, self.w.text)


@dataclass(frozen=True)
class TwistConditionPolynomial:
    """One row of q2_polynomials."""

    v_d: int
    family: str
    j: int
    text: str
    """The expression as stored, possibly referencing earlier polynomials."""
    expanded: str
    """The expression with references substituted."""

    @property
    def name(self) -> str:
        return f"P{self.j}"


@dataclass(frozen=True)
class ModelRow:
    """One row of q2_model_ramified or q2_model_unit."""

    family: str
    v_d: int
    condition: Condition
    j: int
    pattern: Pattern
    type: TypeTemplate

    @property
    def key(self) -> str:
        return f"{self.family}/{self.v_d}: {self.condition}"


@dataclass(frozen=True)
class FastRow:
    """One row of odd_twist or q2_unit_twist."""

    family: str
    v_d: int
    condition: Condition
    type: TypeTemplate
    c_d: tuple[Branch, ...]
    delta: Value | None = None
    f: Value | None = None
    delta_d: Value | None = None
    f_d: Value | None = None
    split: Condition | None = None

    @property
    def key(self) -> str:
        return f"{self.family}/{self.v_d}: {self.condition}"


@dataclass(frozen=True)
class TwistTables:
    fast: dict[str, tuple[FastRow, ...]]
    model: dict[str, tuple[ModelRow, ...]]
    isomorphisms: dict[tuple[int, str, int], TwistIsomorphismEntry]
    polynomials: dict[tuple[int, str, int], TwistConditionPolynomial]
    raw: dict[str, dict[str, Any]]


# ---------------------------------------------------------------------------
# Loading
# ---------------------------------------------------------------------------


def _read(name: str) -> dict[str, Any]:
    path = os.path.join(DATA_DIR, f"{name}.toml")
    try:
        data = toml.load(path)
    except (OSError, toml.TomlDecodeError) as err:
        raise TableLoadError(f"Cannot read table '{name}' from {path}: {err}") from err
    meta_name = data.get("meta", {}).get("name")
    if meta_name != name:
        raise TableLoadError(f"Table file {path} declares name '{meta_name}', expected '{name}'.")
    return data


def _require(record: dict[str, Any], key: str, where: str) -> Any:
    if key not in record:
        raise TableLoadError(f"{where}: missing field '{key}'.")
    return record[key]


def _check_key(record: dict[str, Any], where: str, allow_any: bool = False) -> tuple[int, str]:
    v_d = _require(record, "v_d", where)
    family = _require(record, "family", where)
    if v_d not in (0, 1):
        raise TableLoadError(f"{where}: v_d must be 0 or 1, got {v_d!r}.")
    if family not in FAMILIES and not (allow_any and family == "any"):
        raise TableLoadError(f"{where}: unknown family '{family}'.")
    return v_d, family


def _load_polynomials(data: dict[str, Any]) -> dict[tuple[int, str, int], TwistConditionPolynomial]:
    polynomials: dict[tuple[int, str, int], TwistConditionPolynomial] = {}
    for i, record in enumerate(data.get("polynomial", [])):
        where = f"q2_polynomials entry {i}"
        v_d, family = _check_key(record, where)
        j = int(_require(record, "j", where))
        text = str(_require(record, "expression", where))
        key = (v_d, family, j)
        if key in polynomials:
            raise TableLoadError(f"{where}: duplicate polynomial {key}.")

        def expand(match: re.Match) -> str:
            ref = (v_d, family, int(match.group(1)))
            if ref not in polynomials:
                raise TableLoadError(f"{where}: P{match.group(1)} is not defined before use.")
            return f"({polynomials[ref].expanded})"

        expanded = _REFERENCE_RE.sub(expand, text)
        compile_expression(expanded)
        polynomials[key] = TwistConditionPolynomial(v_d, family, j, text, expanded)
    return polynomials


def _load_isomorphisms(data: dict[str, Any]) -> dict[tuple[int, str, int], TwistIsomorphismEntry]:
    entries: dict[tuple[int, str, int], TwistIsomorphismEntry] = {}
    for i, record in enumerate(data.get("isomorphism", [])):
        where = f"q2_isomorphisms entry {i}"
        v_d, family = _check_key(record, where, allow_any=True)
        j = int(_require(record, "j", where))
        key = (v_d, family, j)
        if key in entries:
            raise TableLoadError(f"{where}: duplicate isomorphism {key}.")
        cells = [compile_expression(str(_require(record, name, where))) for name in ("u", "r", "s", "w")]
        entries[key] = TwistIsomorphismEntry(v_d, family, j, *cells)
    for v_d in (0, 1):
        if (v_d, "any", 0) not in entries:
            raise TableLoadError(f"q2_isomorphisms lacks the default isomorphism for v(d) = {v_d}.")
    return entries


def _polys_text(polynomials: dict, v_d: int, family: str) -> dict[str, str]:
    return {p.name: p.expanded for (pv, pf, _), p in polynomials.items() if pv == v_d and pf == family}


def _load_model_rows(name: str, data: dict[str, Any], polynomials, isomorphisms) -> tuple[ModelRow, ...]:
    rows = []
    for i, record in enumerate(data.get("row", [])):
        where = f"{name} row {i}"
        v_d, family = _check_key(record, where)
        j = int(_require(record, "j", where))
        if (v_d, family, j) not in isomorphisms and not (j == 0 and (v_d, "any", 0) in isomorphisms):
            raise TableLoadError(f"{where}: no isomorphism ({v_d}, {family}, {j}) in q2_isomorphisms.")
        polys = _polys_text(polynomials, v_d, family)
        rows.append(
            ModelRow(
                family=family,
                v_d=v_d,
                condition=compile_condition(str(_require(record, "condition", where)), polys),
                j=j,
                pattern=compile_pattern(str(_require(record, "pattern", where))),
                type=TypeTemplate.parse(str(_require(record, "type", where))),
            )
        )
    return tuple(rows)


def _load_fast_rows(name: str, data: dict[str, Any], polynomials) -> tuple[FastRow, ...]:
    rows = []
    for i, record in enumerate(data.get("row", [])):
        where = f"{name} row {i}"
        v_d, family = _check_key(record, where)
        polys = _polys_text(polynomials, v_d, family)
        branches = []
        for cell in _require(record, "c_d", where):
            if len(cell) != 2:
                raise TableLoadError(f"{where}: c_d cells are [condition, value] pairs, got {cell!r}.")
            branches.append(Branch(compile_condition(cell[0], polys), compile_value(cell[1], polys)))

        def optional_value(key: str) -> Value | None:
            return compile_value(str(record[key]), polys) if key in record else None

        rows.append(
            FastRow(
                family=family,
                v_d=v_d,
                condition=compile_condition(str(_require(record, "condition", where)), polys),
                type=TypeTemplate.parse(str(_require(record, "type", where))),
                c_d=tuple(branches),
                delta=optional_value("delta"),
                f=optional_value("f"),
                delta_d=optional_value("delta_d"),
                f_d=optional_value("f_d"),
                split=compile_condition(record["split"], polys) if "split" in record else None,
            )
        )
    return tuple(rows)


@lru_cache(maxsize=1)
def twist_tables() -> TwistTables:
    """Load and validate every embedded table; cached for the process."""
    raw = {name: _read(name) for name in TABLE_NAMES}
    polynomials = _load_polynomials(raw["q2_polynomials"])
    isomorphisms = _load_isomorphisms(raw["q2_isomorphisms"])
    return TwistTables(
        fast={name: _load_fast_rows(name, raw[name], polynomials) for name in ("odd_twist", "q2_unit_twist")},
        model={
            name: _load_model_rows(name, raw[name], polynomials, isomorphisms)
            for name in ("q2_model_unit", "q2_model_ramified")
        },
        isomorphisms=isomorphisms,
        polynomials=polynomials,
        raw=raw,
    )


# ---------------------------------------------------------------------------
# Lookup
# ---------------------------------------------------------------------------


def fast_rows(name: str, family: str, v_d: int) -> tuple[FastRow, ...]:
    return tuple(row for row in twist_tables().fast[name] if row.family == family and row.v_d == v_d)


def model_rows(family: str, v_d: int) -> tuple[ModelRow, ...]:
    name = "q2_model_unit" if v_d == 0 else "q2_model_ramified"
    return tuple(row for row in twist_tables().model[name] if row.family == family)


def isomorphism_entry(v_d: int, family: str, j: int) -> TwistIsomorphismEntry:
    entries = twist_tables().isomorphisms
    if (v_d, family, j) in entries:
        return entries[(v_d, family, j)]
    if j == 0:
        return entries[(v_d, "any", 0)]
    raise TableMismatch(f"No isomorphism ({v_d}, {family}, {j}).")


def polynomial_entry(family: str, v_d: int, j: int) -> TwistConditionPolynomial:
    try:
        return twist_tables().polynomials[(v_d, family, j)]
    except KeyError:
        raise UnknownPolynomial(f"No polynomial P{j} for family {family} with v(d) = {v_d}.") from None


def evaluate_prj(R: KodairaType, v_d: int, j: int, S: StronglyMinimalModel, d: TwistClass | int) -> Fraction:
    """Evaluate the table polynomial P_j for (R, v(d)) at the coefficients of ``S`` and ``d``.

    Raises:
        UnknownPolynomial: If the tables define no such polynomial.
    """
    entry = polynomial_entry(R.family, v_d, j)
    dd = d.d if isinstance(d, TwistClass) else d
    ctx = S.context(d=dd)
    if R.n is not None:
        ctx["n"] = Fraction(R.n)
    return compile_expression(entry.expanded)(ctx)


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------


def table_columns(name: str) -> tuple[tuple[str, ...], list[tuple[str, ...]]]:
    """Header and rows of a table as strings, in file order."""
    tables = twist_tables()
    if name not in TABLE_NAMES:
        raise KeyError(f"Unknown table '{name}'. Known tables: {', '.join(TABLE_NAMES)}.")
    if name == "q2_isomorphisms":
        header = ("v(d)", "R", "j", "u", "r", "s", "w")
        rows = [(str(e.v_d), e.family, str(e.j), *e.cells) for e in tables.isomorphisms.values()]
    elif name == "q2_polynomials":
        header = ("v(d)", "R", "j", "P")
        rows = [(str(p.v_d), p.family, str(p.j), p.text) for p in tables.polynomials.values()]
    elif name in tables.model:
        header = ("R", "v(d)", "conditions", "j", "V(F)", "typ(F)")
        rows = [
            (row.family, str(row.v_d), str(row.condition), str(row.j), str(row.pattern), str(row.type))
            for row in tables.model[name]
        ]
    else:
        header = ("R", "v(d)", "conditions", "R^d", "(δ, δ^d)", "(f, f^d)", "c^d")
        rows = []
        for row in tables.fast[name]:
            deltas = f"({row.delta or '-'}, {row.delta_d or '-'})"
            fs = f"({row.f or '-'}, {row.f_d or '-'})"
            c_d = "; ".join(f"{b.condition} -> {b.value}" for b in row.c_d)
            rows.append((row.family, str(row.v_d), str(row.condition), str(row.type), deltas, fs, c_d))
    return header, rows


def render_table(name: str) -> str:
    """Canonical text form of a table: a title line, a header line, then one line per row."""
    header, rows = table_columns(name)
    title = twist_tables().raw[name]["meta"].get("title", name)
    lines = [f"# {name}: {title}", " | ".join(header)]
    lines.extend(" | ".join(row) for row in rows)
    return "\n".join(lines) + "\n"


def table_digest(name: str) -> str:
    """sha256 of :func:`render_table`, for spotting unreviewed edits to the data files."""
    return hashlib.sha256(render_table(name).encode("utf-8")).hexdigest()
