# Copyright (c) 2025 Twistforge Developers
# SPDX-License-Identifier: BSD 3-Clause

"""The text language used by the embedded local-data tables.

Conditions are atoms joined by ``and`` with an optional top-level ``or``. Atoms:

* ``v(EXPR) = K``, ``v(EXPR) >= K`` (also ``>``, ``<=``, ``<``): p-adic valuation comparisons,
* ``EXPR = k mod m`` and ``EXPR in {k1, k2} mod m``: residues of p-integral values,
* ``legendre(EXPR) = 1`` or ``= -1``: quadratic character at an odd prime,
* ``imT(EXPR)`` and ``not imT(EXPR)``: Artin-Schreier image test over F_2,
* ``n odd``, ``n even`` and plain comparisons such as ``n >= 5``,
* ``always``.

``EXPR`` is a rational expression (``^`` for powers) in the coefficient symbols ``a1 a2 a3 a4 a6``,
the twist parameter ``d``, the index ``n``, the prime ``p``, the base discriminant valuation ``k``,
``disc`` (the discriminant) and ``nprime`` (``2 - n mod 2``). Table polynomials ``P1 ... P10`` are
substituted before compilation.

Valuation patterns look like ``(=0, 0, =(n+1)/2, (n+1)/2, =n)`` with an optional ``| CONDITION``.
Values are expressions or ``1 + roots(E2, E1, E0)`` (one plus the number of roots in F_p of the
monic cubic with those coefficients).
"""

from __future__ import annotations

import math
import operator
import re
from collections.abc import Callable, Mapping
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from sympy import Expr, Symbol, lambdify, mod_inverse
from sympy.parsing.sympy_parser import convert_xor, parse_expr, standard_transformations
from sympy.printing.pycode import PythonCodePrinter

from .errors import NotIntegral, TableLoadError
from .padic_core import INFINITY, artin_schreier_in_image, count_cubic_roots_mod_p, legendre, valuation
from .weierstrass import ValuationSlot, ValuationVector, WeierstrassModel

SYMBOL_NAMES = ("a1", "a2", "a3", "a4", "a6", "d", "n", "p", "k", "c", "disc", "nprime")
_SYMBOLS = {name: Symbol(name) for name in SYMBOL_NAMES}
_TRANSFORMATIONS = standard_transformations + (convert_xor,)

Context = Mapping[str, Fraction]
Predicate = Callable[[Context], bool]

_COMPARISONS: dict[str, Callable[[object, object], bool]] = {
    ">=": operator.ge,
    "<=": operator.le,
    "=": operator.eq,
    ">": operator.gt,
    "<": operator.lt,
}
_COMPARISON_RE = re.compile(r"^(.*?)\s*(>=|<=|=|>|<)\s*(.+)$")


class _FractionPrinter(PythonCodePrinter):
    """Prints rational constants as ``Fraction(p, q)`` so compiled expressions stay exact."""

    def _print_Rational(self, expr):
        return f"Fraction({expr.p}, {expr.q})"

    def _print_Half(self, expr):
        return "Fraction(1, 2)"


# ---------------------------------------------------------------------------
# Expressions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CompiledExpression:
    """An exact rational expression compiled to a Python callable."""

    text: str
    expr: Expr
    args: tuple[str, ...]
    fn: Callable[..., Fraction]

    def __call__(self, ctx: Context) -> Fraction:
        try:
            values = [ctx[name] for name in self.args]
        except KeyError as err:
            raise KeyError(f"Expression '{self.text}' needs '{err.args[0]}', which is not bound.") from None
        return Fraction(self.fn(*values))


def parse_expression(text: str, polynomials: Mapping[str, str] | None = None) -> Expr:
    """Parse ``text`` into a sympy expression, substituting named table polynomials."""
    local_dict: dict[str, object] = dict(_SYMBOLS)
    for name, body in (polynomials or {}).items():
        local_dict[name] = parse_expr(body, local_dict=dict(_SYMBOLS), transformations=_TRANSFORMATIONS)
    try:
        expr = parse_expr(text, local_dict=local_dict, transformations=_TRANSFORMATIONS)
    except Exception as err:  # sympy raises a variety of parse errors
        raise TableLoadError(f"Cannot parse expression '{text}': {err}") from err
    unknown = {str(s) for s in expr.free_symbols} - set(SYMBOL_NAMES)
    if unknown:
        raise TableLoadError(f"Expression '{text}' uses unknown symbols {sorted(unknown)}.")
    return expr


@lru_cache(maxsize=4096)
def _compile_expression(text: str, polynomials: tuple[tuple[str, str], ...]) -> CompiledExpression:
    expr = parse_expression(text, dict(polynomials))
    args = tuple(sorted(str(s) for s in expr.free_symbols))
    fn = lambdify(
        [_SYMBOLS[name] for name in args], expr, modules=[{"Fraction": Fraction}], printer=_FractionPrinter
    )
    return CompiledExpression(text, expr, args, fn)


def compile_expression(text: str, polynomials: Mapping[str, str] | None = None) -> CompiledExpression:
    """Compile an expression; results are cached per (text, polynomials)."""
    return _compile_expression(text.strip(), tuple(sorted((polynomials or {}).items())))


def split_top_level(text: str, separator: str = ",") -> list[str]:
    """Split ``text`` on ``separator`` outside of parentheses and braces."""
    parts, depth, current = [], 0, []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch in "({[":
            depth += 1
        elif ch in ")}]":
            depth -= 1
        if depth == 0 and text.startswith(separator, i):
            parts.append("".join(current).strip())
            current = []
            i += len(separator)
            continue
        current.append(ch)
        i += 1
    parts.append("".join(current).strip())
    return parts


def _take_call(text: str, name: str) -> tuple[str, str] | None:
    """If ``text`` starts with ``name(``, return the argument text and the remainder."""
    prefix = name + "("
    if not text.startswith(prefix):
        return None
    depth = 0
    for i in range(len(name), len(text)):
        if text[i] == "(":
            depth += 1
        elif text[i] == ")":
            depth -= 1
            if depth == 0:
                return text[len(prefix) : i], text[i + 1 :].strip()
    raise TableLoadError(f"Unbalanced parentheses in '{text}'.")


# ---------------------------------------------------------------------------
# Conditions
# ---------------------------------------------------------------------------


def _residue(x: Fraction, modulus: int) -> int:
    if math.gcd(x.denominator, modulus) != 1:
        raise NotIntegral(f"{x} has no residue modulo {modulus}.")
    return int(x.numerator * mod_inverse(x.denominator, modulus)) % modulus


def _compile_atom(atom: str, polys: Mapping[str, str]) -> Predicate:
    atom = atom.strip()
    if atom == "always":
        return lambda ctx: True

    if atom in ("n odd", "n even"):
        parity = 1 if atom.endswith("odd") else 0
        return lambda ctx: ctx["n"] % 2 == parity

    negated = atom.startswith("not ")
    body = atom[4:].strip() if negated else atom
    call = _take_call(body, "imT")
    if call is not None:
        inner, rest = call
        if rest:
            raise TableLoadError(f"Unexpected text after imT(...) in '{atom}'.")
        expr = compile_expression(inner, polys)
        if negated:
            return lambda ctx: not artin_schreier_in_image(expr(ctx), int(ctx["p"]))
        return lambda ctx: artin_schreier_in_image(expr(ctx), int(ctx["p"]))
    if negated:
        raise TableLoadError(f"'not' is only supported before imT(...): '{atom}'.")

    for name in ("v", "legendre"):
        call = _take_call(body, name)
        if call is None:
            continue
        inner, rest = call
        match = _COMPARISON_RE.match(rest)
        if match is None or match.group(1):
            raise TableLoadError(f"Expected a comparison after {name}(...) in '{atom}'.")
        compare = _COMPARISONS[match.group(2)]
        expr = compile_expression(inner, polys)
        bound = compile_expression(match.group(3), polys)
        if name == "v":
            return lambda ctx: compare(valuation(expr(ctx), int(ctx["p"])), bound(ctx))
        return lambda ctx: compare(legendre(expr(ctx), int(ctx["p"])), bound(ctx))

    mod_match = re.match(r"^(.*?)\s+in\s+\{([^}]*)\}\s+mod\s+(\d+)$", body)
    if mod_match is not None:
        expr = compile_expression(mod_match.group(1), polys)
        residues = frozenset(int(r) for r in mod_match.group(2).split(","))
        modulus = int(mod_match.group(3))
        return lambda ctx: _residue(expr(ctx), modulus) in residues
    mod_match = re.match(r"^(.*?)\s*=\s*(-?\d+)\s+mod\s+(\d+)$", body)
    if mod_match is not None:
        expr = compile_expression(mod_match.group(1), polys)
        modulus = int(mod_match.group(3))
        wanted = int(mod_match.group(2)) % modulus
        return lambda ctx: _residue(expr(ctx), modulus) == wanted

    match = _COMPARISON_RE.match(body)
    if match is None:
        raise TableLoadError(f"Cannot parse condition atom '{atom}'.")
    lhs = compile_expression(match.group(1), polys)
    rhs = compile_expression(match.group(3), polys)
    compare = _COMPARISONS[match.group(2)]
    return lambda ctx: compare(lhs(ctx), rhs(ctx))


@dataclass(frozen=True)
class Condition:
    """A compiled condition; call it with an evaluation context."""

    text: str
    clauses: tuple[tuple[Predicate, ...], ...]

    def __call__(self, ctx: Context) -> bool:
        return any(all(atom(ctx) for atom in clause) for clause in self.clauses)

    def __str__(self) -> str:
        return self.text


@lru_cache(maxsize=4096)
def _compile_condition(text: str, polynomials: tuple[tuple[str, str], ...]) -> Condition:
    polys = dict(polynomials)
    clauses = []
    for disjunct in split_top_level(text, " or "):
        atoms = split_top_level(disjunct, " and ")
        clauses.append(tuple(_compile_atom(atom, polys) for atom in atoms))
    return Condition(text, tuple(clauses))


def compile_condition(text: str, polynomials: Mapping[str, str] | None = None) -> Condition:
    """Compile a condition string; results are cached per (text, polynomials)."""
    return _compile_condition(" ".join(text.split()), tuple(sorted((polynomials or {}).items())))


# ---------------------------------------------------------------------------
# Values
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Value:
    """A compiled integer-valued table cell."""

    text: str
    expr: CompiledExpression | None = None
    cubic: tuple[CompiledExpression, CompiledExpression, CompiledExpression] | None = None

    def __call__(self, ctx: Context) -> int:
        if self.cubic is not None:
            c2, c1, c0 = (e(ctx) for e in self.cubic)
            return 1 + count_cubic_roots_mod_p(c2, c1, c0, int(ctx["p"]))
        assert self.expr is not None
        result = self.expr(ctx)
        if result.denominator != 1:
            raise ValueError(f"Value '{self.text}' is not an integer in this context: {result}.")
        return int(result)

    def __str__(self) -> str:
        return self.text


@lru_cache(maxsize=1024)
def _compile_value(text: str, polynomials: tuple[tuple[str, str], ...]) -> Value:
    polys = dict(polynomials)
    match = re.match(r"^1\s*\+\s*roots\((.*)\)$", text)
    if match is not None:
        parts = split_top_level(match.group(1))
        if len(parts) != 3:
            raise TableLoadError(f"roots(...) takes three coefficients: '{text}'.")
        cubic = tuple(compile_expression(part, polys) for part in parts)
        return Value(text, cubic=cubic)  # type: ignore[arg-type]
    return Value(text, expr=compile_expression(text, polys))


def compile_value(text: str, polynomials: Mapping[str, str] | None = None) -> Value:
    return _compile_value(text.strip(), tuple(sorted((polynomials or {}).items())))


# ---------------------------------------------------------------------------
# Valuation patterns
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Pattern:
    """A compiled valuation pattern, possibly depending on ``n``, with an optional side condition."""

    text: str
    slots: tuple[tuple[bool, CompiledExpression | None], ...]
    side: Condition | None = None

    def vector(self, ctx: Context) -> ValuationVector:
        """Instantiate the pattern for the context's ``n``."""
        slots = []
        for exact, expr in self.slots:
            if expr is None:
                slots.append(ValuationSlot(INFINITY))
                continue
            value = expr(ctx)
            if value.denominator != 1:
                raise ValueError(f"Pattern '{self.text}' has a non-integral slot {value} for this context.")
            slots.append(ValuationSlot(int(value), exact))
        return ValuationVector(tuple(slots))  # type: ignore[arg-type]

    def __str__(self) -> str:
        return self.text


def _matching_paren(text: str) -> int:
    depth = 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth == 0:
                return i
    raise TableLoadError(f"Unbalanced parentheses in '{text}'.")


@lru_cache(maxsize=512)
def compile_pattern(text: str) -> Pattern:
    """Compile ``"(=0, 0, inf, (n+1)/2, =n) | v(disc) = 0"``.

    The side condition may also sit inside the parentheses: ``"(inf, 0, inf, 0, 0 | v(disc) = 0)"``.
    """
    stripped = text.strip()
    if not stripped.startswith("("):
        raise TableLoadError(f"Valuation pattern must be parenthesized: '{text}'.")
    close = _matching_paren(stripped)
    if close == len(stripped) - 1 and "|" in stripped:
        inner, _, side_text = stripped[1:-1].partition("|")
    else:
        inner = stripped[1:close]
        rest = stripped[close + 1 :].strip()
        if rest and not rest.startswith("|"):
            raise TableLoadError(f"Unexpected text after valuation pattern: '{text}'.")
        side_text = rest[1:]
    entries = split_top_level(inner)
    if len(entries) != 5:
        raise TableLoadError(f"Valuation pattern needs five slots: '{text}'.")
    slots = []
    for entry in entries:
        exact = entry.startswith("=")
        raw = entry[1:].strip() if exact else entry
        if raw in ("inf", "∞"):
            if exact:
                raise TableLoadError(f"Exact infinite slot in pattern '{text}'.")
            slots.append((False, None))
        else:
            slots.append((exact, compile_expression(raw)))
    side = compile_condition(side_text.strip()) if side_text.strip() else None
    return Pattern(text, tuple(slots), side)


def model_context(model: WeierstrassModel, p: int, **extra: int | Fraction | None) -> dict[str, Fraction]:
    """Evaluation context for ``model`` at ``p``: a1 ... a6, p, disc, plus any extra bindings.

    Binding ``n`` also binds ``nprime = 2 - n mod 2``. ``None`` values are left unbound.
    """
    ctx: dict[str, Fraction] = dict(model.as_dict())
    ctx["p"] = Fraction(p)
    ctx["disc"] = model.discriminant
    for name, value in extra.items():
        if value is not None:
            ctx[name] = Fraction(value)
    if "n" in ctx:
        ctx["nprime"] = Fraction(2 - int(ctx["n"]) % 2)
    return ctx
