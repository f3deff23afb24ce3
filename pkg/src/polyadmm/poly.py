"""Sparse multivariate polynomials, problem containers, and text parsing.

Variables are written ``x1 .. xn`` in text (1-based) and indexed 0-based in
code. Coefficients are double-precision floats; terms with coefficient
exactly 0.0 are never stored.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

__all__ = [
    "Monomial",
    "Polynomial",
    "PopProblem",
    "PolynomialParseError",
    "parse_polynomial",
]


class PolynomialParseError(ValueError):
    """Raised for malformed polynomial text; carries the 0-based position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class Monomial:
    """Product of variables with positive integer powers.

    Immutable and hashable. The empty monomial is the constant 1.
    """

    __slots__ = ("exponents", "_hash")

    def __init__(self, exponents: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = dict(exponents)
        for var, power in items.items():
            if var < 0:
                raise ValueError(f"negative variable index {var}")
            if power < 0:
                raise ValueError(f"negative power {power} on x{var + 1}")
        normalized = tuple(sorted((v, p) for v, p in items.items() if p != 0))
        object.__setattr__(self, "exponents", normalized)
        object.__setattr__(self, "_hash", hash(normalized))

    def __setattr__(self, name, value):
        raise AttributeError("Monomial is immutable")

    def __eq__(self, other):
        return isinstance(other, Monomial) and self.exponents == other.exponents

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Monomial({dict(self.exponents)!r})"

    @property
    def degree(self) -> int:
        return sum(p for _, p in self.exponents)

    def max_var(self) -> int:
        """Largest variable index used, or -1 for the constant monomial."""
        return self.exponents[-1][0] if self.exponents else -1

    def as_dict(self) -> dict[int, int]:
        return dict(self.exponents)

    def index_sequence(self) -> list[int]:
        """Variable indices with multiplicity, ascending: x1^2*x2 -> [0, 0, 1]."""
        seq: list[int] = []
        for var, power in self.exponents:
            seq.extend([var] * power)
        return seq

    def evaluate(self, point: Sequence[float]) -> float:
        value = 1.0
        for var, power in self.exponents:
            value *= float(point[var]) ** power
        return value

    def text(self) -> str:
        if not self.exponents:
            return "1"
        parts = []
        for var, power in self.exponents:
            name = f"x{var + 1}"
            parts.append(name if power == 1 else f"{name}^{power}")
        return "*".join(parts)


_CONSTANT = Monomial()


def _grlex_key(mono: Monomial, nvars: int):
    # Graded lexicographic, descending: higher degree first, then higher
    # power on lower-indexed variables.
    exps = mono.as_dict()
    padded = tuple(-exps.get(i, 0) for i in range(nvars))
    return (-mono.degree, padded)


class Polynomial:
    """Sparse polynomial: map from Monomial to nonzero float coefficient."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping | None = None):
        if nvars < 0:
            raise ValueError("nvars must be >= 0")
        canonical: dict[Monomial, float] = {}
        for key, coeff in (terms or {}).items():
            mono = key if isinstance(key, Monomial) else Monomial(key)
            c = canonical.get(mono, 0.0) + float(coeff)
            if c == 0.0:
                canonical.pop(mono, None)
            else:
                canonical[mono] = c
        for mono in canonical:
            if mono.max_var() >= nvars:
                raise ValueError(
                    f"monomial {mono.text()} uses x{mono.max_var() + 1} "
                    f"but only {nvars} variables are declared"
                )
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "terms", canonical)

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    # -- queries ----------------------------------------------------------

    def degree(self) -> int:
        """Max total degree over terms; 0 for constants and the zero polynomial."""
        return max((m.degree for m in self.terms), default=0)

    def coefficient(self, mono: Monomial | Mapping[int, int]) -> float:
        if not isinstance(mono, Monomial):
            mono = Monomial(mono)
        return self.terms.get(mono, 0.0)

    def is_zero(self) -> bool:
        return not self.terms

    def constant(self) -> float:
        return self.terms.get(_CONSTANT, 0.0)

    def evaluate(self, point: Sequence[float]) -> float:
        if len(point) < self.nvars:
            raise ValueError(
                f"point has {len(point)} coordinates, polynomial needs {self.nvars}"
            )
        return math.fsum(c * m.evaluate(point) for m, c in self.terms.items())

    def sorted_terms(self) -> list[tuple[Monomial, float]]:
        """Terms in canonical (graded lexicographic, descending) order."""
        return sorted(self.terms.items(), key=lambda mc: _grlex_key(mc[0], self.nvars))

    # -- algebra ----------------------------------------------------------

    def partial(self, var: int) -> "Polynomial":
        """Partial derivative with respect to variable ``var``."""
        out: dict[Monomial, float] = {}
        for mono, coeff in self.terms.items():
            exps = mono.as_dict()
            p = exps.get(var, 0)
            if p == 0:
                continue
            exps[var] = p - 1
            dm = Monomial(exps)
            out[dm] = out.get(dm, 0.0) + coeff * p
        return Polynomial(self.nvars, out)

    def __add__(self, other: "Polynomial") -> "Polynomial":
        if self.nvars != other.nvars:
            raise ValueError("variable counts differ")
        merged = dict(self.terms)
        for mono, coeff in other.terms.items():
            merged[mono] = merged.get(mono, 0.0) + coeff
        return Polynomial(self.nvars, merged)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (other * -1.0)

    def __mul__(self, scalar: float) -> "Polynomial":
        return Polynomial(self.nvars, {m: c * scalar for m, c in self.terms.items()})

    __rmul__ = __mul__

    def __neg__(self) -> "Polynomial":
        return self * -1.0

    def with_term(self, mono: Monomial | Mapping[int, int], coeff: float) -> "Polynomial":
        """New polynomial with ``coeff`` added to the given monomial."""
        if not isinstance(mono, Monomial):
            mono = Monomial(mono)
        return self + Polynomial(self.nvars, {mono: coeff})

    def __eq__(self, other):
        return (
            isinstance(other, Polynomial)
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def __repr__(self):
        return f"Polynomial({self.nvars}, '{self.to_text()}')"

    # -- text form ---------------------------------------------------------

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts: list[str] = []
        for i, (mono, coeff) in enumerate(self.sorted_terms()):
            sign = "-" if coeff < 0 else "+"
            mag = abs(coeff)
            if mono is _CONSTANT or mono == _CONSTANT:
                body = repr(mag)
            elif mag == 1.0:
                body = mono.text()
            else:
                body = f"{mag!r}*{mono.text()}"
            if i == 0:
                parts.append(body if sign == "+" else f"-{body}")
            else:
                parts.append(f" {sign} {body}")
        return "".join(parts)

    @staticmethod
    def zero(nvars: int) -> "Polynomial":
        return Polynomial(nvars)

    @staticmethod
    def parse(text: str, nvars: int) -> "Polynomial":
        return parse_polynomial(text, nvars)


_NUMBER_RE = re.compile(r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?")
_VAR_RE = re.compile(r"x(\d+)")


class _Tokenizer:
    """Longest-match scanner producing (kind, value, position) tuples."""

    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self._skip_ws()

    def _skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        if self.pos >= len(self.text):
            return ("end", "", self.pos)
        ch = self.text[self.pos]
        if ch in "+-*^":
            return (ch, ch, self.pos)
        m = _VAR_RE.match(self.text, self.pos)
        if m:
            return ("var", m.group(1), self.pos)
        m = _NUMBER_RE.match(self.text, self.pos)
        if m:
            return ("num", m.group(0), self.pos)
        raise PolynomialParseError(f"unexpected character {ch!r}", self.pos)

    def take(self):
        kind, value, pos = self.peek()
        if kind == "var":
            self.pos += 1 + len(value)
        else:
            self.pos += len(value)
        self._skip_ws()
        return kind, value, pos


def parse_polynomial(text: str, nvars: int) -> Polynomial:
    """Parse a sum of signed terms into a canonical sparse polynomial.

    Each term is an optional real coefficient times ``*``-separated factors
    ``x<k>`` or ``x<k>^<p>`` with integer p >= 1 and 1 <= k <= nvars.
    Whitespace is ignored everywhere. Coefficients of like terms are summed,
    so cancellations drop terms entirely.
    """
    tz = _Tokenizer(text)
    kind, _, pos = tz.peek()
    if kind == "end":
        raise PolynomialParseError("empty polynomial", pos)

    terms: dict[Monomial, float] = {}
    while True:
        sign = 1.0
        kind, _, pos = tz.peek()
        while kind in ("+", "-"):
            tz.take()
            if kind == "-":
                sign = -sign
            kind, _, pos = tz.peek()

        coeff, exps = _parse_term(tz, nvars)
        mono = Monomial(exps)
        c = terms.get(mono, 0.0) + sign * coeff
        if c == 0.0:
            terms.pop(mono, None)
        else:
            terms[mono] = c

        kind, _, pos = tz.peek()
        if kind == "end":
            break
        if kind not in ("+", "-"):
            raise PolynomialParseError(f"expected '+' or '-', got {kind!r}", pos)
    return Polynomial(nvars, terms)


def _parse_term(tz: _Tokenizer, nvars: int) -> tuple[float, dict[int, int]]:
    coeff = 1.0
    exps: dict[int, int] = {}
    first = True
    while True:
        kind, value, pos = tz.peek()
        if kind == "num":
            tz.take()
            coeff *= float(value)
        elif kind == "var":
            tz.take()
            index = int(value)
            if index < 1:
                raise PolynomialParseError(f"variable index must be >= 1, got x{index}", pos)
            if index > nvars:
                raise PolynomialParseError(
                    f"variable x{index} exceeds the declared count {nvars}", pos
                )
            power = _parse_exponent(tz)
            exps[index - 1] = exps.get(index - 1, 0) + power
        else:
            if first:
                raise PolynomialParseError("expected a coefficient or variable", pos)
            break
        first = False
        kind, _, pos = tz.peek()
        if kind == "*":
            tz.take()
            first = True  # a factor must follow '*'
        elif kind in ("num", "var"):
            raise PolynomialParseError("missing '*' between factors", pos)
    return coeff, exps


def _parse_exponent(tz: _Tokenizer) -> int:
    kind, _, _ = tz.peek()
    if kind != "^":
        return 1
    tz.take()
    kind, value, pos = tz.peek()
    negative = False
    if kind == "-":
        tz.take()
        negative = True
        kind, value, pos = tz.peek()
    if kind != "num":
        raise PolynomialParseError("expected an integer exponent after '^'", pos)
    tz.take()
    try:
        power = int(value)
    except ValueError:
        raise PolynomialParseError(f"exponent must be an integer, got {value!r}", pos) from None
    if negative or power <= 0:
        raise PolynomialParseError("exponent must be >= 1", pos)
    return power


@dataclass(frozen=True)
class PopProblem:
    """Objective plus polynomial constraints over a shared variable count.

    Inequalities mean ``g(x) <= 0``; equalities mean ``h(x) = 0``.
    """

    objective: Polynomial
    inequalities: tuple[Polynomial, ...] = ()
    equalities: tuple[Polynomial, ...] = ()
    nvars: int = field(default=-1)

    def __post_init__(self):
        object.__setattr__(self, "inequalities", tuple(self.inequalities))
        object.__setattr__(self, "equalities", tuple(self.equalities))
        n = self.nvars if self.nvars >= 0 else self.objective.nvars
        object.__setattr__(self, "nvars", n)
        for p in (self.objective, *self.inequalities, *self.equalities):
            if p.nvars != n:
                raise ValueError(
                    f"constraint over {p.nvars} variables in a {n}-variable problem"
                )

    def constraint_violation(self, point: Sequence[float]) -> float:
        """Max of positive inequality residuals and absolute equality residuals."""
        worst = 0.0
        for g in self.inequalities:
            worst = max(worst, g.evaluate(point))
        for h in self.equalities:
            worst = max(worst, abs(h.evaluate(point)))
        return worst

    def to_json_dict(self) -> dict:
        return {
            "nvars": self.nvars,
            "objective": self.objective.to_text(),
            "ineq": [g.to_text() for g in self.inequalities],
            "eq": [h.to_text() for h in self.equalities],
        }

    @staticmethod
    def from_json_dict(data: Mapping) -> "PopProblem":
        try:
            n = int(data["nvars"])
            objective = parse_polynomial(str(data["objective"]), n)
            ineq = tuple(parse_polynomial(str(s), n) for s in data.get("ineq", []))
            eq = tuple(parse_polynomial(str(s), n) for s in data.get("eq", []))
        except KeyError as exc:
            raise ValueError(f"problem JSON is missing key {exc}") from None
        return PopProblem(objective, ineq, eq, n)
