"""Exact sparse multivariate polynomials over Q.

A polynomial is a map from exponent tuples to nonzero ``Fraction``
coefficients. Values are immutable; arithmetic returns new objects.

    >>> f = parse_polynomial("x^5 + x^2*y^2 + y^5", ("x", "y"))
    >>> format_polynomial(partial_derivative(f, 0), ("x", "y"))
    '5*x^4 + 2*x*y^2'
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from itertools import product
from typing import Iterable, Mapping, Sequence

from .errors import (
    DimensionError,
    InputError,
    NotWeightedHomogeneousError,
    ParseError,
    UnknownVariableError,
)

Exponent = tuple  # tuple[int, ...]
DEFAULT_NAMES = ("x", "y", "z", "w", "u", "v")


def default_variables(n: int) -> tuple[str, ...]:
    if n <= len(DEFAULT_NAMES):
        return DEFAULT_NAMES[:n]
    return tuple(f"x{i + 1}" for i in range(n))


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, float):
        raise TypeError("floating-point coefficients are not supported")
    return Fraction(value)


class Polynomial:
    """Sparse polynomial in ``nvars`` variables with rational coefficients."""

    __slots__ = ("_terms", "nvars", "_hash")

    def __init__(self, terms: Mapping[Exponent, object], nvars: int):
        clean = {}
        for exp, c in terms.items():
            exp = tuple(int(a) for a in exp)
            if len(exp) != nvars:
                raise DimensionError(f"exponent {exp} does not have length {nvars}")
            if any(a < 0 for a in exp):
                raise InputError(f"negative exponent {exp}")
            c = as_fraction(c)
            if c:
                clean[exp] = clean.get(exp, 0) + c
                if not clean[exp]:
                    del clean[exp]
        self._terms = clean
        self.nvars = nvars
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict, nvars: int) -> "Polynomial":
        # trusted constructor: caller guarantees canonical form
        p = cls.__new__(cls)
        p._terms = terms
        p.nvars = nvars
        p._hash = None
        return p

    @classmethod
    def zero(cls, nvars: int) -> "Polynomial":
        return cls._raw({}, nvars)

    @classmethod
    def constant(cls, c, nvars: int) -> "Polynomial":
        c = as_fraction(c)
        return cls._raw({(0,) * nvars: c} if c else {}, nvars)

    @classmethod
    def monomial(cls, exp: Sequence[int], coeff=1) -> "Polynomial":
        return cls({tuple(exp): coeff}, len(exp))

    @classmethod
    def variable(cls, i: int, nvars: int) -> "Polynomial":
        exp = [0] * nvars
        exp[i] = 1
        return cls._raw({tuple(exp): Fraction(1)}, nvars)

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def support(self) -> list[Exponent]:
        return list(self._terms)

    def coefficient(self, exp: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(exp), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def total_degree(self) -> int:
        return max((sum(e) for e in self._terms), default=-1)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.nvars == other.nvars and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == Polynomial.constant(other, self.nvars)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    def _check(self, other: "Polynomial"):
        if other.nvars != self.nvars:
            raise DimensionError(f"nvars mismatch: {self.nvars} vs {other.nvars}")

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(other, self.nvars)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Polynomial._raw(out, self.nvars)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw({e: -c for e, c in self._terms.items()}, self.nvars)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check(other)
        out: dict = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    del out[e]
        return Polynomial._raw(out, self.nvars)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = Polynomial.constant(1, self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c) -> "Polynomial":
        c = as_fraction(c)
        if not c:
            return Polynomial.zero(self.nvars)
        return Polynomial._raw({e: v * c for e, v in self._terms.items()}, self.nvars)

    def shift(self, exp: Sequence[int]) -> "Polynomial":
        """Multiply by the monomial ``x^exp``."""
        return Polynomial._raw(
            {tuple(a + b for a, b in zip(e, exp)): c for e, c in self._terms.items()},
            self.nvars,
        )

    def truncate(self, degree: int) -> "Polynomial":
        """Drop all terms of total degree >= ``degree``."""
        return Polynomial._raw(
            {e: c for e, c in self._terms.items() if sum(e) < degree}, self.nvars
        )

    def evaluate(self, point: Sequence) -> Fraction:
        total = Fraction(0)
        for e, c in self._terms.items():
            term = c
            for x, a in zip(point, e):
                term *= Fraction(x) ** a
            total += term
        return total

    def content(self) -> Fraction:
        """Positive rational c with self/c primitive over Z."""
        if not self._terms:
            return Fraction(0)
        nums = reduce(math.gcd, (c.numerator for c in self._terms.values()))
        dens = reduce(lambda a, b: a * b // math.gcd(a, b), (c.denominator for c in self._terms.values()))
        return Fraction(abs(nums), dens)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r})"

    def __str__(self):
        return format_polynomial(self)


# -- arithmetic helpers ------------------------------------------------------


def poly_arith(op: str, a: Polynomial, b) -> Polynomial:
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "scale":
        return a.scale(b)
    raise ValueError(f"unknown op {op!r}")


def partial_derivative(p: Polynomial, i: int) -> Polynomial:
    if not 0 <= i < p.nvars:
        raise IndexError(f"variable index {i} out of range for {p.nvars} variables")
    out = {}
    for e, c in p.items():
        if e[i]:
            d = list(e)
            d[i] -= 1
            out[tuple(d)] = c * e[i]
    return Polynomial._raw(out, p.nvars)


def gradient(p: Polynomial) -> list[Polynomial]:
    return [partial_derivative(p, i) for i in range(p.nvars)]


def canonical_key(exp: Exponent):
    """Sort key for formatting: higher total degree first, then lex."""
    return (-sum(exp), tuple(-a for a in exp))


def format_monomial(exp: Exponent, names: Sequence[str]) -> str:
    parts = []
    for name, a in zip(names, exp):
        if a == 1:
            parts.append(name)
        elif a > 1:
            parts.append(f"{name}^{a}")
    return "*".join(parts)


def format_polynomial(p: Polynomial, names: Sequence[str] | None = None) -> str:
    names = tuple(names) if names else default_variables(p.nvars)
    if p.is_zero():
        return "0"
    out = []
    for exp in sorted(p.support(), key=canonical_key):
        c = p.coefficient(exp)
        mono = format_monomial(exp, names)
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not out:
            out.append(body if sign == "+" else f"-{body}")
        else:
            out.append(f"{sign} {body}")
    return " ".join(out)


# -- parser --------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


class _Parser:
    """Recursive descent over ``term (('+'|'-') term)*``."""

    def __init__(self, text: str, names: Sequence[str]):
        self.text = text
        self.index = {name: i for i, name in enumerate(names)}
        self.n = len(names)
        self.tokens = []
        for m in _TOKEN.finditer(text):
            if m.group(0).strip() == "":
                continue
            if m.group(1) is not None:
                self.tokens.append(("int", m.group(1), m.start(1)))
            elif m.group(2) is not None:
                self.tokens.append(("name", m.group(2), m.start(2)))
            else:
                self.tokens.append(("op", m.group(3), m.start(3)))
        self.pos = 0

    def peek(self):
        if self.pos < len(self.tokens):
            return self.tokens[self.pos]
        return ("eof", "", len(self.text))

    def advance(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def expect(self, kind, value=None):
        tok = self.advance()
        if tok[0] != kind or (value is not None and tok[1] != value):
            want = value or kind
            raise ParseError(f"expected {want!r}, got {tok[1] or 'end of input'!r}", tok[2], self.text)
        return tok

    def parse(self) -> Polynomial:
        result: dict = {}
        sign = 1
        tok = self.peek()
        if tok[:2] in (("op", "+"), ("op", "-")):
            sign = -1 if tok[1] == "-" else 1
            self.advance()
        while True:
            exp, coef = self.term()
            coef *= sign
            result[exp] = result.get(exp, 0) + coef
            tok = self.peek()
            if tok[0] == "eof":
                break
            if tok[:2] == ("op", "+"):
                sign = 1
            elif tok[:2] == ("op", "-"):
                sign = -1
            else:
                raise ParseError(f"unexpected {tok[1]!r}", tok[2], self.text)
            self.advance()
        return Polynomial(result, self.n)

    def term(self):
        exp = [0] * self.n
        coef = Fraction(1)
        tok = self.peek()
        if tok[0] == "int":
            coef = self.coefficient()
            nxt = self.peek()
            if nxt[:2] == ("op", "*"):
                self.advance()
                self.factor(exp)
            elif nxt[0] == "name":
                self.factor(exp)
            else:
                return tuple(exp), coef
        elif tok[0] == "name":
            self.factor(exp)
        else:
            raise ParseError(f"expected a term, got {tok[1] or 'end of input'!r}", tok[2], self.text)
        while self.peek()[:2] == ("op", "*"):
            self.advance()
            self.factor(exp)
        return tuple(exp), coef

    def coefficient(self) -> Fraction:
        num = int(self.expect("int")[1])
        if self.peek()[:2] == ("op", "/"):
            self.advance()
            den_tok = self.expect("int")
            den = int(den_tok[1])
            if den == 0:
                raise ParseError("zero denominator", den_tok[2], self.text)
            return Fraction(num, den)
        return Fraction(num)

    def factor(self, exp: list):
        tok = self.advance()
        if tok[0] != "name":
            raise ParseError(f"expected a variable, got {tok[1] or 'end of input'!r}", tok[2], self.text)
        if tok[1] not in self.index:
            raise UnknownVariableError(tok[1], tok[2])
        power = 1
        if self.peek()[:2] == ("op", "^"):
            self.advance()
            power = int(self.expect("int")[1])
        exp[self.index[tok[1]]] += power


def parse_polynomial(text: str, variables: Sequence[str]) -> Polynomial:
    if not variables:
        raise InputError("at least one variable is required")
    return _Parser(text, variables).parse()


def guess_variables(text: str) -> tuple[str, ...]:
    """Default variable list for ``text``: the shortest prefix of x, y, z, ...
    covering every name used."""
    used = set(re.findall(r"[A-Za-z_][A-Za-z_0-9]*", text))
    for n in range(1, len(DEFAULT_NAMES) + 1):
        if used <= set(DEFAULT_NAMES[:n]):
            return DEFAULT_NAMES[:n]
    return tuple(sorted(used))


# -- weights ---------------------------------------------------------------------


@dataclass(frozen=True)
class WeightSystem:
    weights: tuple

    def __post_init__(self):
        ws = tuple(as_fraction(w) for w in self.weights)
        if not ws:
            raise InputError("empty weight system")
        if any(w <= 0 for w in ws):
            raise InputError(f"weights must be positive, got {ws}")
        object.__setattr__(self, "weights", ws)

    @property
    def n(self) -> int:
        return len(self.weights)

    @property
    def w(self) -> Fraction:
        return sum(self.weights, Fraction(0))

    @property
    def lcm_denominator(self) -> int:
        return reduce(lambda a, b: a * b // math.gcd(a, b), (x.denominator for x in self.weights))

    def integer_weights(self) -> tuple[int, ...]:
        d = self.lcm_denominator
        return tuple(int(x * d) for x in self.weights)

    @classmethod
    def parse(cls, text: str) -> "WeightSystem":
        try:
            return cls(tuple(Fraction(part.strip()) for part in text.split(",")))
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"bad weight list {text!r}: {exc}") from None

    def __str__(self):
        return ",".join(str(x) for x in self.weights)


def monomial_weight(m: Sequence[int], W: WeightSystem, shifted: bool = True) -> Fraction:
    """Weight of ``x^m``; the shifted variant adds ``W.w`` (the weight of
    ``x_1...x_n``), the plain one is the grading in which f has weight 1."""
    plain = sum((a * wi for a, wi in zip(m, W.weights)), Fraction(0))
    return plain + W.w if shifted else plain


def is_weighted_homogeneous(f: Polynomial, W: WeightSystem) -> bool:
    if f.is_zero():
        raise InputError("zero polynomial has no weighted degree")
    if W.n != f.nvars:
        raise DimensionError(f"{W.n} weights for {f.nvars} variables")
    return all(monomial_weight(m, W, shifted=False) == 1 for m in f.support())


def solve_linear(rows: Sequence[Sequence], rhs: Sequence) -> list[Fraction] | None:
    """Unique exact solution of ``rows @ x = rhs``, or None if the system is
    inconsistent or underdetermined."""
    if not rows:
        return None
    ncols = len(rows[0])
    aug = [[Fraction(v) for v in row] + [Fraction(b)] for row, b in zip(rows, rhs)]
    pivots = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(aug)) if aug[i][col]), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        lead = aug[r][col]
        aug[r] = [v / lead for v in aug[r]]
        for i in range(len(aug)):
            if i != r and aug[i][col]:
                factor = aug[i][col]
                aug[i] = [a - factor * b for a, b in zip(aug[i], aug[r])]
        pivots.append(col)
        r += 1
    if any(not any(row[:-1]) and row[-1] for row in aug):
        return None
    if len(pivots) < ncols:
        return None
    sol = [Fraction(0)] * ncols
    for i, col in enumerate(pivots):
        sol[col] = aug[i][-1]
    return sol


def infer_weights(f: Polynomial) -> WeightSystem | None:
    if f.is_zero():
        raise InputError("zero polynomial has no weights")
    support = sorted(f.support())
    sol = solve_linear(support, [1] * len(support))
    if sol is None or any(w <= 0 for w in sol):
        return None
    return WeightSystem(tuple(sol))


def require_weighted_homogeneous(f: Polynomial, W: WeightSystem) -> None:
    if not is_weighted_homogeneous(f, W):
        raise NotWeightedHomogeneousError(
            f"{format_polynomial(f)} is not weighted homogeneous of degree 1 for weights ({W})"
        )


def monomials_in_box(bounds: Iterable[int]):
    """All exponents with 0 <= e_i <= bounds[i]."""
    return product(*(range(b + 1) for b in bounds))
