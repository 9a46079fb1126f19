"""Fractional Laurent polynomials and the closed-form spectrum.

All fractional-exponent arithmetic is reduced to integer polynomials in
``u = t^(1/D)`` with ``D`` a common denominator.
"""

from __future__ import annotations

import json
import math
import re
from fractions import Fraction
from functools import reduce
from typing import Iterable, Mapping, Sequence

from .errors import InputError, SpectrumFormulaError
from .poly import WeightSystem, as_fraction


def _lcm(values: Iterable[int]) -> int:
    return reduce(lambda a, b: a * b // math.gcd(a, b), values, 1)


class FracLaurent:
    """Finite sum of ``n * t^q`` with rational ``q`` and integer ``n != 0``."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping | None = None):
        clean: dict = {}
        for q, n in (terms or {}).items():
            q = as_fraction(q)
            if int(n) != n:
                raise ValueError(f"non-integer multiplicity {n}")
            clean[q] = clean.get(q, 0) + int(n)
        self._terms = {q: n for q, n in clean.items() if n}

    @classmethod
    def monomial(cls, exponent, multiplicity: int = 1) -> "FracLaurent":
        return cls({exponent: multiplicity})

    @classmethod
    def from_exponents(cls, exponents: Iterable) -> "FracLaurent":
        out: dict = {}
        for q in exponents:
            q = as_fraction(q)
            out[q] = out.get(q, 0) + 1
        return cls(out)

    @property
    def terms(self) -> dict:
        return dict(sorted(self._terms.items()))

    def exponents(self) -> list[Fraction]:
        return sorted(self._terms)

    def multiplicity(self, q) -> int:
        return self._terms.get(as_fraction(q), 0)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, FracLaurent):
            return self._terms == other._terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: "FracLaurent") -> "FracLaurent":
        out = dict(self._terms)
        for q, n in other._terms.items():
            out[q] = out.get(q, 0) + n
        return FracLaurent(out)

    def __neg__(self):
        return FracLaurent({q: -n for q, n in self._terms.items()})

    def __sub__(self, other: "FracLaurent") -> "FracLaurent":
        return self + (-other)

    def __mul__(self, other: "FracLaurent") -> "FracLaurent":
        out: dict = {}
        for q1, n1 in self._terms.items():
            for q2, n2 in other._terms.items():
                out[q1 + q2] = out.get(q1 + q2, 0) + n1 * n2
        return FracLaurent(out)

    def shift_by(self, q) -> "FracLaurent":
        q = as_fraction(q)
        return FracLaurent({e + q: n for e, n in self._terms.items()})

    def reflect(self, center) -> "FracLaurent":
        """Substitute ``q -> center - q``."""
        center = as_fraction(center)
        return FracLaurent({center - e: n for e, n in self._terms.items()})

    def eval_at_one(self) -> int:
        return sum(self._terms.values())

    def truncate(self, bound) -> "FracLaurent":
        bound = as_fraction(bound)
        return FracLaurent({q: n for q, n in self._terms.items() if q <= bound})

    # -- text / json forms ---------------------------------------------------

    def __str__(self):
        if not self._terms:
            return "0"
        pieces = []
        for q, n in sorted(self._terms.items()):
            if q == 0:
                mono = ""
            elif q == 1:
                mono = "t"
            elif q.denominator == 1:
                mono = f"t^{q.numerator}" if q > 0 else f"t^({q.numerator})"
            else:
                mono = f"t^({q})"
            mag = abs(n)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if not pieces:
                pieces.append(body if n > 0 else f"-{body}")
            else:
                pieces.append(f"{'+' if n > 0 else '-'} {body}")
        return " ".join(pieces)

    def __repr__(self):
        return f"FracLaurent({str(self)!r})"

    def to_json(self) -> list[dict]:
        return [{"exponent": str(q), "multiplicity": n} for q, n in sorted(self._terms.items())]

    @classmethod
    def from_json(cls, data: Sequence[Mapping]) -> "FracLaurent":
        return cls({Fraction(item["exponent"]): int(item["multiplicity"]) for item in data})

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def parse(cls, text: str) -> "FracLaurent":
        """Inverse of ``str``: ``2*t^(7/10) + t - 3``."""
        text = text.replace(" ", "")
        if text == "0":
            return cls()
        term = re.compile(r"([+-]?)(?:(\d+)\*?)?(t(?:\^(?:\((-?\d+(?:/\d+)?)\)|(\d+)))?)?")
        out: dict = {}
        pos = 0
        while pos < len(text):
            m = term.match(text, pos)
            if not m or m.end() == pos or (m.group(2) is None and m.group(3) is None):
                raise InputError(f"cannot parse Laurent polynomial at position {pos}: {text!r}")
            sign = -1 if m.group(1) == "-" else 1
            coef = int(m.group(2)) if m.group(2) else 1
            if m.group(3) is None:
                q = Fraction(0)
            elif m.group(4):
                q = Fraction(m.group(4))
            elif m.group(5):
                q = Fraction(int(m.group(5)))
            else:
                q = Fraction(1)
            out[q] = out.get(q, 0) + sign * coef
            pos = m.end()
        return cls(out)


def fl_arith(op: str, a: FracLaurent, b=None):
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "shift_by":
        return a.shift_by(b)
    if op == "eval_at_one":
        return a.eval_at_one()
    if op == "equal":
        return a == b
    raise ValueError(f"unknown op {op!r}")


# -- integer polynomials in u, dense little-endian lists --------------------------


def _upoly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _upoly_divmod(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    """Exact long division by ``den`` whose leading coefficient is +-1."""
    num = list(num)
    while len(den) > 1 and den[-1] == 0:
        den = den[:-1]
    lead = den[-1]
    if abs(lead) != 1:
        raise ValueError("divisor must have unit leading coefficient")
    q = [0] * max(1, len(num) - len(den) + 1)
    for k in range(len(num) - len(den), -1, -1):
        c = num[k + len(den) - 1] * lead
        q[k] = c
        if c:
            for j, d in enumerate(den):
                num[k + j] -= c * d
    return q, num


def _binomial_diff(a: int, b: int) -> list[int]:
    """``u^a - u^b`` as a dense list."""
    out = [0] * (max(a, b) + 1)
    out[a] += 1
    out[b] -= 1
    return out


def spectrum_formula(W: WeightSystem) -> FracLaurent:
    """Expand ``prod_j (t^w_j - t) / (1 - t^w_j)`` exactly."""
    if any(not (0 < x < 1) for x in W.weights):
        raise SpectrumFormulaError(f"weights must lie in (0,1), got ({W})")
    D = W.lcm_denominator
    exps = W.integer_weights()
    num, den = [1], [1]
    for a in exps:
        num = _upoly_mul(num, _binomial_diff(a, D))
        den = _upoly_mul(den, _binomial_diff(0, a))
    quo, rem = _upoly_divmod(num, den)
    if any(rem):
        raise SpectrumFormulaError(
            f"weights ({W}) do not define an isolated weighted homogeneous singularity spectrum"
        )
    return FracLaurent({Fraction(k, D): c for k, c in enumerate(quo) if c})


def hp_closed_form(W: WeightSystem, degrees: Sequence, truncation) -> FracLaurent:
    """Hilbert-Poincare series in the shifted grading of the quotient of the
    polynomial ring by a regular sequence of homogeneous elements of the
    given degrees, expanded up to exponent ``truncation``:

        t^w / prod(1 - t^w_j) * prod_i (1 - t^(d_i - w))
    """
    degrees = [as_fraction(d) for d in degrees]
    truncation = as_fraction(truncation)
    if any(d <= 0 for d in degrees) or truncation <= 0:
        raise InputError("degrees and truncation must be positive")
    w = W.w
    D = _lcm([W.lcm_denominator] + [d.denominator for d in degrees] + [w.denominator])
    # numerator as {u-exponent: coefficient}
    numerator = {int(w * D): 1}
    for d in degrees:
        step = int((d - w) * D)
        nxt: dict = {}
        for e, c in numerator.items():
            nxt[e] = nxt.get(e, 0) + c
            nxt[e + step] = nxt.get(e + step, 0) - c
        numerator = {e: c for e, c in nxt.items() if c}
    top = math.floor(truncation * D)
    low = min(numerator, default=0)
    span = top - low
    if span < 0:
        return FracLaurent()
    series = [0] * (span + 1)
    series[0] = 1
    for wj in W.weights:
        a = int(wj * D)
        for k in range(a, span + 1):
            series[k] += series[k - a]
    out: dict = {}
    for e, c in numerator.items():
        for k in range(0, top - e + 1):
            if series[k]:
                q = Fraction(e + k, D)
                out[q] = out.get(q, 0) + c * series[k]
    return FracLaurent(out)
