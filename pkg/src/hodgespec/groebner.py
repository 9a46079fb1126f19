"""Buchberger's algorithm over Q with weighted monomial orders.

Besides reduced bases and normal forms this module answers the two
quantitative questions the rest of the package asks of an ideal: the
dimension of the quotient by it (globally, and after localizing at the
origin) and whether its zero set meets the torus.

Localization is done by m-adic stabilization: for ``m = <x_1, ..., x_n>``
the sequence ``colength(I + m^N)`` strictly increases until it reaches the
local colength of ``I`` at the origin and is constant from then on.
"""

from __future__ import annotations

import heapq
import math
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Sequence

from .errors import DimensionError, SafetyBoundError
from .poly import Polynomial, WeightSystem

INFINITE = math.inf


@dataclass(frozen=True)
class MonomialOrder:
    """Weighted degree order with a graded tie-break.

    Monomials are compared first by ``sum(integer_weights[i] * e[i])``, then
    by total degree, then by reverse lex (``grevlex``) or lex.
    """

    integer_weights: tuple
    tie_break: str = "grevlex"
    _cache: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    def __post_init__(self):
        if any(int(a) <= 0 for a in self.integer_weights):
            raise ValueError("order weights must be positive integers")
        if self.tie_break not in ("grevlex", "lex"):
            raise ValueError(f"unknown tie-break {self.tie_break!r}")

    @classmethod
    def default(cls, nvars: int, W: WeightSystem | None = None, tie_break: str = "grevlex"):
        if W is None:
            return cls((1,) * nvars, tie_break)
        if W.n != nvars:
            raise DimensionError(f"{W.n} weights for {nvars} variables")
        return cls(W.integer_weights(), tie_break)

    @property
    def nvars(self) -> int:
        return len(self.integer_weights)

    def key(self, e) -> tuple:
        k = self._cache.get(e)
        if k is None:
            wdeg = sum(a * b for a, b in zip(self.integer_weights, e))
            if self.tie_break == "grevlex":
                k = (wdeg, sum(e)) + tuple(-a for a in reversed(e))
            else:
                k = (wdeg, sum(e)) + tuple(e)
            if len(self._cache) < 500_000:
                self._cache[e] = k
        return k

    def neg_key(self, e) -> tuple:
        return tuple(-v for v in self.key(e))

    def lt(self, a, b) -> bool:
        return self.key(a) < self.key(b)


# -- raw dict kernels -----------------------------------------------------------
# Internally polynomials are plain dicts {exponent: Fraction}; basis elements
# are monic.


def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _leading(p: dict, order: MonomialOrder):
    return max(p, key=order.key)


def _monic(p: dict, order: MonomialOrder) -> dict:
    lm = _leading(p, order)
    c = p[lm]
    if c == 1:
        return p
    inv = 1 / c
    return {e: v * inv for e, v in p.items()}


class _Basis:
    """Monic polynomials with cached leading monomials and tails."""

    def __init__(self, order: MonomialOrder):
        self.order = order
        self.polys: list[dict] = []
        self.lms: list[tuple] = []
        self.tails: list[list] = []

    def add(self, p: dict) -> int:
        lm = _leading(p, self.order)
        self.polys.append(p)
        self.lms.append(lm)
        self.tails.append([(e, c) for e, c in p.items() if e != lm])
        return len(self.polys) - 1

    def divisor_of(self, m, active=None):
        for i, lm in enumerate(self.lms):
            if (active is None or i in active) and _divides(lm, m):
                return i
        return None


def _reduce(p: dict, basis: _Basis, active=None) -> dict:
    """Full reduction of ``p`` by ``basis`` (restricted to ``active`` indices)."""
    order = basis.order
    p = dict(p)
    rem: dict = {}
    heap = [(order.neg_key(e), e) for e in p]
    heapq.heapify(heap)
    while heap:
        _, m = heapq.heappop(heap)
        c = p.pop(m, None)
        if c is None:
            continue
        i = basis.divisor_of(m, active)
        if i is None:
            rem[m] = c
            continue
        q = _sub(m, basis.lms[i])
        for e, v in basis.tails[i]:
            t = tuple(a + b for a, b in zip(e, q))
            old = p.get(t)
            new = (old or 0) - c * v
            if new:
                if old is None:
                    heapq.heappush(heap, (order.neg_key(t), t))
                p[t] = new
            elif old is not None:
                del p[t]
    return rem


def _spoly(i: int, j: int, basis: _Basis) -> dict:
    a, b = basis.lms[i], basis.lms[j]
    l = _lcm(a, b)
    qa, qb = _sub(l, a), _sub(l, b)
    out: dict = {}
    for e, c in basis.tails[i]:
        t = tuple(x + y for x, y in zip(e, qa))
        out[t] = out.get(t, 0) + c
    for e, c in basis.tails[j]:
        t = tuple(x + y for x, y in zip(e, qb))
        s = out.get(t, 0) - c
        if s:
            out[t] = s
        else:
            out.pop(t, None)
    return {e: c for e, c in out.items() if c}


def _buchberger_raw(gens: list[dict], order: MonomialOrder, nvars: int) -> list[dict]:
    one = (0,) * nvars
    basis = _Basis(order)
    active: set[int] = set()
    pairs: list = []
    pending: set = set()

    def insert(h: dict):
        h = _monic(h, order)
        k = basis.add(h)
        lm_k = basis.lms[k]
        for i in sorted(active):
            l = _lcm(basis.lms[i], lm_k)
            heapq.heappush(pairs, (order.key(l), i, k))
            pending.add((i, k))
        active.add(k)
        return lm_k

    # add the smallest generators first; it tends to keep reductions short
    for g in sorted((g for g in gens if g), key=lambda g: order.key(_leading(g, order))):
        h = _reduce(g, basis, active)
        if h:
            if insert(h) == one:
                return [{one: Fraction(1)}]

    while pairs:
        _, i, j = heapq.heappop(pairs)
        pending.discard((i, j))
        a, b = basis.lms[i], basis.lms[j]
        if all(x == 0 or y == 0 for x, y in zip(a, b)):
            continue  # coprime leading monomials
        l = _lcm(a, b)
        if _chain_criterion(i, j, l, basis, pending):
            continue
        h = _reduce(_spoly(i, j, basis), basis, active)
        if h:
            if insert(h) == one:
                return [{one: Fraction(1)}]

    return _interreduce([basis.polys[i] for i in sorted(active)], order)


def _chain_criterion(i, j, l, basis: _Basis, pending: set) -> bool:
    for k, lm in enumerate(basis.lms):
        if k in (i, j) or not _divides(lm, l):
            continue
        if (min(i, k), max(i, k)) not in pending and (min(j, k), max(j, k)) not in pending:
            return True
    return False


def _interreduce(polys: list[dict], order: MonomialOrder) -> list[dict]:
    polys = sorted(polys, key=lambda p: order.key(_leading(p, order)))
    minimal = []
    for p in polys:
        lm = _leading(p, order)
        if not any(_divides(_leading(q, order), lm) for q in minimal):
            minimal.append(p)
    out = []
    for idx, p in enumerate(minimal):
        others = _Basis(order)
        for q_idx, q in enumerate(minimal):
            if q_idx != idx:
                others.add(q)
        lm = _leading(p, order)
        tail = {e: c for e, c in p.items() if e != lm}
        reduced = _reduce(tail, others)
        reduced[lm] = p[lm]
        out.append(_monic(reduced, order))
    out.sort(key=lambda p: order.key(_leading(p, order)))
    return out


# -- public API -----------------------------------------------------------------


def buchberger_reduced(gens: Sequence[Polynomial], order: MonomialOrder | None = None) -> list[Polynomial]:
    """Reduced Groebner basis of ``<gens>``; leading coefficients are 1.

    The empty list represents the zero ideal.
    """
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return []
    nvars = gens[0].nvars
    if any(g.nvars != nvars for g in gens):
        raise DimensionError("generators live in different polynomial rings")
    order = order or MonomialOrder.default(nvars)
    if order.nvars != nvars:
        raise DimensionError(f"order has {order.nvars} weights, ring has {nvars} variables")
    raw = _buchberger_raw([g.terms for g in gens], order, nvars)
    return [Polynomial._raw(p, nvars) for p in raw]


class Ideal:
    """Ideal of Q[x_1..x_n] given by generators, with a lazily computed
    reduced Groebner basis under ``order``."""

    def __init__(self, generators: Sequence[Polynomial], order: MonomialOrder | None = None, nvars: int | None = None):
        gens = [g for g in generators if not g.is_zero()]
        if nvars is None:
            if not generators:
                raise ValueError("nvars is required for an ideal without generators")
            nvars = generators[0].nvars
        if any(g.nvars != nvars for g in generators):
            raise DimensionError("generators live in different polynomial rings")
        self.nvars = nvars
        self.generators = tuple(_dedupe(gens))
        self.order = order or MonomialOrder.default(nvars)
        self._basis: list[Polynomial] | None = None
        self._lock = threading.Lock()

    @property
    def basis(self) -> list[Polynomial]:
        if self._basis is None:
            with self._lock:
                if self._basis is None:
                    self._basis = buchberger_reduced(self.generators, self.order)
        return self._basis

    def leading_monomials(self) -> list[tuple]:
        return [_leading(g.terms, self.order) for g in self.basis]

    def is_unit(self) -> bool:
        return len(self.basis) == 1 and self.basis[0].is_constant()

    def __add__(self, other: "Ideal | Sequence[Polynomial]") -> "Ideal":
        extra = other.generators if isinstance(other, Ideal) else tuple(other)
        return Ideal(self.generators + tuple(extra), self.order, self.nvars)

    def contains(self, p: Polynomial) -> bool:
        return normal_form(p, self).is_zero()

    def __contains__(self, p: Polynomial) -> bool:
        return self.contains(p)

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        if other.order == self.order:
            return self.basis == other.basis
        return all(g in other for g in self.generators) and all(g in self for g in other.generators)

    __hash__ = None

    def __repr__(self):
        return f"Ideal({[str(g) for g in self.generators]})"


def _dedupe(gens):
    seen = set()
    for g in gens:
        c = g.coefficient(max(g.support()))
        key = g.scale(1 / c)
        if key not in seen:
            seen.add(key)
            yield g


def normal_form(p: Polynomial, ideal: Ideal) -> Polynomial:
    if p.nvars != ideal.nvars:
        raise DimensionError(f"polynomial in {p.nvars} variables, ideal in {ideal.nvars}")
    basis = _Basis(ideal.order)
    for g in ideal.basis:
        basis.add(g.terms)
    return Polynomial._raw(_reduce(p.terms, basis), p.nvars)


def _iter_standard(lms: list[tuple], order: MonomialOrder, nvars: int):
    """Standard monomials in increasing order (they form an order ideal, so a
    best-first walk from 1 visits them in order)."""
    start = (0,) * nvars
    if any(_divides(lm, start) for lm in lms):
        return
    heap = [(order.key(start), start)]
    seen = {start}
    while heap:
        _, m = heapq.heappop(heap)
        yield m
        for i in range(nvars):
            nxt = m[:i] + (m[i] + 1,) + m[i + 1:]
            if nxt in seen or any(_divides(lm, nxt) for lm in lms):
                continue
            seen.add(nxt)
            heapq.heappush(heap, (order.key(nxt), nxt))


def is_zero_dimensional(ideal: Ideal) -> bool:
    lms = ideal.leading_monomials()
    for i in range(ideal.nvars):
        if not any(lm[i] > 0 and sum(lm) == lm[i] for lm in lms) and not any(sum(lm) == 0 for lm in lms):
            return False
    return True


def standard_monomials(ideal: Ideal, bound: int | None = None):
    """Monomials outside the leading-term ideal, increasing in the ideal's
    order. Returns ``INFINITE`` for a positive-dimensional ideal unless
    ``bound`` caps the enumeration."""
    lms = ideal.leading_monomials()
    if bound is None and not is_zero_dimensional(ideal):
        return INFINITE
    out = []
    for m in _iter_standard(lms, ideal.order, ideal.nvars):
        if bound is not None and len(out) >= bound:
            break
        out.append(m)
    return out


def colength(ideal: Ideal):
    """dim_Q of Q[x]/I, or INFINITE."""
    sm = standard_monomials(ideal)
    return INFINITE if sm is INFINITE else len(sm)


def power_of_maximal_ideal(nvars: int, N: int) -> list[Polynomial]:
    out = []
    for combo in combinations_with_replacement(range(nvars), N):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(Polynomial._raw({tuple(e): Fraction(1)}, nvars))
    return out


def colength_mod_power(ideal: Ideal, N: int) -> int:
    """dim_Q of Q[x]/(I + m^N); generators are truncated below degree N
    first, which does not change the ideal."""
    if N <= 0:
        return 0
    gens = [g.truncate(N) for g in ideal.generators]
    gens = [g for g in gens if not g.is_zero()] + power_of_maximal_ideal(ideal.nvars, N)
    return colength(Ideal(gens, ideal.order, ideal.nvars))


def _is_primary_to_origin(ideal: Ideal, glob: int) -> bool:
    # x_i is nilpotent in a quotient of dimension glob iff x_i^glob vanishes there
    for i in range(ideal.nvars):
        e = [0] * ideal.nvars
        e[i] = glob
        if not ideal.contains(Polynomial._raw({tuple(e): Fraction(1)}, ideal.nvars)):
            return False
    return True


def local_colength_at_origin(ideal: Ideal, start: int | None = None, trace: list | None = None):
    """dim of O_0 / I O_0 for the local ring O_0 of Q^n at the origin.

    ``start`` overrides the first N of the stabilization scan. A caller that
    knows ``m^start`` lies in ``I O_0`` gets the answer from the first check.
    Returns ``INFINITE`` when the scan keeps growing with non-decreasing
    increments up to the safety bound (the Hilbert-Samuel behaviour of a
    positive-dimensional germ); raises ``SafetyBoundError`` otherwise.
    """
    if ideal.is_unit():
        return 0
    glob = colength(ideal)
    if start is None:
        if glob is not INFINITE:
            if _is_primary_to_origin(ideal, glob):
                return glob
            start = glob + 1
        else:
            start = max(g.total_degree() for g in ideal.generators) + 1
    bound = 4 * start
    N = start
    prev = colength_mod_power(ideal, N)
    seq = [prev]
    while N < bound:
        nxt = colength_mod_power(ideal, N + 1)
        seq.append(nxt)
        N += 1
        if nxt == prev:
            if trace is not None:
                trace.extend(seq)
            return nxt
        prev = nxt
    if trace is not None:
        trace.extend(seq)
    steps = [b - a for a, b in zip(seq, seq[1:])]
    if glob is INFINITE and all(s2 >= s1 for s1, s2 in zip(steps, steps[1:])):
        return INFINITE
    raise SafetyBoundError(f"m-adic stabilization did not settle by N={bound}: {seq}")


def stabilization_index(ideal: Ideal, max_n: int = 200) -> int:
    """Smallest N with colength(I + m^N) == colength(I + m^(N+1)); then
    m^N is contained in I O_0."""
    prev = colength_mod_power(ideal, 1)
    for N in range(1, max_n):
        nxt = colength_mod_power(ideal, N + 1)
        if nxt == prev:
            return N
        prev = nxt
    raise SafetyBoundError(f"no stabilization below N={max_n}")


def saturation_contains_one(gens: Sequence[Polynomial]) -> bool:
    """True iff the polynomials have no common zero in the torus (C*)^n.

    Adjoins z with z*x_1*...*x_n - 1 and checks for the unit ideal.
    """
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return False
    n = gens[0].nvars
    lifted = [Polynomial._raw({e + (0,): c for e, c in g.items()}, n + 1) for g in gens]
    rabinowitsch = Polynomial._raw({(1,) * (n + 1): Fraction(1), (0,) * (n + 1): Fraction(-1)}, n + 1)
    basis = buchberger_reduced(lifted + [rabinowitsch], MonomialOrder.default(n + 1))
    return len(basis) == 1 and basis[0].is_constant()
