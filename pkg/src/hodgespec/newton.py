"""Newton polyhedra, the Newton filtration and the non-degenerate
jumping spectra Sp^tau and Sp^mu.

The Newton weight of an exponent is ``h(m) = min_sigma l_sigma(m)`` over
the linear forms of the compact facets, normalized to 1 on the facet. The
shifted filtration puts ``x^m`` in ``O^{>= beta}`` when
``h(m + (1, ..., 1)) >= beta``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Sequence

from .errors import (
    DegenerateError,
    InputError,
    InvariantError,
    NonIsolatedError,
    NotConvenientError,
)
from .groebner import (
    INFINITE,
    Ideal,
    MonomialOrder,
    colength_mod_power,
    local_colength_at_origin,
    saturation_contains_one,
    stabilization_index,
)
from .hodge_wh import JumpingSpectrum, minimal_exponents, monomial_ideal, recursion_step, split_beta
from .milnor import jacobian_ideal, tjurina_ideal
from .poly import Polynomial, as_fraction, format_polynomial, gradient, monomials_in_box, solve_linear
from .series import FracLaurent


@dataclass(frozen=True)
class Face:
    points: tuple  # support exponents on the face
    facets: tuple  # indices of the facet forms equal to 1 on the whole face
    dim: int

    def zero_coordinates(self) -> tuple:
        n = len(self.points[0])
        return tuple(i for i in range(n) if all(p[i] == 0 for p in self.points))


@dataclass(frozen=True)
class NewtonBoundary:
    nvars: int
    facets: tuple  # coefficient vectors c with c . m = 1 on the facet
    compact_faces: tuple
    convenient: bool
    support: tuple

    def h(self, m: Sequence) -> Fraction:
        return h_value(self, m)


def _check_support(f: Polynomial):
    if f.is_zero():
        raise InputError("zero polynomial has no Newton polyhedron")
    if f.nvars > 3:
        raise InputError(f"Newton polyhedra are supported for at most 3 variables, got {f.nvars}")
    if f.coefficient((0,) * f.nvars):
        raise InputError("f must vanish at the origin")


def is_convenient(f: Polynomial) -> bool:
    n = f.nvars
    return all(any(m[i] > 0 and sum(m) == m[i] for m in f.support()) for i in range(n))


def _lower_chain(points: list[tuple]) -> list[tuple]:
    pts = sorted(set(points))
    hull: list[tuple] = []
    for p in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            cross = (x2 - x1) * (p[1] - y1) - (y2 - y1) * (p[0] - x1)
            if cross <= 0:
                hull.pop()
            else:
                break
        hull.append(p)
    chain = []
    for p in hull:
        chain.append(p)
        if p[1] == 0:
            break
    return chain


def _facets_2d(support: list[tuple]) -> list[tuple]:
    chain = _lower_chain(support)
    forms = []
    for p, q in zip(chain, chain[1:]):
        forms.append(tuple(solve_linear([p, q], [1, 1])))
    return forms


def _facets_nd(support: list[tuple], n: int) -> list[tuple]:
    forms = set()
    for combo in combinations(support, n):
        c = solve_linear(combo, [1] * n)
        if c is None or any(ci <= 0 for ci in c):
            continue
        if all(sum(ci * mi for ci, mi in zip(c, m)) >= 1 for m in support):
            forms.add(tuple(c))
    return sorted(forms, key=lambda c: tuple(-x for x in c))


def _value(c, m) -> Fraction:
    return sum((ci * mi for ci, mi in zip(c, m)), Fraction(0))


def newton_boundary(f: Polynomial) -> NewtonBoundary:
    _check_support(f)
    n = f.nvars
    if not is_convenient(f):
        raise NotConvenientError(f"{format_polynomial(f)} is not convenient: it lacks a pure power of some variable")
    support = sorted(f.support())
    if n == 1:
        facets = [(Fraction(1, min(m[0] for m in support)),)]
    elif n == 2:
        facets = _facets_2d(support)
    else:
        facets = _facets_nd(support, n)
    on = [tuple(m for m in support if _value(c, m) == 1) for c in facets]

    faces: dict = {}

    def add(points, dim):
        points = tuple(sorted(points))
        if not points or any(all(p[i] == 0 for p in points) for i in range(n)):
            return  # contained in a coordinate hyperplane
        tight = tuple(j for j, c in enumerate(facets) if all(_value(c, p) == 1 for p in points))
        faces.setdefault(points, Face(points, tight, dim))

    for pts in on:
        add(pts, n - 1)
    if n == 3:
        for a, b in combinations(range(len(facets)), 2):
            common = set(on[a]) & set(on[b])
            if len(common) >= 2:
                add(common, 1)
    if n >= 2:
        for pts in on:
            for p in pts:
                tight = [c for c in facets if _value(c, p) == 1]
                axes = [tuple(int(i == j) for j in range(n)) for i in range(n) if p[i] == 0]
                if _rank(tight + axes) == n:
                    add([p], 0)
    compact = tuple(sorted(faces.values(), key=lambda F: (-F.dim, F.points)))
    return NewtonBoundary(nvars=n, facets=tuple(facets), compact_faces=compact, convenient=True, support=tuple(support))


def _rank(rows) -> int:
    rows = [[Fraction(v) for v in r] for r in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                fac = rows[i][col] / rows[rank][col]
                rows[i] = [a - fac * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def h_value(nb: NewtonBoundary, m: Sequence) -> Fraction:
    m = [as_fraction(x) for x in m]
    if len(m) != nb.nvars:
        raise InputError(f"point of length {len(m)} for {nb.nvars} variables")
    if any(x < 0 for x in m):
        raise InputError(f"h is defined on the closed positive orthant, got {m}")
    return min(_value(c, m) for c in nb.facets)


def in_cone(nb: NewtonBoundary, face: Face, m: Sequence) -> bool:
    """Whether ``m`` lies in the cone over ``face``: every facet tight on the
    face attains the minimum defining h at ``m``."""
    if any(m[i] for i in face.zero_coordinates()):
        return False
    h = h_value(nb, m)
    return all(_value(nb.facets[j], m) == h for j in face.facets)


def face_polynomial(f: Polynomial, nb: NewtonBoundary, face: Face, rule: str = "face") -> Polynomial:
    """Part of ``f`` supported on ``face`` (rule "face"), or on the whole cone
    over it (rule "cone"). The cone meets {h = 1} exactly in the face."""
    if rule not in ("face", "cone"):
        raise ValueError(f"unknown rule {rule!r}")
    keep = {}
    for m, c in f.items():
        if in_cone(nb, face, m) and (rule == "cone" or h_value(nb, m) == 1):
            keep[m] = c
    return Polynomial._raw(keep, f.nvars)


@dataclass
class NondegeneracyReport:
    f: Polynomial
    faces: list  # (Face, face polynomial, ok)

    @property
    def nondegenerate(self) -> bool:
        return all(ok for _, _, ok in self.faces)

    def to_json(self, names=None) -> dict:
        return {
            "nondegenerate": self.nondegenerate,
            "faces": [
                {
                    "points": [list(p) for p in face.points],
                    "dim": face.dim,
                    "face_polynomial": format_polynomial(fs, names),
                    "ok": ok,
                }
                for face, fs, ok in self.faces
            ],
        }


def nondegeneracy_check(f: Polynomial, nb: NewtonBoundary | None = None, rule: str = "face") -> NondegeneracyReport:
    nb = nb or newton_boundary(f)
    rows = []
    for face in nb.compact_faces:
        fs = face_polynomial(f, nb, face, rule)
        rows.append((face, fs, saturation_contains_one(gradient(fs))))
    return NondegeneracyReport(f=f, faces=rows)


# -- Newton filtration -----------------------------------------------------------


def _axis_bounds(nb: NewtonBoundary, beta: Fraction) -> list[int]:
    out = []
    for i in range(nb.nvars):
        cmin = min(c[i] for c in nb.facets if c[i] > 0)
        out.append(max(0, math.ceil(beta / cmin) + 1))
    return out


@lru_cache(maxsize=64)
def _levels(nb: NewtonBoundary, bounds: tuple) -> dict:
    # h(m + 1) for every exponent in the box
    return {m: min(_value(c, [a + 1 for a in m]) for c in nb.facets) for m in monomials_in_box(bounds)}


@lru_cache(maxsize=4096)
def filtration_exponents_nd(nb: NewtonBoundary, beta) -> tuple:
    beta = as_fraction(beta)
    ones = (1,) * nb.nvars
    if h_value(nb, ones) >= beta:
        return ((0,) * nb.nvars,)
    levels = _levels(nb, tuple(_axis_bounds(nb, beta)))
    return tuple(minimal_exponents(m for m, lv in levels.items() if lv >= beta))


def filtration_ideal_nd(nb: NewtonBoundary, beta, order: MonomialOrder | None = None) -> Ideal:
    order = order or MonomialOrder.default(nb.nvars)
    return monomial_ideal(filtration_exponents_nd(nb, as_fraction(beta)), nb.nvars, order)


# -- non-degenerate Hodge ideals and jumping spectra ------------------------------


@dataclass
class NDContext:
    """Data shared by every computation on one non-degenerate germ."""

    f: Polynomial
    boundary: NewtonBoundary
    nondegeneracy: NondegeneracyReport
    order: MonomialOrder
    jacobian: Ideal
    tjurina: Ideal
    mu: int
    tau: int
    power: int  # m^power lies in <df> O_0


def nd_context(f: Polynomial, require_nondegenerate: bool = True) -> NDContext:
    nb = newton_boundary(f)
    report = nondegeneracy_check(f, nb)
    if require_nondegenerate and not report.nondegenerate:
        bad = [list(map(list, face.points)) for face, _, ok in report.faces if not ok]
        raise DegenerateError(f"{format_polynomial(f)} is degenerate on faces {bad}")
    order = MonomialOrder.default(f.nvars)
    jac = jacobian_ideal(f, order)
    mu = local_colength_at_origin(jac)
    if mu is INFINITE:
        raise NonIsolatedError(f"{format_polynomial(f)} has a non-isolated singularity at the origin")
    tjur = tjurina_ideal(f, order)
    tau = local_colength_at_origin(tjur)
    power = stabilization_index(jac)
    return NDContext(f, nb, report, order, jac, tjur, mu, tau, power)


def hodge_ideal_nd(f: Polynomial, k: int, alpha, ctx: NDContext | None = None) -> Ideal:
    alpha = as_fraction(alpha)
    if not 0 < alpha <= 1:
        raise InputError(f"alpha must lie in (0, 1], got {alpha}")
    if k < 0:
        raise InputError(f"k must be non-negative, got {k}")
    ctx = ctx or nd_context(f)
    return Ideal(_hodge_generators(ctx, k, alpha), ctx.order, f.nvars)


def _hodge_generators(ctx: NDContext, k: int, alpha: Fraction, prune: bool = False) -> list[Polynomial]:
    f, nb = ctx.f, ctx.boundary
    gens = list(monomial_ideal(filtration_exponents_nd(nb, alpha), f.nvars, ctx.order).generators)
    for j in range(1, k + 1):
        level = monomial_ideal(filtration_exponents_nd(nb, alpha + j), f.nvars, ctx.order).generators
        if prune:
            # f has order >= 2, so the recursion maps m^power into m^power:
            # such generators cannot matter modulo m^power
            gens = [g for g in gens if min(sum(e) for e in g.support()) < ctx.power]
        gens = list(level) + recursion_step(f, gens, alpha + j - 1)
    return gens


def _local(ctx: NDContext, gens) -> int:
    # every ideal here contains <df>, and m^power lies in <df> O_0
    return colength_mod_power(Ideal(gens, ctx.order, ctx.f.nvars), ctx.power)


def j_colengths_nd(ctx: NDContext, beta) -> dict:
    """Local colengths of J^tau (both routes) and J^mu at ``beta``."""
    k, alpha = split_beta(beta)
    hodge = _hodge_generators(ctx, k, alpha, prune=True)
    jac = list(ctx.jacobian.generators)
    tau_rec = _local(ctx, hodge + [ctx.f] + jac)
    level = monomial_ideal(filtration_exponents_nd(ctx.boundary, as_fraction(beta)), ctx.f.nvars, ctx.order)
    tau_id = _local(ctx, list(level.generators) + [ctx.f] + jac)
    mu = _local(ctx, hodge + jac)
    return {"tau_recursion": tau_rec, "tau_identity": tau_id, "mu": mu}


@dataclass
class NDSpectra:
    tau: JumpingSpectrum
    mu: JumpingSpectrum
    mu_monotone: bool
    mu_violations: list
    refinement_requests: list
    probes: dict = field(default_factory=dict)
    mu_f: int = 0
    tau_f: int = 0


def candidate_grid(nb: NewtonBoundary) -> list[Fraction]:
    n = nb.nvars
    top = Fraction(n + 1)
    levels = _levels(nb, tuple(_axis_bounds(nb, top)))
    values = {lv for lv in levels.values() if 0 < lv <= top}
    shifted = {v + j for v in values for j in range(0, n + 1) if v + j <= top}
    return sorted(shifted)


def sp_tau_mu_nd(f: Polynomial, ctx: NDContext | None = None) -> NDSpectra:
    ctx = ctx or nd_context(f)
    cands = candidate_grid(ctx.boundary)
    gaps = [b - a for a, b in zip(cands, cands[1:])]
    eps = min(gaps) / 2 if gaps else Fraction(1, 2)
    mids = [(a + b) / 2 for a, b in zip(cands, cands[1:])]
    probes_at = sorted(set(cands) | {c + eps for c in cands} | set(mids))

    probes: dict = {}
    for beta in probes_at:
        row = j_colengths_nd(ctx, beta)
        if row["tau_recursion"] != row["tau_identity"]:
            raise InvariantError(
                f"J^tau routes disagree at beta={beta}: {row}",
                {"f": format_polynomial(f), "beta": str(beta), **row},
            )
        probes[beta] = row

    def spectrum(key):
        sp = {}
        for b in cands:
            jump = probes[b + eps][key] - probes[b][key]
            if jump:
                sp[b] = jump
        return FracLaurent(sp)

    refinement = []
    for a, b, mid in zip(cands, cands[1:], mids):
        for key in ("tau_recursion", "mu"):
            vals = {probes[a + eps][key], probes[mid][key], probes[b][key]}
            if len(vals) > 1:
                refinement.append({"interval": [str(a), str(b)], "variant": key})
    if cands and probes[cands[0]]["mu"] != 0:
        refinement.append({"interval": ["0", str(cands[0])], "variant": "mu"})

    mu_seq = [(b, probes[b]["mu"]) for b in probes_at]
    violations = [str(b2) for (b1, c1), (b2, c2) in zip(mu_seq, mu_seq[1:]) if c2 < c1]

    tau_col = {b: r["tau_recursion"] for b, r in probes.items()}
    mu_col = {b: r["mu"] for b, r in probes.items()}
    boundary = [b for b in cands if split_beta(b)[1] in set(_levels_values(ctx.boundary))]
    return NDSpectra(
        tau=JumpingSpectrum(cands, tau_col, spectrum("tau_recursion"), boundary),
        mu=JumpingSpectrum(cands, mu_col, spectrum("mu"), boundary),
        mu_monotone=not violations,
        mu_violations=violations,
        refinement_requests=refinement,
        probes=probes,
        mu_f=ctx.mu,
        tau_f=ctx.tau,
    )


def _levels_values(nb: NewtonBoundary):
    return {lv for lv in _levels(nb, tuple(_axis_bounds(nb, Fraction(1)))).values()}


@dataclass
class QuestionReport:
    f: Polynomial
    sp_tau_at_one: int
    tau: int
    sp_mu_at_one: int
    mu: int
    mu_monotone: bool
    mu_violations: list
    stabilized: bool
    stabilization_beta: Fraction
    refinement_requests: list

    @property
    def tjurina_question_holds(self) -> bool:
        return self.sp_tau_at_one == self.tau

    @property
    def milnor_question_holds(self) -> bool:
        return self.mu_monotone and self.sp_mu_at_one == self.mu

    def lines(self) -> list[str]:
        def mark(ok):
            return "yes" if ok else "NO"

        return [
            f"Sp_tau(1) = {self.sp_tau_at_one}, tau_f = {self.tau}: equal {mark(self.tjurina_question_holds)}",
            f"J^tau_beta = <f, df> for beta >= {self.stabilization_beta}: {mark(self.stabilized)}",
            f"J^mu decreasing on grid: {mark(self.mu_monotone)}"
            + (f" (violations at {', '.join(self.mu_violations)})" if self.mu_violations else ""),
            f"Sp_mu(1) = {self.sp_mu_at_one}, mu_f = {self.mu}: equal {mark(self.sp_mu_at_one == self.mu)}",
        ]


def question_checks(f: Polynomial, ctx: NDContext | None = None, spectra: NDSpectra | None = None) -> QuestionReport:
    ctx = ctx or nd_context(f)
    spectra = spectra or sp_tau_mu_nd(f, ctx)
    cands = spectra.tau.candidates
    beyond = cands[-1] + (cands[-1] - cands[-2]) / 2 if len(cands) > 1 else cands[-1] + 1
    row = j_colengths_nd(ctx, beyond)
    # J^tau contains <f, df>, so equal local colength means equal germs
    stabilized = row["tau_recursion"] == ctx.tau
    return QuestionReport(
        f=f,
        sp_tau_at_one=spectra.tau.sp.eval_at_one(),
        tau=ctx.tau,
        sp_mu_at_one=spectra.mu.sp.eval_at_one(),
        mu=ctx.mu,
        mu_monotone=spectra.mu_monotone,
        mu_violations=spectra.mu_violations,
        stabilized=stabilized,
        stabilization_beta=beyond,
        refinement_requests=spectra.refinement_requests,
    )
