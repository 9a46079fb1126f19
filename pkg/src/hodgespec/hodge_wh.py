"""Hodge ideals and jumping ideals of weighted homogeneous isolated
singularities.

For ``beta = k + alpha`` with ``alpha`` in (0, 1] the jumping ideal is
``J_beta = I_k(alpha Z) + <df>``, where the Hodge ideals come from the
recursion

    I_0 = O^{>= alpha}
    I_k = <B^{>= k+alpha}> + < f d_i g - (alpha+k-1) g d_i f,  f g >

with ``g`` running over generators of ``I_{k-1}`` and ``B`` the weighted
monomial basis of the Milnor algebra. The ``f g`` generators make the
generator-wise recursion equal to the sum over the whole ideal:
``f d_i(r g) - c r g d_i f = r (f d_i g - c g d_i f) + f g d_i r``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import InputError, InvariantError
from .groebner import Ideal, MonomialOrder, local_colength_at_origin
from .milnor import MilnorData, hp_from_basis, milnor_data
from .poly import (
    Polynomial,
    WeightSystem,
    as_fraction,
    gradient,
    monomial_weight,
    monomials_in_box,
    partial_derivative,
    require_weighted_homogeneous,
)
from .series import FracLaurent, spectrum_formula


def split_beta(beta) -> tuple[int, Fraction]:
    """``beta = k + alpha`` with ``alpha`` in (0, 1] and integer ``k >= 0``."""
    beta = as_fraction(beta)
    if beta <= 0:
        raise InputError(f"beta must be positive, got {beta}")
    k = math.ceil(beta) - 1
    return k, beta - k


def minimal_exponents(exps) -> list[tuple]:
    """Divisibility-minimal elements of a set of exponents."""
    exps = sorted(set(exps), key=lambda e: (sum(e), e))
    out: list[tuple] = []
    for e in exps:
        if not any(all(a <= b for a, b in zip(g, e)) for g in out):
            out.append(e)
    return out


def monomial_ideal(exps, nvars: int, order: MonomialOrder) -> Ideal:
    gens = [Polynomial._raw({tuple(e): Fraction(1)}, nvars) for e in exps]
    return Ideal(gens, order, nvars)


def filtration_exponents_wh(W: WeightSystem, beta) -> list[tuple]:
    beta = as_fraction(beta)
    if beta <= W.w:
        return [(0,) * W.n]
    bounds = [max(0, math.ceil((beta - W.w) / wi) + 1) for wi in W.weights]
    hits = (m for m in monomials_in_box(bounds) if monomial_weight(m, W) >= beta)
    return minimal_exponents(hits)


def filtration_ideal_wh(W: WeightSystem, beta) -> Ideal:
    """Monomial ideal O^{>= beta} of the shifted weight filtration."""
    return monomial_ideal(filtration_exponents_wh(W, beta), W.n, MonomialOrder.default(W.n, W))


@dataclass(frozen=True)
class HodgeIdealWH:
    k: int
    alpha: Fraction
    ideal: Ideal
    provenance: str = "recursion"


def recursion_step(f: Polynomial, gens, coefficient: Fraction) -> list[Polynomial]:
    """Images of ``a -> f d_i a - c a d_i f`` on ``gens`` plus ``f a``."""
    df = gradient(f)
    out = []
    for g in gens:
        for i in range(f.nvars):
            out.append(f * partial_derivative(g, i) - g * df[i] * coefficient)
        out.append(f * g)
    return [p for p in out if not p.is_zero()]


def _check_alpha(alpha) -> Fraction:
    alpha = as_fraction(alpha)
    if not 0 < alpha <= 1:
        raise InputError(f"alpha must lie in (0, 1], got {alpha}")
    return alpha


def hodge_ideal_wh(f: Polynomial, W: WeightSystem, k: int, alpha, data: MilnorData | None = None) -> HodgeIdealWH:
    alpha = _check_alpha(alpha)
    if k < 0:
        raise InputError(f"k must be non-negative, got {k}")
    require_weighted_homogeneous(f, W)
    order = MonomialOrder.default(f.nvars, W)
    gens = list(filtration_ideal_wh(W, alpha).generators)
    if k > 0:
        data = data or milnor_data(f, W)
    for j in range(1, k + 1):
        level = j + alpha
        basis_part = [Polynomial._raw({m: Fraction(1)}, f.nvars) for m, wt in data.basis if wt >= level]
        gens = basis_part + recursion_step(f, gens, alpha + j - 1)
    return HodgeIdealWH(k=k, alpha=alpha, ideal=Ideal(gens, order, f.nvars))


def j_ideal_wh(f: Polynomial, W: WeightSystem, beta, method: str = "recursion", data: MilnorData | None = None) -> Ideal:
    k, alpha = split_beta(beta)
    beta = as_fraction(beta)
    data = data or milnor_data(f, W)
    jac = data.jacobian
    if method == "recursion":
        hodge = hodge_ideal_wh(f, W, k, alpha, data).ideal
        return Ideal(hodge.generators + jac.generators, jac.order, f.nvars)
    if method == "oracle":
        upper = [Polynomial._raw({m: Fraction(1)}, f.nvars) for m, wt in data.basis if wt >= beta]
        return Ideal(upper + list(jac.generators), jac.order, f.nvars)
    raise ValueError(f"unknown method {method!r}")


@dataclass
class JumpingSpectrum:
    candidates: list
    colengths: dict  # probe beta -> local colength
    sp: FracLaurent
    boundary: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "spectrum": self.sp.to_json(),
            "text": str(self.sp),
            "candidates": [str(b) for b in self.candidates],
            "colengths": {str(b): c for b, c in sorted(self.colengths.items())},
            "boundary": [str(b) for b in self.boundary],
            "notes": list(self.notes),
        }


def _is_weight_boundary(W: WeightSystem, alpha: Fraction) -> bool:
    # alpha equals the shifted weight of some monomial
    bounds = [max(0, math.ceil((alpha - W.w) / wi)) for wi in W.weights]
    return any(monomial_weight(m, W) == alpha for m in monomials_in_box(bounds))


def sp_tau_wh(f: Polynomial, W: WeightSystem, data: MilnorData | None = None) -> JumpingSpectrum:
    """Colength jumps of ``J_beta`` at the weights of ``B``, computed by the
    Hodge-ideal recursion and cross-checked against ``<B^{>=beta}> + <df>``."""
    data = data or milnor_data(f, W)
    eps = Fraction(1, 2 * W.lcm_denominator)
    candidates = sorted({wt for _, wt in data.basis})
    colengths: dict = {}

    def colength_at(beta):
        if beta not in colengths:
            rec = local_colength_at_origin(j_ideal_wh(f, W, beta, "recursion", data))
            ora = local_colength_at_origin(j_ideal_wh(f, W, beta, "oracle", data))
            if rec != ora:
                raise InvariantError(
                    f"recursion and oracle jumping ideals differ at beta={beta}: {rec} != {ora}",
                    {"f": str(f), "weights": str(W), "beta": str(beta), "recursion": rec, "oracle": ora},
                )
            colengths[beta] = rec
        return colengths[beta]

    sp: dict = {}
    boundary = []
    for beta in candidates:
        jump = colength_at(beta + eps) - colength_at(beta)
        if jump:
            sp[beta] = jump
        k, alpha = split_beta(beta)
        if _is_weight_boundary(W, alpha):
            boundary.append(beta)
    return JumpingSpectrum(candidates=candidates, colengths=colengths, sp=FracLaurent(sp), boundary=boundary)


@dataclass
class MainTheoremReport:
    f: Polynomial
    W: WeightSystem
    spectrum: FracLaurent
    hilbert_poincare: FracLaurent
    sp_tau: FracLaurent
    mu: int
    tau: int
    boundary: list

    @property
    def passed(self) -> bool:
        return self.spectrum == self.hilbert_poincare == self.sp_tau

    def summary(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        relation = "==" if self.passed else "vs"
        return f"{verdict}: Sp_f {relation} P_f {relation} Sp_tau (mass {self.sp_tau.eval_at_one()})"


def verify_main_theorem(f: Polynomial, W: WeightSystem) -> MainTheoremReport:
    data = milnor_data(f, W)
    jumping = sp_tau_wh(f, W, data)
    return MainTheoremReport(
        f=f,
        W=W,
        spectrum=spectrum_formula(W),
        hilbert_poincare=hp_from_basis(f, W),
        sp_tau=jumping.sp,
        mu=data.mu,
        tau=data.tau,
        boundary=jumping.boundary,
    )
