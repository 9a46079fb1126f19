"""Milnor and Tjurina algebras of an isolated hypersurface singularity."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError, NonIsolatedError
from .groebner import (
    INFINITE,
    Ideal,
    MonomialOrder,
    local_colength_at_origin,
    standard_monomials,
)
from .poly import (
    Polynomial,
    WeightSystem,
    format_polynomial,
    gradient,
    monomial_weight,
    require_weighted_homogeneous,
)
from .series import FracLaurent


def jacobian_ideal(f: Polynomial, order: MonomialOrder | None = None) -> Ideal:
    if f.is_zero() or f.is_constant():
        raise InputError("the Jacobian ideal of a constant is not defined here")
    return Ideal(gradient(f), order or MonomialOrder.default(f.nvars), f.nvars)


def tjurina_ideal(f: Polynomial, order: MonomialOrder | None = None) -> Ideal:
    jac = jacobian_ideal(f, order)
    return Ideal((f,) + jac.generators, jac.order, f.nvars)


def _local_or_fail(ideal: Ideal, f: Polynomial, what: str) -> int:
    value = local_colength_at_origin(ideal)
    if value is INFINITE:
        raise NonIsolatedError(f"{format_polynomial(f)} has a non-isolated singularity at the origin ({what} is infinite)")
    return value


def milnor_number(f: Polynomial) -> int:
    return _local_or_fail(jacobian_ideal(f), f, "Milnor number")


def tjurina_number(f: Polynomial) -> int:
    milnor_number(f)  # isolatedness is decided on the Jacobian
    return _local_or_fail(tjurina_ideal(f), f, "Tjurina number")


def monomial_basis_with_weights(f: Polynomial, W: WeightSystem, tie_break: str = "grevlex") -> list[tuple[tuple, Fraction]]:
    """Standard monomials of the Jacobian ideal under the W-weighted order,
    each with its shifted weight, sorted by weight then order."""
    require_weighted_homogeneous(f, W)
    order = MonomialOrder.default(f.nvars, W, tie_break)
    jac = jacobian_ideal(f, order)
    sm = standard_monomials(jac)
    if sm is INFINITE:
        raise NonIsolatedError(f"{format_polynomial(f)} does not have an isolated singularity")
    pairs = [(m, monomial_weight(m, W)) for m in sm]
    pairs.sort(key=lambda p: (p[1], order.key(p[0])))
    return pairs


def hp_from_basis(f: Polynomial, W: WeightSystem) -> FracLaurent:
    return FracLaurent.from_exponents(wt for _, wt in monomial_basis_with_weights(f, W))


@dataclass(frozen=True)
class MilnorData:
    f: Polynomial
    W: WeightSystem | None
    jacobian: Ideal
    basis: tuple  # ((exponent, shifted weight), ...) when W is given
    mu: int
    tau: int

    @property
    def is_quasi_homogeneous(self) -> bool:
        return self.mu == self.tau


def milnor_data(f: Polynomial, W: WeightSystem | None = None) -> MilnorData:
    if W is not None:
        basis = tuple(monomial_basis_with_weights(f, W))
        jac = jacobian_ideal(f, MonomialOrder.default(f.nvars, W))
        # WH with an isolated point: the only common zero is the origin, so
        # global and local colengths agree
        mu = len(basis)
        tau = _local_or_fail(tjurina_ideal(f, jac.order), f, "Tjurina number")
    else:
        basis = ()
        jac = jacobian_ideal(f)
        mu = _local_or_fail(jac, f, "Milnor number")
        tau = _local_or_fail(tjurina_ideal(f), f, "Tjurina number")
    return MilnorData(f=f, W=W, jacobian=jac, basis=basis, mu=mu, tau=tau)
