from fractions import Fraction
from itertools import product

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from hodgespec.groebner import (
    INFINITE,
    Ideal,
    MonomialOrder,
    buchberger_reduced,
    colength,
    colength_mod_power,
    local_colength_at_origin,
    normal_form,
    saturation_contains_one,
    stabilization_index,
    standard_monomials,
)
from hodgespec.milnor import jacobian_ideal
from hodgespec.poly import Polynomial, WeightSystem, gradient, parse_polynomial

from .oracles import SYMBOLS, macaulay_local_colength, sympy_reduced_basis, to_sympy, torus_zero_by_resultant
from .strategies import exponents, polynomials

XY = ("x", "y")
XYZ = ("x", "y", "z")


def P(text, names=XY):
    return parse_polynomial(text, names)


def test_monomial_generators_normalized():
    assert set(buchberger_reduced([P("2*x"), P("3*y^2")])) == {P("x"), P("y^2")}


def test_jacobian_of_a2():
    assert set(jacobian_ideal(P("x^2+y^3")).basis) == {P("x"), P("y^2")}


def test_twisted_cubic_is_positive_dimensional():
    I = Ideal([P("y - x^2", XYZ), P("z - x^3", XYZ)])
    assert standard_monomials(I) is INFINITE
    assert colength(I) is INFINITE


def test_empty_generators_give_zero_ideal():
    assert buchberger_reduced([]) == []
    assert buchberger_reduced([Polynomial.zero(2)]) == []


def test_normal_form_examples():
    assert normal_form(P("x^2*y"), Ideal([P("x^2")])).is_zero()
    f = P("x^2+y^3")
    assert normal_form(f, jacobian_ideal(f)).is_zero()
    assert normal_form(P("1"), Ideal([P("x"), P("y")])) == 1


def test_standard_monomials_examples():
    assert standard_monomials(Ideal([P("x"), P("y^2")])) == [(0, 0), (0, 1)]
    sm = standard_monomials(Ideal([P("3*x^2"), P("5*y^4")]))
    assert sorted(sm) == sorted(product(range(2), range(4)))
    assert standard_monomials(Ideal([P("x"), P("y")])) == [(0, 0)]


def test_local_colength_examples():
    assert local_colength_at_origin(jacobian_ideal(P("x^2+y^3"))) == 2
    f = P("x^5+x^2*y^2+y^5")
    assert local_colength_at_origin(jacobian_ideal(f)) == 11
    extended = Ideal([P("x") * f, P("y") * f] + gradient(f))
    assert local_colength_at_origin(extended) == 11


def test_local_differs_from_global_for_example():
    f = P("x^5+x^2*y^2+y^5")
    jac = jacobian_ideal(f)
    extended = Ideal([P("x") * f, P("y") * f] + gradient(f))
    assert colength(jac) == 16
    assert colength(extended) == 11
    assert colength(jac) != colength(extended)


def test_non_isolated_is_infinite():
    assert local_colength_at_origin(Ideal([P("x*y^2"), P("x^2*y")])) is INFINITE


def test_saturation_examples():
    assert saturation_contains_one([P("x"), P("y")])
    assert not saturation_contains_one([P("x+y")])


def test_saturation_example_partials_have_torus_zero():
    # both partials vanish on the diagonal at x = y = -2/5
    gens = [P("5*x^4+2*x*y^2"), P("2*x^2*y+5*y^4")]
    pt = (Fraction(-2, 5), Fraction(-2, 5))
    assert all(g.evaluate(pt) == 0 for g in gens)
    assert torus_zero_by_resultant(to_sympy(gens[0]), to_sympy(gens[1]))
    assert not saturation_contains_one(gens)


@pytest.mark.parametrize(
    "gens,expected",
    [
        (["x^2-1", "y"], True),
        (["x^2", "y^3"], True),
        (["x*y-1"], False),
        (["x^3+y^3", "x^2*y"], True),
        (["x+1", "y-2"], False),
        (["x^2+y^2", "x^2-y^2"], True),
    ],
)
def test_saturation_panel(gens, expected):
    polys = [P(g) for g in gens]
    exprs = [to_sympy(p) for p in polys] + [0]
    assert saturation_contains_one(polys) is expected
    assert torus_zero_by_resultant(exprs[0], exprs[1]) is (not expected)


SYMPY_CASES = [
    ["x^2*y - 1", "x*y^2 - x"],
    ["x^3 - 2*x*y", "x^2*y - 2*y^2 + x"],
    ["5*x^4+2*x*y^2", "2*x^2*y+5*y^4"],
    ["x^2+y^2-1", "x-y"],
    ["x*y", "x^3 + y^3 - x"],
]


@pytest.mark.parametrize("gens", SYMPY_CASES)
def test_reduced_basis_matches_sympy(gens):
    polys = [P(g) for g in gens]
    assert set(buchberger_reduced(polys)) == sympy_reduced_basis(polys, 2)


def test_reduced_basis_matches_sympy_three_variables():
    polys = [P(g, XYZ) for g in ["x^2 + y*z - 1", "x*y - z^2", "y^3 - x*z"]]
    assert set(buchberger_reduced(polys)) == sympy_reduced_basis(polys, 3)


@settings(max_examples=25)
@given(st.lists(polynomials(nvars=2, max_terms=3, max_degree=3), min_size=1, max_size=3))
def test_reduced_basis_matches_sympy_random(gens):
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return
    assert set(buchberger_reduced(gens)) == sympy_reduced_basis(gens, 2)


@settings(max_examples=25)
@given(st.lists(polynomials(nvars=2, max_terms=3, max_degree=3), min_size=1, max_size=3))
def test_reduced_basis_properties(gens):
    order = MonomialOrder.default(2)
    G = buchberger_reduced(gens, order)
    lms = [max(g.support(), key=order.key) for g in G]
    for g, lm in zip(G, lms):
        assert g.coefficient(lm) == 1
        for other, olm in zip(G, lms):
            if other is g:
                continue
            # no leading monomial divides any term of another element
            assert not any(all(a <= b for a, b in zip(olm, e)) for e in g.support())
    I = Ideal(gens, order)
    for g in gens:
        assert g in I


@settings(max_examples=30)
@given(
    st.lists(polynomials(nvars=2, max_terms=3, max_degree=3), min_size=1, max_size=2),
    polynomials(nvars=2),
    polynomials(nvars=2),
    st.fractions(max_denominator=5, min_value=-3, max_value=3),
)
def test_normal_form_idempotent_and_linear(gens, p, q, a):
    I = Ideal(gens)
    r = normal_form(p, I)
    assert normal_form(r, I) == r
    assert normal_form(p.scale(a) + q, I) == normal_form(p, I).scale(a) + normal_form(q, I)


@settings(max_examples=20)
@given(
    st.lists(polynomials(nvars=2, max_terms=2, max_degree=3), min_size=1, max_size=2),
    st.lists(polynomials(nvars=2, max_terms=2, max_degree=3), min_size=1, max_size=2),
)
def test_ideal_equality_matches_mutual_membership(g1, g2):
    I, J = Ideal(g1), Ideal(g2)
    mutual = all(g in J for g in I.generators) and all(g in I for g in J.generators)
    assert (I == J) is mutual
    # order-independent comparison agrees
    K = Ideal(g2, MonomialOrder((2, 3), "lex"))
    assert (I == K) is mutual


@given(exponents(3), exponents(3), exponents(3), st.sampled_from(["grevlex", "lex"]), st.tuples(*[st.integers(1, 5)] * 3))
def test_order_axioms(a, b, c, tie, weights):
    order = MonomialOrder(weights, tie)
    ka, kb = order.key(a), order.key(b)
    assert (ka < kb) or (kb < ka) or a == b
    if ka < kb:
        ac = tuple(u + v for u, v in zip(a, c))
        bc = tuple(u + v for u, v in zip(b, c))
        assert order.key(ac) < order.key(bc)
    assert order.key((0, 0, 0)) <= ka


ISOLATED = [
    "x^2+y^3",
    "x^5+x^2*y^2+y^5",
    "x^4+x^2*y^2+y^6",
    "x^3+x*y^3",
    "x^4+y^4+x^3*y^3",
    "x^3+y^4+x^2*y^2",
]


@pytest.mark.parametrize("text", ISOLATED)
def test_local_colength_matches_macaulay_oracle(text):
    f = P(text)
    jac = jacobian_ideal(f)
    tj = Ideal((f,) + jac.generators)
    for I in (jac, tj):
        assert local_colength_at_origin(I) == macaulay_local_colength(list(I.generators))


@pytest.mark.parametrize("text", ISOLATED)
def test_global_at_least_local_and_stabilization(text):
    f = P(text)
    jac = jacobian_ideal(f)
    glob, loc = colength(jac), local_colength_at_origin(jac)
    assert glob >= loc
    N = stabilization_index(jac)
    values = [colength_mod_power(jac, N + i) for i in range(3)]
    assert values == [loc] * 3
    # truncating at smaller powers never exceeds the local value
    assert all(colength_mod_power(jac, k) <= loc for k in range(1, N))


def test_global_equals_local_when_origin_is_only_zero():
    # weighted homogeneous, so the Jacobian vanishes only at the origin
    for text in ["x^2+y^3", "x^3+y^5", "x^2*y+y^4"]:
        jac = jacobian_ideal(P(text))
        assert colength(jac) == local_colength_at_origin(jac)


def test_weighted_order_keys():
    order = MonomialOrder.default(2, WeightSystem.parse("1/2,1/3"))
    assert order.integer_weights == (3, 2)
    assert order.lt((0, 1), (1, 0))
    assert order.lt((1, 0), (0, 2))
