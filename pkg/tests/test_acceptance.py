"""Acceptance criteria. Each test records one PASS/FAIL line; the lines are
printed in the terminal summary (see conftest.py)."""

import random
from fractions import Fraction

import pytest

from hodgespec.errors import SpectrumFormulaError
from hodgespec.groebner import Ideal, colength, local_colength_at_origin
from hodgespec.hodge_wh import j_ideal_wh, sp_tau_wh, verify_main_theorem
from hodgespec.milnor import jacobian_ideal, milnor_data, milnor_number, tjurina_number
from hodgespec.newton import filtration_ideal_nd, newton_boundary, nondegeneracy_check, question_checks, sp_tau_mu_nd
from hodgespec.poly import WeightSystem, gradient, infer_weights, parse_polynomial
from hodgespec.series import FracLaurent, spectrum_formula

from .oracles import degenerate_by_resultant

RESULTS: list[str] = []
XY = ("x", "y")
XYZ = ("x", "y", "z")


def record(number, title, ok, detail=""):
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'} - {title}"
    if detail:
        line += f" ({detail})"
    RESULTS.append(line)
    print(line)
    assert ok, line


def P(text, names=XY):
    return parse_polynomial(text, names)


def cross_closed_form(r, s):
    half = Fraction(1, 2)
    return FracLaurent.from_exponents(
        [half + Fraction(i, r) for i in range(1, r)] + [half + Fraction(j, s) for j in range(1, s)] + [half, Fraction(1), Fraction(3, 2)]
    )


def test_criterion_1_cross_5_5_golden():
    f = P("x^5+x^2*y^2+y^5")
    spectra = sp_tau_mu_nd(f)
    sp_tau = FracLaurent.parse("t^(1/2) + 2*t^(7/10) + 2*t^(9/10) + t + 2*t^(11/10) + 2*t^(13/10)")
    sp_mu = sp_tau + FracLaurent.parse("t^(17/10)")
    ok = (
        spectra.tau.sp == sp_tau
        and spectra.mu.sp == sp_mu
        and spectra.tau.sp.eval_at_one() == 10 == tjurina_number(f)
        and spectra.mu.sp.eval_at_one() == 11 == milnor_number(f)
    )
    record(1, "x^5+x^2y^2+y^5 Sp^tau and Sp^mu golden", ok, f"Sp^tau = {spectra.tau.sp}; Sp^mu = {spectra.mu.sp}")


def test_criterion_2_cross_family_golden():
    details, ok = [], True
    for r, s in [(4, 6), (5, 6), (5, 5)]:
        f = P(f"x^{r}+x^2*y^2+y^{s}")
        sp_tau = sp_tau_mu_nd(f).tau.sp
        mu, tau = milnor_number(f), tjurina_number(f)
        diff = cross_closed_form(r, s) - sp_tau
        good = diff == FracLaurent.parse("t^(3/2)") and sp_tau.eval_at_one() == tau == mu - 1
        ok &= good
        details.append(f"(r,s)=({r},{s}): Sp_f - Sp^tau = {diff}, tau={tau}, mu={mu}")
    record(2, "x^r+x^2y^2+y^s Sp_f - Sp^tau = t^(3/2)", ok, "; ".join(details))


MAIN_SUITE = (
    [(f"x^{a}+y^{b}", XY) for a in range(2, 8) for b in range(a, 8)]
    + [
        ("x^2+y^3+z^4", XYZ),
        ("x^2+y^3+z^5", XYZ),
        ("x^3+y^3+z^3", XYZ),
        ("x^2+y^2+z^5", XYZ),
        ("x^3+y^3+z^4", XYZ),
        ("x^2*y+y^4", XY),
        ("x^2*y+y^5", XY),
        ("x^3+x*y^3", XY),
        ("x^3*y+y^4", XY),
        ("x^2*y+y^3+z^3", XYZ),
    ]
)


def test_criterion_3_main_theorem_suite():
    failures = []
    for text, names in MAIN_SUITE:
        f = P(text, names)
        report = verify_main_theorem(f, infer_weights(f))
        if not report.passed:
            failures.append(f"{text}: {report.summary()}")
    record(3, "Sp_f = P_f = Sp^tau on the WH suite", not failures and len(MAIN_SUITE) >= 20, f"{len(MAIN_SUITE)} polynomials" + ("; " + "; ".join(failures) if failures else ""))


def test_criterion_4_recursion_matches_oracle():
    checked, mismatches = 0, []
    for text, names in MAIN_SUITE:
        f = P(text, names)
        W = infer_weights(f)
        data = milnor_data(f, W)
        eps = Fraction(1, 2 * W.lcm_denominator)
        for beta in sorted({wt for _, wt in data.basis}):
            for b in (beta, beta + eps):
                rec = local_colength_at_origin(j_ideal_wh(f, W, b, "recursion", data))
                ora = local_colength_at_origin(j_ideal_wh(f, W, b, "oracle", data))
                checked += 1
                if rec != ora:
                    mismatches.append(f"{text} at {b}: {rec} != {ora}")
    record(4, "recursion J_beta matches <B^{>=beta}> + <df>", not mismatches, f"{checked} probes" + ("; " + "; ".join(mismatches) if mismatches else ""))


def random_weight_systems(count=50, seed=20240517):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.randint(1, 4)
        ws = tuple(Fraction(rng.randint(1, q - 1), q) for q in (rng.randint(2, 9) for _ in range(n)))
        try:
            spectrum_formula(WeightSystem(ws))
        except SpectrumFormulaError:
            continue
        out.append(WeightSystem(ws))
    return out


def test_criterion_5_spectrum_symmetry():
    systems = random_weight_systems()
    bad = []
    for W in systems:
        sp = spectrum_formula(W)
        if sp.reflect(W.n) != sp or not all(0 < q < W.n for q in sp.exponents()):
            bad.append(str(W))
    non_brieskorn = sum(any(w.numerator != 1 for w in W.weights) for W in systems)
    record(5, "spectrum symmetric under a -> n - a, support in (0, n)", not bad and len(systems) == 50, f"50 systems, {non_brieskorn} with a non-unit numerator" + ("; bad: " + ", ".join(bad) if bad else ""))


def test_criterion_6_local_ring():
    f = P("x^5+x^2*y^2+y^5")
    jac = jacobian_ideal(f)
    ext = Ideal([P("x") * f, P("y") * f] + gradient(f))
    local_jac, local_ext = local_colength_at_origin(jac), local_colength_at_origin(ext)
    global_jac, global_ext = colength(jac), colength(ext)
    ok = local_jac == local_ext == 11 and global_jac != global_ext
    record(6, "local colengths agree, global colengths differ", ok, f"local {local_ext} and {local_jac}; global {global_ext} and {global_jac}")


ND_PANEL = [
    ("x^5+x^2*y^2+y^5", True),
    ("x^2+2*x*y+y^2", False),
    ("x^2+y^3", True),
    ("x^4+x^2*y^2+y^6", True),
    ("x^2+2*x*y^2+y^4", False),
    ("x^4-2*x^2*y^2+y^4", False),
    ("x^4+x*y+y^4", True),
    ("x^3+x^2*y+x*y^2+y^3", True),
    ("x^3+3*x^2*y+3*x*y^2+y^3", False),
    ("x^3+x*y^3+y^5", True),
]


def test_criterion_7_nondegeneracy_oracle():
    disagreements = []
    for text, expected in ND_PANEL:
        f = P(text)
        nb = newton_boundary(f)
        mine = nondegeneracy_check(f, nb).nondegenerate
        oracle = not degenerate_by_resultant(f, [face.points for face in nb.compact_faces])
        if not mine == oracle == expected:
            disagreements.append(f"{text}: check={mine} oracle={oracle} expected={expected}")
    record(7, "non-degeneracy agrees with the resultant oracle", not disagreements, f"{len(ND_PANEL)} polynomials" + ("; " + "; ".join(disagreements) if disagreements else ""))


def test_criterion_8_filtration_golden():
    def gens(text, beta):
        nb = newton_boundary(P(text))
        return {str(g) for g in filtration_ideal_nd(nb, beta).generators}

    cross46 = gens("x^4+x^2*y^2+y^6", Fraction(3, 2))
    cross55 = gens("x^5+x^2*y^2+y^5", Fraction(3, 2))
    ok = cross46 == {"x^4", "x^3*y", "x^2*y^2", "x*y^4", "y^6"} and cross55 == {"x^5", "x^4*y", "x^2*y^2", "x*y^4", "y^5"}
    record(8, "O^{>=3/2} generators for x^4+x^2y^2+y^6 and x^5+x^2y^2+y^5", ok, f"(4,6): {sorted(cross46)}; (5,5): {sorted(cross55)}")


QUESTION_PANEL = ["x^5+x^2*y^2+y^5", "x^4+x^2*y^2+y^6", "x^5+x^2*y^2+y^6", "x^2+y^3", "x^3+y^4", "x^4+y^4+x^3*y^3"]


def test_criterion_9_question_reports():
    ok, notes = True, []
    for text in QUESTION_PANEL:
        report = question_checks(P(text))
        if report.stabilized and not report.tjurina_question_holds:
            ok = False
        if report.mu_violations or report.refinement_requests:
            notes.append(f"{text}: J^mu violations {report.mu_violations}, refinement {report.refinement_requests}")
        if text == "x^5+x^2*y^2+y^5":
            ok &= report.mu_monotone and report.stabilized and report.tjurina_question_holds
        notes.append(f"{text}: Sp^tau(1)={report.sp_tau_at_one} tau={report.tau} stabilized={report.stabilized} monotone={report.mu_monotone}")
    record(9, "Sp^tau(1) = tau_f where J_beta stabilizes; J^mu monotone for x^5+x^2y^2+y^5", ok, "; ".join(notes))
