"""Recompute the two worked non-degenerate examples (x^r + x^2 y^2 + y^s)
and print Sp_f, Sp^tau, Sp^mu, mu, tau and the question checks.

    python scripts/reproduce_examples.py [--json out.json]
"""

import argparse
import json
from dataclasses import asdict, dataclass
from fractions import Fraction

from hodgespec.milnor import milnor_number, tjurina_number
from hodgespec.newton import filtration_ideal_nd, nd_context, question_checks, sp_tau_mu_nd
from hodgespec.poly import parse_polynomial
from hodgespec.series import FracLaurent


@dataclass
class ExampleConfig:
    r: int
    s: int
    filtration_levels: tuple = (Fraction(3, 2),)


@dataclass
class ExampleResult:
    polynomial: str
    mu: int
    tau: int
    sp_f: str
    sp_tau: str
    sp_mu: str
    sp_f_minus_sp_tau: str
    filtration: dict
    questions: list


def closed_form(r: int, s: int) -> FracLaurent:
    half = Fraction(1, 2)
    exps = [half + Fraction(i, r) for i in range(1, r)]
    exps += [half + Fraction(j, s) for j in range(1, s)]
    exps += [half, Fraction(1), Fraction(3, 2)]
    return FracLaurent.from_exponents(exps)


def run(cfg: ExampleConfig) -> ExampleResult:
    text = f"x^{cfg.r}+x^2*y^2+y^{cfg.s}"
    f = parse_polynomial(text, ("x", "y"))
    ctx = nd_context(f)
    spectra = sp_tau_mu_nd(f, ctx)
    sp_f = closed_form(cfg.r, cfg.s)
    filtration = {
        str(beta): sorted(str(g) for g in filtration_ideal_nd(ctx.boundary, beta).generators)
        for beta in cfg.filtration_levels
    }
    return ExampleResult(
        polynomial=text,
        mu=milnor_number(f),
        tau=tjurina_number(f),
        sp_f=str(sp_f),
        sp_tau=str(spectra.tau.sp),
        sp_mu=str(spectra.mu.sp),
        sp_f_minus_sp_tau=str(sp_f - spectra.tau.sp),
        filtration=filtration,
        questions=question_checks(f, ctx, spectra).lines(),
    )


CONFIGS = [
    ExampleConfig(4, 6),
    ExampleConfig(5, 6),
    ExampleConfig(5, 5, (Fraction(3, 2), Fraction(9, 5))),
]


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--json", help="also write the results to this file")
    args = parser.parse_args()
    results = [run(cfg) for cfg in CONFIGS]
    for res in results:
        print(f"f = {res.polynomial}   mu = {res.mu}   tau = {res.tau}")
        print(f"  Sp_f   = {res.sp_f}")
        print(f"  Sp_tau = {res.sp_tau}")
        print(f"  Sp_mu  = {res.sp_mu}")
        print(f"  Sp_f - Sp_tau = {res.sp_f_minus_sp_tau}")
        for beta, gens in res.filtration.items():
            print(f"  O^(>={beta}) = <{', '.join(gens)}>")
        for line in res.questions:
            print(f"  {line}")
        print()
    if args.json:
        with open(args.json, "w") as fh:
            json.dump([asdict(r) for r in results], fh, indent=2, default=str)


if __name__ == "__main__":
    main()
