"""Command-line interface.

    hodgespec spectrum -f "x^2+y^3" -w 1/2,1/3
    hodgespec jumping -f "x^5+x^2*y^2+y^5" --variant mu --format json

Exit codes: 0 success, 2 bad input, 3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import InputError, InvariantError, NotWeightedHomogeneousError, SafetyBoundError
from .groebner import INFINITE
from .hodge_wh import hodge_ideal_wh, sp_tau_wh, verify_main_theorem
from .milnor import milnor_data
from .newton import (
    h_value,
    hodge_ideal_nd,
    nd_context,
    newton_boundary,
    nondegeneracy_check,
    question_checks,
    sp_tau_mu_nd,
)
from .poly import (
    WeightSystem,
    format_monomial,
    format_polynomial,
    guess_variables,
    infer_weights,
    is_weighted_homogeneous,
    parse_polynomial,
)
from .series import spectrum_formula

COMMANDS = ("spectrum", "milnor", "hodge-ideal", "jumping", "verify", "newton", "nondeg-check", "questions")
WH_ONLY = {"spectrum", "verify"}
NEWTON_ONLY = {"newton", "nondeg-check", "questions"}


@dataclass
class JobSpec:
    command: str
    polynomial: str
    variables: tuple
    weights: WeightSystem | None = None
    k: int | None = None
    alpha: Fraction | None = None
    variant: str = "tau"
    format: str = "text"
    grid_report: bool = False

    def __post_init__(self):
        if self.weights is not None and self.weights.n != len(self.variables):
            raise InputError(f"{self.weights.n} weights given for {len(self.variables)} variables")
        if self.alpha is not None and not 0 < self.alpha <= 1:
            raise InputError(f"--alpha must lie in (0, 1], got {self.alpha}")


@dataclass
class Outcome:
    pipeline: str
    result: dict
    lines: list
    header: str | None = None
    checks: list = field(default_factory=list)
    exit_code: int = 0


def _check(name, ok, detail=""):
    return {"name": name, "status": "pass" if ok else "fail", "detail": detail}


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hodgespec", description="Hodge spectra and jumping ideals of isolated hypersurface singularities.")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("-f", "--poly", required=True, help="polynomial, e.g. 'x^5 + x^2*y^2 + y^5'")
    parser.add_argument("--vars", help="comma-separated variable names (default x,y,... by arity)")
    parser.add_argument("-w", "--weights", help="comma-separated rational weights, e.g. 1/2,1/3")
    parser.add_argument("-k", type=int, default=None, help="Hodge ideal index")
    parser.add_argument("--alpha", type=_fraction, default=None, help="rational in (0,1]")
    parser.add_argument("--variant", choices=("tau", "mu"), default="tau")
    parser.add_argument("--format", choices=("text", "json"), default="text")
    parser.add_argument("--grid-report", action="store_true", help="emit candidate beta grid and colengths")
    return parser


def job_from_args(args) -> JobSpec:
    variables = tuple(v.strip() for v in args.vars.split(",")) if args.vars else guess_variables(args.poly)
    weights = WeightSystem.parse(args.weights) if args.weights else None
    return JobSpec(
        command=args.command,
        polynomial=args.poly,
        variables=variables,
        weights=weights,
        k=args.k,
        alpha=args.alpha,
        variant=args.variant,
        format=args.format,
        grid_report=args.grid_report,
    )


def _resolve_pipeline(job: JobSpec, f):
    if job.command in NEWTON_ONLY:
        return "newton", None, None
    if job.weights is not None:
        if not is_weighted_homogeneous(f, job.weights):
            raise NotWeightedHomogeneousError(f"{job.polynomial!r} is not weighted homogeneous for weights ({job.weights})")
        return "wh", job.weights, None
    W = infer_weights(f)
    if W is not None:
        return "wh", W, f"# pipeline: wh (inferred weights {W})"
    if job.command in WH_ONLY:
        raise NotWeightedHomogeneousError(f"{job.command} needs a weighted homogeneous polynomial; no weights fit {job.polynomial!r}")
    return "newton", None, "# pipeline: newton (no weights fit; using the Newton filtration)"


def _basis_json(basis, names):
    return [{"monomial": format_monomial(m, names) or "1", "weight": str(wt)} for m, wt in basis]


def _grid_lines(jumping) -> list[str]:
    lines = ["candidates: " + ", ".join(str(b) for b in jumping.candidates)]
    for beta, c in sorted(jumping.colengths.items()):
        lines.append(f"  colength(J_{beta}) = {c}")
    return lines


def run_job(job: JobSpec) -> Outcome:
    names = job.variables
    f = parse_polynomial(job.polynomial, names)
    if f.is_zero():
        raise InputError("the zero polynomial does not define a hypersurface")
    pipeline, W, header = _resolve_pipeline(job, f)
    cmd = job.command

    if cmd == "spectrum":
        sp = spectrum_formula(W)
        return Outcome(pipeline, {"weights": str(W), "spectrum": sp.to_json(), "text": str(sp)}, [str(sp)], header)

    if cmd == "verify":
        report = verify_main_theorem(f, W)
        checks = [
            _check("spectrum_equals_hilbert_poincare", report.spectrum == report.hilbert_poincare),
            _check("hilbert_poincare_equals_sp_tau", report.hilbert_poincare == report.sp_tau),
        ]
        result = {
            "weights": str(W),
            "spectrum": report.spectrum.to_json(),
            "hilbert_poincare": report.hilbert_poincare.to_json(),
            "sp_tau": report.sp_tau.to_json(),
            "passed": report.passed,
            "mass": report.sp_tau.eval_at_one(),
            "boundary_candidates": [str(b) for b in report.boundary],
        }
        lines = [report.summary()]
        if not report.passed:
            lines += [f"  Sp_f   = {report.spectrum}", f"  P_f    = {report.hilbert_poincare}", f"  Sp_tau = {report.sp_tau}"]
        return Outcome(pipeline, result, lines, header, checks, 0 if report.passed else 3)

    if cmd == "milnor":
        if pipeline == "wh":
            data = milnor_data(f, W)
            result = {"mu": data.mu, "tau": data.tau, "weights": str(W), "basis": _basis_json(data.basis, names)}
            lines = [f"mu = {data.mu}", f"tau = {data.tau}",
                     "basis: " + ", ".join(f"{format_monomial(m, names) or '1'} [{wt}]" for m, wt in data.basis)]
            checks = [_check("tau_equals_mu_for_wh", data.tau == data.mu)]
        else:
            data = milnor_data(f)
            result = {"mu": data.mu, "tau": data.tau}
            lines = [f"mu = {data.mu}", f"tau = {data.tau}"]
            checks = [_check("tau_at_most_mu", data.tau <= data.mu)]
        return Outcome(pipeline, result, lines, header, checks)

    if cmd == "hodge-ideal":
        if job.alpha is None:
            raise InputError("hodge-ideal needs --alpha")
        k = job.k or 0
        if pipeline == "wh":
            ideal = hodge_ideal_wh(f, W, k, job.alpha).ideal
        else:
            ideal = hodge_ideal_nd(f, k, job.alpha)
        basis = [format_polynomial(g, names) for g in ideal.basis]
        result = {"k": k, "alpha": str(job.alpha), "basis": basis}
        return Outcome(pipeline, result, [f"I_{k}({job.alpha} Z) = <{', '.join(basis)}>"], header)

    if cmd == "jumping":
        if pipeline == "wh":
            jumping = sp_tau_wh(f, W)
            checks = [_check("recursion_oracle_agreement", True, "J_beta recursion == <B^{>=beta}> + <df> at every probe")]
            result = {"variant": job.variant, **jumping.to_json()}
            if job.variant == "mu":
                result["note"] = "f is weighted homogeneous, so J^mu = J^tau"
        else:
            spectra = sp_tau_mu_nd(f)
            jumping = spectra.tau if job.variant == "tau" else spectra.mu
            checks = [
                _check("tau_two_route_agreement", True),
                _check("mu_monotone", spectra.mu_monotone, ", ".join(spectra.mu_violations)),
                _check("grid_sufficient", not spectra.refinement_requests, json.dumps(spectra.refinement_requests)),
            ]
            result = {"variant": job.variant, **jumping.to_json()}
        if not job.grid_report:
            result.pop("colengths")
            result.pop("candidates")
        lines = [str(jumping.sp)]
        if job.grid_report:
            lines += _grid_lines(jumping)
        return Outcome(pipeline, result, lines, header, checks)

    if cmd == "newton":
        nb = newton_boundary(f)
        facets = [[str(c) for c in form] for form in nb.facets]
        faces = [{"points": [list(p) for p in face.points], "dim": face.dim} for face in nb.compact_faces]
        result = {"facets": facets, "compact_faces": faces, "h_ones": str(h_value(nb, (1,) * f.nvars))}
        lines = []
        for form in nb.facets:
            lines.append("facet: " + " + ".join(f"{c}*{v}" for c, v in zip(form, [f"m_{i + 1}" for i in range(f.nvars)])) + " = 1")
        for face in nb.compact_faces:
            lines.append(f"face (dim {face.dim}): " + " ".join(str(p) for p in face.points))
        return Outcome(pipeline, result, lines, header)

    if cmd == "nondeg-check":
        report = nondegeneracy_check(f)
        result = report.to_json(names)
        lines = [f"{'ok ' if ok else 'BAD'} {face.points}: {format_polynomial(fs, names)}" for face, fs, ok in report.faces]
        lines.append("non-degenerate" if report.nondegenerate else "degenerate")
        return Outcome(pipeline, result, lines, header)

    if cmd == "questions":
        ctx = nd_context(f)
        spectra = sp_tau_mu_nd(f, ctx)
        q = question_checks(f, ctx, spectra)
        result = {
            "sp_tau": spectra.tau.sp.to_json(),
            "sp_mu": spectra.mu.sp.to_json(),
            "sp_tau_at_one": q.sp_tau_at_one,
            "tau": q.tau,
            "sp_mu_at_one": q.sp_mu_at_one,
            "mu": q.mu,
            "mu_monotone": q.mu_monotone,
            "mu_violations": q.mu_violations,
            "stabilized": q.stabilized,
            "stabilization_beta": str(q.stabilization_beta),
        }
        checks = [
            _check("sp_tau_at_one_equals_tau", q.tjurina_question_holds),
            _check("j_tau_stabilizes", q.stabilized),
            _check("j_mu_monotone", q.mu_monotone, ", ".join(q.mu_violations)),
            _check("sp_mu_at_one_equals_mu", q.sp_mu_at_one == q.mu),
        ]
        lines = [f"Sp_tau = {spectra.tau.sp}", f"Sp_mu  = {spectra.mu.sp}"] + q.lines()
        return Outcome(pipeline, result, lines, header, checks)

    raise InputError(f"unknown command {cmd!r}")


def render(job: JobSpec, outcome: Outcome) -> str:
    if job.format == "json":
        doc = {
            "command": job.command,
            "input": {
                "polynomial": job.polynomial,
                "variables": list(job.variables),
                "weights": str(job.weights) if job.weights else None,
                "k": job.k,
                "alpha": str(job.alpha) if job.alpha is not None else None,
                "variant": job.variant,
            },
            "pipeline": outcome.pipeline,
            "result": outcome.result,
            "checks": outcome.checks,
        }
        return json.dumps(doc, indent=2)
    lines = ([outcome.header] if outcome.header else []) + outcome.lines
    return "\n".join(lines)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        job = job_from_args(args)
        outcome = run_job(job)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InvariantError as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        print(json.dumps(exc.dump, indent=2, default=str), file=sys.stderr)
        return 3
    except SafetyBoundError as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return 3
    print(render(job, outcome))
    return outcome.exit_code


if __name__ == "__main__":
    sys.exit(main())
