"""Check Sp_f = P_f = Sp^tau over a family of weighted homogeneous
polynomials and report timing.

    python scripts/main_theorem_sweep.py --max-exponent 8 --three-variables
"""

import argparse
import time
from dataclasses import dataclass

from hodgespec.hodge_wh import verify_main_theorem
from hodgespec.poly import infer_weights, parse_polynomial


@dataclass
class SweepConfig:
    max_exponent: int = 7
    three_variables: bool = False
    max_exponent_3: int = 4


def family(cfg: SweepConfig):
    for a in range(2, cfg.max_exponent + 1):
        for b in range(a, cfg.max_exponent + 1):
            yield f"x^{a}+y^{b}", ("x", "y")
    for a in range(2, cfg.max_exponent):
        yield f"x^2*y+y^{a}", ("x", "y")
        yield f"x^{a}+x*y^3", ("x", "y")
    if cfg.three_variables:
        m = cfg.max_exponent_3
        for a in range(2, m + 1):
            for b in range(a, m + 1):
                for c in range(b, m + 1):
                    yield f"x^{a}+y^{b}+z^{c}", ("x", "y", "z")


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--max-exponent", type=int, default=7)
    parser.add_argument("--three-variables", action="store_true")
    parser.add_argument("--max-exponent-3", type=int, default=4)
    args = parser.parse_args()
    cfg = SweepConfig(args.max_exponent, args.three_variables, args.max_exponent_3)
    failures = 0
    total = 0
    for text, names in family(cfg):
        f = parse_polynomial(text, names)
        W = infer_weights(f)
        if W is None:
            print(f"{text:<22} skipped (no unique weights)")
            continue
        t0 = time.perf_counter()
        report = verify_main_theorem(f, W)
        elapsed = time.perf_counter() - t0
        total += 1
        failures += not report.passed
        print(f"{text:<22} W=({W})  {report.summary()}  [{elapsed:.2f}s]")
    print(f"\n{total - failures}/{total} passed")
    raise SystemExit(1 if failures else 0)


if __name__ == "__main__":
    main()
