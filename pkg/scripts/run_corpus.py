"""Detector verdicts and witness windings over a fixed corpus.

    python scripts/run_corpus.py [--samples 512] [--degree 24] [--csv out.csv]
"""

import argparse
import csv
import sys
import time

from argwind import (Circle, construct_witness, detect_extendibility, from_expression,
                     validate_domain)
from argwind.errors import ArgwindError
from argwind.extend import WitnessParams

DOMAINS = {
    "disc": validate_domain(Circle(0, 1)),
    "annulus": validate_domain(Circle(0, 1), [Circle(0, 0.5)]),
    "triple": validate_domain(Circle(0, 1), [Circle(-0.4, 0.15), Circle(0.45, 0.15)]),
    "offcenter": validate_domain(Circle(1 + 1j, 2), [Circle(1.5 + 1j, 0.5), Circle(0.3 + 0.6j, 0.3)]),
}
FUNCTIONS = ["z^2", "1/(z-2)", "3+z", "1/z", "conj(z)", "conj(z)^2", "abs2(z)-0.5", "conj(z)+z^3"]


def run(samples, degree):
    rows = []
    for dname, dom in DOMAINS.items():
        for expr in FUNCTIONS:
            try:
                f = from_expression(expr, dom, samples)
            except ArgwindError as exc:
                rows.append([dname, expr, f"skipped ({type(exc).__name__})", "", "", "", ""])
                continue
            t0 = time.perf_counter()
            rep = detect_extendibility(dom, f, degree)
            turns = min_mod = ""
            if rep.verdict == "not_extendable":
                try:
                    cert = construct_witness(dom, f, WitnessParams(degree=degree))
                    turns, min_mod = cert.report.total_turns, f"{cert.report.min_modulus:.3e}"
                except ArgwindError as exc:
                    turns = type(exc).__name__
            rows.append([dname, expr, rep.verdict, f"{rep.defect:.2e}", f"{rep.max_abs_A:.3e}",
                         turns, min_mod, f"{time.perf_counter() - t0:.3f}"])
    return rows


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--samples", type=int, default=512)
    p.add_argument("--degree", type=int, default=24)
    p.add_argument("--csv", help="also write the table here")
    args = p.parse_args()
    header = ["domain", "f", "verdict", "defect", "max|A|", "witness turns", "min|f+g|", "seconds"]
    rows = run(args.samples, args.degree)
    widths = [max(len(str(r[i])) if i < len(r) else 0 for r in rows + [header]) for i in range(len(header))]
    for r in [header] + rows:
        print("  ".join(str(c).ljust(w) for c, w in zip(r, widths)))
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            csv.writer(fh).writerows([header] + rows)


if __name__ == "__main__":
    sys.exit(main())
