"""Error of the series solver against closed forms as the degree grows.

On the annulus {0.5 < |z| < 1}, A(a, conj z) = 1 - 0.75 log|a| / log 0.5 - |a|^2
and the inner harmonic measure is log|z| / log 0.5; on the disc A(a, 1/(z-2)) = 0.

    python scripts/convergence.py [--samples 1024]
"""

import argparse

import numpy as np

from argwind import Circle, compute_A, from_expression, harmonic_measures, validate_domain


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--samples", type=int, default=1024)
    p.add_argument("--degrees", default="4,8,12,16,24,32,48,64")
    args = p.parse_args()
    ann = validate_domain(Circle(0, 1), [Circle(0, 0.5)])
    disc = validate_domain(Circle(0, 1))
    f_ann = from_expression("conj(z)", ann, args.samples)
    f_rat = from_expression("1/(z-1.25)", disc, args.samples)
    pts = np.array([0.55, 0.7j, -0.8 + 0.1j, 0.6 - 0.6j])
    closed = 1 - 0.75 * np.log(np.abs(pts)) / np.log(0.5) - np.abs(pts) ** 2
    print(f"{'N':>4}  {'A annulus':>10}  {'measure':>10}  {'A rational':>10}")
    for N in map(int, args.degrees.split(",")):
        if 4 * (2 * N + 1) > args.samples:
            break
        errA = max(abs(compute_A(ann, f_ann, a, N) - c) for a, c in zip(pts, closed))
        w = harmonic_measures(ann, N, args.samples)[0]
        errW = np.max(np.abs(w.evaluate(pts) - np.log(np.abs(pts)) / np.log(0.5)))
        errR = max(abs(compute_A(disc, f_rat, a, N)) for a in (0, 0.3, 0.5j))
        print(f"{N:>4}  {errA:10.2e}  {errW:10.2e}  {errR:10.2e}")


if __name__ == "__main__":
    main()
