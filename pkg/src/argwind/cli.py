"""Command-line front end.

    argwind validate --domain D.json
    argwind detect   --domain D.json --f "conj(z)"      [--out DIR]
    argwind witness  --domain D.json --f "conj(z)"      [--out DIR]
    argwind verify   --certificate DIR/certificate.json
    argwind verify   --domain D.json --f "z" --g "z^2-z-0.25"
    argwind winding  --domain D.json --f "z^2-0.25"     [--out DIR]

Domain file (JSON)::

    {"outer": {"center": [0, 0], "radius": 1},
     "holes": [{"center": [0, 0], "radius": 0.5}]}

Exit codes: 0 success or decided, 1 analysis-level failure (inconclusive
verdict, failed witness, zero on the boundary), 2 input error.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import os
import sys
from contextlib import nullcontext
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .argument import WindingReport, change_of_argument, phase_table
from .boundary import (DEFAULT_SAMPLES, BoundaryFunction, from_expression, read_samples_csv)
from .errors import AnalysisError, ArgwindError, InputError
from .extend import (DEFAULT_TOL, WitnessCertificate, WitnessParams, construct_witness,
                     detect_extendibility, recheck_certificate, verify_certificate)
from .geometry import CircleDomain
from .harmonic import DEFAULT_DEGREE, solve_dirichlet

log = logging.getLogger("argwind")


@dataclass
class RunConfig:
    command: str
    domain_path: Optional[Path] = None
    f_expr: Optional[str] = None
    f_samples: Optional[Path] = None
    g_expr: Optional[str] = None
    certificate: Optional[Path] = None
    degree: int = DEFAULT_DEGREE
    samples: int = DEFAULT_SAMPLES
    tol: float = DEFAULT_TOL
    grid: tuple[int, int] = (7, 7)
    k_schedule: tuple[int, ...] = field(default_factory=lambda: WitnessParams().k_schedule)
    out_dir: Optional[Path] = None

    def validate(self):
        for p in (self.domain_path, self.f_samples, self.certificate):
            if p is not None and not p.is_file():
                raise InputError(f"no such file: {p}")
        if self.degree < 4:
            raise InputError("--degree must be at least 4")
        if self.samples < 8:
            raise InputError("--samples must be at least 8")
        if not self.tol > 0:
            raise InputError("--tol must be positive")
        if min(self.grid) < 2:
            raise InputError("--grid needs at least 2 points per axis")
        if not self.k_schedule or min(self.k_schedule) < 1:
            raise InputError("--k-schedule entries must be positive")


def _parse_grid(text: str) -> tuple[int, int]:
    parts = text.lower().split("x")
    try:
        dims = tuple(int(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"grid must look like 7x7, got {text!r}") from None
    if len(dims) == 1:
        dims = dims * 2
    if len(dims) != 2:
        raise argparse.ArgumentTypeError(f"grid must look like 7x7, got {text!r}")
    return dims


def _parse_schedule(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(p) for p in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"schedule must be comma-separated integers") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="argwind",
        description="Holomorphic extendibility on circle domains via the argument principle.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, need_f=True):
        p.add_argument("--domain", dest="domain_path", type=Path, help="domain file (JSON)")
        src = p.add_mutually_exclusive_group(required=need_f)
        src.add_argument("--f", dest="f_expr", metavar="EXPR", help="boundary function expression")
        src.add_argument("--f-samples", type=Path, metavar="FILE",
                         help="CSV rows circle_index,theta,re,im")
        p.add_argument("--degree", type=int, default=DEFAULT_DEGREE, help="series degree N")
        p.add_argument("--samples", type=int, default=DEFAULT_SAMPLES, help="samples per circle")
        p.add_argument("--tol", type=float, default=DEFAULT_TOL)
        p.add_argument("--grid", type=_parse_grid, default=(7, 7), metavar="GxG")
        p.add_argument("--out", dest="out_dir", type=Path, metavar="DIR")

    p = sub.add_parser("validate", help="check a domain file")
    p.add_argument("--domain", dest="domain_path", type=Path, required=True)
    common(sub.add_parser("detect", help="decide extendibility"))
    p = sub.add_parser("witness", help="construct a negative-winding certificate")
    common(p)
    p.add_argument("--k-schedule", type=_parse_schedule, default=WitnessParams().k_schedule,
                   metavar="K1,K2,...", help="Fourier cutoffs tried for smoothing")
    p = sub.add_parser("verify", help="winding of f + g, or re-check a stored certificate")
    common(p, need_f=False)
    p.add_argument("--g", dest="g_expr", metavar="EXPR")
    p.add_argument("--certificate", type=Path)
    common(sub.add_parser("winding", help="change of argument of f along bD"))
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    keys = RunConfig.__dataclass_fields__
    cfg = RunConfig(**{k: v for k, v in vars(args).items() if k in keys})
    cfg.validate()
    return cfg


def load_domain(path: Path) -> CircleDomain:
    try:
        data = json.loads(Path(path).read_text())
        return CircleDomain.from_dict(data)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from None
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{path}: malformed domain ({exc!r})") from None


def _require_domain(cfg: RunConfig) -> CircleDomain:
    if cfg.domain_path is None:
        raise InputError("--domain is required")
    return load_domain(cfg.domain_path)


def load_function(cfg: RunConfig, domain: CircleDomain) -> BoundaryFunction:
    if cfg.f_samples is not None:
        return read_samples_csv(cfg.f_samples, domain)
    if cfg.f_expr is None:
        raise InputError("--f or --f-samples is required")
    return from_expression(cfg.f_expr, domain, cfg.samples)


def _write_json(path: Path, data: dict):
    path.write_text(json.dumps(data, indent=1, sort_keys=True) + "\n")


def _write_phase_csv(path: Path, domain: CircleDomain, F: BoundaryFunction):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["circle_index", "theta", "arg"])
        for k, theta, phase in phase_table(domain, F):
            w.writerow([k, repr(theta), repr(phase)])


def _outdir(cfg: RunConfig) -> Optional[Path]:
    if cfg.out_dir is not None:
        cfg.out_dir.mkdir(parents=True, exist_ok=True)
    return cfg.out_dir


def render_report(rep: WindingReport) -> str:
    lines = [f"circle {k}: {w!r} rad, {t} turns"
             for k, (w, t) in enumerate(zip(rep.per_circle, rep.per_circle_turns))]
    lines += [f"total: {rep.total!r} rad", f"total_turns: {rep.total_turns}",
              f"integrality_defect: {rep.integrality_defect:.3e}",
              f"min_modulus: {rep.min_modulus:.6e}", f"refinement_depth: {rep.refinement_depth}"]
    return "\n".join(lines)


def cmd_validate(cfg: RunConfig) -> int:
    domain = _require_domain(cfg)
    c = domain.outer
    print(f"outer (circle {domain.n - 1}): center {c.center.real!r} {c.center.imag!r}, radius {c.radius!r}")
    for j, h in enumerate(domain.holes):
        print(f"hole  (circle {j}): center {h.center.real!r} {h.center.imag!r}, radius {h.radius!r}")
    print(f"circles: {domain.n}")
    print(f"separation: {domain.separation!r}")
    return 0


def cmd_detect(cfg: RunConfig) -> int:
    domain = _require_domain(cfg)
    f = load_function(cfg, domain)
    rep = detect_extendibility(domain, f, cfg.degree, cfg.tol, cfg.grid)
    print(f"verdict: {rep.verdict}")
    print(f"defect: {rep.defect:.3e} (antiholomorphic {rep.antiholo_defect:.3e}, log {rep.log_defect:.3e})")
    print(f"max|A|: {rep.max_abs_A:.6e} at a = {rep.argmax_a}")
    out = _outdir(cfg)
    if out is not None:
        _write_json(out / "detect.json", rep.to_dict())
        h = solve_dirichlet(domain, f, cfg.degree)
        with open(out / "coefficients.csv", "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["basis", "index", "re", "im"])
            for lab, k, re_, im_ in h.dump():
                w.writerow([lab, k, repr(re_), repr(im_)])
    return 1 if rep.verdict == "inconclusive" else 0


def cmd_witness(cfg: RunConfig) -> int:
    domain = _require_domain(cfg)
    f = load_function(cfg, domain)
    params = WitnessParams(degree=cfg.degree, grid=cfg.grid, k_schedule=cfg.k_schedule)
    cert = construct_witness(domain, f, params)
    print(f"base point a: {cert.a!r}")
    print(f"rotation omega: {cert.omega!r}")
    print(f"betas: {list(cert.betas)!r}")
    print(f"epsilon: {cert.epsilon!r}, K: {cert.K}")
    print(render_report(cert.report))
    out = _outdir(cfg)
    if out is not None:
        cert.save(out / "certificate.json")
        _write_phase_csv(out / "winding.csv", domain, cert.f + cert.g)
    return 0


def cmd_verify(cfg: RunConfig) -> int:
    if cfg.certificate is not None:
        cert = WitnessCertificate.load(cfg.certificate)
        rep, same = recheck_certificate(cert)
        print(render_report(rep))
        print(f"reproduced: {'yes' if same else 'NO'}")
        if not same:
            return 1
    else:
        if cfg.g_expr is None:
            raise InputError("verify needs --certificate or --g")
        domain = _require_domain(cfg)
        f = load_function(cfg, domain)
        g = from_expression(cfg.g_expr, domain, f.m)
        rep = verify_certificate(domain, f, g)
        print(render_report(rep))
    out = _outdir(cfg)
    if out is not None:
        _write_json(out / "verify.json", rep.to_dict())
    return 0


def cmd_winding(cfg: RunConfig) -> int:
    domain = _require_domain(cfg)
    F = load_function(cfg, domain)
    rep = change_of_argument(domain, F)
    print(render_report(rep))
    out = _outdir(cfg)
    if out is not None:
        _write_json(out / "winding.json", rep.to_dict())
        _write_phase_csv(out / "winding.csv", domain, F)
    return 0


COMMANDS = {"validate": cmd_validate, "detect": cmd_detect, "witness": cmd_witness,
            "verify": cmd_verify, "winding": cmd_winding}


def _thread_limit():
    n = os.environ.get("ARGWIND_THREADS")
    if not n:
        return nullcontext()
    from threadpoolctl import threadpool_limits

    try:
        return threadpool_limits(limits=max(1, int(n)))
    except ValueError:
        raise InputError(f"ARGWIND_THREADS must be an integer, got {n!r}") from None


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = config_from_args(args)
        with _thread_limit():
            return COMMANDS[cfg.command](cfg)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except AnalysisError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except ArgwindError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
