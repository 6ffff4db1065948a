"""Extendibility detection and the negative-winding witness.

For boundary data ``f`` and a base point ``a`` in D write

    A(a, f) = H[(Z - a) f](a) = H(Zf)(a) - a H(f)(a),

which vanishes identically in ``a`` exactly when ``f`` extends holomorphically.
On a multiply connected domain ``H(f)`` and ``H(Zf)`` need corrections
``c_j``, ``d_j`` (multiples of the hole harmonic measures ``omega_j``) before
they have conjugates, and

    Phi(z) = sum_j (d_j - a c_j) (omega_j(z) - omega_j(a)) - A(a, f)

makes ``H[(Z - a) f] + Phi`` conjugable and zero at ``a``.  ``Phi`` is constant
on each boundary circle.  When all those constants have nonzero real part the
holomorphic ``g`` with ``Re g = Re(H[(Z - a) f] + Phi)``, ``g(a) = 0``, gives
``h = g / (z - a)`` such that ``f - h`` winds once negatively around bD.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np

from . import __version__
from .argument import WindingReport, change_of_argument
from .boundary import (BoundaryFunction, from_callable, from_samples, multiply_by_affine,
                       rotate, smooth_truncate)
from .errors import (CertificateError, NoViableBasePoint, PointOutsideDomain, SmoothingFailed,
                     VerificationFailed)
from .geometry import CircleDomain, contains, interior_grid
from .harmonic import (DEFAULT_DEGREE, OVERSAMPLING, ROUGH_RESIDUAL_CAP, HarmonicMeasureSet,
                       HarmonicRepresentation, HoloSeries, conjugation_constants,
                       harmonic_measures, solve_dirichlet, solve_many, split_conjugable)

log = logging.getLogger(__name__)

DEFAULT_TOL = 1e-8
DEFAULT_GRID = 7
GRID_MARGIN = 0.05
MIN_PHI = 1e-8
ROTATION_CANDIDATES = 360
CERTIFICATE_FORMAT = "argwind-certificate/1"


# -- A(a, f) ----------------------------------------------------------------

def compute_A(domain: CircleDomain, f: BoundaryFunction, a: complex,
              N: int = DEFAULT_DEGREE) -> complex:
    """``H[(Z - a) f](a)``."""
    if not contains(domain, a):
        raise PointOutsideDomain(f"base point {a} is not in the domain")
    h = solve_dirichlet(domain, multiply_by_affine(f, a), N)
    return complex(h.evaluate(a))


class _Extensions:
    """H(f), H(Zf) and, for multiply connected domains, the constants c, d."""

    def __init__(self, domain: CircleDomain, f: BoundaryFunction, N: int,
                 measures: Optional[HarmonicMeasureSet] = None):
        self.domain = domain
        self.Hf, self.HZf = solve_many(domain, [f, multiply_by_affine(f, 0)], N)
        self.measures = measures
        if domain.is_disc:
            self.c = self.d = np.zeros(0, dtype=complex)
        else:
            if measures is None:
                raise ValueError("harmonic measures are required on multiply connected domains")
            self.c = conjugation_constants(domain, self.Hf, measures)
            self.d = conjugation_constants(domain, self.HZf, measures)

    def A(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=complex)
        return self.HZf.evaluate(a, check=False) - a * self.Hf.evaluate(a, check=False)

    def phi_constants(self, a) -> tuple[np.ndarray, np.ndarray]:
        """A(a) and the boundary constants of Phi (shape ``(n,) + a.shape``)."""
        a = np.asarray(a, dtype=complex)
        A = self.A(a)
        nh = len(self.domain.holes)
        weights = [self.d[j] - a * self.c[j] for j in range(nh)]
        common = -A - sum((weights[j] * self.measures[j].evaluate(a, check=False)
                           for j in range(nh)), np.zeros_like(A))
        consts = [weights[k] + common for k in range(nh)] + [common]
        return A, np.array(consts)


# -- detection --------------------------------------------------------------

@dataclass(frozen=True)
class ExtendibilityReport:
    verdict: str  # "extendable" | "not_extendable" | "inconclusive"
    antiholo_defect: float
    log_defect: float
    max_abs_A: float
    argmax_a: Optional[complex]
    tol: float
    residual: float
    grid_points: int

    @property
    def defect(self) -> float:
        return max(self.antiholo_defect, self.log_defect)

    def to_dict(self) -> dict:
        a = self.argmax_a
        return {
            "verdict": self.verdict,
            "defect": self.defect,
            "antiholo_defect": self.antiholo_defect,
            "log_defect": self.log_defect,
            "max_abs_A": self.max_abs_A,
            "argmax_a": None if a is None else [a.real, a.imag],
            "tol": self.tol,
            "residual": self.residual,
            "grid_points": self.grid_points,
        }


def detect_extendibility(domain: CircleDomain, f: BoundaryFunction, N: int = DEFAULT_DEGREE,
                         tol: float = DEFAULT_TOL, grid: int | tuple[int, int] = DEFAULT_GRID) -> ExtendibilityReport:
    Hf, HZf = solve_many(domain, [f, multiply_by_affine(f, 0)], N)
    anti = float(np.max(np.abs(Hf.antiholo))) if Hf.antiholo.size else 0.0
    logd = float(np.max(np.abs(Hf.logs))) if Hf.logs.size else 0.0
    pts = interior_grid(domain, grid, GRID_MARGIN)
    if pts.size:
        A = np.abs(HZf.evaluate(pts, check=False) - pts * Hf.evaluate(pts, check=False))
        i = int(np.argmax(A))
        max_A, arg = float(A[i]), complex(pts[i])
    else:
        max_A, arg = 0.0, None
    if max(anti, logd) <= tol:
        verdict = "extendable"
    elif max_A >= 10 * tol:
        verdict = "not_extendable"
    else:
        verdict = "inconclusive"
    return ExtendibilityReport(verdict, anti, logd, max_A, arg, tol, Hf.residual, int(pts.size))


# -- Phi --------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class PhiData:
    a: complex
    c: np.ndarray
    d: np.ndarray
    A: complex
    constants: np.ndarray  # boundary value of Phi on each circle, holes first
    representation: HarmonicRepresentation

    def rotated(self, omega: float) -> "PhiData":
        r = np.exp(1j * omega)
        return PhiData(self.a, r * self.c, r * self.d, r * self.A, r * self.constants,
                       r * self.representation)


def _measures_for(domain: CircleDomain, N: int, m: int) -> Optional[HarmonicMeasureSet]:
    return None if domain.is_disc else harmonic_measures(domain, N, m)


def _phi_from(ext: _Extensions, a: complex) -> PhiData:
    a = complex(a)
    A, consts = ext.phi_constants(a)
    rep = 0 * ext.Hf
    for j in range(len(ext.domain.holes)):
        wj = ext.measures[j]
        weight = ext.d[j] - a * ext.c[j]
        rep = rep + weight * (wj + (-wj.evaluate(a, check=False)))
    rep = rep + (-complex(A))
    return PhiData(a, ext.c, ext.d, complex(A), np.asarray(consts, dtype=complex), rep)


def phi_data(domain: CircleDomain, f: BoundaryFunction, a: complex,
             measures: Optional[HarmonicMeasureSet] = None, N: int = DEFAULT_DEGREE) -> PhiData:
    if not contains(domain, a):
        raise PointOutsideDomain(f"base point {a} is not in the domain")
    if measures is None:
        measures = _measures_for(domain, N, f.m)
    return _phi_from(_Extensions(domain, f, N, measures), a)


def select_base_point(domain: CircleDomain, f: BoundaryFunction,
                      measures: Optional[HarmonicMeasureSet] = None, grid: int | tuple[int, int] = DEFAULT_GRID,
                      N: int = DEFAULT_DEGREE) -> tuple[complex, PhiData]:
    """Grid point maximizing ``min_k |Phi_{a,f}|Gamma_k|``."""
    if measures is None:
        measures = _measures_for(domain, N, f.m)
    ext = _Extensions(domain, f, N, measures)
    pts = interior_grid(domain, grid, GRID_MARGIN)
    if not pts.size:
        raise NoViableBasePoint("scan grid has no points inside the domain; use a finer grid")
    _, consts = ext.phi_constants(pts)
    score = np.min(np.abs(consts), axis=0)
    i = int(np.argmax(score))
    if score[i] < MIN_PHI:
        raise NoViableBasePoint(
            f"max over {pts.size} grid points of min_k |Phi| is {score[i]:.2e} < {MIN_PHI}; "
            "f looks extendable, or refine the grid / raise the degree")
    return complex(pts[i]), _phi_from(ext, pts[i])


def select_rotation(phi: PhiData | np.ndarray, candidates: int = ROTATION_CANDIDATES) -> float:
    """Angle in [0, 2 pi) maximizing ``min_k |Re(e^{i omega} phi_k)|``."""
    consts = phi.constants if isinstance(phi, PhiData) else np.asarray(phi, dtype=complex)
    omegas = 2 * np.pi * np.arange(candidates) / candidates
    score = np.min(np.abs((np.exp(1j * omegas)[:, None] * consts[None, :]).real), axis=1)
    i = int(np.argmax(score))
    if score[i] < 1e-9:
        raise NoViableBasePoint("no rotation separates the boundary constants from the imaginary axis")
    return float(omegas[i])


# -- witness ----------------------------------------------------------------

@dataclass(frozen=True)
class WitnessParams:
    degree: int = DEFAULT_DEGREE
    grid: int | tuple[int, int] = DEFAULT_GRID
    k_schedule: tuple[int, ...] = (4, 8, 16, 32, 64)


@dataclass(frozen=True, eq=False)
class WitnessCertificate:
    domain: CircleDomain
    a: complex
    omega: float
    betas: tuple[float, ...]
    epsilon: float
    K: int
    degree: int
    f: BoundaryFunction  # f on the verification sampling
    g: BoundaryFunction  # raw samples of the witness on the same sampling
    report: WindingReport
    F: Optional[HoloSeries] = field(default=None, repr=False)
    G: Optional[HoloSeries] = field(default=None, repr=False)
    shift: complex = 0j
    f_source: str = ""

    def h(self, z):
        """The holomorphic ``h = g_raw / (z - a)`` before the final rotation."""
        if self.F is None:
            raise CertificateError("certificate carries no interior evaluator data")
        return _divided(self.F, self.G, self.shift, self.a, z)

    def g_at(self, z):
        """Interior evaluator of the witness ``-e^{-i omega} h``."""
        return -np.exp(-1j * self.omega) * self.h(z)

    def to_dict(self) -> dict:
        def cpl(v):
            return [float(v.real), float(v.imag)]

        def series(s):
            return None if s is None else {"outer": [cpl(v) for v in s.outer],
                                           "holes": [[cpl(v) for v in row] for row in s.holes]}

        return {
            "format": CERTIFICATE_FORMAT,
            "generator": f"argwind {__version__}",
            "domain": self.domain.to_dict(),
            "f_source": self.f_source,
            "samples_per_circle": self.f.m,
            "a": cpl(self.a),
            "omega": self.omega,
            "betas": list(self.betas),
            "epsilon": self.epsilon,
            "K": self.K,
            "degree": self.degree,
            "shift": cpl(self.shift),
            "F": series(self.F),
            "G": series(self.G),
            "f_samples": [[cpl(v) for v in vals] for vals in self.f.values],
            "g_samples": [[cpl(v) for v in vals] for vals in self.g.values],
            "winding": self.report.to_dict(),
        }

    def save(self, path: str | Path):
        Path(path).write_text(json.dumps(self.to_dict(), sort_keys=True) + "\n")

    @classmethod
    def from_dict(cls, d: dict) -> "WitnessCertificate":
        from .harmonic import Basis

        if d.get("format") != CERTIFICATE_FORMAT:
            raise CertificateError(f"unsupported certificate format {d.get('format')!r}")
        try:
            domain = CircleDomain.from_dict(d["domain"])

            def cpl(p):
                return complex(p[0], p[1])

            def series(s):
                if s is None:
                    return None
                basis = Basis(domain, int(d["degree"]))
                holes = np.array([[cpl(v) for v in row] for row in s["holes"]], dtype=complex)
                return HoloSeries(basis, np.array([cpl(v) for v in s["outer"]]),
                                  holes.reshape(len(domain.holes), basis.degree))

            f = from_samples(domain, [[cpl(v) for v in vals] for vals in d["f_samples"]], "f")
            g = from_samples(domain, [[cpl(v) for v in vals] for vals in d["g_samples"]], "g")
            return cls(domain, cpl(d["a"]), float(d["omega"]), tuple(map(float, d["betas"])),
                       float(d["epsilon"]), int(d["K"]), int(d["degree"]), f, g,
                       WindingReport.from_dict(d["winding"]), series(d["F"]), series(d["G"]),
                       cpl(d["shift"]), d.get("f_source", ""))
        except (KeyError, TypeError, ValueError, IndexError) as exc:
            raise CertificateError(f"malformed certificate: {exc}") from None

    @classmethod
    def load(cls, path: str | Path) -> "WitnessCertificate":
        try:
            data = json.loads(Path(path).read_text())
        except json.JSONDecodeError as exc:
            raise CertificateError(f"{path}: not valid JSON ({exc})") from None
        return cls.from_dict(data)


def _divided(F: HoloSeries, G: HoloSeries, shift: complex, a: complex, z):
    z = np.asarray(z, dtype=complex)
    dz = z - a
    near = np.abs(dz) < 1e-8
    safe = np.where(near, 1.0, dz)
    val = (F(z) + G(z) - shift) / safe
    if np.any(near):
        val = np.where(near, F.derivative(z) + G.derivative(z), val)
    return val


def _feasible_degree(N: int, K: int, m: int) -> Optional[int]:
    Nw = max(N, K + 2)
    return Nw if OVERSAMPLING * (2 * Nw + 1) <= m else None


def construct_witness(domain: CircleDomain, f: BoundaryFunction,
                      params: WitnessParams = WitnessParams()) -> WitnessCertificate:
    N, m = params.degree, f.m
    measures = _measures_for(domain, N, m)
    a, phi = select_base_point(domain, f, measures, params.grid, N)
    omega = select_rotation(phi)
    f_rot = rotate(f, omega)
    phi_rot = phi.rotated(omega)
    betas = phi_rot.constants.real
    eps = float(np.min(np.abs(betas))) / 8
    log.info("base point %s, rotation %.4f, betas %s, eps %.3e", a, omega, betas, eps)

    za = np.concatenate(f.sampling.points) - a
    tried = []
    for K in params.k_schedule:
        Nw = _feasible_degree(N, K, m)
        if 2 * K >= m or Nw is None:
            tried.append((K, "infeasible for the sampling"))
            continue
        f1 = smooth_truncate(f_rot, K)
        close_bd = float(np.max(np.abs(za * (f1.all_values - f_rot.all_values))))
        if close_bd >= eps:
            tried.append((K, f"sup|(z-a)(f1-f)| = {close_bd:.2e} >= eps"))
            continue
        mw = measures if Nw == N else _measures_for(domain, Nw, m)
        phi1 = _phi_from(_Extensions(domain, f1, Nw, mw), a)
        close_phi = float(np.max(np.abs(phi1.constants - phi_rot.constants)))
        if close_phi >= eps:
            tried.append((K, f"sup|Phi1 - Phi| = {close_phi:.2e} >= eps"))
            continue
        u = solve_dirichlet(domain, multiply_by_affine(f1, a), Nw)
        if u.residual >= min(eps, ROUGH_RESIDUAL_CAP * max(1.0, f.sup_norm())):
            tried.append((K, f"fit residual {u.residual:.2e} too large"))
            continue
        break
    else:
        raise SmoothingFailed(f"no cutoff met the closeness bounds (eps={eps:.3e}): {tried}")

    u = u + phi1.representation
    scale = max(1.0, float(np.max(np.abs(za * f1.all_values))))
    if u.logs.size and np.max(np.abs(u.logs)) > 1e-9 * scale:
        raise VerificationFailed(f"corrected extension still has log terms {np.abs(u.logs).max():.2e}")
    F, G = split_conjugable(u, tol=1e-9 * scale)
    g_a = complex(F(a) + G(a))
    if abs(g_a.real) > 1e-7 * scale:
        raise VerificationFailed(f"Re g(a) = {g_a.real:.2e} should vanish")
    shift = 1j * g_a.imag
    rot = np.exp(-1j * omega)

    def witness(z):
        return -rot * _divided(F, G, shift, a, z)

    g_live = from_callable(witness, domain, m, label="witness")
    probe = change_of_argument(domain, f + g_live)
    m_final = m * 2 ** probe.refinement_depth
    f_final = f.at_samples(m_final)
    g_final = from_samples(domain, [witness(p) for p in f_final.sampling.points], "witness")
    report = verify_certificate(domain, f_final, g_final)
    if not (report.total < 0 and report.min_modulus > 0 and report.total_turns < 0):
        raise VerificationFailed(f"witness winding is {report.total:.6f} rad; refusing to certify")
    return WitnessCertificate(domain, a, omega, tuple(float(b) for b in betas), eps, K, Nw,
                              f_final, g_final, report, F, G, shift, f.label)


def verify_certificate(domain: CircleDomain, f: BoundaryFunction,
                       g: BoundaryFunction) -> WindingReport:
    """Change of argument of ``f + g``; negative means ``f`` does not extend."""
    return change_of_argument(domain, f + g)


def recheck_certificate(cert: WitnessCertificate) -> tuple[WindingReport, bool]:
    """Recompute the winding from the stored samples; True if bit-identical."""
    rep = verify_certificate(cert.domain, cert.f, cert.g)
    return rep, rep == cert.report
