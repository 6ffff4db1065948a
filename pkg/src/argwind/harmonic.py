"""Dirichlet problem on circle domains by least-squares collocation.

A harmonic function on a circle domain with outer circle ``|z - o| = R`` and
holes ``|z - z_j| = r_j`` is expanded as

    u(z) = sum_k b_k w^k + sum_j sum_k a_jk q_j^k                (holomorphic part F)
         + sum_k e_k conj(w^k) + sum_j sum_k s_jk conj(q_j^k)    (antiholomorphic part)
         + sum_j lam_j log|z - z_j|

with ``w = (z - o)/R`` and ``q_j = r_j/(z - z_j)``.  Every basis member is
harmonic on the domain, and ``|w|, |q_j| <= 1`` on the closure, so the
columns are bounded on the boundary.  The closed-curve integral of
``du/dz`` around hole ``j`` (counterclockwise) is ``pi i lam_j``, so whether
``u`` has a conjugate is read straight off the log coefficients.

Complex data is fitted with complex coefficients in one least-squares solve.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field

import numpy as np

from .boundary import BoundaryFunction, from_samples
from .errors import (HasLogPart, IllConditioned, PointOutsideDomain, ResidualTooLarge,
                     SamplingMismatch, SingularPeriodMatrix, TooFewSamples)
from .geometry import CircleDomain, boundary_sampling, contains, distance_to_boundary

DEFAULT_DEGREE = 24
OVERSAMPLING = 4
RANK_TOL = 1e-10
SMOOTH_RESIDUAL_CAP = 1e-8
ROUGH_RESIDUAL_CAP = 1e-4
LOG_TOL = 1e-9


@dataclass(frozen=True)
class Basis:
    domain: CircleDomain
    degree: int

    @property
    def nholes(self) -> int:
        return len(self.domain.holes)

    @property
    def per_circle(self) -> int:
        return 2 * self.degree + 1

    @property
    def size(self) -> int:
        return self.per_circle * self.domain.n

    # coefficient layout
    @property
    def holo_outer(self) -> slice:
        return slice(0, self.degree + 1)

    def holo_hole(self, j: int) -> slice:
        start = self.degree + 1 + j * self.degree
        return slice(start, start + self.degree)

    @property
    def anti_outer(self) -> slice:
        start = self.degree + 1 + self.nholes * self.degree
        return slice(start, start + self.degree)

    def anti_hole(self, j: int) -> slice:
        start = self.anti_outer.stop + j * self.degree
        return slice(start, start + self.degree)

    @property
    def logs(self) -> slice:
        start = self.anti_outer.stop + self.nholes * self.degree
        return slice(start, start + self.nholes)

    def labels(self) -> list[tuple[str, int]]:
        out = [("holo_outer", k) for k in range(self.degree + 1)]
        for j in range(self.nholes):
            out += [(f"holo_hole{j}", k) for k in range(1, self.degree + 1)]
        out += [("anti_outer", k) for k in range(1, self.degree + 1)]
        for j in range(self.nholes):
            out += [(f"anti_hole{j}", k) for k in range(1, self.degree + 1)]
        out += [(f"log_hole{j}", 0) for j in range(self.nholes)]
        return out

    def _powers(self, z):
        """(outer powers k=0..N, [hole powers k=1..N per hole])."""
        N = self.degree
        o, R = self.domain.outer.center, self.domain.outer.radius
        w = (z - o) / R
        outer = w[:, None] ** np.arange(N + 1)
        holes = []
        for h in self.domain.holes:
            q = h.radius / (z - h.center)
            holes.append(q[:, None] ** np.arange(1, N + 1))
        return outer, holes

    def matrix(self, z) -> np.ndarray:
        z = np.atleast_1d(np.asarray(z, dtype=complex))
        outer, holes = self._powers(z)
        cols = [outer] + holes + [np.conj(outer[:, 1:])] + [np.conj(p) for p in holes]
        cols += [np.log(np.abs(z - h.center))[:, None] + 0j for h in self.domain.holes]
        return np.hstack(cols)


@dataclass(frozen=True, eq=False)
class HoloSeries:
    """A holomorphic function given by its outer and hole power series."""

    basis: Basis
    outer: np.ndarray
    holes: np.ndarray  # shape (nholes, degree)

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        flat = np.atleast_1d(z)
        outer, holes = self.basis._powers(flat)
        val = outer @ self.outer
        for j, p in enumerate(holes):
            val = val + p @ self.holes[j]
        return val.reshape(z.shape) if z.ndim else val[0]

    def derivative(self, z):
        z = np.asarray(z, dtype=complex)
        flat = np.atleast_1d(z)
        N = self.basis.degree
        d = self.basis.domain
        k = np.arange(N + 1)
        w = (flat - d.outer.center) / d.outer.radius
        val = (w[:, None] ** np.maximum(k - 1, 0) * k) @ self.outer / d.outer.radius
        kk = np.arange(1, N + 1)
        for j, h in enumerate(d.holes):
            q = h.radius / (flat - h.center)
            val = val - (q[:, None] ** (kk + 1) * kk) @ self.holes[j] / h.radius
        return val.reshape(z.shape) if z.ndim else val[0]

    def __add__(self, other: "HoloSeries") -> "HoloSeries":
        return HoloSeries(self.basis, self.outer + other.outer, self.holes + other.holes)


@dataclass(frozen=True, eq=False)
class HarmonicRepresentation:
    basis: Basis
    coef: np.ndarray
    residual: float = 0.0

    def __post_init__(self):
        c = np.array(self.coef, dtype=complex)
        c.flags.writeable = False
        object.__setattr__(self, "coef", c)

    @property
    def domain(self) -> CircleDomain:
        return self.basis.domain

    @property
    def degree(self) -> int:
        return self.basis.degree

    @property
    def holo_outer(self) -> np.ndarray:
        return self.coef[self.basis.holo_outer]

    @property
    def holo_holes(self) -> np.ndarray:
        b = self.basis
        return np.array([self.coef[b.holo_hole(j)] for j in range(b.nholes)]).reshape(b.nholes, b.degree)

    @property
    def anti_outer(self) -> np.ndarray:
        return self.coef[self.basis.anti_outer]

    @property
    def anti_holes(self) -> np.ndarray:
        b = self.basis
        return np.array([self.coef[b.anti_hole(j)] for j in range(b.nholes)]).reshape(b.nholes, b.degree)

    @property
    def logs(self) -> np.ndarray:
        return self.coef[self.basis.logs]

    @property
    def antiholo(self) -> np.ndarray:
        return np.concatenate([self.anti_outer, self.anti_holes.ravel()])

    def evaluate(self, z, check: bool = True):
        z = np.asarray(z, dtype=complex)
        if check:
            d = self.domain
            ok = contains(d, z) | (distance_to_boundary(d, z) <= 1e-9 * d.outer.radius)
            if not np.all(ok):
                raise PointOutsideDomain("evaluation point outside the closed domain")
        val = self.basis.matrix(z.ravel()) @ self.coef
        return val.reshape(z.shape) if z.ndim else val[0]

    __call__ = evaluate

    def on_boundary(self, m: int) -> tuple[np.ndarray, ...]:
        s = boundary_sampling(self.domain, m, min_samples=1)
        return tuple(self.evaluate(p, check=False) for p in s.points)

    def _same(self, other):
        if self.basis != other.basis:
            raise SamplingMismatch("representations use different bases")

    def __add__(self, other):
        if isinstance(other, HarmonicRepresentation):
            self._same(other)
            return HarmonicRepresentation(self.basis, self.coef + other.coef,
                                          self.residual + other.residual)
        c = self.coef.copy()
        c[0] += complex(other)
        return HarmonicRepresentation(self.basis, c, self.residual)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-1) * other

    def __mul__(self, c):
        c = complex(c)
        return HarmonicRepresentation(self.basis, c * self.coef, abs(c) * self.residual)

    __rmul__ = __mul__

    def dump(self) -> list[tuple[str, int, float, float]]:
        return [(lab, k, float(v.real), float(v.imag))
                for (lab, k), v in zip(self.basis.labels(), self.coef)]


class DirichletSolver:
    """Column-scaled SVD least squares for one (domain, degree, m) triple."""

    def __init__(self, domain: CircleDomain, degree: int, m: int):
        self.basis = Basis(domain, degree)
        if m < OVERSAMPLING * self.basis.per_circle:
            raise TooFewSamples(f"degree {degree} needs at least "
                                f"{OVERSAMPLING * self.basis.per_circle} samples per circle, got {m}")
        self.m = m
        self.sampling = boundary_sampling(domain, m, min_samples=1)
        A = self.basis.matrix(self.sampling.all_points)
        self.A = A
        self.colnorm = np.linalg.norm(A, axis=0)
        U, s, Vh = np.linalg.svd(A / self.colnorm, full_matrices=False)
        if s[-1] < RANK_TOL * s[0]:
            raise IllConditioned(f"scaled collocation matrix has relative singular value "
                                 f"{s[-1] / s[0]:.2e} < {RANK_TOL}")
        self.U, self.s, self.Vh = U, s, Vh

    def solve(self, b: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Least-squares coefficients for right-hand side(s) ``b`` and the
        max-abs residual per column."""
        b = np.asarray(b, dtype=complex)
        y = (self.U.conj().T @ b)
        y = y / (self.s[:, None] if b.ndim == 2 else self.s)
        x = self.Vh.conj().T @ y
        x = x / (self.colnorm[:, None] if b.ndim == 2 else self.colnorm)
        res = np.max(np.abs(self.A @ x - b), axis=0)
        return x, res


@functools.lru_cache(maxsize=64)
def get_solver(domain: CircleDomain, degree: int, m: int) -> DirichletSolver:
    return DirichletSolver(domain, degree, m)


def solve_dirichlet(domain: CircleDomain, f: BoundaryFunction, N: int = DEFAULT_DEGREE,
                    residual_cap: float | None = None) -> HarmonicRepresentation:
    """Harmonic extension of ``f`` in the series basis of degree ``N``."""
    return solve_many(domain, [f], N, residual_cap)[0]


def solve_many(domain: CircleDomain, fs, N: int = DEFAULT_DEGREE,
               residual_cap: float | None = None) -> list[HarmonicRepresentation]:
    fs = list(fs)
    for f in fs:
        if f.domain != domain:
            raise SamplingMismatch("boundary function is defined on another domain")
        if f.m != fs[0].m:
            raise SamplingMismatch("all data must share one sampling")
    if N < 4:
        raise ValueError("degree N must be at least 4")
    solver = get_solver(domain, N, fs[0].m)
    B = np.column_stack([f.all_values for f in fs])
    X, res = solver.solve(B)
    out = []
    for i in range(len(fs)):
        if residual_cap is not None and res[i] > residual_cap:
            raise ResidualTooLarge(f"boundary misfit {res[i]:.3e} exceeds cap {residual_cap:.1e}")
        out.append(HarmonicRepresentation(solver.basis, X[:, i], float(res[i])))
    return out


@dataclass(frozen=True, eq=False)
class HarmonicMeasureSet:
    measures: tuple[HarmonicRepresentation, ...]

    def __len__(self):
        return len(self.measures)

    def __getitem__(self, k) -> HarmonicRepresentation:
        return self.measures[k]

    @property
    def hole_measures(self) -> tuple[HarmonicRepresentation, ...]:
        return self.measures[:-1]

    def period_matrix(self) -> np.ndarray:
        """``M[i, j]`` = log coefficient at hole ``i`` of the measure of hole ``j``."""
        return np.array([w.logs for w in self.hole_measures]).T.reshape(
            len(self.measures) - 1, len(self.measures) - 1)


def harmonic_measures(domain: CircleDomain, N: int = DEFAULT_DEGREE, m: int = 512,
                      residual_cap: float | None = None) -> HarmonicMeasureSet:
    fs = []
    for k in range(domain.n):
        vals = [np.full(m, 1.0 if i == k else 0.0) for i in range(domain.n)]
        fs.append(from_samples(domain, vals, label=f"indicator{k}"))
    return HarmonicMeasureSet(tuple(solve_many(domain, fs, N, residual_cap)))


def periods(h: HarmonicRepresentation) -> np.ndarray:
    """Counterclockwise periods of ``du/dz`` around each hole."""
    return np.pi * 1j * h.logs


def conjugation_constants(domain: CircleDomain, h: HarmonicRepresentation,
                          measures: HarmonicMeasureSet) -> np.ndarray:
    """Constants ``c_j`` with ``h + sum_j c_j omega_j`` free of log terms."""
    if domain.is_disc:
        raise ValueError("conjugation constants need at least one hole")
    M = measures.period_matrix()
    if not np.all(np.isfinite(M)) or np.linalg.cond(M) > 1e12:
        raise SingularPeriodMatrix(f"period matrix condition number {np.linalg.cond(M):.2e}")
    return np.linalg.solve(M, -h.logs)


def split_conjugable(h: HarmonicRepresentation, tol: float = LOG_TOL) -> tuple[HoloSeries, HoloSeries]:
    """Write ``h = F + conj(G)``; the constant goes to ``F``."""
    if h.logs.size and np.max(np.abs(h.logs)) > tol:
        raise HasLogPart(f"log coefficients {np.abs(h.logs).max():.2e} exceed {tol:.0e}; "
                         "no conjugate exists")
    b = h.basis
    F = HoloSeries(b, h.holo_outer.copy(), h.holo_holes)
    G = HoloSeries(b, np.concatenate([[0j], np.conj(h.anti_outer)]), np.conj(h.anti_holes))
    return F, G
