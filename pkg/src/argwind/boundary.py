"""Complex boundary functions stored as per-circle sample vectors.

A :class:`BoundaryFunction` is a tuple of sample vectors aligned with a
:class:`~argwind.geometry.BoundarySampling`.  It may also carry an
*evaluator* ``(k, z) -> values`` that can resample circle ``k`` at arbitrary
boundary points; expression-backed and Fourier-truncated functions have one,
raw sample data does not.  The winding computation uses the evaluator to
refine undersampled circles.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import CutoffTooLarge, InputError, SamplingMismatch
from .expressions import Expression, parse_expression
from .geometry import BoundarySampling, CircleDomain, boundary_sampling

DEFAULT_SAMPLES = 512

CircleEvaluator = Callable[[int, np.ndarray], np.ndarray]


def _frozen(a) -> np.ndarray:
    a = np.array(a, dtype=complex)
    a.flags.writeable = False
    return a


@dataclass(frozen=True, eq=False)
class BoundaryFunction:
    sampling: BoundarySampling
    values: tuple[np.ndarray, ...]
    evaluator: Optional[CircleEvaluator] = field(default=None, repr=False)
    label: str = ""

    def __post_init__(self):
        vals = tuple(_frozen(v) for v in self.values)
        if len(vals) != self.sampling.domain.n:
            raise SamplingMismatch(f"expected {self.sampling.domain.n} circles, got {len(vals)}")
        for v in vals:
            if v.shape != (self.sampling.m,):
                raise SamplingMismatch(f"expected {self.sampling.m} samples per circle")
            if not np.all(np.isfinite(v)):
                raise InputError("boundary values must be finite")
        object.__setattr__(self, "values", vals)

    @property
    def domain(self) -> CircleDomain:
        return self.sampling.domain

    @property
    def m(self) -> int:
        return self.sampling.m

    @property
    def all_values(self) -> np.ndarray:
        return np.concatenate(self.values)

    def sup_norm(self) -> float:
        return float(np.max(np.abs(self.all_values)))

    def resample(self, k: int, z: np.ndarray) -> np.ndarray:
        if self.evaluator is None:
            raise InputError("raw sample data cannot be resampled")
        return np.asarray(self.evaluator(k, np.asarray(z, dtype=complex)), dtype=complex)

    def at_samples(self, m: int) -> "BoundaryFunction":
        """The same function on a sampling with ``m`` points per circle."""
        if m == self.m:
            return self
        s = boundary_sampling(self.domain, m, min_samples=1)
        vals = [self.resample(k, s.points[k]) for k in range(self.domain.n)]
        return BoundaryFunction(s, tuple(vals), self.evaluator, self.label)

    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return add(self, scale(other, -1))

    def __neg__(self):
        return scale(self, -1)

    def __mul__(self, other):
        if isinstance(other, BoundaryFunction):
            return multiply(self, other)
        return scale(self, other)

    __rmul__ = __mul__


def from_expression(expr: str | Expression, domain: CircleDomain, m: int = DEFAULT_SAMPLES,
                    min_samples: int = 8) -> BoundaryFunction:
    if isinstance(expr, str):
        expr = parse_expression(expr)
    expr.check_poles(domain.circles)
    s = boundary_sampling(domain, m, min_samples=min_samples)
    with np.errstate(all="ignore"):
        vals = tuple(expr(p) for p in s.points)
    return BoundaryFunction(s, vals, lambda k, z: expr(z), expr.source)


def from_callable(func: Callable[[np.ndarray], np.ndarray], domain: CircleDomain,
                  m: int = DEFAULT_SAMPLES, label: str = "") -> BoundaryFunction:
    """Sample a vectorized function of ``z`` (assumed continuous on bD)."""
    s = boundary_sampling(domain, m, min_samples=1)
    vals = tuple(func(p) for p in s.points)
    return BoundaryFunction(s, vals, lambda k, z: func(z), label)


def from_samples(domain: CircleDomain, values: Sequence[Sequence[complex]],
                 label: str = "samples") -> BoundaryFunction:
    """Raw samples in traversal order, one vector per circle (holes first)."""
    m = len(values[0])
    s = boundary_sampling(domain, m, min_samples=1)
    return BoundaryFunction(s, tuple(values), None, label)


def _trig_eval(domain: CircleDomain, k: int, coeffs: dict, z: np.ndarray) -> np.ndarray:
    c = domain.circles[k]
    w = (z - c.center) / c.radius
    w = w / np.abs(w)
    out = np.zeros(z.shape, dtype=complex)
    for mode, a in coeffs.items():
        out += a * w ** mode
    return out


def from_fourier(domain: CircleDomain, coeffs: Sequence[dict], m: int = DEFAULT_SAMPLES,
                 label: str = "fourier") -> BoundaryFunction:
    """Finite Fourier data: on circle ``k`` the value at ``c + r e^{i theta}`` is
    ``sum(a * e^{i mode theta} for mode, a in coeffs[k].items())``."""
    if len(coeffs) != domain.n:
        raise SamplingMismatch(f"expected Fourier data for {domain.n} circles")
    coeffs = [dict(c) for c in coeffs]

    def ev(k, z):
        return _trig_eval(domain, k, coeffs[k], z)

    s = boundary_sampling(domain, m, min_samples=1)
    return BoundaryFunction(s, tuple(ev(k, s.points[k]) for k in range(domain.n)), ev, label)


def read_samples_csv(path: str | Path, domain: CircleDomain, atol: float = 1e-9) -> BoundaryFunction:
    """Load rows ``circle_index, theta, re, im``.

    ``theta`` is the geometric angle on the circle (point ``c + r e^{i theta}``);
    every circle must be covered by the same number of equispaced angles.
    """
    rows: dict[int, list[tuple[float, complex]]] = {}
    with open(path, newline="") as fh:
        for lineno, row in enumerate(csv.reader(fh), 1):
            if not row or row[0].lstrip().startswith("#"):
                continue
            try:
                k, theta, re_, im_ = int(row[0]), float(row[1]), float(row[2]), float(row[3])
            except (ValueError, IndexError):
                if lineno == 1:
                    continue  # header
                raise InputError(f"{path}:{lineno}: expected circle_index,theta,re,im") from None
            rows.setdefault(k, []).append((theta, complex(re_, im_)))
    if sorted(rows) != list(range(domain.n)):
        raise InputError(f"sample file must cover circles 0..{domain.n - 1}, got {sorted(rows)}")
    counts = {len(v) for v in rows.values()}
    if len(counts) != 1:
        raise InputError("every circle needs the same number of samples")
    m = counts.pop()
    s = boundary_sampling(domain, m, min_samples=1)
    values = []
    for k in range(domain.n):
        lookup = {}
        for theta, v in rows[k]:
            idx = np.mod(theta, 2 * np.pi) / (2 * np.pi) * m
            i = int(round(idx)) % m
            if abs(idx - round(idx)) > atol * m:
                raise InputError(f"circle {k}: angle {theta} is not on the grid 2*pi*i/{m}")
            lookup[i] = v
        if len(lookup) != m:
            raise InputError(f"circle {k}: angles do not cover the full circle")
        # traversal index t -> geometric grid index (orientation * t) mod m
        order = (domain.orientation(k) * np.arange(m)) % m
        values.append([lookup[int(i)] for i in order])
    return BoundaryFunction(s, tuple(values), None, str(path))


def write_samples_csv(f: BoundaryFunction, path: str | Path):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["circle_index", "theta", "re", "im"])
        for k in range(f.domain.n):
            for theta, v in zip(f.sampling.angles(k), f.values[k]):
                w.writerow([k, repr(float(theta)), repr(float(v.real)), repr(float(v.imag))])


def _check_same(f: BoundaryFunction, g: BoundaryFunction):
    if f.sampling != g.sampling:
        raise SamplingMismatch("boundary functions live on different samplings")


def _combine_eval(f, g, op):
    if f.evaluator is None or g.evaluator is None:
        return None
    ef, eg = f.evaluator, g.evaluator
    return lambda k, z: op(ef(k, z), eg(k, z))


def add(f: BoundaryFunction, g: BoundaryFunction) -> BoundaryFunction:
    _check_same(f, g)
    vals = tuple(a + b for a, b in zip(f.values, g.values))
    return BoundaryFunction(f.sampling, vals, _combine_eval(f, g, np.add), f"({f.label})+({g.label})")


def multiply(f: BoundaryFunction, g: BoundaryFunction) -> BoundaryFunction:
    _check_same(f, g)
    vals = tuple(a * b for a, b in zip(f.values, g.values))
    return BoundaryFunction(f.sampling, vals, _combine_eval(f, g, np.multiply),
                            f"({f.label})*({g.label})")


def scale(f: BoundaryFunction, c: complex) -> BoundaryFunction:
    c = complex(c)
    ev = None if f.evaluator is None else (lambda k, z, e=f.evaluator: c * e(k, z))
    return BoundaryFunction(f.sampling, tuple(c * v for v in f.values), ev, f"{c}*({f.label})")


def rotate(f: BoundaryFunction, omega: float) -> BoundaryFunction:
    """Pointwise ``e^{i omega} f``."""
    return scale(f, np.exp(1j * omega))


def multiply_by_affine(f: BoundaryFunction, a: complex) -> BoundaryFunction:
    """Boundary data of ``(z - a) f(z)``."""
    a = complex(a)
    vals = tuple((p - a) * v for p, v in zip(f.sampling.points, f.values))
    ev = None if f.evaluator is None else (lambda k, z, e=f.evaluator: (z - a) * e(k, z))
    return BoundaryFunction(f.sampling, vals, ev, f"(z-{a})*({f.label})")


def smooth_truncate(f: BoundaryFunction, K: Optional[int] = None) -> BoundaryFunction:
    """Per circle, project the samples onto trigonometric polynomials of degree <= K.

    The result carries an evaluator for the truncated series, so it can be
    resampled exactly.
    """
    m = f.m
    if K is None:
        K = max(1, m // 8)
    if K < 1 or 2 * K >= m:
        raise CutoffTooLarge(f"cutoff K={K} must satisfy 1 <= K < m/2 = {m / 2}")
    modes = np.fft.fftfreq(m, 1.0 / m).astype(int)
    keep = np.abs(modes) <= K
    domain = f.domain
    tables = []
    new_vals = []
    for k in range(domain.n):
        spectrum = np.fft.fft(f.values[k]) / m
        spectrum[~keep] = 0
        new_vals.append(np.fft.ifft(spectrum) * m)
        # traversal mode q is geometric mode orientation * q
        o = domain.orientation(k)
        tables.append({int(o * q): spectrum[i] for i, q in enumerate(modes) if keep[i]})

    def ev(k, z):
        return _trig_eval(domain, k, tables[k], z)

    return BoundaryFunction(f.sampling, tuple(new_vals), ev, f"trunc{K}({f.label})")
