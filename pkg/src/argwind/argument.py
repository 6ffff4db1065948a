"""Change of argument of a nonvanishing boundary function along bD.

Each circle is walked in its traversal order (outer counterclockwise, holes
clockwise) and the principal-value phase increments between consecutive
samples, including the closing one, are summed.  A circle whose largest
increment reaches ``pi/2`` is resampled at twice the density, when the
function can be resampled, until every increment is below the threshold.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .boundary import BoundaryFunction
from .errors import UnresolvedPhase, ZeroOnBoundary
from .geometry import CircleDomain, traversal_points

STEP_LIMIT = np.pi / 2
ZERO_RATIO = 1e-9
MAX_REFINE = 10


@dataclass(frozen=True)
class WindingReport:
    per_circle: tuple[float, ...]
    total: float
    total_turns: int
    integrality_defect: float
    min_modulus: float
    refinement_depth: int

    @property
    def per_circle_turns(self) -> tuple[int, ...]:
        return tuple(int(round(c / (2 * np.pi))) for c in self.per_circle)

    def to_dict(self) -> dict:
        return {
            "per_circle": list(self.per_circle),
            "per_circle_turns": list(self.per_circle_turns),
            "total": self.total,
            "total_turns": self.total_turns,
            "integrality_defect": self.integrality_defect,
            "min_modulus": self.min_modulus,
            "refinement_depth": self.refinement_depth,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "WindingReport":
        return cls(tuple(float(x) for x in d["per_circle"]), float(d["total"]),
                   int(d["total_turns"]), float(d["integrality_defect"]),
                   float(d["min_modulus"]), int(d["refinement_depth"]))


def phase_increments(values: np.ndarray) -> np.ndarray:
    """Principal-value increments of arg along a closed sample loop."""
    return np.angle(np.roll(values, -1) / values)


def unwrapped_phase(values: np.ndarray) -> np.ndarray:
    """Continuous branch of arg along the loop, starting at the principal value."""
    inc = phase_increments(values)[:-1]
    return np.angle(values[0]) + np.concatenate([[0.0], np.cumsum(inc)])


def _circle_winding(F: BoundaryFunction, k: int, domain: CircleDomain):
    vals = F.values[k]
    depth = 0
    while True:
        inc = phase_increments(vals)
        if np.max(np.abs(inc)) < STEP_LIMIT:
            return float(np.sum(inc)), depth, vals
        if F.evaluator is None:
            raise UnresolvedPhase(
                f"circle {k}: phase jumps by {np.max(np.abs(inc)):.3f} rad between raw samples; "
                "supply denser data")
        if depth >= MAX_REFINE:
            raise UnresolvedPhase(f"circle {k}: phase still unresolved after {depth} refinements")
        depth += 1
        vals = F.resample(k, traversal_points(domain, k, F.m * 2 ** depth))
        _check_modulus(vals, np.max(np.abs(vals)))


def _check_modulus(vals, scale):
    mn = float(np.min(np.abs(vals)))
    if not np.all(np.isfinite(vals)) or scale == 0 or mn < ZERO_RATIO * scale:
        raise ZeroOnBoundary(f"function (nearly) vanishes on the boundary: min |F| = {mn:.3e}")
    return mn


def change_of_argument(domain: CircleDomain, F: BoundaryFunction) -> WindingReport:
    if F.domain != domain:
        raise ValueError("boundary function lives on another domain")
    allv = F.all_values
    scale = float(np.max(np.abs(allv)))
    min_mod = _check_modulus(allv, scale)
    per_circle, depth = [], 0
    for k in range(domain.n):
        w, d, vals = _circle_winding(F, k, domain)
        per_circle.append(w)
        depth = max(depth, d)
        min_mod = min(min_mod, float(np.min(np.abs(vals))))
    total = math.fsum(per_circle)
    turns = int(round(total / (2 * np.pi)))
    return WindingReport(tuple(per_circle), total, turns,
                         abs(total / (2 * np.pi) - turns), min_mod, depth)


def zero_count_check(domain: CircleDomain, F: BoundaryFunction, zeros: int) -> bool:
    """True iff the change of argument of F equals ``2 pi * zeros``."""
    rep = change_of_argument(domain, F)
    return abs(rep.total - 2 * np.pi * zeros) <= 1e-6 * 2 * np.pi


def phase_table(domain: CircleDomain, F: BoundaryFunction) -> list[tuple[int, float, float]]:
    """Rows ``(circle, theta, unwrapped arg F)`` for plotting."""
    rows = []
    for k in range(domain.n):
        phase = unwrapped_phase(F.values[k])
        for theta, p in zip(F.sampling.angles(k), phase):
            rows.append((k, float(theta), float(p)))
    return rows
