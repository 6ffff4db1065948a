"""Circle domains and their oriented boundary samplings.

Circles are indexed the way the rest of the package expects: holes first, in
the order given, then the outer circle last.  With ``n`` boundary circles the
hole ``j`` (0-based) is circle ``j`` and the outer circle is circle ``n - 1``.

The boundary carries the standard orientation (domain on the left): the outer
circle is traversed counterclockwise and every hole clockwise.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateRadius, HoleOutsideOuter, OverlappingCircles, TooFewSamples

MIN_SEPARATION = 1e-3  # times the outer radius; hard floor
WARN_SEPARATION = 1e-2  # times the outer radius; conditioning warning below this
BOUNDARY_BAND = 1e-12


class ConditioningWarning(UserWarning):
    pass


@dataclass(frozen=True)
class Circle:
    center: complex
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", complex(self.center))
        object.__setattr__(self, "radius", float(self.radius))
        if not (self.radius > 0 and math.isfinite(self.radius)):
            raise DegenerateRadius(f"radius must be positive and finite, got {self.radius}")

    def point(self, theta):
        return self.center + self.radius * np.exp(1j * np.asarray(theta))


@dataclass(frozen=True)
class CircleDomain:
    outer: Circle
    holes: tuple[Circle, ...] = ()
    separation: float = field(default=math.inf)

    @property
    def n(self) -> int:
        """Number of boundary circles."""
        return len(self.holes) + 1

    @property
    def circles(self) -> tuple[Circle, ...]:
        return self.holes + (self.outer,)

    @property
    def is_disc(self) -> bool:
        return not self.holes

    def orientation(self, k: int) -> int:
        return 1 if k == self.n - 1 else -1

    def to_dict(self) -> dict:
        def enc(c):
            return {"center": [c.center.real, c.center.imag], "radius": c.radius}

        return {"outer": enc(self.outer), "holes": [enc(h) for h in self.holes]}

    @classmethod
    def from_dict(cls, data: dict) -> "CircleDomain":
        def dec(d):
            cx, cy = d["center"]
            return Circle(complex(float(cx), float(cy)), float(d["radius"]))

        return validate_domain(dec(data["outer"]), [dec(h) for h in data.get("holes", [])])


def _gap_inside(outer: Circle, hole: Circle) -> float:
    return outer.radius - abs(hole.center - outer.center) - hole.radius


def _gap_between(c1: Circle, c2: Circle) -> float:
    return abs(c1.center - c2.center) - c1.radius - c2.radius


def validate_domain(outer: Circle, holes=()) -> CircleDomain:
    holes = tuple(holes)
    gaps = []
    for j, h in enumerate(holes):
        g = _gap_inside(outer, h)
        if g <= 0:
            raise HoleOutsideOuter(f"hole {j} (center {h.center}, radius {h.radius}) "
                                   "does not lie strictly inside the outer circle")
        gaps.append(g)
    for i in range(len(holes)):
        for j in range(i + 1, len(holes)):
            g = _gap_between(holes[i], holes[j])
            if g <= 0:
                raise OverlappingCircles(f"holes {i} and {j} intersect")
            gaps.append(g)
    separation = min(gaps) if gaps else math.inf
    R = outer.radius
    if separation < MIN_SEPARATION * R:
        raise OverlappingCircles(
            f"boundary circles are {separation:.3g} apart, below the floor {MIN_SEPARATION * R:.3g}")
    if separation < WARN_SEPARATION * R:
        warnings.warn(f"boundary circles only {separation:.3g} apart; the series basis "
                      "will be poorly conditioned", ConditioningWarning, stacklevel=2)
    return CircleDomain(outer, holes, separation)


def traversal_points(domain: CircleDomain, k: int, m: int) -> np.ndarray:
    """``m`` equispaced points on circle ``k`` in the order of traversal."""
    circle = domain.circles[k]
    t = 2 * np.pi * np.arange(m) / m
    return circle.point(domain.orientation(k) * t)


@dataclass(frozen=True)
class BoundarySampling:
    domain: CircleDomain
    m: int
    points: tuple[np.ndarray, ...]

    def orientation(self, k: int) -> int:
        return self.domain.orientation(k)

    def angles(self, k: int) -> np.ndarray:
        """Geometric angles of the samples of circle ``k``, in [0, 2pi)."""
        t = 2 * np.pi * np.arange(self.m) / self.m
        return np.mod(self.orientation(k) * t, 2 * np.pi)

    @property
    def all_points(self) -> np.ndarray:
        return np.concatenate(self.points)

    def __eq__(self, other):
        return (isinstance(other, BoundarySampling)
                and self.domain == other.domain and self.m == other.m)

    def __hash__(self):
        return hash((self.domain, self.m))


def boundary_sampling(domain: CircleDomain, m: int, min_samples: int = 8) -> BoundarySampling:
    if m < min_samples:
        raise TooFewSamples(f"need at least {min_samples} samples per circle, got {m}")
    pts = []
    for k in range(domain.n):
        p = traversal_points(domain, k, m)
        p.flags.writeable = False
        pts.append(p)
    return BoundarySampling(domain, m, tuple(pts))


def contains(domain: CircleDomain, z) -> bool | np.ndarray:
    """True where ``z`` lies in the open domain.

    Points within ``1e-12 * R`` of a boundary circle count as boundary points,
    so rounded boundary samples are never reported inside."""
    z = np.asarray(z, dtype=complex)
    tol = BOUNDARY_BAND * domain.outer.radius
    inside = np.abs(z - domain.outer.center) < domain.outer.radius - tol
    for h in domain.holes:
        inside &= np.abs(z - h.center) > h.radius + tol
    return bool(inside) if inside.ndim == 0 else inside


def distance_to_boundary(domain: CircleDomain, z) -> np.ndarray:
    z = np.asarray(z, dtype=complex)
    d = np.abs(np.abs(z - domain.outer.center) - domain.outer.radius)
    for h in domain.holes:
        d = np.minimum(d, np.abs(np.abs(z - h.center) - h.radius))
    return d


def interior_grid(domain: CircleDomain, size: int | tuple[int, int] = 7,
                  margin: float = 0.05) -> np.ndarray:
    """Points of a ``size`` x ``size`` grid over the outer bounding box that lie
    in the domain at distance at least ``margin * R`` from the boundary."""
    nx, ny = (size, size) if isinstance(size, int) else size
    o, R = domain.outer.center, domain.outer.radius
    xs = o.real + np.linspace(-R, R, nx)
    ys = o.imag + np.linspace(-R, R, ny)
    X, Y = np.meshgrid(xs, ys)
    z = (X + 1j * Y).ravel()
    keep = contains(domain, z) & (distance_to_boundary(domain, z) >= margin * R)
    return z[keep]
