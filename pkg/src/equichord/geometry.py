"""Constant-curvature primitives on E2, S2 and the hyperboloid model of H2.

Conventions fixed here and relied on everywhere else:

* S2 is the unit sphere in R^3.
* H2 is the upper sheet (x0 > 0) of -x0^2 + x1^2 + x2^2 = -1 in Minkowski
  3-space with signature (-, +, +).
* Closed curves are parameterized counterclockwise with period 2*pi; the
  interior (convex side) lies to the left of the forward tangent.
* "Angle with the curve" always means the angle in (0, pi) measured from the
  forward tangent.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from scipy.optimize import brentq

from .errors import (
    BadRadius,
    DegenerateVelocity,
    MixedGeometry,
    NoIntersection,
    Tangential,
    ZeroVector,
)

__all__ = [
    "Geometry",
    "SurfacePoint",
    "TangentVector",
    "Geodesic",
    "ParametricCurve",
    "geodesic_point",
    "distance",
    "angle_between",
    "circle_curve",
    "geodesic_curvature",
    "shoot_to_curve",
]

TWO_PI = 2.0 * np.pi
_ON_MANIFOLD_TOL = 1e-12


class Geometry(enum.Enum):
    EUCLIDEAN = "E2"
    SPHERICAL = "S2"
    HYPERBOLIC = "H2"

    @property
    def ambient_dim(self) -> int:
        return 2 if self is Geometry.EUCLIDEAN else 3


def mdot(geometry: Geometry, u, v):
    """Ambient inner product: Euclidean on E2/S2, Minkowski (-,+,+) on H2."""
    u = np.asarray(u)
    v = np.asarray(v)
    if geometry is Geometry.HYPERBOLIC:
        return -u[..., 0] * v[..., 0] + u[..., 1] * v[..., 1] + u[..., 2] * v[..., 2]
    return (u * v).sum(axis=-1)


def mnorm(geometry: Geometry, v):
    return np.sqrt(mdot(geometry, v, v))


def project_to_manifold(geometry: Geometry, coords: np.ndarray) -> np.ndarray:
    """Rescale coords back onto the surface (controls drift in long chains)."""
    if geometry is Geometry.EUCLIDEAN:
        return coords
    if geometry is Geometry.SPHERICAL:
        return coords / np.linalg.norm(coords)
    q = -mdot(geometry, coords, coords)
    return coords / np.sqrt(q)


def _manifold_defect(geometry: Geometry, coords: np.ndarray) -> float:
    if geometry is Geometry.EUCLIDEAN:
        return 0.0
    if geometry is Geometry.SPHERICAL:
        return abs(float(coords @ coords) - 1.0)
    return abs(float(mdot(geometry, coords, coords)) + 1.0)


@dataclass(frozen=True)
class SurfacePoint:
    geometry: Geometry
    coords: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coords, dtype=float)
        object.__setattr__(self, "coords", c)
        if c.shape != (self.geometry.ambient_dim,):
            raise ValueError(f"expected {self.geometry.ambient_dim} coordinates, got {c.shape}")
        if _manifold_defect(self.geometry, c) > _ON_MANIFOLD_TOL:
            raise ValueError(f"point not on the {self.geometry.value} manifold: {c}")
        if self.geometry is Geometry.HYPERBOLIC and c[0] <= 0:
            raise ValueError("H2 point must lie on the upper sheet (x0 > 0)")


@dataclass(frozen=True)
class TangentVector:
    base: SurfacePoint
    components: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.components, dtype=float)
        object.__setattr__(self, "components", v)
        g = self.base.geometry
        if v.shape != (g.ambient_dim,):
            raise ValueError("tangent vector dimension mismatch")
        if g is not Geometry.EUCLIDEAN:
            scale = max(1.0, float(np.abs(v).max()))
            if abs(float(mdot(g, self.base.coords, v))) > _ON_MANIFOLD_TOL * scale:
                raise ValueError("vector is not tangent to the surface at its base point")

    @property
    def norm(self) -> float:
        return float(mnorm(self.base.geometry, self.components))


@dataclass(frozen=True)
class Geodesic:
    start: SurfacePoint
    direction: TangentVector

    def __post_init__(self):
        if self.direction.base is not self.start and not np.allclose(
            self.direction.base.coords, self.start.coords, atol=1e-12
        ):
            raise ValueError("geodesic direction must be based at the start point")
        if abs(self.direction.norm - 1.0) > _ON_MANIFOLD_TOL:
            raise ValueError("geodesic direction must have unit norm")

    @staticmethod
    def through(p: SurfacePoint, v: np.ndarray) -> "Geodesic":
        """Geodesic from p in the direction of v (normalized here)."""
        v = np.asarray(v, dtype=float)
        n = float(mnorm(p.geometry, v))
        if n < 1e-14:
            raise ZeroVector("cannot build a geodesic from a zero direction")
        return Geodesic(p, TangentVector(p, v / n))


def _geodesic_coords(geometry: Geometry, p, u, s):
    if geometry is Geometry.EUCLIDEAN:
        return p + s * u
    if geometry is Geometry.SPHERICAL:
        return p * np.cos(s) + u * np.sin(s)
    return p * np.cosh(s) + u * np.sinh(s)


def geodesic_point(g: Geodesic, s: float) -> SurfacePoint:
    """Point at arc length s along the geodesic."""
    geom = g.start.geometry
    c = _geodesic_coords(geom, g.start.coords, g.direction.components, float(s))
    return SurfacePoint(geom, project_to_manifold(geom, c))


def _distance_coords(geometry: Geometry, p, q):
    if geometry is Geometry.EUCLIDEAN:
        d = q - p
        return np.sqrt((d * d).sum(axis=-1))
    if geometry is Geometry.SPHERICAL:
        cross = np.cross(p, q)
        return np.arctan2(np.sqrt((cross * cross).sum(axis=-1)), (p * q).sum(axis=-1))
    c = -mdot(geometry, p, q)
    return np.arccosh(np.maximum(c, 1.0))


def distance(p: SurfacePoint, q: SurfacePoint) -> float:
    """Geodesic distance between two points of the same geometry."""
    if p.geometry is not q.geometry:
        raise MixedGeometry(f"cannot measure distance between {p.geometry} and {q.geometry}")
    return float(_distance_coords(p.geometry, p.coords, q.coords))


def angle_between(u: TangentVector, v: TangentVector) -> float:
    """Angle in [0, pi] in the induced Riemannian metric."""
    if u.base.geometry is not v.base.geometry:
        raise MixedGeometry("tangent vectors live on different geometries")
    if not np.allclose(u.base.coords, v.base.coords, atol=1e-9):
        raise ValueError("tangent vectors must share a base point")
    nu, nv = u.norm, v.norm
    if nu < 1e-14 or nv < 1e-14:
        raise ZeroVector("angle undefined for a zero tangent vector")
    c = float(mdot(u.base.geometry, u.components, v.components)) / (nu * nv)
    return float(np.arccos(np.clip(c, -1.0, 1.0)))


# ---------------------------------------------------------------------------
# curves


@dataclass(frozen=True)
class ParametricCurve:
    """Closed curve given by callables on a fixed 2*pi parameter interval.

    ``point``/``velocity`` must accept scalars or arrays and preserve dtype
    (so the finite-difference oracles can evaluate them in extended
    precision).  ``acceleration`` is optional; when absent, curvature falls
    back to a central difference of the analytic velocity.
    """

    geometry: Geometry
    point: Callable[[np.ndarray], np.ndarray]
    velocity: Callable[[np.ndarray], np.ndarray]
    acceleration: Optional[Callable[[np.ndarray], np.ndarray]] = None
    period: float = TWO_PI

    def point_on(self, t: float) -> SurfacePoint:
        c = np.asarray(self.point(float(t)), dtype=float)
        return SurfacePoint(self.geometry, project_to_manifold(self.geometry, c))

    def unit_tangent(self, t: float) -> np.ndarray:
        v = np.asarray(self.velocity(float(t)), dtype=float)
        speed = float(mnorm(self.geometry, v))
        if speed < 1e-10:
            raise DegenerateVelocity(f"curve speed {speed:.3e} at t={t}")
        return v / speed


def inward_normal(geometry: Geometry, p: np.ndarray, unit_t: np.ndarray) -> np.ndarray:
    """Unit normal on the convex side of a counterclockwise curve.

    E2: rotate the tangent by +pi/2.  S2: p x T.  H2: the Minkowski cross
    product G (p x T) with G = diag(-1, 1, 1).
    """
    if geometry is Geometry.EUCLIDEAN:
        return np.array([-unit_t[1], unit_t[0]])
    n = np.cross(p, unit_t)
    if geometry is Geometry.HYPERBOLIC:
        n = n * np.array([-1.0, 1.0, 1.0])
        n = n / np.sqrt(mdot(geometry, n, n))
    return n


def circle_curve(geometry: Geometry, radius: float) -> ParametricCurve:
    """Geodesic circle of the given radius, counterclockwise, period 2*pi.

    Geodesic curvature is 1/R, cot R, coth R and length 2*pi*R,
    2*pi*sin R, 2*pi*sinh R on E2, S2, H2 respectively.
    """
    r = float(radius)
    if r <= 0:
        raise BadRadius("circle radius must be positive")
    if geometry is Geometry.SPHERICAL and r >= np.pi / 2:
        raise BadRadius("spherical circle radius must be < pi/2 for convexity")

    if geometry is Geometry.EUCLIDEAN:

        def point(t):
            t = np.asarray(t)
            return np.stack([r * np.cos(t), r * np.sin(t)], axis=-1)

        def velocity(t):
            t = np.asarray(t)
            return np.stack([-r * np.sin(t), r * np.cos(t)], axis=-1)

        def acceleration(t):
            t = np.asarray(t)
            return np.stack([-r * np.cos(t), -r * np.sin(t)], axis=-1)

    elif geometry is Geometry.SPHERICAL:
        sr, cr = np.sin(r), np.cos(r)

        def point(t):
            t = np.asarray(t)
            return np.stack([sr * np.cos(t), sr * np.sin(t), cr * np.ones_like(t)], axis=-1)

        def velocity(t):
            t = np.asarray(t)
            return np.stack([-sr * np.sin(t), sr * np.cos(t), np.zeros_like(t)], axis=-1)

        def acceleration(t):
            t = np.asarray(t)
            return np.stack([-sr * np.cos(t), -sr * np.sin(t), np.zeros_like(t)], axis=-1)

    else:
        sr, cr = np.sinh(r), np.cosh(r)

        def point(t):
            t = np.asarray(t)
            return np.stack([cr * np.ones_like(t), sr * np.cos(t), sr * np.sin(t)], axis=-1)

        def velocity(t):
            t = np.asarray(t)
            return np.stack([np.zeros_like(t), -sr * np.sin(t), sr * np.cos(t)], axis=-1)

        def acceleration(t):
            t = np.asarray(t)
            return np.stack([np.zeros_like(t), -sr * np.cos(t), -sr * np.sin(t)], axis=-1)

    return ParametricCurve(geometry, point, velocity, acceleration)


_FD_STEP = 1e-5


def geodesic_curvature(curve: ParametricCurve, t: float) -> float:
    """Signed geodesic curvature, positive for counterclockwise convex curves.

    Computed as <a, N> / |v|^2 where a is the ambient acceleration and N the
    inward unit normal; the surface-normal component of a drops out because N
    is tangent.
    """
    g = curve.geometry
    t = float(t)
    v = np.asarray(curve.velocity(t), dtype=float)
    speed2 = float(mdot(g, v, v))
    if speed2 < 1e-20:
        raise DegenerateVelocity(f"curve speed below 1e-10 at t={t}")
    if curve.acceleration is not None:
        a = np.asarray(curve.acceleration(t), dtype=float)
    else:
        h = _FD_STEP
        a = (np.asarray(curve.velocity(t + h)) - np.asarray(curve.velocity(t - h))) / (2 * h)
    p = np.asarray(curve.point(t), dtype=float)
    n = inward_normal(g, project_to_manifold(g, p), v / np.sqrt(speed2))
    return float(mdot(g, a, n)) / speed2


def _chord_plane_function(geometry, p, d):
    """Scalar function vanishing exactly on the geodesic through p along d."""
    if geometry is Geometry.EUCLIDEAN:

        def f(q):
            return d[0] * (q[..., 1] - p[1]) - d[1] * (q[..., 0] - p[0])

    else:
        # great circle / H2 geodesic = surface cut by the plane span(p, d)
        n = np.cross(p, d)

        def f(q):
            return q @ n

    return f


def _chord_tangent_at_arrival(geometry, p, d, length):
    if geometry is Geometry.EUCLIDEAN:
        return d
    if geometry is Geometry.SPHERICAL:
        return -p * np.sin(length) + d * np.cos(length)
    return p * np.sinh(length) + d * np.cosh(length)


def shoot_to_curve(
    curve: ParametricCurve,
    t0: float,
    theta: float,
    n_grid: int = 256,
) -> tuple[float, float, float]:
    """Launch a geodesic chord into the convex side and find where it lands.

    From curve(t0), shoot at angle ``theta`` (measured from the forward
    tangent, into the interior) and return ``(t1, arrival_angle,
    chord_length)`` for the first forward intersection.  ``arrival_angle`` is
    the angle between the arriving chord direction and the forward tangent at
    t1, so equiangular chords report arrival_angle == theta.
    """
    g = curve.geometry
    t0 = float(t0)
    theta = float(theta)
    if theta < 1e-6 or theta > np.pi - 1e-6:
        raise Tangential(f"launch angle {theta} too close to tangential")

    p = project_to_manifold(g, np.asarray(curve.point(t0), dtype=float))
    tan = curve.unit_tangent(t0)
    nrm = inward_normal(g, p, tan)
    d = np.cos(theta) * tan + np.sin(theta) * nrm
    d = d / float(mnorm(g, d))

    side = _chord_plane_function(g, p, d)
    guard = 1e-6
    period = curve.period
    ts = np.linspace(t0 + guard, t0 + period - guard, n_grid)
    vals = np.asarray(side(np.asarray(curve.point(ts), dtype=float)))

    t1 = None
    for i in range(n_grid - 1):
        if vals[i] == 0.0:
            t1 = float(ts[i])
            break
        if vals[i] * vals[i + 1] < 0.0:
            t1 = float(
                brentq(lambda t: float(side(np.asarray(curve.point(t), dtype=float))),
                       ts[i], ts[i + 1], xtol=1e-13, rtol=8.9e-16)
            )
            break
    if t1 is None:
        raise NoIntersection("no forward intersection found (curve convex and closed?)")

    q = project_to_manifold(g, np.asarray(curve.point(t1), dtype=float))
    length = float(_distance_coords(g, p, q))
    w = _chord_tangent_at_arrival(g, p, d, length)
    tan1 = curve.unit_tangent(t1)
    c = float(mdot(g, w, tan1)) / float(mnorm(g, w))
    arrival = float(np.arccos(np.clip(c, -1.0, 1.0)))
    return t1 % period, arrival, length
