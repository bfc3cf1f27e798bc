"""Root solvers for the admissibility equations of equiangular chords.

Three families of equations live here:

* ``k tan c = tan(k c)`` for integer k >= 2, solved in the pole-free form
  ``(k-1) sin((k+1)c) - (k+1) sin((k-1)c) = 0`` (the two differ exactly by
  the factor 2 cos c cos kc, so candidate roots are filtered back through
  the tangent form);
* the geometry link ``cot c = cos R cot alpha`` (sphere) and
  ``cot c = cosh R cot alpha`` (hyperbolic plane), together with the
  constants (c, a) attached to a circle of radius R with contact angle
  alpha;
* the integer equation tan(kr pi/n) tan(pi/n) = tan(k pi/n) tan(r pi/n),
  evaluated projectively in sines and cosines, with the arithmetic
  characterization k + r = n/2 and n | (k-1)(r-1) as an independent check.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.optimize import brentq

from .errors import BadRadius, OutOfRange
from .geometry import Geometry

__all__ = [
    "AngleSolution",
    "DiophantineSolution",
    "gutkin_roots",
    "contact_angle_from_c",
    "lemma_constants",
    "f_star",
    "solve_angle",
    "solve_restr2",
    "connelly_check",
]


@dataclass(frozen=True)
class AngleSolution:
    k: int
    geometry: Geometry
    c: float
    alpha: float
    residual: float
    radius: Optional[float] = None


@dataclass(frozen=True)
class DiophantineSolution:
    n: int
    k: int
    r: int
    lhs_minus_rhs: float


def _polefree(k: int, c):
    return (k - 1) * np.sin((k + 1) * c) - (k + 1) * np.sin((k - 1) * c)


def gutkin_roots(k: int, n_grid: int = 1_000_000) -> list[float]:
    """All solutions of k tan c = tan(kc) in (0, pi), sorted ascending.

    The pole-free form is scanned for sign changes on a uniform grid and each
    bracket is polished by Brent's method.  Candidates where tan c or tan(kc)
    sits at a pole (both poles can only align at c = pi/2 for odd k, where
    the tangent equation fails in the limit) are discarded.
    """
    k = int(k)
    if k < 2:
        raise OutOfRange("k must be an integer >= 2")
    inset = 1e-9
    grid = np.linspace(inset, np.pi - inset, n_grid)
    vals = _polefree(k, grid)
    sign_change = np.nonzero(vals[:-1] * vals[1:] < 0.0)[0]

    roots = []
    for i in sign_change:
        c = brentq(lambda x: float(_polefree(k, x)), grid[i], grid[i + 1],
                   xtol=1e-15, rtol=8.9e-16)
        # the pole-free form has a triple zero on the trivial set tan c = 0;
        # below ~(eps)^(1/3) of the endpoints roundoff noise fakes sign
        # changes, while genuine roots stay at distance >~ 4.49/k
        if c < 1e-4 or c > np.pi - 1e-4:
            continue
        # filter: the original tangent equation must hold away from poles
        if abs(np.cos(c)) < 1e-6 or abs(np.cos(k * c)) < 1e-6:
            continue
        if abs(k * np.tan(c) - np.tan(k * c)) > 1e-6 * (1.0 + abs(k * np.tan(c))):
            continue
        roots.append(float(c))
    return sorted(roots)


def contact_angle_from_c(geometry: Geometry, radius: Optional[float], c: float) -> float:
    """Contact angle alpha matching the chord half-span c on a circle.

    Branch: alpha in (0, pi) with sign(cos alpha) = sign(cos c).
    """
    c = float(c)
    if not 0.0 < c < np.pi:
        raise OutOfRange("c must lie in (0, pi)")
    if geometry is Geometry.EUCLIDEAN:
        return c
    factor = _radius_factor(geometry, radius)
    cot_alpha = np.cos(c) / np.sin(c) / factor
    return float(np.arctan2(1.0, cot_alpha))


def _radius_factor(geometry: Geometry, radius: Optional[float]) -> float:
    if radius is None or radius <= 0:
        raise BadRadius("radius must be positive")
    if geometry is Geometry.SPHERICAL:
        if radius >= np.pi / 2:
            raise BadRadius("spherical radius must be < pi/2")
        return float(np.cos(radius))
    if geometry is Geometry.HYPERBOLIC:
        return float(np.cosh(radius))
    return 1.0


def lemma_constants(geometry: Geometry, radius: Optional[float], alpha: float) -> tuple[float, float]:
    """(c, a) for a circle of radius R with contact angle alpha.

    c satisfies cot c = cos R cot alpha (cosh R on H2); a is the turning
    normalization sqrt(cos^2 R + sin^2 alpha sin^2 R) on the sphere and
    sqrt(cosh^2 R - sin^2 alpha sinh^2 R) on the hyperbolic plane.
    """
    alpha = float(alpha)
    if not 0.0 < alpha < np.pi:
        raise OutOfRange("alpha must lie in (0, pi)")
    if geometry is Geometry.EUCLIDEAN:
        return alpha, 1.0
    factor = _radius_factor(geometry, radius)
    cot_c = factor * np.cos(alpha) / np.sin(alpha)
    c = float(np.arctan2(1.0, cot_c))
    if geometry is Geometry.SPHERICAL:
        a = float(np.sqrt(np.cos(radius) ** 2 + np.sin(alpha) ** 2 * np.sin(radius) ** 2))
        # equivalent first form of the same lemma, kept as a self-check
        first = np.cos(c) / np.sqrt(np.sin(radius) ** 2 * np.cos(c) ** 2 + np.cos(radius) ** 2)
    else:
        a = float(np.sqrt(np.cosh(radius) ** 2 - np.sin(alpha) ** 2 * np.sinh(radius) ** 2))
        first = np.cos(c) / np.sqrt(np.cosh(radius) ** 2 - np.sinh(radius) ** 2 * np.cos(c) ** 2)
    assert abs(first - np.cos(alpha)) < 1e-12
    return c, a


def f_star(geometry: Geometry, radius: float, alpha: float) -> float:
    """Constant chord-foot distance on a circle: cot f = cot R / sin alpha
    (coth on H2)."""
    if geometry is Geometry.SPHERICAL:
        _radius_factor(geometry, radius)
        cot_f = np.cos(radius) / np.sin(radius) / np.sin(alpha)
        return float(np.arctan2(1.0, cot_f))
    if geometry is Geometry.HYPERBOLIC:
        _radius_factor(geometry, radius)
        coth_f = np.cosh(radius) / np.sinh(radius) / np.sin(alpha)
        return float(np.arctanh(1.0 / coth_f))
    raise OutOfRange("f_star is defined on S2 and H2 only")


def solve_angle(k: int, geometry: Geometry = Geometry.EUCLIDEAN,
                radius: Optional[float] = None) -> list[AngleSolution]:
    """gutkin_roots plus the geometry-specific contact angles."""
    sols = []
    for c in gutkin_roots(k):
        alpha = contact_angle_from_c(geometry, radius, c) if geometry is not Geometry.EUCLIDEAN else c
        res = abs(float(_polefree(k, c)))
        sols.append(AngleSolution(k=k, geometry=geometry, c=c, alpha=alpha,
                                  residual=res, radius=radius))
    return sols


def _restr2_residual(n: int, k: int, r: int) -> float:
    # tan a tan b = tan c tan d read projectively:
    # sin a sin b cos c cos d - sin c sin d cos a cos b = 0
    a = k * r * np.pi / n
    b = np.pi / n
    c = k * np.pi / n
    d = r * np.pi / n
    return float(np.sin(a) * np.sin(b) * np.cos(c) * np.cos(d)
                 - np.sin(c) * np.sin(d) * np.cos(a) * np.cos(b))


def solve_restr2(n: int, k: int, tol: float = 1e-9) -> list[DiophantineSolution]:
    """All r in [2, n-2] solving tan(kr pi/n) tan(pi/n) = tan(k pi/n) tan(r pi/n).

    Evaluated in the pole-free cross-multiplied form; the result is symmetric
    under r <-> n - r.
    """
    n, k = int(n), int(k)
    if not (2 <= k <= n / 2):
        raise OutOfRange(f"need 2 <= k <= n/2, got (n, k) = ({n}, {k})")
    out = []
    for r in range(2, n - 1):
        res = _restr2_residual(n, k, r)
        if abs(res) < tol:
            out.append(DiophantineSolution(n=n, k=k, r=r, lhs_minus_rhs=res))
    return out


def connelly_check(n: int, k: int, r: int) -> bool:
    """Arithmetic characterization of restr2 solutions: k + r = n/2 and
    n | (k-1)(r-1).  Stated only for 1 < k, r < n/2."""
    n, k, r = int(n), int(k), int(r)
    if not (1 < k < n / 2 and 1 < r < n / 2):
        raise OutOfRange("characterization applies for 1 < k, r < n/2 only")
    return 2 * (k + r) == n and ((k - 1) * (r - 1)) % n == 0
