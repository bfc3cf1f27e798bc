"""Equiangular-chord polygons: verification, spectral theory, constructions.

A Gutkin (n, k)-gon is a convex n-gon whose k-diagonals meet the sides at
the same angle alpha = pi (k - 1) / n at both endpoints.  Nontrivial
(non-regular) ones exist iff gcd(n, k - 1) > 1; the equiangular family
dimension is read off the spectrum of a circulant matrix whose first row is
built from differences of roots of unity.

Angle measurements are always literal (angles between segments), so
verification also works for diagonal indices above n/2 -- a k-diagonal is
an (n-k)-diagonal with swapped ends.  The spectral operations require the
canonical range 2 <= k <= n/2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    ArcSumMismatch,
    CoprimePair,
    Infeasible,
    NonConvex,
    NonPositiveArc,
    NotApplicable,
    OutOfRange,
    WrongOrientation,
)

__all__ = [
    "GutkinPolygon",
    "CirculantSpectrum",
    "contact_angle",
    "verify_gutkin",
    "beta_sum_check",
    "angle_periodicity_check",
    "circulant_spectrum",
    "equiangular_family_basis",
    "family_member",
    "polygon_from_sides",
    "construct_2kk",
    "construct_inscribed",
    "exists_nontrivial",
    "normalize_similarity",
    "regular_polygon",
    "interior_angles",
]


def _require_spectral_range(n: int, k: int):
    if not (2 <= k <= n / 2):
        raise OutOfRange(
            f"(n, k) = ({n}, {k}): need 2 <= k <= n/2 "
            "(a k-diagonal equals an (n-k)-diagonal with swapped ends)"
        )


def _require_diagonal_index(n: int, k: int):
    if not (2 <= k <= n - 1):
        raise OutOfRange(f"diagonal index k={k} out of range for n={n}")


def contact_angle(n: int, k: int) -> float:
    """pi (k - 1) / n, the forced contact angle of any Gutkin (n, k)-gon."""
    n, k = int(n), int(k)
    if n < 3:
        raise OutOfRange("need n >= 3")
    _require_diagonal_index(n, k)
    return np.pi * (k - 1) / n


def _vertex_array(vertices) -> np.ndarray:
    v = np.asarray(vertices, dtype=float)
    if v.ndim != 2 or v.shape[1] != 2 or v.shape[0] < 3:
        raise ValueError("vertices must be an (n, 2) array with n >= 3")
    return v


def _check_convex_ccw(v: np.ndarray):
    n = len(v)
    e = np.roll(v, -1, axis=0) - v
    cross = e[:, 0] * np.roll(e, -1, axis=0)[:, 1] - e[:, 1] * np.roll(e, -1, axis=0)[:, 0]
    if np.all(cross < 0):
        raise WrongOrientation("vertices are clockwise; expected counterclockwise")
    if not np.all(cross > 0):
        raise NonConvex("polygon is not strictly convex")


def _angle(a: np.ndarray, b: np.ndarray, c: np.ndarray) -> float:
    """Unsigned angle at b between rays b->a and b->c."""
    u, w = a - b, c - b
    cosv = (u @ w) / (np.linalg.norm(u) * np.linalg.norm(w))
    return float(np.arccos(np.clip(cosv, -1.0, 1.0)))


def interior_angles(v: np.ndarray) -> np.ndarray:
    n = len(v)
    return np.array([_angle(v[(i - 1) % n], v[i], v[(i + 1) % n]) for i in range(n)])


@dataclass(frozen=True)
class GutkinPolygon:
    n: int
    k: int
    vertices: np.ndarray
    alpha: float
    max_residual: float = 0.0
    beta_angles: np.ndarray | None = None

    def __post_init__(self):
        object.__setattr__(self, "vertices", _vertex_array(self.vertices))


@dataclass(frozen=True)
class CirculantSpectrum:
    n: int
    k: int
    eigenvalues: np.ndarray
    zero_set: tuple[int, ...]
    M: int = field(init=False)

    def __post_init__(self):
        zs = tuple(sorted(int(r) for r in self.zero_set))
        object.__setattr__(self, "zero_set", zs)
        object.__setattr__(self, "M", sum(1 for r in zs if 2 <= r <= self.n - 2))
        lam = self.eigenvalues
        if abs(lam[0]) > 1e-12 * max(1.0, np.abs(lam).max()):
            raise AssertionError("lambda_0 must vanish")
        if abs(lam[1]) < 1e-9 or abs(lam[-1]) < 1e-9:
            raise AssertionError("lambda_1 and lambda_{n-1} must be nonzero")


def verify_gutkin(vertices, k: int, tol: float = 1e-9) -> dict:
    """Measure all 2n contact angles of the k-diagonals.

    is_gutkin iff every measured angle deviates from their common mean by
    less than tol.  beta_angles (the angle between the two diagonals at each
    vertex) are included when n != 2k.
    """
    v = _vertex_array(vertices)
    n = len(v)
    k = int(k)
    _require_diagonal_index(n, k)
    _check_convex_ccw(v)

    measured = np.empty(2 * n)
    for i in range(n):
        measured[2 * i] = _angle(v[(i + 1) % n], v[i], v[(i + k) % n])
        measured[2 * i + 1] = _angle(v[(i + k - 1) % n], v[(i + k) % n], v[i])
    mean = float(measured.mean())
    max_residual = float(np.abs(measured - mean).max())

    betas = None
    if n != 2 * k:
        betas = np.array([_angle(v[(i - k) % n], v[i], v[(i + k) % n]) for i in range(n)])

    return {
        "is_gutkin": bool(max_residual < tol),
        "alpha_measured": mean,
        "max_residual": max_residual,
        "beta_angles": betas,
        "n": n,
        "k": k,
    }


def as_gutkin_polygon(vertices, k: int, tol: float = 1e-9) -> GutkinPolygon:
    rep = verify_gutkin(vertices, k, tol)
    if not rep["is_gutkin"]:
        raise NonConvex(
            f"polygon is not Gutkin for k={k}: max contact-angle spread "
            f"{rep['max_residual']:.3e} >= tol {tol:g}"
        )
    return GutkinPolygon(n=rep["n"], k=k, vertices=np.asarray(vertices, float),
                         alpha=rep["alpha_measured"], max_residual=rep["max_residual"],
                         beta_angles=rep["beta_angles"])


def beta_sum_check(p: GutkinPolygon) -> float:
    """|alpha - (pi (n - 2) - sum beta_i) / (2n)|; undefined at n = 2k."""
    if p.n == 2 * p.k:
        raise NotApplicable("beta angles do not exist when n = 2k")
    betas = p.beta_angles
    if betas is None:
        betas = verify_gutkin(p.vertices, p.k)["beta_angles"]
    predicted = (np.pi * (p.n - 2) - betas.sum()) / (2 * p.n)
    return float(abs(p.alpha - predicted))


def angle_periodicity_check(p: GutkinPolygon, tol: float = 1e-9) -> bool:
    """Interior angle at v_i equals the one at v_{i+k-1}, for all i."""
    ang = interior_angles(p.vertices)
    shifted = np.roll(ang, -(p.k - 1) % p.n)
    return bool(np.abs(ang - shifted).max() < tol)


# ---------------------------------------------------------------------------
# circulant spectral theory


def _first_row(n: int, k: int) -> np.ndarray:
    """Row (omega^{nu-m} - omega^{m-nu})_{nu<k} padded with zeros; m=(k-1)/2.

    Fractional powers for even k go through the exponential directly.
    Each entry is 2i sin(2 pi (nu - m) / n), i.e. i times a real number.
    """
    m = (k - 1) / 2.0
    row = np.zeros(n, dtype=complex)
    nu = np.arange(k)
    row[:k] = np.exp(2j * np.pi * (nu - m) / n) - np.exp(2j * np.pi * (m - nu) / n)
    return row


def circulant_spectrum(n: int, k: int, tol: float = 1e-9) -> CirculantSpectrum:
    """Eigenvalues lambda_r = sum_nu row_nu omega^{nu r} of the diagonal
    constraint matrix, cross-checked against the inverse DFT of its first row."""
    n, k = int(n), int(k)
    _require_spectral_range(n, k)
    row = _first_row(n, k)
    r = np.arange(n)
    powers = np.exp(2j * np.pi * np.outer(np.arange(k), r) / n)
    lam = row[:k] @ powers
    # same sum through the FFT; disagreement would mean an indexing bug
    lam_fft = np.fft.ifft(row) * n
    assert np.abs(lam - lam_fft).max() < 1e-9 * max(1.0, np.abs(lam).max())

    scale = np.abs(row[:k]).max()
    zero_set = tuple(int(i) for i in np.nonzero(np.abs(lam) / max(scale, 1e-30) < tol)[0])
    return CirculantSpectrum(n=n, k=k, eigenvalues=lam, zero_set=zero_set)


def equiangular_family_basis(n: int, k: int, tol: float = 1e-9) -> list[np.ndarray]:
    """Real basis of side-length deformations of the regular (n, k)-gon.

    Kernel of the real circulant S with rows S[i, i+nu] = 2 sin(2 pi (nu-m)/n)
    (the constraint matrix is i * S), complementary to the all-ones vector.
    Each member is orthonormal and orthogonal to the ones direction.
    """
    n, k = int(n), int(k)
    _require_spectral_range(n, k)
    m = (k - 1) / 2.0
    s = np.zeros(n)
    s[:k] = 2.0 * np.sin(2 * np.pi * (np.arange(k) - m) / n)
    S = np.empty((n, n))
    for i in range(n):
        S[i] = np.roll(s, i)
    _, sv, vt = np.linalg.svd(S)
    kernel = vt[sv < tol * max(sv.max(), 1.0)]
    ones = np.ones(n) / np.sqrt(n)
    proj = kernel - np.outer(kernel @ ones, ones)
    if len(proj) == 0:
        return []
    u, sv2, vt2 = np.linalg.svd(proj)
    basis = [vt2[i] for i in range(len(proj)) if sv2[i] > 1e-9]
    # deterministic sign: first substantial entry positive
    out = []
    for b in basis:
        j = int(np.argmax(np.abs(b) > 1e-8))
        out.append(b if b[j] > 0 else -b)
    return out


def polygon_from_sides(sides: np.ndarray) -> np.ndarray:
    """Equiangular polygon with exterior turning 2 pi / n per vertex:
    v_{i+1} = v_i + sides_i * omega^i."""
    x = np.asarray(sides, dtype=float)
    n = len(x)
    steps = x * np.exp(2j * np.pi * np.arange(n) / n)
    z = np.concatenate([[0.0 + 0.0j], np.cumsum(steps)[:-1]])
    return np.stack([z.real, z.imag], axis=-1)


def family_member(n: int, k: int, coefficients=None) -> np.ndarray:
    """Side-length vector 1 + s * b inside the positivity region.

    b combines the kernel basis with the given coefficients (default: the
    first basis vector alone); s is chosen so min(sides) = 0.1 * mean(sides).
    """
    basis = equiangular_family_basis(n, k)
    if not basis:
        raise Infeasible(f"({n}, {k}) admits only the regular polygon")
    if coefficients is None:
        b = basis[0]
    else:
        coefficients = np.asarray(coefficients, dtype=float)
        if len(coefficients) != len(basis):
            raise OutOfRange(f"expected {len(basis)} coefficients")
        b = sum(c * v for c, v in zip(coefficients, basis))
    # basis is orthogonal to ones, so mean(1 + s b) = 1
    lo = float(b.min())
    if lo >= 0:
        raise Infeasible("degenerate kernel direction")
    s = 0.9 / (-lo)
    return 1.0 + s * b


def exists_nontrivial(n: int, k: int) -> bool:
    """Nontrivial Gutkin (n, k)-gons exist iff gcd(n, k - 1) > 1, except
    that the case n = 2k is special: there they always exist for k >= 3
    (the family has dimension k - 2, regardless of the gcd)."""
    n, k = int(n), int(k)
    _require_spectral_range(n, k)
    if n == 2 * k:
        return k >= 3
    return math.gcd(n, k - 1) > 1


def construct_2kk(k: int, free_params=()) -> GutkinPolygon:
    """Gutkin (2k, k)-gon with unit diagonals from k - 2 free side lengths.

    Sides x_0..x_{k-1} satisfy sum x_i (cos i theta, sin i theta) =
    (cos alpha, sin alpha) with theta = pi / k; the opposite sides are
    y_i = 2 cos(alpha) - x_i.  The first k - 2 sides are the free
    parameters; the last two are solved from the closure constraints.
    """
    k = int(k)
    if k < 2:
        raise OutOfRange("need k >= 2")
    params = np.asarray(free_params, dtype=float).reshape(-1)
    if len(params) != k - 2:
        raise OutOfRange(f"construct_2kk(k={k}) takes exactly {k - 2} free parameters")
    theta = np.pi / k
    alpha = np.pi * (k - 1) / (2 * k)

    i = np.arange(k)
    cols = np.stack([np.cos(i * theta), np.sin(i * theta)])  # 2 x k
    rhs = np.array([np.cos(alpha), np.sin(alpha)])
    rhs = rhs - cols[:, : k - 2] @ params
    x_tail = np.linalg.solve(cols[:, k - 2:], rhs)
    x = np.concatenate([params, x_tail])
    y = 2 * np.cos(alpha) - x
    if np.min(x) <= 0 or np.min(y) <= 0:
        raise Infeasible("side lengths leave the positivity polytope")

    sides = np.concatenate([x, y])
    v = polygon_from_sides(sides)
    return as_gutkin_polygon(v, k, tol=1e-8)


def construct_inscribed(n: int, k: int, arcs) -> GutkinPolygon:
    """Inscribed Gutkin polygon: p = gcd(n, k-1) arcs repeated q = n/p times.

    The arcs must be positive and sum to 2 pi / q.  Any k - 1 consecutive
    arcs then subtend 2 pi (k - 1) / n, so every contact angle is
    pi (k - 1) / n by the inscribed-angle theorem.
    """
    n, k = int(n), int(k)
    _require_diagonal_index(n, k)
    p = math.gcd(n, k - 1)
    if p < 2:
        raise CoprimePair(f"gcd({n}, {k - 1}) = 1: only regular polygons exist")
    q = n // p
    arcs = np.asarray(arcs, dtype=float)
    if len(arcs) != p:
        raise ArcSumMismatch(f"expected {p} arcs, got {len(arcs)}")
    if np.min(arcs) <= 0:
        raise NonPositiveArc("all arcs must be strictly positive")
    if abs(arcs.sum() - 2 * np.pi / q) > 1e-9:
        raise ArcSumMismatch(f"arcs must sum to 2 pi / {q}")
    # rescale away the (at most 1e-9) rounding slack so closure is exact
    arcs = arcs * (2 * np.pi / q / arcs.sum())

    pattern = np.tile(arcs, q)
    positions = np.concatenate([[0.0], np.cumsum(pattern)[:-1]])
    v = np.stack([np.cos(positions), np.sin(positions)], axis=-1)
    return as_gutkin_polygon(v, k, tol=1e-8)


def regular_polygon(n: int) -> np.ndarray:
    t = 2 * np.pi * np.arange(n) / n
    return np.stack([np.cos(t), np.sin(t)], axis=-1)


def normalize_similarity(p: GutkinPolygon) -> GutkinPolygon:
    """Canonical placement: v0 at the origin, v1 on the positive x axis;
    scale so the k-diagonal is 1 when n = 2k, else perimeter 1."""
    v = p.vertices - p.vertices[0]
    ang = np.arctan2(v[1, 1], v[1, 0])
    rot = np.array([[np.cos(-ang), -np.sin(-ang)], [np.sin(-ang), np.cos(-ang)]])
    v = v @ rot.T
    if p.n == 2 * p.k:
        scale = np.linalg.norm(v[p.k] - v[0])
    else:
        scale = np.linalg.norm(np.roll(v, -1, axis=0) - v, axis=1).sum()
    v = v / scale
    return GutkinPolygon(n=p.n, k=p.k, vertices=v, alpha=p.alpha,
                         max_residual=p.max_residual, beta_angles=p.beta_angles)
