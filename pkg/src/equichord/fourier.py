"""Finite trigonometric polynomials with exact derivatives.

Periodic data everywhere in this package (radius-of-curvature profiles,
latitude perturbations, deformation modes) is stored as a constant plus a
finite list of harmonics ``amp * cos(k t + phase)``.  Derivatives are taken
by coefficient manipulation, never numerically.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = ["Harmonic", "TrigPolynomial"]


@dataclass(frozen=True)
class Harmonic:
    k: int
    amp: float
    phase: float = 0.0

    def __post_init__(self):
        if self.k < 0 or self.k != int(self.k):
            raise ValueError(f"harmonic order must be a nonnegative integer, got {self.k}")


@dataclass(frozen=True)
class TrigPolynomial:
    """``f(t) = c0 + sum_j amp_j cos(k_j t + phase_j)``."""

    c0: float = 0.0
    harmonics: tuple[Harmonic, ...] = field(default_factory=tuple)

    def __call__(self, t):
        out = np.zeros_like(np.asarray(t, dtype=np.result_type(t, 1.0))) + self.c0
        for h in self.harmonics:
            out = out + h.amp * np.cos(h.k * np.asarray(t) + h.phase)
        return out

    def derivative(self, order: int = 1) -> "TrigPolynomial":
        """Exact derivative, again a trigonometric polynomial.

        d/dt cos(kt + p) = k cos(kt + p + pi/2).
        """
        if order == 0:
            return self
        hs = tuple(
            Harmonic(h.k, h.amp * float(h.k) ** order, h.phase + order * np.pi / 2)
            for h in self.harmonics
            if h.k > 0
        )
        return TrigPolynomial(0.0, hs)

    @property
    def orders(self) -> set[int]:
        return {h.k for h in self.harmonics if h.amp != 0.0}

    def lipschitz_bound(self) -> float:
        """Upper bound on |f'|."""
        return float(sum(abs(h.amp) * h.k for h in self.harmonics))

    @staticmethod
    def from_pairs(c0: float, pairs) -> "TrigPolynomial":
        """Build from an iterable of (k, amp) or (k, amp, phase) tuples."""
        hs = []
        for p in pairs:
            if len(p) == 2:
                hs.append(Harmonic(int(p[0]), float(p[1])))
            else:
                hs.append(Harmonic(int(p[0]), float(p[1]), float(p[2])))
        return TrigPolynomial(float(c0), tuple(hs))
