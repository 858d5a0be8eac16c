"""Geometric substrate: the genus-2 half-space and the majorant.

The ambient quadratic space is V = Q^5 with the signature (3,2) form

    q(x) = x3^2 - x1 x5 - x2 x4,        (x, x) = 2 q(x),

whose Gram matrix (of the bilinear form) is the constant `GRAM_Q`.  Points
z = (z1, z2, z3) of the genus-2 half-space (y1 > 0, y1 y3 - y2^2 > 0)
parametrize oriented negative 2-planes X_z = <Re u(z), Im u(z)> through the
isotropic embedding

    u(z) = (z2^2 - z1 z3, -z1, -z2, -z3, 1).

The linear form psi(z, x) = x1 - x2 z3 + 2 x3 z2 - x4 z1 + x5 (z2^2 - z1 z3)
cuts out the orthogonal-complement divisor Z(x) (a Humbert surface of
discriminant 4 q(x)), and

    R(x, z) = |psi(z, x)|^2 / (2 eta2),      eta2 = y1 y3 - y2^2,

is the positive correction that turns the indefinite form into the majorant
(x, x)_z = (x, x) + 2 R(x, z), whose Gram matrix P_z satisfies Siegel's
condition P_z Q^{-1} P_z = Q.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

__all__ = [
    "SiegelPoint",
    "AmbientVector",
    "GRAM_Q",
    "GRAM_Q_INV",
    "embed_u",
    "psi",
    "majorant_R",
    "majorant_gram",
    "humbert_discriminant",
]

GRAM_Q = np.array([
    [0.0, 0.0, 0.0, 0.0, -1.0],
    [0.0, 0.0, 0.0, -1.0, 0.0],
    [0.0, 0.0, 2.0, 0.0, 0.0],
    [0.0, -1.0, 0.0, 0.0, 0.0],
    [-1.0, 0.0, 0.0, 0.0, 0.0],
])

GRAM_Q_INV = np.array([
    [0.0, 0.0, 0.0, 0.0, -1.0],
    [0.0, 0.0, 0.0, -1.0, 0.0],
    [0.0, 0.0, 0.5, 0.0, 0.0],
    [0.0, -1.0, 0.0, 0.0, 0.0],
    [-1.0, 0.0, 0.0, 0.0, 0.0],
])


@dataclass(frozen=True)
class SiegelPoint:
    """Point z = (z1, z2, z3) of the genus-2 half-space.

    Membership requires y1 > 0 and eta2 = y1 y3 - y2^2 > 0 (then y3 > 0
    follows); violations raise ValueError.
    """

    z1: complex
    z2: complex
    z3: complex

    def __post_init__(self):
        if not (self.y1 > 0 and self.eta2 > 0):
            raise ValueError(
                f"point outside the half-space: y1={self.y1}, eta2={self.eta2}")

    @property
    def y1(self) -> float:
        return self.z1.imag

    @property
    def y2(self) -> float:
        return self.z2.imag

    @property
    def y3(self) -> float:
        return self.z3.imag

    @property
    def eta2(self) -> float:
        return self.y1 * self.y3 - self.y2 * self.y2


@dataclass(frozen=True)
class AmbientVector:
    """Rational vector x in V = Q^5; coordinates stored exactly."""

    x1: Fraction
    x2: Fraction
    x3: Fraction
    x4: Fraction
    x5: Fraction

    @staticmethod
    def of(x1, x2, x3, x4, x5) -> "AmbientVector":
        return AmbientVector(*(Fraction(v) for v in (x1, x2, x3, x4, x5)))

    @property
    def coords(self) -> tuple[Fraction, ...]:
        return (self.x1, self.x2, self.x3, self.x4, self.x5)

    def q_value(self) -> Fraction:
        """q(x) = x3^2 - x1 x5 - x2 x4 (exact)."""
        return self.x3 * self.x3 - self.x1 * self.x5 - self.x2 * self.x4

    def __neg__(self) -> "AmbientVector":
        return AmbientVector(-self.x1, -self.x2, -self.x3, -self.x4, -self.x5)


def embed_u(z: SiegelPoint) -> tuple[complex, complex, complex, complex, complex]:
    """The isotropic vector u(z) = (z2^2 - z1 z3, -z1, -z2, -z3, 1)."""
    return (z.z2 * z.z2 - z.z1 * z.z3, -z.z1, -z.z2, -z.z3, 1.0 + 0.0j)


def psi(z: SiegelPoint, x: AmbientVector) -> complex:
    """psi(z, x) = x1 - x2 z3 + 2 x3 z2 - x4 z1 + x5 (z2^2 - z1 z3).

    Linear in x; psi = 0 exactly on the Humbert surface Z(x).
    """
    return (float(x.x1)
            - float(x.x2) * z.z3
            + 2.0 * float(x.x3) * z.z2
            - float(x.x4) * z.z1
            + float(x.x5) * (z.z2 * z.z2 - z.z1 * z.z3))


def majorant_R(z: SiegelPoint, x: AmbientVector) -> float:
    """R(x, z) = |psi(z, x)|^2 / (2 eta2) >= 0, zero exactly on Z(x)."""
    p = psi(z, x)
    return (p.real * p.real + p.imag * p.imag) / (2.0 * z.eta2)


def _psi_coefficients(z: SiegelPoint) -> np.ndarray:
    """Coefficients c with psi(z, x) = sum_i c_i x_i."""
    return np.array([1.0 + 0.0j, -z.z3, 2.0 * z.z2, -z.z1,
                     z.z2 * z.z2 - z.z1 * z.z3])


def majorant_gram(z: SiegelPoint) -> np.ndarray:
    """Gram matrix P_z of the majorant x -> (x, x) + 2 R(x, z).

    Since 2 R(x, z) = |sum c_i x_i|^2 / eta2 with c the psi coefficients,
    P_z = Q + Re(c cbar^T) / eta2.  Raises ValueError if the result fails
    the positive-definiteness check (an implementation bug, not bad input).
    """
    c = _psi_coefficients(z)
    S = np.real(np.outer(c, np.conj(c)))
    P = GRAM_Q + S / z.eta2
    P = 0.5 * (P + P.T)
    if np.min(np.linalg.eigvalsh(P)) <= 0:
        raise ValueError("majorant Gram matrix not positive definite")
    return P


def humbert_discriminant(x: AmbientVector) -> Fraction:
    """Discriminant (2 x3)^2 - 4 x1 x5 - 4 x2 x4 of the surface Z(x); equals 4 q(x)."""
    return 4 * x.q_value()
