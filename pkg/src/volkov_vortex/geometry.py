"""Geometric-phase bookkeeping for a vortex line tilted by ``theta`` from the beam axis.

A scalar electron circling the vortex line picks up a Berry phase ``2*pi*mu``; matching
this to the monopole flux through the cap of half-angle ``theta`` gives the effective
monopole charge ``mu = (1 - cos(theta)) / 2``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .mathcore import DomainError


class Regime(enum.Enum):
    PARAXIAL = "paraxial"      # theta = 0, mu = 0
    ORTHOGONAL = "orthogonal"  # theta = pi/2, mu = 1/2
    TILTED = "tilted"          # anything else: non-quantised mu


def _check_theta(theta: float) -> None:
    if not (0.0 <= theta <= math.pi):
        raise DomainError(f"tilt angle {theta!r} outside [0, pi]")


def monopole_charge(theta: float) -> float:
    _check_theta(theta)
    return 0.5 * (1.0 - math.cos(theta))


def berry_phase(theta: float) -> float:
    _check_theta(theta)
    return math.pi * (1.0 - math.cos(theta))


def solid_angle(theta: float) -> float:
    """Solid angle of the polar cap bounded by a circle of colatitude ``theta``."""
    _check_theta(theta)
    return 2.0 * math.pi * (1.0 - math.cos(theta))


def regime(theta: float, atol: float = 1e-12) -> Regime:
    _check_theta(theta)
    if theta <= atol:
        return Regime.PARAXIAL
    if abs(theta - 0.5 * math.pi) <= atol:
        return Regime.ORTHOGONAL
    return Regime.TILTED


@dataclass(frozen=True)
class VortexGeometry:
    theta: float
    mu: float
    berry_phase: float
    solid_angle: float
    regime: Regime

    @classmethod
    def from_theta(cls, theta: float) -> "VortexGeometry":
        return cls(theta, monopole_charge(theta), berry_phase(theta), solid_angle(theta), regime(theta))


def gauge_position_shift(mu: float, p, sigma_expect) -> np.ndarray:
    """``R - r = mu (p x n') / |p|^2``, the abelian Berry-connection shift of the position."""
    p = np.asarray(p, dtype=float)
    p2 = float(p @ p)
    if p2 == 0:
        raise DomainError("gauge shift undefined at zero momentum")
    return mu * np.cross(p, np.asarray(sigma_expect, dtype=float)) / p2


@dataclass(frozen=True)
class AngularMomentumLedger:
    l: int
    n: int
    s: float
    mu: float
    n_prime: np.ndarray
    L3: np.ndarray
    L4: np.ndarray

    @property
    def l_prime(self) -> int:
        return self.l + self.n

    @property
    def total_L(self) -> float:
        return self.l_prime + self.mu

    @property
    def total_S(self) -> float:
        return self.s - self.mu


def ledger(l: int, n: int, theta: float, s: float, p_hat=(0.0, 0.0, 1.0),
           sigma_expect=(0.0, 0.0, 1.0), k_prime_hat=None) -> AngularMomentumLedger:
    """Angular-momentum decomposition of ``(r + A(p)) x (p + k')``.

    ``L3 = -mu n'``. ``L4 = A(p_hat) x k'_hat`` with ``k'`` along ``p`` in the head-on
    geometry (the default); it vanishes whenever ``n'`` is parallel to ``p``.
    """
    if s not in (0.5, -0.5):
        raise DomainError("s must be +1/2 or -1/2")
    mu = monopole_charge(theta)
    p_hat = np.asarray(p_hat, dtype=float)
    n_prime = np.asarray(sigma_expect, dtype=float)
    kp = p_hat if k_prime_hat is None else np.asarray(k_prime_hat, dtype=float)
    L4 = np.cross(gauge_position_shift(mu, p_hat, n_prime), kp)
    return AngularMomentumLedger(int(l), int(n), float(s), mu, n_prime, -mu * n_prime, L4)


def berry_curvature(charge: float, P) -> np.ndarray:
    """Monopole curvature ``charge * P / |P|^3``."""
    P = np.asarray(P, dtype=float)
    r = math.sqrt(float(P @ P))
    if r == 0:
        raise DomainError("curvature is singular at the monopole (P = 0)")
    return charge * P / r ** 3


def berry_connection(charge: float, P) -> np.ndarray:
    """Monopole connection ``charge * (1 - cos th)/(P sin th) phi_hat`` in the gauge regular on +z.

    Its curl reproduces :func:`berry_curvature` away from the -z Dirac string.
    """
    P = np.asarray(P, dtype=float)
    r = math.sqrt(float(P @ P))
    rho2 = P[0] ** 2 + P[1] ** 2
    if r == 0 or (rho2 == 0 and P[2] < 0):
        raise DomainError("connection singular on the Dirac string")
    if rho2 == 0:
        return np.zeros(3)
    # (1 - cos th)/(r sin th) * phi_hat == (r - z)/(r rho^2) * (-y, x, 0)
    return charge * (r - P[2]) / (r * rho2) * np.array([-P[1], P[0], 0.0])


def vortex_phase_factor(l_prime: int, e_x: float, e_y: float) -> complex:
    """``(e_x + i e_y)^{l'}`` for a unit transverse vector, i.e. ``exp(i l' phi)``."""
    if abs(e_x * e_x + e_y * e_y - 1.0) > 1e-10:
        raise DomainError("(e_x, e_y) must be a unit vector")
    return complex(e_x, e_y) ** int(l_prime)
