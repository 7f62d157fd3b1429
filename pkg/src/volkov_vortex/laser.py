"""Linearly polarised monochromatic plane-wave laser.

The vector potential is ``e A(zeta) = m * a0 * cos(zeta) * polarization`` with laser
phase ``zeta = k.x = omega*t - k_vec.x_vec``. Charge and amplitude only ever appear
as the product ``a0 = e A0 / m``; the sign of ``a0`` carries the charge sign.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .mathcore import mdot, quadrature


class KinematicsError(ValueError):
    """Degenerate laser/electron kinematics, e.g. ``k.p <= 0``."""


def _unit(v) -> np.ndarray:
    return np.asarray(v, dtype=float)


@dataclass(frozen=True)
class LaserField:
    """Plane-wave laser. Defaults: head-on geometry (propagating along -z), y polarisation."""

    a0: float = 0.2
    omega: float = 0.05
    propagation: tuple[float, float, float] = (0.0, 0.0, -1.0)
    polarization: tuple[float, float, float] = (0.0, 1.0, 0.0)
    mass: float = 1.0

    def __post_init__(self):
        prop = _unit(self.propagation)
        pol = _unit(self.polarization)
        if not math.isfinite(self.a0):
            raise ValueError("a0 must be finite")
        if not (self.omega > 0 and math.isfinite(self.omega)):
            raise ValueError("omega must be positive")
        if not self.mass > 0:
            raise ValueError("mass must be positive")
        if abs(np.linalg.norm(prop) - 1.0) > 1e-12 or abs(np.linalg.norm(pol) - 1.0) > 1e-12:
            raise ValueError("propagation and polarization must be unit vectors")
        if abs(prop @ pol) > 1e-12:
            raise ValueError("polarization must be transverse to propagation")
        object.__setattr__(self, "propagation", tuple(float(c) for c in prop))
        object.__setattr__(self, "polarization", tuple(float(c) for c in pol))

    @property
    def k(self) -> np.ndarray:
        """Wave four-vector ``(omega, omega * propagation)``."""
        return np.array([self.omega, *(self.omega * c for c in self.propagation)])

    @property
    def eps(self) -> np.ndarray:
        """Polarisation as a space-like four-vector ``(0, polarization)``."""
        return np.array([0.0, *self.polarization])

    @property
    def amplitude(self) -> float:
        """``m * a0``, the peak value of ``e|A|``."""
        return self.mass * self.a0

    def with_a0(self, a0: float) -> "LaserField":
        return LaserField(a0, self.omega, self.propagation, self.polarization, self.mass)


@dataclass(frozen=True)
class PhaseIntegrals:
    F: float
    G: float
    f: float


def potential(laser: LaserField, zeta: float) -> np.ndarray:
    """``e A^mu(zeta)`` as a contravariant four-vector."""
    return laser.amplitude * math.cos(zeta) * laser.eps


def laser_phase(laser: LaserField, t: float, z: float, x: float = 0.0, y: float = 0.0) -> float:
    """``zeta = omega*t - k_vec . x_vec``; equals ``omega*(t + z)`` for the head-on default."""
    kx, ky, kz = (laser.omega * c for c in laser.propagation)
    return laser.omega * t - (kx * x + ky * y + kz * z)


def k_dot_p(laser: LaserField, p) -> float:
    kp = mdot(laser.k, p)
    if kp == 0:
        raise KinematicsError("k.p vanishes: electron co-moving with the wave")
    return kp


def transverse_momentum(laser: LaserField, p) -> float:
    """Magnitude of the electron momentum transverse to the laser axis."""
    pvec = np.asarray(p, dtype=float)[1:]
    n = np.asarray(laser.propagation)
    return float(np.linalg.norm(pvec - (pvec @ n) * n))


def phase_integrals(laser: LaserField, p, zeta: float) -> PhaseIntegrals:
    """Closed forms of the Volkov phase integrals for the cosine waveform.

    ``F = m a0 (p.eps)/(k.p) sin(zeta)`` (Minkowski product, so ``p.eps = -p_vec.pol``),
    ``G = m^2 a0^2/(2 k.p) (zeta/2 + sin(2 zeta)/4)``,
    ``f = m a0 p_perp/(k.p) sin(zeta)``.
    """
    kp = k_dot_p(laser, p)
    amp = laser.amplitude
    s = math.sin(zeta)
    F = amp * mdot(p, laser.eps) / kp * s
    G = amp * amp / (2.0 * kp) * (0.5 * zeta + 0.25 * math.sin(2.0 * zeta))
    f = amp * transverse_momentum(laser, p) / kp * s
    return PhaseIntegrals(F, G, f)


def phase_integrals_numeric(laser: LaserField, p, zeta: float, tol: float = 1e-12) -> PhaseIntegrals:
    """The same integrals by adaptive quadrature of their integrands (reference path)."""
    kp = k_dot_p(laser, p)
    p = np.asarray(p, dtype=float)
    pperp = transverse_momentum(laser, p)

    def eA(z):
        return potential(laser, z)

    F = quadrature(lambda z: mdot(p, eA(z)) / kp, 0.0, zeta, tol) if zeta else 0.0
    G = quadrature(lambda z: float(eA(z)[1:] @ eA(z)[1:]) / (2.0 * kp), 0.0, zeta, tol) if zeta else 0.0
    f = quadrature(lambda z: pperp * laser.amplitude * math.cos(z) / kp, 0.0, zeta, tol) if zeta else 0.0
    return PhaseIntegrals(F, G, f)


def ponderomotive_alpha(laser: LaserField, p) -> float:
    """``alpha = e^2 <A^2> / (2 k.p) = m^2 a0^2 / (4 k.p)``, with ``<A^2>`` the cycle mean of ``|A|^2``."""
    kp = mdot(laser.k, p)
    if kp <= 0:
        raise KinematicsError("ponderomotive shift needs k.p > 0")
    return laser.amplitude ** 2 / (4.0 * kp)


def modified_momentum(laser: LaserField, p) -> np.ndarray:
    """Cycle-averaged laser-dressed momentum ``P = p - alpha k``.

    In the head-on geometry ``k_vec`` is antiparallel to ``p_vec`` and the spatial part
    grows along the electron direction: ``P_vec = p_vec + alpha*omega*z_hat``.
    """
    p = np.asarray(p, dtype=float)
    return p - ponderomotive_alpha(laser, p) * laser.k
