"""Semiclassical wavepacket dynamics with a Berry-curvature anomalous velocity.

Equations of motion::

    dR/dt = P/E + v_a,   v_a = charge * (dP/dt x P) / |P|^3
    dP/dt = Lorentz force of the plane wave

The anomalous velocity corrects the position only; it never feeds back into dP/dt.
Two Hall modes share the same monopole form: the OAM Hall effect (charge l') and
the spin Hall effect (charge +-mu for s_z = +-1/2).

Trajectories are integrated with RK4 using the laser phase ``zeta`` as the
independent variable, so every step is a fixed fraction of a laser cycle and the
quiver motion cancels exactly over whole cycles.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from .geometry import monopole_charge
from .laser import LaserField, laser_phase
from .mathcore import DomainError, rk4_step

MIN_STEPS_PER_CYCLE = 64


class SingularityError(RuntimeError):
    """Momentum approached the monopole at P = 0."""


def _cross(a, b) -> np.ndarray:
    return np.array([a[1] * b[2] - a[2] * b[1],
                     a[2] * b[0] - a[0] * b[2],
                     a[0] * b[1] - a[1] * b[0]])


def _norm(v) -> float:
    return math.sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2])


@dataclass(frozen=True)
class HallMode:
    kind: Literal["oam", "spin"]
    charge: float

    def __post_init__(self):
        if self.kind == "oam":
            if self.charge != int(self.charge):
                raise ValueError("OAM Hall charge must be an integer")
        elif self.kind == "spin":
            if abs(self.charge) > 0.5:
                raise ValueError("spin Hall charge must satisfy |mu| <= 1/2")
        else:
            raise ValueError(f"unknown Hall mode {self.kind!r}")

    @classmethod
    def oam(cls, l_prime: int) -> "HallMode":
        return cls("oam", int(l_prime))

    @classmethod
    def spin(cls, theta: float, s: float = 0.5) -> "HallMode":
        """Spin Hall mode of a vortex tilted by ``theta``; the sign follows ``s_z``."""
        if s not in (0.5, -0.5):
            raise ValueError("s must be +1/2 or -1/2")
        return cls("spin", math.copysign(monopole_charge(theta), s))


@dataclass(frozen=True)
class TrajectoryState:
    t: float
    R: np.ndarray
    P: np.ndarray
    mass: float = 1.0

    @property
    def energy(self) -> float:
        return math.sqrt(float(self.P @ self.P) + self.mass ** 2)

    def as_row(self) -> list[float]:
        return [self.t, *self.R.tolist(), *self.P.tolist()]


@dataclass(frozen=True)
class DriftReport:
    """Displacement of the centre along the Hall and polarisation axes.

    ``hall`` is the net displacement over the whole cycles along
    ``polarization x initial direction``; ``hall_peak`` is the signed in-cycle
    excursion of largest magnitude on that axis. Under plane-wave driving the
    momentum retraces the same arc every cycle, so the net Hall term is zero up
    to integration error and the excursion carries the signal.
    """

    hall: float
    hall_peak: float
    polarization: float
    cycles: int
    mode: HallMode
    hall_axis: np.ndarray = field(repr=False)

    @property
    def hall_per_cycle(self) -> float:
        return self.hall / self.cycles

    @property
    def polarization_per_cycle(self) -> float:
        return self.polarization / self.cycles


def _position(laser: LaserField, position) -> tuple[float, float, float]:
    if np.ndim(position) == 0:
        return 0.0, 0.0, float(position)
    x, y, z = (float(c) for c in position)
    return x, y, z


def lorentz_force(laser: LaserField, P, t: float, position, m: float | None = None,
                  electric_only: bool = False) -> np.ndarray:
    """Force ``e(E + v x B)`` of the cosine plane wave on an electron with kinetic momentum ``P``.

    ``position`` is the z coordinate or a full 3-vector. With ``eA = m a0 cos(zeta) eps``
    the fields are ``eE = m a0 omega sin(zeta) eps`` and ``eB = k_hat x eE``.
    """
    m = laser.mass if m is None else m
    P = np.asarray(P, dtype=float)
    x, y, z = _position(laser, position)
    zeta = laser_phase(laser, t, z, x, y)
    strength = m * laser.a0 * laser.omega * math.sin(zeta)
    eps = laser.polarization
    e_field = np.array([strength * c for c in eps])
    if electric_only:
        return e_field
    b_field = _cross(laser.propagation, e_field)
    E = math.sqrt(float(P @ P) + m * m)
    return e_field + _cross(P / E, b_field)


def fields(laser: LaserField, t: float, position) -> tuple[np.ndarray, np.ndarray]:
    """Unit-charge ``(E, B)`` with ``E`` in units of ``m``."""
    x, y, z = _position(laser, position)
    zeta = laser_phase(laser, t, z, x, y)
    e_field = laser.mass * laser.a0 * laser.omega * math.sin(zeta) * np.array(laser.polarization)
    return e_field, _cross(laser.propagation, e_field)


def anomalous_velocity(mode: HallMode | float, P, Pdot) -> np.ndarray:
    """``charge * (Pdot x P) / |P|^3``."""
    charge = mode.charge if isinstance(mode, HallMode) else float(mode)
    P = np.asarray(P, dtype=float)
    r = _norm(P)
    if r == 0:
        raise SingularityError("anomalous velocity singular at P = 0")
    return charge * _cross(Pdot, P) / (r * r * r)


def anomalous_velocity_unit_form(mode: HallMode | float, P, Pdot) -> np.ndarray:
    """``charge * (du/dt x u)`` with ``u = P/|P|``.

    Equals ``|P|`` times :func:`anomalous_velocity`; kept as a diagnostic only.
    """
    charge = mode.charge if isinstance(mode, HallMode) else float(mode)
    P = np.asarray(P, dtype=float)
    Pdot = np.asarray(Pdot, dtype=float)
    r = _norm(P)
    if r == 0:
        raise SingularityError("direction undefined at P = 0")
    u = P / r
    udot = (Pdot - u * float(u @ Pdot)) / r
    return charge * _cross(udot, u)


def form_ratio(P, Pdot) -> float:
    """``|unit form| / |canonical form|``; equals ``|P|`` identically."""
    a = _norm(anomalous_velocity(1.0, P, Pdot))
    if a == 0:
        raise DomainError("ratio undefined when dP/dt is parallel to P")
    return _norm(anomalous_velocity_unit_form(1.0, P, Pdot)) / a


def local_triad(P, Pdot) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Co-moving frame ``(u, n1, b)``: momentum direction, turning direction, ``b = u x n1``."""
    P = np.asarray(P, dtype=float)
    Pdot = np.asarray(Pdot, dtype=float)
    r = _norm(P)
    if r == 0:
        raise SingularityError("triad undefined at P = 0")
    u = P / r
    perp = Pdot - u * float(u @ Pdot)
    pn = _norm(perp)
    if pn <= 1e-14 * max(_norm(Pdot), 1e-300):
        raise DomainError("dP/dt parallel to P: turning direction undefined")
    n1 = perp / pn
    return u, n1, _cross(u, n1)


def _derivative(laser: LaserField, charge: float, m: float, electric_only: bool):
    omega = laser.omega
    kdir = np.array(laser.propagation)

    def deriv(_zeta: float, y: np.ndarray) -> np.ndarray:
        t, R, P = y[0], y[1:4], y[4:7]
        if _norm(P) < 1e-6 * m:
            raise SingularityError("|P| dropped below 1e-6 m")
        E = math.sqrt(float(P @ P) + m * m)
        F = lorentz_force(laser, P, t, R, m, electric_only)
        Rdot = P / E
        if charge:
            Rdot = Rdot + anomalous_velocity(charge, P, F)
        zeta_rate = omega * (1.0 - float(kdir @ Rdot))
        if zeta_rate <= 0:
            raise SingularityError("packet no longer advances in laser phase")
        inv = 1.0 / zeta_rate
        return np.concatenate(([inv], Rdot * inv, F * inv))

    return deriv


def initial_state(p0: float = 1.2, mass: float = 1.0) -> TrajectoryState:
    """Packet at the origin moving along +z with ``|P| = p0``."""
    return TrajectoryState(0.0, np.zeros(3), np.array([0.0, 0.0, p0]), mass)


def integrate_trajectory(laser: LaserField, mode: HallMode | None, initial: TrajectoryState,
                         cycles: int = 1, steps_per_cycle: int = 256,
                         electric_only: bool = False) -> tuple[list[TrajectoryState], DriftReport]:
    """RK4 trajectory over ``cycles`` laser periods, ``steps_per_cycle`` steps each."""
    if cycles < 1:
        raise ValueError("cycles must be >= 1")
    if steps_per_cycle < MIN_STEPS_PER_CYCLE:
        raise ValueError(f"steps_per_cycle must be >= {MIN_STEPS_PER_CYCLE}")
    if mode is None:
        mode = HallMode("oam", 0)
    m = initial.mass
    if m != laser.mass:
        raise ValueError("trajectory and laser must use the same mass unit")
    deriv = _derivative(laser, float(mode.charge), m, electric_only)
    y = np.concatenate(([initial.t], np.asarray(initial.R, float), np.asarray(initial.P, float)))
    zeta = laser_phase(laser, initial.t, y[3], y[1], y[2])
    h = 2.0 * math.pi / steps_per_cycle
    states = [TrajectoryState(y[0], y[1:4].copy(), y[4:7].copy(), m)]
    for _ in range(cycles * steps_per_cycle):
        y = rk4_step(y, deriv, zeta, h)
        zeta += h
        if not np.all(np.isfinite(y)):
            raise SingularityError("trajectory became non-finite")
        states.append(TrajectoryState(y[0], y[1:4].copy(), y[4:7].copy(), m))

    u0 = np.asarray(initial.P, float) / _norm(initial.P)
    eps = np.array(laser.polarization)
    hall_axis = _cross(eps, u0)
    hn = _norm(hall_axis)
    hall_axis = hall_axis / hn if hn > 0 else hall_axis
    disp = states[-1].R - states[0].R
    excursion = [float((s.R - states[0].R) @ hall_axis) for s in states]
    peak = max(excursion, key=abs)
    report = DriftReport(float(disp @ hall_axis), peak, float(disp @ eps), cycles, mode, hall_axis)
    return states, report


def anomalous_velocities(laser: LaserField, mode: HallMode, states: list[TrajectoryState]) -> list[tuple]:
    """``(v_a, P, Pdot)`` re-evaluated at every stored state, for diagnostics."""
    out = []
    for s in states:
        F = lorentz_force(laser, s.P, s.t, s.R, s.mass)
        out.append((anomalous_velocity(mode, s.P, F), s.P, F))
    return out


@dataclass(frozen=True)
class HallComparison:
    """Peak Hall excursions of the two modes; see :class:`DriftReport`."""

    l_prime: int
    theta: float
    mu: float
    drift_oam: float
    drift_spin: float

    @property
    def ratio(self) -> float:
        return self.drift_oam / self.drift_spin


def compare_hall_shifts(laser: LaserField, l_prime: int, theta: float, p0: float = 1.2,
                        cycles: int = 1, steps_per_cycle: int = 256) -> HallComparison:
    """OAM Hall drift (charge ``l'``) against spin Hall drift (charge ``mu(theta)``) on identical kinematics."""
    if l_prime < 1:
        raise ValueError("l' must be >= 1")
    if not (0.0 < theta <= 0.5 * math.pi):
        raise ValueError("theta must lie in (0, pi/2]")
    init = initial_state(p0, laser.mass)
    _, oam = integrate_trajectory(laser, HallMode.oam(l_prime), init, cycles, steps_per_cycle)
    spin_mode = HallMode.spin(theta)
    _, spin = integrate_trajectory(laser, spin_mode, init, cycles, steps_per_cycle)
    return HallComparison(int(l_prime), float(theta), spin_mode.charge, oam.hall_peak, spin.hall_peak)
