"""Electron states: free Bessel beam, Dirac-Volkov plane wave, Bessel partial waves
and their laser-dressed (Volkov-Bessel) superposition.

Beam axis is +z. Spinor layout is the Dirac representation with the large
components (c1, c2) first. The superposition sums over laser-induced OAM channels

    psi = N(zeta) * sum_n a_n(zeta) * psi_{l+n}

with ``N = 1 + slash(k) slash(eA) / (2 k.p0)`` and ``a_n = i^n J_n(f0)`` for
y-polarised light. For another transverse polarisation angle the azimuth origin
of the expansion is rotated so that the coefficients still resum to the exact
Volkov phase ``exp(i f0 p_perp_hat . eps)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .laser import KinematicsError, LaserField, k_dot_p, laser_phase, phase_integrals, potential
from .mathcore import IDENTITY, PAULI, bessel_table, mdot, slash


@dataclass(frozen=True)
class BeamParams:
    """Monoenergetic cone of plane waves: OAM ``l``, spinor ``(alpha, beta)``, momentum ``p0``
    at polar angle ``theta0`` to the beam axis."""

    l: int = 3
    alpha: complex = 1.0 + 0.0j
    beta: complex = 0.0j
    p0: float = 1.2
    theta0: float = 0.2
    mass: float = 1.0

    def __post_init__(self):
        if int(self.l) != self.l:
            raise ValueError("l must be an integer")
        object.__setattr__(self, "l", int(self.l))
        object.__setattr__(self, "alpha", complex(self.alpha))
        object.__setattr__(self, "beta", complex(self.beta))
        if abs(abs(self.alpha) ** 2 + abs(self.beta) ** 2 - 1.0) > 1e-12:
            raise ValueError("spin amplitudes must satisfy |alpha|^2 + |beta|^2 = 1")
        if not (self.p0 > 0 and math.isfinite(self.p0)):
            raise ValueError("p0 must be positive")
        if not (0.0 <= self.theta0 < 0.5 * math.pi):
            raise ValueError("theta0 must lie in [0, pi/2)")
        if not self.mass > 0:
            raise ValueError("mass must be positive")

    @classmethod
    def spin_up(cls, **kw) -> "BeamParams":
        return cls(alpha=1.0, beta=0.0, **kw)

    @classmethod
    def spin_down(cls, **kw) -> "BeamParams":
        return cls(alpha=0.0, beta=1.0, **kw)

    @property
    def energy(self) -> float:
        return math.sqrt(self.p0 ** 2 + self.mass ** 2)

    @property
    def p_perp(self) -> float:
        return self.p0 * math.sin(self.theta0)

    @property
    def p_par(self) -> float:
        return self.p0 * math.cos(self.theta0)

    @property
    def delta(self) -> float:
        return (1.0 - self.mass / self.energy) * math.sin(self.theta0) ** 2

    @property
    def spinor(self) -> np.ndarray:
        return np.array([self.alpha, self.beta])

    @property
    def spin_vector(self) -> np.ndarray:
        """``<sigma>`` of the two-spinor ``(alpha, beta)``."""
        ab = self.alpha.conjugate() * self.beta
        return np.array([2.0 * ab.real, 2.0 * ab.imag, abs(self.alpha) ** 2 - abs(self.beta) ** 2])

    def momentum(self, azimuth: float = 0.0) -> np.ndarray:
        """On-shell four-momentum of the cone member at the given azimuth."""
        pp = self.p_perp
        return np.array([self.energy, pp * math.cos(azimuth), pp * math.sin(azimuth), self.p_par])


@dataclass(frozen=True)
class SpacetimePoint:
    t: float
    r: float
    varphi: float
    z: float

    def __post_init__(self):
        if self.r < 0:
            raise ValueError("cylindrical radius must be non-negative")

    @property
    def xy(self) -> tuple[float, float]:
        return self.r * math.cos(self.varphi), self.r * math.sin(self.varphi)


@dataclass(frozen=True)
class TruncationPolicy:
    """The laser-channel sum runs over ``n`` in ``[-n_max, n_max]``."""

    n_max: int

    def __post_init__(self):
        if self.n_max < 0:
            raise ValueError("n_max must be non-negative")

    @classmethod
    def auto(cls, params: BeamParams, laser: LaserField) -> "TruncationPolicy":
        kp = k_dot_p(laser, params.momentum())
        bound = abs(laser.a0 * params.p_perp * laser.mass / kp)
        return cls(int(math.ceil(bound)) + 10)


def density(psi) -> np.ndarray | float:
    """``sum_i |c_i|^2`` over the leading (component) axis."""
    psi = np.asarray(psi)
    rho = psi.real ** 2 + psi.imag ** 2
    out = rho[0] + rho[1] + rho[2] + rho[3]
    return float(out) if np.ndim(out) == 0 else out


def _check_masses(params: BeamParams, laser: LaserField) -> None:
    if params.mass != laser.mass:
        raise ValueError("beam and laser must use the same mass unit")


def _check_axis(laser: LaserField) -> None:
    if abs(abs(laser.propagation[2]) - 1.0) > 1e-12:
        raise KinematicsError("Bessel-beam construction requires the laser along the beam axis")


# --------------------------------------------------------------------------
# Plane-wave Dirac-Volkov state
# --------------------------------------------------------------------------

def volkov_prefactor(laser: LaserField, p, zeta: float) -> np.ndarray:
    """``N = 1 + slash(k) slash(eA(zeta)) / (2 k.p)``."""
    kp = k_dot_p(laser, p)
    return IDENTITY + slash(laser.k) @ slash(potential(laser, zeta)) / (2.0 * kp)


def free_spinor(params: BeamParams, p) -> np.ndarray:
    """Positive-energy spinor ``u_p`` built on ``w = (alpha, beta)``, normalised to ``u^+ u = 2E``."""
    p = np.asarray(p, dtype=float)
    m = params.mass
    E = p[0]
    w = params.spinor
    sp = p[1] * PAULI[0] + p[2] * PAULI[1] + p[3] * PAULI[2]
    return math.sqrt(E + m) * np.concatenate([w, sp @ w / (E + m)])


def dirac_volkov(params: BeamParams, laser: LaserField, p, x: SpacetimePoint) -> np.ndarray:
    """Dirac-Volkov plane wave ``N u_p / sqrt(2E) exp(iS)``, ``S = -p.x - F + G``."""
    _check_masses(params, laser)
    p = np.asarray(p, dtype=float)
    m = params.mass
    if abs(mdot(p, p) - m * m) > 1e-10:
        raise KinematicsError("momentum is off shell")
    if mdot(laser.k, p) <= 0:
        raise KinematicsError("Dirac-Volkov state needs k.p > 0")
    px, py = x.xy
    xv = np.array([x.t, px, py, x.z])
    zeta = laser_phase(laser, x.t, x.z, px, py)
    ph = phase_integrals(laser, p, zeta)
    S = -mdot(p, xv) - ph.F + ph.G
    u = free_spinor(params, p) / math.sqrt(2.0 * p[0])
    return volkov_prefactor(laser, p, zeta) @ u * complex(math.cos(S), math.sin(S))


# --------------------------------------------------------------------------
# Bessel partial waves and the Volkov-Bessel sum
# --------------------------------------------------------------------------

def _unit_phasor(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    r = np.hypot(x, y)
    u = np.ones(x.shape, dtype=complex)
    nz = r > 0
    u[nz] = (x[nz] + 1j * y[nz]) / r[nz]
    return u


def _integer_powers(base: complex | np.ndarray, lo: int, hi: int) -> dict[int, np.ndarray]:
    """``base**k`` for ``lo <= k <= hi`` by repeated multiplication (unit-modulus base)."""
    base = np.asarray(base, dtype=complex)
    inv = np.conj(base)
    out = {0: np.ones_like(base)}
    for k in range(1, max(hi, 0) + 1):
        out[k] = out[k - 1] * base
    for k in range(1, max(-lo, 0) + 1):
        out[-k] = out[-k + 1] * inv
    return {k: v for k, v in out.items() if lo <= k <= hi}


class TransverseSlice:
    """Precomputed Bessel modes ``exp(i nu phi) J_nu(p_perp0 r)`` on a set of transverse points.

    The modes do not depend on ``(t, z)``, so one slice serves every laser phase.
    Every point is evaluated independently of the others: results are bitwise
    reproducible regardless of how the points are batched.
    """

    def __init__(self, params: BeamParams, laser: LaserField, x, y, trunc: TruncationPolicy | None = None):
        _check_masses(params, laser)
        _check_axis(laser)
        self.params = params
        self.laser = laser
        self.trunc = trunc if trunc is not None else TruncationPolicy.auto(params, laser)
        self.x = np.asarray(x, dtype=float)
        self.y = np.asarray(y, dtype=float)
        if self.x.shape != self.y.shape:
            raise ValueError("x and y must have matching shapes")
        nm = self.trunc.n_max
        self.lo = params.l - nm - 1
        self.hi = params.l + nm + 1
        xi = params.p_perp * np.hypot(self.x, self.y)
        orders = range(self.lo, self.hi + 1)
        jtab = bessel_table(orders, xi)
        powers = _integer_powers(_unit_phasor(self.x, self.y), self.lo, self.hi)
        self.modes = {nu: powers[nu] * jtab[i] for i, nu in enumerate(orders)}
        pol = laser.polarization
        self._rot = -np.conj(complex(pol[0], pol[1]))

    # spinor structure shared by partial_wave and the laser sum
    def _assemble(self, s0, s_plus, s_minus, carrier: complex) -> np.ndarray:
        prm = self.params
        m, E = prm.mass, prm.energy
        big = math.sqrt(1.0 + m / E)
        small = math.sqrt(1.0 - m / E) * math.cos(prm.theta0)
        rd = 1j * math.sqrt(prm.delta)
        a, b = prm.alpha, prm.beta
        pref = carrier / math.sqrt(2.0)
        return np.stack([
            pref * (big * a * s0),
            pref * (big * b * s0),
            pref * (small * a * s0 - rd * b * s_minus),
            pref * (-small * b * s0 + rd * a * s_plus),
        ])

    def _carrier(self, t: float, z: float, G: float) -> complex:
        prm = self.params
        phase = prm.p_par * z - prm.energy * t + G
        return complex(math.cos(phase), math.sin(phase))

    def _kinematics(self, t: float, z: float):
        p0 = self.params.momentum()
        zeta = laser_phase(self.laser, t, z)
        return p0, zeta, phase_integrals(self.laser, p0, zeta)

    def partial_wave(self, order: int, t: float, z: float) -> np.ndarray:
        """Bessel partial wave of total order ``l + n = order``; shape ``(4,) + x.shape``."""
        if not (self.lo + 1 <= order <= self.hi - 1):
            raise ValueError(f"order {order} outside the precomputed window")
        _, _, ph = self._kinematics(t, z)
        md = self.modes
        return self._assemble(md[order], md[order + 1], md[order - 1], self._carrier(t, z, ph.G))

    def coefficients(self, f0: float) -> dict[int, complex]:
        """Laser channel weights ``a_n``; equal to ``i^n J_n(f0)`` for y polarisation."""
        nm = self.trunc.n_max
        jn = bessel_table(range(-nm, nm + 1), np.array([f0]))[:, 0]
        rot = _integer_powers(self._rot, -nm, nm)
        return {n: complex(rot[n]) * jn[i] for i, n in enumerate(range(-nm, nm + 1))}

    def field(self, t: float, z: float) -> np.ndarray:
        """Volkov-Bessel bispinor at every point of the slice; shape ``(4,) + x.shape``."""
        p0, zeta, ph = self._kinematics(t, z)
        l, nm = self.params.l, self.trunc.n_max
        a = self.coefficients(ph.f)
        md = self.modes
        s0 = s_plus = s_minus = 0
        for n in range(-nm, nm + 1):
            s0 = s0 + a[n] * md[l + n]
            s_plus = s_plus + a[n] * md[l + n + 1]
            s_minus = s_minus + a[n] * md[l + n - 1]
        psi = self._assemble(s0, s_plus, s_minus, self._carrier(t, z, ph.G))
        N = volkov_prefactor(self.laser, p0, zeta)
        # explicit elementwise product: BLAS kernels may depend on the batch size
        return np.stack([N[i, 0] * psi[0] + N[i, 1] * psi[1] + N[i, 2] * psi[2] + N[i, 3] * psi[3]
                         for i in range(4)])

    def density(self, t: float, z: float) -> np.ndarray:
        return density(self.field(t, z))


def _point_slice(params, laser, x: SpacetimePoint, trunc, order=None) -> TransverseSlice:
    px, py = x.xy
    if order is not None and trunc is None:
        trunc = TruncationPolicy(max(abs(order - params.l), 0))
    return TransverseSlice(params, laser, np.array([px]), np.array([py]), trunc)


def partial_wave(params: BeamParams, laser: LaserField, order: int, x: SpacetimePoint) -> np.ndarray:
    """Bessel partial wave carrying OAM ``order = l + n`` at one spacetime point."""
    sl = _point_slice(params, laser, x, None, order)
    return sl.partial_wave(order, x.t, x.z)[:, 0]


def volkov_bessel(params: BeamParams, laser: LaserField, x: SpacetimePoint,
                  trunc: TruncationPolicy | None = None) -> np.ndarray:
    """Laser-dressed Bessel beam (truncated channel sum) at one spacetime point."""
    if mdot(laser.k, params.momentum()) <= 0:
        raise KinematicsError("Volkov-Bessel state needs k.p0 > 0")
    sl = _point_slice(params, laser, x, trunc)
    return sl.field(x.t, x.z)[:, 0]
