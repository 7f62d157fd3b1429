"""Transverse density grids, windowed centroids and the laser-induced beam-center shift."""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.optimize import brentq

from .beam import BeamParams, TransverseSlice, TruncationPolicy
from .laser import LaserField, laser_phase
from .mathcore import bessel_j

MIN_GRID = 16


class EmptyWindowError(ValueError):
    """Density integrates to zero over the window."""


@dataclass(frozen=True)
class DensityGrid:
    """``values[i, j] = rho(x_i, y_j)`` on cell centres of ``[-extent, extent]^2``."""

    extent: float
    n: int
    values: np.ndarray
    t: float = 0.0
    z: float = 0.0

    def __post_init__(self):
        if self.values.shape != (self.n, self.n):
            raise ValueError("values must be n x n")

    @property
    def axis(self) -> np.ndarray:
        return grid_axis(self.extent, self.n)

    @property
    def spacing(self) -> float:
        return 2.0 * self.extent / self.n


@dataclass(frozen=True)
class CentroidReport:
    cx: float
    cy: float
    shift_x: float
    shift_y: float
    zeta: float
    window: float


def grid_axis(extent: float, n: int) -> np.ndarray:
    """Cell-centre coordinates ``extent * ((2i + 1)/n - 1)``.

    Written as a ratio of integers so that nested grids (``n`` and ``3n``) produce
    bitwise identical coordinates at their shared centres.
    """
    i = np.arange(n)
    return extent * ((2 * i + 1) / n - 1.0)


def _check_grid(extent: float, n: int) -> None:
    if not extent > 0:
        raise ValueError("extent must be positive")
    if n < MIN_GRID:
        raise ValueError(f"grid needs at least {MIN_GRID} points per axis")


def _slice(params, laser, extent, n, trunc) -> TransverseSlice:
    _check_grid(extent, n)
    ax = grid_axis(extent, n)
    X, Y = np.meshgrid(ax, ax, indexing="ij")
    return TransverseSlice(params, laser, X, Y, trunc)


def density_grid(params: BeamParams, laser: LaserField, t: float, z: float, extent: float,
                 n: int, trunc: TruncationPolicy | None = None, threads: int = 1) -> DensityGrid:
    """Density on the ``n x n`` cell-centred grid at fixed ``(t, z)``.

    With ``threads > 1`` rows are evaluated in chunks; every point is computed
    independently, so the result is bitwise identical to the serial one.
    """
    _check_grid(extent, n)
    if trunc is None:
        trunc = TruncationPolicy.auto(params, laser)
    ax = grid_axis(extent, n)
    if threads <= 1:
        X, Y = np.meshgrid(ax, ax, indexing="ij")
        return DensityGrid(extent, n, TransverseSlice(params, laser, X, Y, trunc).density(t, z), t, z)

    def rows(chunk):
        X, Y = np.meshgrid(ax[chunk], ax, indexing="ij")
        return TransverseSlice(params, laser, X, Y, trunc).density(t, z)

    chunks = np.array_split(np.arange(n), min(threads * 4, n))
    with ThreadPoolExecutor(max_workers=threads) as pool:
        values = np.concatenate(list(pool.map(rows, chunks)), axis=0)
    return DensityGrid(extent, n, values, t, z)


def _fsum(a: np.ndarray) -> float:
    # exactly rounded, hence independent of summation order
    return math.fsum(np.ravel(a).tolist())


def centroid(grid: DensityGrid) -> tuple[float, float]:
    """Density-weighted mean ``(<x>, <y>)`` over the grid window."""
    rho = grid.values
    total = _fsum(rho)
    if total <= 0:
        raise EmptyWindowError("density vanishes over the window")
    ax = grid.axis
    return _fsum(ax[:, None] * rho) / total, _fsum(ax[None, :] * rho) / total


def bessel_zero(order: int, k: int = 1) -> float:
    """k-th positive zero of ``J_order``, bracketed by a sign scan and refined with Brent's method."""
    nu = abs(int(order))
    step = 0.05
    a = max(float(nu), step)
    fa = bessel_j(nu, a)
    found = 0
    while True:
        b = a + step
        fb = bessel_j(nu, b)
        if fa == 0.0 or fa * fb < 0:
            found += 1
            if found == k:
                return a if fa == 0.0 else brentq(lambda x: bessel_j(nu, x), a, b, xtol=1e-15, rtol=1e-15)
        a, fa = b, fb


def default_window(params: BeamParams) -> float:
    """``R_max = j_{|l|+2, 1} / p_perp0``: principal ring plus the l +- 1, l +- 2 sidebands."""
    if params.p_perp <= 0:
        raise ValueError("paraxial axis-only beam has no ring; supply a window explicitly")
    return bessel_zero(abs(params.l) + 2) / params.p_perp


class ShiftCalculator:
    """Laser-on versus field-free centroids on one fixed grid; mode tables are reused across phases."""

    def __init__(self, params: BeamParams, laser: LaserField, window: float | None = None,
                 trunc: TruncationPolicy | None = None, n: int = 256):
        self.params = params
        self.laser = laser
        self.window = default_window(params) if window is None else float(window)
        self.n = n
        self.on = _slice(params, laser, self.window, n, trunc)
        self.off = _slice(params, laser.with_a0(0.0), self.window, n, self.on.trunc)
        self._free = None

    def free_centroid(self) -> tuple[float, float]:
        if self._free is None:
            # the field-free density does not depend on (t, z)
            self._free = centroid(DensityGrid(self.window, self.n, self.off.density(0.0, 0.0)))
        return self._free

    def report(self, t: float, z: float) -> CentroidReport:
        fx, fy = self.free_centroid()
        if self.laser.a0 == 0:
            cx, cy = fx, fy
        else:
            cx, cy = centroid(DensityGrid(self.window, self.n, self.on.density(t, z), t, z))
        return CentroidReport(cx, cy, cx - fx, cy - fy, laser_phase(self.laser, t, z), self.window)


def beam_shift(params: BeamParams, laser: LaserField, t: float, z: float, window: float | None = None,
               trunc: TruncationPolicy | None = None, n: int = 256) -> CentroidReport:
    """Centroid with the laser on, minus the field-free centroid on the identical grid."""
    return ShiftCalculator(params, laser, window, trunc, n).report(t, z)


def shift_scan(params: BeamParams, laser: LaserField, zeta_values: Sequence[float],
               window: float | None = None, trunc: TruncationPolicy | None = None, n: int = 256,
               threads: int = 1) -> list[CentroidReport]:
    """One report per laser phase, evaluated at ``z = 0``, ``t = zeta / omega``."""
    zetas = [float(v) for v in zeta_values]
    if not zetas:
        raise ValueError("zeta scan must be non-empty")
    calc = ShiftCalculator(params, laser, window, trunc, n)
    calc.free_centroid()
    jobs = [(zeta / laser.omega, 0.0) for zeta in zetas]
    if threads <= 1:
        return [calc.report(t, z) for t, z in jobs]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(lambda tz: calc.report(*tz), jobs))


def shift_axis(reports: Sequence[CentroidReport]) -> tuple[float, float]:
    """Best-fit shift direction through the origin and the perpendicular-to-parallel RMS ratio.

    Returns ``(angle, residual)`` with ``angle`` in radians from +x.
    """
    s = np.array([[r.shift_x, r.shift_y] for r in reports])
    _, sv, vt = np.linalg.svd(s, full_matrices=False)
    angle = math.atan2(vt[0, 1], vt[0, 0])
    residual = sv[1] / sv[0] if len(sv) > 1 and sv[0] > 0 else 0.0
    return angle, float(residual)
