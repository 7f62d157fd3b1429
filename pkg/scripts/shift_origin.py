#!/usr/bin/env python3
"""Where the cross-polarisation shift component comes from.

Compares the full dressed state with the same channel sum stripped of the
spinor prefactor ``N = 1 + slash(k) slash(eA) / (2 k.p0)``, at the phase where
the cross component peaks, for several OAM and spin choices.
"""
import math

import numpy as np

from volkov_vortex import BeamParams, LaserField
from volkov_vortex.analysis import DensityGrid, centroid, default_window, grid_axis
from volkov_vortex.beam import TransverseSlice, density


def channel_sum(sl, t, z):
    """Dressed channel sum without the prefactor N."""
    _, _, ph = sl._kinematics(t, z)
    a = sl.coefficients(ph.f)
    l, nm, md = sl.params.l, sl.trunc.n_max, sl.modes
    s0 = sum(a[n] * md[l + n] for n in range(-nm, nm + 1))
    sp = sum(a[n] * md[l + n + 1] for n in range(-nm, nm + 1))
    sm = sum(a[n] * md[l + n - 1] for n in range(-nm, nm + 1))
    return sl._assemble(s0, sp, sm, sl._carrier(t, z, ph.G))


def shifts(params, laser, zeta, n=192):
    R = default_window(params)
    ax = grid_axis(R, n)
    X, Y = np.meshgrid(ax, ax, indexing="ij")
    on = TransverseSlice(params, laser, X, Y)
    off = TransverseSlice(params, laser.with_a0(0.0), X, Y, on.trunc)
    t = zeta / laser.omega
    free = centroid(DensityGrid(R, n, off.density(0.0, 0.0)))
    full = centroid(DensityGrid(R, n, on.density(t, 0.0)))
    bare = centroid(DensityGrid(R, n, density(channel_sum(on, t, 0.0))))
    return [(c[0] - free[0], c[1] - free[1]) for c in (full, bare)]


def main():
    laser = LaserField()
    print(f"{'state':>16} {'full shift_x':>14} {'no-N shift_x':>14}   (zeta = 0)")
    for label, params in [("l=3 up", BeamParams.spin_up(l=3)), ("l=3 down", BeamParams.spin_down(l=3)),
                          ("l=-3 up", BeamParams.spin_up(l=-3)), ("l=-3 down", BeamParams.spin_down(l=-3)),
                          ("l=0 up", BeamParams.spin_up(l=0)), ("l=6 up", BeamParams.spin_up(l=6))]:
        full, bare = shifts(params, laser, 0.0)
        print(f"{label:>16} {full[0]:14.6e} {bare[0]:14.6e}")
    full, bare = shifts(BeamParams(), laser, math.pi / 2)
    print(f"default shift_y at zeta = pi/2: full {full[1]:.6e}, no-N {bare[1]:.6e}")


if __name__ == "__main__":
    main()
