#!/usr/bin/env python3
"""OAM Hall versus spin Hall excursions on identical kinematics.

Prints the comparison grid and, for one OAM charge, the Hall-axis excursion
over a cycle against the laser phase.
"""
import math

from volkov_vortex import LaserField
from volkov_vortex.semiclassics import HallMode, compare_hall_shifts, initial_state, integrate_trajectory


def main():
    laser = LaserField()
    print(f"{'l_prime':>7} {'theta':>8} {'mu':>8} {'oam peak':>12} {'spin peak':>12} {'ratio':>10}")
    for lp in (1, 2, 5, 200):
        for th in (0.3, math.pi / 4, math.pi / 2):
            c = compare_hall_shifts(laser, lp, th)
            print(f"{lp:7d} {th:8.4f} {c.mu:8.5f} {c.drift_oam:12.5e} {c.drift_spin:12.5e} {c.ratio:10.4f}")

    states, rep = integrate_trajectory(laser, HallMode.oam(3), initial_state(), cycles=1, steps_per_cycle=256)
    print(f"\nl' = 3: net Hall drift {rep.hall:.3e}, peak excursion {rep.hall_peak:.6f}")
    for i in range(0, 257, 32):
        zeta = 2 * math.pi * i / 256
        x = float(states[i].R @ rep.hall_axis)
        env = 1 - math.cos(zeta)
        scale = f"{x / env:+.6f}" if env > 1e-6 else "n/a"
        print(f"zeta {zeta:6.3f}  hall {x:+.6f}  hall / (1 - cos zeta) {scale}")


if __name__ == "__main__":
    main()
