import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from volkov_vortex.beam import (BeamParams, SpacetimePoint, TransverseSlice, TruncationPolicy, density,
                                dirac_volkov, free_spinor, partial_wave, volkov_bessel, volkov_prefactor)
from volkov_vortex.laser import KinematicsError, LaserField, phase_integrals
from volkov_vortex.mathcore import IDENTITY, bessel_j, mdot

DEFAULT = BeamParams()
LASER = LaserField()
FREE = LaserField(a0=0.0)


def cone_superposition(params, laser, x, samples=400):
    """Volkov-Bessel state as an equal-weight azimuthal sum of Dirac-Volkov plane waves.

    The integrand is a trigonometric polynomial in the cone azimuth, so the
    rectangle rule is spectrally accurate.
    """
    acc = 0
    for j in range(samples):
        phi = 2 * math.pi * j / samples
        acc = acc + np.exp(1j * params.l * phi) * dirac_volkov(params, laser, params.momentum(phi), x)
    return acc / samples / (1j ** params.l)


def grid(n=64, extent=30.0):
    ax = extent * ((2 * np.arange(n) + 1) / n - 1)
    return np.meshgrid(ax, ax, indexing="ij")


class TestBeamParams:
    def test_derived_kinematics(self):
        p = BeamParams(p0=1.2, theta0=0.2)
        assert p.energy == pytest.approx(math.sqrt(2.44))
        assert p.p_perp ** 2 + p.p_par ** 2 == pytest.approx(1.44)
        assert 0 <= p.delta < 1
        assert mdot(p.momentum(1.1), p.momentum(1.1)) == pytest.approx(1.0)

    @pytest.mark.parametrize("kw", [dict(alpha=1.0, beta=1.0), dict(p0=0.0), dict(theta0=math.pi / 2),
                                    dict(mass=0.0), dict(l=1.5)])
    def test_invalid(self, kw):
        with pytest.raises(ValueError):
            BeamParams(**kw)

    def test_spin_vectors(self):
        assert np.array_equal(BeamParams.spin_up().spin_vector, [0, 0, 1])
        assert np.array_equal(BeamParams.spin_down().spin_vector, [0, 0, -1])

    def test_truncation_auto(self):
        assert TruncationPolicy.auto(DEFAULT, LASER).n_max == 11
        with pytest.raises(ValueError):
            TruncationPolicy(-1)

    def test_spacetime_point(self):
        assert SpacetimePoint(0, 2.0, math.pi / 2, 0).xy == pytest.approx((0.0, 2.0))
        with pytest.raises(ValueError):
            SpacetimePoint(0, -1.0, 0, 0)


class TestDensity:
    def test_zero(self):
        assert density(np.zeros(4)) == 0.0

    def test_unit(self):
        assert density(np.array([1, 0, 0, 0], dtype=complex)) == 1.0

    @given(st.floats(-10, 10), st.lists(st.complex_numbers(max_magnitude=10), min_size=4, max_size=4))
    @settings(max_examples=50, deadline=None)
    def test_global_phase(self, chi, comps):
        psi = np.array(comps)
        assert density(np.exp(1j * chi) * psi) == pytest.approx(density(psi), rel=1e-12, abs=1e-300)
        assert density(psi) >= 0


class TestDiracVolkov:
    def test_free_spinor_norm(self):
        p = DEFAULT.momentum(0.4)
        u = free_spinor(DEFAULT, p)
        assert np.vdot(u, u).real == pytest.approx(2 * p[0])

    def test_field_free_is_plane_wave(self):
        p = DEFAULT.momentum(0.4)
        u = free_spinor(DEFAULT, p) / math.sqrt(2 * p[0])
        for x in (SpacetimePoint(0, 0, 0, 0), SpacetimePoint(3.0, 7.0, 1.0, -2.0)):
            px, py = x.xy
            phase = -mdot(p, [x.t, px, py, x.z])
            psi = dirac_volkov(DEFAULT, FREE, p, x)
            assert np.max(np.abs(psi - u * np.exp(1j * phase))) < 1e-14
            assert density(psi) == pytest.approx(1.0, abs=1e-14)

    def test_prefactor_nilpotent(self):
        rng = np.random.default_rng(7)
        for _ in range(100):
            d = rng.normal(size=3)
            d /= np.linalg.norm(d)
            e = np.cross(d, rng.normal(size=3))
            e /= np.linalg.norm(e)
            las = LaserField(a0=rng.uniform(0.01, 3), omega=rng.uniform(0.01, 1), propagation=tuple(d),
                             polarization=tuple(e))
            p = np.array([2.0, 0.0, 0.0, 0.0])
            p[1:] = rng.normal(size=3)
            p[0] = math.sqrt(1 + p[1:] @ p[1:])
            if mdot(las.k, p) <= 0:
                continue
            D = volkov_prefactor(las, p, rng.uniform(0, 2 * math.pi)) - IDENTITY
            assert np.max(np.abs(D @ D)) < 1e-12

    def test_density_periodic_in_phase(self):
        rng = np.random.default_rng(3)
        p = DEFAULT.momentum(0.9)
        for _ in range(20):
            t, r, ph, z = rng.uniform(0, 50), rng.uniform(0, 20), rng.uniform(0, 2 * math.pi), rng.uniform(-5, 5)
            a = density(dirac_volkov(DEFAULT, LASER, p, SpacetimePoint(t, r, ph, z)))
            b = density(dirac_volkov(DEFAULT, LASER, p, SpacetimePoint(t + 2 * math.pi / LASER.omega, r, ph, z)))
            assert a == pytest.approx(b, rel=1e-12)

    def test_off_shell(self):
        with pytest.raises(KinematicsError):
            dirac_volkov(DEFAULT, LASER, np.array([2.0, 0, 0, 1.0]), SpacetimePoint(0, 0, 0, 0))

    def test_rejects_mismatched_mass_units(self):
        p = np.array([math.sqrt(2), 0, 0, 1.0])
        with pytest.raises(ValueError):
            dirac_volkov(BeamParams(mass=2.0), LASER, p, SpacetimePoint(0, 0, 0, 0))

    def test_degenerate_kp(self):
        # massless momentum co-moving with the laser: k.p = 0
        las = LaserField(propagation=(1, 0, 0), polarization=(0, 1, 0))
        with pytest.raises(KinematicsError):
            phase_integrals(las, np.array([1.0, 1.0, 0.0, 0.0]), 0.3)


class TestPartialWave:
    def test_paraxial_degeneration(self):
        prm = BeamParams(theta0=0.0)
        x = SpacetimePoint(1.0, 0.0, 0.0, 2.0)
        psi = partial_wave(BeamParams(l=0, theta0=0.0), FREE, 0, x)
        E, m = prm.energy, prm.mass
        assert prm.delta == 0
        # lower components = sqrt(1 - m/E) sigma_z w
        assert abs(psi[2] / psi[0]) == pytest.approx(math.sqrt((1 - m / E) / (1 + m / E)))
        assert psi[3] == 0 and psi[1] == 0

    @pytest.mark.parametrize("order", [2, 3, -4])
    def test_vanishes_on_axis(self, order):
        psi = partial_wave(BeamParams(l=order), FREE, order, SpacetimePoint(0.3, 0.0, 0.0, 1.0))
        assert np.max(np.abs(psi)) == 0

    def test_spin_up_correction_in_c4(self):
        prm = BeamParams.spin_up(l=2, theta0=0.4)
        rng = np.random.default_rng(1)
        for _ in range(10):
            x = SpacetimePoint(rng.uniform(0, 5), rng.uniform(0.1, 10), rng.uniform(0, 6), rng.uniform(-3, 3))
            psi = partial_wave(prm, LASER, 2, x)
            assert psi[1] == 0 and psi[3] != 0
            # c3 carries only the small-component sigma_z term, no sqrt(Delta) correction
            assert abs(psi[2] / psi[0]) == pytest.approx(
                math.sqrt((1 - 1 / prm.energy) / (1 + 1 / prm.energy)) * math.cos(0.4), rel=1e-12)

    def test_free_density_independent_of_azimuth(self):
        prm = BeamParams(l=3, theta0=0.4)
        for r in (0.5, 4.0, 11.0):
            vals = [density(partial_wave(prm, FREE, 3, SpacetimePoint(0, r, ph, 0))) for ph in np.linspace(0, 6, 13)]
            assert max(vals) - min(vals) < 1e-12 * max(vals)

    def test_single_valued(self):
        x1 = SpacetimePoint(0.2, 3.0, 0.7, 0.1)
        x2 = SpacetimePoint(0.2, 3.0, 0.7 + 2 * math.pi, 0.1)
        a, b = partial_wave(DEFAULT, LASER, 4, x1), partial_wave(DEFAULT, LASER, 4, x2)
        assert np.max(np.abs(a - b)) < 1e-13

    def test_solves_free_dirac_equation(self):
        """(i gamma.d - m) psi = 0 by central differences in (t, x, y, z)."""
        from volkov_vortex.mathcore import GAMMA
        prm = BeamParams(l=2, alpha=0.6, beta=0.8j, theta0=0.4)

        def psi(t, x, y, z):
            sl = TransverseSlice(prm, FREE, np.array([x]), np.array([y]), TruncationPolicy(0))
            return sl.partial_wave(2, t, z)[:, 0]

        h, pt = 1e-4, (0.3, 1.7, -0.9, 0.4)
        d = []
        for mu in range(4):
            a, b = list(pt), list(pt)
            a[mu] += h
            b[mu] -= h
            d.append((psi(*a) - psi(*b)) / (2 * h))
        lhs = 1j * sum(GAMMA[mu] @ d[mu] for mu in range(4)) - prm.mass * psi(*pt)
        assert np.max(np.abs(lhs)) < 1e-7


class TestVolkovBessel:
    def test_field_free_collapse_exact(self):
        X, Y = grid(64)
        on = TransverseSlice(DEFAULT, FREE, X, Y).field(1.3, 0.4)
        ref = TransverseSlice(DEFAULT, FREE, X, Y, TruncationPolicy(0)).partial_wave(DEFAULT.l, 1.3, 0.4)
        assert np.max(np.abs(on - ref)) < 1e-12

    def test_field_free_pointwise(self):
        x = SpacetimePoint(2.0, 6.0, 1.0, 0.5)
        assert np.max(np.abs(volkov_bessel(DEFAULT, FREE, x) - partial_wave(DEFAULT, FREE, DEFAULT.l, x))) < 1e-15

    @pytest.mark.parametrize("x", [SpacetimePoint(7.0, 5.0, 0.3, 0.0), SpacetimePoint(30.0, 12.0, 2.0, 1.0),
                                   SpacetimePoint(0.0, 0.0, 0.0, 0.0)])
    def test_matches_cone_superposition(self, x):
        a = volkov_bessel(DEFAULT, LASER, x)
        b = cone_superposition(DEFAULT, LASER, x)
        assert np.max(np.abs(a - b)) < 1e-12

    @pytest.mark.parametrize("pol", [(1.0, 0.0, 0.0), (0.0, -1.0, 0.0), (math.sqrt(0.5), math.sqrt(0.5), 0.0)])
    def test_other_polarizations_match_cone_superposition(self, pol):
        las = LaserField(polarization=pol)
        prm = BeamParams(l=-2, alpha=0.6, beta=0.8, theta0=0.3)
        x = SpacetimePoint(9.0, 4.0, 1.3, -0.5)
        assert np.max(np.abs(volkov_bessel(prm, las, x) - cone_superposition(prm, las, x))) < 1e-12

    def test_coefficients_for_y_polarization(self):
        sl = TransverseSlice(DEFAULT, LASER, np.zeros(1), np.zeros(1))
        f0 = 3.7
        a = sl.coefficients(f0)
        for n in range(-5, 6):
            assert a[n] == pytest.approx((1j ** n) * bessel_j(n, f0), abs=1e-16)

    def test_truncation_convergence(self):
        X, Y = grid(32, 36.0)
        auto = TruncationPolicy.auto(DEFAULT, LASER)
        for t in (0.0, 10.0, 31.4, 47.0):
            a = TransverseSlice(DEFAULT, LASER, X, Y, auto).density(t, 0.0)
            b = TransverseSlice(DEFAULT, LASER, X, Y, TruncationPolicy(auto.n_max + 5)).density(t, 0.0)
            assert np.max(np.abs(a - b)) / np.max(a) < 1e-8

    def test_tail_bound_for_auto_truncation(self):
        auto = TruncationPolicy.auto(DEFAULT, LASER)
        kp = mdot(LASER.k, DEFAULT.momentum())
        f_max = abs(LASER.a0 * DEFAULT.p_perp / kp)
        tail = sum(bessel_j(n, f_max) ** 2 for n in range(auto.n_max + 1, auto.n_max + 60)) * 2
        assert tail < 1e-16

    def test_axis_density_for_l0(self):
        prm = BeamParams(l=0, theta0=0.3)
        las = LaserField(a0=0.2)
        rho = density(volkov_bessel(prm, las, SpacetimePoint(0.0, 0.0, 0.0, 0.0)))
        assert math.isfinite(rho) and rho > 0

    def test_paraxial_limit(self):
        prm = BeamParams(l=2, theta0=1e-6)
        r = np.linspace(1e5, 5e6, 40)
        xi = prm.p_perp * r
        rho = np.array([density(partial_wave(prm, FREE, 2, SpacetimePoint(0, ri, 0.3, 0))) for ri in r])
        scalar = np.array([bessel_j(2, v) ** 2 for v in xi])
        E, m = prm.energy, prm.mass
        norm = 0.5 * ((1 + m / E) + (1 - m / E))
        keep = scalar > 1e-6 * scalar.max()
        assert np.max(np.abs(rho[keep] - norm * scalar[keep]) / (norm * scalar[keep])) < 1e-6

    def test_batching_is_bitwise(self):
        X, Y = grid(16)
        full = TransverseSlice(DEFAULT, LASER, X, Y).field(12.0, 0.0)
        part = TransverseSlice(DEFAULT, LASER, X[3:5], Y[3:5]).field(12.0, 0.0)
        assert np.array_equal(full[:, 3:5], part)

    def test_requires_axial_laser(self):
        with pytest.raises(KinematicsError):
            volkov_bessel(DEFAULT, LaserField(propagation=(1, 0, 0), polarization=(0, 1, 0)),
                          SpacetimePoint(0, 1, 0, 0))

    def test_density_single_valued(self):
        a = density(volkov_bessel(DEFAULT, LASER, SpacetimePoint(3.0, 8.0, 0.5, 0)))
        b = density(volkov_bessel(DEFAULT, LASER, SpacetimePoint(3.0, 8.0, 0.5 + 2 * math.pi, 0)))
        assert a == pytest.approx(b, rel=1e-12)
