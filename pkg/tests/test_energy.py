import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from wgdisp.conventions import Conventions
from wgdisp.energy import (DipoleSpecies, DipoleTransition, PairConfiguration,
                           dispersion_energy, f_tensor, polarizability,
                           ratio_to_freespace, u_freespace_cp, u_freespace_vdw,
                           u_near_field_assembled, u_retarded_closed,
                           u_retarded_polarizability_form)
from wgdisp.errors import (InputError, ModeCapError, TightConfinementWarning,
                           ValidityDomainWarning)
from wgdisp.waveguide import Geometry, TransversePoint

SQ = Geometry(1.0, 1.0)
CENTER = SQ.center()
E100 = 2.0 * math.pi / 100.0  # wavelength 100 a

ISO = DipoleSpecies.single(E100, (1.0, 1.0, 1.0), "isotropic-average")

# mpmath-frozen evaluations of the regime-ratio formulas
RATIO_VDW_10_100 = 1.0718428943712478e-23
RATIO_CP_10_10 = 2.7596518297989975e-21


def _config(z, sp1=ISO, sp2=None, p1=CENTER, p2=CENTER, geom=SQ, **kw):
    return PairConfiguration(geom, p1, p2, z, sp1, sp2 or sp1, **kw)


class TestSpecies:
    def test_wavelength(self):
        t = DipoleTransition(E100, (0, 0, 1))
        assert t.wavelength == pytest.approx(100.0, rel=1e-14)

    def test_rejects_empty(self):
        with pytest.raises(InputError):
            DipoleSpecies(())

    def test_rejects_zero_dipole(self):
        with pytest.raises(InputError):
            DipoleTransition(1.0, (0.0, 0.0, 0.0))

    def test_isotropic_second_moment(self):
        t = DipoleTransition(1.0, (1.0, 2.0, 2.0))
        m = DipoleSpecies((t,), "isotropic-average").second_moment(t)
        assert np.allclose(m, np.eye(3) * 3.0)

    def test_fixed_second_moment(self):
        t = DipoleTransition(1.0, (0.0, 1.0, 1.0))
        m = DipoleSpecies((t,), "fixed-vector").second_moment(t)
        assert np.allclose(m, np.outer([0, 1, 1], [0, 1, 1]))


class TestFTensor:
    def test_near_field_components(self):
        cfg = _config(0.01)
        ft = f_tensor(cfg, E100, tail_tol=1e-4)
        z3 = 0.01 ** 3
        assert z3 * ft.tensor[2, 2] == pytest.approx(1.0, abs=0.02)
        assert z3 * ft.tensor[0, 0] == pytest.approx(-0.5, abs=0.01)
        assert z3 * ft.tensor[1, 1] == pytest.approx(-0.5, abs=0.01)
        off = ft.tensor - np.diag(np.diag(ft.tensor))
        assert np.abs(off).max() * z3 < 1e-3

    def test_symmetric_at_center(self):
        cfg = _config(0.8)
        ft = f_tensor(cfg, E100, tail_tol=1e-8)
        assert np.allclose(ft.tensor, ft.tensor.T, atol=1e-12)

    def test_tm_te_decay_rate_gap(self):
        # The axial TM entry decays faster than the transverse TE ones by
        # exp(-(sqrt(2)-1) pi z), modulated by the 1/sqrt(z) radial
        # prefactor of the TE coupling.
        cfg4 = _config(4.0)
        cfg5 = _config(5.0)
        f4 = f_tensor(cfg4, E100, tail_tol=1e-9)
        f5 = f_tensor(cfg5, E100, tail_tol=1e-9)
        ratio4 = abs(f4.tm_tensor[2, 2] / f4.te_tensor[1, 1])
        ratio5 = abs(f5.tm_tensor[2, 2] / f5.te_tensor[1, 1])
        expected = math.exp(-(math.sqrt(2.0) - 1.0) * math.pi) \
            * math.sqrt(5.0 / 4.0)
        assert ratio5 / ratio4 == pytest.approx(expected, rel=0.02)

    def test_truncation_modes_ascending(self):
        cfg = _config(0.5)
        coarse = f_tensor(cfg, E100, max_cutoff=30.0)
        fine = f_tensor(cfg, E100, max_cutoff=60.0)
        # Reported tail bound of the coarse sum must cover the observed
        # refinement for every component.
        observed = np.abs(fine.tensor - coarse.tensor).max()
        assert observed <= coarse.tail_bound

    def test_truncation_honesty_randomized(self):
        rng = np.random.default_rng(5)
        for _ in range(20):
            z = rng.uniform(0.2, 1.5)
            p1 = TransversePoint(rng.uniform(0.1, 0.9), rng.uniform(0.1, 0.9))
            p2 = TransversePoint(rng.uniform(0.1, 0.9), rng.uniform(0.1, 0.9))
            cfg = PairConfiguration(SQ, p1, p2, z, ISO, ISO)
            cutoff = rng.uniform(15.0, 40.0)
            coarse = f_tensor(cfg, E100, max_cutoff=cutoff)
            fine = f_tensor(cfg, E100, max_cutoff=2.0 * cutoff)
            observed = np.abs(fine.tensor - coarse.tensor).max()
            assert observed <= coarse.tail_bound

    def test_mode_cap(self):
        cfg = _config(0.002)
        with pytest.raises(ModeCapError) as err:
            f_tensor(cfg, E100, tail_tol=1e-6, mode_cap=100_000)
        assert "asymptotics" in str(err.value)

    def test_per_mode_map_sums_to_total(self):
        cfg = _config(0.8)
        ft = f_tensor(cfg, E100, tail_tol=1e-8)
        assert ft.per_mode is not None
        acc = sum(ft.per_mode.values())
        assert np.allclose(acc, ft.tensor, rtol=1e-12, atol=1e-300)

    def test_vectorized_path_matches_scalar_closed_forms(self):
        # The bulk mode-sum path and the per-mode closed forms must agree
        # exactly, under both sign conventions, at off-center points.
        from wgdisp.energy import f_tensor_from_modes
        from wgdisp.waveguide import enumerate_modes
        p1 = TransversePoint(0.31, 0.67)
        p2 = TransversePoint(0.52, 0.18)
        modes = enumerate_modes(SQ, 11.0)
        for name in ("oracle-consistent", "paper-literal"):
            cfg = PairConfiguration(SQ, p1, p2, 0.7, ISO, ISO,
                                    conventions=Conventions.from_name(name))
            bulk = f_tensor(cfg, E100, max_cutoff=11.0)
            scalar = f_tensor_from_modes(cfg, E100, modes)
            assert bulk.modes_used == len(modes)
            assert np.allclose(bulk.tensor, scalar.tensor,
                               rtol=1e-11, atol=1e-13)


class TestDispersionEnergy:
    def test_free_space_recovery(self):
        cfg = _config(0.01)
        u = dispersion_energy(cfg, tail_tol=1e-4)
        u_fs = u_freespace_vdw(ISO, ISO, 0.01, form="tensor")
        assert u.total / u_fs == pytest.approx(1.0, abs=0.02)

    def test_free_space_recovery_at_z002(self):
        cfg = _config(0.02)
        u = dispersion_energy(cfg, tail_tol=1e-4)
        u_fs = u_freespace_vdw(ISO, ISO, 0.02, form="tensor")
        assert u.total / u_fs == pytest.approx(1.0, abs=0.02)

    def test_negative_for_isotropic(self):
        for z in (0.05, 0.3, 1.0, 3.0):
            assert dispersion_energy(_config(z), tail_tol=1e-7).total < 0.0

    def test_species_swap_symmetry_isotropic(self):
        sp2 = DipoleSpecies.single(1.4 * E100, (0.5, 0.2, 1.0),
                                   "isotropic-average")
        cfg = PairConfiguration(SQ, TransversePoint(0.3, 0.4),
                                TransversePoint(0.7, 0.6), 1.2, ISO, sp2)
        u1 = dispersion_energy(cfg, tail_tol=1e-8).total
        u2 = dispersion_energy(cfg.swapped(), tail_tol=1e-8).total
        assert u1 == pytest.approx(u2, rel=1e-12)

    def test_species_swap_symmetry_fixed_transverse(self):
        # Exact for fixed dipoles without mixed transverse-axial
        # components (the axial-order reversal flips the odd couplings).
        sp1 = DipoleSpecies.single(E100, (1.0, 0.5, 0.0), "fixed-vector")
        sp2 = DipoleSpecies.single(1.2 * E100, (0.3, 1.0, 0.0), "fixed-vector")
        cfg = PairConfiguration(SQ, TransversePoint(0.3, 0.4),
                                TransversePoint(0.7, 0.6), 1.0, sp1, sp2)
        u1 = dispersion_energy(cfg, tail_tol=1e-8).total
        u2 = dispersion_energy(cfg.swapped(), tail_tol=1e-8).total
        assert u1 == pytest.approx(u2, rel=1e-12)

    def test_per_level_pairs_sum_to_total(self):
        sp1 = DipoleSpecies(
            (DipoleTransition(E100, (0, 0, 1)),
             DipoleTransition(1.5 * E100, (1, 0, 0))), "isotropic-average")
        cfg = _config(0.7, sp1=sp1, sp2=ISO)
        u = dispersion_energy(cfg, tail_tol=1e-8)
        assert sum(u.per_level_pair.values()) == pytest.approx(u.total,
                                                               rel=1e-12)

    def test_confinement_error_below_2(self):
        tight = DipoleSpecies.single(2.0 * math.pi / 1.5, (0, 0, 1))
        with pytest.raises(InputError):
            dispersion_energy(_config(0.5, sp1=tight), tail_tol=1e-6)

    def test_confinement_warning_below_10(self):
        sp = DipoleSpecies.single(2.0 * math.pi / 5.0, (0, 0, 1))
        with pytest.warns(TightConfinementWarning):
            out = dispersion_energy(_config(0.5, sp1=sp), tail_tol=1e-6)
        assert out.warnings

    def test_retarded_decay_rate_te_window(self):
        # Beyond the transverse-axial crossover (z/a ~ 5.6 for a
        # wavelength of 100 a) the energy decays as exp(-2 pi z/a)/z;
        # the least-squares slope of ln(z |U|) pins the exponent to 1%.
        zs = np.linspace(7.0, 10.0, 10)
        us = [dispersion_energy(_config(float(z)), tail_tol=1e-8).total
              for z in zs]
        coeffs = np.polyfit(zs, np.log(zs * np.abs(us)), 1)
        assert abs(coeffs[0] + 2.0 * math.pi) / (2.0 * math.pi) < 0.01

    def test_retarded_residual_is_inverse_z_te_window(self):
        # After removing the exponential, the remaining z dependence in
        # the TE-dominated window is the 1/z prefactor.
        zs = np.linspace(7.0, 10.0, 13)
        us = np.array([dispersion_energy(_config(float(z)),
                                         tail_tol=1e-9).total for z in zs])
        residual = np.log(np.abs(us)) + 2.0 * math.pi * zs
        coeffs = np.polyfit(np.log(zs), residual, 1)
        fit = np.polyval(coeffs, np.log(zs))
        r2 = 1.0 - np.sum((residual - fit) ** 2) \
            / np.sum((residual - residual.mean()) ** 2)
        assert coeffs[0] == pytest.approx(-1.0, abs=0.02)
        assert r2 >= 0.999

    def test_te_dominates_past_crossover(self):
        u6 = dispersion_energy(_config(6.0), tail_tol=1e-9)
        assert abs(u6.u_te_only) > 10.0 * abs(u6.u_tm_only)

    def test_tm_te_crossover_moves_with_wavelength(self):
        # With wavelength 10 a the transverse modes dominate already at
        # z = 5 a; with 100 a they do not (weaker coupling to TE modes).
        sp10 = DipoleSpecies.single(2.0 * math.pi / 10.0, (1, 1, 1),
                                    "isotropic-average")
        u_10 = dispersion_energy(_config(5.0, sp1=sp10), tail_tol=1e-9)
        assert abs(u_10.u_te_only) > 10.0 * abs(u_10.u_tm_only)
        u_100 = dispersion_energy(_config(5.0), tail_tol=1e-9)
        assert abs(u_100.u_te_only) < 10.0 * abs(u_100.u_tm_only)


class TestPolarizability:
    def test_static_single_transition(self):
        sp = DipoleSpecies.single(2.0, (0, 0, 3.0))
        assert polarizability(sp, 0.0) == pytest.approx((2.0 / 3.0) * 9.0 / 2.0)

    @given(u1=st.floats(0.0, 50.0), du=st.floats(0.1, 50.0))
    @settings(max_examples=60, deadline=None)
    def test_monotone_decreasing(self, u1, du):
        assert polarizability(ISO, u1) > polarizability(ISO, u1 + du)

    def test_vanishes_at_infinity(self):
        assert polarizability(ISO, 1e8) < 1e-12


class TestClosedForms:
    def test_retarded_wall_zero(self):
        wall = TransversePoint(0.0, 0.0)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            cfg = PairConfiguration(SQ, wall, wall, 5.0, ISO, ISO)
            assert u_retarded_closed(cfg) == pytest.approx(0.0, abs=1e-40)

    def test_retarded_center_transverse_factor_is_one(self):
        # sin^4 factor at the center equals 1: moving the pair from the
        # center to x = a/4 rescales by sin^4(pi/4) = 1/4.
        q = TransversePoint(0.25, 0.25)
        u_center = u_retarded_closed(_config(5.0))
        u_quarter = u_retarded_closed(PairConfiguration(SQ, q, q, 5.0, ISO, ISO))
        assert u_quarter / u_center == pytest.approx(0.25, rel=1e-12)

    def test_retarded_distance_ratio(self):
        u5 = u_retarded_closed(_config(5.0))
        u65 = u_retarded_closed(_config(6.5))
        expected = (5.0 / 6.5) * math.exp(-2.0 * math.pi * 1.5)
        assert u65 / u5 == pytest.approx(expected, rel=1e-12)

    def test_retarded_rejects_rectangular(self):
        cfg = PairConfiguration(Geometry(1.0, 1.3),
                                TransversePoint(0.5, 0.65),
                                TransversePoint(0.5, 0.65), 5.0, ISO, ISO)
        with pytest.raises(InputError):
            u_retarded_closed(cfg)

    def test_retarded_rejects_distinct_points(self):
        cfg = PairConfiguration(SQ, TransversePoint(0.5, 0.5),
                                TransversePoint(0.4, 0.5), 5.0, ISO, ISO)
        with pytest.raises(InputError):
            u_retarded_closed(cfg)

    def test_retarded_warns_close_in(self):
        with pytest.warns(ValidityDomainWarning):
            u_retarded_closed(_config(1.0))

    def test_polarizability_form_matches_discrete_sum(self):
        cfg = _config(5.0)
        assert u_retarded_polarizability_form(cfg) \
            == pytest.approx(u_retarded_closed(cfg), rel=1e-9)


class TestFreeSpaceReferences:
    def test_vdw_scaling(self):
        u1 = u_freespace_vdw(ISO, ISO, 1.0)
        u2 = u_freespace_vdw(ISO, ISO, 2.0)
        assert u1 / u2 == pytest.approx(64.0, rel=1e-12)

    def test_cp_scaling(self):
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            u1 = u_freespace_cp(ISO, ISO, 1.0)
            u2 = u_freespace_cp(ISO, ISO, 2.0)
        assert u1 / u2 == pytest.approx(128.0, rel=1e-12)

    def test_cp_prefactor(self):
        assert 23.0 / (144.0 * math.pi ** 3) \
            == pytest.approx(5.151286749747141e-3, rel=1e-12)

    def test_cp_single_transition_structure(self):
        sp_a = DipoleSpecies.single(E100, (0, 0, 2.0))
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            base = u_freespace_cp(ISO, ISO, 500.0)
            quad = u_freespace_cp(sp_a, sp_a, 500.0)
        # proportional to |d1|^2 |d2|^2: (4/3)^2 relative to |d|^2 = 3
        assert quad / base == pytest.approx((4.0 / 3.0) ** 2, rel=1e-12)

    def test_tensor_quadruple_weights(self):
        # Weights of the component quadruples in the near-field form:
        # all-axial 1, all-transverse 1/4, transverse-axial cross -1/2,
        # any mismatched index pair 0.
        m = np.diag([1.0, 1.0, -2.0])
        weight = lambda i, j, l, q: 0.25 * m[i, j] * m[l, q]
        assert weight(2, 2, 2, 2) == pytest.approx(1.0)
        assert weight(0, 0, 0, 0) == pytest.approx(0.25)
        assert weight(0, 0, 2, 2) == pytest.approx(-0.5)
        assert weight(0, 1, 2, 2) == 0.0
        # Dipoles along a transverse axis only, an axial axis only, and
        # the diagonal combination compose those weights.
        z_sp = DipoleSpecies.single(1e-2, (0, 0, 1.0), "fixed-vector")
        x_sp = DipoleSpecies.single(1e-2, (1.0, 0, 0), "fixed-vector")
        xz_sp = DipoleSpecies.single(1e-2, (1.0, 0, 1.0), "fixed-vector")
        pref = -1.0 / (2.0 * math.pi) ** 2 / (2e-2)
        assert u_freespace_vdw(z_sp, z_sp, 1.0, form="tensor") / pref \
            == pytest.approx(1.0, rel=1e-12)
        assert u_freespace_vdw(x_sp, x_sp, 1.0, form="tensor") / pref \
            == pytest.approx(0.25, rel=1e-12)
        # weight sum for d1 = d2 = x+z: (1/4)(M_xx + M_zz)^2 = 1/4
        assert u_freespace_vdw(xz_sp, xz_sp, 1.0, form="tensor") / pref \
            == pytest.approx(0.25, rel=1e-12)
        # mismatched single-axis pair contracts to zero
        assert u_freespace_vdw(x_sp, z_sp, 1.0, form="tensor") == 0.0

    def test_isotropic_equals_tensor_under_averaging(self):
        a = u_freespace_vdw(ISO, ISO, 0.37, form="isotropic")
        b = u_freespace_vdw(ISO, ISO, 0.37, form="tensor")
        assert a == pytest.approx(b, rel=1e-14)

    def test_assembled_equals_tensor_for_arbitrary_dipoles(self):
        sp1 = DipoleSpecies.single(E100, (0.3, -0.2, 0.8), "fixed-vector")
        sp2 = DipoleSpecies.single(1.3 * E100, (-0.5, 0.1, 0.4), "fixed-vector")
        a = u_near_field_assembled(sp1, sp2, 0.37)
        b = u_freespace_vdw(sp1, sp2, 0.37, form="tensor")
        assert a == pytest.approx(b, rel=5e-16)


class TestRatioFormulas:
    def test_vdw_reference_frozen_value(self):
        assert ratio_to_freespace(10.0, 100.0, 1.0, "vdw-reference") \
            == pytest.approx(RATIO_VDW_10_100, rel=1e-3)

    def test_cp_reference_frozen_value(self):
        assert ratio_to_freespace(10.0, 10.0, 1.0, "cp-reference") \
            == pytest.approx(RATIO_CP_10_10, rel=1e-3)

    def test_log_ratio_affine_in_z(self):
        zs = np.linspace(5.0, 20.0, 40)
        r = np.array([ratio_to_freespace(z, 100.0, 1.0, "vdw-reference")
                      for z in zs])
        residual = np.log(r) - 5.0 * np.log(zs)
        slope = np.polyfit(zs, residual, 1)[0]
        assert slope == pytest.approx(-2.0 * math.pi, abs=1e-9)

    def test_rejects_unknown_regime(self):
        with pytest.raises(InputError):
            ratio_to_freespace(1.0, 10.0, 1.0, "other")
