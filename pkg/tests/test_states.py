"""State-family constructors, cross-checked between independent representations."""

import numpy as np
import pytest

from conftest import grid_points, wigner_on_grid
from wigmix import core, states
from wigmix.errors import InvalidState, Unphysical, Unsupported

HBAR = 2.0


def max_grid_diff(a, b, lim, n=81):
    pts, _, _ = grid_points(lim, n)
    wa = core.wigner_many(a, pts)
    wb = core.wigner_many(b, pts)
    return float(np.max(np.abs(wa - wb)))


class TestGaussianFamilies:
    def test_vacuum(self):
        st = states.vacuum(1)
        assert np.allclose(st.covs[0], np.eye(2))
        assert core.wigner(st, [0, 0]).real == pytest.approx(1 / (2 * np.pi))
        st3 = states.vacuum(3)
        assert np.allclose(st3.covs[0], np.eye(6))

    def test_coherent_mean(self):
        st = states.coherent(1 + 0j)
        assert np.allclose(st.means[0].real, [2.0, 0.0])
        st = states.coherent(0.5 - 1.5j, hbar=1.0)
        assert np.allclose(st.means[0].real, np.sqrt(2.0) * np.array([0.5, -1.5]))

    def test_thermal_zero_is_vacuum(self):
        assert np.allclose(states.thermal(0.0).covs[0], states.vacuum(1).covs[0])
        assert np.allclose(states.thermal(1.5).covs[0], 2 * (1.5 + 0.5) * np.eye(2) / 1)

    @pytest.mark.parametrize("r,phi", [(0.7, 0.0), (0.3, np.pi), (0.5, 1.1)])
    def test_squeezed_cov_convention(self, r, phi):
        st = states.squeezed(r, phi)
        c, s = np.cos(phi / 2), np.sin(phi / 2)
        rot = np.array([[c, -s], [s, c]])
        expect = rot @ np.diag([np.exp(-2 * r), np.exp(2 * r)]) @ rot.T
        assert np.allclose(st.covs[0], expect)

    def test_p_squeezed(self):
        st = states.squeezed(0.6, np.pi)
        assert st.covs[0][1, 1].real == pytest.approx(np.exp(-1.2))
        assert st.covs[0][0, 0].real == pytest.approx(np.exp(1.2))


class TestGkp:
    def test_ideal_coefficients_spot_values(self):
        c = states._ideal_grid_coefficients(np.array([0]), np.array([0]), 0.0, 0.0)
        assert c[0] == pytest.approx(1 / (4 * np.sqrt(np.pi)))
        # theta=0, k mod 4 = 2, l odd -> -cos(theta)/(4 sqrt(pi))
        c = states._ideal_grid_coefficients(np.array([2]), np.array([1]), 0.0, 0.0)
        assert c[0] == pytest.approx(-1 / (4 * np.sqrt(np.pi)))
        c = states._ideal_grid_coefficients(np.array([4]), np.array([3]), 0.0, 0.0)
        assert c[0] == pytest.approx(1 / (4 * np.sqrt(np.pi)))
        # odd k rows vanish for logical 0/1
        c = states._ideal_grid_coefficients(np.array([1]), np.array([0]), 0.0, 0.0)
        assert c[0] == 0.0

    def test_real_form_geometry(self):
        eps = 0.1
        st = states.gkp(states.GkpParams(0.0, 0.0, eps, cutoff=8))
        assert len(st.covs) == 1
        assert np.allclose(st.covs[0], np.tanh(eps) * np.eye(2))
        assert abs(st.weight_sum() - 1) < 1e-12
        assert np.max(np.abs(st.means.imag)) == 0.0
        # peak spacing is sech(eps) * sqrt(pi hbar) / 2
        qvals = np.unique(np.round(st.means[:, 0].real, 10))
        spacing = np.diff(qvals).min()
        assert spacing == pytest.approx(np.sqrt(np.pi * HBAR) / 2 / np.cosh(eps), rel=1e-12)

    @pytest.mark.parametrize("theta,phi", [(0.0, 0.0), (np.pi / 2, 0.0), (np.pi / 2, -np.pi / 4)])
    def test_real_vs_complex_grid(self, theta, phi):
        eps = 0.1
        a = states.gkp(states.GkpParams(theta, phi, eps, cutoff=10, representation="real"))
        b = states.gkp(states.GkpParams(theta, phi, eps, cutoff=10, representation="complex"))
        lim = 2.0 * np.sqrt(np.pi * HBAR)
        assert max_grid_diff(a, b, lim, n=61) < 1e-8

    def test_complex_matches_superposition_construction(self):
        # independent route: the damped wavefunction is a superposition of
        # displaced squeezed states; build it via the dyad constructor
        eps, cutoff = 0.2, 6
        a0, a1 = np.cos(0.3), np.exp(-0.4j) * np.sin(0.3)
        comps = []
        zeta = -0.5 * np.log(np.tanh(eps))
        for k, amp in ((0, a0), (1, a1)):
            for t in range(-cutoff, cutoff + 1):
                kappa = amp * (np.pi * HBAR * np.tanh(eps)) ** 0.25 * np.exp(
                    -0.5 * np.pi * (2 * t + k) ** 2 * np.tanh(eps)
                )
                gamma = np.sqrt(np.pi / 2.0) * (2 * t + k) / np.cosh(eps)
                comps.append((kappa, gamma, zeta))
        via_dyads = states.gaussian_superposition(comps)
        direct = states._gkp_complex_from_amplitudes(a0, a1, eps, cutoff, HBAR)
        lim = 2.0 * np.sqrt(np.pi * HBAR)
        assert max_grid_diff(via_dyads, direct, lim, n=61) < 1e-10

    def test_magic_state_reps_agree(self):
        a = states.gkp_magic(0.1, cutoff=10, representation="real")
        b = states.gkp_magic(0.1, cutoff=10, representation="complex")
        assert max_grid_diff(a, b, 2.0 * np.sqrt(np.pi * HBAR), n=61) < 1e-8

    def test_cutoff_warning(self):
        with pytest.warns(UserWarning):
            states.gkp(states.GkpParams(0.0, 0.0, 0.01, cutoff=3))

    def test_physicality(self):
        st = states.gkp(states.GkpParams(np.pi / 2, 0.0, 0.1, cutoff=10))
        core.assert_physical(st)


class TestCat:
    def test_complex_form_values(self):
        alpha = 2.0
        st = states.cat(states.CatParams(alpha))
        assert st.num_peaks == 4
        n = 1.0 / (2 * (1 + np.exp(-8.0)))
        assert st.weights[0] == pytest.approx(n)
        assert st.weights[2] == pytest.approx(n * np.exp(-8.0))
        assert np.allclose(st.means[0].real, [2 * alpha, 0.0])
        assert np.allclose(st.means[2], [0.0, -2j * alpha])
        core.assert_physical(st)

    @pytest.mark.parametrize("alpha", [0.5, 2.0, 5.0])
    def test_four_peaks_any_energy(self, alpha):
        assert states.cat(states.CatParams(alpha)).num_peaks == 4

    def test_alpha_zero(self):
        even = states.cat(states.CatParams(0.0))
        assert max_grid_diff(even, states.vacuum(1), 4.0, n=41) < 1e-14
        with pytest.raises(InvalidState):
            states.cat(states.CatParams(0.0, parity=1))
        with pytest.raises(InvalidState):
            states.cat(states.CatParams(0.0, parity=1, representation="real"))

    def test_odd_cat_negative_at_origin(self):
        st = states.cat(states.CatParams(2.0, parity=1))
        assert core.wigner(st, [0, 0]).real < 0

    @pytest.mark.parametrize("parity", [0, 1])
    def test_real_vs_complex(self, parity):
        a = states.cat(states.CatParams(2.0, parity=parity, representation="real"))
        b = states.cat(states.CatParams(2.0, parity=parity))
        assert max_grid_diff(a, b, 6.0 * np.sqrt(HBAR), n=81) < 1e-10
        core.assert_physical(a, reality_tol=1e-9)

    def test_complex_alpha_via_rotation(self):
        alpha = 1.5 * np.exp(0.7j)
        a = states.cat(states.CatParams(alpha, representation="real"))
        b = states.cat(states.CatParams(alpha))
        assert max_grid_diff(a, b, 5.0 * np.sqrt(HBAR), n=61) < 1e-10


class TestFock:
    def test_n0_is_vacuum(self):
        st = states.fock(states.FockParams(0, 0.37))
        assert st.num_peaks == 1
        assert np.allclose(st.covs[0], np.eye(2))

    def test_n1_weights_and_covs(self):
        r = 0.05
        st = states.fock(states.FockParams(1, r))
        assert st.num_peaks == 2
        # closed form for n=1: c0 = 1/r^2 (thermal-like), c1 = -(1-r^2)/r^2
        order = np.argsort(st.weights.real)
        c1, c0 = st.weights.real[order]
        assert c0 == pytest.approx(1 / r**2, rel=1e-10)
        assert c1 == pytest.approx(-(1 - r**2) / r**2, rel=1e-10)
        assert abs(st.weight_sum() - 1) < 1e-12
        covs = st.covs[st.cov_index[order]]
        assert covs[1][0, 0].real == pytest.approx((1 + r**2) / (1 - r**2))
        assert covs[0][0, 0].real == pytest.approx(1.0)

    def test_wigner_origin_near_exact(self):
        st = states.fock(states.FockParams(1, 0.01))
        # exact |1> has W(0) = -1/(pi hbar)
        assert core.wigner(st, [0, 0]).real == pytest.approx(-1 / (np.pi * HBAR), rel=1e-3)

    def test_unphysical_r(self):
        with pytest.raises(Unphysical):
            states.fock(states.FockParams(4, 0.5))
        with pytest.raises(Unphysical):
            states.fock(states.FockParams(1, 0.0))

    def test_normalization_exact_despite_conditioning(self):
        st = states.fock(states.FockParams(3, 0.01))
        assert abs(st.weight_sum() - 1.0) < 1e-12


class TestComb:
    def test_single_tooth_is_squeezed_vacuum(self):
        st = states.comb(states.CombParams(1, 2.0, 0.8))
        assert st.num_peaks == 1
        assert np.allclose(st.means[0], 0.0)
        assert np.allclose(st.covs[0], states.squeezed(0.8).covs[0])

    def test_two_teeth_weight_ratio(self):
        d, r = 1.7, 0.4
        st = states.comb(states.CombParams(2, d, r))
        w = np.sort(np.abs(st.weights.real))
        ratio = w[0] / w[-1]
        assert ratio == pytest.approx(np.exp(-np.exp(2 * r) * d**2 / (4 * HBAR)), rel=1e-12)

    def test_logical_one_displaced(self):
        a = states.comb(states.CombParams(2, 2.0, 0.5, logical=0))
        b = states.comb(states.CombParams(2, 2.0, 0.5, logical=1))
        assert np.allclose(b.means[:, 0] - a.means[:, 0], 1.0)

    def test_real_vs_complex(self):
        params = dict(num_teeth=3, spacing=2 * np.sqrt(np.pi * HBAR), r=1.0)
        a = states.comb(states.CombParams(**params, representation="real"))
        b = states.comb(states.CombParams(**params, representation="complex"))
        assert max_grid_diff(a, b, 8.0, n=81) < 1e-8

    def test_matches_superposition_construction(self):
        n_teeth, d, r = 3, 2.5, 0.6
        params = states.CombParams(n_teeth, d, r)
        teeth = states._comb_teeth(params, HBAR)
        comps = [(1.0, q / np.sqrt(2 * HBAR), r) for q in teeth]
        via_dyads = states.gaussian_superposition(comps)
        direct = states.comb(params)
        assert max_grid_diff(via_dyads, direct, 7.0, n=61) < 1e-12


class TestGaussianSuperposition:
    def test_single_component(self):
        st = states.gaussian_superposition([(1.0, 0.3 + 0.4j, 0.5)])
        assert st.num_peaks == 1
        assert st.weights[0] == pytest.approx(1.0)
        assert np.allclose(st.means[0], np.sqrt(2 * HBAR) * np.array([0.3, 0.4]))
        assert np.allclose(st.covs[0], np.diag([np.exp(-1.0), np.exp(1.0)]))

    def test_cat_equivalence(self):
        alpha = 1.3
        via_dyads = states.gaussian_superposition([(1.0, alpha, 0.0), (1.0, -alpha, 0.0)])
        direct = states.cat(states.CatParams(alpha))
        assert max_grid_diff(via_dyads, direct, 5.0, n=61) < 1e-13

    def test_mixed_squeezing_rejected(self):
        with pytest.raises(Unsupported):
            states.gaussian_superposition([(1.0, 0.0, 0.1), (1.0, 1.0, 0.2)])
        with pytest.raises(Unsupported):
            states.gaussian_superposition([(1.0, 0.0, 0.1j)])


class TestConstructorPhysicality:
    @pytest.mark.parametrize(
        "build",
        [
            lambda: states.vacuum(2),
            lambda: states.coherent(1.2 - 0.3j),
            lambda: states.squeezed(0.9, 0.4),
            lambda: states.thermal(2.0),
            lambda: states.gkp(states.GkpParams(np.pi / 2, -np.pi / 4, 0.15, cutoff=8)),
            lambda: states.cat(states.CatParams(1.5, parity=1)),
            lambda: states.fock(states.FockParams(2, 0.05)),
            lambda: states.comb(states.CombParams(3, 1.5, 0.5)),
        ],
    )
    def test_necessary_conditions(self, build):
        st = build()
        core.assert_physical(st, reality_tol=1e-9)
