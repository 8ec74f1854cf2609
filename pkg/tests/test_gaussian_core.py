import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import local_conjugate, thermal_fock_probs
from gaussrenyi.core import (
    UnphysicalStateError,
    direct_sum,
    local_invariants,
    purity,
    random_mixed_cm,
    random_orthosymplectic,
    random_pure_cm,
    reduce,
    renyi2_entropy,
    renyi_alpha_entropy,
    standard_form_cm,
    standard_form_from_invariants,
    standard_form_symplectic,
    symplectic_form,
    symplectic_spectrum,
    tmss_cm,
    to_standard_form,
    validate,
    von_neumann_entropy,
    williamson,
)

seeds = st.integers(0, 2**32 - 1)
TMSS53 = tmss_cm(np.arcsinh(4 / 3) / 2)


class TestSymplecticForm:
    def test_single_mode(self):
        assert np.array_equal(symplectic_form(1), [[0, 1], [-1, 0]])

    @pytest.mark.parametrize("n", [1, 2, 3, 5])
    def test_defining_identities(self, n):
        om = symplectic_form(n)
        assert np.allclose(om @ om, -np.eye(2 * n))
        assert np.array_equal(om.T, -om)

    def test_rejects_zero(self):
        with pytest.raises(ValueError):
            symplectic_form(0)


class TestSpectrum:
    def test_vacuum(self):
        assert np.allclose(symplectic_spectrum(np.eye(2)), [1])

    def test_thermal(self):
        assert np.allclose(symplectic_spectrum(np.diag([2.0, 2.0])), [2])

    def test_tmss_is_pure(self):
        assert np.allclose(symplectic_spectrum(TMSS53), [1, 1], atol=1e-12)

    def test_two_mode_closed_form(self, rng):
        for _ in range(50):
            g = random_mixed_cm(2, 1.5, 5, rng)
            I1, I2, I3, I4 = local_invariants(g)
            d = I1 + I2 + 2 * I3
            nus = np.sqrt([(d + np.sqrt(d * d - 4 * I4)) / 2, (d - np.sqrt(d * d - 4 * I4)) / 2])
            assert np.allclose(symplectic_spectrum(g), nus, rtol=1e-9)

    def test_descending(self, rng):
        nu = symplectic_spectrum(random_mixed_cm(4, 1.0, 5, rng))
        assert np.all(np.diff(nu) <= 0)

    def test_rejects_non_symmetric(self):
        with pytest.raises(UnphysicalStateError):
            symplectic_spectrum(np.array([[1.0, 0.1], [0.0, 1.0]]))

    def test_rejects_indefinite(self):
        with pytest.raises(UnphysicalStateError):
            symplectic_spectrum(np.diag([1.0, -1.0]))


class TestValidate:
    def test_vacuum(self):
        rep = validate(np.eye(2))
        assert rep.symmetric and rep.positive_definite and rep.physical
        assert rep.nu_min == pytest.approx(1.0)

    def test_uncertainty_violation(self):
        rep = validate(np.diag([0.5, 0.5]))
        assert not rep.physical
        assert rep.nu_min == pytest.approx(0.5)

    def test_odd_dimension(self):
        with pytest.raises(ValueError):
            validate(np.eye(3))

    @given(seeds)
    @settings(max_examples=40, deadline=None)
    def test_random_symplectic_product_is_physical(self, seed):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(1, 5))
        s = random_orthosymplectic(n, rng) @ np.diag(np.exp(np.repeat(rng.uniform(-1, 1, n), 2) * np.tile([1, -1], n)))
        rep = validate(s @ s.T)
        assert rep.physical
        assert abs(rep.nu_min - 1) < 1e-9


class TestEntropies:
    def test_vacuum(self):
        assert purity(np.eye(2)) == 1
        assert renyi2_entropy(np.eye(2)) == 0
        assert renyi_alpha_entropy(np.eye(2), 3) == pytest.approx(0, abs=1e-15)
        assert von_neumann_entropy(np.eye(2)) == 0

    def test_thermal_against_fock_sums(self):
        p = thermal_fock_probs(2.0)
        g = np.diag([2.0, 2.0])
        assert purity(g) == pytest.approx(np.sum(p**2), abs=1e-12)
        assert renyi2_entropy(g) == pytest.approx(-np.log(np.sum(p**2)), abs=1e-12)
        assert renyi_alpha_entropy(g, 3) == pytest.approx(-0.5 * np.log(np.sum(p**3)), abs=1e-12)
        assert von_neumann_entropy(g) == pytest.approx(-np.sum(p * np.log(p)), abs=1e-10)

    def test_known_values(self):
        g = np.diag([2.0, 2.0])
        assert renyi2_entropy(g) == pytest.approx(np.log(2), abs=1e-12)
        assert renyi_alpha_entropy(g, 3) == pytest.approx(0.5 * np.log(26 / 8), abs=1e-12)
        assert von_neumann_entropy(g) == pytest.approx(0.954771, abs=1e-6)

    def test_additivity(self):
        g = direct_sum(np.diag([2.0, 2.0]), np.diag([3.0, 3.0]))
        assert renyi2_entropy(g) == pytest.approx(np.log(6), abs=1e-12)

    @pytest.mark.parametrize("alpha", [0.5, 2.0, 3.0, 7.5])
    def test_pure_states_have_zero_entropy(self, rng, alpha):
        g = random_pure_cm(3, 1.0, rng)
        # for alpha < 1 the entropy grows like (nu - 1)^alpha, amplifying rounding in nu
        tol = 1e-9 if alpha > 1 else 1e-6
        assert renyi_alpha_entropy(g, alpha) == pytest.approx(0, abs=tol)
        assert purity(g) == pytest.approx(1, abs=1e-9)

    @pytest.mark.parametrize("alpha", [0, -1, 1])
    def test_bad_alpha(self, alpha):
        with pytest.raises(ValueError):
            renyi_alpha_entropy(np.eye(2), alpha)

    def test_unphysical_purity(self):
        with pytest.raises(UnphysicalStateError):
            purity(np.diag([0.5, 0.5]))

    @given(seeds)
    @settings(max_examples=60, deadline=None)
    def test_alpha_two_matches_renyi2(self, seed):
        rng = np.random.default_rng(seed)
        g = random_mixed_cm(int(rng.integers(1, 5)), 1.5, 5, rng)
        assert renyi_alpha_entropy(g, 2) == pytest.approx(renyi2_entropy(g), abs=1e-10)

    @given(seeds)
    @settings(max_examples=40, deadline=None)
    def test_von_neumann_limit_and_ordering(self, seed):
        rng = np.random.default_rng(seed)
        g = random_mixed_cm(int(rng.integers(1, 4)), 1.0, 5, rng)
        s_vn = von_neumann_entropy(g)
        lo, hi = renyi_alpha_entropy(g, 1 + 1e-4), renyi_alpha_entropy(g, 1 - 1e-4)
        assert lo - 1e-3 <= s_vn <= hi + 1e-3
        assert s_vn >= renyi2_entropy(g) - 1e-12

    @given(seeds)
    @settings(max_examples=40, deadline=None)
    def test_direct_sum_additivity(self, seed):
        rng = np.random.default_rng(seed)
        g1, g2 = random_mixed_cm(2, 1.0, 4, rng), random_mixed_cm(1, 1.0, 4, rng)
        assert renyi2_entropy(direct_sum(g1, g2)) == pytest.approx(renyi2_entropy(g1) + renyi2_entropy(g2), abs=1e-10)


class TestReduce:
    def test_product(self):
        ga, gb = np.diag([2.0, 3.0]), np.diag([4.0, 5.0])
        assert np.array_equal(reduce(direct_sum(ga, gb), [0]), ga)

    def test_tmss_marginal(self):
        assert np.allclose(reduce(TMSS53, [0]), np.diag([5 / 3, 5 / 3]))

    def test_composition(self, rng):
        g = random_mixed_cm(4, 1.0, 3, rng)
        assert np.array_equal(reduce(reduce(g, [3, 1, 2]), [0, 2]), reduce(g, [3, 2]))

    @pytest.mark.parametrize("modes", [[], [2], [0, 0]])
    def test_errors(self, modes):
        with pytest.raises(ValueError):
            reduce(np.eye(4), modes)


class TestStandardForm:
    def test_tmss_invariants(self):
        inv = local_invariants(TMSS53)
        assert inv == pytest.approx((25 / 9, 25 / 9, -16 / 9, 1))

    def test_product_invariants(self):
        inv = local_invariants(np.diag([2.0, 2, 3, 3]))
        assert inv == pytest.approx((4, 9, 0, 36))

    def test_idempotent(self):
        sf = (2.0, 3.0, 1.2, -0.7)
        assert to_standard_form(standard_form_cm(*sf)) == pytest.approx(sf, abs=1e-12)

    def test_product(self):
        assert to_standard_form(np.diag([2.0, 2, 3, 3])) == pytest.approx((2, 3, 0, 0))

    def test_rotated_tmss(self, rng):
        for _ in range(10):
            sf = to_standard_form(local_conjugate(TMSS53, rng, squeeze_cap=0.0))
            assert sf == pytest.approx((5 / 3, 5 / 3, 4 / 3, -4 / 3), abs=1e-12)

    def test_requires_two_modes(self):
        with pytest.raises(ValueError):
            local_invariants(np.eye(6))

    @given(seeds)
    @settings(max_examples=80, deadline=None)
    def test_round_trip_and_local_invariance(self, seed):
        rng = np.random.default_rng(seed)
        g = random_mixed_cm(2, 1.5, float(rng.uniform(1, 5)), rng)
        inv = np.array(local_invariants(g))
        sf = to_standard_form(g)
        assert sf.c_plus >= abs(sf.c_minus)
        assert np.allclose(local_invariants(sf.matrix()), inv, rtol=1e-9, atol=1e-9)
        h = local_conjugate(g, rng)
        assert np.allclose(local_invariants(h), inv, rtol=1e-8, atol=1e-8)
        assert np.allclose(to_standard_form(h), sf, rtol=1e-8, atol=1e-8)
        assert renyi2_entropy(h) == pytest.approx(renyi2_entropy(g), abs=1e-8)
        assert sf.physicality() >= -1e-9

    def test_invariant_reconstruction_agrees(self, rng):
        for _ in range(200):
            g = random_mixed_cm(2, 1.5, float(rng.uniform(1.5, 5)), rng)
            a = to_standard_form(g)
            b = standard_form_from_invariants(local_invariants(g))
            assert np.allclose(a, b, atol=1e-6)

    def test_local_symplectic(self, rng):
        for _ in range(20):
            g = random_mixed_cm(2, 1.5, 4, rng)
            s, sf = standard_form_symplectic(g)
            om = symplectic_form(2)
            assert np.allclose(s @ om @ s.T, om, atol=1e-10)
            assert np.allclose(s[:2, 2:], 0) and np.allclose(s[2:, :2], 0)
            assert np.allclose(s @ g @ s.T, sf.matrix(), atol=1e-9)


class TestTmss:
    def test_zero(self):
        assert np.array_equal(tmss_cm(0), np.eye(4))

    @pytest.mark.parametrize("r", [0.1, 0.5, np.arcsinh(4 / 3) / 2, 1.5])
    def test_pure_standard_form(self, r):
        g = tmss_cm(r)
        assert np.linalg.det(g) == pytest.approx(1, abs=1e-9)
        assert g[0, 2] == pytest.approx(np.sqrt(g[0, 0] ** 2 - 1))
        assert np.allclose(symplectic_spectrum(g), 1, atol=1e-9)

    def test_three_four_five(self):
        assert TMSS53[0, 0] == pytest.approx(5 / 3)


class TestRandomStates:
    def test_identity_when_caps_trivial(self, rng):
        assert np.allclose(random_mixed_cm(3, 0.0, 1.0, rng), np.eye(6), atol=1e-12)

    def test_deterministic(self):
        a = random_mixed_cm(3, 1.0, 3.0, np.random.default_rng(42))
        b = random_mixed_cm(3, 1.0, 3.0, np.random.default_rng(42))
        assert np.array_equal(a, b)

    @pytest.mark.parametrize("args", [(2, -1.0, 3.0), (2, 1.0, 0.5), (2, np.inf, 2.0), (0, 1.0, 2.0)])
    def test_bad_caps(self, rng, args):
        with pytest.raises(ValueError):
            random_mixed_cm(*args, rng)

    @given(seeds)
    @settings(max_examples=60, deadline=None)
    def test_pure_draws(self, seed):
        rng = np.random.default_rng(seed)
        g = random_pure_cm(int(rng.integers(1, 5)), 1.5, rng)
        assert np.linalg.det(g) == pytest.approx(1, abs=1e-9)
        assert validate(g).physical

    @given(seeds)
    @settings(max_examples=60, deadline=None)
    def test_mixed_draws_entropy(self, seed):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(1, 5))
        g = random_mixed_cm(n, 1.5, 5.0, rng)
        nu = symplectic_spectrum(g)
        assert nu[-1] >= 1 - 1e-9
        assert renyi2_entropy(g) == pytest.approx(np.sum(np.log(nu)), abs=1e-8)

    def test_williamson(self, rng):
        for n in (1, 2, 3):
            g = random_mixed_cm(n, 1.0, 4, rng)
            nu, s = williamson(g)
            om = symplectic_form(n)
            assert np.allclose(s @ om @ s.T, om, atol=1e-9)
            assert np.allclose((s * np.repeat(nu, 2)) @ s.T, g, atol=1e-9)
