import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from catsense import bounds, coherent, fock
from catsense.bounds import (
    BoundResult,
    FamilyKind,
    ProbeFamily,
    curve,
    entangled_cat_generator_variance,
    entangled_cat_ntot,
    eps_min_entangled_cat,
    eps_min_separable_cats,
    eps_min_single_cat,
    eps_min_sql,
    eps_min_squeezed,
    eps_min_squeezed_exact,
    invert_ntot,
)


class TestScalarBounds:
    def test_sql_is_half(self):
        assert eps_min_sql() == 0.5

    def test_squeezed_formula(self):
        assert eps_min_squeezed(0.25) == pytest.approx(1.0)
        assert eps_min_squeezed(25.0) == pytest.approx(0.1)

    def test_squeezed_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            eps_min_squeezed(0.0)
        with pytest.raises(ValueError):
            eps_min_squeezed(-1.0)

    def test_squeezed_exact_formula(self):
        assert eps_min_squeezed_exact(0.0) == pytest.approx(0.5)
        assert eps_min_squeezed_exact(1.0) == pytest.approx(0.5 * math.exp(-1.0))

    def test_squeezed_conventions_differ_by_factor_two(self):
        # photon-budget form vs exact quadrature form: at large r the probe
        # holds sinh^2 r photons and e^{-r} ~ 1/sqrt(4 sinh^2 r) * 2, so the
        # two published normalizations sit exactly a factor 2 apart
        r = 5.0
        budget = eps_min_squeezed(math.sinh(r) ** 2)
        exact = eps_min_squeezed_exact(r)
        assert budget / exact == pytest.approx(2.0, abs=1e-4)

    def test_single_cat_formula(self):
        assert eps_min_single_cat(2.0) == pytest.approx(1.0 / 3.0, rel=1e-14)

    def test_separable_formula(self):
        assert eps_min_separable_cats(10.0, 10) == pytest.approx(
            1.0 / math.sqrt(50.0), rel=1e-14
        )

    def test_separable_validation(self):
        with pytest.raises(ValueError):
            eps_min_separable_cats(1.0, 0)
        with pytest.raises(ValueError):
            eps_min_separable_cats(0.0, 2)


class TestVarianceForms:
    @given(alpha=st.floats(0.0, 4.0))
    def test_single_cat_matches_exact_algebra(self, alpha):
        want = coherent.variance_generator(coherent.make_entangled_cat(alpha, 1))
        assert bounds.single_cat_generator_variance(alpha) == pytest.approx(want, rel=1e-12)

    @given(alpha=st.floats(0.0, 3.0), n=st.integers(1, 8))
    def test_entangled_matches_exact_algebra(self, alpha, n):
        want = coherent.variance_generator(coherent.make_entangled_cat(alpha, n))
        assert entangled_cat_generator_variance(alpha, n) == pytest.approx(want, rel=1e-12)

    @given(alpha=st.floats(0.0, 3.0), n=st.integers(1, 16))
    def test_entanglement_concentrates_into_one_collective_cat(self, alpha, n):
        # Var_ent(a, N) = N * Var_cat1(sqrt(N) a): the N-mode cat is a single
        # cat of amplitude sqrt(N) a living in the symmetric collective mode,
        # plus N - 1 spectator vacua contributing variance 1 each
        lhs = entangled_cat_generator_variance(alpha, n)
        rhs = n * bounds.single_cat_generator_variance(math.sqrt(n) * alpha)
        assert lhs == pytest.approx(rhs, rel=1e-12)

    @given(alpha=st.floats(0.0, 3.0), n=st.integers(1, 8))
    def test_ntot_matches_exact_algebra(self, alpha, n):
        want = coherent.mean_photon_number(coherent.make_entangled_cat(alpha, n))
        assert entangled_cat_ntot(alpha, n) == pytest.approx(want, rel=1e-11, abs=1e-13)

    def test_huge_amplitude_no_overflow(self):
        # exp(-2 N a^2) underflows; the limit variance N (1 + 4 N a^2) must
        # come back, not a range error
        v = entangled_cat_generator_variance(50.0, 3)
        assert v == pytest.approx(3 * (1 + 4 * 3 * 2500.0), rel=1e-14)
        assert entangled_cat_ntot(50.0, 3) == pytest.approx(7500.0, rel=1e-14)


class TestEntangledBound:
    def test_result_fields(self):
        res = eps_min_entangled_cat(1.0, 1)
        assert isinstance(res, BoundResult)
        var = 1.0 + 4.0 / (1.0 + math.exp(-2.0))
        assert res.eps_min == pytest.approx(1.0 / math.sqrt(var), rel=1e-14)
        assert res.qfi == pytest.approx(var, rel=1e-14)
        assert res.n_tot == pytest.approx(math.tanh(1.0), rel=1e-14)
        assert res.alpha == 1.0
        assert res.family.kind is FamilyKind.ENTANGLED_CAT

    def test_ten_mode_ten_photon_point(self):
        res = eps_min_entangled_cat(invert_ntot(10.0, 10), 10)
        assert res.eps_min == pytest.approx(0.0493864797828243, rel=1e-12)

    def test_agrees_with_fock_oracle(self):
        # eps_min = 1/sqrt(Var G); the oracle returns 4 Var G, so divide out
        # the quantum-Fisher factor before comparing
        for n_modes, alpha in [(1, 0.5), (1, 1.0), (2, 0.8), (3, 1.0)]:
            psi = fock.to_fock(coherent.make_entangled_cat(alpha, n_modes))
            g = fock.collective_quad_x(psi.dim, n_modes)
            oracle_eps = 1.0 / math.sqrt(fock.qfi_pure(psi, g) / 4.0)
            assert eps_min_entangled_cat(alpha, n_modes).eps_min == pytest.approx(
                oracle_eps, abs=1e-8
            )


class TestInvertNtot:
    def test_unit_point(self):
        assert invert_ntot(math.tanh(1.0), 1) == pytest.approx(1.0, abs=1e-12)

    @given(
        n_tot=st.floats(1e-6, 1e4),
        n_modes=st.integers(1, 64),
    )
    def test_round_trip(self, n_tot, n_modes):
        alpha = invert_ntot(n_tot, n_modes)
        back = entangled_cat_ntot(alpha, n_modes)
        assert back == pytest.approx(n_tot, rel=1e-10)

    def test_large_budget_saturates_tanh(self):
        # for n_tot >> 1 the cat photon number is just N alpha^2
        alpha = invert_ntot(400.0, 4)
        assert alpha == pytest.approx(10.0, rel=1e-10)

    def test_validation(self):
        with pytest.raises(ValueError):
            invert_ntot(0.0, 1)
        with pytest.raises(ValueError):
            invert_ntot(1.0, 0)


class TestCurve:
    grid = np.geomspace(0.1, 100.0, 40)

    def test_four_photon_families_strictly_decrease(self):
        for kind, n_modes in [
            (FamilyKind.SQUEEZED, 1),
            (FamilyKind.SINGLE_CAT, 1),
            (FamilyKind.SEPARABLE_CATS, 10),
            (FamilyKind.ENTANGLED_CAT, 10),
        ]:
            eps = [r.eps_min for r in curve(ProbeFamily(kind, n_modes), self.grid)]
            assert all(a > b for a, b in zip(eps, eps[1:])), kind

    def test_sql_curve_is_flat(self):
        eps = [r.eps_min for r in curve(ProbeFamily(FamilyKind.COHERENT_SQL), self.grid)]
        assert eps == [0.5] * len(eps)

    def test_entangled_below_separable_below_single(self):
        fam_e = ProbeFamily(FamilyKind.ENTANGLED_CAT, 10)
        fam_s = ProbeFamily(FamilyKind.SEPARABLE_CATS, 10)
        fam_1 = ProbeFamily(FamilyKind.SINGLE_CAT)
        for re, rs, r1 in zip(curve(fam_e, self.grid), curve(fam_s, self.grid),
                              curve(fam_1, self.grid)):
            assert re.eps_min < rs.eps_min < r1.eps_min

    def test_rows_carry_requested_ntot_and_qfi(self):
        rows = curve(ProbeFamily(FamilyKind.ENTANGLED_CAT, 3), [0.5, 5.0])
        for want, row in zip([0.5, 5.0], rows):
            assert row.n_tot == want
            assert row.qfi == pytest.approx(1.0 / row.eps_min**2, rel=1e-14)
            assert entangled_cat_ntot(row.alpha, 3) == pytest.approx(want, rel=1e-10)

    def test_single_mode_family_rejects_multimode(self):
        with pytest.raises(ValueError):
            ProbeFamily(FamilyKind.SINGLE_CAT, 3)


class TestAgainstOracleConventions:
    def test_single_cat_formula_is_a_large_amplitude_approximation(self):
        # the 1/sqrt(1 + 4 n_tot) form replaces the cat's true photon number
        # a^2 tanh(a^2) by a^2; at n_tot = 2 that costs ~0.7%, visible well
        # above the oracle's accuracy, and it dies off by n_tot ~ 16
        def oracle_eps(n_tot: float) -> float:
            alpha = invert_ntot(n_tot, 1)
            psi = fock.to_fock(coherent.make_entangled_cat(alpha, 1))
            return 1.0 / math.sqrt(fock.qfi_pure(psi, fock.quad_x(psi.dim)) / 4.0)

        dev_small = abs(eps_min_single_cat(2.0) / oracle_eps(2.0) - 1.0)
        assert 1e-3 < dev_small < 1e-2
        dev_large = abs(eps_min_single_cat(16.0) / oracle_eps(16.0) - 1.0)
        assert dev_large < 1e-10

    def test_separable_formula_against_exact_variance(self):
        # N independent cats: total Var(G) = N * Var_single(alpha); the
        # printed N + 4 n_tot matches it at the e^{-2 a^2} level
        n_modes, n_tot = 4, 36.0
        alpha = invert_ntot(n_tot / n_modes, 1)
        exact_var = n_modes * bounds.single_cat_generator_variance(alpha)
        assert eps_min_separable_cats(n_tot, n_modes) == pytest.approx(
            1.0 / math.sqrt(exact_var), rel=1e-6
        )

    def test_squeezed_exact_matches_fock_qfi(self):
        r, dim = 0.8, 60
        psi = fock.squeezed_vector(r, dim)
        oracle_eps = 1.0 / math.sqrt(fock.qfi_pure(psi, fock.quad_x(dim)))
        assert eps_min_squeezed_exact(r) == pytest.approx(oracle_eps, abs=1e-8)


class TestAsymptotics:
    @pytest.mark.parametrize("n_modes", [1, 10, 100])
    def test_entangled_approaches_heisenberg_form(self, n_modes):
        for n_tot in [100.0, 1000.0, 10000.0]:
            res = eps_min_entangled_cat(invert_ntot(n_tot, n_modes), n_modes)
            ratio = res.eps_min * math.sqrt(4.0 * n_modes * n_tot)
            assert 0.995 <= ratio <= 1.0

    def test_sqrt_n_gap_between_separable_and_entangled(self):
        n_modes, n_tot = 10, 1000.0
        res = eps_min_entangled_cat(invert_ntot(n_tot, n_modes), n_modes)
        gap = eps_min_separable_cats(n_tot, n_modes) / res.eps_min
        assert gap == pytest.approx(math.sqrt(n_modes), rel=0.01)
