import cmath
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from catsense import coherent, fock
from catsense.coherent import (
    CoherentLabel,
    SuperpositionState,
    displace,
    expect_generator,
    fidelity,
    inner,
    make_entangled_cat,
    mean_photon_number,
    norm_squared,
    overlap,
    variance_generator,
)
from catsense.errors import ConsistencyError, DegenerateState, DimensionMismatch

# reusable strategies: amplitudes small enough that overlaps stay far from
# underflow and fock cross-checks stay cheap
amp = st.complex_numbers(max_magnitude=2.5, allow_nan=False, allow_infinity=False)
small_amp = st.complex_numbers(max_magnitude=1.5, allow_nan=False, allow_infinity=False)


def label(*amps):
    return CoherentLabel(tuple(amps))


class TestOverlap:
    def test_matches_direct_exponential(self):
        a, b = label(0.5 + 0.25j, -1.0), label(1.5j, 0.75)
        expected = cmath.exp(
            sum(
                -0.5 * (abs(x) ** 2 + abs(y) ** 2) + x.conjugate() * y
                for x, y in zip(a.amplitudes, b.amplitudes)
            )
        )
        assert overlap(a, b) == pytest.approx(expected, rel=1e-14)

    def test_self_overlap_is_one(self):
        a = label(1.2 - 0.7j, 0.3j, -2.0)
        assert overlap(a, a) == pytest.approx(1.0, abs=1e-14)

    def test_vacuum_against_gaussian(self):
        a = label(1.25)
        assert overlap(label(0.0), a) == pytest.approx(math.exp(-1.25**2 / 2), rel=1e-14)

    def test_distant_labels_underflow_to_zero(self):
        # exact closed form is exp(-|a-b|^2/2) ~ 1e-3909; must be clean 0,
        # not a range error
        assert overlap(label(60.0), label(-60.0)) == 0.0

    def test_mode_count_mismatch(self):
        with pytest.raises(DimensionMismatch):
            overlap(label(1.0), label(1.0, 0.0))

    @given(a1=amp, a2=amp, b1=amp, b2=amp)
    def test_magnitude_at_most_one(self, a1, a2, b1, b2):
        v = abs(overlap(label(a1, a2), label(b1, b2)))
        assert v <= 1.0 + 1e-12

    @given(a=amp, b=amp)
    def test_swap_conjugates(self, a, b):
        assert overlap(label(a), label(b)) == pytest.approx(
            overlap(label(b), label(a)).conjugate(), abs=1e-14
        )

    @given(a=small_amp, b=small_amp)
    def test_against_fock_oracle(self, a, b):
        exact = overlap(label(a), label(b))
        dim = fock.recommended_dim(max(abs(a), abs(b)))
        brute = fock.inner_fock(fock.coherent_vector(a, dim), fock.coherent_vector(b, dim))
        assert brute == pytest.approx(exact, abs=5e-11)


class TestSuperpositionState:
    def test_nearby_labels_merge(self):
        s = SuperpositionState(
            [(1.0, label(1.0, 2.0)), (2.0, label(1.0 + 1e-13, 2.0 - 1e-13))]
        )
        assert len(s) == 1
        assert s.terms[0][0] == pytest.approx(3.0)

    def test_distinct_labels_kept(self):
        s = SuperpositionState([(1.0, label(1.0)), (1.0, label(1.0 + 1e-9))])
        assert len(s) == 2

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            SuperpositionState([])

    def test_mixed_mode_counts_rejected(self):
        with pytest.raises(DimensionMismatch):
            SuperpositionState([(1.0, label(1.0)), (1.0, label(1.0, 0.0))])

    def test_cancelled_state_has_no_norm(self):
        s = SuperpositionState([(1.0, label(0.7)), (-1.0, label(0.7))])
        with pytest.raises(DegenerateState):
            norm_squared(s)


class TestEntangledCat:
    @pytest.mark.parametrize("alpha,n", [(0.5, 1), (1.0, 1), (1.0, 3), (2.0, 2)])
    def test_norm_squared_closed_form(self, alpha, n):
        cat = make_entangled_cat(alpha, n)
        assert norm_squared(cat) == pytest.approx(
            1.0 + math.exp(-2.0 * n * alpha**2), rel=1e-13
        )

    def test_zero_amplitude_collapses_to_vacuum(self):
        cat = make_entangled_cat(0.0, 2)
        assert len(cat) == 1
        assert cat.terms[0][0] == pytest.approx(math.sqrt(2.0))
        assert norm_squared(cat) == pytest.approx(2.0, rel=1e-14)

    def test_negative_alpha_rejected(self):
        with pytest.raises(ValueError):
            make_entangled_cat(-0.1, 2)

    def test_bad_mode_count_rejected(self):
        with pytest.raises(ValueError):
            make_entangled_cat(1.0, 0)

    def test_variance_closed_form(self):
        # Var(G) = N (1 + 4 N a^2 / (1 + e^{-2 N a^2}))
        for alpha, n in [(0.3, 1), (1.0, 1), (0.8, 2), (1.0, 3)]:
            u = n * alpha**2
            expected = n * (1.0 + 4.0 * u / (1.0 + math.exp(-2.0 * u)))
            assert variance_generator(make_entangled_cat(alpha, n)) == pytest.approx(
                expected, rel=1e-12
            )

    def test_photon_number_closed_form(self):
        # n_tot = u tanh(u), u = N a^2; at a = N = 1 that is tanh(1)
        assert mean_photon_number(make_entangled_cat(1.0, 1)) == pytest.approx(
            math.tanh(1.0), abs=1e-14
        )
        for alpha, n in [(0.3, 1), (0.8, 2), (1.2, 3)]:
            u = n * alpha**2
            assert mean_photon_number(make_entangled_cat(alpha, n)) == pytest.approx(
                u * math.tanh(u), rel=1e-12
            )

    def test_generator_mean_vanishes(self):
        assert expect_generator(make_entangled_cat(1.3, 2)) == pytest.approx(0.0, abs=1e-12)


class TestDisplace:
    def test_phase_rule_single_term(self):
        # D(i eps)|a0> = e^{i eps a0} |a0 + i eps> for real a0
        a0, eps = 1.7, 0.3
        s = SuperpositionState([(1.0, label(a0))])
        d = displace(s, [1j * eps])
        (c, lab), = d.terms
        assert c == pytest.approx(cmath.exp(1j * eps * a0), rel=1e-14)
        assert lab.amplitudes[0] == pytest.approx(a0 + 1j * eps)

    def test_wrong_kick_count(self):
        with pytest.raises(DimensionMismatch):
            displace(make_entangled_cat(1.0, 2), [0.1])

    @given(a=amp, b=st.complex_numbers(max_magnitude=1.0, allow_nan=False, allow_infinity=False))
    def test_norm_preserved(self, a, b):
        s = SuperpositionState([(0.8, label(a)), (0.6, label(a + 2.0))])
        assert norm_squared(displace(s, [b])) == pytest.approx(norm_squared(s), rel=1e-11)

    @given(
        b1=st.complex_numbers(max_magnitude=1.0, allow_nan=False, allow_infinity=False),
        b2=st.complex_numbers(max_magnitude=1.0, allow_nan=False, allow_infinity=False),
    )
    def test_composition_up_to_phase(self, b1, b2):
        s = make_entangled_cat(0.9, 1)
        two_step = displace(displace(s, [b1]), [b2])
        one_step = displace(s, [b1 + b2])
        assert fidelity(two_step, one_step) == pytest.approx(1.0, abs=1e-11)

    @given(eps=st.floats(-1.0, 1.0))
    def test_imaginary_kick_leaves_generator_mean(self, eps):
        # D(i eps) shifts Y, not X: the generator mean must not move
        s = make_entangled_cat(1.1, 2)
        kicked = displace(s, [1j * eps] * 2)
        assert expect_generator(kicked) == pytest.approx(expect_generator(s), abs=1e-10)

    def test_real_kick_shifts_generator_mean(self):
        s = SuperpositionState([(1.0, label(0.4, -0.2))])
        kicked = displace(s, [0.25, 0.25])
        assert expect_generator(kicked) == pytest.approx(
            expect_generator(s) + 4 * 0.25, rel=1e-12
        )

    def test_matches_fock_oracle(self):
        s = make_entangled_cat(1.0, 2)
        beta = (0.2 + 0.1j, -0.15j)
        exact = coherent.displace(s, beta)
        dim = 30
        brute = fock.displace_fock(fock.to_fock(s, dim), beta)
        want = fock.to_fock(exact, dim)
        assert np.allclose(brute.amplitudes, want.amplitudes, atol=1e-10)


class TestMoments:
    def test_coherent_state_basics(self):
        a = 0.8 - 0.5j
        s = SuperpositionState([(1.0, label(a))])
        assert expect_generator(s) == pytest.approx(2 * a.real, rel=1e-13)
        assert variance_generator(s) == pytest.approx(1.0, rel=1e-12)
        assert mean_photon_number(s) == pytest.approx(abs(a) ** 2, rel=1e-13)

    def test_multimode_coherent_variance_adds(self):
        s = SuperpositionState([(1.0, label(0.5, -0.3j, 1.0))])
        assert variance_generator(s) == pytest.approx(3.0, rel=1e-12)

    def test_degenerate_moment_raises(self):
        s = SuperpositionState([(1.0, label(1.0)), (-1.0, label(1.0 + 1e-13))])
        with pytest.raises(DegenerateState):
            expect_generator(s)

    @given(
        a=small_amp,
        b=small_amp,
        c1=st.floats(0.2, 1.5),
        c2=st.floats(-1.5, 1.5),
    )
    def test_variance_nonnegative(self, a, b, c1, c2):
        s = SuperpositionState([(c1, label(a)), (c2 + 0.1j, label(b))])
        try:
            assert variance_generator(s) >= 0.0
            assert mean_photon_number(s) >= 0.0
        except DegenerateState:
            pass  # cancelling coefficients are a legitimate rejection

    @given(a=small_amp, b=small_amp, phase=st.floats(0.0, 2 * math.pi))
    def test_moments_against_fock_oracle(self, a, b, phase):
        c2 = 0.7 * cmath.exp(1j * phase)
        s = SuperpositionState([(1.0, label(a)), (c2, label(b))])
        try:
            exact_var = variance_generator(s)
            exact_n = mean_photon_number(s)
        except DegenerateState:
            return
        dim = fock.recommended_dim(max(abs(a), abs(b)))
        psi = fock.to_fock(s, dim)
        x = fock.quad_x(dim)
        assert fock.variance(psi, x) == pytest.approx(exact_var, rel=1e-9, abs=1e-9)
        assert fock.expectation(psi, fock.number_operator(dim)) == pytest.approx(
            exact_n, rel=1e-9, abs=1e-9
        )

    def test_inner_matches_fock(self):
        s = make_entangled_cat(0.9, 2)
        t = displace(s, (0.3, -0.2j))
        exact = inner(s, t)
        dim = 26
        brute = fock.inner_fock(fock.to_fock(s, dim), fock.to_fock(t, dim))
        assert brute == pytest.approx(exact, abs=1e-10)
