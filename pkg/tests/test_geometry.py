import cmath

import numpy as np
import pytest
from hypothesis import given, strategies as st

from phasestab.geometry import (
    decompose,
    lemma1_gap,
    lemma1_reduced_polynomial,
    lemma1_scan,
    pointwise_first_term_check,
)


def gap_oracle(w, z):
    """Direct arithmetic on both sides of the half-disk inequality."""
    rhs = abs(w - abs(z)) ** 2 + 2 * abs((z - w) / w) * z.imag**2
    lhs = (w - z.real) ** 2
    return rhs - lhs


admissible = st.tuples(
    st.floats(min_value=0.05, max_value=5.0),
    st.floats(min_value=0.0, max_value=0.5),
    st.floats(min_value=0.0, max_value=2 * np.pi, exclude_max=True),
).map(lambda t: (t[0], t[0] + t[0] * t[1] * cmath.exp(1j * t[2])))


class TestLemma1Gap:
    def test_fixed_point_has_zero_gap(self):
        assert lemma1_gap(1.0, 1.0 + 0j) == 0.0

    def test_reference_value(self):
        # oracle: direct evaluation of both sides at w=1, z=1.2+0.3i
        z = 1.2 + 0.3j
        expected = gap_oracle(1.0, z)
        got = lemma1_gap(1.0, z)
        assert got == pytest.approx(expected, rel=1e-14)
        assert got == pytest.approx(0.08103656, abs=1e-6)

    def test_quadratic_scaling_example(self):
        small = lemma1_gap(1.0, 1.2 + 0.3j)
        large = lemma1_gap(2.0, 2.4 + 0.6j)
        assert large == pytest.approx(4.0 * small, rel=1e-12)

    @given(pair=admissible, lam=st.floats(min_value=0.01, max_value=100.0))
    def test_quadratic_scaling_invariance(self, pair, lam):
        w, z = pair
        base = lemma1_gap(w, z)
        scaled = lemma1_gap(lam * w, lam * z)
        assert scaled == pytest.approx(lam**2 * base, rel=1e-9, abs=1e-12 * max(1, lam**2))

    @given(pair=admissible)
    def test_nonnegative_on_admissible_set(self, pair):
        w, z = pair
        assert lemma1_gap(w, z) >= -1e-12 * max(1.0, w**2)

    @given(pair=admissible)
    def test_matches_direct_oracle(self, pair):
        # rounding scale: the two squares are O(w^2) and nearly cancel
        w, z = pair
        assert lemma1_gap(w, z) == pytest.approx(gap_oracle(w, z), abs=1e-13 * max(1.0, w**2))

    def test_rejects_outside_disk(self):
        with pytest.raises(ValueError, match="inadmissible"):
            lemma1_gap(1.0, 1.6 + 0.0j)
        with pytest.raises(ValueError, match="inadmissible"):
            lemma1_gap(1.0, 0.4 + 0.2j)

    def test_rejects_nonpositive_w(self):
        with pytest.raises(ValueError):
            lemma1_gap(0.0, 0.0 + 0j)
        with pytest.raises(ValueError):
            lemma1_gap(-1.0, -1.0 + 0j)

    def test_array_broadcast(self):
        z = np.array([1.0 + 0j, 1.2 + 0.3j, 0.9 - 0.2j])
        gaps = lemma1_gap(1.0, z)
        assert gaps.shape == (3,)
        assert np.all(gaps >= -1e-12)


class TestLemma1Scan:
    def test_scan_500(self):
        scan = lemma1_scan(500, 500)
        assert scan.min_gap >= -1e-12

    def test_real_axis_scan_attains_zero(self):
        # theta in {0, pi}: real z, where both sides coincide
        scan = lemma1_scan(100, 2)
        assert scan.min_gap == 0.0
        assert scan.argmin_z.imag == 0.0

    def test_degenerate_scan_finite(self):
        scan = lemma1_scan(2, 2)
        assert np.isfinite(scan.min_gap)
        assert scan.min_gap >= -1e-12

    @pytest.mark.parametrize("steps", [(1, 100), (100, 1), (0, 0)])
    def test_invalid_steps_rejected(self, steps):
        with pytest.raises(ValueError):
            lemma1_scan(*steps)


class TestReducedPolynomial:
    def test_nonnegative_on_quarter_disk(self):
        x = np.linspace(-0.5, 0.5, 801)[:, None]
        y = np.linspace(-0.5, 0.5, 801)[None, :]
        inside = x**2 + y**2 <= 0.25
        vals = lemma1_reduced_polynomial(np.broadcast_to(x, inside.shape), np.broadcast_to(y, inside.shape))
        assert vals[inside].min() >= -1e-15

    def test_matches_gap_reconstruction(self):
        # multiplying the reduced polynomial back by y^2 gives the gap of the
        # squared-and-factored inequality; spot check sign consistency
        for x, y in [(0.1, 0.2), (-0.2, 0.3), (0.0, 0.5), (0.3, -0.1)]:
            if x**2 + y**2 <= 0.25:
                assert lemma1_reduced_polynomial(x, y) >= 0.0


class TestDecompose:
    def test_equal_inputs(self):
        d = decompose(1.0, 1.0)
        assert (d.a, d.b) == (0.0, 0.0)

    def test_reference_value(self):
        d = decompose(1.0, 0.9 + 0.05j)
        assert d.a == pytest.approx(-0.1, abs=1e-15)
        assert d.b == pytest.approx(0.05, abs=1e-15)

    def test_joint_rotation_invariance_example(self):
        d0 = decompose(1.0, 0.9 + 0.05j)
        d1 = decompose(1j, 1j * (0.9 + 0.05j))
        assert d1.a == pytest.approx(d0.a, abs=1e-15)
        assert d1.b == pytest.approx(d0.b, abs=1e-15)

    def test_zero_direction_rejected(self):
        with pytest.raises(ValueError, match="fhat_val != 0"):
            decompose(0.0, 1.0)

    @given(
        fh=st.complex_numbers(min_magnitude=1e-3, max_magnitude=1e3, allow_nan=False, allow_infinity=False),
        gh=st.complex_numbers(max_magnitude=1e3, allow_nan=False, allow_infinity=False),
    )
    def test_reconstruction_identity(self, fh, gh):
        d = decompose(fh, gh)
        assert np.hypot(d.a, d.b) == pytest.approx(abs(fh - gh), rel=1e-12, abs=1e-300)

    @given(
        fh=st.complex_numbers(min_magnitude=1e-3, max_magnitude=1e3, allow_nan=False, allow_infinity=False),
        gh=st.complex_numbers(max_magnitude=1e3, allow_nan=False, allow_infinity=False),
        theta=st.floats(min_value=0.0, max_value=2 * np.pi),
    )
    def test_rotation_equivariance(self, fh, gh, theta):
        # rotating the inputs quantizes them at magnitude |fh|, |gh|; that is
        # the rounding floor of the comparison
        rot = cmath.exp(1j * theta)
        d0 = decompose(fh, gh)
        d1 = decompose(rot * fh, rot * gh)
        tol = 1e-13 * (abs(fh) + abs(gh))
        assert d1.a == pytest.approx(d0.a, abs=tol)
        assert d1.b == pytest.approx(d0.b, abs=tol)

    @given(
        fh=st.complex_numbers(min_magnitude=1e-3, max_magnitude=1e3, allow_nan=False, allow_infinity=False),
        gh=st.complex_numbers(max_magnitude=1e3, allow_nan=False, allow_infinity=False),
    )
    def test_b_is_the_translation_integrand(self, fh, gh):
        # Im(conj(fh) fh) = 0, so b equals Im(conj(fh) gh)/|fh|; the two
        # evaluation orders agree to rounding
        d = decompose(fh, gh)
        scale = max(abs(fh), abs(gh))
        assert d.b == pytest.approx((fh.conjugate() * gh).imag / abs(fh), abs=1e-12 * scale)


class TestPointwiseFirstTerm:
    def test_equal_inputs(self):
        assert pointwise_first_term_check(1.0, 1.0, 0.05) == 0.0

    def test_reference_value_matches_oracle(self):
        # oracle: direct arithmetic on both sides
        F, G, eps = 1.0 + 0j, 0.99 + 0.04j, 0.05
        rhs = (abs(F) - abs(G)) ** 2 + 1.2 * ((F.conjugate() * G).imag / abs(F)) ** 2
        lhs = abs(F - G) ** 2
        got = pointwise_first_term_check(F, G, eps)
        assert got == pytest.approx(rhs - lhs, rel=1e-12)
        assert got >= 0.0

    def test_randomized_annulus(self, rng):
        eps = 0.03
        n = 100_000
        mag = rng.uniform(10 * eps, 1.0, n)
        F = mag * np.exp(2j * np.pi * rng.uniform(size=n))
        delta = eps * np.sqrt(rng.uniform(size=n)) * np.exp(2j * np.pi * rng.uniform(size=n))
        gaps = pointwise_first_term_check(F, F + delta, eps)
        assert gaps.min() >= -1e-12

    def test_regime_violations_rejected(self):
        with pytest.raises(ValueError, match="10 epsilon"):
            pointwise_first_term_check(0.4, 0.4, 0.05)
        with pytest.raises(ValueError, match="<= epsilon"):
            pointwise_first_term_check(1.0, 0.8, 0.05)
        with pytest.raises(ValueError, match="positive"):
            pointwise_first_term_check(1.0, 1.0, 0.0)
