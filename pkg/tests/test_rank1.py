import math

import numpy as np
import pytest

from dunkl_a2.goldens import load_golden
from dunkl_a2.rank1 import (
    LOG_SCALE_THRESHOLD,
    Multiplicity,
    bessel_norm,
    bessel_norm_log,
    rank1_estimate,
    rank1_estimate_log,
    rank1_kernel,
    rank1_kernel_log,
)

GOLDEN = load_golden()


class TestMultiplicity:
    def test_accepts_positive(self):
        assert Multiplicity(0.3).k == 0.3

    @pytest.mark.parametrize("k", [0.0, -1.0, math.nan, math.inf])
    def test_rejects_nonpositive(self, k):
        with pytest.raises(ValueError):
            Multiplicity(k)

    def test_wrapper_accepted_by_kernels(self):
        assert rank1_kernel(0.5, 1.0, Multiplicity(1.2)).value == pytest.approx(
            rank1_kernel(0.5, 1.0, 1.2).value
        )


class TestBessel:
    def test_normalized_at_zero(self):
        for a in (0.0, 0.5, 1.0, 2.7):
            assert bessel_norm(a, 0.0) == pytest.approx(1.0, abs=1e-13)

    def test_even_in_argument(self):
        for a in (0.0, 0.8, 2.1):
            for x in (0.3, 1.7, 9.0, 44.0):
                assert bessel_norm(a, x) == pytest.approx(bessel_norm(a, -x), rel=1e-13)

    def test_half_integer_closed_form(self):
        # J_{1/2}(x) = sinh(x)/x
        assert bessel_norm(0.5, 2.0) == pytest.approx(math.sinh(2.0) / 2.0, rel=1e-12)

    def test_at_least_one_everywhere(self):
        for x in np.linspace(-30, 30, 13):
            assert bessel_norm(1.3, float(x)) >= 1.0 - 1e-12

    def test_against_golden_mpmath_values(self):
        for key, want in GOLDEN["bessel"].items():
            a, x = (float(v) for v in key.split("|"))
            assert bessel_norm(a, x) == pytest.approx(want, rel=1e-10)

    def test_derivative_identity(self):
        # dJ_a/dx = x / (2 (a+1)) * J_{a+1}(x), via centred differences
        h = 1e-5
        for a in (0.5, 1.0, 2.2):
            for x in (0.3, 1.0, 5.0, -2.5):
                fd = (bessel_norm(a, x + h) - bessel_norm(a, x - h)) / (2 * h)
                want = x / (2.0 * (a + 1.0)) * bessel_norm(a + 1.0, x)
                assert fd == pytest.approx(want, rel=1e-6, abs=1e-9)

    def test_rejects_negative_index(self):
        with pytest.raises(ValueError):
            bessel_norm(-0.2, 1.0)

    def test_log_variant_handles_huge_arguments(self):
        lg = bessel_norm_log(1.0, 2500.0)
        assert 2400 < lg < 2500
        assert bessel_norm(1.0, 2500.0) == math.inf


class TestRank1Kernel:
    def test_one_at_zero(self):
        for k in (0.3, 1.0, 4.0):
            assert rank1_kernel(0.0, 3.0, k).value == pytest.approx(1.0, rel=1e-13)
            assert rank1_kernel(2.0, 0.0, k).value == pytest.approx(1.0, rel=1e-13)

    def test_golden_values(self):
        for key, want in GOLDEN["rank1"].items():
            x, v, k = (float(s) for s in key.split("|"))
            assert rank1_kernel(x, v, k).value == pytest.approx(want, rel=1e-10)

    def test_closed_form_k1(self):
        want = (3.0 * math.exp(2.0) + math.exp(-2.0)) / 8.0
        assert rank1_kernel(1.0, 2.0, 1.0).value == pytest.approx(want, rel=1e-12)

    def test_representation_equivalence_grid(self):
        for k in (0.3, 0.5, 1.0, 1.7, 2.5):
            for c in np.linspace(-50, 50, 41):
                q = rank1_kernel(1.0, float(c), k)
                b = rank1_kernel(1.0, float(c), k, method="bessel")
                assert abs(q.value - b.value) <= 1e-10 * q.value

    def test_representation_equivalence_extended_range(self):
        # out to |xv| = 200 the Bessel route loses digits to the difference of
        # envelope-sized terms; the double-precision floor sits near 1e-12
        # relative on each Bessel factor, amplified by the J/E ratio, which
        # keeps k >= 0.5 within 1e-10 and the k = 0.3 corner near 2e-10
        for k, bound in ((0.3, 2.5e-10), (0.5, 1e-10), (1.0, 1e-10), (2.5, 1e-10)):
            for c in np.linspace(-200, 200, 41):
                q = rank1_kernel(1.0, float(c), k)
                b = rank1_kernel(1.0, float(c), k, method="bessel")
                assert abs(q.value - b.value) <= bound * q.value

    def test_mirror_sum_is_twice_bessel(self):
        # E(x, v) + E(-x, v) = 2 J_{k-1/2}(xv)
        for k in (0.5, 1.0, 2.5):
            for x, v in ((0.7, 3.0), (1.2, -4.0), (2.0, 10.0)):
                total = rank1_kernel(x, v, k).value + rank1_kernel(-x, v, k).value
                assert total == pytest.approx(2.0 * bessel_norm(k - 0.5, x * v), rel=1e-11)

    def test_positivity(self):
        for c in (-300.0, -40.0, -1.0, 0.2, 55.0, 600.0):
            assert rank1_kernel(1.0, c, 0.3).value > 0.0

    def test_scaled_mode_beyond_threshold(self):
        r = rank1_kernel(30.0, 30.0, 1.0)
        assert r.scaled and r.value is None
        assert r.log_value == pytest.approx(rank1_kernel_log(30.0, 30.0, 1.0))
        # bounded against the sharp envelope
        assert abs(r.log_value - rank1_estimate_log(30.0, 30.0, 1.0)) < 3.0

    def test_plain_log_consistency(self):
        r = rank1_kernel(3.0, 7.0, 1.3)
        assert not r.scaled
        assert math.log(r.value) == pytest.approx(r.log_value, abs=1e-12)

    def test_unknown_method_rejected(self):
        with pytest.raises(ValueError):
            rank1_kernel(1.0, 1.0, 1.0, method="series")

    def test_sharpness_spread_stable_under_radius_doubling(self):
        def spread(radius):
            ratios = []
            for x in np.linspace(-radius, radius, 15):
                for v in np.linspace(-radius, radius, 15):
                    ratios.append(
                        rank1_kernel_log(float(x), float(v), 0.8)
                        - rank1_estimate_log(float(x), float(v), 0.8)
                    )
            return max(ratios) - min(ratios)

        assert spread(50.0) - spread(25.0) <= 0.1


class TestRank1Estimate:
    def test_value_one_at_zero(self):
        assert rank1_estimate(0.0, 5.0, 0.5) == pytest.approx(1.0)
        assert rank1_estimate(5.0, 0.0, 2.0) == pytest.approx(1.0)

    def test_sign_branches(self):
        # xv = 3 >= 0: e^3 / 4^0.5 ; xv = -3: e^3 / 4^1.5
        assert rank1_estimate(1.0, 3.0, 0.5) == pytest.approx(math.exp(3.0) / 2.0, rel=1e-13)
        assert rank1_estimate(1.0, -3.0, 0.5) == pytest.approx(math.exp(3.0) / 8.0, rel=1e-13)

    def test_envelope_brackets_kernel(self):
        # two-sidedness with a modest constant across signs and k
        for k in (0.5, 1.0, 2.0):
            for c in (-40.0, -3.0, 1.0, 25.0):
                gap = rank1_kernel_log(1.0, c, k) - rank1_estimate_log(1.0, c, k)
                assert abs(gap) < 2.5


def test_threshold_matches_double_overflow_margin():
    assert LOG_SCALE_THRESHOLD == 700.0
