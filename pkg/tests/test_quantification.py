import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from reqsim.errors import ReqsimError
from reqsim.quantification import (
    QuantifyMode,
    apportion,
    normal_cdf,
    quantify,
    zscores,
)

# Frozen via mpmath (50-digit erf) before implementation:
#   Phi(z) * 100 for the exact z-values of capacities [9, 7, 6, 8].
EXACT_PCTS_9768 = [87.736094, 34.926768, 12.263906, 65.073232]

REFERENCE_SIGMA = 1.29099444873581
REFERENCE_Z = [
    1.16189500386223,
    -0.387298334620742,
    -1.16189500386223,
    0.387298334620742,
]
PAPER_COMPAT_PCTS = [87.698, 35.197, 12.302, 64.803]


class TestZScores:
    def test_reference_capacities(self):
        mu, sigma, z = zscores([9, 7, 6, 8])
        assert mu == pytest.approx(7.5, abs=1e-12)
        assert sigma == pytest.approx(REFERENCE_SIGMA, abs=1e-12)
        for got, want in zip(z, REFERENCE_Z):
            assert got == pytest.approx(want, abs=1e-12)

    def test_all_equal(self):
        mu, sigma, z = zscores([5, 5, 5])
        assert (mu, sigma) == (5, 0)
        assert z == [0.0, 0.0, 0.0]

    def test_single(self):
        assert zscores([4]) == (4, 0, [0.0])

    def test_empty(self):
        with pytest.raises(ReqsimError) as err:
            zscores([])
        assert err.value.code == "NO_CAPACITIES"

    @given(st.lists(st.floats(min_value=0.5, max_value=1000), min_size=2, max_size=16))
    def test_deviations_sum_to_zero(self, capacities):
        mu, sigma, z = zscores(capacities)
        if sigma > 0:
            assert sum(z) * sigma == pytest.approx(0, abs=1e-9 * max(capacities))


class TestNormalCdf:
    def test_symmetry_point(self):
        assert normal_cdf(0) == 0.5

    def test_published_points(self):
        assert normal_cdf(1.16) == pytest.approx(0.87698, abs=1e-5)
        assert normal_cdf(-0.38) == pytest.approx(0.35197, abs=1e-5)

    @given(st.floats(min_value=-8, max_value=8))
    def test_complement(self, z):
        assert normal_cdf(z) + normal_cdf(-z) == pytest.approx(1.0, abs=2e-15)

    @given(st.floats(min_value=-6, max_value=6))
    def test_monotone(self, z):
        assert normal_cdf(z) < normal_cdf(z + 0.01)


class TestQuantify:
    def test_paper_compat_reproduces_published_table(self):
        result = quantify([9, 7, 6, 8], "paper_compat")
        assert result.mean == pytest.approx(7.5, abs=1e-12)
        assert result.stddev == pytest.approx(REFERENCE_SIGMA, abs=1e-12)
        for got, want in zip(result.percentages, PAPER_COMPAT_PCTS):
            assert got == pytest.approx(want, abs=1e-3)
        assert result.total_percentage == pytest.approx(200, abs=5e-3)

    def test_exact_mode(self):
        result = quantify([9, 7, 6, 8], QuantifyMode.EXACT)
        for got, want in zip(result.percentages, EXACT_PCTS_9768):
            assert got == pytest.approx(want, abs=1e-6)
        assert result.total_percentage == pytest.approx(200, abs=1e-6)

    @pytest.mark.parametrize("mode", ["exact", "paper_compat"])
    def test_degenerate_equal_capacities(self, mode):
        result = quantify([5, 5], mode)
        assert list(result.percentages) == [50.0, 50.0]
        assert result.total_percentage == 100.0

    @given(
        st.lists(st.floats(min_value=1, max_value=100), min_size=1, max_size=12),
        st.floats(min_value=-50, max_value=50),
    )
    def test_translation_leaves_percentages_unchanged(self, capacities, shift):
        base = quantify(capacities, "exact")
        moved = quantify([c + shift for c in capacities], "exact")
        for a, b in zip(base.percentages, moved.percentages):
            assert a == pytest.approx(b, abs=1e-6)

    @given(st.lists(st.floats(min_value=1, max_value=100), min_size=1, max_size=12))
    def test_modes_agree_within_half_point(self, capacities):
        exact = quantify(capacities, "exact")
        compat = quantify(capacities, "paper_compat")
        for a, b in zip(exact.percentages, compat.percentages):
            assert abs(a - b) < 0.5

    @given(st.lists(st.floats(min_value=1, max_value=100), min_size=2, max_size=12))
    def test_paired_z_percentages_sum_to_100(self, capacities):
        result = quantify(capacities, "exact")
        by_z = dict(zip(result.z_values, result.percentages))
        for z, pct in by_z.items():
            if -z in by_z:
                assert pct + by_z[-z] == pytest.approx(100, abs=2e-5)


class TestApportion:
    def test_published_percentages(self):
        assert apportion(PAPER_COMPAT_PCTS, 14) == [6, 2, 1, 5]

    def test_zero_requests(self):
        assert apportion([10.0, 20.0, 5.0], 0) == [0, 0, 0]

    def test_even_split_tie_goes_to_lower_index(self):
        assert apportion([50, 50], 7) == [4, 3]

    def test_zero_weight(self):
        with pytest.raises(ReqsimError) as err:
            apportion([0, 0], 5)
        assert err.value.code == "ZERO_WEIGHT"

    def test_empty_percentages(self):
        with pytest.raises(ReqsimError) as err:
            apportion([], 5)
        assert err.value.code == "ZERO_WEIGHT"

    @given(
        st.lists(st.floats(min_value=0.01, max_value=100), min_size=1, max_size=10),
        st.integers(min_value=0, max_value=500),
    )
    def test_counts_sum_and_stay_within_one_of_quota(self, percentages, n):
        counts = apportion(percentages, n)
        assert sum(counts) == n
        total = sum(percentages)
        for count, pct in zip(counts, percentages):
            assert abs(count - pct / total * n) < 1


def test_quantify_then_apportion_pipeline():
    result = quantify([9, 7, 6, 8], "paper_compat")
    assert apportion(list(result.percentages), 14) == [6, 2, 1, 5]
