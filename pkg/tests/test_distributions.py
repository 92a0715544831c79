"""Tests for the exponential, sum, minimum and product distributions."""

import math

import numpy as np
import pytest
from scipy import integrate, special

from afrelay.distributions import (
    EQUAL_MEAN_REL_TOL,
    ExpMean,
    exp_cdf,
    exp_pdf,
    exp_survival,
    min2_exp_cdf,
    min2_exp_mean,
    minn_exp_mean,
    one_minus_exp,
    prod_exp_cdf,
    prod_exp_pdf,
    prod_exp_small_y_ratio,
    shifted_sum2_exp_cdf,
    sum2_exp_cdf,
    sum2_exp_survival,
)

N_DRAWS = 1_000_000


def assert_matches_empirical(samples: np.ndarray, cdf, grid) -> None:
    """Every grid point within 4 binomial standard errors (+1/n) of the cdf."""
    ordered = np.sort(samples)
    n = ordered.size
    for x in grid:
        expected = cdf(float(x))
        p_hat = np.searchsorted(ordered, x, side="left") / n
        variance = max(p_hat * (1.0 - p_hat), expected * (1.0 - expected))
        tol = 4.0 * math.sqrt(variance / n) + 1.0 / n
        assert abs(p_hat - expected) <= tol, (x, p_hat, expected)


@pytest.fixture
def rng() -> np.random.Generator:
    """Seeded generator independent of the package's own streams."""
    return np.random.default_rng(20240611)


@pytest.fixture
def mean_pairs(rng: np.random.Generator) -> list[tuple[float, float]]:
    """Twenty random mean pairs in [0.1, 10]^2."""
    return [tuple(float(v) for v in rng.uniform(0.1, 10.0, 2)) for _ in range(20)]


class TestExpMean:
    """Tests for ExpMean."""

    def test_creation(self):
        """Test creating a mean and its rate."""
        m = ExpMean(2.0)
        assert m.mean == 2.0
        assert m.rate == 0.5
        assert float(m) == 2.0

    def test_int_mean_becomes_float(self):
        """Test an integer mean is stored as float."""
        assert isinstance(ExpMean(3).mean, float)

    def test_invalid_means(self):
        """Test non-positive and non-finite means are rejected."""
        for bad in (0.0, -1.0, math.inf, math.nan):
            with pytest.raises(ValueError, match="mean must be positive"):
                ExpMean(bad)
        with pytest.raises(TypeError):
            ExpMean("1")  # type: ignore[arg-type]


class TestSingleExponential:
    """Tests for exp_pdf, exp_cdf and exp_survival."""

    def test_pdf_values(self):
        """Test pdf at a few points."""
        assert exp_pdf(0.0, 2.0) == 0.5
        assert exp_pdf(1.0, 1.0) == pytest.approx(0.3678794, abs=1e-7)
        assert exp_pdf(5.0, ExpMean(1.0)) == pytest.approx(6.7379e-3, abs=1e-7)

    def test_pdf_integrates_to_one(self):
        """Test pdf normalization."""
        value, _ = integrate.quad(lambda u: exp_pdf(u, 2.5), 0.0, np.inf)
        assert value == pytest.approx(1.0, abs=1e-10)

    def test_cdf_values(self):
        """Test cdf at its mean and at 0."""
        assert exp_cdf(1.0, 1.0) == pytest.approx(0.6321206, abs=1e-7)
        assert exp_cdf(0.0, 1.0) == 0.0

    def test_cdf_tiny_argument(self):
        """Test the cdf keeps full precision for tiny arguments."""
        assert exp_cdf(1e-9, 1.0) == pytest.approx(1e-9 - 0.5e-18, rel=1e-12)
        assert exp_cdf(1e-300, 1.0) == pytest.approx(1e-300, rel=1e-12)
        assert one_minus_exp(1e-20) == 1e-20

    def test_slope_at_origin(self):
        """Test F(mu)/mu -> 1/mean within 1e-3 at mu = 1e-4 mean."""
        for mean in (0.1, 1.0, 7.0):
            mu = 1e-4 * mean
            assert abs(exp_cdf(mu, mean) / mu - 1 / mean) * mean <= 1e-3

    def test_survival_complements_cdf(self):
        """Test survival + cdf = 1."""
        for u in (0.0, 0.3, 2.0, 40.0):
            assert exp_survival(u, 1.5) + exp_cdf(u, 1.5) == pytest.approx(1.0, abs=1e-15)

    def test_tail(self):
        """Test cdf at 50 means is within 1e-6 of 1."""
        assert exp_cdf(50.0 * 3.0, 3.0) >= 1 - 1e-6

    def test_negative_argument_rejected(self):
        """Test negative arguments are rejected."""
        with pytest.raises(ValueError, match="u must be non-negative"):
            exp_pdf(-1.0, 1.0)
        with pytest.raises(ValueError):
            exp_cdf(-0.1, 1.0)

    def test_empirical(self, rng):
        """Test cdf against seeded draws."""
        samples = rng.exponential(2.0, N_DRAWS)
        assert_matches_empirical(samples, lambda u: exp_cdf(u, 2.0), np.linspace(0, 10, 50))


class TestSumOfTwo:
    """Tests for sum2_exp_cdf and friends."""

    def test_distinct_means(self):
        """Test the convolution form."""
        expected = 2 * (1 - math.exp(-0.5)) - (1 - math.exp(-1.0))
        assert sum2_exp_cdf(1.0, 1.0, 2.0) == pytest.approx(expected, abs=1e-14)
        assert sum2_exp_cdf(1.0, 1.0, 2.0) == pytest.approx(0.1548181, abs=1e-7)

    def test_equal_means(self):
        """Test the Gamma(2) branch."""
        assert sum2_exp_cdf(1.0, 1.0, 1.0) == pytest.approx(1 - 2 * math.exp(-1), abs=1e-15)
        assert sum2_exp_cdf(1.0, 1.0, 1.0) == pytest.approx(0.2642411, abs=1e-7)

    def test_zero(self):
        """Test cdf at 0."""
        assert sum2_exp_cdf(0.0, 1.0, 2.0) == 0.0

    def test_symmetric_in_means(self):
        """Test swapping the means changes nothing."""
        assert sum2_exp_cdf(0.7, 0.3, 4.0) == pytest.approx(sum2_exp_cdf(0.7, 4.0, 0.3), rel=1e-13)

    def test_continuous_across_equal_mean_switch(self):
        """Test both sides of the equal-mean threshold agree."""
        inside = sum2_exp_cdf(1.0, 1.0, 1.0 + 0.5 * EQUAL_MEAN_REL_TOL)
        outside = sum2_exp_cdf(1.0, 1.0, 1.0 + 2.0 * EQUAL_MEAN_REL_TOL)
        assert inside == pytest.approx(outside, abs=1e-6)
        assert outside == pytest.approx(1 - 2 * math.exp(-1), abs=1e-5)

    def test_convolution_oracle(self, rng):
        """Test against numeric convolution of two pdfs on a 100-point grid."""
        for _ in range(10):
            a, b = (float(v) for v in rng.uniform(0.1, 10.0, 2))
            for s in np.linspace(0.0, 5.0 * (a + b), 100):
                s = float(s)
                oracle, _ = integrate.quad(
                    lambda x: exp_pdf(x, a) * exp_cdf(s - x, b), 0.0, s, epsabs=1e-13, epsrel=1e-12
                )
                assert sum2_exp_cdf(s, a, b) == pytest.approx(oracle, abs=1e-8)

    def test_curvature_at_origin(self, mean_pairs):
        """Test F(mu)/mu^2 -> 1/(2 mu_u mu_v) within 1e-2."""
        for a, b in mean_pairs:
            mu = 1e-3 * min(a, b)
            limit = 1.0 / (2 * a * b)
            assert abs(sum2_exp_cdf(mu, a, b) / mu**2 - limit) / limit <= 1e-2

    @pytest.mark.parametrize("a, b", [(1.0, 2.0), (0.3, 7.0), (5.0, 0.5)])
    @pytest.mark.parametrize("s", [1e-5, 1e-6, 1e-8, 1e-12])
    def test_small_argument_relative_accuracy(self, a, b, s):
        """Test tiny s against the expansion s^2/(2ab)(1 - s(a+b)/(3ab) + ...)."""
        expansion = s**2 / (2 * a * b) * (
            1 - s * (a + b) / (3 * a * b) + s**2 * (a * a + a * b + b * b) / (12 * a * a * b * b)
        )
        assert sum2_exp_cdf(s, a, b) == pytest.approx(expansion, rel=1e-13)

    def test_series_switch_continuous(self):
        """Test the small-s series meets the closed form at a tenth of the smaller mean."""
        edge = 0.1
        below = sum2_exp_cdf(edge * (1 - 1e-14), 1.0, 2.0)
        above = sum2_exp_cdf(edge * (1 + 1e-14), 1.0, 2.0)
        closed = 2 * -math.expm1(-edge / 2) - -math.expm1(-edge)
        assert below == pytest.approx(closed, rel=1e-12)
        assert above == pytest.approx(closed, rel=1e-12)

    def test_nondecreasing(self):
        """Test monotonicity on a grid."""
        values = [sum2_exp_cdf(float(s), 0.4, 3.0) for s in np.linspace(0, 150, 400)]
        assert all(b >= a for a, b in zip(values, values[1:]))
        assert values[-1] >= 1 - 1e-6

    def test_survival(self):
        """Test the directly computed survival."""
        for a, b in ((1.0, 2.0), (0.5, 0.5), (3.0, 0.2)):
            for s in (0.0, 0.4, 3.0):
                assert sum2_exp_survival(s, a, b) + sum2_exp_cdf(s, a, b) == pytest.approx(1.0, abs=1e-14)

    def test_empirical(self, rng):
        """Test against seeded draws of u + v."""
        samples = rng.exponential(1.0, N_DRAWS) + rng.exponential(2.0, N_DRAWS)
        assert_matches_empirical(
            samples, lambda s: sum2_exp_cdf(s, 1.0, 2.0), np.linspace(0, 12, 50)
        )

    def test_shift_identity(self, rng):
        """Test u + v + c has cdf F_s(z - c)."""
        c = 0.75
        samples = rng.exponential(0.5, N_DRAWS) + rng.exponential(1.5, N_DRAWS) + c
        assert_matches_empirical(
            samples, lambda z: shifted_sum2_exp_cdf(z, c, 0.5, 1.5), np.linspace(0, 8, 50)
        )
        assert shifted_sum2_exp_cdf(0.5, c, 0.5, 1.5) == 0.0
        assert shifted_sum2_exp_cdf(2.0, c, 0.5, 1.5) == sum2_exp_cdf(1.25, 0.5, 1.5)


class TestMinimum:
    """Tests for the minimum of exponentials."""

    def test_mean(self):
        """Test harmonic combination of the means."""
        assert min2_exp_mean(2.0, 2.0).mean == pytest.approx(1.0)
        assert min2_exp_mean(1.0, 1e12).mean == pytest.approx(1.0, rel=1e-11)
        assert min2_exp_mean(0.5, 0.5).mean == pytest.approx(0.25)

    def test_minn(self):
        """Test the K-way minimum."""
        assert minn_exp_mean(1.0, 1.0, 1.0).mean == pytest.approx(1 / 3)
        assert minn_exp_mean(ExpMean(4.0)).mean == 4.0
        with pytest.raises(ValueError, match="at least one"):
            minn_exp_mean()

    def test_cdf_values(self):
        """Test the minimum cdf."""
        m = min2_exp_mean(1.0, 2.0).mean
        assert min2_exp_cdf(m, 1.0, 2.0) == pytest.approx(0.6321206, abs=1e-7)
        assert min2_exp_cdf(0.0, 1.0, 2.0) == 0.0
        assert min2_exp_cdf(1.0, 1.0, 2.0) == pytest.approx(1 - math.exp(-1.5), abs=1e-15)
        assert min2_exp_cdf(1.0, 1.0, 2.0) == pytest.approx(0.7768698, abs=1e-7)

    def test_slope_at_origin(self, mean_pairs):
        """Test F(mu)/mu -> 1/mu_u + 1/mu_v within 1e-3."""
        for a, b in mean_pairs:
            slope = 1 / a + 1 / b
            mu = 1e-4 / slope
            assert abs(min2_exp_cdf(mu, a, b) / mu - slope) / slope <= 1e-3

    def test_empirical(self, rng):
        """Test against seeded draws of min(u, v)."""
        samples = np.minimum(rng.exponential(1.0, N_DRAWS), rng.exponential(2.0, N_DRAWS))
        assert_matches_empirical(
            samples, lambda m: min2_exp_cdf(m, 1.0, 2.0), np.linspace(0, 4, 50)
        )


class TestProduct:
    """Tests for the product of two exponentials."""

    def test_pdf_values(self):
        """Test the K0 density."""
        assert prod_exp_pdf(0.25, 1.0, 1.0) == pytest.approx(0.4210244, abs=1e-7)
        assert prod_exp_pdf(1.0, 1.0, 1.0) == pytest.approx(0.1138938, abs=1e-7)
        assert prod_exp_pdf(0.5, 2.0, 3.0) == pytest.approx(
            special.k0(2 * math.sqrt(0.5 / 6.0)) / 6.0, rel=1e-12
        )

    def test_pdf_refuses_zero(self):
        """Test the density is not evaluated at its singularity."""
        with pytest.raises(ValueError, match="p must be positive"):
            prod_exp_pdf(0.0, 1.0, 1.0)
        with pytest.raises(ValueError):
            prod_exp_pdf(-1.0, 1.0, 1.0)

    def test_pdf_normalization(self):
        """Test the density integrates to one."""
        head, _ = integrate.quad(lambda p: prod_exp_pdf(p, 1.0, 2.0), 0.0, 1.0, limit=200)
        tail, _ = integrate.quad(lambda p: prod_exp_pdf(p, 1.0, 2.0), 1.0, np.inf, limit=200)
        assert head + tail == pytest.approx(1.0, abs=1e-7)

    def test_cdf_values(self):
        """Test the cdf through the Bessel form."""
        assert prod_exp_cdf(0.0, 1.0, 1.0) == 0.0
        assert prod_exp_cdf(0.25, 1.0, 1.0) == pytest.approx(0.3980928, abs=1e-7)
        assert prod_exp_cdf(4.0, 1.0, 1.0) == pytest.approx(1 - 4 * special.k1(4.0), rel=1e-12)
        assert prod_exp_cdf(4.0, 1.0, 1.0) == pytest.approx(0.950066, abs=1e-6)

    def test_cdf_is_integral_of_pdf(self):
        """Test cdf(y) = int_0^y pdf."""
        value, _ = integrate.quad(lambda p: prod_exp_pdf(p, 0.5, 2.0), 0.0, 1.3, limit=200)
        assert prod_exp_cdf(1.3, 0.5, 2.0) == pytest.approx(value, abs=1e-8)

    def test_empirical(self, rng):
        """Test against seeded draws of u v."""
        samples = rng.exponential(1.0, N_DRAWS) * rng.exponential(1.0, N_DRAWS)
        assert_matches_empirical(
            samples, lambda y: prod_exp_cdf(y, 1.0, 1.0), np.linspace(0, 3, 50)
        )

    def test_small_y_ratio_diverges(self):
        """Test F(y)/y keeps growing as y -> 0 while F(y) -> 0."""
        ys = [10.0**-k for k in range(2, 10)]
        ratios = [prod_exp_small_y_ratio(y, 1.0, 1.0) for y in ys]
        values = [prod_exp_cdf(y, 1.0, 1.0) for y in ys]
        assert all(b > a for a, b in zip(ratios, ratios[1:]))
        assert all(b < a for a, b in zip(values, values[1:]))
        # grows like ln(1/y): one decade adds about ln(10)
        assert ratios[-1] - ratios[-2] == pytest.approx(math.log(10), rel=1e-2)
        with pytest.raises(ValueError):
            prod_exp_small_y_ratio(0.0, 1.0, 1.0)
