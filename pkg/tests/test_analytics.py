"""Tests for the analytic outage probabilities."""

import math
import warnings

import numpy as np
import pytest
from scipy import integrate, special

from afrelay.analytics import (
    ClampWarning,
    OutageBound,
    OutageQuery,
    QuadratureSpec,
    cdf_af_min2,
    cdf_af_min3,
    cdf_relay_min2,
    cdf_relay_min3,
    epsilon_outage_rate,
    expected_relay_gain_min2,
    min3_convolution_integral,
    outage_bound,
    outage_cutset,
    outage_min2,
    outage_min3,
)
from afrelay.analytics.outage import _clamp_probability
from afrelay.channel import LinkMeans, SystemParams, gain_threshold
from afrelay.distributions import sum2_exp_survival

UNIT = LinkMeans.unit()


@pytest.fixture
def random_means() -> list[LinkMeans]:
    """Ten seeded link configurations with means in [0.5, 2]."""
    rng = np.random.default_rng(2024)
    return [LinkMeans(*map(float, row)) for row in rng.uniform(0.5, 2.0, size=(10, 3))]


def simpson_convolution(mu: float, means: LinkMeans, snr: float) -> float:
    """Fixed-step Simpson of the min3 convolution integral with scipy's K1."""
    y = np.linspace(0.0, mu, 1_000_001)
    t = 2.0 * np.sqrt(y / (snr * means.mu_sr * means.mu_rd))
    t_k1 = np.ones_like(t)
    positive = t > 0
    t_k1[positive] = t[positive] * special.k1(t[positive])
    decay = 1.0 / means.relay_mean - 1.0 / means.mu_sd
    return float(integrate.simpson(np.exp(-y * decay) * t_k1, x=y))


class TestOutageQuery:
    """Tests for OutageQuery."""

    def test_from_system(self):
        """Test the threshold is derived from the rate."""
        q = OutageQuery.from_system(UNIT, SystemParams.from_db(10.0, rate_threshold=1.0))
        assert q.mu_th == pytest.approx(0.3, rel=1e-12)
        assert q.snr == pytest.approx(10.0)

    def test_invalid(self):
        """Test invalid fields are rejected."""
        with pytest.raises(ValueError, match="mu_th"):
            OutageQuery(UNIT, 1.0, -0.1)
        with pytest.raises(ValueError, match="snr"):
            OutageQuery(UNIT, 0.0, 0.1)
        with pytest.raises(TypeError, match="means"):
            OutageQuery((1.0, 1.0, 1.0), 1.0, 0.1)  # type: ignore[arg-type]

    def test_equal_thresholds_agree(self):
        """Test from_system and an explicit threshold give the same outages."""
        sp = SystemParams(snr=3.0, rate_threshold=0.7)
        q1 = OutageQuery.from_system(UNIT, sp)
        q2 = OutageQuery(UNIT, 3.0, gain_threshold(sp))
        for bound in OutageBound:
            assert outage_bound(q1, bound) == outage_bound(q2, bound)


class TestMin2:
    """Tests for the min(u, v) cdfs."""

    def test_relay_cdf(self):
        """Test the exponential cdf of the weaker hop."""
        assert cdf_relay_min2(0.0, UNIT) == 0.0
        assert cdf_relay_min2(0.5, UNIT) == pytest.approx(1 - math.exp(-1), rel=1e-14)
        means = LinkMeans(1.0, 3.0, 1.5)
        assert cdf_relay_min2(means.relay_mean, means) == pytest.approx(0.6321206, abs=1e-7)

    def test_af_cdf(self):
        """Test the sum cdf including its equal-mean branch."""
        assert cdf_af_min2(0.0, UNIT) == 0.0
        assert cdf_af_min2(1.0, LinkMeans(1.0, 2.0, 2.0)) == pytest.approx(
            1 - 2 * math.exp(-1), rel=1e-12
        )
        assert cdf_af_min2(1.0, UNIT) == pytest.approx(0.399577, abs=1e-6)

    def test_outage(self):
        """Test the outage at unit means, 10 dB and rate 1."""
        assert outage_min2(OutageQuery(UNIT, 10.0, 0.3)) == pytest.approx(0.0671752, abs=1e-7)
        assert outage_min2(OutageQuery(UNIT, 10.0, 0.0)) == 0.0

    def test_tail(self):
        """Test the cdf tends to 1."""
        big = 50 * (UNIT.mu_sd + UNIT.relay_mean)
        assert outage_min2(OutageQuery(UNIT, 10.0, big)) >= 1 - 1e-6

    def test_negative_mu(self):
        """Test negative thresholds are rejected."""
        with pytest.raises(ValueError, match="mu"):
            cdf_af_min2(-1.0, UNIT)
        with pytest.raises(ValueError, match="mu"):
            cdf_relay_min2(-1.0, UNIT)

    def test_expected_relay_gain(self):
        """Test the analytic mean of min(u, v)."""
        assert expected_relay_gain_min2(LinkMeans(1.0, 2.0, 2.0)) == 1.0


class TestMin3:
    """Tests for the min(u, v, uv SNR) cdfs."""

    def test_relay_cdf_value(self):
        """Test the relay cdf at t = sqrt(2)."""
        r2 = math.sqrt(2.0)
        expected = 1 - math.exp(-1) * r2 * special.k1(r2)
        assert cdf_relay_min3(0.5, UNIT, 1.0) == pytest.approx(expected, rel=1e-12)
        assert cdf_relay_min3(0.0, UNIT, 1.0) == 0.0

    def test_relay_collapse(self):
        """Test the relay cdf equals the min2 cdf at SNR 1e12."""
        for mu in np.logspace(-3, 1, 30):
            assert cdf_relay_min3(float(mu), UNIT, 1e12) == pytest.approx(
                cdf_relay_min2(float(mu), UNIT), abs=1e-9
            )

    def test_relay_invalid(self):
        """Test domain errors."""
        with pytest.raises(ValueError, match="snr"):
            cdf_relay_min3(1.0, UNIT, 0.0)
        with pytest.raises(ValueError, match="mu"):
            cdf_relay_min3(-1.0, UNIT, 1.0)

    def test_af_cdf_above_min2(self):
        """Test the min3 cdf at unit means, SNR 1 and mu 1 exceeds the min2 cdf."""
        assert cdf_af_min3(0.0, UNIT, 1.0) == 0.0
        value = cdf_af_min3(1.0, UNIT, 1.0)
        assert 0.399577 <= value <= 1.0

    def test_af_cdf_direct_form(self, random_means):
        """Test against ``1 - e^{-mu/mu_sd} (1 + I / mu_sd)``."""
        for means in random_means[:5]:
            for mu, snr in ((0.3, 0.5), (1.0, 1.0), (2.0, 10.0)):
                integral = min3_convolution_integral(mu, means, snr)
                direct = 1 - math.exp(-mu / means.mu_sd) * (1 + integral / means.mu_sd)
                assert cdf_af_min3(mu, means, snr) == pytest.approx(direct, abs=1e-8)

    def test_convolution_against_simpson(self):
        """Test the adaptive integral against a 10^6-point Simpson oracle."""
        rng = np.random.default_rng(99)
        for _ in range(20):
            means = LinkMeans(*map(float, rng.uniform(0.5, 2.0, 3)))
            mu = float(rng.uniform(0.1, 2.0))
            snr = float(10 ** rng.uniform(-1, 2))
            assert min3_convolution_integral(mu, means, snr) == pytest.approx(
                simpson_convolution(mu, means, snr), abs=1e-8
            )

    def test_unit_convolution_against_simpson(self):
        """Test the integral at unit means and SNR 1 over [0, 1]."""
        assert min3_convolution_integral(1.0, UNIT, 1.0) == pytest.approx(
            simpson_convolution(1.0, UNIT, 1.0), abs=1e-8
        )

    def test_high_snr_collapse(self):
        """Test the min3 cdf equals the min2 cdf at SNR 1e12."""
        for mu in np.logspace(-2, 1, 20):
            assert abs(cdf_af_min3(float(mu), UNIT, 1e12) - cdf_af_min2(float(mu), UNIT)) <= 1e-6

    def test_monotone(self):
        """Test the min3 cdf is nondecreasing on a 200-point grid."""
        means = LinkMeans(1.0, 0.7, 1.4)
        values = [cdf_af_min3(float(mu), means, 2.0) for mu in np.linspace(0.0, 5.0, 200)]
        assert all(b >= a for a, b in zip(values, values[1:]))
        assert all(0.0 <= v <= 1.0 for v in values)

    def test_outage(self):
        """Test outage_min3 evaluates the cdf at the threshold."""
        q = OutageQuery(UNIT, 10.0, 0.3)
        assert outage_min3(q) == cdf_af_min3(0.3, UNIT, 10.0)
        assert outage_min3(q) >= outage_min2(q)
        assert outage_min3(OutageQuery(UNIT, 10.0, 0.0)) == 0.0

    def test_deterministic(self):
        """Test repeated evaluations are bit-identical."""
        assert cdf_af_min3(0.8, UNIT, 0.5) == cdf_af_min3(0.8, UNIT, 0.5)

    def test_custom_quadrature(self):
        """Test looser tolerances stay close to the default result."""
        loose = QuadratureSpec(abs_tol=1e-6, rel_tol=1e-6)
        assert cdf_af_min3(1.0, UNIT, 1.0, loose) == pytest.approx(
            cdf_af_min3(1.0, UNIT, 1.0), abs=1e-5
        )


class TestOrdering:
    """Tests for closed-form orderings across link configurations."""

    SNRS = (0.1, 1.0, 10.0, 100.0)

    def test_relay_cdfs(self, random_means):
        """Test cdf_relay_min3 >= cdf_relay_min2 on the full grid."""
        grid = np.logspace(-3, 1, 50)
        for means in random_means:
            for snr in self.SNRS:
                for mu in grid:
                    mu = float(mu)
                    assert cdf_relay_min3(mu, means, snr) >= cdf_relay_min2(mu, means)

    def test_af_cdfs(self, random_means):
        """Test cdf_af_min3 >= cdf_af_min2 on a grid."""
        grid = np.logspace(-3, 1, 20)
        for means in random_means:
            for snr in self.SNRS:
                for mu in grid:
                    mu = float(mu)
                    assert cdf_af_min3(mu, means, snr) >= cdf_af_min2(mu, means)


class TestCutset:
    """Tests for the cut-set outage."""

    def test_values(self):
        """Test unequal and equal-mean configurations."""
        assert outage_cutset(OutageQuery(LinkMeans(1.0, 0.5, 0.5), 1.0, 0.3)) == pytest.approx(
            1 - ((2 * math.exp(-0.3) - math.exp(-0.6))) ** 2, rel=1e-12
        )
        assert outage_cutset(OutageQuery(LinkMeans(1.0, 0.5, 0.5), 1.0, 0.3)) == pytest.approx(
            0.1298379, abs=1e-7
        )
        assert outage_cutset(OutageQuery(UNIT, 1.0, 0.3)) == pytest.approx(0.0725083, abs=1e-7)

    def test_zero(self):
        """Test a zero threshold gives zero outage."""
        assert outage_cutset(OutageQuery(UNIT, 1.0, 0.0)) == 0.0

    def test_matches_survival_product(self, random_means):
        """Test the cdf evaluation equals 1 - S_sr S_rd from the sum survivals."""
        for means in random_means:
            for mu in (0.05, 0.3, 1.0, 4.0):
                s_sr = sum2_exp_survival(mu, means.mu_sd, means.mu_sr)
                s_rd = sum2_exp_survival(mu, means.mu_sd, means.mu_rd)
                q = OutageQuery(means, 1.0, mu)
                assert outage_cutset(q) == pytest.approx(1.0 - s_sr * s_rd, abs=1e-10)

    def test_above_min2(self, random_means):
        """Test the product of survivals never falls below the min2 outage."""
        for means in random_means:
            for mu in np.linspace(0.05, 5.0, 25):
                q = OutageQuery(means, 1.0, float(mu))
                assert outage_cutset(q) >= outage_min2(q) - 1e-12


class TestDispatch:
    """Tests for outage_bound and epsilon_outage_rate."""

    def test_outage_bound(self):
        """Test each bound dispatches to its evaluator."""
        q = OutageQuery(LinkMeans(1.0, 2.0, 0.5), 5.0, 0.4)
        assert outage_bound(q, OutageBound.MIN2) == outage_min2(q)
        assert outage_bound(q, OutageBound.MIN3) == outage_min3(q)
        assert outage_bound(q, OutageBound.CUTSET) == outage_cutset(q)
        assert str(OutageBound.MIN3) == "min3"

    def test_epsilon_outage_rate(self):
        """Test the rate maps back to an outage of epsilon."""
        for eps in (1e-3, 0.01, 0.1, 0.5):
            rate = epsilon_outage_rate(UNIT, 10.0, eps)
            mu_th = gain_threshold(SystemParams(snr=10.0, rate_threshold=rate))
            assert cdf_af_min2(mu_th, UNIT) == pytest.approx(eps, rel=1e-9)

    def test_epsilon_rate_increases(self):
        """Test a looser outage target allows a higher rate."""
        rates = [epsilon_outage_rate(UNIT, 10.0, eps) for eps in (1e-3, 0.01, 0.1)]
        assert rates[0] < rates[1] < rates[2]
        assert epsilon_outage_rate(UNIT, 10.0, 0.1, n_relays=2) < rates[2]

    def test_epsilon_invalid(self):
        """Test epsilon must lie strictly between 0 and 1."""
        for bad in (0.0, 1.0, -0.5):
            with pytest.raises(ValueError, match="epsilon"):
                epsilon_outage_rate(UNIT, 10.0, bad)


class TestClamp:
    """Tests for probability clamping."""

    def test_in_range_unchanged(self):
        """Test probabilities in [0, 1] pass through."""
        assert _clamp_probability(0.25, "p") == 0.25

    def test_rounding_clamped_silently(self):
        """Test tiny excursions are clamped without a warning."""
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            assert _clamp_probability(1.0 + 1e-12, "p") == 1.0
            assert _clamp_probability(-1e-12, "p") == 0.0

    def test_large_excursion_warns(self):
        """Test a clamp beyond rounding raises a ClampWarning."""
        with pytest.warns(ClampWarning, match="clamped"):
            assert _clamp_probability(1.0 + 1e-6, "p") == 1.0
