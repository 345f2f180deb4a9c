#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "oracle.hpp"
#include "orclsim/bcp.hpp"
#include "orclsim/errors.hpp"

using namespace orclsim;

namespace {

BcpConfig with_priors(double gamma, double lambda) {
  BcpConfig c;
  c.gamma = gamma;
  c.lambda = lambda;
  return c;
}

}  // namespace

// Reference values from a 50-digit quadrature of both integrals.
TEST(BlockOdds, MatchesHighPrecisionReference) {
  EXPECT_NEAR(block_odds(10, 0, 2, 8, 3, 20, with_priors(0.2, 0.2)) / 6391.2587151898826334, 1.0,
              1e-9);
  EXPECT_NEAR(block_odds(1, 1, 1, 1, 1, 2, with_priors(1.0, 1.0)) / 0.64319474753654549839, 1.0,
              1e-9);
  EXPECT_NEAR(block_odds(5, 3, 1, 7, 4, 300, with_priors(0.2, 0.2)) / 4.2826717021073986969e98,
              1.0, 1e-9);
}

TEST(BlockOdds, AgreesWithIndependentIntegrals) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.01, 50.0);
  for (int k = 0; k < 200; ++k) {
    const std::size_t n = 3 + rng() % 60;
    const std::size_t b = 1 + rng() % (n - 1);
    const double gamma = 0.05 + 0.95 * std::uniform_real_distribution<double>()(rng);
    const double lambda = 0.05 + 0.95 * std::uniform_real_distribution<double>()(rng);
    const double w0 = u(rng), b0 = u(rng), w1 = u(rng), b1 = u(rng);
    const double expected =
        oracle::log_prior_integral(b + 1, n, gamma) - oracle::log_prior_integral(b, n, gamma) +
        oracle::log_signal_integral(b + 1, n, lambda, w1, b1) -
        oracle::log_signal_integral(b, n, lambda, w0, b0);
    const double got = std::log(block_odds(w0, b0, w1, b1, b, n, with_priors(gamma, lambda)));
    EXPECT_NEAR(got, expected, 1e-8 * std::max(1.0, std::abs(expected)))
        << "n=" << n << " b=" << b;
  }
}

TEST(BlockOdds, SingleToTwoBlocksWithFlatPriorHasUnitBetaRatio) {
  const double ratio = std::exp(bcp_detail::log_prior_weight(2, 2, 1.0) -
                                bcp_detail::log_prior_weight(1, 2, 1.0));
  EXPECT_NEAR(ratio, 1.0, 1e-14);
}

TEST(BlockOdds, InvariantUnderScalingOfSumsOfSquares) {
  const auto cfg = with_priors(0.2, 0.2);
  const double base = block_odds(10, 0.5, 2, 8, 3, 20, cfg);
  for (double c2 : {1e-4, 0.25, 4.0, 1e6}) {
    EXPECT_NEAR(block_odds(c2 * 10, c2 * 0.5, c2 * 2, c2 * 8, 3, 20, cfg) / base, 1.0, 1e-10);
  }
}

TEST(BlockOdds, DegenerateDataUsesThePriorFactorAlone) {
  const auto cfg = with_priors(0.2, 0.2);
  const double prior = std::exp(bcp_detail::log_prior_weight(2, 10, 0.2) -
                                bcp_detail::log_prior_weight(1, 10, 0.2));
  EXPECT_NEAR(block_odds(0, 0, 0, 0, 1, 10, cfg) / prior, 1.0, 1e-12);
}

TEST(BlockOdds, RejectsBadArguments) {
  const auto cfg = with_priors(0.2, 0.2);
  EXPECT_THROW(block_odds(1, 1, 1, 1, 0, 10, cfg), ArgumentError);
  EXPECT_THROW(block_odds(1, 1, 1, 1, 10, 10, cfg), ArgumentError);
  EXPECT_THROW(block_odds(-1, 1, 1, 1, 1, 10, cfg), ArgumentError);
  EXPECT_THROW(block_odds(1, 1, 1, 1, 1, 10, with_priors(0.0, 0.2)), ArgumentError);
  EXPECT_THROW(block_odds(1, 1, 1, 1, 1, 10, with_priors(0.2, 1.5)), ArgumentError);
}

TEST(EvaluatePartition, SumsOfSquares) {
  const std::vector<double> x{1, 2, 3, 10, 11, 12};
  const std::vector<std::uint8_t> flags{0, 0, 1, 0, 0};
  const auto s = evaluate_partition(x, flags);
  EXPECT_EQ(s.block_count, 2u);
  EXPECT_NEAR(s.within_ss, 4.0, 1e-12);
  EXPECT_NEAR(s.between_ss, 121.5, 1e-12);
  const auto o = oracle::partition_stats(x, 0b00100);
  EXPECT_NEAR(o.within, s.within_ss, 1e-12);
  EXPECT_NEAR(o.between, s.between_ss, 1e-12);
}

TEST(BcpDetect, MatchesEnumerationOnShortSeries) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> noise(0.0, 1.0);
  BcpConfig cfg;
  cfg.mcmc_iterations = 20000;
  cfg.burn_in = 500;
  for (int k = 0; k < 4; ++k) {
    std::vector<double> x(8);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = (i >= 4 ? 3.0 : 0.0) + noise(rng);
    cfg.seed = 100 + k;
    const auto r = bcp_detect(x, cfg);
    const auto exact = oracle::enumerate_posterior(x, cfg.gamma, cfg.lambda);
    ASSERT_EQ(r.probabilities.size(), x.size());
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
      EXPECT_NEAR(r.probabilities[i], exact[i], 0.03) << "series " << k << " position " << i;
    }
    EXPECT_EQ(r.probabilities.back(), 0.0);
  }
}

TEST(BcpDetect, ConstantSeriesFollowsTheDegenerateRule) {
  const std::vector<double> x(100, 70.0);
  BcpConfig cfg;
  cfg.seed = 9;
  const auto r = bcp_detect(x, cfg);
  for (double m : r.posterior_means) EXPECT_EQ(m, 70.0);
  const double mean_p =
      std::accumulate(r.probabilities.begin(), r.probabilities.end() - 1, 0.0) / 99.0;
  // Every partition has the same weight up to its prior, so the posterior
  // change probability per position is the prior mean gamma / 2.
  EXPECT_NEAR(mean_p, 0.1, 0.02);
  const auto exact = oracle::enumerate_posterior(std::vector<double>(10, 70.0), 0.2, 0.2);
  for (std::size_t i = 0; i + 1 < exact.size(); ++i) EXPECT_NEAR(exact[i], 0.1, 0.02);
}

TEST(BcpDetect, StepSeriesIsFound) {
  std::vector<double> x(100, 60.0);
  std::fill(x.begin() + 50, x.end(), 90.0);
  BcpConfig cfg;
  cfg.seed = 4;
  const auto r = bcp_detect(x, cfg);
  EXPECT_GT(r.probabilities[49], 0.95);
  for (std::size_t i = 0; i < 100; ++i) {
    if (i + 5 <= 49 || i >= 54) EXPECT_LT(r.probabilities[i], 0.10) << i;
  }
  EXPECT_EQ(extract_change_events(r), (std::vector<std::size_t>{49}));
}

TEST(BcpDetect, LengthTwoIsReproducible) {
  const std::vector<double> x{5.0, 5.0};
  BcpConfig cfg;
  cfg.seed = 77;
  const auto a = bcp_detect(x, cfg);
  const auto b = bcp_detect(x, cfg);
  EXPECT_EQ(a.probabilities, b.probabilities);
  const auto exact = oracle::enumerate_posterior(x, cfg.gamma, cfg.lambda);
  EXPECT_NEAR(a.probabilities[0], exact[0], 0.05);
  cfg.seed = 78;
  EXPECT_EQ(bcp_detect(x, cfg).probabilities.size(), 2u);
}

TEST(BcpDetect, ReversedSeriesGivesReversedPosterior) {
  const std::vector<double> x{1.0, 1.2, 0.9, 4.0, 4.1, 3.8, 4.2, 1.0, 0.8};
  std::vector<double> rx(x.rbegin(), x.rend());
  const auto fwd = oracle::enumerate_posterior(x, 0.2, 0.2);
  const auto rev = oracle::enumerate_posterior(rx, 0.2, 0.2);
  const std::size_t m = x.size() - 1;
  for (std::size_t i = 0; i < m; ++i) EXPECT_NEAR(fwd[i], rev[m - 1 - i], 1e-12);

  BcpConfig cfg;
  cfg.mcmc_iterations = 20000;
  cfg.burn_in = 500;
  cfg.seed = 5;
  const auto r = bcp_detect(rx, cfg);
  for (std::size_t i = 0; i < m; ++i) EXPECT_NEAR(r.probabilities[i], rev[i], 0.03);
}

TEST(BcpDetect, RejectsBadInput) {
  BcpConfig cfg;
  EXPECT_THROW(bcp_detect(std::vector<double>{1.0}, cfg), ArgumentError);
  EXPECT_THROW(bcp_detect(std::vector<double>{1.0, NAN, 2.0}, cfg), ArgumentError);
  cfg.burn_in = cfg.mcmc_iterations;
  EXPECT_THROW(bcp_detect(std::vector<double>{1.0, 2.0}, cfg), ArgumentError);
}

TEST(Extract, SinglePeak) {
  BcpResult r;
  r.probabilities.assign(100, 0.0);
  r.probabilities[50] = 0.9;
  EXPECT_EQ(extract_change_events(r, 0.5, 5), (std::vector<std::size_t>{50}));
}

TEST(Extract, NeighboursKeepTheLargerOrTheEarlier) {
  BcpResult r;
  r.probabilities.assign(100, 0.0);
  r.probabilities[50] = 0.6;
  r.probabilities[51] = 0.6;
  EXPECT_EQ(extract_change_events(r, 0.5, 5), (std::vector<std::size_t>{50}));
  r.probabilities[51] = 0.7;
  EXPECT_EQ(extract_change_events(r, 0.5, 5), (std::vector<std::size_t>{51}));
  r.probabilities[60] = 0.55;
  EXPECT_EQ(extract_change_events(r, 0.5, 5), (std::vector<std::size_t>{51, 60}));
}

TEST(Extract, NothingAboveThreshold) {
  BcpResult r;
  r.probabilities.assign(100, 0.49);
  EXPECT_TRUE(extract_change_events(r, 0.5, 5).empty());
}
