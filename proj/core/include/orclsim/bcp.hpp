#pragma once

// Product-partition Bayesian change-point detection for a scalar series.
//
// A partition splits the series into contiguous blocks; flag U_i = 1 means a
// new block starts at position i + 1. With a uniform prior on the change
// probability over [0, gamma] and on the signal-to-noise ratio w over
// [0, lambda], the posterior weight of a partition with b blocks, within-block
// sum of squares W and between-block sum of squares B is
//
//   int_0^gamma p^(b-1) (1-p)^(n-b) dp  *  int_0^lambda w^((b-1)/2) (W + B w)^(-(n-1)/2) dw
//
// and a Gibbs sweep redraws each U_i from the ratio of these weights.

#include <cstdint>
#include <span>
#include <vector>

namespace orclsim {

struct BcpConfig {
  double gamma = 0.2;   // upper limit of the change-probability prior, (0, 1]
  double lambda = 0.2;  // upper limit of the signal-ratio prior, (0, 1]
  std::size_t mcmc_iterations = 550;
  std::size_t burn_in = 50;
  std::uint64_t seed = 0;

  /// Throws ArgumentError when an invariant is violated.
  void validate() const;
};

/// One partition and its sufficient statistics.
struct BcpState {
  std::vector<std::uint8_t> partition;  // U_0 .. U_{n-2}
  double within_ss = 0.0;               // W
  double between_ss = 0.0;              // B
  std::size_t block_count = 1;          // b = 1 + sum U_i
};

struct BcpResult {
  /// probabilities[i]: posterior probability that a block starts at i + 1.
  /// The last entry is always 0.
  std::vector<double> probabilities;
  std::vector<double> posterior_means;
  std::size_t input_length = 0;
};

/// Posterior odds p_i / (1 - p_i) for adding a change point. (W0, B0) are the
/// sums of squares without it (b blocks), (W1, B1) with it (b + 1 blocks).
/// Returns +inf when the odds are unbounded. When W + B w vanishes on the
/// integration range the signal factor is taken as 1.
double block_odds(double w0, double b0, double w1, double b1, std::size_t blocks, std::size_t n,
                  const BcpConfig& config);

/// Sums of squares for an explicit partition of `series`.
BcpState evaluate_partition(std::span<const double> series, std::span<const std::uint8_t> flags);

/// Runs config.mcmc_iterations left-to-right Gibbs sweeps, averaging the last
/// (mcmc_iterations - burn_in). Deterministic for a given seed.
/// Throws ArgumentError for n < 2, non-finite values or an invalid config.
BcpResult bcp_detect(std::span<const double> series, const BcpConfig& config);

/// Indices with probability >= threshold, thinned so that survivors are at
/// least `min_separation` apart; larger probabilities win, ties go to the
/// earlier index. Output is ascending.
std::vector<std::size_t> extract_change_events(const BcpResult& result, double threshold = 0.5,
                                               std::size_t min_separation = 5);

namespace bcp_detail {

/// log int_0^gamma p^(b-1) (1-p)^(n-b) dp.
double log_prior_weight(std::size_t blocks, std::size_t n, double gamma);

/// log int_0^lambda w^((b-1)/2) (W + B w)^(-(n-1)/2) dw; +inf when divergent.
/// Requires W + B > 0.
double log_signal_weight(std::size_t blocks, std::size_t n, double lambda, double w, double b);

}  // namespace bcp_detail

}  // namespace orclsim
