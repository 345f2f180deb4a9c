#pragma once

// Reference computations that share no code with the library: exhaustive
// partition enumeration for change-point posteriors and a brute-force
// optimal pairing for event matching.

#include <cstdint>
#include <span>
#include <vector>

namespace oracle {

struct PartitionStats {
  double within = 0.0;
  double between = 0.0;
  std::size_t blocks = 1;
};

/// Two-pass sums of squares for the partition encoded in `mask`
/// (bit i set: a block starts at i + 1).
PartitionStats partition_stats(std::span<const double> x, std::uint64_t mask);

/// log of int_0^gamma p^(b-1) (1-p)^(n-b) dp via the incomplete beta function.
double log_prior_integral(std::size_t b, std::size_t n, double gamma);

/// log of int_0^lambda w^((b-1)/2) (W + B w)^(-(n-1)/2) dw by adaptive
/// Gauss-Kronrod quadrature in the original variable. Returns +inf when divergent.
double log_signal_integral(std::size_t b, std::size_t n, double lambda, double w, double bss);

/// Posterior change probabilities by enumerating all 2^(n-1) partitions.
/// Partitions whose data are identical (W = B = 0) take a signal factor of 1.
std::vector<double> enumerate_posterior(std::span<const double> x, double gamma, double lambda);

/// Among all matchings with |gap| <= tolerance, the one whose keys
/// (|gap|, earlier, later), sorted ascending and padded with +inf, form the
/// lexicographically smallest vector. Returns pairs (i, j) sorted by i.
std::vector<std::pair<std::size_t, std::size_t>> best_matching(std::span<const double> a,
                                                               std::span<const double> b,
                                                               double tolerance);

}  // namespace oracle
