#include "orclsim/bcp.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <random>
#include <unordered_map>

#include "orclsim/errors.hpp"
#include "orclsim/quadrature.hpp"
#include "orclsim/random.hpp"

namespace orclsim {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Sums of squares below this fraction of the total are rounding noise from
// the prefix sums and are treated as exact zeros.
constexpr double kRelativeZero = 1e-9;

const quadrature::Options kQuadrature{1e-9, 1e-12, 48};

/// log of the signal factor's contribution for one configuration, or the
/// marker that W + B w vanishes identically.
struct SignalTerm {
  double log_weight = 0.0;  // may be +inf
  bool degenerate = false;
};

/// log odds = prior ratio + signal ratio, with these conventions:
/// a degenerate side sets the signal ratio to 1; when both sides diverge
/// (W = 0 with and without the change) the ratio is the W -> 0 limit, 0.
double combine_log_odds(double log_prior_ratio, const SignalTerm& with_change,
                        const SignalTerm& without_change) {
  if (with_change.degenerate || without_change.degenerate) return log_prior_ratio;
  const bool num_inf = with_change.log_weight == kInf;
  const bool den_inf = without_change.log_weight == kInf;
  if (num_inf && den_inf) return -kInf;
  if (num_inf) return kInf;
  if (den_inf) return -kInf;
  return log_prior_ratio + (with_change.log_weight - without_change.log_weight);
}

SignalTerm signal_term(std::size_t blocks, std::size_t n, double lambda, double w, double b) {
  if (w == 0.0 && b == 0.0) return {0.0, true};
  return {bcp_detail::log_signal_weight(blocks, n, lambda, w, b), false};
}

double odds_from_log(double log_odds) {
  if (log_odds == kInf) return kInf;
  return std::exp(log_odds);
}

double probability_from_log_odds(double log_odds) {
  if (log_odds == kInf) return 1.0;
  if (log_odds == -kInf) return 0.0;
  if (log_odds >= 0.0) return 1.0 / (1.0 + std::exp(-log_odds));
  const double e = std::exp(log_odds);
  return e / (1.0 + e);
}

struct CacheKey {
  std::uint64_t blocks;
  std::uint64_t w_bits;
  std::uint64_t b_bits;
  bool operator==(const CacheKey&) const = default;
};

struct CacheKeyHash {
  std::size_t operator()(const CacheKey& k) const noexcept {
    std::uint64_t h = k.blocks * 0x9E3779B97F4A7C15ULL;
    h ^= k.w_bits + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
    h ^= k.b_bits + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h);
  }
};

/// Gibbs sampler over partition flags, with memoised likelihood pieces.
class GibbsSampler {
 public:
  GibbsSampler(std::span<const double> series, const BcpConfig& config)
      : n_(series.size()), config_(config), origin_(series[0]) {
    p1_.assign(n_ + 1, 0.0);
    p2_.assign(n_ + 1, 0.0);
    for (std::size_t i = 0; i < n_; ++i) {
      // Centre on the first value so constant runs give exact zeros.
      const double y = series[i] - origin_;
      p1_[i + 1] = p1_[i] + y;
      p2_[i + 1] = p2_[i] + y * y;
    }
    total_ss_ = std::max(0.0, p2_[n_] - p1_[n_] * p1_[n_] / static_cast<double>(n_));
    zero_floor_ = kRelativeZero * total_ss_;
    log_prior_.assign(n_ + 2, std::numeric_limits<double>::quiet_NaN());
  }

  BcpResult run() {
    std::mt19937_64 rng = make_engine(config_.seed, 0xBC9);
    std::vector<std::size_t> changes;  // sorted positions with U_i = 1
    std::vector<std::uint32_t> counts(n_, 0);
    std::vector<double> mean_sums(n_, 0.0);
    const std::size_t kept = config_.mcmc_iterations - config_.burn_in;

    for (std::size_t sweep = 0; sweep < config_.mcmc_iterations; ++sweep) {
      for (std::size_t i = 0; i + 1 < n_; ++i) {
        const auto pos = std::lower_bound(changes.begin(), changes.end(), i);
        const bool present = pos != changes.end() && *pos == i;
        const std::size_t blocks_without = 1 + changes.size() - (present ? 1 : 0);

        const Sums without = sums(changes, i, false);
        const Sums with = sums(changes, i, true);
        const double log_odds = combine_log_odds(
            log_prior(blocks_without + 1) - log_prior(blocks_without),
            signal(blocks_without + 1, with), signal(blocks_without, without));
        const double p = probability_from_log_odds(log_odds);
        const bool flag = unit_uniform(rng) < p;

        if (flag && !present) changes.insert(pos, i);
        if (!flag && present) changes.erase(pos);
      }
      if (sweep >= config_.burn_in) accumulate(changes, counts, mean_sums);
    }

    BcpResult result;
    result.input_length = n_;
    result.probabilities.assign(n_, 0.0);
    result.posterior_means.assign(n_, origin_);
    const double denom = static_cast<double>(kept);
    for (std::size_t i = 0; i < n_; ++i) {
      if (i + 1 < n_) result.probabilities[i] = counts[i] / denom;
      result.posterior_means[i] = origin_ + mean_sums[i] / denom;
    }
    return result;
  }

 private:
  struct Sums {
    double within;
    double between;
  };

  // Sums of squares for the partition `changes` with flag i forced to `with_i`.
  // Blocks are visited left to right so equal partitions give equal bits.
  Sums sums(const std::vector<std::size_t>& changes, std::size_t i, bool with_i) const {
    double within = 0.0;
    double quad = 0.0;
    std::size_t start = 0;
    const auto close_block = [&](std::size_t end) {  // inclusive
      const double m = static_cast<double>(end - start + 1);
      const double s1 = p1_[end + 1] - p1_[start];
      const double s2 = p2_[end + 1] - p2_[start];
      const double q = s1 * s1 / m;
      within += std::max(0.0, s2 - q);
      quad += q;
      start = end + 1;
    };
    bool inserted = !with_i;
    for (const std::size_t c : changes) {
      if (!inserted && i < c) {
        close_block(i);
        inserted = true;
      }
      if (c == i) {
        if (with_i) {
          close_block(c);
          inserted = true;
        }
        continue;
      }
      close_block(c);
    }
    if (!inserted) close_block(i);
    close_block(n_ - 1);

    double between = std::max(0.0, quad - p1_[n_] * p1_[n_] / static_cast<double>(n_));
    if (within <= zero_floor_) within = 0.0;
    if (between <= zero_floor_) between = 0.0;
    return {within, between};
  }

  double log_prior(std::size_t blocks) {
    double& slot = log_prior_[blocks];
    if (std::isnan(slot)) slot = bcp_detail::log_prior_weight(blocks, n_, config_.gamma);
    return slot;
  }

  SignalTerm signal(std::size_t blocks, const Sums& s) {
    if (s.within == 0.0 && s.between == 0.0) return {0.0, true};
    const CacheKey key{blocks, std::bit_cast<std::uint64_t>(s.within),
                       std::bit_cast<std::uint64_t>(s.between)};
    if (const auto it = cache_.find(key); it != cache_.end()) return {it->second, false};
    if (cache_.size() > kMaxCacheEntries) cache_.clear();
    const double value =
        bcp_detail::log_signal_weight(blocks, n_, config_.lambda, s.within, s.between);
    cache_.emplace(key, value);
    return {value, false};
  }

  void accumulate(const std::vector<std::size_t>& changes, std::vector<std::uint32_t>& counts,
                  std::vector<double>& mean_sums) const {
    std::size_t start = 0;
    const auto add_block = [&](std::size_t end) {
      const double mean = (p1_[end + 1] - p1_[start]) / static_cast<double>(end - start + 1);
      for (std::size_t j = start; j <= end; ++j) mean_sums[j] += mean;
      start = end + 1;
    };
    for (const std::size_t c : changes) {
      ++counts[c];
      add_block(c);
    }
    add_block(n_ - 1);
  }

  static constexpr std::size_t kMaxCacheEntries = 1 << 21;

  std::size_t n_;
  BcpConfig config_;
  double origin_;
  std::vector<double> p1_;
  std::vector<double> p2_;
  double total_ss_ = 0.0;
  double zero_floor_ = 0.0;
  std::vector<double> log_prior_;
  std::unordered_map<CacheKey, double, CacheKeyHash> cache_;
};

}  // namespace

void BcpConfig::validate() const {
  if (!(gamma > 0.0 && gamma <= 1.0)) throw ArgumentError("BcpConfig: gamma must be in (0, 1]");
  if (!(lambda > 0.0 && lambda <= 1.0)) {
    throw ArgumentError("BcpConfig: lambda must be in (0, 1]");
  }
  if (!(mcmc_iterations > burn_in)) {
    throw ArgumentError("BcpConfig: mcmc_iterations must exceed burn_in");
  }
}

namespace bcp_detail {

double log_prior_weight(std::size_t blocks, std::size_t n, double gamma) {
  // Substituting p = e^s: integrand exp((b)s + (n-b) log(1 - e^s)).
  const double alpha1 = static_cast<double>(blocks);  // (b - 1) + 1
  const double beta = static_cast<double>(n - blocks);
  const double upper = std::log(gamma);
  const auto g = [&](double s) {
    if (beta == 0.0) return alpha1 * s;
    return alpha1 * s + beta * std::log1p(-std::exp(s));
  };
  const double mode = std::min(upper, std::log(alpha1 / (alpha1 + beta)));
  return quadrature::log_integrate_concave(g, mode, upper, kQuadrature);
}

double log_signal_weight(std::size_t blocks, std::size_t n, double lambda, double w, double b) {
  const double a1 = 0.5 * static_cast<double>(blocks + 1);  // (b-1)/2 + 1
  const double k = 0.5 * static_cast<double>(n - 1);
  const double upper = std::log(lambda);
  if (w == 0.0) {
    // integrand B^-k w^(a1 - 1 - k): finite only when a1 - k > 0.
    const double e = a1 - k;
    if (e <= 0.0) return kInf;
    return -k * std::log(b) + e * upper - std::log(e);
  }
  const double log_w = std::log(w);
  if (b == 0.0) {
    const auto g = [&](double s) { return a1 * s - k * log_w; };
    return quadrature::log_integrate_concave(g, upper, upper, kQuadrature);
  }
  const double log_b = std::log(b);
  // Substituting w = e^s: integrand exp(a1 s - k log(W + B e^s)), concave in s.
  const auto g = [&](double s) { return a1 * s - k * quadrature::log_add_exp(log_w, log_b + s); };
  const double t = a1 / k;
  const double mode = t < 1.0 ? std::min(upper, log_w - log_b + std::log(t / (1.0 - t))) : upper;
  return quadrature::log_integrate_concave(g, mode, upper, kQuadrature);
}

}  // namespace bcp_detail

double block_odds(double w0, double b0, double w1, double b1, std::size_t blocks, std::size_t n,
                  const BcpConfig& config) {
  config.validate();
  if (n < 2) throw ArgumentError("block_odds: n must be at least 2");
  if (blocks < 1 || blocks >= n) throw ArgumentError("block_odds: need 1 <= b < n");
  if (!(w0 >= 0.0 && b0 >= 0.0 && w1 >= 0.0 && b1 >= 0.0)) {
    throw ArgumentError("block_odds: sums of squares must be non-negative");
  }
  const double prior = bcp_detail::log_prior_weight(blocks + 1, n, config.gamma) -
                       bcp_detail::log_prior_weight(blocks, n, config.gamma);
  return odds_from_log(combine_log_odds(prior, signal_term(blocks + 1, n, config.lambda, w1, b1),
                                        signal_term(blocks, n, config.lambda, w0, b0)));
}

BcpState evaluate_partition(std::span<const double> series,
                            std::span<const std::uint8_t> flags) {
  if (series.empty() || flags.size() + 1 != series.size()) {
    throw ArgumentError("evaluate_partition: need one flag per gap between values");
  }
  BcpState state;
  state.partition.assign(flags.begin(), flags.end());
  double total = 0.0;
  for (const double x : series) total += x;
  const double grand_mean = total / static_cast<double>(series.size());
  std::size_t start = 0;
  for (std::size_t end = 0; end < series.size(); ++end) {
    if (end + 1 < series.size() && !flags[end]) continue;
    double s = 0.0;
    for (std::size_t j = start; j <= end; ++j) s += series[j];
    const double m = static_cast<double>(end - start + 1);
    const double mean = s / m;
    for (std::size_t j = start; j <= end; ++j) state.within_ss += (series[j] - mean) * (series[j] - mean);
    state.between_ss += m * (mean - grand_mean) * (mean - grand_mean);
    if (end + 1 < series.size()) ++state.block_count;
    start = end + 1;
  }
  return state;
}

BcpResult bcp_detect(std::span<const double> series, const BcpConfig& config) {
  config.validate();
  if (series.size() < 2) throw ArgumentError("bcp_detect: series needs at least 2 values");
  for (const double x : series) {
    if (!std::isfinite(x)) throw ArgumentError("bcp_detect: series contains non-finite values");
  }
  return GibbsSampler(series, config).run();
}

std::vector<std::size_t> extract_change_events(const BcpResult& result, double threshold,
                                               std::size_t min_separation) {
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw ArgumentError("extract_change_events: threshold must be in (0, 1)");
  }
  if (min_separation < 1) throw ArgumentError("extract_change_events: min_separation >= 1");
  std::vector<std::size_t> candidates;
  for (std::size_t i = 0; i < result.probabilities.size(); ++i) {
    if (result.probabilities[i] >= threshold) candidates.push_back(i);
  }
  std::stable_sort(candidates.begin(), candidates.end(), [&](std::size_t a, std::size_t b) {
    return result.probabilities[a] > result.probabilities[b];
  });
  std::vector<std::size_t> kept;
  for (const std::size_t c : candidates) {
    const bool clear = std::none_of(kept.begin(), kept.end(), [&](std::size_t k) {
      return (c > k ? c - k : k - c) < min_separation;
    });
    if (clear) kept.push_back(c);
  }
  std::sort(kept.begin(), kept.end());
  return kept;
}

}  // namespace orclsim
