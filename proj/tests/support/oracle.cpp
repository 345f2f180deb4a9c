#include "oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <tuple>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/beta.hpp>

namespace oracle {

PartitionStats partition_stats(std::span<const double> x, std::uint64_t mask) {
  const std::size_t n = x.size();
  double grand = 0.0;
  for (double v : x) grand += v;
  grand /= static_cast<double>(n);

  PartitionStats s;
  std::size_t start = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const bool closes = i + 1 == n || ((mask >> i) & 1U);
    if (!closes) continue;
    double mean = 0.0;
    for (std::size_t j = start; j <= i; ++j) mean += x[j];
    const double m = static_cast<double>(i - start + 1);
    mean /= m;
    for (std::size_t j = start; j <= i; ++j) s.within += (x[j] - mean) * (x[j] - mean);
    s.between += m * (mean - grand) * (mean - grand);
    if (i + 1 < n) ++s.blocks;
    start = i + 1;
  }
  return s;
}

double log_prior_integral(std::size_t b, std::size_t n, double gamma) {
  // int_0^gamma p^(a-1) (1-p)^(c-1) dp = B_gamma(a, c) with a = b, c = n - b + 1.
  const double a = static_cast<double>(b);
  const double c = static_cast<double>(n - b + 1);
  return std::log(boost::math::beta(a, c, gamma));
}

double log_signal_integral(std::size_t b, std::size_t n, double lambda, double w, double bss) {
  const double a = 0.5 * static_cast<double>(b - 1);
  const double k = 0.5 * static_cast<double>(n - 1);
  if (w == 0.0) {
    const double e = a + 1.0 - k;
    if (e <= 0.0) return std::numeric_limits<double>::infinity();
    return -k * std::log(bss) + e * std::log(lambda) - std::log(e);
  }
  // (W + B w)^-k = W^-k (1 + (B/W) w)^-k
  const double r = bss / w;
  const auto f = [&](double t) { return std::pow(t, a) * std::pow(1.0 + r * t, -k); };
  double error = 0.0;
  const double value =
      boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, lambda, 12, 1e-12, &error);
  return -k * std::log(w) + std::log(value);
}

std::vector<double> enumerate_posterior(std::span<const double> x, double gamma, double lambda) {
  const std::size_t n = x.size();
  const std::uint64_t count = std::uint64_t{1} << (n - 1);
  std::vector<double> log_weights(count);
  double tss = 0.0;
  {
    const auto all = partition_stats(x, 0);
    tss = all.within;
  }
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    auto s = partition_stats(x, mask);
    if (s.within <= 1e-9 * tss) s.within = 0.0;
    if (s.between <= 1e-9 * tss) s.between = 0.0;
    double lw = log_prior_integral(s.blocks, n, gamma);
    if (!(s.within == 0.0 && s.between == 0.0)) {
      lw += log_signal_integral(s.blocks, n, lambda, s.within, s.between);
    }
    log_weights[mask] = lw;
  }
  // Infinite weights dominate everything finite.
  const double peak = *std::max_element(log_weights.begin(), log_weights.end());
  std::vector<double> p(n, 0.0);
  double total = 0.0;
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    double w = 0.0;
    if (std::isinf(peak)) {
      w = log_weights[mask] == peak ? 1.0 : 0.0;
    } else {
      w = std::exp(log_weights[mask] - peak);
    }
    total += w;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if ((mask >> i) & 1U) p[i] += w;
    }
  }
  for (auto& v : p) v /= total;
  return p;
}

std::vector<std::pair<std::size_t, std::size_t>> best_matching(std::span<const double> a,
                                                               std::span<const double> b,
                                                               double tolerance) {
  using Key = std::tuple<double, double, double>;
  const Key inf{std::numeric_limits<double>::infinity(), 0.0, 0.0};
  const std::size_t slots = std::min(a.size(), b.size());

  std::vector<Key> best_keys(slots, inf);
  std::vector<std::pair<std::size_t, std::size_t>> best_pairs;
  bool have_best = false;
  std::vector<std::pair<std::size_t, std::size_t>> current;
  std::vector<bool> used(b.size(), false);

  const std::function<void(std::size_t)> visit = [&](std::size_t i) {
    if (i == a.size()) {
      std::vector<Key> keys;
      for (const auto& [x, y] : current) {
        keys.emplace_back(std::abs(a[x] - b[y]), std::min(a[x], b[y]), std::max(a[x], b[y]));
      }
      std::sort(keys.begin(), keys.end());
      keys.resize(slots, inf);
      if (!have_best || keys < best_keys) {
        best_keys = keys;
        best_pairs = current;
        have_best = true;
      }
      return;
    }
    visit(i + 1);  // a[i] unmatched
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (used[j] || std::abs(a[i] - b[j]) > tolerance) continue;
      used[j] = true;
      current.emplace_back(i, j);
      visit(i + 1);
      current.pop_back();
      used[j] = false;
    }
  };
  visit(0);
  return best_pairs;
}

}  // namespace oracle
