#pragma once

// Adaptive 7/15-point Gauss-Kronrod quadrature, plus a log-space driver for
// integrands exp(g(s)) with concave g. The log-space form keeps the
// change-point likelihood integrals finite when their exponents grow with
// series length.

#include <array>
#include <cmath>
#include <limits>

namespace orclsim::quadrature {

struct Options {
  double abs_tol = 1e-9;
  double rel_tol = 1e-12;
  int max_depth = 48;
};

namespace detail {

inline constexpr std::array<double, 8> kKronrodNodes{
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

inline constexpr std::array<double, 8> kKronrodWeights{
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

// Gauss weights for the odd Kronrod nodes (1, 3, 5, 7).
inline constexpr std::array<double, 4> kGaussWeights{
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double kronrod;
  double error;
};

template <class F>
Panel gauss_kronrod_15(F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kKronrodWeights[7];
  double gauss = fc * kGaussWeights[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kKronrodNodes[j];
    const double sum = f(center - dx) + f(center + dx);
    kronrod += kKronrodWeights[j] * sum;
    if (j % 2 == 1) gauss += kGaussWeights[j / 2] * sum;
  }
  return {kronrod * half, std::abs((kronrod - gauss) * half)};
}

template <class F>
double adaptive(F& f, double a, double b, double tol, const Options& opt, int depth) {
  const Panel p = gauss_kronrod_15(f, a, b);
  if (depth >= opt.max_depth || p.error <= std::max(tol, opt.rel_tol * std::abs(p.kronrod))) {
    return p.kronrod;
  }
  const double mid = 0.5 * (a + b);
  return adaptive(f, a, mid, 0.5 * tol, opt, depth + 1) +
         adaptive(f, mid, b, 0.5 * tol, opt, depth + 1);
}

}  // namespace detail

/// Integral of f over [a, b] to max(abs_tol, rel_tol * |I|).
template <class F>
double integrate(F f, double a, double b, const Options& opt = {}) {
  if (a == b) return 0.0;
  return detail::adaptive(f, a, b, opt.abs_tol, opt, 0);
}

/// log of the integral of exp(g(s)) over (-inf, upper], for g concave with
/// maximiser `mode` (already clamped to <= upper). Tails where g falls more
/// than `tail_drop` below its peak are truncated. The tolerance applies to
/// the integrand rescaled to a unit peak.
template <class G>
double log_integrate_concave(G g, double mode, double upper, const Options& opt = {},
                             double tail_drop = 60.0) {
  const double peak = g(mode);
  if (!std::isfinite(peak)) return peak;
  const auto scaled = [&](double s) { return std::exp(g(s) - peak); };

  double lower = mode - 1.0;
  for (double step = 1.0; g(lower) > peak - tail_drop && step < 1e6;) {
    step *= 2.0;
    lower = mode - step;
  }
  double right = upper;
  if (mode < upper) {
    for (double step = 1.0;; step *= 2.0) {
      const double probe = mode + step;
      if (probe >= upper) break;
      if (g(probe) <= peak - tail_drop) {
        right = probe;
        break;
      }
    }
  }
  const double mass = integrate(scaled, lower, mode, opt) + integrate(scaled, mode, right, opt);
  return peak + std::log(mass);
}

/// log(exp(a) + exp(b)) without overflow.
inline double log_add_exp(double a, double b) {
  if (a == -std::numeric_limits<double>::infinity()) return b;
  if (b == -std::numeric_limits<double>::infinity()) return a;
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

}  // namespace orclsim::quadrature
