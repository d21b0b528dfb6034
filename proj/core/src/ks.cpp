#include "opbw/ks.hpp"

#include <algorithm>
#include <cmath>

#include "opbw/errors.hpp"

namespace opbw {

double normal_cdf(double x) { return 0.5 * std::erfc(-x * M_SQRT1_2); }

double ks_distance_vs_normal(std::vector<double> sample) {
  if (sample.empty()) throw ConfigError("ks: empty sample");
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (size_t k = 0; k < sample.size(); ++k) {
    const double cdf = normal_cdf(sample[k]);
    const double hi = (static_cast<double>(k) + 1.0) / n - cdf;
    const double lo = cdf - static_cast<double>(k) / n;
    d = std::max({d, hi, lo});
  }
  return d;
}

double kolmogorov_tail(double lambda) {
  if (lambda <= 0.0) return 1.0;
  double q = 0.0;
  double sign = 1.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    q += sign * term;
    sign = -sign;
    if (term < 1e-16) break;
  }
  return std::clamp(2.0 * q, 0.0, 1.0);
}

namespace {

double kolmogorov_critical_lambda(double alpha) {
  if (alpha <= 0.0 || alpha >= 1.0) throw ConfigError("ks: bad alpha");
  double lo = 0.1, hi = 4.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (kolmogorov_tail(mid) > alpha) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double ks_one_sample_critical(double alpha, uint64_t n) {
  return kolmogorov_critical_lambda(alpha) /
         std::sqrt(static_cast<double>(n));
}

double ks_two_sample_distance(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw ConfigError("ks: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double m = static_cast<double>(a.size());
  const double n = static_cast<double>(b.size());
  size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / m -
                             static_cast<double>(j) / n));
  }
  return d;
}

double ks_two_sample_critical(double alpha, uint64_t m, uint64_t n) {
  const double scale = std::sqrt((static_cast<double>(m + n)) /
                                 (static_cast<double>(m) *
                                  static_cast<double>(n)));
  return kolmogorov_critical_lambda(alpha) * scale;
}

}  // namespace opbw
