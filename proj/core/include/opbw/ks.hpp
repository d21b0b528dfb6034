#ifndef OPBW_KS_HPP
#define OPBW_KS_HPP

#include <cstdint>
#include <vector>

namespace opbw {

double normal_cdf(double x);

/// One-sample Kolmogorov-Smirnov distance sup |F_n - Phi| against the
/// standard normal. The sample is copied and sorted.
double ks_distance_vs_normal(std::vector<double> sample);

/// Tail of the Kolmogorov distribution, Q(lambda) = 2 sum (-1)^{k-1}
/// exp(-2 k^2 lambda^2). P(sqrt(n) D_n > lambda) -> Q(lambda).
double kolmogorov_tail(double lambda);

/// One-sample critical value at level alpha for n observations
/// (asymptotic: lambda_alpha / sqrt(n)).
double ks_one_sample_critical(double alpha, uint64_t n);

/// Two-sample Kolmogorov-Smirnov distance. Samples are copied and sorted.
double ks_two_sample_distance(std::vector<double> a, std::vector<double> b);

/// Two-sample critical value at level alpha.
double ks_two_sample_critical(double alpha, uint64_t m, uint64_t n);

}  // namespace opbw

#endif  // OPBW_KS_HPP
