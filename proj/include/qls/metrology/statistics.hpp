#pragma once

#include <vector>

namespace qls::metrology {

struct HypothesisTest {
  double sigma_hz = 0.0;
  double p_value = 1.0;
};

// Two equal halves of N measurements with single-measurement scatter sigma_r
// differ by delta: sigma = sqrt(4/N) sigma_r, p = 1 - erf(|delta| / (sqrt 2 sigma)).
HypothesisTest hypothesis_test(double delta_hz, int n, double sigma_r_hz);

// Same p-value for an already known sigma.
double two_sided_p_value(double delta, double sigma);

struct MeanStd {
  double mean = 0.0;
  double stddev = 0.0; // sample standard deviation
  double sem = 0.0;    // stddev / sqrt(n)
  std::size_t n = 0;
};

MeanStd mean_std(const std::vector<double>& values);

// sqrt(p (1 - p) / n)
double binomial_sigma(double p, std::size_t n);

} // namespace qls::metrology
