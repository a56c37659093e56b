#include "qls/metrology/statistics.hpp"

#include "qls/errors.hpp"

#include <cmath>

namespace qls::metrology {

double two_sided_p_value(double delta, double sigma) {
  if (!(sigma > 0)) throw DomainError("sigma must be > 0");
  return std::erfc(std::abs(delta) / (std::sqrt(2.0) * sigma));
}

HypothesisTest hypothesis_test(double delta_hz, int n, double sigma_r_hz) {
  if (n < 2 || n % 2 != 0) throw DomainError("hypothesis test needs an even N >= 2");
  if (!(sigma_r_hz > 0)) throw DomainError("sigma_r must be > 0");
  HypothesisTest t;
  t.sigma_hz = std::sqrt(4.0 / n) * sigma_r_hz;
  t.p_value = two_sided_p_value(delta_hz, t.sigma_hz);
  return t;
}

MeanStd mean_std(const std::vector<double>& values) {
  MeanStd m;
  m.n = values.size();
  if (m.n == 0) throw InsufficientDataError("mean of an empty sample");
  for (double v : values) m.mean += v;
  m.mean /= static_cast<double>(m.n);
  if (m.n > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - m.mean) * (v - m.mean);
    m.stddev = std::sqrt(ss / static_cast<double>(m.n - 1));
    m.sem = m.stddev / std::sqrt(static_cast<double>(m.n));
  }
  return m;
}

double binomial_sigma(double p, std::size_t n) {
  if (n == 0) throw InsufficientDataError("binomial sigma needs n > 0");
  return std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

} // namespace qls::metrology
