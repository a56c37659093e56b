#include "qls/metrology/comparison.hpp"

#include "qls/errors.hpp"
#include "qls/metrology/curve_fit.hpp"
#include "qls/metrology/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace qls::metrology {

namespace {

std::map<long long, double> bin_means(const std::vector<TimedValue>& s, double bin_s) {
  std::map<long long, std::pair<double, int>> acc;
  for (const auto& v : s) {
    if (!std::isfinite(v.t_s) || !std::isfinite(v.hz)) throw DomainError("comparison series contains non-finite values");
    auto& slot = acc[static_cast<long long>(std::floor(v.t_s / bin_s))];
    slot.first += v.hz;
    ++slot.second;
  }
  std::map<long long, double> out;
  for (const auto& [k, v] : acc) out[k] = v.first / v.second;
  return out;
}

} // namespace

ComparisonResult comparison_histogram(const std::vector<TimedValue>& a, const std::vector<TimedValue>& b, double bin_s,
                                      double hist_bin_hz) {
  if (!(bin_s > 0) || !(hist_bin_hz > 0)) throw DomainError("bin sizes must be > 0");
  const auto ma = bin_means(a, bin_s);
  const auto mb = bin_means(b, bin_s);

  ComparisonResult r;
  for (const auto& [k, va] : ma) {
    const auto it = mb.find(k);
    if (it != mb.end()) r.differences_hz.push_back(va - it->second);
  }
  r.n_bins = r.differences_hz.size();
  if (r.n_bins < 10)
    throw InsufficientDataError("only " + std::to_string(r.n_bins) + " overlapping time bins (need >= 10)");

  const auto ms = mean_std(r.differences_hz);
  r.mean_diff_hz = ms.mean;
  r.mean_diff_sigma_hz = ms.sem;

  const auto [lo_it, hi_it] = std::minmax_element(r.differences_hz.begin(), r.differences_hz.end());
  // Histogram grid aligned to multiples of hist_bin_hz, padded by two empty
  // bins on each side so the tails constrain the fit.
  const long long first = static_cast<long long>(std::floor(*lo_it / hist_bin_hz)) - 2;
  const long long last = static_cast<long long>(std::floor(*hi_it / hist_bin_hz)) + 2;
  r.histogram.resize(static_cast<std::size_t>(last - first + 1));
  for (long long k = first; k <= last; ++k) r.histogram[k - first].centre_hz = (k + 0.5) * hist_bin_hz;
  for (double d : r.differences_hz) ++r.histogram[static_cast<long long>(std::floor(d / hist_bin_hz)) - first].count;

  if (ms.stddev <= 0.0) {
    // Identical series: everything in one bin, width limited by the binning.
    r.centre_hz = ms.mean;
    r.width_hz = 0.0;
    return r;
  }

  std::vector<double> x, y, s;
  for (const auto& h : r.histogram) {
    x.push_back(h.centre_hz);
    y.push_back(h.count);
    s.push_back(std::sqrt(std::max(h.count, 1)));
  }
  if (x.size() < 4) {
    r.centre_hz = ms.mean;
    r.width_hz = ms.stddev;
    return r;
  }
  const auto fit = fit_gaussian(x, y, s);
  r.centre_hz = fit.params[1];
  r.centre_sigma_hz = fit.sigmas[1];
  r.width_hz = fit.params[2];
  r.width_sigma_hz = fit.sigmas[2];
  return r;
}

} // namespace qls::metrology
