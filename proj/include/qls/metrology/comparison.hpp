#pragma once

#include <vector>

namespace qls::metrology {

struct TimedValue {
  double t_s = 0.0;
  double hz = 0.0;
};

struct HistogramBin {
  double centre_hz = 0.0;
  int count = 0;
};

struct ComparisonResult {
  double mean_diff_hz = 0.0;
  double mean_diff_sigma_hz = 0.0;
  double centre_hz = 0.0; // Gaussian fit
  double centre_sigma_hz = 0.0;
  double width_hz = 0.0;  // Gaussian standard deviation
  double width_sigma_hz = 0.0;
  std::size_t n_bins = 0;
  std::vector<double> differences_hz; // a - b per overlapping time bin
  std::vector<HistogramBin> histogram;
};

// Averages both series in time bins of `bin_s`, forms a - b for every bin
// holding data from both, and fits a Gaussian to the histogram of those
// differences (histogram bins of `hist_bin_hz`, weights 1/sqrt(count)).
// Fewer than 10 overlapping bins throw InsufficientDataError.
ComparisonResult comparison_histogram(const std::vector<TimedValue>& a, const std::vector<TimedValue>& b, double bin_s,
                                      double hist_bin_hz = 0.5);

} // namespace qls::metrology
