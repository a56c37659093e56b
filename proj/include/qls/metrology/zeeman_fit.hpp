#pragma once

#include "qls/atomic/level_scheme.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <vector>

namespace qls::metrology {

// One of the frequency measurements of a campaign. Al+ frequencies are
// offsets from a named anchor so that doubles keep sub-Hz resolution.
struct MeasurementSet {
  std::string set_id;
  int s_pm = +1;                 // +1 for m = +5/2 -> +7/2, -1 for the mirror transition
  double ramsey_t = 200e-6;      // s
  double al_detuning_hz = 0.0;   // measured Al+ frequency minus anchor
  double al_sigma_hz = 0.0;
  double ca_plus_hz = 0.0;       // Ca+ pair detunings, optional
  double ca_minus_hz = 0.0;
  double ca_sigma_hz = 0.0;
  double b_gauss = 0.0;
  double b_sigma_gauss = 0.0;
  std::string comb_lock_mode = "729-locked"; // or "quartz"
  std::string timestamp;

  void validate() const;
};

struct FieldAndDrift {
  double b_gauss = 0.0;
  double b_sigma_gauss = 0.0;
  double drift_hz = 0.0;
  double drift_sigma_hz = 0.0;
};

// drift = (f+ + f-)/2, B = (f+ - f-) / (2 (mu_B/h)(3/2 g_D - 1/2 g_S)).
FieldAndDrift field_and_drift_from_pair(double f_plus_hz, double f_minus_hz, double sigma_hz,
                                        const atomic::LevelScheme& calcium);

struct Residual {
  std::string set_id;
  int s_pm = 0;
  double b_gauss = 0.0;
  double residual_hz = 0.0;
  double sigma_hz = 0.0;
};

struct ZeemanFit {
  std::int64_t anchor_mhz = 0; // absolute anchor, mHz
  double f0_offset_hz = 0.0;   // zero-field frequency minus anchor
  double f0_sigma_hz = 0.0;
  double slope_hz_per_gauss = 0.0;
  double slope_sigma = 0.0;
  Eigen::Matrix2d covariance = Eigen::Matrix2d::Zero();
  double chi2 = 0.0;
  int dof = 0;
  std::vector<Residual> residuals;

  // anchor + f0 offset rounded to the nearest mHz.
  std::int64_t f0_absolute_mhz() const;
};

// Weighted least squares of al_detuning against x = s_pm B. The field
// uncertainty is folded into the point weights through the slope of a first
// unweighted-by-field pass.
ZeemanFit fit_zeeman_line(const std::vector<MeasurementSet>& sets, std::int64_t anchor_mhz);

struct GFactor {
  double g = 0.0;
  double sigma = 0.0;
};

GFactor g_factor_from_fit(const ZeemanFit& fit, double g_ground);

} // namespace qls::metrology
