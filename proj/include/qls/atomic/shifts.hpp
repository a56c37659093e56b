#pragma once

#include "qls/atomic/level_scheme.hpp"

namespace qls::atomic {

// One Zeeman sublevel taking part in a transition.
struct ZeemanSublevel {
  double g_factor;
  HalfInt angular_momentum;
  HalfInt m;

  static ZeemanSublevel of(const Level& level, HalfInt m);
};

// f0 + (mu_B/h) (g_u m_u - g_l m_l) B. Frequencies in Hz, field in gauss.
double zeeman_shifted_frequency(double f0_hz, const ZeemanSublevel& upper, const ZeemanSublevel& lower,
                                double field_gauss);

// Linear Zeeman coefficient (mu_B/h)(g_u m_u - g_l m_l) in Hz/G.
double zeeman_coefficient(const ZeemanSublevel& upper, const ZeemanSublevel& lower);

// -zeta/2 (B/B_fs)^2 in Hz.
double quadratic_zeeman_shift(const QuadraticZeemanParams& params, double field_gauss);
// d^2 nu / dB^2 = -zeta / B_fs^2 in Hz/G^2.
double quadratic_zeeman_curvature(const QuadraticZeemanParams& params);

// Electric quadrupole shift of sublevel m of `level` in an axial field-gradient
// d^2 Phi/dz^2 (V/m^2). Depends on m only through m^2.
double quadrupole_shift(const Level& level, HalfInt m, double field_gradient_v_per_m2);

// Excited-state Landé factor from the stretched-transition Zeeman slope
// (mu_B/h)(7/2 g - 5/2 g_ground), and its inverse.
double g_factor_from_splitting(double slope_hz_per_gauss, double g_ground);
double splitting_from_g(double g_upper, double g_ground);

// Differential Zeeman coefficient of the Ca+ S1/2,m=+-1/2 -> D5/2,m=+-3/2 pair:
// f(+) - f(-) = 2 (mu_B/h)(3/2 g_D - 1/2 g_S) B.
double ca_pair_splitting_per_gauss(const LevelScheme& calcium);

// Fractional g-factor error caused by an ac-Zeeman shift that mimics an
// additional dc field. Reported as a bound, never applied as a correction.
double ac_zeeman_g_fractional_bound(double mimic_field_gauss, double bias_field_gauss);

} // namespace qls::atomic
