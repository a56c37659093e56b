#include "qls/atomic/shifts.hpp"

#include "qls/errors.hpp"

#include <cmath>

namespace qls::atomic {

ZeemanSublevel ZeemanSublevel::of(const Level& level, HalfInt m) {
  require_valid_projection(level.angular_momentum, m);
  return {level.g_factor, level.angular_momentum, m};
}

double zeeman_coefficient(const ZeemanSublevel& upper, const ZeemanSublevel& lower) {
  require_valid_projection(upper.angular_momentum, upper.m);
  require_valid_projection(lower.angular_momentum, lower.m);
  return constants().bohr_magneton_over_h * (upper.g_factor * upper.m.value() - lower.g_factor * lower.m.value());
}

double zeeman_shifted_frequency(double f0_hz, const ZeemanSublevel& upper, const ZeemanSublevel& lower,
                                double field_gauss) {
  if (!(field_gauss >= 0)) throw DomainError("magnetic field must be >= 0");
  return f0_hz + zeeman_coefficient(upper, lower) * field_gauss;
}

double quadratic_zeeman_shift(const QuadraticZeemanParams& params, double field_gauss) {
  if (!(field_gauss >= 0)) throw DomainError("magnetic field must be >= 0");
  const double x = field_gauss / params.crossover_field_gauss();
  return -0.5 * params.coupling_constant_zeta_hz * x * x;
}

double quadratic_zeeman_curvature(const QuadraticZeemanParams& params) {
  const double bfs = params.crossover_field_gauss();
  return -params.coupling_constant_zeta_hz / (bfs * bfs);
}

double quadrupole_shift(const Level& level, HalfInt m, double field_gradient_v_per_m2) {
  if (!level.quadrupole) throw ConfigError(level.label + ": no quadrupole parameter configured");
  if (!std::isfinite(field_gradient_v_per_m2)) throw DomainError("field gradient must be finite");
  require_valid_projection(level.angular_momentum, m);

  const auto& c = constants();
  const double unit_hz = c.elementary_charge * c.bohr_radius * c.bohr_radius / c.planck_h;
  const double j = level.angular_momentum.value();
  const double mm = m.value() * m.value();
  const double q = level.quadrupole->value_e_a0_sq;

  switch (level.quadrupole->form) {
  case QuadrupoleForm::reduced_matrix_element: {
    // Stretched-state shift, scaled to other m by the rank-2 tensor factor.
    const double stretched = q * unit_hz * field_gradient_v_per_m2 / (2.0 * std::sqrt(30.0));
    return stretched * (3 * mm - j * (j + 1)) / (j * (2 * j - 1));
  }
  case QuadrupoleForm::quadrupole_moment:
    // 1/4 A Theta (J(J+1) - 3m^2)/(J(2J-1)) (3cos^2(beta) - 1) with the
    // quantisation axis along the trap axis (beta = 0).
    return 0.25 * field_gradient_v_per_m2 * q * unit_hz * (j * (j + 1) - 3 * mm) / (j * (2 * j - 1)) * 2.0;
  }
  return 0.0;
}

double g_factor_from_splitting(double slope_hz_per_gauss, double g_ground) {
  if (!(slope_hz_per_gauss > 0)) throw DomainError("Zeeman slope must be > 0");
  return (2.0 / 7.0) * (slope_hz_per_gauss / constants().bohr_magneton_over_h + 2.5 * g_ground);
}

double splitting_from_g(double g_upper, double g_ground) {
  return constants().bohr_magneton_over_h * (3.5 * g_upper - 2.5 * g_ground);
}

double ca_pair_splitting_per_gauss(const LevelScheme& calcium) {
  const double g_s = calcium.level(labels::ca_s12).g_factor;
  const double g_d = calcium.level(labels::ca_d52).g_factor;
  return 2.0 * constants().bohr_magneton_over_h * (1.5 * g_d - 0.5 * g_s);
}

double ac_zeeman_g_fractional_bound(double mimic_field_gauss, double bias_field_gauss) {
  if (!(bias_field_gauss > 0)) throw DomainError("bias field must be > 0");
  return std::abs(mimic_field_gauss) / bias_field_gauss;
}

} // namespace qls::atomic
