#include "qls/metrology/ramsey_estimator.hpp"

#include "qls/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qls::metrology {

namespace {

void check(const PhaseCounts& c, const char* name) {
  if (c.n_total <= 0) throw InsufficientDataError(std::string("no shots at phase ") + name);
  if (c.n_excited < 0 || c.n_excited > c.n_total)
    throw DomainError(std::string("excited count out of range at phase ") + name);
}

double binomial_variance(const PhaseCounts& c) {
  const double p = c.fraction();
  return p * (1.0 - p) / static_cast<double>(c.n_total);
}

} // namespace

void RamseyPhaseSet::validate() const {
  check(zero, "0");
  check(plus_half, "+pi/2");
  check(minus_half, "-pi/2");
  check(pi, "pi");
  if (!(t_pulse >= 0) || !(t_wait >= 0)) throw DomainError("Ramsey times must be >= 0");
}

double effective_wait(double t_pulse, double t_wait, bool finite_pulse_correction) {
  return finite_pulse_correction ? t_wait + 4.0 * t_pulse / std::numbers::pi : t_wait;
}

DetuningEstimate estimate_detuning_contrast(const RamseyPhaseSet& set) {
  set.validate();
  const double t_eff = effective_wait(set.t_pulse, set.t_wait, set.finite_pulse_correction);
  if (!(t_eff > 0)) throw DomainError("effective Ramsey time must be > 0");

  DetuningEstimate e;
  e.contrast = set.zero.fraction() - set.pi.fraction();
  const double var_c = binomial_variance(set.zero) + binomial_variance(set.pi);
  e.contrast_sigma = std::sqrt(var_c);
  if (!(e.contrast > 0)) throw DegenerateError("Ramsey contrast is not positive");

  const double d = set.minus_half.fraction() - set.plus_half.fraction();
  const double var_d = binomial_variance(set.minus_half) + binomial_variance(set.plus_half);
  const double x = d / e.contrast;
  if (std::abs(x) > 1.0) throw OutOfRangeError("fringe inconsistency: |(p(-pi/2) - p(+pi/2)) / C| > 1");

  const double scale = 2.0 * std::numbers::pi * t_eff;
  e.detuning_hz = std::asin(x) / scale;
  // d theta^2 = (sigma_d^2 + x^2 sigma_C^2) / (C^2 (1 - x^2))
  const double one_minus = std::max(1.0 - x * x, 1e-300);
  e.detuning_sigma_hz = std::sqrt((var_d + x * x * var_c) / (e.contrast * e.contrast * one_minus)) / scale;
  return e;
}

RamseyPhaseSet sample_phase_set(double p_zero, double p_plus_half, double p_minus_half, double p_pi, long shots,
                                double t_pulse, double t_wait, std::mt19937_64& rng) {
  auto draw = [&](double p) {
    std::binomial_distribution<long> b(shots, std::min(1.0, std::max(0.0, p)));
    return PhaseCounts{b(rng), shots};
  };
  RamseyPhaseSet s;
  s.zero = draw(p_zero);
  s.plus_half = draw(p_plus_half);
  s.minus_half = draw(p_minus_half);
  s.pi = draw(p_pi);
  s.t_pulse = t_pulse;
  s.t_wait = t_wait;
  return s;
}

} // namespace qls::metrology
