#pragma once

#include <random>

namespace qls::metrology {

struct PhaseCounts {
  long n_excited = 0;
  long n_total = 0;

  double fraction() const { return static_cast<double>(n_excited) / static_cast<double>(n_total); }
};

// Counts at second-pulse phases 0, +pi/2, -pi/2 and pi.
struct RamseyPhaseSet {
  PhaseCounts zero, plus_half, minus_half, pi;
  double t_pulse = 0.0; // s
  double t_wait = 0.0;  // s
  bool finite_pulse_correction = true;

  void validate() const;
};

// T + 4 t_pulse / pi for square pulses, or T when the correction is off.
double effective_wait(double t_pulse, double t_wait, bool finite_pulse_correction = true);

struct DetuningEstimate {
  double detuning_hz = 0.0;
  double detuning_sigma_hz = 0.0;
  double contrast = 0.0;
  double contrast_sigma = 0.0;
};

// C = p(0) - p(pi), delta = asin((p(-pi/2) - p(+pi/2)) / C) / (2 pi T_eff),
// uncertainties by binomial propagation. Positive delta means the laser is
// above resonance.
DetuningEstimate estimate_detuning_contrast(const RamseyPhaseSet& set);

// Binomial draws at the four phases for given true excitation probabilities.
RamseyPhaseSet sample_phase_set(double p_zero, double p_plus_half, double p_minus_half, double p_pi, long shots,
                                double t_pulse, double t_wait, std::mt19937_64& rng);

} // namespace qls::metrology
