#pragma once

#include "qls/trap/crystal.hpp"

namespace qls::trap {

struct MassInference {
  double mass_u;
  int nearest_integer_u;
  double sigma_u;
  // More than one integer mass lies within two sigma of the root.
  bool ambiguous;
};

// Companion mass from a measured axial in-phase frequency ("tickle"
// resonance) by bracketed root finding on the closed-form mode formula over
// [1, 300] u. `frequency_sigma_hz` is the resonance uncertainty used for the
// ambiguity flag.
MassInference infer_companion_mass(double measured_in_phase_hz, const TrapConfig& trap, double known_mass_u,
                                   double frequency_sigma_hz = 500.0);

} // namespace qls::trap
