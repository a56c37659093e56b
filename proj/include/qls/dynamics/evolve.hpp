#pragma once

#include "qls/dynamics/state.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace qls::dynamics {

// Square laser pulse on the addressed two-level transition, in the frame
// rotating at the laser frequency. Sideband pulses use the resolved-sideband,
// first-order Lamb-Dicke coupling eta * Omega * sqrt(n + 1).
struct Pulse {
  double rabi_freq = 0.0;  // Omega, rad/s
  double detuning = 0.0;   // Delta = omega_laser - omega_resonance, rad/s
  double phase = 0.0;      // rad; enters as sigma+ exp(-i phase)
  double duration = 0.0;   // s
  int sideband_order = 0;  // -1 red, 0 carrier, +1 blue
  double lamb_dicke = 0.0; // eta
  // Additional detuning present only while the light is on (ac-Stark knob).
  double light_shift = 0.0; // rad/s

  static Pulse carrier(double rabi_freq, double duration, double detuning = 0.0, double phase = 0.0);
  static Pulse sideband(int order, double rabi_freq, double lamb_dicke, double duration, double detuning = 0.0,
                        double phase = 0.0);
  // Free precession at the given laser detuning.
  static Pulse wait(double duration, double detuning = 0.0);

  void validate() const;
};

struct NoiseModel {
  double spontaneous_decay_rate = 0.0; // Gamma = 1/tau, 1/s
  double laser_dephasing_rate = 0.0;   // gamma, decay rate of the optical coherence, 1/s
  double thermal_nbar = 0.0;           // used when a scan builds its own initial state
  double drift_rate = 0.0;             // linear laser drift, Hz/s

  void validate() const;
};

struct IntegratorOptions {
  double rel_tol = 1e-8;
  double abs_tol = 1e-10;
  std::size_t max_steps = 2'000'000;
  // Largest tolerated population in the highest Fock level before the
  // truncation flag is raised.
  double truncation_warning = 1e-6;
  // Without decay, dephasing or drift each pulse is propagated exactly as
  // U rho U^dagger with U = exp(-iHt). Off forces the ODE path everywhere.
  bool exact_unitary = true;
};

struct EvolveStats {
  std::size_t accepted_steps = 0;
  std::size_t rejected_steps = 0;
  double max_top_fock_population = 0.0;
  bool truncation_warning = false;
};

// Interaction-picture Hamiltonian of one pulse (units rad/s, hbar = 1).
// `extra_detuning` is added to the pulse detuning (laser drift).
Matrix pulse_hamiltonian(const Pulse& pulse, int n_max, double extra_detuning = 0.0);

// Jump operators sqrt(Gamma) sigma- and sqrt(gamma/2) sigma_z, identity on the motion.
std::vector<Matrix> jump_operators(const NoiseModel& noise, int n_max);

// Integrates the Lindblad master equation through the pulse sequence with an
// adaptive Dormand-Prince 5(4) stepper. Throws NumericalError when the step
// size collapses or the step budget is exhausted.
QuantumState evolve(const QuantumState& state, std::span<const Pulse> pulses, const NoiseModel& noise,
                    const IntegratorOptions& options = {}, EvolveStats* stats = nullptr);

} // namespace qls::dynamics
