#pragma once

#include <array>
#include <string>

namespace qls::protocol {

// Zeeman populations of the Al+ 1S0 (F = 5/2) ground state and the
// 3P1 (F' = 7/2) manifold used for pumping, 6 + 8 = 14 states.
struct PumpState {
  std::array<double, 6> ground{};  // m = -5/2 .. +5/2
  std::array<double, 8> excited{}; // m' = -7/2 .. +7/2

  static PumpState uniform_ground();
  static PumpState stretched(int target_twice_m);

  // Index helpers take twice the projection quantum number.
  static int ground_index(int twice_m) { return (twice_m + 5) / 2; }
  static int excited_index(int twice_m) { return (twice_m + 7) / 2; }

  double total() const;
  double ground_population(int twice_m) const { return ground[ground_index(twice_m)]; }
  void validate(double tol = 1e-9) const;
};

struct PumpConfig {
  int repetitions = 10;
  double wait = 300e-6;           // s, after every pulse
  double lifetime = 300e-6;       // s, 3P1 F' = 7/2
  int target_twice_m = 5;         // +5 or -5
  double pulse_transfer = 1.0;    // population fraction swapped per pi-pulse

  void validate() const;
};

// Squared Clebsch-Gordan branching ratio for |F' = 7/2, m'> -> |F = 5/2, m>.
double decay_branching(int twice_m_excited, int twice_m_ground);

// Applies `repetitions` rounds of five pi-pulses (sigma+ for the +5/2 target,
// sigma- for -5/2, starting from the far end of the ladder), each followed by
// a decay window. Residual excited population is carried across pulses.
PumpState optical_pump(const PumpState& state, const PumpConfig& config);

} // namespace qls::protocol
