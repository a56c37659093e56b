#pragma once

#include "qls/config.hpp"

#include <array>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace qls::trap {

enum class Direction { axial, radial_x, radial_y };
enum class Motion { in_phase, out_of_phase };

// Secular confinement of the linear trap, specified through the motion of a
// single reference ion (40Ca+ by default).
struct TrapConfig {
  double reference_mass_u = 40.0;
  double axial_freq_hz = 820e3;
  // Single reference-ion radial frequencies before the blade asymmetry is applied.
  double radial_freq_x_hz = 1.3563e6;
  double radial_freq_y_hz = 1.1730e6;
  // Signed frequency whose square is added to the x and subtracted from the y
  // dc curvature (per unit mass of the reference ion). Tuned to reproduce the
  // radial sideband positions of the mixed crystal.
  double dc_radial_asymmetry_hz = 0.4890e6;
  double rf_drive_freq_hz = 32e6;
  double residual_modulation_index = 0.0;

  // Per-mode inputs, keyed like NormalMode::label().
  std::vector<std::pair<std::string, double>> heating_rates{{"axial-in-phase", 70.0}, {"axial-out-of-phase", 0.8}};
  std::vector<std::pair<std::string, double>> mean_phonon_numbers{{"axial-in-phase", 0.05},
                                                                  {"axial-out-of-phase", 0.05}};
  double default_radial_nbar = 0.5;

  void validate() const;
  // Electrostatic axial spring constant kappa (kg/s^2), identical for every ion.
  double axial_spring_constant() const;
  // d^2 Phi/dz^2 of the confining potential alone (V/m^2).
  double axial_trap_gradient() const;
  double heating_rate(const std::string& mode_label) const;
  double mean_phonon_number(const std::string& mode_label) const;
};

TrapConfig load_trap_config(ConfigSection section);

struct NormalMode {
  Direction direction;
  Motion motion;
  double frequency_hz;
  // Mass-weighted eigenvector, unit norm, first component >= 0.
  std::array<double, 2> eigenvector;
  double heating_rate;       // phonons/s
  double mean_phonon_number; // dimensionless

  std::string label() const;
};

struct IonPair {
  double mass1_u;
  double mass2_u;
  std::array<double, 2> equilibrium_positions_m{0.0, 0.0};
};

struct Crystal {
  IonPair pair;
  double separation_m;
  // Sorted by frequency.
  std::vector<NormalMode> modes;

  const NormalMode& mode(Direction d, Motion m) const;
  // d^2 Phi/dz^2 at ion `ion` (0 or 1): confinement plus the co-trapped ion.
  double axial_field_gradient(const TrapConfig& trap, int ion) const;
};

// Equilibrium by damped Newton iteration on the axial potential, then the six
// modes from the mass-weighted Hessian of each direction. Throws
// InstabilityError when a direction is not confining.
Crystal solve_crystal(const TrapConfig& trap, double mass1_u, double mass2_u);

// Closed-form axial modes (in-phase, out-of-phase) of two ions of masses m1, m2
// where nu1 is the single-ion axial frequency of ion 1.
std::pair<double, double> axial_modes_closed_form(double mass1_u, double mass2_u, double nu1_hz);

double lamb_dicke(const NormalMode& mode, int ion_index, double ion_mass_u, double wavelength_nm,
                  double projection_cosine);

// CSV with columns label,freq_hz,b1,b2,heating_rate,nbar.
void write_mode_table(std::ostream& out, const Crystal& crystal);

} // namespace qls::trap
