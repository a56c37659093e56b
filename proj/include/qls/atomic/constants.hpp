#pragma once

#include <string>

namespace qls::atomic {

// SI-based constants with frequencies expressed in Hz and fields in gauss.
// This is the only place numerical values of fundamental constants live.
struct PhysicalConstants {
  double bohr_magneton_over_h; // Hz/G
  double planck_h;             // J s
  double elementary_charge;    // C
  double bohr_radius;          // m
  double speed_of_light;       // m/s
  double atomic_mass_unit;     // kg
  double vacuum_permittivity;  // F/m

  double hbar() const;
  // Coulomb constant 1/(4 pi eps0).
  double coulomb_constant() const;
};

const PhysicalConstants& constants();

// A number taken from outside this code base (literature, calibration) along
// with where it came from. Kept separate from PhysicalConstants so that it can
// be overridden from configuration.
struct CitedConstant {
  double value;
  std::string provenance;
};

} // namespace qls::atomic
