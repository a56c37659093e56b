#include "qls/atomic/constants.hpp"

#include <numbers>

namespace qls::atomic {

const PhysicalConstants& constants() {
  // CODATA 2018.
  static const PhysicalConstants table{
      .bohr_magneton_over_h = 1.39962449361e6,
      .planck_h = 6.62607015e-34,
      .elementary_charge = 1.602176634e-19,
      .bohr_radius = 5.29177210903e-11,
      .speed_of_light = 299792458.0,
      .atomic_mass_unit = 1.66053906660e-27,
      .vacuum_permittivity = 8.8541878128e-12,
  };
  return table;
}

double PhysicalConstants::hbar() const { return planck_h / (2.0 * std::numbers::pi); }

double PhysicalConstants::coulomb_constant() const {
  return 1.0 / (4.0 * std::numbers::pi * vacuum_permittivity);
}

} // namespace qls::atomic
