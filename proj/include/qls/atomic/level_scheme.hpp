#pragma once

#include "qls/atomic/constants.hpp"
#include "qls/config.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qls::atomic {

// Angular momentum or projection quantum number stored as twice its value,
// so 5/2 is HalfInt{5}.
struct HalfInt {
  int twice = 0;

  constexpr double value() const { return 0.5 * twice; }
  constexpr HalfInt operator-() const { return HalfInt{-twice}; }
  friend constexpr bool operator==(HalfInt, HalfInt) = default;
};

// Throws DomainError unless m is one of -F, -F+1, ..., F.
void require_valid_projection(HalfInt angular_momentum, HalfInt m);

enum class QuadrupoleForm {
  // <nJ||Q2||nJ> in e a0^2; stretched states shift by (1/(2 sqrt 30)) <||Q2||> d2Phi/dz2.
  reduced_matrix_element,
  // Theta(J) in e a0^2, standard m^2-dependent form used for Ca+ D5/2.
  quadrupole_moment,
};

struct QuadrupoleParameter {
  QuadrupoleForm form;
  double value_e_a0_sq;
  std::string provenance;
};

struct Level {
  std::string label;
  HalfInt angular_momentum; // F for hyperfine levels, J otherwise
  double g_factor;
  double lifetime_s; // +inf for stable levels
  std::optional<QuadrupoleParameter> quadrupole;
  std::string provenance;
};

enum class TransitionType { electric_dipole, electric_quadrupole, magnetic_quadrupole, intercombination, hyperfine_induced };

struct Transition {
  std::string lower;
  std::string upper;
  double wavelength_nm;
  TransitionType type;
};

struct LevelScheme {
  std::string species;
  std::vector<Level> levels;
  std::vector<Transition> transitions;

  const Level& level(const std::string& label) const;
  Level& level(const std::string& label);
  bool contains(const std::string& label) const;
  // Checks the invariants (finite g, positive lifetimes, transitions refer to
  // known levels); throws ConfigError.
  void validate() const;
};

// Parameters of the second-order Zeeman shift through fine-structure mixing.
struct QuadraticZeemanParams {
  double coupling_constant_zeta_hz; // zeta_nLS
  double j_prime;                   // J of the perturbing fine-structure partner
  double mu_prime_over_muB;         // (g_s - g_J) mu_B / mu_B

  // B_fs = zeta J' / mu', in gauss.
  double crossover_field_gauss() const;
};

// All species data used by the other modules.
struct AtomicData {
  LevelScheme aluminium;
  LevelScheme calcium;
  QuadraticZeemanParams al_p1_quadratic_zeeman;

  static AtomicData defaults();
};

// Labels of the levels used throughout.
namespace labels {
inline constexpr const char* al_ground = "1S0";
inline constexpr const char* al_clock = "3P0";
inline constexpr const char* al_p1_f52 = "3P1,F=5/2";
inline constexpr const char* al_p1_f72 = "3P1,F=7/2";
inline constexpr const char* al_p1_f92 = "3P1,F=9/2";
inline constexpr const char* al_p2 = "3P2";
inline constexpr const char* ca_s12 = "S1/2";
inline constexpr const char* ca_p12 = "P1/2";
inline constexpr const char* ca_d32 = "D3/2";
inline constexpr const char* ca_d52 = "D5/2";
inline constexpr const char* ca_p32 = "P3/2";
} // namespace labels

// Overrides defaults from the "species" section:
//   { "Al+": { "<level>": { "g": .., "lifetime_s": .., "quadrupole": .. } }, "Ca+": {...},
//     "al_p1_quadratic_zeeman": { "zeta_hz": .., "j_prime": .., "mu_prime_over_muB": .. } }
// Unknown species, levels or keys raise ConfigError.
AtomicData load_atomic_data(ConfigSection section);

} // namespace qls::atomic
