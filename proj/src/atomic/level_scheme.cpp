#include "qls/atomic/level_scheme.hpp"

#include "qls/errors.hpp"

#include <cmath>
#include <limits>

namespace qls::atomic {

namespace {

constexpr double stable = std::numeric_limits<double>::infinity();

// Landé factor of a hyperfine level F from g_J, ignoring the nuclear term.
double hyperfine_g(double g_j, double j, double i, double f) {
  return g_j * (f * (f + 1) + j * (j + 1) - i * (i + 1)) / (2 * f * (f + 1));
}

LevelScheme default_aluminium() {
  const double g_p1 = 1.5; // LS-coupling g_J of 3P1
  LevelScheme s;
  s.species = "Al+";
  s.levels = {
      {labels::al_ground, HalfInt{5}, -0.00079248, stable, std::nullopt,
       "nuclear g-factor of 1S0, literature (Rosenband et al. 2007)"},
      {labels::al_clock, HalfInt{5}, -0.00197686, 20.6, std::nullopt,
       "literature (Rosenband et al. 2007)"},
      {labels::al_p1_f52, HalfInt{5}, hyperfine_g(g_p1, 1, 2.5, 2.5), 300e-6, std::nullopt,
       "hyperfine Lande formula from g_J = 3/2"},
      {labels::al_p1_f72, HalfInt{7}, 0.428132, 300e-6,
       QuadrupoleParameter{QuadrupoleForm::reduced_matrix_element, -5.4394,
                           "calibrated: reconstructed axial gradient of the 888 kHz crystal gives -7.4 Hz"},
       "measured stretched-state splitting 2.100056 MHz/G"},
      {labels::al_p1_f92, HalfInt{9}, hyperfine_g(g_p1, 1, 2.5, 4.5), 300e-6, std::nullopt,
       "hyperfine Lande formula from g_J = 3/2"},
      {labels::al_p2, HalfInt{4}, 1.5, stable, std::nullopt, "LS-coupling g_J"},
  };
  s.transitions = {
      {labels::al_ground, labels::al_clock, 267.4, TransitionType::hyperfine_induced},
      {labels::al_ground, labels::al_p1_f52, 267.0, TransitionType::intercombination},
      {labels::al_ground, labels::al_p1_f72, 267.0, TransitionType::intercombination},
      {labels::al_ground, labels::al_p1_f92, 267.0, TransitionType::intercombination},
      {labels::al_ground, labels::al_p2, 266.1, TransitionType::magnetic_quadrupole},
  };
  return s;
}

LevelScheme default_calcium() {
  LevelScheme s;
  s.species = "Ca+";
  s.levels = {
      {labels::ca_s12, HalfInt{1}, 2.00225664, stable, std::nullopt, "literature (Tommaseo et al. 2003)"},
      {labels::ca_p12, HalfInt{1}, 2.0 / 3.0, 7.1e-9, std::nullopt, "LS-coupling g_J"},
      {labels::ca_d32, HalfInt{3}, 0.7993, 1.18, std::nullopt, "LS-coupling g_J with QED correction"},
      {labels::ca_d52, HalfInt{5}, 1.2003340, 1.17,
       QuadrupoleParameter{QuadrupoleForm::quadrupole_moment, 1.83, "Theta(D,5/2) = 1.83(1) e a0^2"},
       "literature (Chwalla et al. 2009)"},
      {labels::ca_p32, HalfInt{3}, 4.0 / 3.0, 6.9e-9, std::nullopt, "LS-coupling g_J"},
  };
  s.transitions = {
      {labels::ca_s12, labels::ca_p12, 396.8, TransitionType::electric_dipole},
      {labels::ca_s12, labels::ca_p32, 393.4, TransitionType::electric_dipole},
      {labels::ca_d32, labels::ca_p12, 866.2, TransitionType::electric_dipole},
      {labels::ca_d52, labels::ca_p32, 854.2, TransitionType::electric_dipole},
      {labels::ca_s12, labels::ca_d52, 729.1, TransitionType::electric_quadrupole},
  };
  return s;
}

void apply_level_overrides(LevelScheme& scheme, ConfigSection section) {
  for (const auto& label : section.keys()) {
    if (!scheme.contains(label))
      throw ConfigError(section.path() + "." + label + ": unknown level for " + scheme.species);
    auto node = section.section(label);
    auto& lvl = scheme.level(label);
    lvl.g_factor = node.number("g", lvl.g_factor);
    lvl.lifetime_s = node.number("lifetime_s", lvl.lifetime_s);
    if (node.has("quadrupole")) {
      if (!lvl.quadrupole)
        throw ConfigError(node.path() + ".quadrupole: level has no quadrupole parameter form");
      lvl.quadrupole->value_e_a0_sq = node.number("quadrupole");
      lvl.quadrupole->provenance = "configuration";
    }
    if (node.has("provenance")) lvl.provenance = node.text("provenance", lvl.provenance);
    node.finish();
  }
  section.finish();
}

} // namespace

void require_valid_projection(HalfInt angular_momentum, HalfInt m) {
  if (angular_momentum.twice < 0 || std::abs(m.twice) > angular_momentum.twice ||
      (angular_momentum.twice - m.twice) % 2 != 0)
    throw DomainError("invalid projection m=" + std::to_string(m.value()) +
                      " for angular momentum " + std::to_string(angular_momentum.value()));
}

const Level& LevelScheme::level(const std::string& label) const {
  for (const auto& l : levels)
    if (l.label == label) return l;
  throw ConfigError(species + ": no level '" + label + "'");
}

Level& LevelScheme::level(const std::string& label) {
  return const_cast<Level&>(static_cast<const LevelScheme&>(*this).level(label));
}

bool LevelScheme::contains(const std::string& label) const {
  for (const auto& l : levels)
    if (l.label == label) return true;
  return false;
}

void LevelScheme::validate() const {
  for (const auto& l : levels) {
    if (!std::isfinite(l.g_factor)) throw ConfigError(species + "/" + l.label + ": g-factor not finite");
    if (!(l.lifetime_s > 0)) throw ConfigError(species + "/" + l.label + ": lifetime must be > 0");
  }
  for (const auto& t : transitions) {
    if (!contains(t.lower) || !contains(t.upper))
      throw ConfigError(species + ": transition " + t.lower + " -> " + t.upper + " references unknown level");
    if (!(t.wavelength_nm > 0)) throw ConfigError(species + ": transition wavelength must be > 0");
  }
}

double QuadraticZeemanParams::crossover_field_gauss() const {
  return coupling_constant_zeta_hz * j_prime / (mu_prime_over_muB * constants().bohr_magneton_over_h);
}

AtomicData AtomicData::defaults() {
  return AtomicData{
      .aluminium = default_aluminium(),
      .calcium = default_calcium(),
      .al_p1_quadratic_zeeman = {.coupling_constant_zeta_hz = 1.8591e12, .j_prime = 2.0, .mu_prime_over_muB = 1.0},
  };
}

AtomicData load_atomic_data(ConfigSection section) {
  auto data = AtomicData::defaults();
  for (const auto& key : section.keys()) {
    if (key == "Al+") {
      apply_level_overrides(data.aluminium, section.section(key));
    } else if (key == "Ca+") {
      apply_level_overrides(data.calcium, section.section(key));
    } else if (key == "al_p1_quadratic_zeeman") {
      auto q = section.section(key);
      auto& p = data.al_p1_quadratic_zeeman;
      p.coupling_constant_zeta_hz = q.number("zeta_hz", p.coupling_constant_zeta_hz);
      p.j_prime = q.number("j_prime", p.j_prime);
      p.mu_prime_over_muB = q.number("mu_prime_over_muB", p.mu_prime_over_muB);
      q.finish();
      if (!(p.coupling_constant_zeta_hz > 0) || !(p.j_prime > 0) || !(p.mu_prime_over_muB > 0))
        throw ConfigError(q.path() + ": quadratic Zeeman parameters must be > 0");
    }
  }
  section.finish();
  data.aluminium.validate();
  data.calcium.validate();
  return data;
}

} // namespace qls::atomic
