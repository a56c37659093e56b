#include "qls/trap/crystal.hpp"

#include "qls/atomic/constants.hpp"
#include "qls/errors.hpp"
#include "qls/util/csv.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <tuple>
#include <numbers>
#include <ostream>

namespace qls::trap {

namespace {

using atomic::constants;
constexpr double two_pi = 2.0 * std::numbers::pi;

std::string direction_name(Direction d) {
  switch (d) {
  case Direction::axial: return "axial";
  case Direction::radial_x: return "radial-x";
  case Direction::radial_y: return "radial-y";
  }
  return "?";
}

double lookup(const std::vector<std::pair<std::string, double>>& table, const std::string& key, double fallback) {
  for (const auto& [k, v] : table)
    if (k == key) return v;
  return fallback;
}

// Axial equilibrium of two equal charges in a common harmonic well, in units
// of the length scale l = (k e^2 / kappa)^(1/3). Returns (u1, u2), u1 < u2.
std::array<double, 2> axial_equilibrium_scaled() {
  // U = (u1^2 + u2^2)/2 + 1/(u2 - u1)
  Eigen::Vector2d u(-1.0, 1.0);
  auto force = [](const Eigen::Vector2d& p) {
    const double d = p(1) - p(0);
    return Eigen::Vector2d(-p(0) - 1.0 / (d * d), -p(1) + 1.0 / (d * d));
  };
  auto potential = [](const Eigen::Vector2d& p) { return 0.5 * p.squaredNorm() + 1.0 / (p(1) - p(0)); };

  for (int iter = 0; iter < 200; ++iter) {
    const Eigen::Vector2d f = force(u);
    if (f.lpNorm<Eigen::Infinity>() < 1e-15) break;
    const double d = u(1) - u(0);
    const double c = 2.0 / (d * d * d);
    Eigen::Matrix2d hessian;
    hessian << 1.0 + c, -c, -c, 1.0 + c;
    const Eigen::Vector2d step = hessian.ldlt().solve(f);
    double lambda = 1.0;
    const double u0 = potential(u);
    while (lambda > 1e-8) {
      const Eigen::Vector2d trial = u + lambda * step;
      if (trial(1) > trial(0) && potential(trial) <= u0 + 1e-15) {
        u = trial;
        break;
      }
      lambda *= 0.5;
    }
    if (lambda <= 1e-8 || step.norm() < 1e-17) break;
  }
  const Eigen::Vector2d f = force(u);
  if (f.lpNorm<Eigen::Infinity>() > 1e-12)
    throw NumericalError("axial equilibrium did not converge (residual force " + std::to_string(f.norm()) + ")");
  return {u(0), u(1)};
}

struct DirectionModes {
  std::array<double, 2> omega_sq;
  std::array<std::array<double, 2>, 2> vectors;
};

DirectionModes diagonalise(const Eigen::Matrix2d& stiffness, double m1, double m2, Direction dir) {
  const Eigen::Vector2d inv_sqrt_m(1.0 / std::sqrt(m1), 1.0 / std::sqrt(m2));
  const Eigen::Matrix2d weighted = inv_sqrt_m.asDiagonal() * stiffness * inv_sqrt_m.asDiagonal();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> solver(weighted);
  DirectionModes out{};
  for (int k = 0; k < 2; ++k) {
    const double w2 = solver.eigenvalues()(k);
    if (!(w2 > 0))
      throw InstabilityError("unstable crystal: negative curvature along " + direction_name(dir) +
                             " (mass-weighted Hessian eigenvalue " + std::to_string(w2) + ")");
    Eigen::Vector2d v = solver.eigenvectors().col(k);
    if (v(0) < 0 || (v(0) == 0 && v(1) < 0)) v = -v;
    out.omega_sq[k] = w2;
    out.vectors[k] = {v(0), v(1)};
  }
  return out;
}

} // namespace

void TrapConfig::validate() const {
  if (!(reference_mass_u > 0)) throw ConfigError("trap: reference mass must be > 0");
  if (!(axial_freq_hz > 0) || !(radial_freq_x_hz > 0) || !(radial_freq_y_hz > 0) || !(rf_drive_freq_hz > 0))
    throw ConfigError("trap: frequencies must be > 0");
  if (!(residual_modulation_index >= 0 && residual_modulation_index <= 1e-2))
    throw ConfigError("trap: residual modulation index must lie in [0, 1e-2]");
  if (!(default_radial_nbar >= 0)) throw ConfigError("trap: mean phonon numbers must be >= 0");
  for (const auto& [k, v] : mean_phonon_numbers)
    if (!(v >= 0)) throw ConfigError("trap: mean phonon number of " + k + " must be >= 0");
  for (const auto& [k, v] : heating_rates)
    if (!(v >= 0)) throw ConfigError("trap: heating rate of " + k + " must be >= 0");
}

double TrapConfig::axial_spring_constant() const {
  const double w = two_pi * axial_freq_hz;
  return reference_mass_u * constants().atomic_mass_unit * w * w;
}

double TrapConfig::axial_trap_gradient() const { return axial_spring_constant() / constants().elementary_charge; }

double TrapConfig::heating_rate(const std::string& mode_label) const {
  return lookup(heating_rates, mode_label, 0.0);
}

double TrapConfig::mean_phonon_number(const std::string& mode_label) const {
  return lookup(mean_phonon_numbers, mode_label, mode_label.rfind("axial", 0) == 0 ? 0.0 : default_radial_nbar);
}

TrapConfig load_trap_config(ConfigSection section) {
  TrapConfig t;
  t.reference_mass_u = section.number("reference_mass_u", t.reference_mass_u);
  t.axial_freq_hz = section.number("axial_freq_hz", t.axial_freq_hz);
  t.radial_freq_x_hz = section.number("radial_freq_x_hz", t.radial_freq_x_hz);
  t.radial_freq_y_hz = section.number("radial_freq_y_hz", t.radial_freq_y_hz);
  t.dc_radial_asymmetry_hz = section.number("dc_radial_asymmetry_hz", t.dc_radial_asymmetry_hz);
  t.rf_drive_freq_hz = section.number("rf_drive_freq_hz", t.rf_drive_freq_hz);
  t.residual_modulation_index = section.number("residual_modulation_index", t.residual_modulation_index);
  t.default_radial_nbar = section.number("default_radial_nbar", t.default_radial_nbar);
  auto read_table = [&](const std::string& key, std::vector<std::pair<std::string, double>>& table) {
    auto sub = section.section(key);
    for (const auto& label : sub.keys()) {
      const double v = sub.number(label);
      bool replaced = false;
      for (auto& [k, old] : table)
        if (k == label) {
          old = v;
          replaced = true;
        }
      if (!replaced) table.emplace_back(label, v);
    }
    sub.finish();
  };
  read_table("heating_rates", t.heating_rates);
  read_table("mean_phonon_numbers", t.mean_phonon_numbers);
  section.finish();
  t.validate();
  return t;
}

std::string NormalMode::label() const {
  return direction_name(direction) + (motion == Motion::in_phase ? "-in-phase" : "-out-of-phase");
}

const NormalMode& Crystal::mode(Direction d, Motion m) const {
  for (const auto& mode : modes)
    if (mode.direction == d && mode.motion == m) return mode;
  throw ConfigError("crystal has no such mode");
}

double Crystal::axial_field_gradient(const TrapConfig& trap, int ion) const {
  if (ion != 0 && ion != 1) throw DomainError("ion index must be 0 or 1");
  const auto& c = constants();
  const double d = separation_m;
  return trap.axial_trap_gradient() + 2.0 * c.coulomb_constant() * c.elementary_charge / (d * d * d);
}

Crystal solve_crystal(const TrapConfig& trap, double mass1_u, double mass2_u) {
  trap.validate();
  if (!(mass1_u > 0) || !(mass2_u > 0)) throw DomainError("ion masses must be > 0");

  const auto& c = constants();
  const double amu = c.atomic_mass_unit;
  const double kappa = trap.axial_spring_constant();
  const double ke2 = c.coulomb_constant() * c.elementary_charge * c.elementary_charge;
  const double length = std::cbrt(ke2 / kappa);

  const auto u = axial_equilibrium_scaled();
  Crystal crystal;
  crystal.pair = IonPair{mass1_u, mass2_u, {u[0] * length, u[1] * length}};
  crystal.separation_m = (u[1] - u[0]) * length;
  const double d = crystal.separation_m;
  const double coulomb = ke2 / (d * d * d);

  const std::array<double, 2> masses{mass1_u * amu, mass2_u * amu};
  const double m_ref = trap.reference_mass_u * amu;
  const double wz2 = std::pow(two_pi * trap.axial_freq_hz, 2);
  const double asym = std::copysign(std::pow(two_pi * trap.dc_radial_asymmetry_hz, 2), trap.dc_radial_asymmetry_hz);

  // Radial spring constant of a single ion of mass m: the rf pseudopotential
  // frequency scales as 1/m, the dc curvature is electrostatic (mass independent).
  auto radial_spring = [&](double m, double w_ref, double dc_extra) {
    const double dc = -0.5 * wz2 + dc_extra;         // per unit reference mass
    const double pseudo = w_ref * w_ref + 0.5 * wz2; // reference-ion pseudopotential
    const double ratio = m_ref / m;
    return m * (pseudo * ratio * ratio + dc * ratio);
  };

  for (int ion = 0; ion < 2; ++ion) {
    const double wz_ion = std::sqrt(kappa / masses[ion]);
    const double wx = std::sqrt(std::max(0.0, radial_spring(masses[ion], two_pi * trap.radial_freq_x_hz, asym) / masses[ion]));
    const double wy = std::sqrt(std::max(0.0, radial_spring(masses[ion], two_pi * trap.radial_freq_y_hz, -asym) / masses[ion]));
    if (!(wz_ion < wx && wz_ion < wy))
      throw InstabilityError("unstable linear crystal: axial confinement exceeds radial for ion " +
                             std::to_string(ion + 1));
  }

  struct Block {
    Direction dir;
    Eigen::Matrix2d stiffness;
  };
  std::vector<Block> blocks;
  {
    Eigen::Matrix2d k;
    k << kappa + 2 * coulomb, -2 * coulomb, -2 * coulomb, kappa + 2 * coulomb;
    blocks.push_back({Direction::axial, k});
  }
  for (auto [dir, w_ref, extra] : {std::tuple{Direction::radial_x, trap.radial_freq_x_hz, asym},
                                   std::tuple{Direction::radial_y, trap.radial_freq_y_hz, -asym}}) {
    Eigen::Matrix2d k;
    k << radial_spring(masses[0], two_pi * w_ref, extra) - coulomb, coulomb, coulomb,
        radial_spring(masses[1], two_pi * w_ref, extra) - coulomb;
    blocks.push_back({dir, k});
  }

  for (const auto& block : blocks) {
    const auto dm = diagonalise(block.stiffness, masses[0], masses[1], block.dir);
    for (int k = 0; k < 2; ++k) {
      NormalMode mode;
      mode.direction = block.dir;
      mode.frequency_hz = std::sqrt(dm.omega_sq[k]) / two_pi;
      mode.eigenvector = dm.vectors[k];
      mode.motion = mode.eigenvector[0] * mode.eigenvector[1] >= 0 ? Motion::in_phase : Motion::out_of_phase;
      mode.heating_rate = trap.heating_rate(mode.label());
      mode.mean_phonon_number = trap.mean_phonon_number(mode.label());
      crystal.modes.push_back(mode);
    }
  }
  std::sort(crystal.modes.begin(), crystal.modes.end(),
            [](const NormalMode& a, const NormalMode& b) { return a.frequency_hz < b.frequency_hz; });
  return crystal;
}

std::pair<double, double> axial_modes_closed_form(double mass1_u, double mass2_u, double nu1_hz) {
  if (!(mass1_u > 0) || !(mass2_u > 0) || !(nu1_hz > 0)) throw DomainError("masses and frequency must be > 0");
  const double r = mass1_u / mass2_u;
  const double root = std::sqrt((1 - r) * (1 - r) + r);
  return {nu1_hz * std::sqrt((1 + r) - root), nu1_hz * std::sqrt((1 + r) + root)};
}

double lamb_dicke(const NormalMode& mode, int ion_index, double ion_mass_u, double wavelength_nm,
                  double projection_cosine) {
  if (ion_index != 0 && ion_index != 1) throw DomainError("ion index must be 0 or 1");
  if (!(projection_cosine >= -1 && projection_cosine <= 1)) throw DomainError("projection cosine must lie in [-1, 1]");
  if (!(mode.frequency_hz > 0)) throw DomainError("mode frequency must be > 0");
  if (!(wavelength_nm > 0) || !(ion_mass_u > 0)) throw DomainError("wavelength and mass must be > 0");
  const auto& c = constants();
  const double k = two_pi / (wavelength_nm * 1e-9);
  const double omega = two_pi * mode.frequency_hz;
  const double m = ion_mass_u * c.atomic_mass_unit;
  return k * projection_cosine * mode.eigenvector[ion_index] * std::sqrt(c.hbar() / (2 * m * omega));
}

void write_mode_table(std::ostream& out, const Crystal& crystal) {
  csv::Writer w(out);
  w.row({"label", "freq_hz", "b1", "b2", "heating_rate_phonons_per_s", "nbar"});
  for (const auto& m : crystal.modes)
    w.row({m.label(), csv::format(m.frequency_hz), csv::format(m.eigenvector[0]), csv::format(m.eigenvector[1]),
           csv::format(m.heating_rate), csv::format(m.mean_phonon_number)});
}

} // namespace qls::trap
