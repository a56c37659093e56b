#include <doctest.h>

#include "qls/errors.hpp"
#include "qls/trap/crystal.hpp"
#include "qls/trap/mass_inference.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

using namespace qls::trap;

namespace {

// Oracle: nu^2 = nu1^2 (1 + mu -+ sqrt(1 - mu + mu^2)), mu = m1/m2.
std::pair<double, double> oracle_axial(double m1, double m2, double nu1) {
  const double mu = m1 / m2;
  const double r = std::sqrt(1 - mu + mu * mu);
  return {nu1 * std::sqrt(1 + mu - r), nu1 * std::sqrt(1 + mu + r)};
}

} // namespace

TEST_CASE("axial modes of the Ca/Al crystal") {
  TrapConfig trap;
  const auto crystal = solve_crystal(trap, 40.0, 27.0);
  const double lo = crystal.mode(Direction::axial, Motion::in_phase).frequency_hz;
  const double hi = crystal.mode(Direction::axial, Motion::out_of_phase).frequency_hz;
  const auto [olo, ohi] = oracle_axial(40.0, 27.0, 820e3);
  CHECK(lo == doctest::Approx(olo).epsilon(1e-9));
  CHECK(hi == doctest::Approx(ohi).epsilon(1e-9));
  CHECK(std::abs(lo / 888e3 - 1) < 0.01);
  CHECK(std::abs(hi / 1.596e6 - 1) < 0.01);
  const auto [clo, chi] = axial_modes_closed_form(40.0, 27.0, 820e3);
  CHECK(clo == doctest::Approx(olo).epsilon(1e-12));
  CHECK(chi == doctest::Approx(ohi).epsilon(1e-12));
}

TEST_CASE("trace identity over masses and frequencies") {
  for (double m2 : {9.0, 24.0, 27.0, 40.0, 88.0, 138.0})
    for (double nu1 : {0.5e6, 0.82e6, 1.3e6}) {
      const auto [lo, hi] = axial_modes_closed_form(40.0, m2, nu1);
      CHECK(std::abs((lo * lo + hi * hi) / (2 * nu1 * nu1 * (1 + 40.0 / m2)) - 1) < 1e-9);
      CHECK(lo <= hi);
    }
  // Equal masses: centre of mass and breathing mode.
  const auto [lo, hi] = axial_modes_closed_form(40.0, 40.0, 1e6);
  CHECK(lo == doctest::Approx(1e6).epsilon(1e-12));
  CHECK(hi == doctest::Approx(std::sqrt(3.0) * 1e6).epsilon(1e-12));
}

TEST_CASE("crystal geometry and mode vectors") {
  TrapConfig trap;
  const auto c = solve_crystal(trap, 40.0, 27.0);
  REQUIRE(c.modes.size() == 6);
  for (std::size_t i = 1; i < c.modes.size(); ++i) CHECK(c.modes[i - 1].frequency_hz <= c.modes[i].frequency_hz);
  for (const auto& m : c.modes) {
    CHECK(std::hypot(m.eigenvector[0], m.eigenvector[1]) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(m.eigenvector[0] >= 0.0);
  }
  for (auto dir : {Direction::axial, Direction::radial_x, Direction::radial_y}) {
    const auto& a = c.mode(dir, Motion::in_phase).eigenvector;
    const auto& b = c.mode(dir, Motion::out_of_phase).eigenvector;
    CHECK(std::abs(a[0] * b[0] + a[1] * b[1]) < 1e-12);
  }
  // Force balance: kappa d / 2 = k e^2 / d^2 for the single-ion spring constant.
  const double e = 1.602176634e-19, k = 8.9875517923e9;
  const double kappa = 40 * 1.66053906660e-27 * std::pow(2 * std::numbers::pi * 820e3, 2);
  CHECK(c.separation_m == doctest::Approx(std::cbrt(2 * k * e * e / kappa)).epsilon(1e-9));
  // The gradient at either ion is twice the confinement: 2 kappa / e.
  CHECK(c.axial_field_gradient(trap, 0) == doctest::Approx(2 * kappa / e).epsilon(1e-9));
  CHECK(c.axial_field_gradient(trap, 1) == doctest::Approx(2 * kappa / e).epsilon(1e-9));
}

TEST_CASE("Lamb-Dicke parameter") {
  TrapConfig trap;
  const auto c = solve_crystal(trap, 40.0, 27.0);
  const auto& m = c.mode(Direction::axial, Motion::out_of_phase);
  const double hbar = 6.62607015e-34 / (2 * std::numbers::pi);
  const double k = 2 * std::numbers::pi / 729e-9;
  const double expected =
      k * 0.5 * m.eigenvector[0] * std::sqrt(hbar / (2 * 40 * 1.66053906660e-27 * 2 * std::numbers::pi * m.frequency_hz));
  CHECK(lamb_dicke(m, 0, 40.0, 729.0, 0.5) == doctest::Approx(expected).epsilon(1e-9));
  CHECK(lamb_dicke(m, 0, 40.0, 729.0, 0.0) == 0.0);
  CHECK_THROWS_AS(lamb_dicke(m, 2, 40.0, 729.0, 0.5), qls::DomainError);
}

TEST_CASE("unstable and invalid traps") {
  TrapConfig trap;
  trap.radial_freq_x_hz = 0.3e6;
  trap.radial_freq_y_hz = 0.3e6;
  trap.dc_radial_asymmetry_hz = 0.0;
  CHECK_THROWS_AS(solve_crystal(trap, 40.0, 27.0), qls::InstabilityError);
  TrapConfig bad;
  bad.axial_freq_hz = -1;
  CHECK_THROWS_AS(solve_crystal(bad, 40.0, 27.0), qls::ConfigError);
}

TEST_CASE("companion mass inference") {
  TrapConfig trap;
  const auto [lo, hi] = axial_modes_closed_form(40.0, 27.0, 820e3);
  (void)hi;
  const auto r = infer_companion_mass(lo, trap, 40.0, 100.0);
  CHECK(r.mass_u == doctest::Approx(27.0).epsilon(1e-6));
  CHECK(r.nearest_integer_u == 27);
  CHECK_FALSE(r.ambiguous);
  // A coarse resonance cannot tell neighbouring heavy masses apart.
  const auto [lo_heavy, hi_heavy] = axial_modes_closed_form(40.0, 180.0, 820e3);
  (void)hi_heavy;
  CHECK(infer_companion_mass(lo_heavy, trap, 40.0, 2000.0).ambiguous);
}

TEST_CASE("mode table CSV") {
  TrapConfig trap;
  std::ostringstream out;
  write_mode_table(out, solve_crystal(trap, 40.0, 27.0));
  const auto text = out.str();
  CHECK(text.rfind("label,freq_hz", 0) == 0);
  CHECK(text.find("axial-in-phase,887931.") != std::string::npos);
}
