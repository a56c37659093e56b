#include <doctest.h>

#include "qls/atomic/level_scheme.hpp"
#include "qls/atomic/shifts.hpp"
#include "qls/errors.hpp"

#include <json.hpp>

#include <cmath>

using namespace qls::atomic;

namespace {

const AtomicData& data() {
  static const AtomicData d = AtomicData::defaults();
  return d;
}

double g_ground() { return data().aluminium.level(labels::al_ground).g_factor; }

} // namespace

TEST_CASE("default species data is internally consistent") {
  CHECK_NOTHROW(data().aluminium.validate());
  CHECK_NOTHROW(data().calcium.validate());
  CHECK(data().aluminium.level(labels::al_p1_f72).angular_momentum == HalfInt{7});
  CHECK(data().calcium.level(labels::ca_d52).angular_momentum == HalfInt{5});
}

TEST_CASE("projection bounds") {
  CHECK_NOTHROW(require_valid_projection(HalfInt{5}, HalfInt{-5}));
  CHECK_THROWS_AS(require_valid_projection(HalfInt{5}, HalfInt{7}), qls::DomainError);
  CHECK_THROWS_AS(require_valid_projection(HalfInt{5}, HalfInt{2}), qls::DomainError);
}

TEST_CASE("linear Zeeman shift") {
  const auto& al = data().aluminium;
  const auto upper = ZeemanSublevel::of(al.level(labels::al_p1_f72), HalfInt{7});
  const auto lower = ZeemanSublevel::of(al.level(labels::al_ground), HalfInt{5});
  const double k = zeeman_coefficient(upper, lower);
  // Linear in B and zero at B = 0.
  CHECK(zeeman_shifted_frequency(100.0, upper, lower, 0.0) == doctest::Approx(100.0));
  CHECK(zeeman_shifted_frequency(0.0, upper, lower, 4.0) == doctest::Approx(4.0 * k).epsilon(1e-12));
  // The mirror transition has the opposite slope.
  const auto upper_m = ZeemanSublevel::of(al.level(labels::al_p1_f72), HalfInt{-7});
  const auto lower_m = ZeemanSublevel::of(al.level(labels::al_ground), HalfInt{-5});
  CHECK(zeeman_coefficient(upper_m, lower_m) == doctest::Approx(-k).epsilon(1e-12));
  CHECK_THROWS_AS(ZeemanSublevel::of(al.level(labels::al_ground), HalfInt{7}), qls::DomainError);
}

TEST_CASE("g factor from the stretched slope") {
  // Oracle: slope = (mu_B/h)(7/2 g - 5/2 g_ground).
  const double mub = 1.39962449361e6;
  const double slope = 2.100056e6;
  const double g = (slope / mub + 2.5 * g_ground()) / 3.5;
  CHECK(g_factor_from_splitting(slope, g_ground()) == doctest::Approx(g).epsilon(1e-12));
  CHECK(std::abs(g_factor_from_splitting(slope, g_ground()) - 0.428132) < 2e-6);
  // Round trip.
  CHECK(splitting_from_g(g, g_ground()) == doctest::Approx(slope).epsilon(1e-12));
}

TEST_CASE("quadratic Zeeman shift of the 3P1 stretched state") {
  const auto& q = data().al_p1_quadratic_zeeman;
  const double curvature = quadratic_zeeman_curvature(q);
  CHECK(std::abs(curvature / -0.26374 - 1.0) < 5e-3);
  CHECK(std::abs(quadratic_zeeman_shift(q, 4.0) / -2.109 - 1.0) < 5e-3);
  // Property: quadratic in the field magnitude.
  for (double b : {0.5, 1.0, 3.0, 7.0})
    CHECK(quadratic_zeeman_shift(q, b) == doctest::Approx(0.5 * curvature * b * b).epsilon(1e-12));
  CHECK(quadratic_zeeman_shift(q, 0.0) == 0.0);
  CHECK_THROWS_AS(quadratic_zeeman_shift(q, -1.0), qls::DomainError);
}

TEST_CASE("electric quadrupole shifts") {
  const auto& ca = data().calcium.level(labels::ca_d52);
  const auto& al = data().aluminium.level(labels::al_p1_f72);
  const double grad = 2.2009801824858e7;
  SUBCASE("Ca+ D5/2 against the textbook form") {
    const double e = 1.602176634e-19, a0 = 5.29177210903e-11, h = 6.62607015e-34;
    const double theta = ca.quadrupole->value_e_a0_sq * e * a0 * a0;
    // E = (1/2) dEz/dz-magnitude Theta (J(J+1) - 3m^2) / (J(2J-1)).
    const double expected = 0.5 * grad * theta * (8.75 - 3 * 2.25) / (2.5 * 4.0) / h;
    CHECK(quadrupole_shift(ca, HalfInt{3}, grad) == doctest::Approx(expected).epsilon(1e-6));
    CHECK(std::abs(quadrupole_shift(ca, HalfInt{3}, grad) - 2.7) < 0.1);
  }
  SUBCASE("Al+ 3P1 stretched state") { CHECK(std::abs(quadrupole_shift(al, HalfInt{7}, grad) + 7.4) < 0.05); }
  SUBCASE("properties") {
    for (int m2 = -5; m2 <= 5; m2 += 2) {
      CHECK(quadrupole_shift(ca, HalfInt{m2}, grad) == doctest::Approx(quadrupole_shift(ca, HalfInt{-m2}, grad)));
      CHECK(quadrupole_shift(ca, HalfInt{m2}, 2 * grad) == doctest::Approx(2 * quadrupole_shift(ca, HalfInt{m2}, grad)));
    }
    // Rank-2 tensor: the sum over all sublevels vanishes.
    double sum = 0.0;
    for (int m2 = -7; m2 <= 7; m2 += 2) sum += quadrupole_shift(al, HalfInt{m2}, grad);
    CHECK(std::abs(sum) < 1e-9);
    CHECK_THROWS_AS(quadrupole_shift(data().aluminium.level(labels::al_ground), HalfInt{5}, grad), qls::ConfigError);
  }
}

TEST_CASE("Ca+ pair splitting and ac-Zeeman bound") {
  const auto& ca = data().calcium;
  const double gs = ca.level(labels::ca_s12).g_factor, gd = ca.level(labels::ca_d52).g_factor;
  CHECK(ca_pair_splitting_per_gauss(ca) == doctest::Approx(2 * 1.39962449361e6 * (1.5 * gd - 0.5 * gs)).epsilon(1e-12));
  CHECK(ac_zeeman_g_fractional_bound(4e-6, 4.0) == doctest::Approx(1e-6).epsilon(1e-9));
}

TEST_CASE("species overrides are fail-closed") {
  auto doc = nlohmann::json::parse(R"({"Al+": {"3P1,F=7/2": {"g": 0.43}}})");
  const auto d = load_atomic_data(qls::ConfigSection(doc, "species"));
  CHECK(d.aluminium.level(labels::al_p1_f72).g_factor == 0.43);
  auto bad_key = nlohmann::json::parse(R"({"Al+": {"3P1,F=7/2": {"gee": 0.43}}})");
  CHECK_THROWS_AS(load_atomic_data(qls::ConfigSection(bad_key, "species")), qls::ConfigError);
  auto bad_level = nlohmann::json::parse(R"({"Al+": {"9Z9": {"g": 1}}})");
  CHECK_THROWS_AS(load_atomic_data(qls::ConfigSection(bad_level, "species")), qls::ConfigError);
  auto bad_species = nlohmann::json::parse(R"({"Mg+": {}})");
  CHECK_THROWS_AS(load_atomic_data(qls::ConfigSection(bad_species, "species")), qls::ConfigError);
}
