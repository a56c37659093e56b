#include <doctest.h>

#include "oracles/lineshape.hpp"
#include "oracles/lindblad.hpp"

#include "qls/dynamics/scans.hpp"
#include "qls/errors.hpp"
#include "qls/metrology/curve_fit.hpp"

#include <numbers>
#include <random>

using namespace qls::dynamics;
constexpr double two_pi = 2 * std::numbers::pi;

namespace {

std::vector<Pulse> random_sequence(std::mt19937_64& rng, int n_pulses) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Pulse> out;
  for (int i = 0; i < n_pulses; ++i) {
    Pulse p;
    p.sideband_order = static_cast<int>(u(rng) * 3) - 1;
    p.lamb_dicke = p.sideband_order == 0 ? 0.0 : 0.05 + 0.15 * u(rng);
    p.rabi_freq = u(rng) < 0.2 ? 0.0 : two_pi * 100e3 * u(rng);
    p.detuning = two_pi * 40e3 * (u(rng) - 0.5);
    p.phase = two_pi * u(rng);
    p.light_shift = two_pi * 2e3 * (u(rng) - 0.5);
    p.duration = 20e-6 * u(rng);
    out.push_back(p);
  }
  return out;
}

QuantumState random_state(std::mt19937_64& rng, int n_max) {
  const int d = 2 * (n_max + 1);
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix a(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) a(i, j) = {g(rng), g(rng)};
  Matrix rho = a * a.adjoint();
  rho /= rho.trace().real();
  return QuantumState(rho, n_max);
}

} // namespace

TEST_CASE("Hamiltonian matches the independent construction") {
  std::mt19937_64 rng(3);
  for (const auto& p : random_sequence(rng, 30))
    CHECK((pulse_hamiltonian(p, 4) - oracle::hamiltonian(p, 4)).norm() < 1e-9 * (1 + oracle::hamiltonian(p, 4).norm()));
}

TEST_CASE("integrator agrees with the dense Liouvillian propagator") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  IntegratorOptions ode;
  ode.exact_unitary = false;
  for (int trial = 0; trial < 20; ++trial) {
    NoiseModel noise;
    noise.spontaneous_decay_rate = trial % 2 ? 1.0 / (300e-6 * (0.2 + u(rng))) : 0.0;
    noise.laser_dephasing_rate = trial % 3 ? 5e3 * u(rng) : 0.0;
    const auto pulses = random_sequence(rng, 1 + trial % 5);
    const auto s0 = random_state(rng, 5);
    const auto ref = oracle::propagate(s0.density_matrix(), pulses, noise, 5);
    const auto got = evolve(s0, pulses, noise, ode);
    CHECK(oracle::trace_distance(got.density_matrix(), ref) < 1e-7);
    if (noise.spontaneous_decay_rate == 0 && noise.laser_dephasing_rate == 0) {
      const auto exact = evolve(s0, pulses, noise);
      CHECK(oracle::trace_distance(exact.density_matrix(), ref) < 1e-9);
    }
  }
}

TEST_CASE("evolution preserves trace, hermiticity and positivity") {
  std::mt19937_64 rng(5);
  NoiseModel noise;
  noise.spontaneous_decay_rate = 1.0 / 300e-6;
  noise.laser_dephasing_rate = 2e3;
  for (int trial = 0; trial < 10; ++trial) {
    const auto out = evolve(random_state(rng, 3), random_sequence(rng, 3), noise);
    CHECK_NOTHROW(out.check_invariants());
    CHECK(out.trace() == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(out.min_eigenvalue() > -1e-9);
  }
}

TEST_CASE("carrier pi pulse and lineshape") {
  const double t = 4e-6, omega = std::numbers::pi / t;
  const Pulse pi = Pulse::carrier(omega, t);
  CHECK(evolve(QuantumState::ground(0), {&pi, 1}, {}).excited_population() == doctest::Approx(1.0).epsilon(1e-10));
  IntegratorOptions ode;
  ode.exact_unitary = false;
  CHECK(evolve(QuantumState::ground(0), {&pi, 1}, {}, ode).excited_population() == doctest::Approx(1.0).epsilon(1e-8));
  for (double d_hz : {-300e3, -50e3, 10e3, 123e3}) {
    const Pulse p = Pulse::carrier(omega, t, two_pi * d_hz);
    CHECK(evolve(QuantumState::ground(0), {&p, 1}, {}).excited_population() ==
          doctest::Approx(oracle::rabi_lineshape(omega, two_pi * d_hz, t)).epsilon(1e-9));
  }
}

TEST_CASE("sideband Rabi frequency scales as eta sqrt(n+1)") {
  const double eta = 0.1, omega = two_pi * 100e3;
  for (int n = 0; n < 4; ++n) {
    const double t = std::numbers::pi / (omega * eta * std::sqrt(n + 1.0));
    const Pulse blue = Pulse::sideband(1, omega, eta, t);
    const auto out = evolve(QuantumState::fock(Internal::ground, n, 6), {&blue, 1}, {});
    CHECK(out.excited_population() == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(out.fock_population(n + 1) == doctest::Approx(1.0).epsilon(1e-9));
  }
  // The red sideband cannot excite the motional ground state.
  const Pulse red = Pulse::sideband(-1, omega, eta, 50e-6);
  CHECK(evolve(QuantumState::ground(4), {&red, 1}, {}).excited_population() < 1e-12);
}

TEST_CASE("decay and truncation diagnostics") {
  NoiseModel noise;
  noise.spontaneous_decay_rate = 1.0 / 300e-6;
  const Pulse w = Pulse::wait(300e-6);
  const auto out = evolve(QuantumState::fock(Internal::excited, 0, 0), {&w, 1}, noise);
  CHECK(out.excited_population() == doctest::Approx(std::exp(-1.0)).epsilon(1e-7));

  EvolveStats stats;
  const Pulse blue = Pulse::sideband(1, two_pi * 100e3, 0.2, 40e-6);
  evolve(QuantumState::thermal(3.0, 4), {&blue, 1}, {}, {}, &stats);
  CHECK(stats.truncation_warning);
  CHECK(QuantumState::fock_cutoff_for(0.05) == 5);
  CHECK(QuantumState::fock_cutoff_for(2.0) == 20);
  CHECK(thermal_tail(0.5, 20) < 1e-9);
}

TEST_CASE("invalid inputs") {
  Pulse p = Pulse::carrier(1e5, -1.0);
  CHECK_THROWS_AS(p.validate(), qls::DomainError);
  NoiseModel n;
  n.spontaneous_decay_rate = -1;
  CHECK_THROWS_AS(n.validate(), qls::DomainError);
  const Pulse ok = Pulse::carrier(1e5, 1e-6);
  CHECK_THROWS_AS(evolve(QuantumState::ground(0), {&ok, 1}, n), qls::DomainError);
  IntegratorOptions tiny;
  tiny.exact_unitary = false;
  tiny.max_steps = 3;
  const Pulse long_pulse = Pulse::carrier(two_pi * 1e6, 1e-3);
  CHECK_THROWS_AS(evolve(QuantumState::ground(0), {&long_pulse, 1}, {}, tiny), qls::NumericalError);
}

TEST_CASE("Ramsey contrast decays at twice the lifetime") {
  NoiseModel noise;
  noise.spontaneous_decay_rate = 1.0 / 299e-6;
  RamseySettings rs;
  const auto waits = linspace(50e-6, 600e-6, 12);
  const auto curve = ramsey_scan(rs, RamseyAxis::wait, waits, QuantumState::ground(0), noise);
  std::vector<double> x, y;
  for (const auto& p : curve) x.push_back(p.x), y.push_back(p.probability);
  const auto fit = qls::metrology::fit_exponential_decay(x, y);
  CHECK(std::abs(fit.params[1] / 598e-6 - 1) < 0.02);
}

TEST_CASE("Ramsey detuning fringe") {
  RamseySettings rs;
  rs.t_pulse = 1e-9 * 50; // short pulses approach the ideal fringe
  rs.t_wait = 200e-6;
  const auto det = linspace(-two_pi * 5e3, two_pi * 5e3, 21);
  const auto c = ramsey_scan(rs, RamseyAxis::detuning, det, QuantumState::ground(0), {});
  for (const auto& p : c) {
    const double ideal = 0.5 * (1 + std::cos(p.x * (rs.t_wait + 4 * rs.t_pulse / std::numbers::pi)));
    CHECK(p.probability == doctest::Approx(ideal).epsilon(1e-3));
  }
  CHECK(parse_ramsey_axis("T") == RamseyAxis::wait);
  CHECK_THROWS_AS(parse_ramsey_axis("bogus"), qls::ConfigError);
}

TEST_CASE("serial and parallel scans are identical") {
  NoiseModel noise;
  noise.spontaneous_decay_rate = 1.0 / 300e-6;
  const Pulse p = Pulse::carrier(two_pi * 50e3, 0);
  const auto t = linspace(0, 40e-6, 17);
  const auto a = rabi_curve(p, t, QuantumState::ground(0), noise, qls::Exec::serial);
  const auto b = rabi_curve(p, t, QuantumState::ground(0), noise, qls::Exec::parallel);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].probability == b[i].probability);
}

TEST_CASE("clock line width follows the sinc^2 oracle") {
  const double t = 1e-3;
  const auto grid = linspace(-2000, 2000, 401);
  const auto c = spectrum_scan(Pulse::carrier(std::numbers::pi / t, t), grid, {}, {});
  const double fwhm = full_width_half_maximum(c);
  CHECK(fwhm == doctest::Approx(oracle::pi_pulse_fwhm_hz(t)).epsilon(2e-3));
  CHECK(fwhm > 700);
  CHECK(fwhm < 1100);
}

TEST_CASE("spectrum places sidebands at the mode frequencies") {
  const double t = 200e-6, eta = 0.06;
  const std::vector<ModeCoupling> modes{{"axial", 900e3, eta, 0.05}};
  const Pulse probe = Pulse::carrier(std::numbers::pi / (eta * t), t);
  const auto c = spectrum_scan(probe, {-900e3, -450e3, 900e3}, modes, {});
  CHECK(c[2].probability > 0.8); // blue sideband pi pulse
  CHECK(c[0].probability < 0.1); // red sideband mostly suppressed near the ground state
  CHECK(c[1].probability < 0.05);
}

TEST_CASE("FWHM and fringe scaling") {
  Curve edge{{0, 1.0}, {1, 0.8}, {2, 0.1}};
  CHECK_THROWS_AS(full_width_half_maximum(edge), qls::DegenerateError);
  Curve tri{{-2, 0}, {-1, 0.5}, {0, 1}, {1, 0.5}, {2, 0}};
  CHECK(full_width_half_maximum(tri) == doctest::Approx(2.0));
  const auto s = scale_fringe(tri, 0.8);
  CHECK(s[2].probability == doctest::Approx(0.9));
  CHECK(s[0].probability == doctest::Approx(0.1));
  CHECK_THROWS_AS(scale_fringe(tri, 1.5), qls::DomainError);
}
