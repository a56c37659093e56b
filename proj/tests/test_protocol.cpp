#include <doctest.h>

#include "oracles/angular.hpp"
#include "oracles/lineshape.hpp"
#include "oracles/pumping_mc.hpp"

#include "qls/errors.hpp"
#include "qls/protocol/pumping.hpp"
#include "qls/protocol/shots.hpp"
#include "qls/util/rng.hpp"

#include <json.hpp>

#include <cmath>
#include <numbers>

using namespace qls::protocol;

namespace {

// Perfect pulses on a motional ground state.
ProtocolConfig ideal() {
  ProtocolConfig c;
  for (auto& [mode, nbar] : c.cooling_result_nbar) nbar = 0.0;
  return c;
}

} // namespace

TEST_CASE("decay branching equals squared Racah Clebsch-Gordan coefficients") {
  for (int me = -7; me <= 7; me += 2) {
    double sum = 0.0;
    for (int mg = -5; mg <= 5; mg += 2) {
      const double cg = oracle::clebsch_gordan(5, mg, 2, me - mg, 7, me);
      CHECK(decay_branching(me, mg) == doctest::Approx(cg * cg).epsilon(1e-12));
      sum += decay_branching(me, mg);
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK(decay_branching(7, 5) == doctest::Approx(1.0));
  CHECK(decay_branching(7, 1) == 0.0);
}

TEST_CASE("optical pumping conserves population and approaches the stretched state") {
  PumpConfig cfg;
  const auto start = PumpState::uniform_ground();
  double previous = 0.0;
  for (int reps : {1, 5, 10, 20}) {
    cfg.repetitions = reps;
    const auto s = optical_pump(start, cfg);
    CHECK(s.total() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_NOTHROW(s.validate());
    CHECK(s.ground_population(5) > previous);
    previous = s.ground_population(5);
  }
  cfg.repetitions = 10;
  CHECK(optical_pump(start, cfg).ground_population(5) == doctest::Approx(0.934978).epsilon(1e-5));
  // Mirror symmetry.
  cfg.target_twice_m = -5;
  CHECK(optical_pump(start, cfg).ground_population(-5) == doctest::Approx(0.934978).epsilon(1e-5));
  // The stretched state is a fixed point.
  cfg.target_twice_m = 5;
  CHECK(optical_pump(PumpState::stretched(5), cfg).ground_population(5) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("rate model agrees with single-ion Monte Carlo") {
  PumpConfig cfg;
  const int ions = 40000;
  const double mc = oracle::pump_monte_carlo(cfg.repetitions, cfg.wait, cfg.lifetime, 5, ions, 77);
  const double model = optical_pump(PumpState::uniform_ground(), cfg).ground_population(5);
  const double sigma = std::sqrt(model * (1 - model) / ions);
  CHECK(std::abs(mc - model) < 5 * sigma);
}

TEST_CASE("pump config validation") {
  PumpConfig cfg;
  cfg.target_twice_m = 3;
  CHECK_THROWS(cfg.validate());
  CHECK_THROWS_AS(PumpState::stretched(1), qls::DomainError);
}

TEST_CASE("ideal readout reproduces the probe probability") {
  const auto cfg = ideal();
  for (double p : {0.0, 0.25, 0.5, 1.0}) {
    const auto r = run_batch(cfg, ProbeSpec::fixed(p), 4000, 42);
    if (p == 0.0 || p == 1.0) CHECK(r.p_hat == p);
    else CHECK(std::abs(r.p_hat - p) < 4 * std::sqrt(p * (1 - p) / 4000));
  }
}

TEST_CASE("sideband infidelity limits detected excitation") {
  auto cfg = ideal();
  cfg.sideband_pi_fidelity = 0.95;
  const auto r = run_batch(cfg, ProbeSpec::fixed(1.0), 10000, 9);
  CHECK(std::abs(r.p_hat - 0.95) < 3 * std::sqrt(0.95 * 0.05 / 10000));
  CHECK(r.sigma_qpn == doctest::Approx(std::sqrt(r.p_hat * (1 - r.p_hat) / 10000)));
}

TEST_CASE("detection error is symmetric") {
  auto cfg = ideal();
  cfg.detection_error = 0.1;
  const auto dark = run_batch(cfg, ProbeSpec::fixed(1.0), 20000, 1);
  const auto bright = run_batch(cfg, ProbeSpec::fixed(0.0), 20000, 2);
  const double s = std::sqrt(0.09 / 20000);
  CHECK(std::abs(dark.p_hat - 0.9) < 4 * s);
  CHECK(std::abs(bright.p_hat - 0.1) < 4 * s);
}

TEST_CASE("batches are reproducible and schedule independent") {
  ProtocolConfig cfg;
  cfg.sideband_pi_fidelity = 0.9;
  cfg.mapping_pi_fidelity = 0.97;
  const auto a = run_batch(cfg, ProbeSpec::fixed(0.4), 3000, 123, qls::Exec::serial);
  const auto b = run_batch(cfg, ProbeSpec::fixed(0.4), 3000, 123, qls::Exec::parallel);
  CHECK(a.outcomes == b.outcomes);
  const auto c = run_batch(cfg, ProbeSpec::fixed(0.4), 3000, 124, qls::Exec::serial);
  CHECK(a.outcomes != c.outcomes);
  // A single shot is a pure function of its stream.
  auto r1 = qls::stream_engine(123, 17), r2 = qls::stream_engine(123, 17);
  CHECK(run_shot(cfg, ProbeSpec::fixed(0.4), r1, 17).outcome == a.outcomes[17]);
  CHECK(run_shot(cfg, ProbeSpec::fixed(0.4), r2, 17).outcome == a.outcomes[17]);
}

TEST_CASE("pulse probes use the dynamics") {
  const double t = 4e-6;
  const auto probe = ProbeSpec::sequence({qls::dynamics::Pulse::carrier(std::numbers::pi / t, t)}, {});
  CHECK(probe.excitation_probability() == doctest::Approx(1.0).epsilon(1e-9));
  const auto half = ProbeSpec::sequence({qls::dynamics::Pulse::carrier(std::numbers::pi / (2 * t), t)}, {});
  CHECK(half.excitation_probability() == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("trace records the protocol steps") {
  ProtocolConfig cfg;
  cfg.record_trace = true;
  auto rng = qls::stream_engine(1, 0);
  const auto shot = run_shot_with_probability(cfg, 1.0, rng);
  CHECK(shot.step_trace.size() >= 3);
  CHECK(shot.detected_excited());
}

TEST_CASE("double mapping false change rate") {
  for (double eps : {0.05, 0.1, 0.2}) {
    auto cfg = ideal();
    cfg.double_mapping = true;
    cfg.detection_error = eps;
    ClockTracker tracker;
    auto rng = qls::stream_engine(5, 0);
    const int n = 40000;
    int changes = 0;
    run_clock_shot(cfg, 0.0, tracker, rng); // settles the first decision
    for (int i = 0; i < n; ++i) changes += run_clock_shot(cfg, 0.0, tracker, rng).state_change;
    const double expected = double_mapping_false_change_rate(eps);
    CHECK(expected == doctest::Approx(2 * eps * eps * (1 - eps) * (1 - eps) / (eps * eps + (1 - eps) * (1 - eps))));
    CHECK(std::abs(static_cast<double>(changes) / n - expected) < 5 * std::sqrt(expected / n) + 1e-4);
  }
  ProtocolConfig single;
  ClockTracker t;
  auto rng = qls::stream_engine(0, 0);
  CHECK_THROWS_AS(run_clock_shot(single, 0.5, t, rng), qls::ConfigError);
  CHECK_THROWS_AS(run_shot(single, ProbeSpec::fixed(0.5, true), rng), qls::ConfigError);
}

TEST_CASE("clock scan follows the probe lineshape with perfect readout") {
  auto cfg = ideal();
  cfg.double_mapping = true;
  const double t = 1e-3;
  const auto pulse = qls::dynamics::Pulse::carrier(std::numbers::pi / t, t);
  // 500 sqrt(3) Hz is the first zero of the pi-pulse lineshape.
  const auto pts = clock_scan(cfg, pulse, {0.0, 400.0, 500 * std::sqrt(3.0), 1500.0}, 2000, 3);
  CHECK(pts[0].change_probability == 1.0);
  CHECK(pts[2].excitation_probability < 1e-9);
  CHECK(pts[2].change_probability == 0.0);
  for (const auto& p : pts) {
    const double oracle = oracle::rabi_lineshape(std::numbers::pi / t, 2 * std::numbers::pi * p.detuning_hz, t);
    CHECK(p.excitation_probability == doctest::Approx(oracle).epsilon(1e-9));
    CHECK(std::abs(p.change_probability - oracle) < 5 * std::sqrt(oracle * (1 - oracle) / 2000) + 1e-9);
  }
}

TEST_CASE("protocol config parsing") {
  auto doc = nlohmann::json::parse(R"({"sideband_pi_fidelity": 0.95, "target_zeeman_state": "-5/2",
                                       "cooling_result_nbar": {"axial-out-of-phase": 0.1}})");
  const auto cfg = load_protocol_config(qls::ConfigSection(doc, "protocol"));
  CHECK(cfg.sideband_pi_fidelity == 0.95);
  CHECK(cfg.target_twice_m == -5);
  CHECK(cfg.transfer_nbar() == doctest::Approx(0.1));
  auto bad = nlohmann::json::parse(R"({"sideband_pi_fidelty": 0.95})");
  CHECK_THROWS_AS(load_protocol_config(qls::ConfigSection(bad, "protocol")), qls::ConfigError);
  auto range = nlohmann::json::parse(R"({"detection_error": 1.5})");
  CHECK_THROWS_AS(load_protocol_config(qls::ConfigSection(range, "protocol")), qls::ConfigError);
}
