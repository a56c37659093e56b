// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 on any failure.

#include "oracles/lindblad.hpp"
#include "oracles/lineshape.hpp"

#include "qls/atomic/level_scheme.hpp"
#include "qls/atomic/shifts.hpp"
#include "qls/dynamics/scans.hpp"
#include "qls/metrology/budget.hpp"
#include "qls/metrology/campaign.hpp"
#include "qls/metrology/chain.hpp"
#include "qls/metrology/comparison.hpp"
#include "qls/metrology/curve_fit.hpp"
#include "qls/metrology/ramsey_estimator.hpp"
#include "qls/metrology/statistics.hpp"
#include "qls/protocol/shots.hpp"
#include "qls/trap/crystal.hpp"
#include "qls/util/rng.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

namespace {

using namespace qls;
constexpr double two_pi = 2 * std::numbers::pi;

struct Verdict {
  bool pass;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* name, double budget_s, const std::function<Verdict()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Verdict v{false, ""};
  try {
    v = body();
  } catch (const std::exception& e) {
    v = {false, std::string("exception: ") + e.what()};
  }
  const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (dt > budget_s) {
    v.pass = false;
    v.detail += " [over runtime budget]";
  }
  if (!v.pass) ++failures;
  std::printf("%s %2d %-32s %s (%.2f s)\n", v.pass ? "PASS" : "FAIL", id, name, v.detail.c_str(), dt);
  std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

metrology::PhaseCounts counts_of(double p, long n, std::mt19937_64& rng) {
  std::binomial_distribution<long> b(n, std::clamp(p, 0.0, 1.0));
  return {b(rng), n};
}

} // namespace

int main() {
  criterion(1, "mode frequencies", 1.0, [] {
    const auto c = trap::solve_crystal(trap::TrapConfig{}, 40.0, 27.0);
    const double lo = c.mode(trap::Direction::axial, trap::Motion::in_phase).frequency_hz;
    const double hi = c.mode(trap::Direction::axial, trap::Motion::out_of_phase).frequency_hz;
    const double nu1 = 820e3;
    const double trace = std::abs((lo * lo + hi * hi) / (2 * nu1 * nu1 * (1 + 40.0 / 27.0)) - 1);
    const bool ok = std::abs(lo / 888e3 - 1) < 0.01 && std::abs(hi / 1.596e6 - 1) < 0.01 && trace < 1e-9;
    return Verdict{ok, fmt("axial %.2f kHz / %.4f MHz, trace identity error %.1e", lo / 1e3, hi / 1e6, trace)};
  });

  criterion(2, "quadratic Zeeman", 1.0, [] {
    const auto q = atomic::AtomicData::defaults().al_p1_quadratic_zeeman;
    const double s4 = atomic::quadratic_zeeman_shift(q, 4.0);
    const double k = atomic::quadratic_zeeman_curvature(q) * 1e3;
    const bool ok = std::abs(s4 / -2.109 - 1) < 5e-3 && std::abs(k / -263.74 - 1) < 5e-3;
    return Verdict{ok, fmt("%.4f Hz at 4 G, curvature %.2f mHz/G^2", s4, k)};
  });

  criterion(3, "g-factor algebra", 1.0, [] {
    const auto d = atomic::AtomicData::defaults();
    const double g = atomic::g_factor_from_splitting(2.100056e6, d.aluminium.level(atomic::labels::al_ground).g_factor);
    return Verdict{std::abs(g - 0.428132) < 2e-6, fmt("g = %.7f", g)};
  });

  criterion(4, "hypothesis test", 1.0, [] {
    const auto t = metrology::hypothesis_test(40.0, 18, 36.0);
    const double p = metrology::two_sided_p_value(40.0, 17.0);
    const bool ok = std::abs(t.sigma_hz - 17.0) <= 0.1 && p >= 0.015 && p <= 0.025;
    return Verdict{ok, fmt("sigma %.2f Hz, p(40 Hz, 17 Hz) = %.4f", t.sigma_hz, p)};
  });

  criterion(5, "error budget", 1.0, [] {
    auto b = metrology::read_budget_file(QLS_CONFIG_DIR "/table1.csv");
    const auto f0 = metrology::parse_hz_to_mhz("1122842857334711");
    b.frequency_ratio = metrology::frequency_ratio(f0, metrology::parse_hz_to_mhz("411042129776398"));
    const auto out = metrology::error_budget_apply(b, f0);
    const bool ok = std::abs(out.correction_hz - 24.5) <= 0.1 && out.f_corrected_hz == 1122842857334736LL &&
                    std::abs(out.total_uncertainty_hz - 93) <= 1;
    return Verdict{ok, "correction " + fmt("%.3f Hz", out.correction_hz) + ", f = " + std::to_string(out.f_corrected_hz) +
                           fmt(" Hz, u = %.2f Hz", out.total_uncertainty_hz)};
  });

  criterion(6, "Ramsey decay", 30.0, [] {
    dynamics::NoiseModel noise;
    noise.spontaneous_decay_rate = 1.0 / 299e-6;
    const auto waits = dynamics::linspace(50e-6, 600e-6, 12);
    const auto c = dynamics::ramsey_scan(dynamics::RamseySettings{}, dynamics::RamseyAxis::wait, waits,
                                         dynamics::QuantumState::ground(0), noise);
    std::vector<double> x, y;
    for (const auto& p : c) x.push_back(p.x), y.push_back(p.probability);
    const double tau = metrology::fit_exponential_decay(x, y).params[1];
    return Verdict{std::abs(tau / 598e-6 - 1) < 0.02, fmt("tau = %.1f us (2/Gamma = 598 us)", tau * 1e6)};
  });

  criterion(7, "clock-line width", 30.0, [] {
    protocol::ProtocolConfig cfg;
    cfg.double_mapping = true;
    const double t = 1e-3;
    const auto grid = dynamics::linspace(-1500, 1500, 121);
    const auto pts = protocol::clock_scan(cfg, dynamics::Pulse::carrier(std::numbers::pi / t, t), grid, 400, 7);
    dynamics::Curve measured;
    for (const auto& p : pts) measured.push_back({p.detuning_hz, p.change_probability});
    const double w = dynamics::full_width_half_maximum(measured);
    const double oracle_w = oracle::pi_pulse_fwhm_hz(t);
    return Verdict{w >= 700 && w <= 1100, fmt("FWHM %.0f Hz (sinc^2 oracle %.1f Hz)", w, oracle_w)};
  });

  criterion(8, "QLS fidelity chain", 60.0, [] {
    // Only the chain under test is imperfect: motional ground state, perfect other pulses.
    protocol::ProtocolConfig ideal;
    for (auto& [mode, nbar] : ideal.cooling_result_nbar) nbar = 0.0;
    auto cfg = ideal;
    cfg.sideband_pi_fidelity = 0.95;
    const auto r = protocol::run_batch(cfg, protocol::ProbeSpec::fixed(1.0), 10000, 8);
    const double s = std::sqrt(0.95 * 0.05 / 10000);
    bool ok = std::abs(r.p_hat - 0.95) <= 3 * s;
    std::string detail = fmt("p_hat %.4f (0.95 +- %.4f)", r.p_hat, 3 * s);
    for (double p : {0.0, 0.3, 0.7, 1.0}) {
      const auto q = protocol::run_batch(ideal, protocol::ProbeSpec::fixed(p), 10000, 80 + static_cast<int>(10 * p));
      const double sq = std::max(std::sqrt(p * (1 - p) / 10000), 1e-12);
      ok = ok && std::abs(q.p_hat - p) <= 3 * sq;
      detail += fmt("; ideal %.1f -> %.4f", p, q.p_hat);
    }
    return Verdict{ok, detail};
  });

  criterion(9, "dynamics oracle equivalence", 60.0, [] {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    dynamics::IntegratorOptions ode;
    ode.exact_unitary = false;
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
      dynamics::NoiseModel noise;
      noise.spontaneous_decay_rate = u(rng) < 0.5 ? 1.0 / (300e-6 * (0.2 + u(rng))) : 0.0;
      noise.laser_dephasing_rate = u(rng) < 0.5 ? 5e3 * u(rng) : 0.0;
      std::vector<dynamics::Pulse> seq;
      const int n = 1 + static_cast<int>(u(rng) * 5);
      for (int i = 0; i < n; ++i) {
        dynamics::Pulse p;
        p.sideband_order = static_cast<int>(u(rng) * 3) - 1;
        p.lamb_dicke = p.sideband_order == 0 ? 0.0 : 0.05 + 0.15 * u(rng);
        p.rabi_freq = two_pi * 100e3 * u(rng);
        p.detuning = two_pi * 40e3 * (u(rng) - 0.5);
        p.phase = two_pi * u(rng);
        p.duration = 20e-6 * u(rng);
        seq.push_back(p);
      }
      const auto s0 = dynamics::QuantumState::thermal(0.3 + u(rng), 5);
      const auto got = dynamics::evolve(s0, seq, noise, ode);
      const auto ref = oracle::propagate(s0.density_matrix(), seq, noise, 5);
      worst = std::max(worst, oracle::trace_distance(got.density_matrix(), ref));
    }
    return Verdict{worst < 1e-7, fmt("worst trace distance %.2e over 100 sequences", worst)};
  });

  criterion(10, "estimator round-trips", 120.0, [] {
    // (a) Ramsey phase sets forward-simulated through the master equation.
    dynamics::NoiseModel noise;
    noise.spontaneous_decay_rate = 1.0 / 300e-6;
    bool ok = true;
    std::string detail;
    const std::vector<double> phases{0.0, std::numbers::pi / 2, -std::numbers::pi / 2, std::numbers::pi};
    for (double delta : {-20.0, 8.0, 25.0}) {
      dynamics::RamseySettings rs;
      rs.detuning = two_pi * delta;
      const auto c = dynamics::ramsey_scan(rs, dynamics::RamseyAxis::phase, phases, dynamics::QuantumState::ground(0),
                                           noise);
      auto rng = stream_engine(10, static_cast<std::uint64_t>(delta + 100));
      std::vector<double> est;
      for (int i = 0; i < 4000; ++i) {
        metrology::RamseyPhaseSet s{counts_of(c[0].probability, 100, rng), counts_of(c[1].probability, 100, rng),
                                    counts_of(c[2].probability, 100, rng), counts_of(c[3].probability, 100, rng),
                                    rs.t_pulse, rs.t_wait, true};
        est.push_back(metrology::estimate_detuning_contrast(s).detuning_hz);
      }
      const auto m = metrology::mean_std(est);
      // Allowance for the third-order term of the asin form.
      const double th = two_pi * delta * metrology::effective_wait(rs.t_pulse, rs.t_wait);
      const double bias = std::abs(delta) * th * th / 2;
      ok = ok && std::abs(m.mean - delta) < 4 * m.sem + bias;
      detail += fmt("%.0f->%.2f+-%.2f Hz; ", delta, m.mean, m.sem);
    }
    // (b) Synthetic 18-set campaigns.
    metrology::CampaignParams p;
    const auto mc = metrology::campaign_monte_carlo(p, 1000, 10);
    const double spread_err = mc.f0_reported_sigma_hz / std::sqrt(2.0 * (mc.replicates - 1));
    ok = ok && std::abs(mc.f0_reported_sigma_hz - 36) < 1 && std::abs(mc.f0_spread_hz - 36) < 4 * spread_err + 0.5;
    ok = ok && std::abs(mc.chi2_mean - mc.dof) < 4 * std::sqrt(2.0 * mc.dof / mc.replicates);
    detail += fmt("campaign sigma(f0) %.1f Hz (spread %.1f Hz), mean chi2 %.2f / dof %.0f", mc.f0_reported_sigma_hz,
                  mc.f0_spread_hz, mc.chi2_mean, mc.dof);
    return Verdict{ok, detail};
  });

  criterion(11, "lab-comparison synthesis", 60.0, [] {
    const auto s = metrology::synthesize_lab_comparison({}, 5);
    const auto r = metrology::comparison_histogram(s.a, s.b, 60.0);
    const bool ok = std::abs(r.mean_diff_hz - 1.3) <= 0.2 && r.width_hz >= 2.0 && r.width_hz <= 3.0;
    return Verdict{ok, fmt("offset %.3f Hz, Gaussian centre %.3f Hz, width %.3f Hz", r.mean_diff_hz, r.centre_hz,
                           r.width_hz)};
  });

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
