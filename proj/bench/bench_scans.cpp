// Serial reference against the OpenMP kernels: wall time and bitwise agreement.

#include "qls/dynamics/scans.hpp"
#include "qls/metrology/campaign.hpp"
#include "qls/protocol/shots.hpp"

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>

namespace {

constexpr double two_pi = 2 * std::numbers::pi;

template <class F>
double seconds(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool same(const qls::dynamics::Curve& a, const qls::dynamics::Curve& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].x != b[i].x || a[i].probability != b[i].probability) return false;
  return true;
}

int mismatches = 0;

void report(const char* name, double serial, double parallel, bool equal) {
  if (!equal) ++mismatches;
  std::printf("%-28s serial %8.3f s  parallel %8.3f s  speedup %5.2fx  %s\n", name, serial, parallel,
              parallel > 0 ? serial / parallel : 0.0, equal ? "identical" : "MISMATCH");
}

} // namespace

int main(int argc, char** argv) {
  const int scale = argc > 1 ? std::max(1, std::atoi(argv[1])) : 1;
  std::printf("threads: %d, scale %d\n", omp_get_max_threads(), scale);
  using namespace qls;

  {
    dynamics::NoiseModel noise;
    noise.spontaneous_decay_rate = 1.0 / 300e-6;
    noise.laser_dephasing_rate = 500.0;
    const auto grid = dynamics::linspace(-two_pi * 5e3, two_pi * 5e3, 101 * scale);
    dynamics::Curve a, b;
    const double ts = seconds([&] {
      a = dynamics::ramsey_scan({}, dynamics::RamseyAxis::detuning, grid, dynamics::QuantumState::ground(0), noise,
                                Exec::serial);
    });
    const double tp = seconds([&] {
      b = dynamics::ramsey_scan({}, dynamics::RamseyAxis::detuning, grid, dynamics::QuantumState::ground(0), noise,
                                Exec::parallel);
    });
    report("ramsey detuning scan", ts, tp, same(a, b));
  }
  {
    dynamics::NoiseModel noise;
    noise.spontaneous_decay_rate = 1.0 / 300e-6;
    const auto blue = dynamics::Pulse::sideband(1, two_pi * 250e3, 0.06, 0);
    const auto t = dynamics::linspace(0, 200e-6, 60 * scale);
    const auto s0 = dynamics::QuantumState::thermal(0.5, dynamics::QuantumState::fock_cutoff_for(0.5));
    dynamics::Curve a, b;
    const double ts = seconds([&] { a = dynamics::rabi_curve(blue, t, s0, noise, Exec::serial); });
    const double tp = seconds([&] { b = dynamics::rabi_curve(blue, t, s0, noise, Exec::parallel); });
    report("thermal sideband flopping", ts, tp, same(a, b));
  }
  {
    protocol::ProtocolConfig cfg;
    cfg.sideband_pi_fidelity = 0.95;
    const auto probe = protocol::ProbeSpec::fixed(0.5);
    const std::size_t n = 200000 * static_cast<std::size_t>(scale);
    protocol::BatchResult a, b;
    const double ts = seconds([&] { a = protocol::run_batch(cfg, probe, n, 1, Exec::serial); });
    const double tp = seconds([&] { b = protocol::run_batch(cfg, probe, n, 1, Exec::parallel); });
    report("QLS shot batch", ts, tp, a.outcomes == b.outcomes);
  }
  {
    metrology::CampaignParams p;
    const std::size_t reps = 20000 * static_cast<std::size_t>(scale);
    metrology::CampaignMonteCarlo a, b;
    const double ts = seconds([&] { a = metrology::campaign_monte_carlo(p, reps, 2, Exec::serial); });
    const double tp = seconds([&] { b = metrology::campaign_monte_carlo(p, reps, 2, Exec::parallel); });
    report("campaign Monte Carlo", ts, tp, a.f0_mean_hz == b.f0_mean_hz && a.f0_spread_hz == b.f0_spread_hz);
  }
  return mismatches == 0 ? 0 : 1;
}
