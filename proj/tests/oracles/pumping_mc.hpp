#pragma once

// Single-ion Monte Carlo of the pumping sequence: every ion occupies one
// sublevel, pi-pulses swap the addressed pair and the excited state decays
// with Clebsch-Gordan branching.

#include "angular.hpp"

#include <cmath>
#include <random>

namespace oracle {

struct PumpSample {
  bool excited = false;
  int twice_m = 0;
};

inline double pump_monte_carlo(int repetitions, double wait, double lifetime, int target, int ions,
                               std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int dir = target > 0 ? 1 : -1;
  const double p_decay = 1.0 - std::exp(-wait / lifetime);
  int hits = 0;
  for (int ion = 0; ion < ions; ++ion) {
    PumpSample s{false, -5 + 2 * static_cast<int>(u(rng) * 6)};
    for (int rep = 0; rep < repetitions; ++rep)
      for (int k = 0; k < 5; ++k) {
        const int mg = -dir * 5 + dir * 2 * k;
        const int me = mg + 2 * dir;
        if (!s.excited && s.twice_m == mg) s = {true, me};
        else if (s.excited && s.twice_m == me) s = {false, mg};
        if (s.excited && u(rng) < p_decay) {
          double r = u(rng);
          int to = s.twice_m;
          for (int q = -2; q <= 2; q += 2) {
            const int mg2 = s.twice_m + q;
            if (std::abs(mg2) > 5) continue;
            const double cg = clebsch_gordan(5, mg2, 2, -q, 7, s.twice_m);
            to = mg2;
            r -= cg * cg;
            if (r < 0) break;
          }
          s = {false, to};
        }
      }
    if (!s.excited && s.twice_m == target) ++hits;
  }
  return static_cast<double>(hits) / ions;
}

} // namespace oracle
