#include "qls/protocol/pumping.hpp"

#include "qls/errors.hpp"

#include <gsl/gsl_sf_coupling.h>

#include <cmath>
#include <cstdlib>

namespace qls::protocol {

namespace {

// <j1 m1; j2 m2 | J M> with all arguments doubled.
double clebsch_gordan(int j1, int m1, int j2, int m2, int J, int M) {
  if (m1 + m2 != M) return 0.0;
  const int phase_twice = j1 - j2 + M;
  const double sign = std::abs(phase_twice / 2) % 2 == 0 ? 1.0 : -1.0;
  return sign * std::sqrt(J + 1.0) * gsl_sf_coupling_3j(j1, j2, J, m1, m2, -M);
}

void decay(PumpState& s, double fraction) {
  for (int me = -7; me <= 7; me += 2) {
    double& pe = s.excited[PumpState::excited_index(me)];
    const double lost = pe * fraction;
    if (lost == 0.0) continue;
    pe -= lost;
    for (int mg = me - 2; mg <= me + 2; mg += 2)
      if (std::abs(mg) <= 5) s.ground[PumpState::ground_index(mg)] += lost * decay_branching(me, mg);
  }
}

} // namespace

PumpState PumpState::uniform_ground() {
  PumpState s;
  s.ground.fill(1.0 / 6.0);
  return s;
}

PumpState PumpState::stretched(int target_twice_m) {
  if (std::abs(target_twice_m) != 5) throw DomainError("stretched target must be m = +5/2 or -5/2");
  PumpState s;
  s.ground[ground_index(target_twice_m)] = 1.0;
  return s;
}

double PumpState::total() const {
  double sum = 0.0;
  for (double p : ground) sum += p;
  for (double p : excited) sum += p;
  return sum;
}

void PumpState::validate(double tol) const {
  for (double p : ground)
    if (!(p >= -tol)) throw NumericalError("negative ground-state population");
  for (double p : excited)
    if (!(p >= -tol)) throw NumericalError("negative excited-state population");
  if (std::abs(total() - 1.0) > tol) throw NumericalError("pump populations do not sum to 1");
}

void PumpConfig::validate() const {
  if (repetitions < 0) throw ConfigError("pump repetitions must be >= 0");
  if (!(wait >= 0)) throw ConfigError("pump wait must be >= 0");
  if (!(lifetime > 0)) throw ConfigError("pump lifetime must be > 0");
  if (std::abs(target_twice_m) != 5) throw ConfigError("pump target must be +5/2 or -5/2");
  if (!(pulse_transfer >= 0 && pulse_transfer <= 1)) throw ConfigError("pump pulse transfer must lie in [0, 1]");
}

double decay_branching(int twice_m_excited, int twice_m_ground) {
  const double cg = clebsch_gordan(5, twice_m_ground, 2, twice_m_excited - twice_m_ground, 7, twice_m_excited);
  return std::abs(twice_m_excited - twice_m_ground) > 2 ? 0.0 : cg * cg;
}

PumpState optical_pump(const PumpState& state, const PumpConfig& config) {
  config.validate();
  state.validate();
  PumpState s = state;
  const int dir = config.target_twice_m > 0 ? 1 : -1;
  const double decayed = 1.0 - std::exp(-config.wait / config.lifetime);
  for (int rep = 0; rep < config.repetitions; ++rep) {
    // Ground m driven to m + dir; five transitions from the far end inwards.
    for (int k = 0; k < 5; ++k) {
      const int mg = -dir * 5 + dir * 2 * k;
      const int me = mg + 2 * dir;
      double& pg = s.ground[PumpState::ground_index(mg)];
      double& pe = s.excited[PumpState::excited_index(me)];
      const double moved = config.pulse_transfer * (pg - pe);
      pg -= moved;
      pe += moved;
      decay(s, decayed);
    }
  }
  return s;
}

} // namespace qls::protocol
