#include "qls/trap/mass_inference.hpp"

#include "qls/errors.hpp"

#include <boost/math/tools/toms748_solve.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>

namespace qls::trap {

MassInference infer_companion_mass(double measured_in_phase_hz, const TrapConfig& trap, double known_mass_u,
                                   double frequency_sigma_hz) {
  if (!(known_mass_u > 0)) throw DomainError("known mass must be > 0");
  constexpr double lo = 1.0;
  constexpr double hi = 300.0;
  // Single-ion axial frequency of the known ion: the spring constant is fixed.
  const double nu1 = trap.axial_freq_hz * std::sqrt(trap.reference_mass_u / known_mass_u);
  auto residual = [&](double m2) { return axial_modes_closed_form(known_mass_u, m2, nu1).first - measured_in_phase_hz; };

  const double f_lo = residual(lo);
  const double f_hi = residual(hi);
  if (f_lo * f_hi > 0)
    throw OutOfRangeError("in-phase frequency " + std::to_string(measured_in_phase_hz) +
                          " Hz has no companion mass in [1, 300] u");

  double mass = f_lo == 0 ? lo : (f_hi == 0 ? hi : 0.0);
  if (mass == 0.0) {
    std::uintmax_t iterations = 200;
    const auto [a, b] = boost::math::tools::toms748_solve(residual, lo, hi, f_lo, f_hi,
                                                          boost::math::tools::eps_tolerance<double>(48), iterations);
    mass = 0.5 * (a + b);
  }

  const double h = 1e-4 * mass;
  const double slope = (residual(mass + h) - residual(mass - h)) / (2 * h);
  const double sigma = std::abs(frequency_sigma_hz / slope);

  MassInference out{mass, static_cast<int>(std::lround(mass)), sigma, false};
  int within = 0;
  const int first = std::max(1, static_cast<int>(std::floor(mass - 2 * sigma)));
  const int last = std::min(400, static_cast<int>(std::ceil(mass + 2 * sigma)));
  for (int m = first; m <= last; ++m)
    if (std::abs(m - mass) <= 2 * sigma) ++within;
  out.ambiguous = within > 1;
  return out;
}

} // namespace qls::trap
