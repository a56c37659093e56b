#include "qls/metrology/zeeman_fit.hpp"

#include "qls/atomic/constants.hpp"
#include "qls/atomic/shifts.hpp"
#include "qls/errors.hpp"

#include <cmath>
#include <tuple>

namespace qls::metrology {

void MeasurementSet::validate() const {
  if (s_pm != 1 && s_pm != -1) throw ConfigError("set " + set_id + ": s_pm must be +1 or -1");
  if (!(al_sigma_hz > 0)) throw ConfigError("set " + set_id + ": Al+ sigma must be > 0");
  if (!(b_gauss > 0)) throw ConfigError("set " + set_id + ": field must be > 0");
  if (!(b_sigma_gauss >= 0)) throw ConfigError("set " + set_id + ": field sigma must be >= 0");
  if (!std::isfinite(al_detuning_hz)) throw ConfigError("set " + set_id + ": Al+ detuning must be finite");
}

FieldAndDrift field_and_drift_from_pair(double f_plus_hz, double f_minus_hz, double sigma_hz,
                                        const atomic::LevelScheme& calcium) {
  if (!std::isfinite(f_plus_hz) || !std::isfinite(f_minus_hz) || !(sigma_hz >= 0))
    throw DomainError("pair detunings must be finite and sigma >= 0");
  const double k = atomic::ca_pair_splitting_per_gauss(calcium);
  FieldAndDrift r;
  r.drift_hz = 0.5 * (f_plus_hz + f_minus_hz);
  r.drift_sigma_hz = sigma_hz / std::sqrt(2.0);
  r.b_gauss = (f_plus_hz - f_minus_hz) / k;
  r.b_sigma_gauss = std::sqrt(2.0) * sigma_hz / std::abs(k);
  if (!(r.b_gauss > 0))
    throw DomainError("inferred field is not positive; check the sign convention of the pair detunings");
  return r;
}

std::int64_t ZeemanFit::f0_absolute_mhz() const {
  return anchor_mhz + static_cast<std::int64_t>(std::llround(f0_offset_hz * 1000.0));
}

ZeemanFit fit_zeeman_line(const std::vector<MeasurementSet>& sets, std::int64_t anchor_mhz) {
  if (sets.size() < 2) throw InsufficientDataError("Zeeman fit needs at least two sets");
  for (const auto& s : sets) s.validate();
  const std::size_t n = sets.size();

  Eigen::MatrixXd a(n, 2);
  Eigen::VectorXd y(n);
  for (std::size_t i = 0; i < n; ++i) {
    a(i, 0) = 1.0;
    a(i, 1) = sets[i].s_pm * sets[i].b_gauss;
    y(i) = sets[i].al_detuning_hz;
  }
  const double x_span = a.col(1).maxCoeff() - a.col(1).minCoeff();
  if (!(x_span > 1e-12 * a.col(1).cwiseAbs().maxCoeff())) throw DegenerateError("all s_pm B values are equal");

  auto solve = [&](double slope_for_field) {
    Eigen::VectorXd w(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double field_term = slope_for_field * sets[i].b_sigma_gauss;
      w(i) = 1.0 / (sets[i].al_sigma_hz * sets[i].al_sigma_hz + field_term * field_term);
    }
    const Eigen::Matrix2d normal = a.transpose() * w.asDiagonal() * a;
    Eigen::FullPivLU<Eigen::Matrix2d> lu(normal);
    if (!lu.isInvertible()) throw DegenerateError("Zeeman fit design matrix is rank deficient");
    const Eigen::Matrix2d cov = lu.inverse();
    const Eigen::Vector2d beta = cov * (a.transpose() * w.asDiagonal() * y);
    return std::make_tuple(beta, cov, w);
  };

  auto [beta0, cov0, w0] = solve(0.0);
  auto [beta, cov, w] = solve(beta0(1));

  ZeemanFit fit;
  fit.anchor_mhz = anchor_mhz;
  fit.f0_offset_hz = beta(0);
  fit.slope_hz_per_gauss = beta(1);
  fit.covariance = cov;
  fit.f0_sigma_hz = std::sqrt(cov(0, 0));
  fit.slope_sigma = std::sqrt(cov(1, 1));
  fit.dof = static_cast<int>(n) - 2;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y(i) - a.row(i).dot(beta);
    fit.chi2 += r * r * w(i);
    fit.residuals.push_back({sets[i].set_id, sets[i].s_pm, sets[i].b_gauss, r, 1.0 / std::sqrt(w(i))});
  }
  return fit;
}

GFactor g_factor_from_fit(const ZeemanFit& fit, double g_ground) {
  GFactor g;
  // The fitted slope is the stretched-transition coefficient per unit s_pm B.
  g.g = atomic::g_factor_from_splitting(fit.slope_hz_per_gauss, g_ground);
  g.sigma = (2.0 / 7.0) * fit.slope_sigma / atomic::constants().bohr_magneton_over_h;
  return g;
}

} // namespace qls::metrology
