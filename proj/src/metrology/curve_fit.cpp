#include "qls/metrology/curve_fit.hpp"

#include "qls/errors.hpp"

#include <unsupported/Eigen/LevenbergMarquardt>
#include <unsupported/Eigen/NumericalDiff>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace qls::metrology {

namespace {

struct Residuals {
  using Scalar = double;
  using InputType = Eigen::VectorXd;
  using ValueType = Eigen::VectorXd;
  using JacobianType = Eigen::MatrixXd;
  using QRSolver = Eigen::ColPivHouseholderQR<JacobianType>;
  enum { InputsAtCompileTime = Eigen::Dynamic, ValuesAtCompileTime = Eigen::Dynamic };

  const Model* model;
  const std::vector<double>* x;
  const std::vector<double>* y;
  std::vector<double> weight;
  int n_params;

  int inputs() const { return n_params; }
  int values() const { return static_cast<int>(x->size()); }

  int operator()(const Eigen::VectorXd& p, Eigen::VectorXd& r) const {
    for (std::size_t i = 0; i < x->size(); ++i) r[i] = ((*model)((*x)[i], p) - (*y)[i]) * weight[i];
    return 0;
  }
};

} // namespace

FitResult fit_model(const Model& model, const std::vector<double>& x, const std::vector<double>& y,
                    const std::vector<double>& sigmas, Eigen::VectorXd initial) {
  if (x.size() != y.size() || (!sigmas.empty() && sigmas.size() != x.size()))
    throw DomainError("fit inputs must have equal lengths");
  const int n_params = static_cast<int>(initial.size());
  if (static_cast<int>(x.size()) <= n_params)
    throw InsufficientDataError("fit needs more points than parameters");

  Residuals f{&model, &x, &y, std::vector<double>(x.size(), 1.0), n_params};
  if (!sigmas.empty())
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (!(sigmas[i] > 0)) throw DomainError("fit uncertainties must be > 0");
      f.weight[i] = 1.0 / sigmas[i];
    }

  Eigen::NumericalDiff<Residuals, Eigen::Central> diff(f);
  Eigen::LevenbergMarquardt<Eigen::NumericalDiff<Residuals, Eigen::Central>> lm(diff);
  lm.setXtol(1e-14);
  lm.setFtol(1e-14);
  lm.setMaxfev(4000 * (n_params + 1));
  const auto status = lm.minimize(initial);
  if (status == Eigen::LevenbergMarquardtSpace::ImproperInputParameters ||
      status == Eigen::LevenbergMarquardtSpace::TooManyFunctionEvaluation)
    throw NumericalError("least-squares fit did not converge (status " + std::to_string(int(status)) + ")");
  if (!initial.allFinite()) throw NumericalError("least-squares fit produced non-finite parameters");

  FitResult r;
  r.params = initial;
  r.iterations = static_cast<int>(lm.iterations());
  Eigen::VectorXd res(x.size());
  f(initial, res);
  r.chi2 = res.squaredNorm();
  r.dof = static_cast<int>(x.size()) - n_params;

  Eigen::MatrixXd jac(x.size(), n_params);
  diff.df(initial, jac);
  // Equilibrate columns so the rank test does not depend on parameter units.
  Eigen::VectorXd scale = jac.colwise().norm().transpose();
  if ((scale.array() == 0.0).any()) throw DegenerateError("fit has a parameter the data do not constrain");
  scale = scale.cwiseInverse();
  const Eigen::MatrixXd scaled = jac * scale.asDiagonal();
  Eigen::FullPivLU<Eigen::MatrixXd> lu(scaled.transpose() * scaled);
  lu.setThreshold(1e-12);
  if (!lu.isInvertible()) throw DegenerateError("fit normal matrix is singular");
  r.covariance = scale.asDiagonal() * lu.inverse() * scale.asDiagonal();
  if (sigmas.empty()) r.covariance *= r.chi2 / r.dof;
  r.sigmas = r.covariance.diagonal().cwiseMax(0.0).cwiseSqrt();
  return r;
}

FitResult fit_damped_sine(const std::vector<double>& t, const std::vector<double>& y, double omega_guess) {
  if (t.size() < 6) throw InsufficientDataError("damped sine fit needs at least six points");
  const double span = t.back() - t.front();
  const double rate0 = span > 0 ? 1.0 / span : 0.0;
  const auto n = static_cast<Eigen::Index>(t.size());
  const Eigen::VectorXd yv = Eigen::Map<const Eigen::VectorXd>(y.data(), n);

  // Coarse scan of omega around the guess; offset, amplitude and phase are
  // linear for fixed omega and rate, so each candidate is one small solve.
  Eigen::VectorXd best(5);
  double best_cost = std::numeric_limits<double>::infinity();
  for (int k = 0; k <= 120; ++k) {
    const double w = omega_guess * (0.6 + 0.8 * k / 120.0);
    Eigen::MatrixXd basis(n, 3);
    for (Eigen::Index i = 0; i < n; ++i) {
      const double env = std::exp(-rate0 * t[static_cast<std::size_t>(i)]);
      basis(i, 0) = 1.0;
      basis(i, 1) = env * std::cos(w * t[static_cast<std::size_t>(i)]);
      basis(i, 2) = env * std::sin(w * t[static_cast<std::size_t>(i)]);
    }
    const Eigen::Vector3d c = basis.colPivHouseholderQr().solve(yv);
    const double cost = (basis * c - yv).squaredNorm();
    if (cost < best_cost) {
      best_cost = cost;
      best << c[0], std::hypot(c[1], c[2]), rate0, w, std::atan2(-c[2], c[1]);
    }
  }
  const Model m = [](double x, const Eigen::VectorXd& p) { return p[0] + p[1] * std::exp(-p[2] * x) * std::cos(p[3] * x + p[4]); };
  return fit_model(m, t, y, {}, best);
}

FitResult fit_exponential_decay(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() < 3) throw InsufficientDataError("exponential fit needs at least three points");
  // Log-linear start.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (y[i] > 0) {
      const double ly = std::log(y[i]);
      sx += x[i], sy += ly, sxx += x[i] * x[i], sxy += x[i] * ly, ++n;
    }
  double slope = -1.0 / (x.back() - x.front() + 1e-300), intercept = 0.0;
  if (n >= 2 && n * sxx - sx * sx != 0) {
    slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    intercept = (sy - slope * sx) / n;
  }
  Eigen::VectorXd p0(2);
  p0 << std::exp(intercept), slope < 0 ? -1.0 / slope : (x.back() - x.front());
  const Model m = [](double xv, const Eigen::VectorXd& p) { return p[0] * std::exp(-xv / p[1]); };
  return fit_model(m, x, y, {}, p0);
}

FitResult fit_gaussian(const std::vector<double>& x, const std::vector<double>& y, const std::vector<double>& sigmas) {
  if (x.size() < 4) throw InsufficientDataError("gaussian fit needs at least four points");
  double w = 0, m1 = 0, m2 = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double yi = std::max(y[i], 0.0);
    w += yi, m1 += yi * x[i], m2 += yi * x[i] * x[i];
  }
  if (!(w > 0)) throw DegenerateError("gaussian fit needs a positive histogram");
  const double centre = m1 / w;
  const double width = std::sqrt(std::max(m2 / w - centre * centre, 1e-24));
  Eigen::VectorXd p0(3);
  p0 << *std::max_element(y.begin(), y.end()), centre, width;
  const Model m = [](double xv, const Eigen::VectorXd& p) {
    const double z = (xv - p[1]) / p[2];
    return p[0] * std::exp(-0.5 * z * z);
  };
  FitResult r = fit_model(m, x, y, sigmas, p0);
  r.params[2] = std::abs(r.params[2]);
  return r;
}

} // namespace qls::metrology
