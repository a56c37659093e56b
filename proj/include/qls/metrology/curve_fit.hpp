#pragma once

#include <Eigen/Dense>

#include <functional>
#include <vector>

namespace qls::metrology {

struct FitResult {
  Eigen::VectorXd params;
  Eigen::VectorXd sigmas;
  Eigen::MatrixXd covariance;
  double chi2 = 0.0;
  int dof = 0;
  int iterations = 0;
};

using Model = std::function<double(double x, const Eigen::VectorXd& params)>;

// Levenberg-Marquardt least squares of y against model(x). With sigmas the
// covariance is absolute; without them it is rescaled by chi2/dof.
// Throws DegenerateError on a singular normal matrix and NumericalError when
// the minimiser does not converge.
FitResult fit_model(const Model& model, const std::vector<double>& x, const std::vector<double>& y,
                    const std::vector<double>& sigmas, Eigen::VectorXd initial);

// offset + amplitude exp(-rate t) cos(omega t + phase); params in that order.
FitResult fit_damped_sine(const std::vector<double>& t, const std::vector<double>& y, double omega_guess);

// amplitude exp(-x / tau); params {amplitude, tau}.
FitResult fit_exponential_decay(const std::vector<double>& x, const std::vector<double>& y);

// amplitude exp(-(x - centre)^2 / (2 width^2)); params {amplitude, centre, width}.
FitResult fit_gaussian(const std::vector<double>& x, const std::vector<double>& y, const std::vector<double>& sigmas);

} // namespace qls::metrology
