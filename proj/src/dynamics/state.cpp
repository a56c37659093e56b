#include "qls/dynamics/state.hpp"

#include "qls/errors.hpp"

#include <algorithm>
#include <cmath>

namespace qls::dynamics {

QuantumState::QuantumState(Matrix density_matrix, int n_max) : rho_(std::move(density_matrix)), n_max_(n_max) {
  if (n_max_ < 0) throw DomainError("n_max must be >= 0");
  if (rho_.rows() != dimension() || rho_.cols() != dimension())
    throw DomainError("density matrix has dimension " + std::to_string(rho_.rows()) + ", expected " +
                      std::to_string(dimension()));
}

QuantumState QuantumState::fock(Internal internal, int n, int n_max) {
  if (n < 0 || n > n_max) throw DomainError("Fock level outside the truncated space");
  Matrix rho = Matrix::Zero(2 * (n_max + 1), 2 * (n_max + 1));
  const int i = index(internal, n, n_max);
  rho(i, i) = 1.0;
  return QuantumState(std::move(rho), n_max);
}

QuantumState QuantumState::thermal(double nbar, int n_max, Internal internal) {
  if (!(nbar >= 0)) throw DomainError("mean phonon number must be >= 0");
  Matrix rho = Matrix::Zero(2 * (n_max + 1), 2 * (n_max + 1));
  const double ratio = nbar / (1.0 + nbar);
  double total = 0.0;
  std::vector<double> p(n_max + 1);
  for (int n = 0; n <= n_max; ++n) {
    p[n] = std::pow(ratio, n) / (1.0 + nbar);
    total += p[n];
  }
  for (int n = 0; n <= n_max; ++n) {
    const int i = index(internal, n, n_max);
    rho(i, i) = p[n] / total;
  }
  return QuantumState(std::move(rho), n_max);
}

int QuantumState::fock_cutoff_for(double nbar) {
  return std::max(5, static_cast<int>(std::ceil(10.0 * nbar)));
}

std::vector<std::string> QuantumState::basis_labels() const {
  std::vector<std::string> out;
  for (char s : {'g', 'e'})
    for (int n = 0; n <= n_max_; ++n) out.push_back(std::string("|") + s + "," + std::to_string(n) + ">");
  return out;
}

double QuantumState::trace() const { return rho_.trace().real(); }

double QuantumState::excited_population() const {
  double p = 0.0;
  for (int n = 0; n <= n_max_; ++n) p += rho_(index(Internal::excited, n, n_max_), index(Internal::excited, n, n_max_)).real();
  return p;
}

double QuantumState::fock_population(int n) const {
  if (n < 0 || n > n_max_) return 0.0;
  return rho_(index(Internal::ground, n, n_max_), index(Internal::ground, n, n_max_)).real() +
         rho_(index(Internal::excited, n, n_max_), index(Internal::excited, n, n_max_)).real();
}

double QuantumState::purity() const { return (rho_ * rho_).trace().real(); }

double QuantumState::min_eigenvalue() const {
  const Matrix h = 0.5 * (rho_ + rho_.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

void QuantumState::check_invariants(double trace_tol, double hermitian_tol, double positivity_tol) const {
  const double tr = trace();
  if (std::abs(tr - 1.0) > trace_tol) throw NumericalError("state trace " + std::to_string(tr) + " deviates from 1");
  const double herm = (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff();
  if (herm > hermitian_tol) throw NumericalError("state not Hermitian (deviation " + std::to_string(herm) + ")");
  const double lowest = min_eigenvalue();
  if (lowest < -positivity_tol) throw NumericalError("state not positive (eigenvalue " + std::to_string(lowest) + ")");
}

double thermal_tail(double nbar, int n_max) {
  if (nbar <= 0) return 0.0;
  return std::pow(nbar / (1.0 + nbar), n_max + 1);
}

double trace_distance(const QuantumState& a, const QuantumState& b) {
  if (a.dimension() != b.dimension()) throw DomainError("trace distance between states of different dimension");
  Matrix diff = a.density_matrix() - b.density_matrix();
  diff = 0.5 * (diff + diff.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<Matrix> solver(diff, Eigen::EigenvaluesOnly);
  return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

} // namespace qls::dynamics
