#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace qls::dynamics {

using Matrix = Eigen::MatrixXcd;

enum class Internal { ground = 0, excited = 1 };

// Density matrix over {|g>, |e>} x {|0>, ..., |n_max>}. Basis index is
// internal * (n_max + 1) + n.
class QuantumState {
public:
  QuantumState(Matrix density_matrix, int n_max);

  static QuantumState fock(Internal internal, int n, int n_max);
  static QuantumState ground(int n_max) { return fock(Internal::ground, 0, n_max); }
  // Internal state times a thermal motional distribution truncated at n_max
  // and renormalised.
  static QuantumState thermal(double nbar, int n_max, Internal internal = Internal::ground);

  // Fock cutoff used when none is given: max(5, ceil(10 nbar)).
  static int fock_cutoff_for(double nbar);
  static int index(Internal internal, int n, int n_max) { return static_cast<int>(internal) * (n_max + 1) + n; }

  int n_max() const { return n_max_; }
  int dimension() const { return 2 * (n_max_ + 1); }
  const Matrix& density_matrix() const { return rho_; }
  std::vector<std::string> basis_labels() const;

  double trace() const;
  double excited_population() const;
  double fock_population(int n) const;
  double purity() const;
  double min_eigenvalue() const;

  // Throws NumericalError when trace, hermiticity or positivity are violated
  // beyond the given tolerances.
  void check_invariants(double trace_tol = 1e-9, double hermitian_tol = 1e-12, double positivity_tol = 1e-9) const;

private:
  Matrix rho_;
  int n_max_;
};

// Population of a thermal distribution beyond n_max.
double thermal_tail(double nbar, int n_max);

// (1/2) sum |eigenvalues(rho1 - rho2)|.
double trace_distance(const QuantumState& a, const QuantumState& b);

} // namespace qls::dynamics
