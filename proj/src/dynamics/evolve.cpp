#include "qls/dynamics/evolve.hpp"

#include "qls/errors.hpp"

#include <boost/numeric/odeint.hpp>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

namespace qls::dynamics {

namespace {

using cd = std::complex<double>;
// odeint works on the real and imaginary parts stored interleaved, which is
// the layout of std::complex<double> arrays.
using OdeState = std::vector<double>;

Matrix lowering(int n_max) {
  const int d = 2 * (n_max + 1);
  Matrix a = Matrix::Zero(d, d);
  for (int s = 0; s < 2; ++s)
    for (int n = 1; n <= n_max; ++n)
      a(QuantumState::index(Internal(s), n - 1, n_max), QuantumState::index(Internal(s), n, n_max)) = std::sqrt(double(n));
  return a;
}

Matrix sigma_plus(int n_max) {
  const int d = 2 * (n_max + 1);
  Matrix sp = Matrix::Zero(d, d);
  for (int n = 0; n <= n_max; ++n)
    sp(QuantumState::index(Internal::excited, n, n_max), QuantumState::index(Internal::ground, n, n_max)) = 1.0;
  return sp;
}

Matrix sigma_z(int n_max) {
  const int d = 2 * (n_max + 1);
  Matrix sz = Matrix::Zero(d, d);
  for (int n = 0; n <= n_max; ++n) {
    sz(QuantumState::index(Internal::excited, n, n_max), QuantumState::index(Internal::excited, n, n_max)) = 1.0;
    sz(QuantumState::index(Internal::ground, n, n_max), QuantumState::index(Internal::ground, n, n_max)) = -1.0;
  }
  return sz;
}

// d rho/dt = -i (H_eff rho - rho H_eff^dagger) + sum_k L_k rho L_k^dagger,
// H_eff = H - (i/2) sum_k L_k^dagger L_k.
struct Lindblad {
  Matrix h_static; // pulse Hamiltonian without drift
  Matrix sz_half;  // sigma_z / 2, for the drift term
  Matrix decay;    // (1/2) sum L^dagger L
  std::vector<Matrix> jumps;
  double drift_rad_per_s2;
  double t_offset;
  int d;

  void operator()(const OdeState& x, OdeState& dxdt, double t) const {
    Eigen::Map<const Matrix> rho(reinterpret_cast<const cd*>(x.data()), d, d);
    Eigen::Map<Matrix> out(reinterpret_cast<cd*>(dxdt.data()), d, d);
    Matrix h_eff = h_static - cd(0, 1) * decay;
    if (drift_rad_per_s2 != 0.0) h_eff.noalias() -= (drift_rad_per_s2 * (t + t_offset)) * sz_half;
    const Matrix hr = h_eff * rho;
    out = cd(0, -1) * hr + cd(0, 1) * hr.adjoint();
    for (const auto& l : jumps) out.noalias() += l * rho * l.adjoint();
  }
};

} // namespace

Pulse Pulse::carrier(double rabi_freq, double duration, double detuning, double phase) {
  Pulse p;
  p.rabi_freq = rabi_freq;
  p.duration = duration;
  p.detuning = detuning;
  p.phase = phase;
  return p;
}

Pulse Pulse::sideband(int order, double rabi_freq, double lamb_dicke, double duration, double detuning, double phase) {
  Pulse p = carrier(rabi_freq, duration, detuning, phase);
  p.sideband_order = order;
  p.lamb_dicke = lamb_dicke;
  return p;
}

Pulse Pulse::wait(double duration, double detuning) { return carrier(0.0, duration, detuning); }

void Pulse::validate() const {
  if (!(duration >= 0)) throw DomainError("pulse duration must be >= 0");
  if (sideband_order < -1 || sideband_order > 1) throw DomainError("sideband order must be -1, 0 or +1");
  if (!(lamb_dicke >= 0)) throw DomainError("Lamb-Dicke parameter must be >= 0");
  if (!std::isfinite(rabi_freq) || !std::isfinite(detuning) || !std::isfinite(phase) || !std::isfinite(light_shift))
    throw DomainError("pulse parameters must be finite");
}

void NoiseModel::validate() const {
  if (!(spontaneous_decay_rate >= 0) || !(laser_dephasing_rate >= 0) || !(thermal_nbar >= 0))
    throw DomainError("noise rates and thermal occupation must be >= 0");
  if (!std::isfinite(drift_rate)) throw DomainError("drift rate must be finite");
}

Matrix pulse_hamiltonian(const Pulse& pulse, int n_max, double extra_detuning) {
  const Matrix sp = sigma_plus(n_max);
  const double delta = pulse.detuning + extra_detuning + (pulse.rabi_freq != 0.0 ? pulse.light_shift : 0.0);
  Matrix h = (-0.5 * delta) * sigma_z(n_max);

  Matrix coupling;
  double strength = 0.5 * pulse.rabi_freq;
  switch (pulse.sideband_order) {
  case 0: coupling = sp; break;
  case 1:
    coupling = sp * lowering(n_max).adjoint();
    strength *= pulse.lamb_dicke;
    break;
  case -1:
    coupling = sp * lowering(n_max);
    strength *= pulse.lamb_dicke;
    break;
  default: throw DomainError("sideband order must be -1, 0 or +1");
  }
  const Matrix up = (strength * std::exp(cd(0, -pulse.phase))) * coupling;
  h += up + up.adjoint();
  return h;
}

std::vector<Matrix> jump_operators(const NoiseModel& noise, int n_max) {
  std::vector<Matrix> out;
  if (noise.spontaneous_decay_rate > 0)
    out.push_back(std::sqrt(noise.spontaneous_decay_rate) * sigma_plus(n_max).adjoint());
  if (noise.laser_dephasing_rate > 0) out.push_back(std::sqrt(0.5 * noise.laser_dephasing_rate) * sigma_z(n_max));
  return out;
}

QuantumState evolve(const QuantumState& state, std::span<const Pulse> pulses, const NoiseModel& noise,
                    const IntegratorOptions& options, EvolveStats* stats) {
  namespace odeint = boost::numeric::odeint;
  noise.validate();
  const int n_max = state.n_max();
  const int d = state.dimension();

  OdeState x(2 * static_cast<std::size_t>(d) * d);
  Eigen::Map<Matrix>(reinterpret_cast<cd*>(x.data()), d, d) = state.density_matrix();

  EvolveStats local;
  const std::vector<Matrix> jumps = jump_operators(noise, n_max);
  Matrix decay = Matrix::Zero(d, d);
  for (const auto& l : jumps) decay += 0.5 * l.adjoint() * l;
  const Matrix sz_half = 0.5 * sigma_z(n_max);
  const double drift = 2.0 * std::numbers::pi * noise.drift_rate;
  const int top_g = QuantumState::index(Internal::ground, n_max, n_max);
  const int top_e = QuantumState::index(Internal::excited, n_max, n_max);

  auto monitor = [&](const OdeState& y) {
    Eigen::Map<const Matrix> rho(reinterpret_cast<const cd*>(y.data()), d, d);
    const double top = rho(top_g, top_g).real() + rho(top_e, top_e).real();
    local.max_top_fock_population = std::max(local.max_top_fock_population, top);
  };
  monitor(x);

  double elapsed = 0.0;
  const bool unitary = options.exact_unitary && jumps.empty() && drift == 0.0;
  for (const auto& pulse : pulses) {
    pulse.validate();
    if (pulse.duration == 0.0) continue;
    if (unitary) {
      const Matrix u = (cd(0.0, -pulse.duration) * pulse_hamiltonian(pulse, n_max)).exp();
      Eigen::Map<Matrix> rho(reinterpret_cast<cd*>(x.data()), d, d);
      rho = (u * rho * u.adjoint()).eval();
      monitor(x);
      elapsed += pulse.duration;
      continue;
    }
    const Lindblad system{pulse_hamiltonian(pulse, n_max), sz_half, decay, jumps, drift, elapsed, d};

    auto stepper = odeint::make_controlled(options.abs_tol, options.rel_tol, odeint::runge_kutta_dopri5<OdeState>());
    const double fastest = std::abs(pulse.rabi_freq) * std::max(1.0, pulse.lamb_dicke * std::sqrt(n_max + 1.0)) +
                           std::abs(pulse.detuning) + std::abs(pulse.light_shift) + noise.spontaneous_decay_rate +
                           noise.laser_dephasing_rate + std::abs(drift) * (elapsed + pulse.duration);
    double dt = fastest > 0 ? std::min(pulse.duration, 0.1 / fastest) : pulse.duration;
    const double min_dt = 1e-14 * pulse.duration;
    double t = 0.0;
    std::size_t steps = 0;
    while (t < pulse.duration) {
      const double remaining = pulse.duration - t;
      const bool last = dt >= remaining;
      if (last) dt = remaining;
      const auto result = stepper.try_step(system, x, t, dt);
      if (result == odeint::success) {
        ++local.accepted_steps;
        if (last) t = pulse.duration;
        monitor(x);
      } else {
        ++local.rejected_steps;
        if (dt < min_dt) {
          std::ostringstream msg;
          msg << "integrator step size collapsed to " << dt << " s at t=" << elapsed + t << " s (accepted "
              << local.accepted_steps << ", rejected " << local.rejected_steps << ")";
          throw NumericalError(msg.str());
        }
      }
      if (++steps > options.max_steps) {
        std::ostringstream msg;
        msg << "integrator exceeded " << options.max_steps << " steps in a pulse of " << pulse.duration
            << " s (t=" << t << ", last dt=" << dt << ")";
        throw NumericalError(msg.str());
      }
    }
    elapsed += pulse.duration;
  }

  local.truncation_warning = local.max_top_fock_population > options.truncation_warning;
  if (stats) *stats = local;
  Matrix rho = Eigen::Map<const Matrix>(reinterpret_cast<const cd*>(x.data()), d, d);
  return QuantumState(0.5 * (rho + rho.adjoint()), n_max);
}

} // namespace qls::dynamics
