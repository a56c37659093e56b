#pragma once

#include "qls/dynamics/evolve.hpp"
#include "qls/util/parallel.hpp"

#include <string>
#include <vector>

namespace qls::dynamics {

struct CurvePoint {
  double x = 0.0;
  double probability = 0.0;
};

using Curve = std::vector<CurvePoint>;

// Excitation after `pulse` with its duration replaced by each entry.
Curve rabi_curve(const Pulse& pulse, const std::vector<double>& durations, const QuantumState& state0,
                 const NoiseModel& noise, Exec exec = Exec::parallel, const IntegratorOptions& options = {});

struct RamseySettings {
  double rabi_freq = 0.0;    // rad/s, pi/2 pulses have rabi_freq * t_pulse = pi/2 by default
  double t_pulse = 50e-6;    // s
  double t_wait = 200e-6;    // s
  double detuning = 0.0;     // rad/s
  double phase = 0.0;        // phase of the second pulse, rad
  double light_shift = 0.0;  // rad/s, only during pulses

  // Pulses with rabi_freq set for a pi/2 area when rabi_freq == 0.
  std::vector<Pulse> sequence() const;
};

enum class RamseyAxis { detuning, phase, wait };

RamseyAxis parse_ramsey_axis(const std::string& name);

// For detuning (rad/s) and phase (rad) axes the curve holds P(e). For the
// wait axis (s) it holds the fringe contrast P(phi = 0) - P(phi = pi).
Curve ramsey_scan(const RamseySettings& settings, RamseyAxis axis, const std::vector<double>& values,
                  const QuantumState& state0, const NoiseModel& noise, Exec exec = Exec::parallel,
                  const IntegratorOptions& options = {});

// Motional mode seen by the probed ion.
struct ModeCoupling {
  std::string label;
  double frequency_hz = 0.0;
  double lamb_dicke = 0.0;
  double nbar = 0.0;
};

// Excitation spectrum of a weak square probe versus detuning (Hz). Each
// resolved line (carrier and red/blue sideband of every mode) is integrated
// separately in its own rotating frame and only within 40/t (widened by
// the line's Rabi frequency) of its centre;
// lines combine as independent excitation channels.
Curve spectrum_scan(const Pulse& probe, const std::vector<double>& detunings_hz, const std::vector<ModeCoupling>& modes,
                    const NoiseModel& noise, Exec exec = Exec::parallel, const IntegratorOptions& options = {});

// Full width at half maximum of the highest peak, by linear interpolation of
// the sampled curve. Throws DegenerateError when the peak touches the grid edge.
double full_width_half_maximum(const Curve& curve);

// Multiplicative fringe-amplitude reduction about the fringe midpoint, used
// to fold readout imperfections into simulated curves.
Curve scale_fringe(const Curve& curve, double factor);

std::vector<double> linspace(double first, double last, std::size_t count);

} // namespace qls::dynamics
