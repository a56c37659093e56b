#include "qls/dynamics/scans.hpp"

#include "qls/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qls::dynamics {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

double excited_after(const QuantumState& state0, const std::vector<Pulse>& pulses, const NoiseModel& noise,
                     const IntegratorOptions& options) {
  return evolve(state0, pulses, noise, options).excited_population();
}

} // namespace

std::vector<double> linspace(double first, double last, std::size_t count) {
  std::vector<double> out(count);
  if (count == 1) {
    out[0] = first;
    return out;
  }
  for (std::size_t i = 0; i < count; ++i)
    out[i] = first + (last - first) * static_cast<double>(i) / static_cast<double>(count - 1);
  return out;
}

Curve rabi_curve(const Pulse& pulse, const std::vector<double>& durations, const QuantumState& state0,
                 const NoiseModel& noise, Exec exec, const IntegratorOptions& options) {
  if (!std::is_sorted(durations.begin(), durations.end())) throw DomainError("rabi durations must be sorted");
  if (!durations.empty() && durations.front() < 0) throw DomainError("rabi durations must be >= 0");
  return map_indices<CurvePoint>(durations.size(), exec, [&](std::size_t i) {
    Pulse p = pulse;
    p.duration = durations[i];
    return CurvePoint{durations[i], excited_after(state0, {p}, noise, options)};
  });
}

std::vector<Pulse> RamseySettings::sequence() const {
  if (!(t_pulse > 0) || !(t_wait >= 0)) throw DomainError("ramsey pulse time must be > 0 and wait >= 0");
  const double omega = rabi_freq > 0 ? rabi_freq : std::numbers::pi / (2.0 * t_pulse);
  Pulse first = Pulse::carrier(omega, t_pulse, detuning, 0.0);
  first.light_shift = light_shift;
  Pulse second = first;
  second.phase = phase;
  return {first, Pulse::wait(t_wait, detuning), second};
}

RamseyAxis parse_ramsey_axis(const std::string& name) {
  if (name == "detuning") return RamseyAxis::detuning;
  if (name == "phase") return RamseyAxis::phase;
  if (name == "wait" || name == "T") return RamseyAxis::wait;
  throw ConfigError("unknown ramsey scan axis '" + name + "' (expected detuning, phase or wait)");
}

Curve ramsey_scan(const RamseySettings& settings, RamseyAxis axis, const std::vector<double>& values,
                  const QuantumState& state0, const NoiseModel& noise, Exec exec, const IntegratorOptions& options) {
  if (values.empty()) throw DomainError("ramsey scan needs at least one value");
  return map_indices<CurvePoint>(values.size(), exec, [&](std::size_t i) {
    RamseySettings s = settings;
    switch (axis) {
    case RamseyAxis::detuning:
      s.detuning = values[i];
      return CurvePoint{values[i], excited_after(state0, s.sequence(), noise, options)};
    case RamseyAxis::phase:
      s.phase = values[i];
      return CurvePoint{values[i], excited_after(state0, s.sequence(), noise, options)};
    case RamseyAxis::wait: {
      s.t_wait = values[i];
      s.phase = 0.0;
      const double p0 = excited_after(state0, s.sequence(), noise, options);
      s.phase = std::numbers::pi;
      const double ppi = excited_after(state0, s.sequence(), noise, options);
      return CurvePoint{values[i], p0 - ppi};
    }
    }
    throw DomainError("unknown ramsey axis");
  });
}

Curve spectrum_scan(const Pulse& probe, const std::vector<double>& detunings_hz, const std::vector<ModeCoupling>& modes,
                    const NoiseModel& noise, Exec exec, const IntegratorOptions& options) {
  if (!(probe.duration > 0)) throw DomainError("spectrum probe duration must be > 0");
  struct Line {
    double centre_hz;
    int order;
    double eta;
    double nbar;
  };
  std::vector<Line> lines{{0.0, 0, 0.0, 0.0}};
  for (const auto& m : modes) {
    if (!(m.frequency_hz > 0)) throw DomainError("mode '" + m.label + "' needs a positive frequency");
    lines.push_back({m.frequency_hz, +1, m.lamb_dicke, m.nbar});
    lines.push_back({-m.frequency_hz, -1, m.lamb_dicke, m.nbar});
  }
  // Beyond this distance a line contributes below ~1e-3 even when power broadened.
  auto window = [&](const Line& line) {
    const double coupling = line.order == 0 ? 1.0 : line.eta * std::sqrt(1.0 + line.nbar);
    return 40.0 / probe.duration + 30.0 * std::abs(probe.rabi_freq) * coupling / two_pi;
  };

  return map_indices<CurvePoint>(detunings_hz.size(), exec, [&](std::size_t i) {
    const double d = detunings_hz[i];
    double dark = 1.0;
    for (const auto& line : lines) {
      if (std::abs(d - line.centre_hz) > window(line)) continue;
      if (line.order != 0 && line.eta == 0.0) continue;
      Pulse p = probe;
      p.sideband_order = line.order;
      p.lamb_dicke = line.eta;
      p.detuning = two_pi * (d - line.centre_hz);
      const int n_max = line.order == 0 ? 0 : QuantumState::fock_cutoff_for(line.nbar);
      const QuantumState start = QuantumState::thermal(line.nbar, n_max);
      dark *= 1.0 - excited_after(start, {p}, noise, options);
    }
    return CurvePoint{d, 1.0 - dark};
  });
}

double full_width_half_maximum(const Curve& curve) {
  if (curve.size() < 3) throw InsufficientDataError("FWHM needs at least three samples");
  const auto peak = std::max_element(curve.begin(), curve.end(),
                                     [](const CurvePoint& a, const CurvePoint& b) { return a.probability < b.probability; });
  const double half = 0.5 * peak->probability;
  if (!(half > 0)) throw DegenerateError("curve has no peak");
  const std::size_t ip = static_cast<std::size_t>(peak - curve.begin());

  std::size_t lo = ip;
  while (lo > 0 && curve[lo - 1].probability > half) --lo;
  std::size_t hi = ip;
  while (hi + 1 < curve.size() && curve[hi + 1].probability > half) ++hi;
  if (lo == 0 || hi + 1 == curve.size()) throw DegenerateError("peak half-maximum lies outside the scanned range");

  auto crossing = [half](const CurvePoint& a, const CurvePoint& b) {
    return a.x + (half - a.probability) * (b.x - a.x) / (b.probability - a.probability);
  };
  return crossing(curve[hi], curve[hi + 1]) - crossing(curve[lo - 1], curve[lo]);
}

Curve scale_fringe(const Curve& curve, double factor) {
  if (!(factor >= 0 && factor <= 1)) throw DomainError("fringe scale factor must lie in [0, 1]");
  Curve out = curve;
  for (auto& p : out) p.probability = 0.5 + factor * (p.probability - 0.5);
  return out;
}

} // namespace qls::dynamics
