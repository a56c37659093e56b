#include "commands.hpp"

#include "qls/atomic/level_scheme.hpp"
#include "qls/atomic/shifts.hpp"
#include "qls/dynamics/scans.hpp"
#include "qls/errors.hpp"
#include "qls/metrology/curve_fit.hpp"
#include "qls/protocol/pumping.hpp"
#include "qls/trap/crystal.hpp"
#include "qls/trap/mass_inference.hpp"
#include "qls/util/csv.hpp"
#include "qls/util/rng.hpp"

#include <cmath>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>

namespace qlsim {

namespace {

using qls::csv::format;
constexpr double two_pi = 2.0 * std::numbers::pi;

struct Sampled {
  double fraction;
  double sigma;
};

Sampled sample(double p, std::size_t shots, std::uint64_t seed, std::uint64_t stream) {
  auto rng = qls::stream_engine(seed, stream);
  std::binomial_distribution<long> b(static_cast<long>(shots), std::min(1.0, std::max(0.0, p)));
  const double f = static_cast<double>(b(rng)) / static_cast<double>(shots);
  return {f, std::sqrt(f * (1.0 - f) / static_cast<double>(shots))};
}

qls::dynamics::NoiseModel read_noise(qls::ConfigSection& s, double default_lifetime) {
  qls::dynamics::NoiseModel n;
  const double lifetime = s.number("lifetime_s", default_lifetime);
  n.spontaneous_decay_rate = lifetime > 0 && std::isfinite(lifetime) ? 1.0 / lifetime : 0.0;
  n.laser_dephasing_rate = s.number("dephasing_rate_per_s", 0.0);
  n.drift_rate = s.number("drift_hz_per_s", 0.0);
  n.validate();
  return n;
}

} // namespace

void run_modes(Context& ctx, const ModesOptions& opt) {
  const auto atoms = qls::atomic::load_atomic_data(ctx.section("species"));
  const auto trap = qls::trap::load_trap_config(ctx.section("trap"));
  auto sec = ctx.section("modes");
  const double m1 = sec.number("mass1_u", 40.0);
  const double m2 = sec.number("mass2_u", 27.0);
  sec.finish();

  const auto crystal = qls::trap::solve_crystal(trap, m1, m2);
  std::ostringstream table;
  qls::trap::write_mode_table(table, crystal);
  ctx.write_file("modes.csv", table.str());

  const double grad_ca = crystal.axial_field_gradient(trap, 0);
  const double grad_al = crystal.axial_field_gradient(trap, 1);
  using qls::atomic::HalfInt;
  nlohmann::json summary = {
      {"mass1_u", m1},
      {"mass2_u", m2},
      {"separation_m", crystal.separation_m},
      {"axial_field_gradient_v_per_m2", {{"ion1", grad_ca}, {"ion2", grad_al}}},
      {"quadrupole_shift_hz",
       {{"Al+ 3P1 F=7/2 m=7/2",
         qls::atomic::quadrupole_shift(atoms.aluminium.level(qls::atomic::labels::al_p1_f72), HalfInt{7}, grad_al)},
        {"Ca+ D5/2 m=3/2",
         qls::atomic::quadrupole_shift(atoms.calcium.level(qls::atomic::labels::ca_d52), HalfInt{3}, grad_ca)}}}};
  nlohmann::json modes = nlohmann::json::array();
  for (const auto& m : crystal.modes) modes.push_back({{"label", m.label()}, {"freq_hz", m.frequency_hz}});
  summary["modes"] = modes;

  if (opt.tickle_hz) {
    const auto inf = qls::trap::infer_companion_mass(*opt.tickle_hz, trap, m1);
    summary["mass_inference"] = {{"measured_in_phase_hz", *opt.tickle_hz},
                                 {"mass_u", inf.mass_u},
                                 {"nearest_integer_u", inf.nearest_integer_u},
                                 {"sigma_u", inf.sigma_u},
                                 {"ambiguous", inf.ambiguous}};
  }
  ctx.write_file("summary.json", json_text(summary));
  for (const auto& m : crystal.modes) std::cout << m.label() << "  " << format(m.frequency_hz, 9) << " Hz\n";

  if (ctx.scenario().emit_plots) {
    Series s{"modes", {}};
    for (std::size_t i = 0; i < crystal.modes.size(); ++i)
      s.points.emplace_back(static_cast<double>(i + 1), crystal.modes[i].frequency_hz / 1e6);
    ctx.write_file("modes.svg", svg_plot("Normal modes", "mode index", "frequency (MHz)", {s}, true));
  }
  ctx.write_manifest();
}

void run_spectrum(Context& ctx) {
  const auto trap = qls::trap::load_trap_config(ctx.section("trap"));
  auto sec = ctx.section("spectrum");
  const double m1 = sec.number("mass1_u", 40.0);
  const double m2 = sec.number("mass2_u", 27.0);
  const int ion = static_cast<int>(sec.integer("probed_ion", 0));
  const double wavelength = sec.number("wavelength_nm", 729.0);
  const double cos_axial = sec.number("projection_axial", std::sqrt(0.5));
  const double cos_x = sec.number("projection_radial_x", 0.5);
  const double cos_y = sec.number("projection_radial_y", 0.5);
  const double t = sec.number("probe_time_s", 200e-6);
  const double span = sec.number("span_hz", 2.3e6);
  const double step = sec.number("step_hz", 1e3);
  auto noise = read_noise(sec, INFINITY);
  std::optional<double> rabi_hz;
  if (sec.has("rabi_hz")) rabi_hz = sec.number("rabi_hz");
  sec.finish();
  if (ion != 0 && ion != 1) throw qls::ConfigError("spectrum.probed_ion must be 0 or 1");
  if (!(step > 0) || !(span > 0)) throw qls::ConfigError("spectrum span and step must be > 0");

  const auto crystal = qls::trap::solve_crystal(trap, m1, m2);
  const double mass = ion == 0 ? m1 : m2;
  std::vector<qls::dynamics::ModeCoupling> modes;
  double eta_ref = 0.0;
  for (const auto& m : crystal.modes) {
    const double c = m.direction == qls::trap::Direction::axial ? cos_axial
                     : m.direction == qls::trap::Direction::radial_x ? cos_x
                                                                     : cos_y;
    const double eta = std::abs(qls::trap::lamb_dicke(m, ion, mass, wavelength, c));
    modes.push_back({m.label(), m.frequency_hz, eta, m.mean_phonon_number});
    eta_ref = std::max(eta_ref, eta);
  }
  // Default: sideband pi-pulse on the most strongly coupled mode.
  const double omega = rabi_hz ? two_pi * *rabi_hz : (eta_ref > 0 ? std::numbers::pi / (eta_ref * t) : std::numbers::pi / t);
  const auto grid = qls::dynamics::linspace(-span, span, static_cast<std::size_t>(std::llround(2 * span / step)) + 1);
  const auto curve = qls::dynamics::spectrum_scan(qls::dynamics::Pulse::carrier(omega, t), grid, modes, noise);

  std::ostringstream out;
  qls::csv::Writer w(out);
  w.row({"detuning_hz", "probability"});
  for (const auto& p : curve) w.row({format(p.x), format(p.probability)});
  ctx.write_file("spectrum.csv", out.str());

  nlohmann::json lines = nlohmann::json::array();
  for (const auto& m : modes) lines.push_back({{"label", m.label}, {"freq_hz", m.frequency_hz}, {"lamb_dicke", m.lamb_dicke}});
  ctx.write_file("summary.json", json_text({{"probe_time_s", t}, {"rabi_hz", omega / two_pi}, {"modes", lines}}));
  if (ctx.scenario().emit_plots) {
    Series s{"P(excited)", {}};
    for (const auto& p : curve) s.points.emplace_back(p.x / 1e6, p.probability);
    ctx.write_file("spectrum.svg", svg_plot("Sideband spectrum", "detuning (MHz)", "excitation", {s}));
  }
  ctx.write_manifest();
}

void run_rabi(Context& ctx) {
  auto sec = ctx.section("rabi");
  const std::string kind = sec.text("transition", "carrier");
  const int order = kind == "carrier" ? 0 : kind == "blue" ? 1 : kind == "red" ? -1 : 2;
  if (order == 2) throw qls::ConfigError("rabi.transition must be carrier, blue or red");
  const double eta = sec.number("lamb_dicke", order == 0 ? 0.0 : 0.1);
  const double pi_time = sec.number("pi_time_s", order == 0 ? 4e-6 : 15e-6);
  const double nbar = sec.number("nbar", 0.05);
  auto noise = read_noise(sec, 300e-6);
  const double t_max = sec.number("t_max_s", order == 0 ? 40e-6 : 100e-6);
  const auto points = static_cast<std::size_t>(sec.integer("points", 121));
  const double fidelity = sec.number("sideband_pi_fidelity", 1.0);
  sec.finish();
  if (!(pi_time > 0) || !(t_max > 0) || points < 2) throw qls::ConfigError("rabi timing parameters must be positive");
  if (order != 0 && !(eta > 0)) throw qls::ConfigError("rabi.lamb_dicke must be > 0 for sidebands");
  if (!(fidelity >= 0 && fidelity <= 1)) throw qls::ConfigError("rabi.sideband_pi_fidelity must lie in [0, 1]");

  const double omega = std::numbers::pi / (pi_time * (order == 0 ? 1.0 : eta));
  const auto pulse = qls::dynamics::Pulse::sideband(order, omega, eta, 0.0);
  const int n_max = order == 0 ? 0 : qls::dynamics::QuantumState::fock_cutoff_for(nbar);
  const auto state0 = qls::dynamics::QuantumState::thermal(order == 0 ? 0.0 : nbar, n_max);
  const auto curve = qls::dynamics::rabi_curve(pulse, qls::dynamics::linspace(0.0, t_max, points), state0, noise);
  const std::size_t shots = ctx.shots_or(100);

  std::ostringstream out;
  qls::csv::Writer w(out);
  w.row({"duration_s", "probability", "detected_probability", "sampled_probability", "sigma_qpn"});
  std::vector<double> xs, ys;
  double peak = 0.0, peak_t = 0.0;
  for (std::size_t i = 0; i < curve.size(); ++i) {
    const auto& p = curve[i];
    const double detected = fidelity * p.probability + (1.0 - fidelity) * (1.0 - p.probability);
    const auto s = sample(detected, shots, ctx.seed(), i);
    w.row({format(p.x), format(p.probability), format(detected), format(s.fraction), format(s.sigma)});
    xs.push_back(p.x);
    ys.push_back(p.probability);
    if (p.probability > peak) peak = p.probability, peak_t = p.x;
  }
  ctx.write_file("rabi.csv", out.str());

  nlohmann::json summary = {{"transition", kind}, {"rabi_freq_rad_per_s", omega}, {"peak_probability", peak},
                            {"peak_time_s", peak_t}};
  try {
    const auto fit = qls::metrology::fit_damped_sine(xs, ys, order == 0 ? omega : omega * eta);
    summary["damped_fit"] = {{"decay_rate_per_s", fit.params[2]}, {"omega_rad_per_s", fit.params[3]},
                             {"coherence_decay_rate_per_s", 2.0 * fit.params[2]}};
  } catch (const qls::NumericalError& e) {
    summary["damped_fit"] = {{"error", e.what()}};
  }
  ctx.write_file("summary.json", json_text(summary));
  std::cout << "peak excitation " << format(peak, 6) << " at " << format(peak_t * 1e6, 6) << " us\n";
  if (ctx.scenario().emit_plots) {
    Series s{"P(excited)", {}};
    for (const auto& p : curve) s.points.emplace_back(p.x * 1e6, p.probability);
    ctx.write_file("rabi.svg", svg_plot("Rabi oscillation (" + kind + ")", "pulse duration (us)", "excitation", {s}));
  }
  ctx.write_manifest();
}

void run_ramsey(Context& ctx, const RamseyOptions& opt) {
  const auto axis = qls::dynamics::parse_ramsey_axis(opt.scan);
  auto sec = ctx.section("ramsey");
  qls::dynamics::RamseySettings rs;
  rs.t_pulse = sec.number("t_pulse_s", 50e-6);
  rs.t_wait = sec.number("t_wait_s", 200e-6);
  rs.detuning = two_pi * sec.number("detuning_hz", 0.0);
  rs.light_shift = two_pi * sec.number("light_shift_hz", 0.0);
  auto noise = read_noise(sec, 300e-6);
  const double fringe_scale = sec.number("fringe_scale", 1.0);
  const double span = sec.number("span_hz", 5e3);
  const auto points = static_cast<std::size_t>(sec.integer("points", axis == qls::dynamics::RamseyAxis::wait ? 12 : 201));
  const double wait_min = sec.number("wait_min_s", 50e-6);
  const double wait_max = sec.number("wait_max_s", 600e-6);
  sec.finish();
  if (points < 2) throw qls::ConfigError("ramsey.points must be >= 2");

  std::vector<double> values;
  std::string x_name;
  switch (axis) {
  case qls::dynamics::RamseyAxis::detuning:
    values = qls::dynamics::linspace(-two_pi * span, two_pi * span, points);
    x_name = "detuning_hz";
    break;
  case qls::dynamics::RamseyAxis::phase:
    values = qls::dynamics::linspace(0.0, 2.0 * std::numbers::pi, points);
    x_name = "phase_rad";
    break;
  case qls::dynamics::RamseyAxis::wait:
    values = qls::dynamics::linspace(wait_min, wait_max, points);
    x_name = "wait_s";
    break;
  }
  auto curve = qls::dynamics::ramsey_scan(rs, axis, values, qls::dynamics::QuantumState::ground(0), noise);
  const bool contrast = axis == qls::dynamics::RamseyAxis::wait;
  if (contrast)
    for (auto& p : curve) p.probability *= fringe_scale;
  else
    curve = qls::dynamics::scale_fringe(curve, fringe_scale);
  const std::size_t shots = ctx.shots_or(100);

  std::ostringstream out;
  qls::csv::Writer w(out);
  w.row({x_name, contrast ? "contrast" : "probability", contrast ? "sampled_contrast" : "sampled_probability", "sigma_qpn"});
  for (std::size_t i = 0; i < curve.size(); ++i) {
    const double x = axis == qls::dynamics::RamseyAxis::detuning ? curve[i].x / two_pi : curve[i].x;
    if (contrast) {
      // Contrast from two sampled fringe points, p(0) = (1 + C)/2 and p(pi) = (1 - C)/2.
      const auto a = sample(0.5 * (1 + curve[i].probability), shots, ctx.seed(), 2 * i);
      const auto b = sample(0.5 * (1 - curve[i].probability), shots, ctx.seed(), 2 * i + 1);
      w.row({format(x), format(curve[i].probability), format(a.fraction - b.fraction),
             format(std::hypot(a.sigma, b.sigma))});
    } else {
      const auto s = sample(curve[i].probability, shots, ctx.seed(), i);
      w.row({format(x), format(curve[i].probability), format(s.fraction), format(s.sigma)});
    }
  }
  ctx.write_file("ramsey_" + opt.scan + ".csv", out.str());

  nlohmann::json summary = {{"scan", opt.scan}, {"t_pulse_s", rs.t_pulse}, {"t_wait_s", rs.t_wait}};
  if (contrast) {
    std::vector<double> xs, ys;
    for (const auto& p : curve) xs.push_back(p.x), ys.push_back(p.probability);
    const auto fit = qls::metrology::fit_exponential_decay(xs, ys);
    summary["decay_time_s"] = fit.params[1];
    summary["decay_time_sigma_s"] = fit.sigmas[1];
    std::cout << "contrast decay time " << format(fit.params[1] * 1e6, 6) << " us\n";
  }
  ctx.write_file("summary.json", json_text(summary));
  if (ctx.scenario().emit_plots) {
    Series s{contrast ? "contrast" : "P(excited)", {}};
    for (const auto& p : curve)
      s.points.emplace_back(axis == qls::dynamics::RamseyAxis::detuning ? p.x / two_pi : p.x, p.probability);
    ctx.write_file("ramsey_" + opt.scan + ".svg",
                   svg_plot("Ramsey " + opt.scan + " scan", x_name, contrast ? "contrast" : "excitation", {s}));
  }
  ctx.write_manifest();
}

void run_pump(Context& ctx) {
  auto sec = ctx.section("pump");
  qls::protocol::PumpConfig pc;
  pc.repetitions = static_cast<int>(sec.integer("repetitions", pc.repetitions));
  pc.wait = sec.number("wait_s", pc.wait);
  pc.lifetime = sec.number("lifetime_s", pc.lifetime);
  pc.pulse_transfer = sec.number("pulse_transfer", pc.pulse_transfer);
  const std::string target = sec.text("target_zeeman_state", "+5/2");
  sec.finish();
  if (target != "+5/2" && target != "-5/2") throw qls::ConfigError("pump.target_zeeman_state must be +5/2 or -5/2");
  pc.target_twice_m = target == "+5/2" ? 5 : -5;
  pc.validate();

  std::ostringstream out;
  qls::csv::Writer w(out);
  w.row({"repetitions", "target_population"});
  auto state = qls::protocol::PumpState::uniform_ground();
  Series s{"target", {}};
  w.row({"0", format(state.ground_population(pc.target_twice_m))});
  s.points.emplace_back(0, state.ground_population(pc.target_twice_m));
  auto one = pc;
  one.repetitions = 1;
  for (int r = 1; r <= pc.repetitions; ++r) {
    state = qls::protocol::optical_pump(state, one);
    w.row({std::to_string(r), format(state.ground_population(pc.target_twice_m))});
    s.points.emplace_back(r, state.ground_population(pc.target_twice_m));
  }
  ctx.write_file("pump.csv", out.str());

  std::ostringstream pops;
  qls::csv::Writer pw(pops);
  pw.row({"state", "twice_m", "population"});
  for (int m = -5; m <= 5; m += 2) pw.row({"1S0", std::to_string(m), format(state.ground_population(m))});
  for (int m = -7; m <= 7; m += 2)
    pw.row({"3P1,F=7/2", std::to_string(m), format(state.excited[qls::protocol::PumpState::excited_index(m)])});
  ctx.write_file("populations.csv", pops.str());
  std::cout << "target population after " << pc.repetitions << " repetitions: "
            << format(state.ground_population(pc.target_twice_m), 6) << "\n";
  if (ctx.scenario().emit_plots)
    ctx.write_file("pump.svg", svg_plot("Optical pumping", "repetitions", "target population", {s}, true));
  ctx.write_manifest();
}

} // namespace qlsim
