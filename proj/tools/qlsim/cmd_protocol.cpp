#include "commands.hpp"

#include "qls/dynamics/scans.hpp"
#include "qls/errors.hpp"
#include "qls/protocol/shots.hpp"
#include "qls/util/csv.hpp"

#include <cmath>
#include <iostream>
#include <numbers>
#include <sstream>

namespace qlsim {

namespace {

using qls::csv::format;
constexpr double two_pi = 2.0 * std::numbers::pi;

qls::protocol::ProbeSpec read_probe(qls::ConfigSection& s) {
  const std::string kind = s.text("probe_kind", "probability");
  const bool clock = s.boolean("clock_transition", false);
  qls::dynamics::NoiseModel noise;
  const double lifetime = s.number("lifetime_s", 300e-6);
  noise.spontaneous_decay_rate = std::isfinite(lifetime) && lifetime > 0 ? 1.0 / lifetime : 0.0;
  noise.laser_dephasing_rate = s.number("dephasing_rate_per_s", 0.0);
  if (kind == "probability") return qls::protocol::ProbeSpec::fixed(s.number("probability", 0.5), clock);
  if (kind == "carrier") {
    const double pi_time = s.number("pi_time_s", 4e-6);
    const auto pulse = qls::dynamics::Pulse::carrier(std::numbers::pi / pi_time, s.number("duration_s", pi_time),
                                                     two_pi * s.number("detuning_hz", 0.0));
    return qls::protocol::ProbeSpec::sequence({pulse}, noise, clock);
  }
  if (kind == "ramsey") {
    qls::dynamics::RamseySettings rs;
    rs.t_pulse = s.number("t_pulse_s", 50e-6);
    rs.t_wait = s.number("t_wait_s", 200e-6);
    rs.detuning = two_pi * s.number("detuning_hz", 0.0);
    rs.phase = s.number("phase_rad", 0.0);
    return qls::protocol::ProbeSpec::sequence(rs.sequence(), noise, clock);
  }
  throw qls::ConfigError("qls_batch.probe_kind must be probability, carrier or ramsey");
}

} // namespace

void run_qls_batch(Context& ctx) {
  const auto config = qls::protocol::load_protocol_config(ctx.section("protocol"));
  auto sec = ctx.section("qls_batch");
  const auto probe = read_probe(sec);
  sec.finish();
  const std::size_t shots = ctx.shots_or(1000);

  const auto batch = qls::protocol::run_batch(config, probe, shots, ctx.seed());
  std::ostringstream out;
  qls::csv::Writer w(out);
  w.row({"shot_index", "outcome"});
  for (std::size_t i = 0; i < batch.outcomes.size(); ++i)
    w.row({std::to_string(i), batch.outcomes[i] == qls::protocol::Outcome::dark ? "dark" : "bright"});
  ctx.write_file("shots.csv", out.str());

  const double p = probe.excitation_probability();
  ctx.write_file("summary.json", json_text({{"n_shots", batch.n_shots},
                                            {"dark_counts", batch.dark_counts},
                                            {"probe_excitation_probability", p},
                                            {"p_hat", batch.p_hat},
                                            {"sigma_qpn", batch.sigma_qpn},
                                            {"config_hash", ctx.config_digest()},
                                            {"seed", ctx.seed()}}));
  std::cout << "p_hat " << format(batch.p_hat, 6) << " +- " << format(batch.sigma_qpn, 3) << " (probe p "
            << format(p, 6) << ")\n";
  ctx.write_manifest();
}

void run_clock_scan(Context& ctx) {
  const auto config = qls::protocol::load_protocol_config(ctx.section("protocol"));
  auto sec = ctx.section("clock_scan");
  const double t = sec.number("probe_time_s", 1e-3);
  const double span = sec.number("span_hz", 2000.0);
  const double step = sec.number("step_hz", 50.0);
  sec.finish();
  if (!(t > 0) || !(span > 0) || !(step > 0)) throw qls::ConfigError("clock_scan times and spans must be > 0");
  if (!config.double_mapping) throw qls::ConfigError("clock-transition probing requires protocol.double_mapping = true");
  const std::size_t shots = ctx.shots_or(400);

  const auto grid = qls::dynamics::linspace(-span, span, static_cast<std::size_t>(std::llround(2 * span / step)) + 1);
  const auto pulse = qls::dynamics::Pulse::carrier(std::numbers::pi / t, t);
  const auto points = qls::protocol::clock_scan(config, pulse, grid, shots, ctx.seed());

  std::ostringstream out;
  qls::csv::Writer w(out);
  w.row({"detuning_hz", "excitation_probability", "change_probability", "sigma"});
  qls::dynamics::Curve exc, changes;
  for (const auto& p : points) {
    w.row({format(p.detuning_hz), format(p.excitation_probability), format(p.change_probability), format(p.sigma)});
    exc.push_back({p.detuning_hz, p.excitation_probability});
    changes.push_back({p.detuning_hz, p.change_probability});
  }
  ctx.write_file("clock_scan.csv", out.str());

  nlohmann::json summary = {{"probe_time_s", t}, {"shots_per_point", shots}};
  summary["fwhm_excitation_hz"] = qls::dynamics::full_width_half_maximum(exc);
  try {
    summary["fwhm_change_probability_hz"] = qls::dynamics::full_width_half_maximum(changes);
  } catch (const qls::Error& e) {
    summary["fwhm_change_probability_hz"] = e.what();
  }
  ctx.write_file("summary.json", json_text(summary));
  std::cout << "line FWHM " << format(summary["fwhm_excitation_hz"].get<double>(), 6) << " Hz\n";
  if (ctx.scenario().emit_plots) {
    Series a{"state-change probability", {}}, b{"excitation", {}};
    for (const auto& p : points) a.points.emplace_back(p.detuning_hz, p.change_probability);
    for (const auto& p : points) b.points.emplace_back(p.detuning_hz, p.excitation_probability);
    ctx.write_file("clock_scan.svg", svg_plot("Clock transition scan", "detuning (Hz)", "probability", {a, b}));
  }
  ctx.write_manifest();
}

} // namespace qlsim
