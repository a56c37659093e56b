#include "qls/metrology/campaign.hpp"

#include "qls/errors.hpp"
#include "qls/metrology/statistics.hpp"
#include "qls/util/csv.hpp"
#include "qls/util/rng.hpp"

#include <cmath>
#include <fstream>
#include <ostream>

namespace qls::metrology {

namespace {

bool ensemble_convention(const csv::Table& t) {
  for (const auto& c : t.comments) {
    const auto colon = c.find(':');
    if (colon == std::string::npos || c.substr(0, colon) != "sigma_convention") continue;
    std::string v = c.substr(colon + 1);
    v.erase(0, v.find_first_not_of(' '));
    if (v == "ensemble") return true;
    if (v == "mean") return false;
    throw ConfigError("sigma_convention must be 'ensemble' or 'mean'");
  }
  return false;
}

} // namespace

std::vector<MeasurementSet> read_campaign_csv(std::istream& in, const atomic::LevelScheme& calcium) {
  const auto t = csv::read(in);
  const bool ensemble = ensemble_convention(t);
  const bool has_pair = t.has_column("ca_plus_hz") && t.has_column("ca_minus_hz") && t.has_column("ca_sigma_hz");
  if (!t.has_column("B_gauss") && !has_pair)
    throw ConfigError("campaign needs either B_gauss or the Ca+ pair columns");

  std::vector<MeasurementSet> out;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    MeasurementSet s;
    s.set_id = t.text(i, "set_id");
    const double spm = t.number(i, "s_pm");
    if (spm != 1.0 && spm != -1.0) throw ConfigError("campaign row " + std::to_string(i + 1) + ": s_pm must be +1 or -1");
    s.s_pm = spm > 0 ? 1 : -1;
    s.ramsey_t = t.number(i, "ramsey_T_s");
    s.al_detuning_hz = t.number(i, "al_detuning_hz");
    s.al_sigma_hz = t.number(i, "al_sigma_hz");
    if (ensemble) {
      const double n = t.has_column("n_measurements") ? t.number(i, "n_measurements") : 50.0;
      if (!(n >= 1)) throw ConfigError("n_measurements must be >= 1");
      s.al_sigma_hz /= std::sqrt(n);
    }
    if (has_pair) {
      s.ca_plus_hz = t.number(i, "ca_plus_hz");
      s.ca_minus_hz = t.number(i, "ca_minus_hz");
      s.ca_sigma_hz = t.number(i, "ca_sigma_hz");
    }
    if (t.has_column("B_gauss")) {
      s.b_gauss = t.number(i, "B_gauss");
      s.b_sigma_gauss = t.has_column("B_sigma_gauss") ? t.number(i, "B_sigma_gauss") : 0.0;
    } else {
      const auto fd = field_and_drift_from_pair(s.ca_plus_hz, s.ca_minus_hz, s.ca_sigma_hz, calcium);
      s.b_gauss = fd.b_gauss;
      s.b_sigma_gauss = fd.b_sigma_gauss;
    }
    if (t.has_column("comb_lock_mode")) s.comb_lock_mode = t.text(i, "comb_lock_mode");
    if (s.comb_lock_mode != "quartz" && s.comb_lock_mode != "729-locked")
      throw ConfigError("comb_lock_mode must be 'quartz' or '729-locked'");
    if (t.has_column("timestamp")) s.timestamp = t.text(i, "timestamp");
    s.validate();
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<MeasurementSet> read_campaign_file(const std::string& path, const atomic::LevelScheme& calcium) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open campaign file '" + path + "'");
  return read_campaign_csv(in, calcium);
}

void write_campaign_csv(std::ostream& out, const std::vector<MeasurementSet>& sets) {
  csv::Writer w(out);
  w.row({"set_id", "s_pm", "ramsey_T_s", "al_detuning_hz", "al_sigma_hz", "B_gauss", "B_sigma_gauss", "comb_lock_mode",
         "timestamp"});
  for (const auto& s : sets)
    w.row({s.set_id, std::to_string(s.s_pm), csv::format(s.ramsey_t), csv::format(s.al_detuning_hz, 15),
           csv::format(s.al_sigma_hz), csv::format(s.b_gauss, 15), csv::format(s.b_sigma_gauss), s.comb_lock_mode,
           s.timestamp});
}

void write_residuals_csv(std::ostream& out, const ZeemanFit& fit) {
  csv::Writer w(out);
  w.row({"set_id", "s_pm", "B_gauss", "residual_hz", "sigma_hz"});
  for (const auto& r : fit.residuals)
    w.row({r.set_id, std::to_string(r.s_pm), csv::format(r.b_gauss), csv::format(r.residual_hz), csv::format(r.sigma_hz)});
}

std::vector<MeasurementSet> synthesize_zeeman_campaign(const CampaignParams& p, std::mt19937_64& rng) {
  if (p.n_sets < 2) throw DomainError("a campaign needs at least two sets");
  std::normal_distribution<double> unit(0.0, 1.0);
  std::vector<MeasurementSet> sets;
  for (int i = 0; i < p.n_sets; ++i) {
    MeasurementSet s;
    s.set_id = std::to_string(i + 1);
    s.s_pm = i % 2 == 0 ? 1 : -1;
    s.ramsey_t = (i / 2) % 2 == 0 ? 100e-6 : 200e-6;
    const double b_true = p.b_gauss + p.b_spread_gauss * unit(rng);
    s.b_gauss = b_true + p.b_sigma_gauss * unit(rng);
    s.b_sigma_gauss = p.b_sigma_gauss;
    s.al_detuning_hz = p.f0_offset_hz + p.slope_hz_per_gauss * s.s_pm * b_true + p.point_sigma_hz * unit(rng);
    s.al_sigma_hz = p.point_sigma_hz;
    s.comb_lock_mode = i < p.n_quartz_sets ? "quartz" : "729-locked";
    s.timestamp = "synthetic-" + std::to_string(i + 1);
    sets.push_back(std::move(s));
  }
  return sets;
}

CampaignMonteCarlo campaign_monte_carlo(const CampaignParams& params, std::size_t replicates, std::uint64_t seed,
                                        Exec exec) {
  if (replicates < 2) throw InsufficientDataError("Monte-Carlo needs at least two replicates");
  const auto fits = map_indices<ZeemanFit>(replicates, exec, [&](std::size_t r) {
    auto rng = stream_engine(seed, r);
    return fit_zeeman_line(synthesize_zeeman_campaign(params, rng), 0);
  });
  std::vector<double> f0, slope;
  CampaignMonteCarlo mc;
  mc.replicates = replicates;
  for (const auto& f : fits) {
    f0.push_back(f.f0_offset_hz);
    slope.push_back(f.slope_hz_per_gauss);
    mc.chi2_mean += f.chi2;
    mc.f0_reported_sigma_hz += f.f0_sigma_hz;
  }
  mc.chi2_mean /= static_cast<double>(replicates);
  mc.f0_reported_sigma_hz /= static_cast<double>(replicates);
  mc.dof = fits.front().dof;
  const auto mf = mean_std(f0);
  const auto ms = mean_std(slope);
  mc.f0_mean_hz = mf.mean;
  mc.f0_spread_hz = mf.stddev;
  mc.slope_mean = ms.mean;
  mc.slope_spread = ms.stddev;
  return mc;
}

LabSeries synthesize_lab_comparison(const LabComparisonParams& p, std::uint64_t seed) {
  if (!(p.duration_s > 0) || !(p.sample_interval_s > 0)) throw DomainError("duration and interval must be > 0");
  auto rng = stream_engine(seed, 0);
  std::normal_distribution<double> unit(0.0, 1.0);
  LabSeries s;
  double common = 0.0;
  const double step = p.common_drift_hz_per_sqrt_s * std::sqrt(p.sample_interval_s);
  const auto n = static_cast<std::size_t>(p.duration_s / p.sample_interval_s);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = (static_cast<double>(i) + 0.5) * p.sample_interval_s;
    common += step * unit(rng);
    s.a.push_back({t, common + p.offset_hz + p.per_sample_sigma_hz * unit(rng)});
    s.b.push_back({t, common + p.per_sample_sigma_hz * unit(rng)});
  }
  return s;
}

} // namespace qls::metrology
