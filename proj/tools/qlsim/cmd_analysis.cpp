#include "commands.hpp"

#include "qls/atomic/level_scheme.hpp"
#include "qls/atomic/shifts.hpp"
#include "qls/errors.hpp"
#include "qls/metrology/budget.hpp"
#include "qls/metrology/campaign.hpp"
#include "qls/metrology/chain.hpp"
#include "qls/metrology/comparison.hpp"
#include "qls/metrology/statistics.hpp"
#include "qls/util/csv.hpp"
#include "qls/util/rng.hpp"

#include <cmath>
#include <iostream>
#include <sstream>

namespace qlsim {

namespace {

using qls::csv::format;
namespace met = qls::metrology;

struct Anchors {
  std::int64_t ca_mhz;
  std::int64_t al_mhz;
};

Anchors read_anchors(const Context& ctx) {
  auto s = ctx.section("anchors");
  Anchors a{met::parse_hz_to_mhz(s.text("ca_hz", "411042129776398")),
            met::parse_hz_to_mhz(s.text("al_hz", "1122842857334000"))};
  s.finish();
  if (a.ca_mhz <= 0 || a.al_mhz <= 0) throw qls::ConfigError("anchor frequencies must be > 0");
  return a;
}

// Campaign from a CSV file, or a synthetic one drawn from the seed.
std::vector<met::MeasurementSet> load_campaign(Context& ctx, qls::ConfigSection& sec, const std::string& path,
                                               const qls::atomic::LevelScheme& calcium, bool& synthetic) {
  met::CampaignParams p;
  p.n_sets = static_cast<int>(sec.integer("n_sets", p.n_sets));
  p.f0_offset_hz = sec.number("f0_offset_hz", 711.0);
  p.slope_hz_per_gauss = sec.number("slope_hz_per_gauss", p.slope_hz_per_gauss);
  p.b_gauss = sec.number("b_gauss", p.b_gauss);
  p.b_sigma_gauss = sec.number("b_sigma_gauss", p.b_sigma_gauss);
  p.point_sigma_hz = sec.number("point_sigma_hz", p.point_sigma_hz);
  const std::string from_config = sec.text("campaign", "");
  const std::string file = path.empty() ? from_config : path;
  synthetic = file.empty();
  if (!synthetic) return met::read_campaign_file(file, calcium);
  auto rng = qls::stream_engine(ctx.seed(), 0);
  auto sets = met::synthesize_zeeman_campaign(p, rng);
  std::ostringstream out;
  met::write_campaign_csv(out, sets);
  ctx.write_file("campaign.csv", out.str());
  return sets;
}

} // namespace

void run_fit(Context& ctx, const FitOptions& opt) {
  const auto atoms = qls::atomic::load_atomic_data(ctx.section("species"));
  const auto anchors = read_anchors(ctx);
  auto sec = ctx.section("fit");
  bool synthetic = false;
  const auto sets = load_campaign(ctx, sec, opt.campaign, atoms.calcium, synthetic);
  const double mimic = sec.number("ac_zeeman_mimic_gauss", 4e-6);
  const std::string table = opt.table.empty() ? sec.text("budget_table", "") : opt.table;
  sec.finish();

  const auto fit = met::fit_zeeman_line(sets, anchors.al_mhz);
  const double g_ground = atoms.aluminium.level(qls::atomic::labels::al_ground).g_factor;
  const auto g = met::g_factor_from_fit(fit, g_ground);
  std::ostringstream res;
  met::write_residuals_csv(res, fit);
  ctx.write_file("residuals.csv", res.str());

  double mean_b = 0.0;
  for (const auto& s : sets) mean_b += s.b_gauss;
  mean_b /= static_cast<double>(sets.size());

  nlohmann::json result = {{"campaign", synthetic ? "synthetic" : "file"},
                           {"n_sets", sets.size()},
                           {"f0_raw_hz", met::format_mhz_as_hz(fit.f0_absolute_mhz())},
                           {"f0_sigma_hz", fit.f0_sigma_hz},
                           {"slope_hz_per_gauss", fit.slope_hz_per_gauss},
                           {"slope_sigma_hz_per_gauss", fit.slope_sigma},
                           {"g", g.g},
                           {"g_sigma", g.sigma},
                           {"g_fractional_bound_ac_zeeman", qls::atomic::ac_zeeman_g_fractional_bound(mimic, mean_b)},
                           {"chi2", fit.chi2},
                           {"dof", fit.dof}};
  if (!table.empty()) {
    met::ErrorBudget budget = met::read_budget_file(table);
    budget.frequency_ratio = met::frequency_ratio(fit.f0_absolute_mhz(), anchors.ca_mhz);
    const auto out = met::error_budget_apply(budget, fit.f0_absolute_mhz());
    result["correction_hz"] = out.correction_hz;
    result["f_final_hz"] = std::to_string(out.f_corrected_hz);
    result["uncertainty_hz"] = out.total_uncertainty_hz;
  }
  ctx.write_file("result.json", json_text(result));
  std::cout << "f0 = " << result["f0_raw_hz"].get<std::string>() << " Hz +- " << format(fit.f0_sigma_hz, 4)
            << " Hz, g = " << format(g.g, 9) << " +- " << format(g.sigma, 2) << "\n";
  if (ctx.scenario().emit_plots) {
    Series plus{"s = +1", {}}, minus{"s = -1", {}};
    for (std::size_t i = 0; i < fit.residuals.size(); ++i)
      (fit.residuals[i].s_pm > 0 ? plus : minus).points.emplace_back(static_cast<double>(i + 1), fit.residuals[i].residual_hz);
    ctx.write_file("residuals.svg", svg_plot("Zeeman fit residuals", "set", "residual (Hz)", {plus, minus}, true));
  }
  ctx.write_manifest();
}

void run_test_ramsey_dependence(Context& ctx, const RamseyDependenceOptions& opt) {
  const auto atoms = qls::atomic::load_atomic_data(ctx.section("species"));
  const auto anchors = read_anchors(ctx);
  auto sec = ctx.section("test_ramsey_dependence");
  nlohmann::json result;
  double delta = 0.0, sigma_r = 0.0;
  int n = 0;
  if (opt.delta_hz && opt.n && opt.sigma_r_hz) {
    sec.finish();
    delta = *opt.delta_hz, n = *opt.n, sigma_r = *opt.sigma_r_hz;
  } else {
    bool synthetic = false;
    const auto sets = load_campaign(ctx, sec, opt.campaign, atoms.calcium, synthetic);
    sec.finish();
    const auto fit = met::fit_zeeman_line(sets, anchors.al_mhz);
    std::vector<double> short_t, long_t;
    for (const auto& s : sets) {
      const double f0_i = s.al_detuning_hz - fit.slope_hz_per_gauss * s.s_pm * s.b_gauss;
      (s.ramsey_t > 150e-6 ? long_t : short_t).push_back(f0_i);
    }
    if (short_t.empty() || long_t.empty())
      throw qls::InsufficientDataError("campaign needs sets at both Ramsey times");
    delta = met::mean_std(long_t).mean - met::mean_std(short_t).mean;
    n = static_cast<int>(sets.size());
    sigma_r = fit.f0_sigma_hz;
    result["n_long"] = long_t.size();
    result["n_short"] = short_t.size();
  }
  if (opt.delta_hz) delta = *opt.delta_hz;
  if (opt.n) n = *opt.n;
  if (opt.sigma_r_hz) sigma_r = *opt.sigma_r_hz;
  const auto t = met::hypothesis_test(delta, n, sigma_r);
  result["delta_hz"] = delta;
  result["n"] = n;
  result["sigma_r_hz"] = sigma_r;
  result["sigma_hz"] = t.sigma_hz;
  result["p_value"] = t.p_value;
  ctx.write_file("result.json", json_text(result));
  std::cout << "delta " << format(delta, 6) << " Hz, sigma " << format(t.sigma_hz, 4) << " Hz, p = "
            << format(t.p_value, 3) << "\n";
  ctx.write_manifest();
}

void run_budget(Context& ctx, const BudgetOptions& opt) {
  const auto anchors = read_anchors(ctx);
  auto sec = ctx.section("budget");
  const std::string table = opt.table.empty() ? sec.text("table", "") : opt.table;
  const std::string f0_text = opt.f0_hz.empty() ? sec.text("f0_hz", "") : opt.f0_hz;
  std::optional<double> ratio = opt.ratio;
  if (!ratio && sec.has("frequency_ratio")) ratio = sec.number("frequency_ratio");
  sec.finish();
  if (table.empty()) throw qls::ConfigError("budget needs a table (--table or budget.table)");
  if (f0_text.empty()) throw qls::ConfigError("budget needs f0 (--f0 or budget.f0_hz)");

  const std::int64_t f0 = met::parse_hz_to_mhz(f0_text);
  auto budget = met::read_budget_file(table);
  budget.frequency_ratio = ratio ? *ratio : met::frequency_ratio(f0, anchors.ca_mhz);
  const auto out = met::error_budget_apply(budget, f0);

  std::ostringstream csv;
  met::write_budget_csv(csv, budget, out);
  ctx.write_file("budget.csv", csv.str());
  nlohmann::json bounds = nlohmann::json::array();
  for (const auto& b : out.bounds)
    bounds.push_back({{"label", b.label}, {"ion", met::ion_name(b.ion)}, {"bound_hz", b.uncertainty_hz}});
  ctx.write_file("result.json", json_text({{"f0_raw_hz", met::format_mhz_as_hz(f0)},
                                           {"frequency_ratio", *budget.frequency_ratio},
                                           {"correction_hz", out.correction_hz},
                                           {"f_final_hz", std::to_string(out.f_corrected_hz)},
                                           {"uncertainty_hz", out.total_uncertainty_hz},
                                           {"bounds", bounds}}));
  std::cout << "correction " << format(out.correction_hz, 6) << " Hz\n";
  std::cout << "f_final = " << out.f_corrected_hz << " Hz, u = " << format(out.total_uncertainty_hz, 4) << " Hz\n";
  ctx.write_manifest();
}

void run_compare(Context& ctx, const CompareOptions& opt) {
  auto sec = ctx.section("compare");
  met::LabComparisonParams p;
  p.duration_s = sec.number("duration_s", p.duration_s);
  p.sample_interval_s = sec.number("sample_interval_s", p.sample_interval_s);
  p.per_sample_sigma_hz = sec.number("per_sample_sigma_hz", p.per_sample_sigma_hz);
  p.offset_hz = sec.number("offset_hz", p.offset_hz);
  p.common_drift_hz_per_sqrt_s = sec.number("common_drift_hz_per_sqrt_s", p.common_drift_hz_per_sqrt_s);
  const double bin_s = sec.number("bin_s", 60.0);
  const double hist_bin = sec.number("hist_bin_hz", 0.5);
  sec.finish();

  auto read_series = [](const std::string& path) {
    const auto t = qls::csv::read_file(path);
    std::vector<met::TimedValue> v;
    for (std::size_t i = 0; i < t.rows.size(); ++i) v.push_back({t.number(i, "t_s"), t.number(i, "hz")});
    return v;
  };
  met::LabSeries series;
  if (opt.series_a.empty() != opt.series_b.empty()) throw qls::ConfigError("compare needs both --a and --b, or neither");
  if (opt.series_a.empty())
    series = met::synthesize_lab_comparison(p, ctx.seed());
  else
    series = {read_series(opt.series_a), read_series(opt.series_b)};

  const auto r = met::comparison_histogram(series.a, series.b, bin_s, hist_bin);
  std::ostringstream diffs, hist;
  qls::csv::Writer dw(diffs), hw(hist);
  dw.row({"bin_index", "difference_hz"});
  for (std::size_t i = 0; i < r.differences_hz.size(); ++i) dw.row({std::to_string(i), format(r.differences_hz[i])});
  hw.row({"centre_hz", "count"});
  for (const auto& h : r.histogram) hw.row({format(h.centre_hz), std::to_string(h.count)});
  ctx.write_file("differences.csv", diffs.str());
  ctx.write_file("histogram.csv", hist.str());
  ctx.write_file("result.json", json_text({{"n_bins", r.n_bins},
                                           {"mean_diff_hz", r.mean_diff_hz},
                                           {"mean_diff_sigma_hz", r.mean_diff_sigma_hz},
                                           {"gaussian_centre_hz", r.centre_hz},
                                           {"gaussian_centre_sigma_hz", r.centre_sigma_hz},
                                           {"gaussian_width_hz", r.width_hz},
                                           {"gaussian_width_sigma_hz", r.width_sigma_hz}}));
  std::cout << "mean difference " << format(r.mean_diff_hz, 4) << " +- " << format(r.mean_diff_sigma_hz, 2)
            << " Hz, width " << format(r.width_hz, 4) << " Hz\n";
  if (ctx.scenario().emit_plots) {
    Series s{"counts", {}};
    for (const auto& h : r.histogram) s.points.emplace_back(h.centre_hz, h.count);
    ctx.write_file("histogram.svg", svg_plot("Lab comparison", "difference (Hz)", "bins", {s}, true));
  }
  ctx.write_manifest();
}

void run_chain(Context& ctx, const ChainOptions& opt) {
  auto sec = ctx.section("chain");
  std::string anchor_text = opt.anchor_hz.empty() ? sec.text("anchor_hz", "") : opt.anchor_hz;
  std::vector<met::FrequencyChainNode> nodes;
  for (auto& n : sec.sections("nodes")) {
    const std::string kind = n.text("kind", "affine");
    const std::string label = n.text("label", kind);
    if (kind == "affine" || kind == "scale") {
      met::FrequencyChainNode node{label, met::Rational::parse(n.text("a", "1")),
                                   met::Rational::parse(n.text("b_hz", "0")) * met::Rational(1000)};
      if (node.a.num() == 0) throw qls::ConfigError(n.path() + ".a must be nonzero");
      nodes.push_back(node);
    } else if (kind == "comb") {
      nodes.push_back(met::FrequencyChainNode::comb_transfer(
          label, n.integer("n_in", 0), met::Rational::parse(n.text("offset_in_hz", "0")) * met::Rational(1000),
          n.integer("n_out", 0), met::Rational::parse(n.text("offset_out_hz", "0")) * met::Rational(1000)));
    } else {
      throw qls::ConfigError(n.path() + ".kind must be affine, scale or comb");
    }
    n.finish();
  }
  sec.finish();
  if (opt.scale) nodes = {met::FrequencyChainNode::scale("scale", met::Rational::parse(*opt.scale))};
  if (anchor_text.empty()) throw qls::ConfigError("chain needs an anchor (--anchor or chain.anchor_hz)");
  if (nodes.empty()) throw qls::ConfigError("chain needs at least one node (--scale or chain.nodes)");

  const std::int64_t anchor = met::parse_hz_to_mhz(anchor_text);
  const auto exact = met::frequency_chain_exact(nodes, anchor);
  const std::int64_t out = exact.round_to_int64();
  ctx.write_file("result.json", json_text({{"anchor_hz", met::format_mhz_as_hz(anchor)},
                                           {"nodes", nodes.size()},
                                           {"result_hz", met::format_mhz_as_hz(out)},
                                           {"result_exact_mhz", exact.str()}}));
  std::cout << met::format_mhz_as_hz(out) << " Hz\n";
  ctx.write_manifest();
}

} // namespace qlsim
