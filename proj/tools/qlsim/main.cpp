#include "commands.hpp"

#include "qls/errors.hpp"

#include <CLI11.hpp>

#include <functional>
#include <iostream>

namespace {

enum ExitCode { ok = 0, usage = 1, config = 2, numerical = 3, insufficient = 4 };

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"qlsim: quantum logic clock scenarios"};
  app.require_subcommand(1);
  app.fallthrough(); // global flags may follow the subcommand

  qlsim::Scenario sc;
  std::size_t shots = 0;
  app.add_option("--config", sc.config_path, "config file (JSON sections)");
  app.add_option("--seed", sc.seed, "RNG seed");
  app.add_option("--out", sc.output_dir, "output directory");
  app.add_flag("--plots", sc.emit_plots, "also write SVG plots");
  auto* shots_opt = app.add_option("--shots", shots, "shots per point")->check(CLI::PositiveNumber);
  app.add_option("--format", sc.format, "output format")->check(CLI::IsMember({"csv"}));

  std::function<void(qlsim::Context&)> action;

  qlsim::ModesOptions modes;
  auto* c = app.add_subcommand("modes", "normal modes and field gradients");
  c->add_option("--tickle-hz", modes.tickle_hz, "measured in-phase axial frequency for mass inference");
  c->callback([&] { action = [&](qlsim::Context& ctx) { qlsim::run_modes(ctx, modes); }; });

  app.add_subcommand("spectrum", "sideband spectrum of the two-ion crystal")->callback([&] {
    action = qlsim::run_spectrum;
  });
  app.add_subcommand("rabi", "Rabi flopping on carrier or sideband")->callback([&] { action = qlsim::run_rabi; });

  qlsim::RamseyOptions ramsey;
  c = app.add_subcommand("ramsey", "Ramsey fringes or contrast decay");
  c->add_option("--scan", ramsey.scan, "detuning, phase or wait")->check(CLI::IsMember({"detuning", "phase", "wait", "T"}));
  c->callback([&] { action = [&](qlsim::Context& ctx) { qlsim::run_ramsey(ctx, ramsey); }; });

  app.add_subcommand("pump", "optical pumping into a stretched state")->callback([&] { action = qlsim::run_pump; });
  app.add_subcommand("qls-batch", "quantum logic readout batch")->callback([&] { action = qlsim::run_qls_batch; });
  app.add_subcommand("clock-scan", "clock line with double mapping")->callback([&] {
    action = qlsim::run_clock_scan;
  });

  qlsim::FitOptions fit;
  c = app.add_subcommand("fit", "Zeeman line fit and g factor");
  c->add_option("--campaign", fit.campaign, "campaign CSV (default: synthetic)");
  c->add_option("--table", fit.table, "budget table CSV");
  c->callback([&] { action = [&](qlsim::Context& ctx) { qlsim::run_fit(ctx, fit); }; });

  qlsim::RamseyDependenceOptions dep;
  c = app.add_subcommand("test-ramsey-dependence", "two-sided test for a Ramsey time dependence");
  c->add_option("--campaign", dep.campaign, "campaign CSV (default: synthetic)");
  c->add_option("--delta-hz", dep.delta_hz, "observed difference");
  c->add_option("--n", dep.n, "number of sets")->check(CLI::PositiveNumber);
  c->add_option("--sigma-r-hz", dep.sigma_r_hz, "per-set scatter");
  c->callback([&] { action = [&](qlsim::Context& ctx) { qlsim::run_test_ramsey_dependence(ctx, dep); }; });

  qlsim::BudgetOptions budget;
  c = app.add_subcommand("budget", "apply a systematic budget");
  c->add_option("--table", budget.table, "budget CSV");
  c->add_option("--f0", budget.f0_hz, "raw frequency in Hz (decimal text)");
  c->add_option("--ratio", budget.ratio, "frequency ratio for Ca rows");
  c->callback([&] { action = [&](qlsim::Context& ctx) { qlsim::run_budget(ctx, budget); }; });

  qlsim::CompareOptions cmp;
  c = app.add_subcommand("compare", "two-laboratory frequency comparison");
  c->add_option("--a", cmp.series_a, "CSV with t_s,hz");
  c->add_option("--b", cmp.series_b, "CSV with t_s,hz");
  c->callback([&] { action = [&](qlsim::Context& ctx) { qlsim::run_compare(ctx, cmp); }; });

  qlsim::ChainOptions chain;
  c = app.add_subcommand("chain", "exact frequency chain evaluation");
  c->add_option("--anchor", chain.anchor_hz, "anchor frequency in Hz (decimal text)");
  c->add_option("--scale", chain.scale, "single scale factor p/q");
  c->callback([&] { action = [&](qlsim::Context& ctx) { qlsim::run_chain(ctx, chain); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    if (app.get_subcommands().empty()) std::cerr << app.help();
    return usage;
  }

  sc.name = app.get_subcommands().front()->get_name();
  if (shots_opt->count() > 0) sc.shots = shots;
  try {
    qlsim::Context ctx(sc);
    action(ctx);
  } catch (const qls::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return config;
  } catch (const qls::DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return config;
  } catch (const qls::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return numerical;
  } catch (const qls::InsufficientDataError& e) {
    std::cerr << "insufficient data: " << e.what() << "\n";
    return insufficient;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return config;
  }
  return ok;
}
