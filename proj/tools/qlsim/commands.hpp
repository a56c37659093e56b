#pragma once

#include "context.hpp"

#include <optional>
#include <string>

namespace qlsim {

struct ModesOptions {
  std::optional<double> tickle_hz; // measured in-phase frequency for mass inference
};
void run_modes(Context& ctx, const ModesOptions& opt);
void run_spectrum(Context& ctx);
void run_rabi(Context& ctx);

struct RamseyOptions {
  std::string scan = "detuning";
};
void run_ramsey(Context& ctx, const RamseyOptions& opt);
void run_pump(Context& ctx);
void run_qls_batch(Context& ctx);
void run_clock_scan(Context& ctx);

struct FitOptions {
  std::string campaign; // empty: synthetic campaign from the seed
  std::string table;    // optional budget table for the final result
};
void run_fit(Context& ctx, const FitOptions& opt);

struct RamseyDependenceOptions {
  std::string campaign;
  std::optional<double> delta_hz;
  std::optional<int> n;
  std::optional<double> sigma_r_hz;
};
void run_test_ramsey_dependence(Context& ctx, const RamseyDependenceOptions& opt);

struct BudgetOptions {
  std::string table;
  std::string f0_hz;
  std::optional<double> ratio;
};
void run_budget(Context& ctx, const BudgetOptions& opt);

struct CompareOptions {
  std::string series_a;
  std::string series_b;
};
void run_compare(Context& ctx, const CompareOptions& opt);

struct ChainOptions {
  std::string anchor_hz;
  std::optional<std::string> scale;
};
void run_chain(Context& ctx, const ChainOptions& opt);

} // namespace qlsim
