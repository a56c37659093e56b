#include "qls/metrology/budget.hpp"

#include "qls/errors.hpp"
#include "qls/util/csv.hpp"

#include <cmath>
#include <fstream>
#include <ostream>

namespace qls::metrology {

std::string ion_name(Ion ion) { return ion == Ion::ca ? "Ca" : "Al"; }

void ErrorBudget::validate() const {
  for (const auto& r : rows) {
    if (!(r.uncertainty_hz >= 0)) throw ConfigError("budget row '" + r.label + "': uncertainty must be >= 0");
    if (!std::isfinite(r.shift_hz)) throw ConfigError("budget row '" + r.label + "': shift must be finite");
  }
  if (frequency_ratio && !(*frequency_ratio > 0)) throw ConfigError("frequency ratio must be > 0");
}

double frequency_ratio(std::int64_t numerator_mhz, std::int64_t denominator_mhz) {
  if (numerator_mhz <= 0 || denominator_mhz <= 0) throw ConfigError("anchor frequencies must be > 0");
  return static_cast<double>(numerator_mhz) / static_cast<double>(denominator_mhz);
}

BudgetOutcome error_budget_apply(const ErrorBudget& budget, std::int64_t f0_measured_mhz) {
  budget.validate();
  BudgetOutcome out;
  double var = 0.0;
  bool has_ca = false;
  for (const auto& r : budget.rows) {
    if (r.bound_only) {
      out.bounds.push_back(r);
      continue;
    }
    if (r.ion == Ion::ca) {
      has_ca = true;
      out.ca_shift_sum_hz += r.shift_hz;
    } else {
      out.al_shift_sum_hz += r.shift_hz;
      var += r.uncertainty_hz * r.uncertainty_hz;
    }
  }
  if (has_ca && !budget.frequency_ratio) throw ConfigError("budget has Ca+ rows but no frequency ratio");
  const double ratio = budget.frequency_ratio.value_or(1.0);
  for (const auto& r : budget.rows)
    if (!r.bound_only && r.ion == Ion::ca) var += ratio * ratio * r.uncertainty_hz * r.uncertainty_hz;

  out.correction_hz = -out.al_shift_sum_hz + ratio * out.ca_shift_sum_hz;
  out.total_uncertainty_hz = std::sqrt(var);
  // The correction is added in integer mHz; a double cannot hold f0 to 1 Hz.
  const std::int64_t total_mhz = f0_measured_mhz + static_cast<std::int64_t>(std::llround(1000.0 * out.correction_hz));
  out.f_corrected_hz = (total_mhz + (total_mhz >= 0 ? 500 : -500)) / 1000;
  return out;
}

ErrorBudget read_budget_csv(std::istream& in) {
  const auto t = csv::read(in);
  ErrorBudget b;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    BudgetRow r;
    r.label = t.text(i, "label");
    const auto& ion = t.text(i, "ion");
    if (ion == "Ca" || ion == "Ca+")
      r.ion = Ion::ca;
    else if (ion == "Al" || ion == "Al+")
      r.ion = Ion::al;
    else
      throw ConfigError("budget row " + std::to_string(i + 1) + ": unknown ion '" + ion + "'");
    r.shift_hz = t.number(i, "shift_hz");
    r.uncertainty_hz = t.number(i, "uncertainty_hz");
    if (t.has_column("kind")) {
      const auto& kind = t.text(i, "kind");
      if (kind == "bound")
        r.bound_only = true;
      else if (kind != "correction" && !kind.empty())
        throw ConfigError("budget row " + std::to_string(i + 1) + ": kind must be correction or bound");
    }
    b.rows.push_back(std::move(r));
  }
  b.validate();
  return b;
}

ErrorBudget read_budget_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open budget table '" + path + "'");
  return read_budget_csv(in);
}

void write_budget_csv(std::ostream& out, const ErrorBudget& budget, const BudgetOutcome& outcome) {
  csv::Writer w(out);
  w.row({"label", "ion", "shift_hz", "uncertainty_hz", "kind"});
  for (const auto& r : budget.rows)
    w.row({r.label, ion_name(r.ion), csv::format(r.shift_hz), csv::format(r.uncertainty_hz),
           r.bound_only ? "bound" : "correction"});
  w.row({"total Al", "Al", csv::format(outcome.al_shift_sum_hz), "", "total"});
  w.row({"total Ca", "Ca", csv::format(outcome.ca_shift_sum_hz), "", "total"});
  w.row({"correction", "Al", csv::format(outcome.correction_hz), csv::format(outcome.total_uncertainty_hz), "total"});
}

} // namespace qls::metrology
