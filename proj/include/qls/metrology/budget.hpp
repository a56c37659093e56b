#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace qls::metrology {

enum class Ion { ca, al };

// shift is (perturbed - unperturbed) of the respective transition. Bound rows
// carry limits that are reported but neither applied nor added to the total.
struct BudgetRow {
  std::string label;
  Ion ion = Ion::al;
  double shift_hz = 0.0;
  double uncertainty_hz = 0.0;
  bool bound_only = false;
};

struct ErrorBudget {
  std::vector<BudgetRow> rows;
  std::optional<double> frequency_ratio; // nu_Al / nu_Ca

  void validate() const;
};

struct BudgetOutcome {
  double al_shift_sum_hz = 0.0;
  double ca_shift_sum_hz = 0.0;
  double correction_hz = 0.0;
  double total_uncertainty_hz = 0.0;
  std::int64_t f_corrected_hz = 0; // rounded to the nearest Hz
  std::vector<BudgetRow> bounds;
};

// correction = -sum(Al shifts) + ratio * sum(Ca shifts); uncertainty is the
// quadrature sum with Ca rows scaled by the ratio. f0 in mHz.
BudgetOutcome error_budget_apply(const ErrorBudget& budget, std::int64_t f0_measured_mhz);

// nu_Al / nu_Ca from two absolute anchors in mHz.
double frequency_ratio(std::int64_t numerator_mhz, std::int64_t denominator_mhz);

// CSV columns: label, ion (Ca|Al), shift_hz, uncertainty_hz, kind (correction|bound).
ErrorBudget read_budget_csv(std::istream& in);
ErrorBudget read_budget_file(const std::string& path);
void write_budget_csv(std::ostream& out, const ErrorBudget& budget, const BudgetOutcome& outcome);

std::string ion_name(Ion ion);

} // namespace qls::metrology
