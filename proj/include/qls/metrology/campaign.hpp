#pragma once

#include "qls/atomic/level_scheme.hpp"
#include "qls/metrology/comparison.hpp"
#include "qls/metrology/zeeman_fit.hpp"
#include "qls/util/parallel.hpp"

#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

namespace qls::metrology {

// Campaign CSV columns:
//   set_id, s_pm, ramsey_T_s, al_detuning_hz, al_sigma_hz, B_gauss, B_sigma_gauss,
//   comb_lock_mode, timestamp
// Optional: ca_plus_hz, ca_minus_hz, ca_sigma_hz (B is inferred from them when
// the B_gauss column is absent) and n_measurements.
// A comment line "# sigma_convention: ensemble" marks al_sigma_hz as the
// scatter of the single measurements; it is then divided by sqrt(n_measurements)
// (default 50). The default convention "mean" takes it as is.
std::vector<MeasurementSet> read_campaign_csv(std::istream& in, const atomic::LevelScheme& calcium);
std::vector<MeasurementSet> read_campaign_file(const std::string& path, const atomic::LevelScheme& calcium);
void write_campaign_csv(std::ostream& out, const std::vector<MeasurementSet>& sets);
void write_residuals_csv(std::ostream& out, const ZeemanFit& fit);

struct CampaignParams {
  int n_sets = 18;
  int n_quartz_sets = 8;               // first sets with the comb on the quartz reference
  double f0_offset_hz = 0.0;           // true zero-field frequency minus anchor
  double slope_hz_per_gauss = 2.100056e6;
  double b_gauss = 4.0;
  double b_spread_gauss = 0.01;        // set-to-set field variation
  double b_sigma_gauss = 1e-6;
  double point_sigma_hz = 152.73506473629428; // 36 Hz * sqrt(18)
};

// Alternates s_pm and the Ramsey time (100, 200 us) across sets.
std::vector<MeasurementSet> synthesize_zeeman_campaign(const CampaignParams& params, std::mt19937_64& rng);

struct CampaignMonteCarlo {
  std::size_t replicates = 0;
  double f0_mean_hz = 0.0;
  double f0_spread_hz = 0.0;       // sample standard deviation over replicates
  double f0_reported_sigma_hz = 0.0; // fit sigma, identical for every replicate
  double slope_mean = 0.0;
  double slope_spread = 0.0;
  double chi2_mean = 0.0;
  int dof = 0;
};

// Replicate r uses stream (seed, r); aggregation is in replicate order.
CampaignMonteCarlo campaign_monte_carlo(const CampaignParams& params, std::size_t replicates, std::uint64_t seed,
                                        Exec exec = Exec::parallel);

struct LabComparisonParams {
  double duration_s = 5 * 3600.0;
  double sample_interval_s = 6.0;
  double per_sample_sigma_hz = 5.6; // projection noise of one lab sample
  double offset_hz = 1.3;           // lab a minus lab b
  double common_drift_hz_per_sqrt_s = 0.05; // shared laser random walk
};

struct LabSeries {
  std::vector<TimedValue> a;
  std::vector<TimedValue> b;
};

LabSeries synthesize_lab_comparison(const LabComparisonParams& params, std::uint64_t seed);

} // namespace qls::metrology
