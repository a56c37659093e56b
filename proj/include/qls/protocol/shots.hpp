#pragma once

#include "qls/config.hpp"
#include "qls/dynamics/evolve.hpp"
#include "qls/protocol/pumping.hpp"
#include "qls/util/parallel.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace qls::protocol {

struct ProtocolConfig {
  int pump_repetitions = 10;
  double pump_wait = 300e-6;                  // s
  double carrier_pi_fidelity = 1.0;           // Ca+ carrier pi-pulse of step iii
  double sideband_pi_fidelity = 1.0;          // Al+ blue-sideband pi-pulse of step v
  double mapping_pi_fidelity = 1.0;           // Ca+ blue-sideband pi-pulse of step v
  std::map<std::string, double> cooling_result_nbar{{"axial-in-phase", 0.05}, {"axial-out-of-phase", 0.05}};
  std::string transfer_mode = "axial-out-of-phase";
  double detection_error = 0.0;
  int target_twice_m = 5;
  bool double_mapping = false;
  // When set, step ii is simulated with the pumping model and an Al+ ion left
  // outside the stretched state is off-resonant for probe and mapping.
  bool model_pumping = false;
  bool record_trace = false;

  double transfer_nbar() const;
  PumpConfig pump_config() const;
  void validate() const;
};

ProtocolConfig load_protocol_config(ConfigSection section);

// What step iv does to the Al+ ion. Either a fixed excitation probability or
// a pulse sequence integrated once by the dynamics engine.
struct ProbeSpec {
  enum class Kind { probability, pulses };
  Kind kind = Kind::probability;
  double probability = 0.0;
  std::vector<dynamics::Pulse> pulses;
  dynamics::NoiseModel noise;
  bool clock_transition = false;

  static ProbeSpec fixed(double p, bool clock = false);
  static ProbeSpec sequence(std::vector<dynamics::Pulse> pulses, const dynamics::NoiseModel& noise, bool clock = false);

  // Excitation probability from the ground state.
  double excitation_probability() const;
};

enum class Outcome : std::uint8_t { bright = 0, dark = 1 };

struct TraceEntry {
  std::string step;
  double al_excited = 0.0;
  double ca_shelved = 0.0;
  int phonons = 0;
};

struct ShotRecord {
  Outcome outcome = Outcome::bright;
  bool al_excited = false; // true internal state after the probe
  std::uint64_t rng_stream_id = 0;
  std::vector<TraceEntry> step_trace;

  // Dark Ca+ reports an excited Al+.
  bool detected_excited() const { return outcome == Outcome::dark; }
};

// Resolves the probe once and runs steps i to vi.
ShotRecord run_shot(const ProtocolConfig& config, const ProbeSpec& probe, std::mt19937_64& rng,
                    std::uint64_t stream_id = 0);

// Same as run_shot with an already resolved excitation probability.
ShotRecord run_shot_with_probability(const ProtocolConfig& config, double p, std::mt19937_64& rng,
                                     std::uint64_t stream_id = 0);

struct BatchResult {
  std::size_t n_shots = 0;
  std::size_t dark_counts = 0;
  double p_hat = 0.0;
  double sigma_qpn = 0.0;
  std::vector<Outcome> outcomes;
};

// Shot i draws from stream (seed, i); counts are identical for any Exec.
BatchResult run_batch(const ProtocolConfig& config, const ProbeSpec& probe, std::size_t n_shots, std::uint64_t seed,
                      Exec exec = Exec::parallel);

// Double-mapping readout of the long-lived clock state. The tracker carries
// the Al+ state and the last decided readout between consecutive experiments.
struct ClockTracker {
  bool al_in_clock_state = false;
  std::optional<bool> decided;
};

struct ClockShotRecord {
  ShotRecord first;
  ShotRecord second;
  bool decided_excited = false;
  bool state_change = false;
};

ClockShotRecord run_clock_shot(const ProtocolConfig& config, double probe_probability, ClockTracker& tracker,
                               std::mt19937_64& rng, std::uint64_t stream_id = 0);
ClockShotRecord run_clock_shot(const ProtocolConfig& config, const ProbeSpec& clock_probe, ClockTracker& tracker,
                               std::mt19937_64& rng, std::uint64_t stream_id = 0);

// Steady-state probability of a reported change at zero excitation when every
// single readout errs with probability eps: 2 eps^2 (1-eps)^2 / (eps^2 + (1-eps)^2).
double double_mapping_false_change_rate(double eps);

struct ClockScanPoint {
  double detuning_hz = 0.0;
  double excitation_probability = 0.0;
  double change_probability = 0.0;
  double sigma = 0.0;
};

// For each detuning: resolve the clock pulse, then run `n_shots` consecutive
// experiments (after one settling shot) on their own RNG stream.
std::vector<ClockScanPoint> clock_scan(const ProtocolConfig& config, const dynamics::Pulse& clock_pulse,
                                       const std::vector<double>& detunings_hz, std::size_t n_shots,
                                       std::uint64_t seed, Exec exec = Exec::parallel);

} // namespace qls::protocol
