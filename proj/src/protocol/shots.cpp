#include "qls/protocol/shots.hpp"

#include "qls/errors.hpp"
#include "qls/util/rng.hpp"

#include <cmath>
#include <numbers>

namespace qls::protocol {

namespace {

bool draw(std::mt19937_64& rng, double p) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return u(rng) < p;
}

int sample_phonons(std::mt19937_64& rng, double nbar) {
  if (nbar <= 0.0) return 0;
  std::geometric_distribution<int> g(1.0 / (1.0 + nbar));
  return g(rng);
}

// Probability that a sideband pi-pulse calibrated on |0> <-> |1> swaps a pair
// whose upper member holds n_upper phonons.
double sideband_swap_probability(int n_upper) {
  if (n_upper <= 0) return 0.0;
  const double s = std::sin(0.5 * std::numbers::pi * std::sqrt(static_cast<double>(n_upper)));
  return s * s;
}

// Blue-sideband pi-pulse on a two-level system with `upper` the state that
// holds one extra phonon. The ideal swap happens with the Fock-dependent
// probability; an imperfect pulse inverts that choice with 1 - fidelity.
void blue_sideband(bool& upper, int& n, double fidelity, std::mt19937_64& rng) {
  const int n_upper = upper ? n : n + 1;
  bool swap = draw(rng, sideband_swap_probability(n_upper));
  if (!draw(rng, fidelity)) swap = !swap;
  if (!swap) return;
  if (upper) {
    // |upper, 0> has no partner on the blue sideband; the error channel
    // still moves it, adding a phonon.
    n = n > 0 ? n - 1 : 1;
  } else {
    ++n;
  }
  upper = !upper;
}

void trace(std::vector<TraceEntry>* out, const char* step, bool al, bool ca, int n) {
  if (out) out->push_back({step, al ? 1.0 : 0.0, ca ? 1.0 : 0.0, n});
}

// Steps iii, v and vi for a given Al+ state. Returns the detected outcome and
// updates the Al+ state (which the blue-sideband pulse may change).
Outcome map_and_detect(const ProtocolConfig& config, bool& al_excited, bool al_resonant, int n, std::mt19937_64& rng,
                       std::vector<TraceEntry>* tr) {
  bool ca_shelved = draw(rng, config.carrier_pi_fidelity);
  trace(tr, "iii:ca-carrier", al_excited, ca_shelved, n);
  if (al_resonant) blue_sideband(al_excited, n, config.sideband_pi_fidelity, rng);
  trace(tr, "v:al-sideband", al_excited, ca_shelved, n);
  // Ca+ blue sideband: D_{5/2} is the upper state.
  blue_sideband(ca_shelved, n, config.mapping_pi_fidelity, rng);
  trace(tr, "v:ca-sideband", al_excited, ca_shelved, n);
  bool dark = ca_shelved;
  if (draw(rng, config.detection_error)) dark = !dark;
  trace(tr, "vi:detect", al_excited, dark, n);
  return dark ? Outcome::dark : Outcome::bright;
}

void check_fraction(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) throw ConfigError(std::string(name) + " must lie in [0, 1]");
}

double pumped_fraction(const ProtocolConfig& config) {
  if (!config.model_pumping) return 1.0;
  return optical_pump(PumpState::uniform_ground(), config.pump_config()).ground_population(config.target_twice_m);
}

ShotRecord shot(const ProtocolConfig& config, double p, double pumped, std::mt19937_64& rng, std::uint64_t stream_id) {
  ShotRecord rec;
  rec.rng_stream_id = stream_id;
  auto* tr = config.record_trace ? &rec.step_trace : nullptr;
  int n = sample_phonons(rng, config.transfer_nbar());
  trace(tr, "i:cooling", false, false, n);
  const bool resonant = pumped >= 1.0 || draw(rng, pumped);
  trace(tr, "ii:pumping", false, false, n);
  bool al = resonant && draw(rng, p);
  rec.al_excited = al;
  trace(tr, "iv:probe", al, false, n);
  rec.outcome = map_and_detect(config, al, resonant, n, rng, tr);
  return rec;
}

} // namespace

double ProtocolConfig::transfer_nbar() const {
  const auto it = cooling_result_nbar.find(transfer_mode);
  if (it == cooling_result_nbar.end()) throw ConfigError("no cooling nbar for transfer mode '" + transfer_mode + "'");
  return it->second;
}

PumpConfig ProtocolConfig::pump_config() const {
  PumpConfig p;
  p.repetitions = pump_repetitions;
  p.wait = pump_wait;
  p.target_twice_m = target_twice_m;
  return p;
}

void ProtocolConfig::validate() const {
  if (pump_repetitions < 1) throw ConfigError("pump_repetitions must be >= 1");
  if (!(pump_wait >= 0)) throw ConfigError("pump_wait must be >= 0");
  check_fraction(carrier_pi_fidelity, "carrier_pi_fidelity");
  check_fraction(sideband_pi_fidelity, "sideband_pi_fidelity");
  check_fraction(mapping_pi_fidelity, "mapping_pi_fidelity");
  check_fraction(detection_error, "detection_error");
  for (const auto& [label, nbar] : cooling_result_nbar)
    if (!(nbar >= 0)) throw ConfigError("cooling nbar for '" + label + "' must be >= 0");
  if (std::abs(target_twice_m) != 5) throw ConfigError("target_zeeman_state must be +5/2 or -5/2");
  transfer_nbar();
}

ProtocolConfig load_protocol_config(ConfigSection section) {
  ProtocolConfig c;
  c.pump_repetitions = static_cast<int>(section.integer("pump_repetitions", c.pump_repetitions));
  c.pump_wait = section.number("pump_wait_s", c.pump_wait);
  c.carrier_pi_fidelity = section.number("carrier_pi_fidelity", c.carrier_pi_fidelity);
  c.sideband_pi_fidelity = section.number("sideband_pi_fidelity", c.sideband_pi_fidelity);
  c.mapping_pi_fidelity = section.number("mapping_pi_fidelity", c.mapping_pi_fidelity);
  c.detection_error = section.number("detection_error", c.detection_error);
  c.transfer_mode = section.text("transfer_mode", c.transfer_mode);
  c.double_mapping = section.boolean("double_mapping", c.double_mapping);
  c.model_pumping = section.boolean("model_pumping", c.model_pumping);
  c.record_trace = section.boolean("record_trace", c.record_trace);
  const std::string target = section.text("target_zeeman_state", "+5/2");
  if (target == "+5/2")
    c.target_twice_m = 5;
  else if (target == "-5/2")
    c.target_twice_m = -5;
  else
    throw ConfigError(section.path() + ".target_zeeman_state must be \"+5/2\" or \"-5/2\"");
  auto nbar = section.section("cooling_result_nbar");
  for (const auto& label : nbar.keys()) c.cooling_result_nbar[label] = nbar.number(label);
  nbar.finish();
  section.finish();
  c.validate();
  return c;
}

ProbeSpec ProbeSpec::fixed(double p, bool clock) {
  if (!(p >= 0 && p <= 1)) throw DomainError("probe probability must lie in [0, 1]");
  ProbeSpec s;
  s.probability = p;
  s.clock_transition = clock;
  return s;
}

ProbeSpec ProbeSpec::sequence(std::vector<dynamics::Pulse> pulses, const dynamics::NoiseModel& noise, bool clock) {
  ProbeSpec s;
  s.kind = Kind::pulses;
  s.pulses = std::move(pulses);
  s.noise = noise;
  s.clock_transition = clock;
  return s;
}

double ProbeSpec::excitation_probability() const {
  if (kind == Kind::probability) return probability;
  // Carrier probing of Al+ does not touch the motion; a bare two-level space suffices.
  const auto state = dynamics::evolve(dynamics::QuantumState::ground(0), pulses, noise);
  const double p = state.excited_population();
  return std::min(1.0, std::max(0.0, p));
}

ShotRecord run_shot_with_probability(const ProtocolConfig& config, double p, std::mt19937_64& rng,
                                     std::uint64_t stream_id) {
  if (!(p >= 0 && p <= 1)) throw DomainError("excitation probability must lie in [0, 1]");
  return shot(config, p, pumped_fraction(config), rng, stream_id);
}

ShotRecord run_shot(const ProtocolConfig& config, const ProbeSpec& probe, std::mt19937_64& rng,
                    std::uint64_t stream_id) {
  config.validate();
  if (probe.clock_transition)
    throw ConfigError("clock-transition probes need the double-mapping readout (use run_clock_shot)");
  return run_shot_with_probability(config, probe.excitation_probability(), rng, stream_id);
}

BatchResult run_batch(const ProtocolConfig& config, const ProbeSpec& probe, std::size_t n_shots, std::uint64_t seed,
                      Exec exec) {
  config.validate();
  if (n_shots < 1) throw DomainError("a batch needs at least one shot");
  if (probe.clock_transition) throw ConfigError("clock-transition probes need the double-mapping readout");
  const double p = probe.excitation_probability();
  const double pumped = pumped_fraction(config);

  BatchResult r;
  r.n_shots = n_shots;
  r.outcomes.resize(n_shots);
  for_each_index(n_shots, exec, [&](std::size_t i) {
    auto rng = stream_engine(seed, i);
    r.outcomes[i] = shot(config, p, pumped, rng, i).outcome;
  });
  for (auto o : r.outcomes) r.dark_counts += o == Outcome::dark ? 1 : 0;
  r.p_hat = static_cast<double>(r.dark_counts) / static_cast<double>(n_shots);
  r.sigma_qpn = std::sqrt(r.p_hat * (1.0 - r.p_hat) / static_cast<double>(n_shots));
  return r;
}

ClockShotRecord run_clock_shot(const ProtocolConfig& config, double probe_probability, ClockTracker& tracker,
                               std::mt19937_64& rng, std::uint64_t stream_id) {
  config.validate();
  if (!config.double_mapping) throw ConfigError("clock-transition probing requires double_mapping = true");
  if (!(probe_probability >= 0 && probe_probability <= 1))
    throw DomainError("excitation probability must lie in [0, 1]");

  // The probe drives population either way between 1S0 and 3P0.
  if (draw(rng, probe_probability)) tracker.al_in_clock_state = !tracker.al_in_clock_state;

  ClockShotRecord rec;
  auto readout = [&](ShotRecord& r) {
    r.rng_stream_id = stream_id;
    r.al_excited = tracker.al_in_clock_state;
    int n = sample_phonons(rng, config.transfer_nbar());
    // 3P0 is read through the intercombination line without being disturbed;
    // the copy below is what the mapping acts on.
    bool mapped = tracker.al_in_clock_state;
    r.outcome = map_and_detect(config, mapped, true, n, rng, config.record_trace ? &r.step_trace : nullptr);
  };
  readout(rec.first);
  readout(rec.second);

  const bool a = rec.first.detected_excited();
  const bool b = rec.second.detected_excited();
  const bool previous = tracker.decided.value_or(false);
  const bool decided = a == b ? a : previous;
  rec.decided_excited = decided;
  rec.state_change = tracker.decided.has_value() && decided != previous;
  tracker.decided = decided;
  return rec;
}

ClockShotRecord run_clock_shot(const ProtocolConfig& config, const ProbeSpec& clock_probe, ClockTracker& tracker,
                               std::mt19937_64& rng, std::uint64_t stream_id) {
  if (!clock_probe.clock_transition) throw ConfigError("run_clock_shot needs a clock-transition probe");
  return run_clock_shot(config, clock_probe.excitation_probability(), tracker, rng, stream_id);
}

double double_mapping_false_change_rate(double eps) {
  const double a = eps * eps;
  const double b = (1.0 - eps) * (1.0 - eps);
  return 2.0 * a * b / (a + b);
}

std::vector<ClockScanPoint> clock_scan(const ProtocolConfig& config, const dynamics::Pulse& clock_pulse,
                                       const std::vector<double>& detunings_hz, std::size_t n_shots,
                                       std::uint64_t seed, Exec exec) {
  config.validate();
  if (!config.double_mapping) throw ConfigError("clock-transition probing requires double_mapping = true");
  if (n_shots < 1) throw DomainError("clock scan needs at least one shot per point");
  return map_indices<ClockScanPoint>(detunings_hz.size(), exec, [&](std::size_t i) {
    dynamics::Pulse p = clock_pulse;
    p.detuning = 2.0 * std::numbers::pi * detunings_hz[i];
    const double exc = ProbeSpec::sequence({p}, {}, true).excitation_probability();
    auto rng = stream_engine(seed, i);
    ClockTracker tracker;
    run_clock_shot(config, exc, tracker, rng, 0);
    std::size_t changes = 0;
    for (std::size_t k = 0; k < n_shots; ++k) changes += run_clock_shot(config, exc, tracker, rng, k + 1).state_change;
    const double q = static_cast<double>(changes) / static_cast<double>(n_shots);
    return ClockScanPoint{detunings_hz[i], exc, q, std::sqrt(q * (1.0 - q) / static_cast<double>(n_shots))};
  });
}

} // namespace qls::protocol
