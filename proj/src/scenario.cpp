/* Copyright 2026 The superq Authors. All Rights Reserved.
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at
    http://www.apache.org/licenses/LICENSE-2.0
Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "superq/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <numbers>

#include "superq/dynamics.hpp"
#include "superq/entangler.hpp"
#include "superq/errors.hpp"
#include "superq/frames.hpp"
#include "superq/propagate.hpp"
#include "superq/search.hpp"
#include "superq/svg.hpp"
#include "superq/text.hpp"
#include "superq/waveform.hpp"
#include "superq/waveform_io.hpp"

namespace superq {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

// --- parameter access ---------------------------------------------------------

bool is_axis(const json& v) {
  return v.is_object() && v.contains("count") && v.contains("min") &&
         v.contains("max");
}

const char* type_name(const json& v) {
  if (v.is_number()) return "number";
  if (v.is_boolean()) return "boolean";
  if (v.is_string()) return "string";
  if (v.is_array()) return "array";
  if (v.is_object()) return "object";
  return "null";
}

// Overrides must name existing keys and keep their JSON type. Empty default
// objects are open maps of numbers; axis defaults also accept arrays.
void merge(json& base, const json& over, const std::string& where) {
  if (!over.is_object()) throw ConfigError(where + " must be an object");
  for (auto it = over.begin(); it != over.end(); ++it) {
    const std::string field = where.empty() ? it.key() : where + "." + it.key();
    if (base.is_object() && base.empty()) {
      if (!it.value().is_number()) {
        throw ConfigError(field + " must be a number");
      }
      base[it.key()] = it.value();
      continue;
    }
    if (!base.contains(it.key())) {
      throw ConfigError("unknown parameter " + field);
    }
    json& slot = base[it.key()];
    const json& v = it.value();
    if (is_axis(slot) && v.is_array()) {
      slot = v;
    } else if (slot.is_object() && !is_axis(slot) && !slot.empty()) {
      merge(slot, v, field);
    } else if (std::string(type_name(slot)) != type_name(v)) {
      throw ConfigError(field + " must be of type " + type_name(slot) +
                        ", got " + type_name(v));
    } else {
      slot = v;
    }
  }
}

const json& field(const json& p, const std::string& key,
                  const std::string& where) {
  if (!p.contains(key)) throw ConfigError("missing parameter " + where + key);
  return p.at(key);
}

double number(const json& p, const std::string& key,
              const std::string& where = "") {
  const json& v = field(p, key, where);
  if (!v.is_number()) throw ConfigError(where + key + " must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ConfigError(where + key + " must be finite");
  return d;
}

double positive(const json& p, const std::string& key,
                const std::string& where = "") {
  const double d = number(p, key, where);
  if (!(d > 0.0)) throw ConfigError(where + key + " must be > 0");
  return d;
}

int integer(const json& p, const std::string& key, int min,
            const std::string& where = "") {
  const json& v = field(p, key, where);
  if (!v.is_number_integer()) {
    throw ConfigError(where + key + " must be an integer");
  }
  const auto i = v.get<long long>();
  if (i < min) {
    throw ConfigError(where + key + " must be >= " + std::to_string(min));
  }
  if (i > std::numeric_limits<int>::max()) {
    throw ConfigError(where + key + " is too large");
  }
  return static_cast<int>(i);
}

std::vector<double> axis(const json& p, const std::string& key) {
  const json& v = field(p, key, "");
  std::vector<double> out;
  if (v.is_array()) {
    if (v.empty()) throw ConfigError(key + " is empty");
    for (const json& x : v) {
      if (!x.is_number() || !std::isfinite(x.get<double>())) {
        throw ConfigError(key + " must contain finite numbers");
      }
      out.push_back(x.get<double>());
    }
    return out;
  }
  if (!is_axis(v)) {
    throw ConfigError(key + " must be an array or {min, max, count}");
  }
  AxisRange r{number(v, "min", key + "."), number(v, "max", key + "."),
              integer(v, "count", 1, key + ".")};
  return r.values();
}

std::map<std::string, double> number_map(const json& p, const std::string& key) {
  std::map<std::string, double> out;
  const json& v = field(p, key, "");
  if (!v.is_object()) throw ConfigError(key + " must be an object");
  for (auto it = v.begin(); it != v.end(); ++it) {
    out[it.key()] = number(v, it.key(), key + ".");
  }
  return out;
}

struct NamedPulse {
  std::string id;
  TanhTanParams params;
};

json pulse_json(const std::string& id, const TanhTanParams& p) {
  return json{{"id", id},
              {"A", p.A},
              {"tan_kappa", p.tan_kappa()},
              {"xi", p.xi},
              {"omega1_max", p.omega1_max}};
}

NamedPulse pulse(const json& v, const std::string& where) {
  if (!v.is_object()) throw ConfigError(where + " must be an object");
  for (auto it = v.begin(); it != v.end(); ++it) {
    static const std::vector<std::string> known = {
        "id", "A", "tan_kappa", "kappa", "xi", "omega1_max"};
    if (std::find(known.begin(), known.end(), it.key()) == known.end()) {
      throw ConfigError("unknown parameter " + where + "." + it.key());
    }
  }
  const json& id = field(v, "id", where + ".");
  if (!id.is_string() || id.get<std::string>().empty()) {
    throw ConfigError(where + ".id must be a non-empty string");
  }
  const std::string w = where + ".";
  const bool has_tan = v.contains("tan_kappa");
  if (has_tan == v.contains("kappa")) {
    throw ConfigError(w + "needs exactly one of tan_kappa or kappa");
  }
  NamedPulse out{id.get<std::string>(), {}};
  const double A = positive(v, "A", w);
  const double xi = positive(v, "xi", w);
  const double w1 = positive(v, "omega1_max", w);
  if (has_tan) {
    out.params = TanhTanParams::from_tan_kappa(A, positive(v, "tan_kappa", w),
                                               xi, w1);
  } else {
    out.params = TanhTanParams{A, positive(v, "kappa", w), xi, w1};
    if (!(out.params.kappa < std::numbers::pi / 2)) {
      throw ConfigError(w + "kappa must be below pi/2");
    }
  }
  return out;
}

std::vector<NamedPulse> pulses(const json& p) {
  const json& v = field(p, "pulses", "");
  if (!v.is_array() || v.empty()) {
    throw ConfigError("pulses must be a non-empty array");
  }
  std::vector<NamedPulse> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(pulse(v[i], "pulses[" + std::to_string(i) + "]"));
    for (std::size_t j = 0; j < i; ++j) {
      if (out[j].id == out[i].id) {
        throw ConfigError("duplicate pulse id " + out[i].id);
      }
    }
  }
  return out;
}

json axis_json(double min, double max, int count) {
  return json{{"min", min}, {"max", max}, {"count", count}};
}

json encode(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

json encode(const std::vector<double>& v) {
  json out = json::array();
  for (double x : v) out.push_back(encode(x));
  return out;
}

// --- run context --------------------------------------------------------------

struct Context {
  fs::path dir;
  std::uint64_t seed = 0;
  int jobs = 1;
  bool svg = false;
  std::vector<std::string> files;
  json results = json::object();

  fs::path emit(const std::string& name) {
    files.push_back(name);
    return dir / name;
  }
};

void write_series_csv(const fs::path& path, const std::string& header,
                      const std::vector<double>& y) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string());
  out << header << '\n';
  for (std::size_t i = 0; i < y.size(); ++i) {
    out << i << ',' << format_double(y[i]) << '\n';
  }
}

std::vector<double> scaled(const std::vector<double>& v, double f) {
  std::vector<double> out(v);
  for (double& x : out) x *= f;
  return out;
}

// --- inversion-frames -----------------------------------------------------------

json frames_defaults() {
  return json{{"tau", 120e-6},
              {"n_steps", 512},
              {"n_max", kDefaultFrameCount},
              {"angle_frames", json::array({1})},
              {"pulses", json::array({pulse_json("q1", table_q1_pulse()),
                                      pulse_json("qs120", table_qs120_pulse())})}};
}

struct FramesParams {
  double tau;
  int n_steps;
  int n_max;
  std::vector<int> angle_frames;
  std::vector<NamedPulse> pulses;
};

FramesParams frames_params(const json& p) {
  FramesParams out{positive(p, "tau"), integer(p, "n_steps", 2),
                   integer(p, "n_max", 1), {}, pulses(p)};
  const json& af = field(p, "angle_frames", "");
  for (const json& v : af) {
    if (!v.is_number_integer() || v.get<int>() < 1) {
      throw ConfigError("angle_frames must hold integers >= 1");
    }
    out.angle_frames.push_back(v.get<int>());
  }
  return out;
}

void run_frames(const FramesParams& p, Context& ctx) {
  const ControlSystem system = single_qubit_system();
  svg::LinePlot plot{"Adiabatic Q-factors", "frame n", "Q_n", true, {}};
  for (const NamedPulse& np : p.pulses) {
    const Waveform wf = tanh_tan(np.params, p.tau, p.n_steps);
    write_waveform_csv(ctx.emit(np.id + "_waveform.csv"), wf);
    const FrameSequence seq =
        superadiabatic_q(sample_hamiltonian(system, wf), p.n_max);
    for (const fs::path& f : write_frame_sequence(seq, ctx.dir, np.id)) {
      ctx.files.push_back(f.filename().string());
    }
    std::vector<int> frames;
    for (int n : p.angle_frames) {
      if (n <= static_cast<int>(seq.frames.size())) frames.push_back(n);
    }
    if (seq.s > 0 &&
        std::find(frames.begin(), frames.end(), seq.s) == frames.end()) {
      frames.push_back(seq.s);
    }
    const StateTrajectory traj =
        propagate(system, wf, StateVector::basis(2, 0));
    const auto angles = deviation_angles(seq, traj, frames);
    {
      std::ofstream out(ctx.emit(np.id + "_angles.csv"), std::ios::binary);
      out << 't';
      for (int n : frames) out << ",alpha_" << n;
      out << '\n';
      for (std::size_t m = 0; m < traj.times.size(); ++m) {
        out << format_double(traj.times[m]);
        for (const auto& row : angles) out << ',' << format_double(row[m]);
        out << '\n';
      }
    }
    std::vector<double> ns;
    for (const Frame& f : seq.frames) ns.push_back(f.index);
    plot.series.push_back({np.id, ns, seq.q_values()});
    ctx.results[np.id] = json{{"q", encode(seq.q_values())},
                              {"q_s", encode(seq.q_s)},
                              {"s", seq.s},
                              {"truncated", seq.truncated}};
  }
  if (ctx.svg) svg::write_line_plot(ctx.emit("q_factors.svg"), plot);
}

// --- fidelity-curves ------------------------------------------------------------

json fidelity_defaults() {
  return json{{"n_steps", 512},
              {"taus", axis_json(2e-6, 250e-6, 125)},
              {"hard_pulse_omega1", 8e4},
              {"pulses", json::array({pulse_json("q1", table_q1_pulse()),
                                      pulse_json("qs120", table_qs120_pulse()),
                                      pulse_json("qs50", table_qs50_pulse())})}};
}

struct FidelityParams {
  int n_steps;
  std::vector<double> taus;
  double hard_omega1;
  std::vector<NamedPulse> pulses;
};

FidelityParams fidelity_params(const json& p) {
  FidelityParams out{integer(p, "n_steps", 2), axis(p, "taus"),
                     number(p, "hard_pulse_omega1"), pulses(p)};
  for (double t : out.taus) {
    if (t < 0.0) throw ConfigError("taus must be >= 0");
  }
  return out;
}

void add_curve(Context& ctx, svg::LinePlot& plot, const FidelityCurve& c) {
  write_fidelity_curve_csv(ctx.emit("fidelity_" + c.pulse_id + ".csv"), c);
  plot.series.push_back({c.pulse_id, scaled(c.taus, 1e6), c.infidelity});
  ctx.results[c.pulse_id] = json{{"max_norm_error", c.max_norm_error},
                                 {"max_unitarity_error", c.max_unitarity_error}};
}

void run_fidelity(const FidelityParams& p, Context& ctx) {
  const ControlSystem system = single_qubit_system();
  const StateVector up = StateVector::basis(2, 0);
  const StateVector down = StateVector::basis(2, 1);
  svg::LinePlot plot{"Inversion infidelity", "tau (us)", "1 - F^2", true, {}};
  for (const NamedPulse& np : p.pulses) {
    const Waveform shape = tanh_tan(np.params, 1.0, p.n_steps);
    add_curve(ctx, plot, fidelity_vs_length(shape, system, up, down, p.taus,
                                            np.id, ctx.jobs));
  }
  if (p.hard_omega1 > 0.0) {
    const Waveform shape = hard_pulse(p.hard_omega1, 1.0, p.n_steps);
    add_curve(ctx, plot, fidelity_vs_length(shape, system, up, down, p.taus,
                                            "hard", ctx.jobs));
  }
  if (ctx.svg) svg::write_line_plot(ctx.emit("fidelity.svg"), plot);
}

// --- robustness -----------------------------------------------------------------

json robustness_defaults() {
  return json{{"tau", 120e-6},
              {"n_steps", 512},
              {"deltas", axis_json(-140e3, 140e3, 141)},
              {"sigmas", axis_json(0.0, 3.0, 151)},
              {"pulses", json::array({pulse_json("q1", table_q1_pulse()),
                                      pulse_json("qs120", table_qs120_pulse())})}};
}

struct RobustnessParams {
  double tau;
  int n_steps;
  std::vector<double> deltas;
  std::vector<double> sigmas;
  std::vector<NamedPulse> pulses;
};

RobustnessParams robustness_params(const json& p) {
  return {positive(p, "tau"), integer(p, "n_steps", 2), axis(p, "deltas"),
          axis(p, "sigmas"), pulses(p)};
}

void run_robustness(const RobustnessParams& p, Context& ctx) {
  const ControlSystem system = single_qubit_system();
  const StateVector up = StateVector::basis(2, 0);
  const StateVector down = StateVector::basis(2, 1);
  for (const NamedPulse& np : p.pulses) {
    const Waveform wf = tanh_tan(np.params, p.tau, p.n_steps);
    const RobustnessGrid grid =
        robustness_scan(wf, system, up, down, p.deltas, p.sigmas, ctx.jobs);
    write_robustness_csv(ctx.emit("robustness_" + np.id + ".csv"), grid);
    ctx.results[np.id] = json{{"max_norm_error", grid.max_norm_error},
                              {"max_unitarity_error", grid.max_unitarity_error}};
    if (ctx.svg) {
      svg::write_heatmap(ctx.emit("robustness_" + np.id + ".svg"),
                         {"Fidelity " + np.id, "sigma", "delta (krad/s)",
                          p.sigmas, scaled(p.deltas, 1e-3), grid.F});
    }
  }
}

// --- numerical-inversion ------------------------------------------------------

json numerical_defaults() {
  return json{
      {"tau", 50e-6},
      {"n_steps", 128},
      {"omega1_max", 8e4},
      {"dw_start", 200e3},
      {"dw_end", -200e3},
      {"trials_per_radius", 10},
      {"stages", json::array({json{{"objective_frame", 1}, {"rounds", 20}},
                              json{{"objective_frame", 2}, {"rounds", 10}}})},
      {"epsilon_max", json::object()},
      {"amplitude_limit", json::object()},
      {"reference", pulse_json("qs50", table_qs50_pulse())},
      {"reference_n_steps", 512},
      {"taus", axis_json(10e-6, 120e-6, 111)}};
}

struct Stage {
  int objective_frame;
  int rounds;
};

struct NumericalParams {
  double tau;
  int n_steps;
  double omega1_max;
  double dw_start;
  double dw_end;
  int trials;
  std::vector<Stage> stages;
  std::map<std::string, double> epsilon_max;
  std::map<std::string, double> amplitude_limit;
  NamedPulse reference;
  int reference_n_steps;
  std::vector<double> taus;
};

std::vector<Stage> stages(const json& p) {
  const json& v = field(p, "stages", "");
  if (!v.is_array() || v.empty()) {
    throw ConfigError("stages must be a non-empty array");
  }
  std::vector<Stage> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string w = "stages[" + std::to_string(i) + "].";
    if (!v[i].is_object()) throw ConfigError(w + " must be an object");
    for (auto it = v[i].begin(); it != v[i].end(); ++it) {
      if (it.key() != "objective_frame" && it.key() != "rounds") {
        throw ConfigError("unknown parameter " + w + it.key());
      }
    }
    out.push_back({integer(v[i], "objective_frame", 1, w),
                   integer(v[i], "rounds", 1, w)});
  }
  return out;
}

NumericalParams numerical_params(const json& p) {
  NumericalParams out{positive(p, "tau"),
                      integer(p, "n_steps", 4),
                      positive(p, "omega1_max"),
                      number(p, "dw_start"),
                      number(p, "dw_end"),
                      integer(p, "trials_per_radius", 1),
                      stages(p),
                      number_map(p, "epsilon_max"),
                      number_map(p, "amplitude_limit"),
                      pulse(field(p, "reference", ""), "reference"),
                      integer(p, "reference_n_steps", 2),
                      axis(p, "taus")};
  if (!(out.dw_start > 0.0 && out.dw_end < 0.0)) {
    throw ConfigError("dw_start must be > 0 and dw_end < 0");
  }
  return out;
}

void write_history(Context& ctx, const std::string& name,
                   const SearchResult& r) {
  write_series_csv(ctx.emit(name), "accept,objective", r.history);
}

json search_summary(const SearchResult& r) {
  return json{{"initial", encode(r.history.front())},
              {"final", encode(r.history.back())},
              {"accepted", r.log.size()},
              {"round_objectives", encode(r.round_objectives)},
              {"evaluations", r.evaluations}};
}

void run_numerical(const NumericalParams& p, Context& ctx) {
  const ControlSystem system = single_qubit_system();
  const StateVector up = StateVector::basis(2, 0);
  const StateVector down = StateVector::basis(2, 1);
  Waveform wf =
      inversion_guess(p.omega1_max, p.dw_start, p.dw_end, p.tau, p.n_steps);
  write_waveform_csv(ctx.emit("guess_waveform.csv"), wf);
  const std::vector<double> at_tau{p.tau};
  const double guess_inf =
      fidelity_vs_length(wf, system, up, down, at_tau).infidelity[0];

  json stage_results = json::array();
  svg::LinePlot history{"Search objective", "accepted step", "objective",
                        false, {}};
  for (std::size_t k = 0; k < p.stages.size(); ++k) {
    SearchConfig cfg;
    cfg.objective_frame = p.stages[k].objective_frame;
    cfg.rounds = p.stages[k].rounds;
    cfg.trials_per_radius = p.trials;
    cfg.seed = ctx.seed + k;
    cfg.epsilon_max = p.epsilon_max;
    cfg.amplitude_limit = p.amplitude_limit;
    if (!cfg.amplitude_limit.contains(std::string(channel::kOmega1))) {
      cfg.amplitude_limit[std::string(channel::kOmega1)] = p.omega1_max;
    }
    SearchResult r = evolutionary_search(wf, system, cfg);
    const std::string stem = "stage" + std::to_string(k + 1);
    write_waveform_csv(ctx.emit(stem + "_waveform.csv"), r.waveform);
    write_search_log_jsonl(ctx.emit(stem + "_search_log.jsonl"), r.log);
    write_history(ctx, stem + "_history.csv", r);
    json s = search_summary(r);
    s["objective_frame"] = cfg.objective_frame;
    stage_results.push_back(s);
    std::vector<double> x(r.history.size());
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = static_cast<double>(i);
    history.series.push_back({stem + " Q_" + std::to_string(cfg.objective_frame),
                              x, r.history});
    wf = std::move(r.waveform);
  }
  write_waveform_csv(ctx.emit("optimized_waveform.csv"), wf);

  const Waveform reference =
      tanh_tan(p.reference.params, p.tau, p.reference_n_steps);
  svg::LinePlot plot{"Inversion infidelity", "tau (us)", "1 - F^2", true, {}};
  const FidelityCurve numerical =
      fidelity_vs_length(wf, system, up, down, p.taus, "numerical", ctx.jobs);
  const FidelityCurve ref = fidelity_vs_length(
      reference, system, up, down, p.taus, p.reference.id, ctx.jobs);
  add_curve(ctx, plot, numerical);
  add_curve(ctx, plot, ref);
  const double num_inf =
      fidelity_vs_length(wf, system, up, down, at_tau).infidelity[0];
  const double ref_inf =
      fidelity_vs_length(reference, system, up, down, at_tau).infidelity[0];
  ctx.results["stages"] = stage_results;
  ctx.results["infidelity_at_tau"] =
      json{{"guess", guess_inf}, {"numerical", num_inf}, {p.reference.id, ref_inf}};
  if (ctx.svg) {
    svg::write_line_plot(ctx.emit("fidelity.svg"), plot);
    svg::write_line_plot(ctx.emit("search_history.svg"), history);
  }
}

// --- entangler ------------------------------------------------------------------

json entangler_defaults() {
  const TwoQubitBoundary b;
  return json{{"alpha", b.alpha},
              {"beta", b.beta},
              {"A", b.amplitude},
              {"J", b.coupling_hz},
              {"search_tau", 10e-3},
              {"n_steps", 200},
              {"rounds", 3},
              {"trials_per_radius", 10},
              {"epsilon_max", json::object()},
              {"amplitude_limit", json::object()},
              {"taus", axis_json(1e-3, 30e-3, 30)}};
}

struct EntanglerParams {
  EntanglerSpec spec;
};

EntanglerParams entangler_params(const json& p) {
  EntanglerParams out;
  EntanglerSpec& s = out.spec;
  s.boundary = {positive(p, "alpha"), positive(p, "beta"), positive(p, "A"),
                positive(p, "J")};
  s.search_tau = positive(p, "search_tau");
  s.n_steps = integer(p, "n_steps", 4);
  s.search.rounds = integer(p, "rounds", 1);
  s.search.trials_per_radius = integer(p, "trials_per_radius", 1);
  s.search.epsilon_max = number_map(p, "epsilon_max");
  s.search.amplitude_limit = number_map(p, "amplitude_limit");
  s.taus = axis(p, "taus");
  for (double t : s.taus) {
    if (t < 0.0) throw ConfigError("taus must be >= 0");
  }
  if (!(s.boundary.alpha > s.boundary.beta)) {
    throw ConfigError("alpha must exceed beta");
  }
  return out;
}

void run_entangler_scenario(EntanglerParams p, Context& ctx) {
  EntanglerSpec& spec = p.spec;
  spec.search.seed = ctx.seed;
  spec.jobs = ctx.jobs;
  const EigenstateCheck c0 = initial_state_check(spec.boundary);
  const EigenstateCheck c1 = target_state_check(spec.boundary);
  const EntanglerResult r = run_entangler(spec);

  write_waveform_csv(ctx.emit("guess_waveform.csv"), r.guess);
  write_waveform_csv(ctx.emit("optimized_waveform.csv"), r.search.waveform);
  write_search_log_jsonl(ctx.emit("search_log.jsonl"), r.search.log);
  write_history(ctx, "q1_history.csv", r.search);
  svg::LinePlot plot{"Bell-state infidelity", "tau (ms)", "1 - F^2", true, {}};
  add_curve(ctx, plot, r.guess_curve);
  add_curve(ctx, plot, r.optimized_curve);
  write_eigenvalue_tracks_csv(ctx.emit("eigenvalue_tracks.csv"), r.tracks);

  bool second = true;
  for (std::size_t m = 0; m < r.tracks.times.size(); ++m) {
    second = second && r.tracks.descending_rank(r.tracks.initial_trace, m) == 2;
  }
  const double J = spec.boundary.coupling_hz;
  const double delay = 1.0 / (2.0 * J);
  const Fidelity dia = fidelity(diabatic_entangler(J, delay), bell_state());
  const double pi_j = std::numbers::pi * J;

  ctx.results["initial_state"] = json{{"rank", c0.rank},
                                      {"eigenvalue", c0.eigenvalue},
                                      {"overlap", c0.overlap}};
  ctx.results["target_state"] = json{{"rank", c1.rank},
                                     {"eigenvalue", c1.eigenvalue},
                                     {"overlap", c1.overlap}};
  json s = search_summary(r.search);
  ctx.results["search"] = s;
  ctx.results["guess_q1"] = encode(r.guess_q1);
  ctx.results["optimized_q1"] = encode(r.optimized_q1);
  ctx.results["min_gap"] = r.tracks.min_gap;
  ctx.results["min_gap_over_pi_j"] = r.tracks.min_gap / pi_j;
  ctx.results["trajectory_second_largest"] = second;
  ctx.results["diabatic"] = json{{"delay", delay},
                                 {"duration", delay},
                                 {"bell_fidelity", dia.F * dia.F}};
  if (ctx.svg) {
    svg::write_line_plot(ctx.emit("fidelity.svg"), plot);
    svg::LinePlot ev{"Eigenvalues of the optimized pulse", "t (ms)",
                     "energy (rad/s)", false, {}};
    for (std::size_t k = 0; k < r.tracks.traces.size(); ++k) {
      ev.series.push_back({"lambda_" + std::to_string(k + 1),
                           scaled(r.tracks.times, 1e3), r.tracks.traces[k]});
    }
    svg::write_line_plot(ctx.emit("eigenvalues.svg"), ev);
  }
}

// --- guess-grid -----------------------------------------------------------------

json guess_grid_defaults() {
  return json{{"A", 78.5e3},
              {"J", 209.4},
              {"tau", 10e-3},
              {"n_steps", 200},
              {"dw_a0", axis_json(-100e3, 100e3, 21)},
              {"dw_b0", axis_json(-100e3, 100e3, 21)}};
}

struct GuessGridParams {
  double A;
  double J;
  double tau;
  int n_steps;
  std::vector<double> dw_a0;
  std::vector<double> dw_b0;
};

GuessGridParams guess_grid_params(const json& p) {
  return {positive(p, "A"),         positive(p, "J"),
          positive(p, "tau"),       integer(p, "n_steps", 2),
          axis(p, "dw_a0"),         axis(p, "dw_b0")};
}

void run_guess_grid(const GuessGridParams& p, Context& ctx) {
  const GuessGrid grid =
      guess_grid_scan(two_qubit_system(p.J), p.dw_a0, p.dw_b0, p.A, p.tau,
                      p.n_steps, ctx.jobs);
  write_guess_grid_csv(ctx.emit("guess_grid.csv"), grid);
  std::size_t degenerate = 0;
  for (double v : grid.q1) degenerate += std::isnan(v) ? 1 : 0;
  ctx.results["degenerate_points"] = degenerate;
  if (grid.any_valid) {
    ctx.results["best"] = json{{"dw_a0", grid.dw_a0[grid.best_a]},
                               {"dw_b0", grid.dw_b0[grid.best_b]},
                               {"q1", grid.best_q1}};
  }
  if (ctx.svg) {
    svg::write_heatmap(ctx.emit("guess_grid.svg"),
                       {"Q1 of the linear guess", "dw_b0 (krad/s)",
                        "dw_a0 (krad/s)", scaled(grid.dw_b0, 1e-3),
                        scaled(grid.dw_a0, 1e-3), grid.q1});
  }
}

// --- registry -------------------------------------------------------------------

struct Scenario {
  std::function<json()> defaults;
  std::function<void(const json&)> check;
  std::function<void(const json&, Context&)> run;
};

template <typename P>
Scenario make(json (*defaults)(), P (*parse)(const json&),
              void (*run)(const P&, Context&)) {
  return {defaults, [parse](const json& p) { parse(p); },
          [parse, run](const json& p, Context& ctx) { run(parse(p), ctx); }};
}

const std::map<std::string, Scenario>& registry() {
  static const std::map<std::string, Scenario> r = {
      {"inversion-frames", make(frames_defaults, frames_params, run_frames)},
      {"fidelity-curves",
       make(fidelity_defaults, fidelity_params, run_fidelity)},
      {"numerical-inversion",
       make(numerical_defaults, numerical_params, run_numerical)},
      {"robustness",
       make(robustness_defaults, robustness_params, run_robustness)},
      {"entangler",
       {entangler_defaults,
        [](const json& p) { entangler_params(p); },
        [](const json& p, Context& ctx) {
          run_entangler_scenario(entangler_params(p), ctx);
        }}},
      {"guess-grid",
       make(guess_grid_defaults, guess_grid_params, run_guess_grid)},
  };
  return r;
}

const Scenario& lookup(const std::string& id) {
  auto it = registry().find(id);
  if (it == registry().end()) throw ConfigError("unknown scenario " + id);
  return it->second;
}

}  // namespace

const std::vector<std::string>& scenario_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> v;
    for (const auto& [id, s] : registry()) v.push_back(id);
    return v;
  }();
  return ids;
}

nlohmann::ordered_json scenario_defaults(const std::string& id) {
  return lookup(id).defaults();
}

ScenarioConfig parse_config(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    static const std::vector<std::string> known = {"scenario", "seed",
                                                   "output_dir", "parameters"};
    if (std::find(known.begin(), known.end(), it.key()) == known.end()) {
      throw ConfigError("unknown field " + it.key());
    }
  }
  if (!doc.contains("scenario") || !doc["scenario"].is_string()) {
    throw ConfigError("scenario must be a string");
  }
  ScenarioConfig cfg;
  cfg.scenario = doc["scenario"].get<std::string>();
  const Scenario& sc = lookup(cfg.scenario);
  if (doc.contains("seed")) {
    const json& seed = doc["seed"];
    if (!seed.is_number_unsigned() &&
        !(seed.is_number_integer() && seed.get<std::int64_t>() >= 0)) {
      throw ConfigError("seed must be a non-negative integer");
    }
    cfg.seed = doc["seed"].get<std::uint64_t>();
  }
  if (doc.contains("output_dir")) {
    if (!doc["output_dir"].is_string()) {
      throw ConfigError("output_dir must be a string");
    }
    cfg.output_dir = doc["output_dir"].get<std::string>();
  } else {
    cfg.output_dir = fs::path("superq_out") / cfg.scenario;
  }
  cfg.parameters = sc.defaults();
  if (doc.contains("parameters")) {
    merge(cfg.parameters, json(doc["parameters"]), "");
  }
  try {
    sc.check(cfg.parameters);
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  return cfg;
}

ScenarioConfig load_config(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + path.string());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  return parse_config(doc);
}

RunReport run_scenario(ScenarioConfig cfg, const RunOptions& options) {
  if (options.output_dir) cfg.output_dir = *options.output_dir;
  if (options.seed) cfg.seed = *options.seed;
  if (options.jobs < 1) throw ConfigError("jobs must be >= 1");
  const Scenario& sc = lookup(cfg.scenario);

  Context ctx;
  ctx.dir = cfg.output_dir;
  ctx.seed = cfg.seed;
  ctx.jobs = options.jobs;
  ctx.svg = options.svg;
  fs::create_directories(ctx.dir);
  fs::remove(ctx.dir / "manifest.json");
  sc.run(cfg.parameters, ctx);

  json manifest{{"scenario", cfg.scenario},
                {"seed", cfg.seed},
                {"parameters", cfg.parameters},
                {"results", ctx.results},
                {"files", ctx.files}};
  {
    std::ofstream out(ctx.dir / "manifest.json", std::ios::binary);
    if (!out) throw Error("cannot write manifest");
    out << manifest.dump(2) << '\n';
  }
  ctx.files.push_back("manifest.json");
  return {ctx.dir, ctx.files};
}

}  // namespace superq
