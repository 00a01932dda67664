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

#include "superq/search.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <random>

#include "json.hpp"
#include "superq/errors.hpp"
#include "superq/parallel.hpp"
#include "superq/text.hpp"

namespace superq {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool is_rf(std::string_view name) { return name.starts_with("omega1"); }

bool is_locked(std::span<const int> locked, int m) {
  return std::find(locked.begin(), locked.end(), m) != locked.end();
}

double value_of(const QProfile& p, const SearchConfig& cfg) {
  if (cfg.objective_frame > 0) {
    const auto n = static_cast<std::size_t>(cfg.objective_frame);
    return p.q.size() >= n ? p.q[n - 1] : -kInf;
  }
  double best = -kInf;
  for (double q : p.q) best = std::max(best, q);
  return best;
}

int frames_needed(const SearchConfig& cfg) {
  return cfg.objective_frame > 0 ? cfg.objective_frame : cfg.n_max;
}

// True when the candidate window cannot touch the minimum of any frame the
// objective depends on, so the objective cannot rise.
bool cannot_improve(const QProfile& p, const SearchConfig& cfg,
                    IndexRange window) {
  if (p.truncated) return false;
  const std::size_t first =
      cfg.objective_frame > 0 ? static_cast<std::size_t>(cfg.objective_frame) : 1;
  const std::size_t last = static_cast<std::size_t>(frames_needed(cfg));
  if (p.q.size() < last) return false;
  for (std::size_t n = first; n <= last; ++n) {
    if (std::isinf(p.q[n - 1])) return false;
    const int margin = 2 * static_cast<int>(n) + 1;
    const int at = static_cast<int>(p.argmin[n - 1]);
    if (at >= window.first - margin && at <= window.last + margin) return false;
  }
  return true;
}

// Uniform draw in [-1, 1) from the top 53 bits, identical on every platform.
double symmetric_unit(std::mt19937_64& rng) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return 2.0 * u - 1.0;
}

std::vector<EigenSystem> first_frame_eigs(const ControlSystem& system,
                                          const Waveform& wf) {
  const HamiltonianTrack track = sample_hamiltonian(system, wf);
  std::vector<EigenSystem> eigs;
  eigs.reserve(track.samples.size());
  for (const HermitianOperator& h : track.samples) {
    eigs.push_back(eigh_trusted(h.matrix()));
  }
  return eigs;
}

}  // namespace

IndexRange apply_parabolic_perturbation(std::span<double> u,
                                        const PerturbationSpec& spec,
                                        std::span<const int> locked) {
  const int n = static_cast<int>(u.size()) - 1;
  if (n < 1) throw InvalidParams("perturbation needs at least two samples");
  const int r = spec.radius;
  if (r < 2 || r > n / 2) {
    throw InvalidRadius("radius " + std::to_string(r) +
                        " outside [2, " + std::to_string(n / 2) + "]");
  }
  if (spec.center < 0 || spec.center > n) {
    throw InvalidParams("center " + std::to_string(spec.center) +
                        " outside the grid");
  }
  if (!(spec.amplitude_max >= 0.0) ||
      std::abs(spec.amplitude) > spec.amplitude_max) {
    throw InvalidParams("|epsilon| exceeds epsilon_max");
  }
  const int lo = spec.center - r;
  const int hi = spec.center + r;
  IndexRange changed{std::max(lo, 0), std::min(hi, n)};
  const double scale = spec.amplitude / (static_cast<double>(r) * r);
  for (int m = changed.first; m <= changed.last; ++m) {
    if (is_locked(locked, m)) continue;
    u[m] -= scale * static_cast<double>(m - lo) * static_cast<double>(m - hi);
  }
  return changed;
}

std::vector<double> parabolic_perturbation(std::span<const double> u,
                                           const PerturbationSpec& spec,
                                           std::span<const int> locked) {
  std::vector<double> out(u.begin(), u.end());
  apply_parabolic_perturbation(out, spec, locked);
  return out;
}

double search_objective(const ControlSystem& system, const Waveform& wf,
                        const SearchConfig& cfg) {
  const std::vector<EigenSystem> eigs = first_frame_eigs(system, wf);
  return value_of(q_profile(eigs, wf.dt(), frames_needed(cfg)), cfg);
}

SearchResult evolutionary_search(const Waveform& initial,
                                 const ControlSystem& system,
                                 const SearchConfig& cfg) {
  if (cfg.objective_frame < 0) throw InvalidParams("objective frame < 0");
  if (cfg.objective_frame == 0 && cfg.n_max < 1) {
    throw InvalidParams("n_max must be >= 1");
  }
  if (cfg.trials_per_radius < 1) throw InvalidParams("trials must be >= 1");
  if (cfg.rounds < 1) throw InvalidParams("rounds must be >= 1");
  const int n = initial.n_steps();
  if (n / 2 < 2) throw InvalidRadius("grid too short for radius 2");

  const std::vector<std::size_t> control_channel = system.bind(initial);

  std::vector<std::size_t> order;
  if (cfg.channels.empty()) {
    for (std::size_t c = 0; c < initial.channel_count(); ++c) order.push_back(c);
  } else {
    for (const std::string& name : cfg.channels) {
      order.push_back(initial.index_of(name));
    }
  }

  double rf_peak = 0.0;
  for (const Channel& ch : initial.channels()) {
    if (!is_rf(ch.name)) continue;
    for (double v : ch.samples) rf_peak = std::max(rf_peak, std::abs(v));
  }
  std::vector<double> eps_max(initial.channel_count());
  std::vector<double> limit(initial.channel_count(), kInf);
  for (std::size_t c = 0; c < initial.channel_count(); ++c) {
    const std::string& name = initial.channels()[c].name;
    auto e = cfg.epsilon_max.find(name);
    eps_max[c] = e != cfg.epsilon_max.end() ? e->second : 0.05 * rf_peak;
    if (!(eps_max[c] >= 0.0)) {
      throw InvalidParams("epsilon_max for " + name + " must be >= 0");
    }
    auto l = cfg.amplitude_limit.find(name);
    if (l != cfg.amplitude_limit.end()) {
      limit[c] = l->second;
    } else if (is_rf(name)) {
      limit[c] = rf_peak;
    }
  }

  std::vector<int> locked = cfg.locked;
  if (locked.empty()) locked = {0, n};

  SearchResult result{initial, {}, {}, {}, 0, 0};
  Waveform& wf = result.waveform;
  const double dt = wf.dt();
  const int n_frames = frames_needed(cfg);

  std::vector<EigenSystem> eigs = first_frame_eigs(system, wf);
  QProfile profile = q_profile(eigs, dt, n_frames);
  double objective = value_of(profile, cfg);
  result.history.push_back(objective);

  std::vector<double> controls(control_channel.size());
  auto refresh = [&](IndexRange w, std::vector<EigenSystem>& out) {
    for (int m = w.first; m <= w.last; ++m) {
      for (std::size_t k = 0; k < control_channel.size(); ++k) {
        controls[k] = wf.samples(control_channel[k])[m];
      }
      out[m] = eigh_trusted(system.evaluate(controls));
    }
  };

  std::mt19937_64 rng(cfg.seed);
  std::vector<double> draws(cfg.trials_per_radius);
  std::vector<double> saved_u;
  std::vector<EigenSystem> saved_eigs;

  for (int round = 1; round <= cfg.rounds; ++round) {
    for (int center = 1; center < n; ++center) {
      if (is_locked(locked, center)) continue;
      for (std::size_t c : order) {
        for (int r = n / 2; r >= 2; --r) {
          for (double& d : draws) d = eps_max[c] * symmetric_unit(rng);
          const IndexRange window{std::max(center - r, 0),
                                  std::min(center + r, n)};
          if (cannot_improve(profile, cfg, window)) {
            result.skipped += draws.size();
            continue;
          }
          std::span<double> u = wf.mutable_samples(c);
          saved_u.assign(u.begin() + window.first, u.begin() + window.last + 1);
          saved_eigs.assign(eigs.begin() + window.first,
                            eigs.begin() + window.last + 1);
          double best_value = objective;
          int best_trial = -1;
          QProfile best_profile;
          for (int t = 0; t < cfg.trials_per_radius; ++t) {
            const PerturbationSpec spec{center, r, draws[t], eps_max[c]};
            apply_parabolic_perturbation(u, spec, locked);
            bool within = true;
            for (int m = window.first; m <= window.last; ++m) {
              if (std::abs(u[m]) > limit[c]) within = false;
            }
            if (within) {
              refresh(window, eigs);
              ++result.evaluations;
              try {
                QProfile p = q_profile(eigs, dt, n_frames);
                const double v = value_of(p, cfg);
                if (v > best_value) {
                  best_value = v;
                  best_trial = t;
                  best_profile = std::move(p);
                }
              } catch (const DegenerateSpectrum&) {
              }
            }
            std::copy(saved_u.begin(), saved_u.end(), u.begin() + window.first);
            std::copy(saved_eigs.begin(), saved_eigs.end(),
                      eigs.begin() + window.first);
          }
          if (best_trial < 0) continue;
          const PerturbationSpec spec{center, r, draws[best_trial], eps_max[c]};
          apply_parabolic_perturbation(u, spec, locked);
          refresh(window, eigs);
          result.log.push_back({round, wf.channels()[c].name, center, r,
                                draws[best_trial], objective, best_value});
          objective = best_value;
          profile = std::move(best_profile);
          result.history.push_back(objective);
          break;
        }
      }
    }
    result.round_objectives.push_back(objective);
  }
  return result;
}

void write_search_log_jsonl(const std::filesystem::path& path,
                            std::span<const SearchLogRecord> log) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string());
  for (const SearchLogRecord& rec : log) {
    nlohmann::ordered_json j;
    j["round"] = rec.round;
    j["channel"] = rec.channel;
    j["center"] = rec.center;
    j["radius"] = rec.radius;
    j["epsilon"] = rec.epsilon;
    j["objective_before"] = rec.objective_before;
    j["objective_after"] = rec.objective_after;
    out << j.dump() << '\n';
  }
}

std::vector<double> AxisRange::values() const {
  if (count < 1) throw InvalidParams("axis needs at least one point");
  if (count == 1) return {min};
  std::vector<double> v(count);
  for (int i = 0; i < count; ++i) {
    v[i] = min + (max - min) * static_cast<double>(i) / (count - 1);
  }
  return v;
}

GridSearchResult grid_search_tanh_tan(const GridSearchSpec& spec) {
  const std::vector<double> as = spec.A.values();
  const std::vector<double> ks = spec.tan_kappa.values();
  const std::vector<double> xs = spec.xi.values();
  const ControlSystem system = single_qubit_system();
  SearchConfig cfg;
  cfg.objective_frame = spec.objective_frame;
  cfg.n_max = spec.n_max;

  GridSearchResult out;
  const std::size_t total = as.size() * ks.size() * xs.size();
  out.values.assign(total, kNaN);
  parallel_for(total, spec.jobs, [&](std::size_t idx) {
    const std::size_t ix = idx % xs.size();
    const std::size_t ik = (idx / xs.size()) % ks.size();
    const std::size_t ia = idx / (xs.size() * ks.size());
    try {
      const TanhTanParams p = TanhTanParams::from_tan_kappa(
          as[ia], ks[ik], xs[ix], spec.omega1_max);
      const Waveform wf = tanh_tan(p, spec.tau, spec.n_steps);
      out.values[idx] = search_objective(system, wf, cfg);
    } catch (const DegenerateSpectrum&) {
    } catch (const InvalidParams&) {
    }
  });

  bool found = false;
  for (std::size_t idx = 0; idx < total; ++idx) {
    const double v = out.values[idx];
    if (std::isnan(v)) continue;
    if (!found || v > out.best_value) {
      found = true;
      out.best_value = v;
      const std::size_t ix = idx % xs.size();
      const std::size_t ik = (idx / xs.size()) % ks.size();
      const std::size_t ia = idx / (xs.size() * ks.size());
      out.best = TanhTanParams::from_tan_kappa(as[ia], ks[ik], xs[ix],
                                               spec.omega1_max);
    }
  }
  if (!found) throw AllDegenerate("no grid point could be evaluated");
  return out;
}

GuessGrid guess_grid_scan(const ControlSystem& two_qubit_system,
                          std::span<const double> dw_a0,
                          std::span<const double> dw_b0, double A, double tau,
                          int n_steps, int jobs) {
  GuessGrid grid;
  grid.dw_a0.assign(dw_a0.begin(), dw_a0.end());
  grid.dw_b0.assign(dw_b0.begin(), dw_b0.end());
  const std::size_t total = dw_a0.size() * dw_b0.size();
  grid.q1.assign(total, kNaN);
  SearchConfig cfg;
  parallel_for(total, jobs, [&](std::size_t idx) {
    const std::size_t i = idx / dw_b0.size();
    const std::size_t j = idx % dw_b0.size();
    const Waveform wf =
        linear_two_qubit_guess(dw_a0[i], dw_b0[j], A, tau, n_steps);
    try {
      grid.q1[idx] = search_objective(two_qubit_system, wf, cfg);
    } catch (const DegenerateSpectrum&) {
    }
  });
  for (std::size_t idx = 0; idx < total; ++idx) {
    const double v = grid.q1[idx];
    if (std::isnan(v)) continue;
    if (!grid.any_valid || v > grid.best_q1) {
      grid.any_valid = true;
      grid.best_q1 = v;
      grid.best_a = idx / dw_b0.size();
      grid.best_b = idx % dw_b0.size();
    }
  }
  return grid;
}

void write_guess_grid_csv(const std::filesystem::path& path,
                          const GuessGrid& grid) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string());
  out << "dw_a0,dw_b0,q1\n";
  for (std::size_t i = 0; i < grid.dw_a0.size(); ++i) {
    for (std::size_t j = 0; j < grid.dw_b0.size(); ++j) {
      out << format_double(grid.dw_a0[i]) << ','
          << format_double(grid.dw_b0[j]) << ','
          << format_double(grid.at(i, j)) << '\n';
    }
  }
}

}  // namespace superq
