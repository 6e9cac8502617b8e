// Copyright 2026 The susmap Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SUSMAP_EXPERIMENT_HPP
#define SUSMAP_EXPERIMENT_HPP

/*
 * Experiment directories
 *
 *   experiment.json    resolved config snapshot (problem inlined)
 *   tasks/             one file per sweep task, written atomically
 *   curves.csv         gs_index,initial_state,h,p_gs               (reverse)
 *   dominant.csv       gs_index,initial_state,h,dominant_state     (reverse)
 *   ra_only.csv        gs_index,initial_state,p_gs                 (ra_only)
 *   forward.csv        state_index,probability                     (forward)
 *   gs_distribution.csv gs_index,proportion                        (forward)
 *   analysis/          analyze and cluster outputs
 *   networks/          network exports
 *   tile/              tiling outputs
 *   report/            SVG plots and summary.txt
 *   manifest.json      config, seeds, run log and a digest of every file
 *
 * Task seeds: seed(gs, initial, j) = mix(mix(mix(master, gs), initial), j)
 * with mix the SplitMix64 finaliser, so reordering or resuming a sweep
 * never changes any task's stream.
 */

#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "susmap/analysis.hpp"
#include "susmap/error.hpp"
#include "susmap/instance_io.hpp"
#include "susmap/io_util.hpp"
#include "susmap/ising.hpp"
#include "susmap/network.hpp"
#include "susmap/schedule.hpp"
#include "susmap/simulator.hpp"
#include "susmap/svg.hpp"
#include "susmap/topology.hpp"

namespace susmap {

inline constexpr const char* kVersion = "0.1.0";

namespace fs = std::filesystem;
using json = nlohmann::json;

enum class SweepMode { Reverse, RaOnly, Forward };

inline std::string to_string(SweepMode m) {
    switch (m) {
    case SweepMode::Reverse: return "reverse";
    case SweepMode::RaOnly: return "ra_only";
    case SweepMode::Forward: return "forward";
    }
    return "reverse";
}

inline json envelope_to_json(const AnnealEnvelope& env) {
    if (env.is_analytic()) {
        const auto& a = std::get<AnalyticEnvelope>(env.representation());
        return {{"analytic", {{"a_max", a.a_max}, {"b_max", a.b_max}}}};
    }
    json rows = json::array();
    for (const auto& r : std::get<0>(env.representation())) rows.push_back({r.s, r.a, r.b});
    return {{"table", rows}};
}

struct ExperimentConfig {
    std::string name;
    std::optional<IsingProblem> problem;
    BackendConfig backend;
    AnnealEnvelope envelope = default_envelope();
    AnnealPresets presets;
    SweepMode mode = SweepMode::Reverse;
    HGrid grid;
    std::vector<StateIndex> targets;
    std::vector<StateIndex> initial_states;
    bool exact = true;
    std::uint64_t seed = 0;
    ClusteringOptions clustering;
    double archive_threshold = 1e-6;
    HGainLimits hgain_limits;

    const IsingProblem& ising() const { return problem.value(); }
    std::size_t num_variables() const { return ising().num_variables(); }

    /// Fully resolved, canonical form; its digest keys resumable tasks.
    json snapshot() const {
        json j;
        j["name"] = name;
        j["problem"] = instance_to_json(ising());
        j["backend"] = {{"kind", to_string(backend.kind)},
                        {"integrator", to_string(backend.integrator)},
                        {"dt", backend.dt},
                        {"convergence_tolerance", backend.convergence_tolerance},
                        {"max_refinements", backend.max_refinements},
                        {"sweeps", backend.sweeps},
                        {"temperature", backend.temperature},
                        {"dense_limit", backend.dense_limit}};
        j["envelope"] = envelope_to_json(envelope);
        const auto pts = [](const std::vector<SchedulePoint>& v) {
            json a = json::array();
            for (const auto& p : v) a.push_back({p.time, p.value});
            return a;
        };
        j["schedule"] = {{"reverse_anchors", pts(presets.reverse_anchors)},
                         {"hgain_anchors", pts(presets.hgain_shape)},
                         {"forward_anchors", pts(presets.forward_anchors)},
                         {"annealing_time", presets.annealing_time},
                         {"time_scale", presets.time_scale}};
        j["mode"] = to_string(mode);
        j["h_grid"] = grid.values();
        j["targets"] = targets;
        j["initial_states"] = initial_states;
        j["exact"] = exact;
        j["num_reads"] = presets.num_reads;
        j["seed"] = seed;
        j["clustering"] = {{"k", clustering.k},
                           {"gamma", clustering.gamma},
                           {"n_init", clustering.n_init},
                           {"seed", clustering.seed}};
        j["archive_threshold"] = archive_threshold;
        j["hgain_limits"] = {{"max_points", hgain_limits.max_points},
                             {"max_magnitude", hgain_limits.max_magnitude},
                             {"max_slope", hgain_limits.max_slope}};
        return j;
    }

    std::string digest() const { return io::sha256_hex(snapshot().dump()); }
};

namespace detail {

/// Typed field access with "config.a.b" diagnostics.
template <class T>
T field(const json& obj, const std::string& key, const std::string& path, T fallback) {
    if (!obj.contains(key)) return fallback;
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception&) {
        throw InvalidInput(path + "." + key + ": wrong type");
    }
}

inline std::vector<SchedulePoint> parse_points(const json& v, const std::string& path) {
    if (!v.is_array()) throw InvalidInput(path + ": expected a list of [time_us, value] pairs");
    std::vector<SchedulePoint> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const auto& p = v[i];
        if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
            throw InvalidInput(path + "[" + std::to_string(i) + "]: expected [time_us, value]");
        }
        out.push_back({p[0].get<double>(), p[1].get<double>()});
    }
    return out;
}

inline std::vector<StateIndex> parse_state_list(const json& v, const std::string& path, std::size_t n) {
    std::vector<StateIndex> out;
    if (!v.is_array()) throw InvalidInput(path + ": expected \"all\" or a list of state indices");
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i].is_number_unsigned() && !v[i].is_number_integer()) {
            throw InvalidInput(path + "[" + std::to_string(i) + "]: expected a state index");
        }
        const auto k = v[i].get<long long>();
        if (k < 0 || static_cast<StateIndex>(k) >= (StateIndex{1} << n)) {
            throw InvalidInput(path + "[" + std::to_string(i) + "]: state " + std::to_string(k) +
                               " out of range for " + std::to_string(n) + " variables");
        }
        out.push_back(static_cast<StateIndex>(k));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

inline IsingProblem resolve_problem(const json& src, const fs::path& base) {
    const std::string path = "config.problem";
    if (!src.is_object()) throw InvalidInput(path + ": expected an object with \"file\", \"inline\" or \"generator\"");
    if (src.contains("file")) {
        const fs::path p = base / field<std::string>(src, "file", path, "");
        return load_instance(p.string());
    }
    if (src.contains("inline")) return parse_instance(src["inline"].dump(), path + ".inline");
    if (src.contains("num_variables")) return parse_instance(src.dump(), path);
    if (src.contains("generator")) {
        const auto& g = src["generator"];
        const std::string gp = path + ".generator";
        const auto kind = field<std::string>(g, "kind", gp, "spin_glass");
        if (kind != "spin_glass") throw InvalidInput(gp + ".kind: unknown generator '" + kind + "'");
        std::vector<Edge> edges;
        if (!g.contains("edges") || !g["edges"].is_array()) throw InvalidInput(gp + ".edges: expected a list of [i, j]");
        for (std::size_t i = 0; i < g["edges"].size(); ++i) {
            const auto& e = g["edges"][i];
            if (!e.is_array() || e.size() != 2) throw InvalidInput(gp + ".edges[" + std::to_string(i) + "]: expected [i, j]");
            edges.emplace_back(e[0].get<std::size_t>(), e[1].get<std::size_t>());
        }
        return random_spin_glass(edges, field<std::uint64_t>(g, "seed", gp, 0),
                                 field<std::size_t>(g, "num_variables", gp, 0), field<std::string>(g, "name", gp, ""));
    }
    throw InvalidInput(path + ": expected \"file\", \"inline\" or \"generator\"");
}

}  // namespace detail

/// Builds a config from its JSON form; relative paths resolve against `base`.
inline ExperimentConfig parse_config(const json& j, const fs::path& base = ".") {
    using detail::field;
    if (!j.is_object()) throw InvalidInput("config: expected an object");
    ExperimentConfig c;
    c.name = field<std::string>(j, "name", "config", "experiment");
    if (!j.contains("problem")) throw InvalidInput("config.problem: required");
    c.problem = detail::resolve_problem(j["problem"], base);
    const std::size_t n = c.num_variables();

    if (j.contains("backend")) {
        const auto& b = j["backend"];
        const std::string p = "config.backend";
        c.backend.kind = parse_backend_kind(field<std::string>(b, "kind", p, "schrodinger"));
        c.backend.integrator = parse_integrator(field<std::string>(b, "integrator", p, "cf4"));
        c.backend.dt = field<double>(b, "dt", p, c.backend.dt);
        c.backend.convergence_tolerance = field<double>(b, "convergence_tolerance", p, 0.0);
        c.backend.max_refinements = field<std::size_t>(b, "max_refinements", p, c.backend.max_refinements);
        c.backend.sweeps = field<std::size_t>(b, "sweeps", p, c.backend.sweeps);
        c.backend.temperature = field<double>(b, "temperature", p, c.backend.temperature);
        c.backend.dense_limit = field<std::size_t>(b, "dense_limit", p, c.backend.dense_limit);
    }
    try {
        c.backend.validate();
    } catch (const Error& e) {
        throw InvalidInput(std::string("config.") + e.what());
    }

    if (j.contains("envelope")) {
        const auto& e = j["envelope"];
        if (e.is_string() && e.get<std::string>() == "default") {
            c.envelope = default_envelope();
        } else if (e.is_object() && e.contains("file")) {
            c.envelope = load_envelope_file((base / e["file"].get<std::string>()).string());
        } else if (e.is_object() && e.contains("table")) {
            std::vector<EnvelopeRow> rows;
            for (const auto& r : e["table"]) {
                if (!r.is_array() || r.size() != 3) throw InvalidInput("config.envelope.table: expected [s, A_GHz, B_GHz] rows");
                rows.push_back({r[0].get<double>(), r[1].get<double>(), r[2].get<double>()});
            }
            c.envelope = load_envelope(std::move(rows));
        } else if (e.is_object() && e.contains("analytic")) {
            AnalyticEnvelope a;
            a.a_max = field<double>(e["analytic"], "a_max", "config.envelope.analytic", a.a_max);
            a.b_max = field<double>(e["analytic"], "b_max", "config.envelope.analytic", a.b_max);
            c.envelope = AnnealEnvelope(a);
        } else {
            throw InvalidInput("config.envelope: expected \"default\", {\"file\": ...} or {\"analytic\": ...}");
        }
    }

    if (j.contains("schedule")) {
        const auto& s = j["schedule"];
        const std::string p = "config.schedule";
        if (s.contains("reverse_anchors")) c.presets.reverse_anchors = detail::parse_points(s["reverse_anchors"], p + ".reverse_anchors");
        if (s.contains("hgain_anchors")) c.presets.hgain_shape = detail::parse_points(s["hgain_anchors"], p + ".hgain_anchors");
        if (s.contains("forward_anchors")) c.presets.forward_anchors = detail::parse_points(s["forward_anchors"], p + ".forward_anchors");
        c.presets.annealing_time = field<double>(s, "annealing_time", p, c.presets.annealing_time);
        c.presets.time_scale = field<double>(s, "time_scale", p, c.presets.time_scale);
    }
    c.presets.num_reads = field<std::size_t>(j, "num_reads", "config", c.presets.num_reads);
    if (c.presets.num_reads == 0) throw InvalidInput("config.num_reads: must be positive");

    const auto mode = field<std::string>(j, "mode", "config", "reverse");
    if (mode == "reverse") c.mode = SweepMode::Reverse;
    else if (mode == "ra_only") c.mode = SweepMode::RaOnly;
    else if (mode == "forward") c.mode = SweepMode::Forward;
    else throw InvalidInput("config.mode: expected reverse, ra_only or forward");

    if (j.contains("h_grid")) {
        const auto& g = j["h_grid"];
        try {
            if (g.is_array()) {
                c.grid = HGrid(g.get<std::vector<double>>());
            } else if (g.is_object()) {
                c.grid = HGrid(HGrid::range(field<double>(g, "start", "config.h_grid", 0.0),
                                            field<double>(g, "stop", "config.h_grid", 3.0),
                                            field<double>(g, "step", "config.h_grid", 0.1)));
            } else {
                throw InvalidInput("expected a list or {start, stop, step}");
            }
        } catch (const Error& e) {
            throw InvalidInput(std::string("config.h_grid: ") + e.what());
        } catch (const json::exception&) {
            throw InvalidInput("config.h_grid: expected numbers");
        }
    }

    if (j.contains("hgain_limits")) {
        const auto& l = j["hgain_limits"];
        c.hgain_limits.max_points = field<std::size_t>(l, "max_points", "config.hgain_limits", c.hgain_limits.max_points);
        c.hgain_limits.max_magnitude = field<double>(l, "max_magnitude", "config.hgain_limits", c.hgain_limits.max_magnitude);
        c.hgain_limits.max_slope = field<double>(l, "max_slope", "config.hgain_limits", c.hgain_limits.max_slope);
    }

    const auto gs = enumerate_ground_states(c.ising());
    if (!j.contains("targets") || (j["targets"].is_string() && j["targets"].get<std::string>() == "all")) {
        c.targets = gs.states;
    } else {
        c.targets = detail::parse_state_list(j["targets"], "config.targets", n);
        for (StateIndex t : c.targets) {
            if (std::find(gs.states.begin(), gs.states.end(), t) == gs.states.end()) {
                throw InvalidInput("config.targets: state " + std::to_string(t) + " is not a ground state");
            }
        }
    }
    if (!j.contains("initial_states") ||
        (j["initial_states"].is_string() && j["initial_states"].get<std::string>() == "all")) {
        c.initial_states.resize(std::size_t{1} << n);
        std::iota(c.initial_states.begin(), c.initial_states.end(), StateIndex{0});
    } else {
        c.initial_states = detail::parse_state_list(j["initial_states"], "config.initial_states", n);
    }

    c.exact = field<bool>(j, "exact", "config", true);
    c.seed = field<std::uint64_t>(j, "seed", "config", 0);
    if (j.contains("clustering")) {
        const auto& k = j["clustering"];
        c.clustering.k = field<std::size_t>(k, "k", "config.clustering", 4);
        c.clustering.gamma = field<double>(k, "gamma", "config.clustering", 1.0);
        c.clustering.n_init = field<std::size_t>(k, "n_init", "config.clustering", 10);
        c.clustering.seed = field<std::uint64_t>(k, "seed", "config.clustering", 0);
    }
    c.archive_threshold = field<double>(j, "archive_threshold", "config", c.archive_threshold);

    // schedules must be valid as a whole before any task runs
    try {
        if (c.mode == SweepMode::Forward) {
            c.presets.forward_spec().validate();
        } else {
            const auto probe = SpinState::from_index(0, n);
            c.presets.reverse_spec(probe, std::nullopt).validate();
            if (c.mode == SweepMode::Reverse) {
                for (double h : c.grid.values()) {
                    c.presets.reverse_spec(probe, h).validate();
                    const auto report = validate_hgain_schedule(c.presets.hgain_schedule(h), c.hgain_limits);
                    if (!report.empty()) throw InvalidInput("h = " + io::fmt(h) + ": " + report.front().message);
                }
            }
        }
    } catch (const Error& e) {
        throw InvalidInput(std::string("config.schedule: ") + e.what());
    }
    return c;
}

/// Overrides taken from the command line.
struct ConfigOverrides {
    std::optional<std::uint64_t> seed;
    std::optional<std::string> backend;
    bool exact = false;
};

inline json load_config_json(const fs::path& path) {
    try {
        return json::parse(io::read_file(path));
    } catch (const json::parse_error& e) {
        throw InvalidInput(path.string() + ": malformed JSON (" + e.what() + ")");
    }
}

inline ExperimentConfig load_config(const fs::path& path, const ConfigOverrides& ov = {}) {
    json j = load_config_json(path);
    if (ov.seed) j["seed"] = *ov.seed;
    if (ov.backend) j["backend"]["kind"] = *ov.backend;
    if (ov.exact) j["exact"] = true;
    return parse_config(j, path.has_parent_path() ? path.parent_path() : fs::path("."));
}

inline std::uint64_t task_seed(std::uint64_t master, StateIndex gs, StateIndex initial, std::size_t h_index) {
    return mix_seed(mix_seed(mix_seed(master, gs), initial), h_index);
}

// ---------------------------------------------------------------------------
// Manifest

namespace detail {

inline std::vector<std::string> list_outputs(const fs::path& out) {
    std::vector<std::string> files;
    for (const auto& e : fs::recursive_directory_iterator(out)) {
        if (!e.is_regular_file()) continue;
        const std::string rel = fs::relative(e.path(), out).generic_string();
        if (rel == "manifest.json" || rel.ends_with(".partial")) continue;
        files.push_back(rel);
    }
    std::sort(files.begin(), files.end());
    return files;
}

}  // namespace detail

/// Appends a run-log entry and re-digests every file in the directory.
inline json update_manifest(const fs::path& out, const std::string& command, json run_info) {
    const fs::path mp = out / "manifest.json";
    json m = fs::exists(mp) ? json::parse(io::read_file(mp)) : json::object();
    m["tool"] = "susmap";
    m["version"] = kVersion;
    if (fs::exists(out / "experiment.json")) {
        const json snap = json::parse(io::read_file(out / "experiment.json"));
        m["config"] = snap;
        m["config_digest"] = io::sha256_hex(snap.dump());
        m["master_seed"] = snap.value("seed", std::uint64_t{0});
        m["seed_rule"] = "seed(gs, initial, j) = splitmix64(splitmix64(splitmix64(master, gs), initial), j)";
        m["notes"] = json::array({"coefficients are not auto-scaled; hardware auto_scale has no counterpart here",
                                  "closed-system evolution; no noise or thermalization"});
    }
    run_info["command"] = command;
    m["runs"].push_back(std::move(run_info));
    json outputs = json::object();
    for (const auto& rel : detail::list_outputs(out)) {
        const std::string data = io::read_file(out / rel);
        outputs[rel] = {{"sha256", io::sha256_hex(data)}, {"bytes", data.size()}};
    }
    m["outputs"] = outputs;
    io::atomic_write(mp, m.dump(2) + "\n");
    return m;
}

// ---------------------------------------------------------------------------
// Sweep

struct SweepOptions {
    std::size_t jobs = 1;
    std::optional<std::size_t> stop_after;  // compute at most this many tasks, then stop (for interruption tests)
    std::function<void(const std::string&)> progress;
};

struct SweepSummary {
    std::size_t total = 0;
    std::size_t computed = 0;
    std::size_t skipped = 0;
    std::size_t failed = 0;
    bool complete = false;
};

namespace detail {

struct SweepTask {
    std::string id;
    StateIndex gs = 0;
    std::size_t h_index = 0;
};

inline json archive_distribution(const Distribution& dist, double threshold) {
    json a = json::array();
    for (std::size_t k = 0; k < dist.size(); ++k) {
        if (dist[k] > threshold) a.push_back({k, dist[k]});
    }
    return a;
}

inline json archive_counts(const SampleSet& s) {
    json a = json::array();
    for (const auto& [k, c] : s.counts) a.push_back({k, c});
    return a;
}

/// Rows for every configured initial state from one propagator (or, for
/// sampling backends, one run per initial state).
inline json run_reverse_task(const ExperimentConfig& c, const std::optional<StateIndex>& target,
                             std::optional<double> h, std::size_t h_index, const std::vector<StateIndex>& read_states) {
    const std::size_t n = c.num_variables();
    const IsingProblem problem = target ? encode_target(c.ising(), SpinState::from_index(*target, n)) : c.ising();
    const auto spec = c.presets.reverse_spec(SpinState::from_index(0, n), h);
    json rows = json::array();
    json trace_j;
    const StateIndex key_gs = target.value_or(0);

    const auto emit = [&](StateIndex initial, const Distribution* dist, const SampleSet* samples) {
        json r;
        r["initial"] = initial;
        json p = json::object();
        for (StateIndex g : read_states) {
            const double v = dist ? (*dist)[g] : pgs(*samples, g);
            p[std::to_string(g)] = v;
        }
        r["p"] = p;
        r["dominant"] = dist ? dominant_state(*dist) : dominant_state(*samples);
        r["dist"] = dist ? archive_distribution(*dist, c.archive_threshold) : archive_counts(*samples);
        rows.push_back(std::move(r));
    };

    if (c.backend.kind == BackendKind::Schrodinger) {
        EvolutionTrace trace;
        const Eigen::MatrixXd t = transition_matrix(problem, c.envelope, spec, c.backend, &trace);
        trace_j = {{"steps", trace.steps},
                   {"refinements", trace.refinements},
                   {"max_norm_drift", trace.max_norm_drift},
                   {"final_dt", trace.final_dt}};
        for (StateIndex i : c.initial_states) {
            Distribution dist(static_cast<std::size_t>(t.rows()));
            for (Eigen::Index k = 0; k < t.rows(); ++k) dist[static_cast<std::size_t>(k)] = t(k, static_cast<Eigen::Index>(i));
            if (c.exact) {
                emit(i, &dist, nullptr);
            } else {
                const auto s = sample(dist, c.presets.num_reads, task_seed(c.seed, key_gs, i, h_index), "schrodinger");
                emit(i, nullptr, &s);
            }
        }
    } else {
        for (StateIndex i : c.initial_states) {
            BackendConfig b = c.backend;
            b.seed = task_seed(c.seed, key_gs, i, h_index);
            AnnealSpec s = spec;
            s.initial_state = SpinState::from_index(i, n);
            const auto samples = svmc_evolve(problem, c.envelope, s, b);
            emit(i, nullptr, &samples);
        }
    }
    json out;
    out["rows"] = std::move(rows);
    if (!trace_j.is_null()) out["trace"] = std::move(trace_j);
    return out;
}

inline json run_forward_task(const ExperimentConfig& c) {
    const auto spec = c.presets.forward_spec();
    json out;
    if (c.backend.kind == BackendKind::Schrodinger) {
        EvolutionTrace trace;
        const auto dist = evolve(c.ising(), c.envelope, spec, c.backend, &trace);
        out["trace"] = {{"steps", trace.steps}, {"max_norm_drift", trace.max_norm_drift}};
        if (c.exact) {
            out["probability"] = dist;
        } else {
            out["counts"] = archive_counts(sample(dist, c.presets.num_reads, task_seed(c.seed, 0, 0, 0), "schrodinger"));
        }
    } else {
        BackendConfig b = c.backend;
        b.seed = task_seed(c.seed, 0, 0, 0);
        out["counts"] = archive_counts(svmc_evolve(c.ising(), c.envelope, spec, b));
    }
    return out;
}

inline std::vector<SweepTask> plan_tasks(const ExperimentConfig& c) {
    std::vector<SweepTask> tasks;
    switch (c.mode) {
    case SweepMode::Reverse:
        for (StateIndex g : c.targets) {
            for (std::size_t j = 0; j < c.grid.size(); ++j) {
                tasks.push_back({"gs" + std::to_string(g) + "_h" + std::to_string(j), g, j});
            }
        }
        break;
    case SweepMode::RaOnly: tasks.push_back({"ra_only", 0, 0}); break;
    case SweepMode::Forward: tasks.push_back({"forward", 0, 0}); break;
    }
    return tasks;
}

inline json run_task(const ExperimentConfig& c, const SweepTask& t) {
    switch (c.mode) {
    case SweepMode::Reverse:
        return run_reverse_task(c, t.gs, c.grid[t.h_index], t.h_index, {t.gs});
    case SweepMode::RaOnly:
        return run_reverse_task(c, std::nullopt, std::nullopt, 0, c.targets);
    case SweepMode::Forward:
        return run_forward_task(c);
    }
    return {};
}

inline std::optional<json> load_task(const fs::path& p, const std::string& digest) {
    if (!fs::exists(p)) return std::nullopt;
    try {
        json j = json::parse(io::read_file(p));
        if (j.value("config_digest", std::string{}) != digest || !j.contains("result")) return std::nullopt;
        return j;
    } catch (const json::exception&) {
        return std::nullopt;
    }
}

inline void merge_sweep(const ExperimentConfig& c, const fs::path& out, const std::vector<SweepTask>& tasks) {
    const std::string digest = c.digest();
    std::ostringstream curves, dominant, ra, fwd, gsd;
    curves << "gs_index,initial_state,h,p_gs\n";
    dominant << "gs_index,initial_state,h,dominant_state\n";
    switch (c.mode) {
    case SweepMode::Reverse: {
        // (gs, initial, j) ordering regardless of task completion order
        std::map<std::tuple<StateIndex, StateIndex, std::size_t>, std::pair<double, StateIndex>> rows;
        for (const auto& t : tasks) {
            const auto j = load_task(out / "tasks" / (t.id + ".json"), digest);
            if (!j) continue;
            for (const auto& r : (*j)["result"]["rows"]) {
                rows[{t.gs, r["initial"].get<StateIndex>(), t.h_index}] = {r["p"][std::to_string(t.gs)].get<double>(),
                                                                          r["dominant"].get<StateIndex>()};
            }
        }
        for (const auto& [key, v] : rows) {
            const auto& [g, i, jh] = key;
            curves << g << "," << i << "," << io::fmt(c.grid[jh]) << "," << io::fmt(v.first) << "\n";
            dominant << g << "," << i << "," << io::fmt(c.grid[jh]) << "," << v.second << "\n";
        }
        io::atomic_write(out / "curves.csv", curves.str());
        io::atomic_write(out / "dominant.csv", dominant.str());
        break;
    }
    case SweepMode::RaOnly: {
        const auto j = load_task(out / "tasks" / "ra_only.json", digest);
        if (!j) return;
        std::map<std::pair<StateIndex, StateIndex>, double> rows;
        for (const auto& r : (*j)["result"]["rows"]) {
            for (const auto& [g, p] : r["p"].items()) rows[{std::stoull(g), r["initial"].get<StateIndex>()}] = p.get<double>();
        }
        ra << "gs_index,initial_state,p_gs\n";
        for (const auto& [key, p] : rows) ra << key.first << "," << key.second << "," << io::fmt(p) << "\n";
        io::atomic_write(out / "ra_only.csv", ra.str());
        break;
    }
    case SweepMode::Forward: {
        const auto j = load_task(out / "tasks" / "forward.json", digest);
        if (!j) return;
        const auto& res = (*j)["result"];
        const auto gs = enumerate_ground_states(c.ising());
        std::map<StateIndex, double> gs_share;
        if (res.contains("probability")) {
            const auto dist = res["probability"].get<Distribution>();
            fwd << "state_index,probability\n";
            for (std::size_t k = 0; k < dist.size(); ++k) fwd << k << "," << io::fmt(dist[k]) << "\n";
            gs_share = gs_distribution(dist, gs);
        } else {
            SampleSet s;
            s.total_reads = c.presets.num_reads;
            fwd << "state_index,count\n";
            for (const auto& e : res["counts"]) {
                s.counts[e[0].get<StateIndex>()] = e[1].get<std::uint64_t>();
                fwd << e[0].get<StateIndex>() << "," << e[1].get<std::uint64_t>() << "\n";
            }
            try {
                gs_share = gs_distribution(s, gs);
            } catch (const UndefinedResult&) {
                for (StateIndex g : gs.states) gs_share[g] = 0.0;
            }
        }
        gsd << "gs_index,proportion\n";
        for (const auto& [g, p] : gs_share) gsd << g << "," << io::fmt(p) << "\n";
        io::atomic_write(out / "forward.csv", fwd.str());
        io::atomic_write(out / "gs_distribution.csv", gsd.str());
        break;
    }
    }
}

}  // namespace detail

/// Runs every pending task, then merges per-task files into the CSVs.
/// Tasks already on disk for the same config digest are skipped.
inline SweepSummary run_sweep(const ExperimentConfig& c, const fs::path& out, const SweepOptions& opt = {}) {
    const std::string started = io::utc_timestamp();
    fs::create_directories(out / "tasks");
    const json snap = c.snapshot();
    io::atomic_write(out / "experiment.json", snap.dump(2) + "\n");
    const std::string digest = io::sha256_hex(snap.dump());

    const auto tasks = detail::plan_tasks(c);
    std::vector<const detail::SweepTask*> pending;
    SweepSummary sum;
    sum.total = tasks.size();
    for (const auto& t : tasks) {
        if (detail::load_task(out / "tasks" / (t.id + ".json"), digest)) ++sum.skipped;
        else pending.push_back(&t);
    }
    if (opt.stop_after && pending.size() > *opt.stop_after) pending.resize(*opt.stop_after);

    std::atomic<std::size_t> next{0};
    std::mutex mu;
    json failures = json::array();
    const auto worker = [&] {
        for (std::size_t k = next++; k < pending.size(); k = next++) {
            const auto& t = *pending[k];
            try {
                json doc;
                doc["task"] = {{"id", t.id}, {"gs_index", t.gs}, {"h_index", t.h_index}};
                if (c.mode == SweepMode::Reverse) doc["task"]["h"] = c.grid[t.h_index];
                doc["config_digest"] = digest;
                doc["result"] = detail::run_task(c, t);
                io::atomic_write(out / "tasks" / (t.id + ".json"), doc.dump() + "\n");
                std::lock_guard lock(mu);
                ++sum.computed;
                if (opt.progress) opt.progress(t.id);
            } catch (const Error& e) {
                std::lock_guard lock(mu);
                ++sum.failed;
                failures.push_back({{"task", t.id}, {"code", e.code()}, {"message", e.what()}});
            }
        }
    };
    const std::size_t jobs = std::max<std::size_t>(1, std::min(opt.jobs, pending.size()));
    std::vector<std::thread> pool;
    for (std::size_t w = 1; w < jobs; ++w) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    sum.complete = sum.skipped + sum.computed == sum.total;
    if (sum.complete) detail::merge_sweep(c, out, tasks);
    update_manifest(out, "sweep",
                    {{"started_at", started},
                     {"finished_at", io::utc_timestamp()},
                     {"tasks_total", sum.total},
                     {"tasks_computed", sum.computed},
                     {"tasks_skipped", sum.skipped},
                     {"tasks_failed", sum.failed},
                     {"complete", sum.complete},
                     {"failures", failures}});
    return sum;
}

// ---------------------------------------------------------------------------
// Loading a finished sweep

struct SweepData {
    ExperimentConfig config;
    std::map<StateIndex, std::map<StateIndex, std::vector<double>>> curves;  // gs -> initial -> p_gs per h
    std::vector<std::string> gaps;
};

inline ExperimentConfig load_experiment(const fs::path& dir) {
    const fs::path p = dir / "experiment.json";
    if (!fs::exists(p)) throw MissingPrerequisite(dir.string() + " has no experiment.json; run `susmap sweep` first");
    return parse_config(json::parse(io::read_file(p)), dir);
}

inline SweepData load_sweep(const fs::path& dir) {
    SweepData d{load_experiment(dir), {}, {}};
    const auto& c = d.config;
    if (c.mode != SweepMode::Reverse) throw InvalidInput(dir.string() + " is a " + to_string(c.mode) + " experiment, not a reverse sweep");
    if (!fs::exists(dir / "curves.csv")) throw MissingPrerequisite(dir.string() + " has no curves.csv; run `susmap sweep` to completion first");
    const auto t = io::read_csv(dir / "curves.csv", "gs_index,initial_state,h,p_gs");
    std::map<double, std::size_t> hpos;
    for (std::size_t j = 0; j < c.grid.size(); ++j) hpos[c.grid[j]] = j;
    for (const auto& r : t.rows) {
        const auto g = std::stoull(r[0]);
        const auto i = std::stoull(r[1]);
        const auto it = hpos.find(std::stod(r[2]));
        if (it == hpos.end()) throw InvalidInput("curves.csv: h = " + r[2] + " is not on the configured grid");
        auto& curve = d.curves[g][i];
        if (curve.empty()) curve.assign(c.grid.size(), std::numeric_limits<double>::quiet_NaN());
        curve[it->second] = std::stod(r[3]);
    }
    for (StateIndex g : c.targets) {
        for (StateIndex i : c.initial_states) {
            const auto gi = d.curves.find(g);
            if (gi == d.curves.end() || !gi->second.contains(i)) {
                d.gaps.push_back("gs " + std::to_string(g) + " initial " + std::to_string(i) + ": no curve");
                continue;
            }
            const auto& v = gi->second.at(i);
            for (std::size_t j = 0; j < v.size(); ++j) {
                if (std::isnan(v[j])) d.gaps.push_back("gs " + std::to_string(g) + " initial " + std::to_string(i) + ": missing h index " + std::to_string(j));
            }
        }
    }
    return d;
}

// ---------------------------------------------------------------------------
// Analyze

struct AnalyzeOptions {
    std::optional<fs::path> ra_only_dir;
};

namespace detail {

inline json pearson_or_null(const std::vector<double>& x, const std::vector<double>& y) {
    try {
        return pearson(x, y);
    } catch (const Error&) {
        return nullptr;
    }
}

}  // namespace detail

/// Susceptibility records, per-GS averages, correlations and (when an
/// RA-only source exists) the RA comparison. Returns the summary document.
inline json run_analyze(const fs::path& dir, const AnalyzeOptions& opt = {}) {
    const std::string started = io::utc_timestamp();
    const ExperimentConfig cfg = load_experiment(dir);
    const fs::path adir = dir / "analysis";
    fs::create_directories(adir);
    json summary;
    summary["mode"] = to_string(cfg.mode);
    json warnings = json::array();

    if (cfg.mode == SweepMode::Forward) {
        if (!fs::exists(dir / "gs_distribution.csv")) throw MissingPrerequisite("no gs_distribution.csv; run `susmap sweep` first");
        const auto t = io::read_csv(dir / "gs_distribution.csv", "gs_index,proportion");
        double lo = 1.0, hi = 0.0;
        json shares = json::object();
        for (const auto& r : t.rows) {
            const double p = std::stod(r[1]);
            shares[r[0]] = p;
            lo = std::min(lo, p);
            hi = std::max(hi, p);
        }
        io::atomic_write(adir / "gs_distribution.csv", io::read_file(dir / "gs_distribution.csv"));
        summary["gs_distribution"] = shares;
        summary["fair_share"] = t.rows.empty() ? 0.0 : 1.0 / static_cast<double>(t.rows.size());
        summary["max_min_spread"] = hi - lo;
    } else if (cfg.mode == SweepMode::RaOnly) {
        if (!fs::exists(dir / "ra_only.csv")) throw MissingPrerequisite("no ra_only.csv; run `susmap sweep` first");
        io::atomic_write(adir / "ra_only.csv", io::read_file(dir / "ra_only.csv"));
        summary["rows"] = io::read_csv(dir / "ra_only.csv").rows.size();
    } else {
        const SweepData data = load_sweep(dir);
        for (const auto& g : data.gaps) warnings.push_back(g);
        const IsingProblem& problem = cfg.ising();
        const std::size_t n = problem.num_variables();

        std::vector<SusceptibilityRecord> records;
        std::ostringstream rec;
        rec << "gs_index,initial_state,chi,delta,energy,hamming\n";
        for (const auto& [g, by_init] : data.curves) {
            for (const auto& [i, curve] : by_init) {
                if (std::any_of(curve.begin(), curve.end(), [](double v) { return std::isnan(v); })) continue;
                const auto r = make_record(problem, ResponseCurve{i, g, curve});
                records.push_back(r);
                rec << g << "," << i << "," << io::fmt(r.chi) << "," << io::fmt(r.delta) << "," << io::fmt(r.energy)
                    << "," << io::fmt(r.hamming) << "\n";
            }
        }
        io::atomic_write(adir / "records.csv", rec.str());

        std::ostringstream avg;
        avg << "gs_index,mean_chi,count,complete\n";
        for (const auto& [g, a] : average_chi_per_gs(records, n)) {
            avg << g << "," << io::fmt(a.mean) << "," << a.count << "," << (a.complete ? "true" : "false") << "\n";
            if (!a.complete) warnings.push_back("gs " + std::to_string(g) + ": average over incomplete initial-state coverage");
        }
        io::atomic_write(adir / "averages.csv", avg.str());

        // RA-only P_GS: an explicit RA-only experiment, else the h = 0 column,
        // which is the same anneal when the problem has no linear terms
        std::map<std::pair<StateIndex, StateIndex>, double> ra;
        std::string ra_source;
        if (opt.ra_only_dir) {
            const auto t = io::read_csv(*opt.ra_only_dir / "ra_only.csv", "gs_index,initial_state,p_gs");
            for (const auto& r : t.rows) ra[{std::stoull(r[0]), std::stoull(r[1])}] = std::stod(r[2]);
            ra_source = (*opt.ra_only_dir / "ra_only.csv").generic_string();
        } else if (cfg.grid[0] == 0.0 && !problem.has_linear_terms()) {
            for (const auto& [g, by_init] : data.curves) {
                for (const auto& [i, curve] : by_init) ra[{g, i}] = curve[0];
            }
            ra_source = "h=0 column of the sweep";
        }

        const auto corr = [&](const std::vector<const SusceptibilityRecord*>& rs) {
            std::vector<double> chi, ham, en, del, rchi, rp;
            for (const auto* r : rs) {
                chi.push_back(r->chi);
                ham.push_back(r->hamming);
                en.push_back(r->energy);
                del.push_back(r->delta);
                if (const auto it = ra.find({r->target_gs, r->initial_state}); it != ra.end()) {
                    rchi.push_back(r->chi);
                    rp.push_back(it->second);
                }
            }
            json j;
            j["count"] = rs.size();
            j["hamming_chi"] = detail::pearson_or_null(ham, chi);
            j["energy_chi"] = detail::pearson_or_null(en, chi);
            j["delta_chi"] = detail::pearson_or_null(del, chi);
            j["ra_pgs_chi"] = rp.empty() ? json(nullptr) : detail::pearson_or_null(rp, rchi);
            return j;
        };
        std::vector<const SusceptibilityRecord*> all;
        std::map<StateIndex, std::vector<const SusceptibilityRecord*>> per;
        for (const auto& r : records) {
            all.push_back(&r);
            per[r.target_gs].push_back(&r);
        }
        json correlations;
        correlations["pooled"] = corr(all);
        for (const auto& [g, rs] : per) correlations["per_gs"][std::to_string(g)] = corr(rs);
        correlations["ra_source"] = ra_source.empty() ? json(nullptr) : json(ra_source);
        io::atomic_write(adir / "correlations.json", correlations.dump(2) + "\n");

        if (!ra.empty()) {
            std::ostringstream rc;
            rc << "gs_index,initial_state,ra_p_gs,chi\n";
            for (const auto& r : records) {
                if (const auto it = ra.find({r.target_gs, r.initial_state}); it != ra.end()) {
                    rc << r.target_gs << "," << r.initial_state << "," << io::fmt(it->second) << "," << io::fmt(r.chi) << "\n";
                }
            }
            io::atomic_write(adir / "ra_comparison.csv", rc.str());
        }
        summary["records"] = records.size();
        summary["correlations"] = correlations;
    }
    summary["warnings"] = warnings;
    io::atomic_write(adir / "summary.json", summary.dump(2) + "\n");
    update_manifest(dir, "analyze", {{"started_at", started}, {"finished_at", io::utc_timestamp()}, {"warnings", warnings.size()}});
    return summary;
}

// ---------------------------------------------------------------------------
// Cluster

struct ClusterCommandOptions {
    std::optional<std::size_t> k;
    std::optional<std::uint64_t> seed;
};

/// Clusters each ground state's response curves separately.
inline std::map<StateIndex, ClusterAssignment> run_cluster(const fs::path& dir, const ClusterCommandOptions& opt = {}) {
    const std::string started = io::utc_timestamp();
    const SweepData data = load_sweep(dir);
    ClusteringOptions co = data.config.clustering;
    if (opt.k) co.k = *opt.k;
    if (opt.seed) co.seed = *opt.seed;
    std::map<StateIndex, ClusterAssignment> out;
    std::ostringstream csv;
    csv << "gs_index,initial_state,cluster\n";
    for (const auto& [g, by_init] : data.curves) {
        std::vector<StateIndex> ids;
        std::vector<std::vector<double>> vecs;
        for (const auto& [i, curve] : by_init) {
            if (std::any_of(curve.begin(), curve.end(), [](double v) { return std::isnan(v); })) continue;
            ids.push_back(i);
            vecs.push_back(curve);
        }
        auto a = spectral_cluster(vecs, co);
        for (std::size_t r = 0; r < ids.size(); ++r) csv << g << "," << ids[r] << "," << a.labels[r] << "\n";
        out.emplace(g, std::move(a));
    }
    fs::create_directories(dir / "analysis");
    io::atomic_write(dir / "analysis" / "clusters.csv", csv.str());
    update_manifest(dir, "cluster", {{"started_at", started}, {"finished_at", io::utc_timestamp()}, {"k", co.k}, {"seed", co.seed}});
    return out;
}

// ---------------------------------------------------------------------------
// Network

/// Paths from dominant.csv: (gs -> list of paths in ascending initial order).
inline std::map<StateIndex, std::vector<DominantPath>> load_paths(const fs::path& dir) {
    const ExperimentConfig cfg = load_experiment(dir);
    if (!fs::exists(dir / "dominant.csv")) throw MissingPrerequisite("no dominant.csv; run `susmap sweep` to completion first");
    const auto t = io::read_csv(dir / "dominant.csv", "gs_index,initial_state,h,dominant_state");
    std::map<std::pair<StateIndex, StateIndex>, std::map<double, StateIndex>> seq;
    for (const auto& r : t.rows) seq[{std::stoull(r[0]), std::stoull(r[1])}][std::stod(r[2])] = std::stoull(r[3]);
    std::map<StateIndex, std::vector<DominantPath>> out;
    for (const auto& [key, by_h] : seq) {
        std::vector<StateIndex> d;
        for (const auto& [h, s] : by_h) d.push_back(s);
        out[key.first].push_back(build_path(d, key.second, key.first));
    }
    return out;
}

inline std::map<StateIndex, TransitionNetwork> run_network(const fs::path& dir, bool directions = false) {
    const std::string started = io::utc_timestamp();
    const ExperimentConfig cfg = load_experiment(dir);
    const auto paths = load_paths(dir);
    std::map<StateIndex, TransitionNetwork> out;
    std::ostringstream sum;
    sum << "gs_index,nodes,edges\n";
    for (const auto& [g, ps] : paths) {
        auto net = union_network(ps, cfg.ising());
        const std::string stem = "gs" + std::to_string(g);
        io::atomic_write(dir / "networks" / (stem + ".graphml"), export_network(net, NetworkFormat::GraphML, directions));
        io::atomic_write(dir / "networks" / (stem + ".dot"), export_network(net, NetworkFormat::Dot, directions));
        io::atomic_write(dir / "networks" / (stem + ".json"), export_network(net, NetworkFormat::Json, directions));
        sum << g << "," << net.nodes.size() << "," << net.edges.size() << "\n";
        out.emplace(g, std::move(net));
    }
    io::atomic_write(dir / "networks" / "summary.csv", sum.str());
    update_manifest(dir, "network", {{"started_at", started}, {"finished_at", io::utc_timestamp()}});
    return out;
}

// ---------------------------------------------------------------------------
// Tile

struct TileCommandOptions {
    std::size_t m = 16;
    bool fabric_only = true;
    std::optional<fs::path> defects_file;
    std::optional<fs::path> pattern_file;  // instance file; default: the experiment's problem
    std::uint64_t seed = 0;
    TilingOptions tiling;
};

inline EmbeddingSet run_tile(const fs::path& dir, const TileCommandOptions& opt) {
    const std::string started = io::utc_timestamp();
    std::optional<IsingProblem> pattern;
    if (opt.pattern_file) pattern = load_instance(opt.pattern_file->string());
    else if (fs::exists(dir / "experiment.json")) pattern = load_experiment(dir).ising();
    else throw MissingPrerequisite("tile needs --pattern or an experiment directory from `susmap sweep`");
    std::set<Qubit> defects;
    if (opt.defects_file) {
        std::istringstream in(io::read_file(*opt.defects_file));
        defects = parse_defect_list(in);
    }
    const HardwareGraph g = pegasus_graph(opt.m, opt.fabric_only, defects);
    const PatternGraph p = PatternGraph::of(*pattern);
    EmbeddingSet set = tile_disjoint_embeddings(g, p, opt.seed, opt.tiling);
    const auto findings = validate_embeddings(g, p, set);
    json emb = json::array();
    for (const auto& e : set.embeddings) {
        json m = json::object();
        for (std::size_t v = 0; v < e.size(); ++v) m[std::to_string(v)] = e[v];
        emb.push_back(std::move(m));
    }
    io::atomic_write(dir / "tile" / "embeddings.json", emb.dump() + "\n");
    json s{{"family", "pegasus"},
           {"m", opt.m},
           {"fabric_only", opt.fabric_only},
           {"qubits", g.nodes().size()},
           {"couplers", g.edges().size()},
           {"defects", defects.size()},
           {"pattern_variables", p.num_variables},
           {"embeddings", set.size()},
           {"seed", opt.seed},
           {"findings", findings.size()}};
    io::atomic_write(dir / "tile" / "summary.json", s.dump(2) + "\n");
    update_manifest(dir, "tile", {{"started_at", started}, {"finished_at", io::utc_timestamp()}, {"embeddings", set.size()}});
    if (!findings.empty()) throw UndefinedResult("tiling failed validation: " + findings.front().message);
    return set;
}

// ---------------------------------------------------------------------------
// Report

/// SVG plots plus summary.txt from the analysis outputs.
inline std::vector<std::string> run_report(const fs::path& dir) {
    const std::string started = io::utc_timestamp();
    const fs::path adir = dir / "analysis";
    if (!fs::exists(adir / "summary.json")) {
        throw MissingPrerequisite("no analysis outputs in " + dir.string() + "; run `susmap analyze` first");
    }
    const ExperimentConfig cfg = load_experiment(dir);
    const fs::path rdir = dir / "report";
    fs::create_directories(rdir);
    std::vector<std::string> written;
    const auto put = [&](const std::string& name, const std::string& content) {
        io::atomic_write(rdir / name, content);
        written.push_back(name);
    };
    const json summary = json::parse(io::read_file(adir / "summary.json"));
    std::ostringstream txt;
    txt << "experiment: " << cfg.name << "\nmode: " << to_string(cfg.mode) << "\nvariables: " << cfg.num_variables()
        << "\n";

    if (cfg.mode == SweepMode::Reverse && fs::exists(adir / "records.csv")) {
        const auto rec = io::read_csv(adir / "records.csv", "gs_index,initial_state,chi,delta,energy,hamming");
        std::map<StateIndex, std::size_t> series;
        for (StateIndex g : cfg.targets) series.emplace(g, series.size());
        std::vector<svg::Point> ph, pe, pd;
        for (const auto& r : rec.rows) {
            const std::size_t s = series[std::stoull(r[0])];
            const double chi_v = std::stod(r[2]);
            pd.push_back({std::stod(r[3]), chi_v, s});
            pe.push_back({std::stod(r[4]), chi_v, s});
            ph.push_back({std::stod(r[5]), chi_v, s});
        }
        put("chi_vs_hamming.svg", svg::scatter("susceptibility vs hamming proportion", "hamming proportion", "chi", ph));
        put("chi_vs_energy.svg", svg::scatter("susceptibility vs initial energy", "energy", "chi", pe));
        put("chi_vs_delta.svg", svg::scatter("susceptibility vs delta", "delta", "chi", pd));

        if (fs::exists(adir / "averages.csv")) {
            const auto avg = io::read_csv(adir / "averages.csv", "gs_index,mean_chi,count,complete");
            std::vector<std::string> labels;
            std::vector<double> vals;
            txt << "mean chi per ground state:\n";
            for (const auto& r : avg.rows) {
                labels.push_back(r[0]);
                vals.push_back(std::stod(r[1]));
                txt << "  gs " << r[0] << ": " << r[1] << " (" << r[2] << " initial states)\n";
            }
            put("average_chi.svg", svg::bars("mean susceptibility per ground state", "mean chi", labels, vals));
        }
        if (summary.contains("correlations")) {
            const auto& pooled = summary["correlations"]["pooled"];
            txt << "pearson r (pooled): hamming-chi " << pooled["hamming_chi"].dump() << ", energy-chi "
                << pooled["energy_chi"].dump() << ", delta-chi " << pooled["delta_chi"].dump() << ", ra_pgs-chi "
                << pooled["ra_pgs_chi"].dump() << "\n";
        }
        if (fs::exists(adir / "clusters.csv") && fs::exists(dir / "curves.csv")) {
            const SweepData data = load_sweep(dir);
            const auto cl = io::read_csv(adir / "clusters.csv", "gs_index,initial_state,cluster");
            std::map<StateIndex, std::vector<std::pair<std::size_t, std::vector<double>>>> lines;
            for (const auto& r : cl.rows) {
                const auto g = std::stoull(r[0]);
                const auto i = std::stoull(r[1]);
                lines[g].emplace_back(std::stoull(r[2]), data.curves.at(g).at(i));
            }
            for (const auto& [g, ls] : lines) {
                put("curves_gs" + std::to_string(g) + ".svg",
                    svg::curves("response curves toward gs " + std::to_string(g) + " by cluster", cfg.grid.values(), ls));
            }
        }
        if (fs::exists(dir / "networks" / "summary.csv")) {
            const auto ns = io::read_csv(dir / "networks" / "summary.csv", "gs_index,nodes,edges");
            txt << "transition networks:\n";
            for (const auto& r : ns.rows) {
                const auto net = parse_network(io::read_file(dir / "networks" / ("gs" + r[0] + ".json")));
                put("network_gs" + r[0] + ".svg", svg::network("transition network toward gs " + r[0], net));
                txt << "  gs " << r[0] << ": " << r[1] << " nodes, " << r[2] << " edges\n";
            }
        }
    }
    if (cfg.mode == SweepMode::Forward && fs::exists(adir / "gs_distribution.csv")) {
        const auto t = io::read_csv(adir / "gs_distribution.csv", "gs_index,proportion");
        std::vector<std::string> labels;
        std::vector<double> vals;
        txt << "forward-anneal ground-state distribution:\n";
        for (const auto& r : t.rows) {
            labels.push_back(r[0]);
            vals.push_back(std::stod(r[1]));
            txt << "  gs " << r[0] << ": " << r[1] << "\n";
        }
        put("gs_distribution.svg", svg::bars("forward anneal ground-state distribution", "proportion", labels, vals));
    }
    if (fs::exists(dir / "tile" / "summary.json")) {
        const json t = json::parse(io::read_file(dir / "tile" / "summary.json"));
        txt << "tiling: " << t["embeddings"] << " disjoint embeddings on P" << t["m"] << " (" << t["qubits"]
            << " qubits, " << t["defects"] << " defects)\n";
    }
    for (const auto& w : summary.value("warnings", json::array())) txt << "warning: " << w.get<std::string>() << "\n";
    put("summary.txt", txt.str());
    update_manifest(dir, "report", {{"started_at", started}, {"finished_at", io::utc_timestamp()}});
    return written;
}

}  // namespace susmap

#endif  // SUSMAP_EXPERIMENT_HPP
