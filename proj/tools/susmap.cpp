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

// susmap: sweep / analyze / cluster / network / tile / report.
//
// On failure the tool prints {"error": {"code": ..., "message": ...}} to
// stderr and exits 2 for bad input, 3 for missing prerequisites, 1 otherwise.

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

#include "susmap/experiment.hpp"

namespace {

using susmap::json;

struct Common {
    std::string config;
    std::string out = "out";
    std::optional<std::uint64_t> seed;
    std::size_t jobs = 1;
    std::optional<std::string> backend;
    bool exact = false;
};

void add_common(CLI::App* app, Common& c, bool needs_config) {
    auto* opt = app->add_option("--config", c.config, "experiment config file (JSON)");
    if (needs_config) opt->required();
    app->add_option("--out", c.out, "experiment directory")->capture_default_str();
    app->add_option("--seed", c.seed, "master seed override");
    app->add_option("--jobs", c.jobs, "parallel tasks")->check(CLI::PositiveNumber);
    app->add_option("--backend", c.backend, "schrodinger or svmc")->check(CLI::IsMember({"schrodinger", "svmc"}));
    app->add_flag("--exact", c.exact, "record exact probabilities instead of sampled reads");
}

/// For commands that read an existing directory: a given --config must
/// describe the same experiment.
void check_config_matches(const Common& c) {
    if (c.config.empty()) return;
    const auto mine = susmap::load_config(c.config, {c.seed, c.backend, c.exact});
    const auto theirs = susmap::load_experiment(c.out);
    if (mine.digest() != theirs.digest()) {
        throw susmap::InvalidInput("--config does not match the experiment recorded in " + c.out);
    }
}

int fail(const std::string& code, const std::string& message, int status) {
    std::cerr << json{{"error", {{"code", code}, {"message", message}}}}.dump() << "\n";
    return status;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"susmap: state-transition susceptibility mapping for simulated quantum annealing"};
    app.set_version_flag("--version", susmap::kVersion);
    app.require_subcommand(1);

    Common common;
    std::optional<std::size_t> stop_after;
    auto* sweep = app.add_subcommand("sweep", "run all (initial, target, h) anneals of a config");
    add_common(sweep, common, true);
    sweep->add_option("--stop-after", stop_after, "compute at most N tasks, then stop (resume later)");

    std::optional<std::string> ra_only;
    auto* analyze = app.add_subcommand("analyze", "susceptibility records, averages and correlations");
    add_common(analyze, common, false);
    analyze->add_option("--ra-only", ra_only, "directory of a finished ra_only sweep");

    std::optional<std::size_t> k;
    auto* cluster = app.add_subcommand("cluster", "spectral clustering of response curves");
    add_common(cluster, common, false);
    cluster->add_option("--k", k, "number of clusters")->check(CLI::PositiveNumber);

    bool directions = false;
    auto* network = app.add_subcommand("network", "dominant-state transition networks");
    add_common(network, common, false);
    network->add_flag("--directions", directions, "include traversal direction counts in exports");

    susmap::TileCommandOptions tile_opt;
    std::optional<std::string> defects, pattern;
    bool full_graph = false;
    auto* tile = app.add_subcommand("tile", "disjoint parallel embeddings on Pegasus");
    add_common(tile, common, false);
    tile->add_option("--m", tile_opt.m, "Pegasus size parameter")->capture_default_str();
    tile->add_flag("--full-graph", full_graph, "keep non-fabric boundary qubits");
    tile->add_option("--defects", defects, "defect list file, one qubit id per line");
    tile->add_option("--pattern", pattern, "instance file to tile (default: the experiment's problem)");
    tile->add_flag("--fill-around-defects", tile_opt.tiling.fill_around_defects, "refill gaps left by defects");

    auto* report = app.add_subcommand("report", "SVG plots and a text summary");
    add_common(report, common, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return fail("usage", e.what(), 2);
    }

    try {
        json result;
        if (*sweep) {
            const auto cfg = susmap::load_config(common.config, {common.seed, common.backend, common.exact});
            susmap::SweepOptions opt;
            opt.jobs = common.jobs;
            opt.stop_after = stop_after;
            opt.progress = [](const std::string& id) { std::cerr << "done " << id << "\n"; };
            const auto s = susmap::run_sweep(cfg, common.out, opt);
            result = {{"tasks_total", s.total}, {"tasks_computed", s.computed}, {"tasks_skipped", s.skipped},
                      {"tasks_failed", s.failed}, {"complete", s.complete}};
            std::cout << result.dump() << "\n";
            return s.failed > 0 ? 1 : 0;
        }
        check_config_matches(common);
        if (*analyze) {
            susmap::AnalyzeOptions opt;
            if (ra_only) opt.ra_only_dir = *ra_only;
            result = susmap::run_analyze(common.out, opt);
        } else if (*cluster) {
            susmap::ClusterCommandOptions opt;
            opt.k = k;
            opt.seed = common.seed;
            const auto a = susmap::run_cluster(common.out, opt);
            for (const auto& [g, c] : a) result["clusters"][std::to_string(g)] = c.k;
        } else if (*network) {
            const auto nets = susmap::run_network(common.out, directions);
            for (const auto& [g, n] : nets) {
                result["networks"][std::to_string(g)] = {{"nodes", n.nodes.size()}, {"edges", n.edges.size()}};
            }
        } else if (*tile) {
            tile_opt.fabric_only = !full_graph;
            if (common.seed) tile_opt.seed = *common.seed;
            if (defects) tile_opt.defects_file = *defects;
            if (pattern) tile_opt.pattern_file = *pattern;
            const auto set = susmap::run_tile(common.out, tile_opt);
            result = {{"embeddings", set.size()}};
        } else if (*report) {
            result["files"] = susmap::run_report(common.out);
        }
        std::cout << result.dump() << "\n";
        return 0;
    } catch (const susmap::MissingPrerequisite& e) {
        return fail(e.code(), e.what(), 3);
    } catch (const susmap::InvalidInput& e) {
        return fail(e.code(), e.what(), 2);
    } catch (const susmap::Error& e) {
        return fail(e.code(), e.what(), 1);
    } catch (const std::exception& e) {
        return fail("internal", e.what(), 1);
    }
}
