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

#include <gtest/gtest.h>

#include <unistd.h>

#include "susmap/experiment.hpp"

namespace susmap {
namespace {

// Unfrustrated triangle: two complementary ground states at E = -3.
json small_config() {
    return json::parse(R"({
        "name": "unit",
        "problem": {"num_variables": 3, "quadratic": [[0, 1, 1], [1, 2, 1], [0, 2, -1]]},
        "backend": {"kind": "schrodinger", "integrator": "cf4", "dt": 0.001},
        "h_grid": [0.0, 0.5, 1.5],
        "exact": true,
        "seed": 5
    })");
}

class ExperimentTest : public ::testing::Test {
protected:
    void SetUp() override {
        root_ = fs::temp_directory_path() /
                ("susmap_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()) + "_" +
                 std::to_string(::getpid()));
        fs::remove_all(root_);
        fs::create_directories(root_);
    }
    void TearDown() override { fs::remove_all(root_); }

    fs::path root_;
};

std::string config_error(const json& j) {
    try {
        parse_config(j);
    } catch (const InvalidInput& e) {
        return e.what();
    }
    return "";
}

TEST(ConfigTest, DefaultsAndResolvedFields) {
    const auto c = parse_config(small_config());
    EXPECT_EQ(c.mode, SweepMode::Reverse);
    EXPECT_EQ(c.grid.size(), 3u);
    EXPECT_EQ(c.initial_states.size(), 8u);
    EXPECT_EQ(c.targets, enumerate_ground_states(c.ising()).states);
    EXPECT_DOUBLE_EQ(c.presets.time_scale, 0.01);
    EXPECT_TRUE(c.envelope.is_analytic());
}

TEST(ConfigTest, SnapshotReparsesToTheSameDigest) {
    auto j = small_config();
    j["envelope"] = {{"table", {{0, 5, 0}, {0.5, 1, 3}, {1, 0, 8}}}};
    const auto c = parse_config(j);
    const auto again = parse_config(c.snapshot());
    EXPECT_EQ(again.digest(), c.digest());
    EXPECT_EQ(again.snapshot(), c.snapshot());
}

TEST(ConfigTest, DigestTracksEveryRelevantField) {
    const auto base = parse_config(small_config()).digest();
    auto j = small_config();
    j["seed"] = 6;
    EXPECT_NE(parse_config(j).digest(), base);
    j = small_config();
    j["backend"]["dt"] = 0.0005;
    EXPECT_NE(parse_config(j).digest(), base);
}

TEST(ConfigTest, ErrorsNameTheField) {
    auto j = small_config();
    j.erase("problem");
    EXPECT_EQ(config_error(j), "config.problem: required");

    j = small_config();
    j["mode"] = "sideways";
    EXPECT_EQ(config_error(j).rfind("config.mode", 0), 0u);

    j = small_config();
    j["h_grid"] = {0.0, 0.5, 0.2};
    EXPECT_EQ(config_error(j).rfind("config.h_grid", 0), 0u);

    j = small_config();
    j["h_grid"] = {0.0, 3.5};
    EXPECT_EQ(config_error(j).rfind("config.schedule", 0), 0u);

    j = small_config();
    j["targets"] = {7, 1};
    EXPECT_NE(config_error(j).find("not a ground state"), std::string::npos);

    j = small_config();
    j["initial_states"] = {9};
    EXPECT_EQ(config_error(j).rfind("config.initial_states", 0), 0u);

    j = small_config();
    j["backend"]["dt"] = -1;
    EXPECT_EQ(config_error(j).rfind("config.backend", 0), 0u);

    j = small_config();
    j["seed"] = "five";
    EXPECT_EQ(config_error(j), "config.seed: wrong type");
}

TEST(ConfigTest, BundledConfigsLoad) {
    for (const char* name : {"n6.json", "n7.json", "n8.json", "ra-only.json", "forward-fair-sampling.json"}) {
        EXPECT_NO_THROW(load_config(fs::path(SUSMAP_SOURCE_DIR) / "configs" / name)) << name;
    }
    const auto c = load_config(fs::path(SUSMAP_SOURCE_DIR) / "configs" / "n6.json", {std::uint64_t{99}, "svmc", false});
    EXPECT_EQ(c.seed, 99u);
    EXPECT_EQ(c.backend.kind, BackendKind::Svmc);
}

TEST(SeedRuleTest, DistinctPerTaskAndStable) {
    std::set<std::uint64_t> seen;
    for (StateIndex g : {1u, 6u}) {
        for (StateIndex i = 0; i < 8; ++i) {
            for (std::size_t j = 0; j < 3; ++j) seen.insert(task_seed(5, g, i, j));
        }
    }
    EXPECT_EQ(seen.size(), 48u);
    EXPECT_EQ(task_seed(5, 1, 2, 3), mix_seed(mix_seed(mix_seed(5, 1), 2), 3));
}

TEST_F(ExperimentTest, SweepWritesCurvesMatchingDirectRuns) {
    const auto c = parse_config(small_config());
    const auto s = run_sweep(c, root_);
    EXPECT_TRUE(s.complete);
    EXPECT_EQ(s.total, c.targets.size() * 3);
    const auto data = load_sweep(root_);
    EXPECT_TRUE(data.gaps.empty());
    const StateIndex g = c.targets[0];
    const StateIndex init = 3;
    for (std::size_t j = 0; j < 3; ++j) {
        const auto run = reverse_anneal_run(c.ising(), SpinState::from_index(init, 3), SpinState::from_index(g, 3),
                                            c.grid[j], c.presets, c.envelope, c.backend);
        EXPECT_NEAR(data.curves.at(g).at(init)[j], (*run.distribution)[g], 1e-12);
    }
    const json m = json::parse(io::read_file(root_ / "manifest.json"));
    EXPECT_EQ(m["config_digest"], c.digest());
    EXPECT_EQ(m["outputs"]["curves.csv"]["sha256"], io::sha256_file(root_ / "curves.csv"));
}

TEST_F(ExperimentTest, ResumeSkipsFinishedTasks) {
    const auto c = parse_config(small_config());
    SweepOptions first;
    first.stop_after = 2;
    auto s = run_sweep(c, root_, first);
    EXPECT_EQ(s.computed, 2u);
    EXPECT_FALSE(s.complete);
    EXPECT_FALSE(fs::exists(root_ / "curves.csv"));
    EXPECT_THROW(load_sweep(root_), MissingPrerequisite);

    s = run_sweep(c, root_);
    EXPECT_EQ(s.skipped, 2u);
    EXPECT_EQ(s.computed, s.total - 2);
    EXPECT_TRUE(s.complete);
    const auto curves = io::read_file(root_ / "curves.csv");

    s = run_sweep(c, root_);
    EXPECT_EQ(s.computed, 0u);
    EXPECT_EQ(io::read_file(root_ / "curves.csv"), curves);
}

TEST_F(ExperimentTest, ChangedConfigInvalidatesTasks) {
    run_sweep(parse_config(small_config()), root_);
    auto j = small_config();
    j["backend"]["dt"] = 0.0005;
    const auto s = run_sweep(parse_config(j), root_);
    EXPECT_EQ(s.skipped, 0u);
    EXPECT_EQ(s.computed, s.total);
}

TEST_F(ExperimentTest, RerunsAreByteIdentical) {
    for (bool exact : {true, false}) {
        auto j = small_config();
        j["exact"] = exact;
        const auto c = parse_config(j);
        const auto a = root_ / (exact ? "a_exact" : "a_sampled");
        const auto b = root_ / (exact ? "b_exact" : "b_sampled");
        SweepOptions parallel;
        parallel.jobs = 3;
        run_sweep(c, a);
        run_sweep(c, b, parallel);
        run_analyze(a);
        run_analyze(b);
        const auto ma = json::parse(io::read_file(a / "manifest.json"));
        const auto mb = json::parse(io::read_file(b / "manifest.json"));
        EXPECT_EQ(ma["outputs"], mb["outputs"]) << exact;
        EXPECT_EQ(io::read_file(a / "curves.csv"), io::read_file(b / "curves.csv"));
    }
}

TEST_F(ExperimentTest, AnalyzeProducesRecordsAndCorrelations) {
    const auto c = parse_config(small_config());
    run_sweep(c, root_);
    const auto summary = run_analyze(root_);
    EXPECT_EQ(summary["records"], c.targets.size() * 8);
    const auto rec = io::read_csv(root_ / "analysis" / "records.csv", "gs_index,initial_state,chi,delta,energy,hamming");
    EXPECT_EQ(rec.rows.size(), c.targets.size() * 8);
    const auto corr = json::parse(io::read_file(root_ / "analysis" / "correlations.json"));
    EXPECT_EQ(corr["ra_source"], "h=0 column of the sweep");
    EXPECT_TRUE(corr["pooled"]["hamming_chi"].is_number());
    EXPECT_TRUE(fs::exists(root_ / "analysis" / "ra_comparison.csv"));

    const auto data = load_sweep(root_);
    for (const auto& r : rec.rows) {
        const auto& curve = data.curves.at(std::stoull(r[0])).at(std::stoull(r[1]));
        EXPECT_NEAR(std::stod(r[2]), chi(curve), 1e-12);
    }
}

TEST_F(ExperimentTest, ExplicitRaOnlyExperimentFeedsTheComparison) {
    const auto sweep_dir = root_ / "sweep";
    const auto ra_dir = root_ / "ra";
    run_sweep(parse_config(small_config()), sweep_dir);
    auto j = small_config();
    j["mode"] = "ra_only";
    run_sweep(parse_config(j), ra_dir);
    // without linear terms the RA-only anneal is the h = 0 anneal; the two
    // differ only through the extra h-gain breakpoints in the step grid
    const auto with_ra = run_analyze(sweep_dir, {ra_dir});
    const auto plain = run_analyze(sweep_dir);
    EXPECT_NEAR(with_ra["correlations"]["pooled"]["ra_pgs_chi"].get<double>(),
                plain["correlations"]["pooled"]["ra_pgs_chi"].get<double>(), 1e-6);
}

TEST_F(ExperimentTest, ForwardModeWritesGroundStateShares) {
    auto j = small_config();
    j["mode"] = "forward";
    run_sweep(parse_config(j), root_);
    const auto t = io::read_csv(root_ / "gs_distribution.csv", "gs_index,proportion");
    double total = 0.0;
    for (const auto& r : t.rows) total += std::stod(r[1]);
    EXPECT_NEAR(total, 1.0, 1e-9);
    const auto summary = run_analyze(root_);
    EXPECT_EQ(summary["mode"], "forward");
}

TEST_F(ExperimentTest, DownstreamCommandsNeedTheirInputs) {
    EXPECT_THROW(run_analyze(root_), MissingPrerequisite);
    EXPECT_THROW(run_cluster(root_), MissingPrerequisite);
    EXPECT_THROW(run_network(root_), MissingPrerequisite);
    run_sweep(parse_config(small_config()), root_);
    try {
        run_report(root_);
        FAIL() << "report ran without analysis";
    } catch (const MissingPrerequisite& e) {
        EXPECT_NE(std::string(e.what()).find("susmap analyze"), std::string::npos);
    }
}

TEST_F(ExperimentTest, FullPipelineProducesEveryArtifact) {
    const auto c = parse_config(small_config());
    run_sweep(c, root_);
    run_analyze(root_);
    ClusterCommandOptions co;
    co.k = 2;
    const auto clusters = run_cluster(root_, co);
    EXPECT_EQ(clusters.size(), c.targets.size());
    const auto nets = run_network(root_, true);
    for (const auto& [g, net] : nets) {
        EXPECT_LE(net.nodes.size(), 8u);
        EXPECT_EQ(parse_network(io::read_file(root_ / "networks" / ("gs" + std::to_string(g) + ".json"))), net);
    }
    TileCommandOptions to;
    to.m = 3;
    EXPECT_GT(run_tile(root_, to).size(), 0u);
    const auto files = run_report(root_);
    EXPECT_FALSE(files.empty());
    EXPECT_TRUE(fs::exists(root_ / "report" / "summary.txt"));
    const json m = json::parse(io::read_file(root_ / "manifest.json"));
    EXPECT_EQ(m["runs"].size(), 6u);
    EXPECT_TRUE(m["outputs"].contains("tile/embeddings.json"));
}

}  // namespace
}  // namespace susmap
