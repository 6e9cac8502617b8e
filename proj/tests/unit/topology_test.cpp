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

#include <random>
#include <sstream>

#include "susmap/instance_io.hpp"
#include "susmap/io_util.hpp"
#include "susmap/topology.hpp"

namespace susmap {
namespace {

// "a,b\n" per edge in sorted order, hashed. Reference prefixes were taken from
// dwave_networkx.pegasus_graph(m, fabric_only=...) with linear labels.
std::string edge_digest(const HardwareGraph& g) {
    std::string text;
    for (const auto& [a, b] : g.edges()) text += std::to_string(a) + "," + std::to_string(b) + "\n";
    return io::sha256_hex(text).substr(0, 16);
}

// Counts coordinates kept by the fabric cut straight from the offset tables.
std::size_t fabric_coordinate_count(std::size_t m) {
    const int lo = 2;   // smallest offset
    const int hi = 10;  // 12 - largest offset
    std::size_t count = 0;
    for (int u = 0; u < 2; ++u) {
        for (int w = 0; w < static_cast<int>(m); ++w) {
            for (int k = 0; k < 12; ++k) {
                for (int z = 0; z + 1 < static_cast<int>(m); ++z) {
                    if (w == 0 && k < lo) continue;
                    if (w == static_cast<int>(m) - 1 && k >= hi) continue;
                    ++count;
                }
            }
        }
    }
    return count;
}

PatternGraph pattern_of(const std::string& name) {
    return PatternGraph::of(load_instance(std::string(SUSMAP_SOURCE_DIR) + "/instances/" + name));
}

struct PegasusCase {
    std::size_t m;
    bool fabric;
    std::size_t nodes;
    std::size_t edges;
    const char* digest;
};

class PegasusReferenceTest : public ::testing::TestWithParam<PegasusCase> {};

TEST_P(PegasusReferenceTest, MatchesReferenceGraph) {
    const auto c = GetParam();
    const auto g = pegasus_graph(c.m, c.fabric);
    EXPECT_EQ(g.nodes().size(), c.nodes);
    EXPECT_EQ(g.edges().size(), c.edges);
    EXPECT_EQ(edge_digest(g), c.digest);
    if (c.fabric) {
        EXPECT_EQ(g.nodes().size(), (c.m - 1) * (24 * c.m - 8));
        EXPECT_EQ(g.nodes().size(), fabric_coordinate_count(c.m));
    } else {
        EXPECT_EQ(g.nodes().size(), 24 * c.m * (c.m - 1));
    }
}

INSTANTIATE_TEST_SUITE_P(Sizes, PegasusReferenceTest,
                         ::testing::Values(PegasusCase{2, true, 40, 164, "66146d1e30f6d905"},
                                           PegasusCase{2, false, 48, 168, "2e3e123774397698"},
                                           PegasusCase{3, true, 128, 704, "e3cca5eefdba72f2"},
                                           PegasusCase{3, false, 144, 720, "d832fb42bd947ac1"},
                                           PegasusCase{4, true, 264, 1604, "442116580f30f7d0"},
                                           PegasusCase{4, false, 288, 1632, "5de11888e5f1a0b9"},
                                           PegasusCase{16, true, 5640, 40484, "28d056c1bca0c57e"},
                                           PegasusCase{16, false, 5760, 40656, "e2104d312037e645"}));

TEST(PegasusTest, DegreeIsAtMostFifteen) {
    const auto g = pegasus_graph(6);
    std::size_t top = 0;
    for (Qubit q : g.nodes()) top = std::max(top, g.neighbors(q).size());
    EXPECT_EQ(top, 15u);
}

TEST(PegasusTest, CoordinatesRoundTrip) {
    for (std::size_t m : {2u, 5u, 16u}) {
        for (Qubit q = 0; q < 24 * m * (m - 1); q += 7) EXPECT_EQ(pegasus_linear(m, pegasus_coordinates(m, q)), q);
    }
}

TEST(PegasusTest, DefectsRemoveNodesAndIncidentEdges) {
    const auto clean = pegasus_graph(3);
    const Qubit q = clean.nodes()[10];
    const auto deg = clean.neighbors(q).size();
    const auto g = pegasus_graph(3, true, {q});
    EXPECT_EQ(g.nodes().size(), clean.nodes().size() - 1);
    EXPECT_EQ(g.edges().size(), clean.edges().size() - deg);
    EXPECT_FALSE(g.has_node(q));
    EXPECT_EQ(g.without_defects().nodes().size(), clean.nodes().size());
    EXPECT_THROW(pegasus_graph(3, true, {0}), InvalidInput);  // qubit 0 is cut from the fabric
    EXPECT_THROW(pegasus_graph(1), InvalidInput);
}

TEST(DefectListTest, ParsesIdsAndComments) {
    std::istringstream in("# defects\n12\n\n  40 # bad coupler\n12\n");
    EXPECT_EQ(parse_defect_list(in), (std::set<Qubit>{12, 40}));
    std::istringstream bad("12\nq7\n");
    try {
        parse_defect_list(bad);
        FAIL();
    } catch (const InvalidInput& e) {
        EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
    }
}

TEST(TilingTest, SingleNodePatternCoversEveryQubit) {
    const HardwareGraph g({1, 2, 3, 4, 5}, {{1, 2}, {2, 3}});
    const auto set = tile_disjoint_embeddings(g, PatternGraph{1, {}}, 0);
    EXPECT_EQ(set.size(), 5u);
    EXPECT_TRUE(validate_embeddings(g, PatternGraph{1, {}}, set).empty());
}

TEST(TilingTest, EdgeOnTriangleFitsOnce) {
    const HardwareGraph g({0, 1, 2}, {{0, 1}, {1, 2}, {0, 2}});
    const PatternGraph edge{2, {{0, 1}}};
    const auto set = tile_disjoint_embeddings(g, edge, 3);
    EXPECT_EQ(set.size(), 1u);
    EXPECT_TRUE(validate_embeddings(g, edge, set).empty());
}

TEST(TilingTest, PathOnAPathPacksPerfectly) {
    std::vector<Qubit> nodes;
    std::vector<Edge> edges;
    for (Qubit q = 0; q < 12; ++q) {
        nodes.push_back(q);
        if (q) edges.emplace_back(q - 1, q);
    }
    const HardwareGraph g(nodes, edges);
    const PatternGraph p{3, {{0, 1}, {1, 2}}};
    const auto set = tile_disjoint_embeddings(g, p, 1);
    EXPECT_GE(set.size(), 3u);
    EXPECT_LE(set.size(), 4u);
    EXPECT_TRUE(validate_embeddings(g, p, set).empty());
}

TEST(TilingTest, TrianglesOnSmallPegasusAreValid) {
    const auto g = pegasus_graph(2);
    const PatternGraph tri{3, {{0, 1}, {1, 2}, {0, 2}}};
    const auto set = tile_disjoint_embeddings(g, tri, 0);
    EXPECT_GT(set.size(), 0u);
    EXPECT_LE(set.size(), g.nodes().size() / 3);
    EXPECT_TRUE(validate_embeddings(g, tri, set).empty());
}

TEST(TilingTest, StudyInstancesTileValidly) {
    const auto g = pegasus_graph(4);
    for (const char* name : {"n6.json", "n7.json", "n8.json"}) {
        const auto p = pattern_of(name);
        const auto set = tile_disjoint_embeddings(g, p, 5);
        EXPECT_GT(set.size(), 0u) << name;
        EXPECT_TRUE(validate_embeddings(g, p, set).empty()) << name;
    }
}

TEST(TilingTest, DeterministicForASeed) {
    const auto g = pegasus_graph(3);
    const auto p = pattern_of("n6.json");
    EXPECT_EQ(tile_disjoint_embeddings(g, p, 9).embeddings, tile_disjoint_embeddings(g, p, 9).embeddings);
}

TEST(TilingTest, AddingDefectsNeverIncreasesTheCount) {
    const auto clean = pegasus_graph(4);
    const auto p = pattern_of("n6.json");
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 8; ++trial) {
        std::vector<Qubit> pool = clean.nodes();
        std::shuffle(pool.begin(), pool.end(), rng);
        std::set<Qubit> small(pool.begin(), pool.begin() + 5);
        std::set<Qubit> large(pool.begin(), pool.begin() + 25);
        const auto seed = rng();
        const auto n0 = tile_disjoint_embeddings(clean, p, seed).size();
        const auto n1 = tile_disjoint_embeddings(clean.with_defects(small), p, seed).size();
        const auto n2 = tile_disjoint_embeddings(clean.with_defects(large), p, seed).size();
        EXPECT_LE(n1, n0);
        EXPECT_LE(n2, n1);
    }
}

TEST(TilingTest, FillAroundDefectsOnlyAdds) {
    const auto clean = pegasus_graph(4);
    const auto p = pattern_of("n6.json");
    std::set<Qubit> defects;
    for (std::size_t i = 0; i < clean.nodes().size(); i += 17) defects.insert(clean.nodes()[i]);
    const auto g = clean.with_defects(defects);
    TilingOptions fill;
    fill.fill_around_defects = true;
    const auto plain = tile_disjoint_embeddings(g, p, 2);
    const auto filled = tile_disjoint_embeddings(g, p, 2, fill);
    EXPECT_GE(filled.size(), plain.size());
    EXPECT_TRUE(validate_embeddings(g, p, filled).empty());
    for (const auto& e : filled.embeddings) {
        for (Qubit q : e) EXPECT_FALSE(defects.contains(q));
    }
}

TEST(TilingTest, RejectsDisconnectedOrOversizedPatterns) {
    const HardwareGraph g({0, 1, 2}, {{0, 1}});
    EXPECT_THROW(tile_disjoint_embeddings(g, PatternGraph{2, {}}, 0), InvalidInput);
    EXPECT_THROW(tile_disjoint_embeddings(g, PatternGraph{4, {{0, 1}, {1, 2}, {2, 3}}}, 0), InvalidInput);
}

TEST(ValidatorTest, ReportsEachKindOfViolation) {
    const HardwareGraph g({0, 1, 2, 3, 4}, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
    const PatternGraph p{2, {{0, 1}}};
    using K = EmbeddingFinding::Kind;
    const auto kinds = [&](EmbeddingSet s) {
        std::vector<K> out;
        for (const auto& f : validate_embeddings(g, p, s)) out.push_back(f.kind);
        return out;
    };
    EXPECT_TRUE(kinds({{{0, 1}, {2, 3}}}).empty());
    EXPECT_EQ(kinds({{{0}}}), (std::vector<K>{K::Shape}));
    EXPECT_EQ(kinds({{{0, 9}}}), (std::vector<K>{K::UnknownQubit, K::EdgePreservation}));
    EXPECT_EQ(kinds({{{1, 1}}}), (std::vector<K>{K::Injectivity, K::EdgePreservation}));
    EXPECT_EQ(kinds({{{0, 1}, {1, 2}}}), (std::vector<K>{K::Disjointness}));
    EXPECT_EQ(kinds({{{0, 2}}}), (std::vector<K>{K::EdgePreservation}));
}

}  // namespace
}  // namespace susmap
