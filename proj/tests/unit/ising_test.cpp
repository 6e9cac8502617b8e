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
#include <vector>

#include "susmap/instance_io.hpp"
#include "susmap/ising.hpp"

namespace susmap {
namespace {

// Reference evaluator: spins as a plain int vector, energy summed straight
// from the coupler list.
double oracle_energy(const IsingProblem& p, const std::vector<int>& s) {
    double e = 0.0;
    for (const auto& [i, h] : p.linear()) e += h * s[i];
    for (const auto& [key, J] : p.quadratic()) e += J * s[key.first] * s[key.second];
    return e;
}

std::vector<int> spins_of(StateIndex k, std::size_t n) {
    std::vector<int> s(n);
    for (std::size_t j = 0; j < n; ++j) s[j] = (k >> j) & 1 ? -1 : 1;
    return s;
}

std::vector<Edge> random_edges(std::size_t n, double density, std::mt19937_64& rng) {
    std::bernoulli_distribution keep(density);
    std::vector<Edge> e;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (keep(rng)) e.emplace_back(i, j);
        }
    }
    return e;
}

IsingProblem load(const std::string& name) {
    return load_instance(std::string(SUSMAP_SOURCE_DIR) + "/instances/" + name);
}

StateIndex index_of(std::vector<int> spins) { return SpinState(std::move(spins)).index(); }

TEST(SpinStateTest, IndexConventionBitSetMeansMinusOne) {
    const auto s = SpinState::from_index(0b101, 4);
    EXPECT_EQ(s[0], -1);
    EXPECT_EQ(s[1], 1);
    EXPECT_EQ(s[2], -1);
    EXPECT_EQ(s[3], 1);
    EXPECT_EQ(s.index(), 0b101u);
    EXPECT_EQ(index_of({1, 1, 1}), 0u);
    EXPECT_EQ(index_of({-1, -1, -1}), 7u);
}

TEST(SpinStateTest, RoundTripsEveryIndex) {
    for (StateIndex k = 0; k < 256; ++k) EXPECT_EQ(SpinState::from_index(k, 8).index(), k);
}

TEST(SpinStateTest, RejectsBadInput) {
    EXPECT_THROW(SpinState({1, 0, -1}), InvalidInput);
    EXPECT_THROW(SpinState::from_index(8, 3), InvalidInput);
}

TEST(SpinStateTest, ComplementFlipsEverySpin) {
    for (StateIndex k = 0; k < 64; ++k) {
        const auto s = SpinState::from_index(k, 6);
        EXPECT_EQ(complement(s).index(), complement_index(k, 6));
        EXPECT_EQ(complement_index(complement_index(k, 6), 6), k);
    }
}

TEST(IsingProblemTest, ConstructorEnforcesInvariants) {
    EXPECT_THROW(IsingProblem(0, {}, {}), InvalidInput);
    EXPECT_THROW(IsingProblem(3, {{3, 1.0}}, {}), InvalidInput);
    EXPECT_THROW(IsingProblem(3, {}, {{{1, 1}, 1.0}}), InvalidInput);
    EXPECT_THROW(IsingProblem(3, {}, {{{2, 1}, 1.0}}), InvalidInput);
    EXPECT_THROW(IsingProblem(3, {}, {{{0, 5}, 1.0}}), InvalidInput);
    EXPECT_THROW(IsingProblem(3, {{0, std::nan("")}}, {}), InvalidInput);
}

TEST(IsingProblemTest, EnergyMatchesHandComputedValue) {
    // E = 0.5*s0 - s1 + 2 s0 s1 - s1 s2 at s = (+1, -1, -1): 0.5 + 1 - 2 - 1
    const IsingProblem p(3, {{0, 0.5}, {1, -1.0}}, {{{0, 1}, 2.0}, {{1, 2}, -1.0}});
    const auto s = SpinState({1, -1, -1});
    EXPECT_DOUBLE_EQ(energy(p, s), -1.5);
    EXPECT_DOUBLE_EQ(p.energy(s.index()), -1.5);
}

TEST(IsingProblemTest, EnergyAgreesWithReferenceOnRandomInstances) {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> gauss;
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 3 + trial % 8;
        IsingProblem::LinearMap h;
        IsingProblem::QuadraticMap J;
        for (std::size_t i = 0; i < n; ++i) h[i] = gauss(rng);
        for (const auto& e : random_edges(n, 0.5, rng)) J[e] = gauss(rng);
        const IsingProblem p(n, h, J);
        for (StateIndex k = 0; k < (StateIndex{1} << n); ++k) {
            EXPECT_NEAR(p.energy(k), oracle_energy(p, spins_of(k, n)), 1e-12);
        }
    }
}

TEST(GroundStateTest, MatchesExhaustiveReferenceOnSpinGlasses) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 3 + trial % 10;
        const auto edges = random_edges(n, 0.4, rng);
        const auto p = random_spin_glass(edges, rng(), n);
        double best = 1e300;
        std::vector<StateIndex> states;
        for (StateIndex k = 0; k < (StateIndex{1} << n); ++k) {
            const double e = oracle_energy(p, spins_of(k, n));
            if (e < best - 1e-9) {
                best = e;
                states.clear();
            }
            if (std::abs(e - best) <= 1e-9) states.push_back(k);
        }
        const auto gs = enumerate_ground_states(p);
        EXPECT_DOUBLE_EQ(gs.energy, best);
        EXPECT_EQ(gs.states, states);
    }
}

TEST(GroundStateTest, ZeroFieldSpectrumIsComplementSymmetric) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t n = 4 + trial % 5;
        const auto p = random_spin_glass(random_edges(n, 0.6, rng), rng(), n);
        for (StateIndex k = 0; k < (StateIndex{1} << n); ++k) {
            EXPECT_EQ(p.energy(k), p.energy(complement_index(k, n)));
        }
        for (StateIndex g : enumerate_ground_states(p).states) {
            const auto gs = enumerate_ground_states(p).states;
            EXPECT_TRUE(std::binary_search(gs.begin(), gs.end(), complement_index(g, n)));
        }
    }
}

TEST(GroundStateTest, RefusesLargeProblems) {
    std::vector<Edge> chain;
    for (std::size_t i = 0; i + 1 < 25; ++i) chain.emplace_back(i, i + 1);
    const auto p = random_spin_glass(chain, 1);
    EXPECT_THROW(enumerate_ground_states(p), CapabilityError);
}

// Ground states listed for the three test Isings of the study.
TEST(GroundStateTest, SixVariableInstance) {
    const auto gs = enumerate_ground_states(load("n6.json"));
    EXPECT_DOUBLE_EQ(gs.energy, -6.0);
    std::vector<StateIndex> expect{index_of({-1, -1, -1, 1, -1, 1}), index_of({-1, -1, 1, 1, -1, 1}),
                                   index_of({1, 1, -1, -1, 1, -1}), index_of({1, 1, 1, -1, 1, -1})};
    std::sort(expect.begin(), expect.end());
    EXPECT_EQ(gs.states, expect);
}

TEST(GroundStateTest, SevenVariableInstance) {
    const auto gs = enumerate_ground_states(load("n7.json"));
    EXPECT_DOUBLE_EQ(gs.energy, -7.0);
    std::vector<StateIndex> expect{index_of({-1, 1, 1, -1, -1, -1, 1}), index_of({1, -1, -1, 1, 1, 1, -1})};
    std::sort(expect.begin(), expect.end());
    EXPECT_EQ(gs.states, expect);
}

TEST(GroundStateTest, EightVariableInstance) {
    const auto gs = enumerate_ground_states(load("n8.json"));
    EXPECT_DOUBLE_EQ(gs.energy, -11.0);
    std::vector<StateIndex> expect{
        index_of({-1, 1, -1, 1, 1, -1, -1, 1}), index_of({-1, 1, -1, 1, 1, -1, 1, 1}),
        index_of({-1, 1, 1, -1, -1, -1, 1, 1}), index_of({-1, 1, 1, -1, 1, -1, 1, 1}),
        index_of({1, -1, -1, 1, -1, 1, -1, -1}), index_of({1, -1, -1, 1, 1, 1, -1, -1}),
        index_of({1, -1, 1, -1, -1, 1, -1, -1}), index_of({1, -1, 1, -1, -1, 1, 1, -1})};
    std::sort(expect.begin(), expect.end());
    EXPECT_EQ(gs.states, expect);
}

TEST(MetricTest, HammingProportion) {
    const SpinState a({1, 1, 1, 1});
    EXPECT_DOUBLE_EQ(hamming_distance_proportion(a, a), 0.0);
    EXPECT_DOUBLE_EQ(hamming_distance_proportion(a, SpinState({1, -1, 1, -1})), 0.5);
    EXPECT_DOUBLE_EQ(hamming_distance_proportion(a, complement(a)), 1.0);
    EXPECT_THROW(hamming_distance_proportion(a, SpinState({1, 1})), InvalidInput);
}

TEST(MetricTest, DeltaSingleFlipEqualsDegree) {
    // variable 0 of the six-variable instance couples to all five others
    const auto p = load("n6.json");
    ASSERT_EQ(p.degrees()[0], 5u);
    const auto gs = SpinState::from_index(enumerate_ground_states(p).states[0], 6);
    std::vector<int> flipped(gs.spins().begin(), gs.spins().end());
    flipped[0] = -flipped[0];
    EXPECT_NEAR(delta_metric(p, SpinState(flipped), gs), 5.0, 1e-12);
}

TEST(MetricTest, DeltaReflexiveIsMaxDegreePlusOne) {
    const auto p = load("n6.json");
    const auto gs = SpinState::from_index(enumerate_ground_states(p).states[0], 6);
    EXPECT_NEAR(delta_metric(p, gs, gs), static_cast<double>(p.max_degree() + 1), 1e-12);
    EXPECT_NEAR(delta_metric(p, gs, gs), 6.0, 1e-12);
}

TEST(MetricTest, DeltaDividesByFlipCountTwice) {
    // path 0-1-2-3: degrees 1,2,2,1; flipping 0 and 1 gives (1+2)/2/2
    const IsingProblem p(4, {}, {{{0, 1}, 1.0}, {{1, 2}, 1.0}, {{2, 3}, 1.0}});
    const SpinState gs({1, 1, 1, 1});
    EXPECT_NEAR(delta_metric(p, SpinState({-1, -1, 1, 1}), gs), 0.75, 1e-12);
    EXPECT_NEAR(delta_metric(p, complement(gs), gs), 6.0 / 4.0 / 4.0, 1e-12);
}

TEST(EncodingTest, ComplementEncodingMakesTargetTheLinearMinimum) {
    const SpinState t({1, -1, -1, 1, -1});
    const IsingProblem p(5, complement_encoding(t), {});
    const auto gs = enumerate_ground_states(p);
    ASSERT_EQ(gs.states.size(), 1u);
    EXPECT_EQ(gs.states[0], t.index());
    EXPECT_DOUBLE_EQ(gs.energy, -5.0);
}

TEST(SpinGlassTest, SeedDeterminesCouplers) {
    const std::vector<Edge> e{{0, 1}, {1, 2}, {0, 2}, {2, 3}};
    const auto a = random_spin_glass(e, 42);
    const auto b = random_spin_glass(e, 42);
    EXPECT_EQ(a.quadratic(), b.quadratic());
    for (const auto& [k, J] : a.quadratic()) EXPECT_EQ(std::abs(J), 1.0);
    EXPECT_THROW(random_spin_glass(std::vector<Edge>{{0, 1}, {1, 0}}, 1), InvalidInput);
}

}  // namespace
}  // namespace susmap
