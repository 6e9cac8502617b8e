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

#ifndef SUSMAP_ISING_HPP
#define SUSMAP_ISING_HPP

/*
 * Ising problem representation and classical state utilities.
 *
 *   E(s) = sum_i h_i s_i + sum_{i<j} J_ij s_i s_j,   s_i in {-1,+1}
 *
 * Classical states are addressed by a canonical index: bit j of the index is
 * 0 when s_j = +1 and 1 when s_j = -1. Every module and every file format in
 * the project uses this convention, so the simulator basis ordering, CSV
 * columns and the index reported by enumerate_ground_states all agree.
 */

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "susmap/error.hpp"

namespace susmap {

using StateIndex = std::uint64_t;

/// Largest n for which the canonical index fits our loops comfortably.
inline constexpr std::size_t kMaxIndexBits = 62;

/// Default cutoff for exhaustive enumeration.
inline constexpr std::size_t kDefaultExhaustiveLimit = 24;

/// A classical spin configuration.
class SpinState {
public:
    SpinState() = default;

    explicit SpinState(std::vector<int> spins) {
        spins_.reserve(spins.size());
        for (std::size_t i = 0; i < spins.size(); ++i) {
            if (spins[i] != 1 && spins[i] != -1) {
                throw InvalidInput("spin " + std::to_string(i) + " is " + std::to_string(spins[i]) +
                                   ", expected +1 or -1");
            }
            spins_.push_back(static_cast<std::int8_t>(spins[i]));
        }
    }

    static SpinState from_index(StateIndex index, std::size_t n) {
        if (n > kMaxIndexBits) throw CapabilityError("state length exceeds index width");
        if (n < 64 && (index >> n) != 0) {
            throw InvalidInput("state index " + std::to_string(index) + " out of range for n=" +
                               std::to_string(n));
        }
        SpinState s;
        s.spins_.resize(n);
        for (std::size_t j = 0; j < n; ++j) s.spins_[j] = ((index >> j) & 1U) ? -1 : 1;
        return s;
    }

    StateIndex index() const {
        if (spins_.size() > kMaxIndexBits) throw CapabilityError("state length exceeds index width");
        StateIndex k = 0;
        for (std::size_t j = 0; j < spins_.size(); ++j) {
            if (spins_[j] < 0) k |= StateIndex{1} << j;
        }
        return k;
    }

    std::size_t size() const noexcept { return spins_.size(); }
    int operator[](std::size_t i) const { return spins_[i]; }
    std::span<const std::int8_t> spins() const noexcept { return spins_; }

    friend bool operator==(const SpinState&, const SpinState&) = default;

private:
    std::vector<std::int8_t> spins_;
};

inline SpinState complement(const SpinState& s) {
    std::vector<int> flipped(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) flipped[i] = -s[i];
    return SpinState(std::move(flipped));
}

inline StateIndex complement_index(StateIndex k, std::size_t n) {
    const StateIndex mask = (n >= 64) ? ~StateIndex{0} : ((StateIndex{1} << n) - 1);
    return (~k) & mask;
}

/// Spin of variable j in the state with canonical index k.
inline int spin_of(StateIndex k, std::size_t j) { return ((k >> j) & 1U) ? -1 : 1; }

struct Coupler {
    std::size_t i;
    std::size_t j;
    double value;
};

/// An Ising problem: n variables, sparse linear biases and sparse couplers.
/// Immutable after construction; the constructor enforces every invariant.
class IsingProblem {
public:
    using LinearMap = std::map<std::size_t, double>;
    using QuadraticMap = std::map<std::pair<std::size_t, std::size_t>, double>;

    IsingProblem() = default;

    IsingProblem(std::size_t num_variables, LinearMap linear, QuadraticMap quadratic,
                 std::string name = {})
        : n_(num_variables), linear_(std::move(linear)), quadratic_(std::move(quadratic)),
          name_(std::move(name)) {
        if (n_ == 0) throw InvalidInput("num_variables must be positive");
        for (const auto& [i, h] : linear_) {
            if (i >= n_) throw InvalidInput("linear index " + std::to_string(i) + " out of range");
            if (!std::isfinite(h)) throw InvalidInput("linear bias on " + std::to_string(i) + " is not finite");
        }
        for (const auto& [key, J] : quadratic_) {
            const auto [i, j] = key;
            if (i == j) throw InvalidInput("self-coupler on variable " + std::to_string(i));
            if (i > j) {
                throw InvalidInput("coupler (" + std::to_string(i) + "," + std::to_string(j) +
                                   ") must be given with i < j");
            }
            if (j >= n_) {
                throw InvalidInput("coupler (" + std::to_string(i) + "," + std::to_string(j) +
                                   ") out of range");
            }
            if (!std::isfinite(J)) {
                throw InvalidInput("coupler (" + std::to_string(i) + "," + std::to_string(j) +
                                   ") is not finite");
            }
        }
        couplers_.reserve(quadratic_.size());
        for (const auto& [key, J] : quadratic_) couplers_.push_back({key.first, key.second, J});
        dense_linear_.assign(n_, 0.0);
        for (const auto& [i, h] : linear_) dense_linear_[i] = h;
    }

    std::size_t num_variables() const noexcept { return n_; }
    const LinearMap& linear() const noexcept { return linear_; }
    const QuadraticMap& quadratic() const noexcept { return quadratic_; }
    const std::string& name() const noexcept { return name_; }
    std::span<const Coupler> couplers() const noexcept { return couplers_; }

    /// Linear bias of variable i (0 when absent).
    double bias(std::size_t i) const { return dense_linear_.at(i); }

    bool has_linear_terms() const {
        return std::any_of(linear_.begin(), linear_.end(), [](const auto& kv) { return kv.second != 0.0; });
    }

    /// Degree in the coupler graph. Linear terms contribute no edges.
    std::vector<std::size_t> degrees() const {
        std::vector<std::size_t> deg(n_, 0);
        for (const auto& c : couplers_) {
            ++deg[c.i];
            ++deg[c.j];
        }
        return deg;
    }

    std::size_t max_degree() const {
        const auto deg = degrees();
        return deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
    }

    IsingProblem with_linear(LinearMap linear) const {
        return IsingProblem(n_, std::move(linear), quadratic_, name_);
    }

    /// Sum of |h_i| + |J_ij|; the natural scale for energy comparisons.
    double coefficient_scale() const {
        double s = 0.0;
        for (const auto& [i, h] : linear_) s += std::abs(h);
        for (const auto& c : couplers_) s += std::abs(c.value);
        return s;
    }

    /// Linear part of the energy at canonical index k.
    double linear_energy(StateIndex k) const {
        double e = 0.0;
        for (const auto& [i, h] : linear_) e += h * spin_of(k, i);
        return e;
    }

    /// Quadratic part of the energy at canonical index k.
    double quadratic_energy(StateIndex k) const {
        double e = 0.0;
        for (const auto& c : couplers_) {
            // s_i s_j = +1 when the two bits agree
            e += (((k >> c.i) ^ (k >> c.j)) & 1U) ? -c.value : c.value;
        }
        return e;
    }

    double energy(StateIndex k) const { return linear_energy(k) + quadratic_energy(k); }

private:
    std::size_t n_ = 0;
    LinearMap linear_;
    QuadraticMap quadratic_;
    std::string name_;
    std::vector<Coupler> couplers_;
    std::vector<double> dense_linear_;
};

inline void require_same_length(std::size_t a, std::size_t b, const char* what) {
    if (a != b) {
        throw InvalidInput(std::string(what) + ": length mismatch (" + std::to_string(a) + " vs " +
                           std::to_string(b) + ")");
    }
}

inline double energy(const IsingProblem& problem, const SpinState& state) {
    require_same_length(state.size(), problem.num_variables(), "energy");
    double e = 0.0;
    for (const auto& [i, h] : problem.linear()) e += h * state[i];
    for (const auto& c : problem.couplers()) e += c.value * state[c.i] * state[c.j];
    return e;
}

struct GroundStateSet {
    double energy = 0.0;
    std::vector<StateIndex> states;  // ascending canonical index
};

/// Energy tolerance used to decide degeneracy.
inline double degeneracy_tolerance(const IsingProblem& problem) {
    return 1e-9 * std::max(1.0, problem.coefficient_scale());
}

/// All 2^n energies in canonical index order.
inline std::vector<double> energy_table(const IsingProblem& problem,
                                        std::size_t limit = kDefaultExhaustiveLimit) {
    const std::size_t n = problem.num_variables();
    if (n > limit) {
        throw CapabilityError("n=" + std::to_string(n) + " exceeds the exhaustive limit of " +
                              std::to_string(limit) + "; use a sampling backend instead");
    }
    std::vector<double> table(std::size_t{1} << n);
    for (StateIndex k = 0; k < table.size(); ++k) table[k] = problem.energy(k);
    return table;
}

inline GroundStateSet enumerate_ground_states(const IsingProblem& problem,
                                              std::size_t limit = kDefaultExhaustiveLimit) {
    const auto table = energy_table(problem, limit);
    const double tol = degeneracy_tolerance(problem);
    const double best = *std::min_element(table.begin(), table.end());
    GroundStateSet out;
    out.energy = best;
    for (StateIndex k = 0; k < table.size(); ++k) {
        if (table[k] <= best + tol) out.states.push_back(k);
    }
    return out;
}

inline double hamming_distance_proportion(const SpinState& a, const SpinState& b) {
    require_same_length(a.size(), b.size(), "hamming_distance_proportion");
    if (a.size() == 0) return 0.0;
    std::size_t diff = 0;
    for (std::size_t i = 0; i < a.size(); ++i) diff += (a[i] != b[i]);
    return static_cast<double>(diff) / static_cast<double>(a.size());
}

/// Average coupler-graph degree of the variables where `initial` differs from
/// `gs`, divided once more by the number of such variables. The reflexive case
/// (no differing variable) returns max_degree + 1.
inline double delta_metric(const IsingProblem& problem, const SpinState& initial, const SpinState& gs) {
    require_same_length(initial.size(), problem.num_variables(), "delta_metric");
    require_same_length(gs.size(), problem.num_variables(), "delta_metric");
    const auto deg = problem.degrees();
    std::size_t count = 0;
    double total = 0.0;
    for (std::size_t v = 0; v < initial.size(); ++v) {
        if (initial[v] != gs[v]) {
            ++count;
            total += static_cast<double>(deg[v]);
        }
    }
    if (count == 0) return static_cast<double>(problem.max_degree() + 1);
    const double len = static_cast<double>(count);
    return (total / len) * (1.0 / len);
}

using Edge = std::pair<std::size_t, std::size_t>;

/// J_ij drawn uniformly from {-1,+1} on every edge, no linear terms.
/// `num_variables` of 0 means "one more than the largest endpoint".
inline IsingProblem random_spin_glass(std::span<const Edge> edges, std::uint64_t seed,
                                      std::size_t num_variables = 0, std::string name = {}) {
    std::size_t n = num_variables;
    for (const auto& [u, v] : edges) n = std::max(n, std::max(u, v) + 1);
    if (n == 0) n = 1;
    std::mt19937_64 rng(seed);
    IsingProblem::QuadraticMap quadratic;
    for (const auto& [u, v] : edges) {
        if (u == v) throw InvalidInput("self-loop on node " + std::to_string(u));
        const auto key = std::minmax(u, v);
        const double J = (rng() >> 63) ? 1.0 : -1.0;
        if (!quadratic.emplace(std::pair{key.first, key.second}, J).second) {
            throw InvalidInput("duplicate edge (" + std::to_string(key.first) + "," +
                               std::to_string(key.second) + ")");
        }
    }
    return IsingProblem(n, {}, std::move(quadratic), std::move(name));
}

/// Linear map that makes `target` the unique minimiser of the linear part:
/// h_i = -s_i(target), so h_i s_i = -1 exactly at the target.
inline IsingProblem::LinearMap complement_encoding(const SpinState& target) {
    IsingProblem::LinearMap linear;
    for (std::size_t i = 0; i < target.size(); ++i) linear[i] = -static_cast<double>(target[i]);
    return linear;
}

}  // namespace susmap

#endif  // SUSMAP_ISING_HPP
