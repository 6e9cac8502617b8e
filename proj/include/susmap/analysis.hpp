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

#ifndef SUSMAP_ANALYSIS_HPP
#define SUSMAP_ANALYSIS_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "susmap/error.hpp"
#include "susmap/ising.hpp"
#include "susmap/simulator.hpp"

namespace susmap {

/// Ordered h-gain plateau strengths of a sweep.
class HGrid {
public:
    /// 0.0, 0.1, ..., 3.0
    HGrid() : HGrid(range(0.0, 3.0, 0.1)) {}

    explicit HGrid(std::vector<double> values) : values_(std::move(values)) {
        if (values_.empty()) throw InvalidInput("h grid is empty");
        for (std::size_t i = 0; i < values_.size(); ++i) {
            if (!std::isfinite(values_[i])) throw InvalidInput("h grid value is not finite");
            if (i > 0 && !(values_[i] > values_[i - 1])) throw InvalidInput("h grid must be strictly increasing");
        }
    }

    /// start, start+step, ... up to stop inclusive; values are start + j*step
    /// rounded to 12 decimals so 0.1-steps print cleanly.
    static std::vector<double> range(double start, double stop, double step) {
        if (!(step > 0.0)) throw InvalidInput("h grid step must be positive");
        std::vector<double> v;
        const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
        for (std::size_t j = 0; j < count; ++j) {
            v.push_back(std::round((start + static_cast<double>(j) * step) * 1e12) / 1e12);
        }
        return v;
    }

    const std::vector<double>& values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }
    double operator[](std::size_t j) const { return values_[j]; }

private:
    std::vector<double> values_;
};

struct ResponseCurve {
    StateIndex initial_state = 0;
    StateIndex target_gs = 0;
    std::vector<double> p_gs;
};

struct SusceptibilityRecord {
    StateIndex initial_state = 0;
    StateIndex target_gs = 0;
    double chi = 0.0;
    double delta = 0.0;
    double energy = 0.0;
    double hamming = 0.0;
};

// ---------------------------------------------------------------------------

/// Fraction of reads that landed in `gs`.
inline double pgs(const SampleSet& samples, StateIndex gs) {
    if (samples.total_reads == 0) throw InvalidInput("pgs: empty sample set");
    return static_cast<double>(samples.count(gs)) / static_cast<double>(samples.total_reads);
}

/// Probability mass at `gs` of an exact distribution.
inline double pgs(const Distribution& dist, StateIndex gs) {
    if (dist.empty()) throw InvalidInput("pgs: empty distribution");
    if (gs >= dist.size()) throw InvalidInput("pgs: ground state index out of range");
    return dist[gs];
}

/// Per-ground-state share of all ground-state hits.
inline std::map<StateIndex, double> gs_distribution(const SampleSet& samples, const GroundStateSet& gs_set) {
    std::uint64_t hits = 0;
    for (StateIndex g : gs_set.states) hits += samples.count(g);
    if (hits == 0) throw UndefinedResult("gs_distribution: no ground-state samples");
    std::map<StateIndex, double> out;
    for (StateIndex g : gs_set.states) {
        out[g] = static_cast<double>(samples.count(g)) / static_cast<double>(hits);
    }
    return out;
}

inline std::map<StateIndex, double> gs_distribution(const Distribution& dist, const GroundStateSet& gs_set) {
    double hits = 0.0;
    for (StateIndex g : gs_set.states) hits += pgs(dist, g);
    if (!(hits > 0.0)) throw UndefinedResult("gs_distribution: no ground-state probability mass");
    std::map<StateIndex, double> out;
    for (StateIndex g : gs_set.states) out[g] = dist[g] / hits;
    return out;
}

/// Susceptibility: sum of the curve divided by (length - 1). For the
/// 31-point grid that is the literal sum over j = 0..30 divided by 30, so an
/// all-ones curve scores 31/30.
inline double chi(std::span<const double> p_gs) {
    const double divisor = p_gs.size() > 1 ? static_cast<double>(p_gs.size() - 1) : 1.0;
    double total = 0.0;
    for (double p : p_gs) total += p;
    return total / divisor;
}

inline double chi(const ResponseCurve& curve) { return chi(std::span<const double>(curve.p_gs)); }

inline void require_ground_state(const IsingProblem& problem, StateIndex target) {
    const auto gs = enumerate_ground_states(problem);
    if (std::find(gs.states.begin(), gs.states.end(), target) == gs.states.end()) {
        throw InvalidInput("target state " + std::to_string(target) + " is not a ground state");
    }
}

struct ResponseSweep {
    ResponseCurve curve;
    std::vector<RunResult> per_h;  // ascending h, aligned with the grid
};

/// One (initial -> target) mapping across the h grid with h-gain state
/// encoding. Exact mode records probabilities; sampling mode records the
/// proportion of reads.
inline ResponseSweep sweep_response_curve(const IsingProblem& problem, const SpinState& initial,
                                          const SpinState& target, const HGrid& grid, const AnnealPresets& presets,
                                          const AnnealEnvelope& envelope, const BackendConfig& cfg,
                                          bool exact = true) {
    require_same_length(initial.size(), problem.num_variables(), "sweep_response_curve initial");
    require_same_length(target.size(), problem.num_variables(), "sweep_response_curve target");
    require_ground_state(problem, target.index());
    ResponseSweep out;
    out.curve.initial_state = initial.index();
    out.curve.target_gs = target.index();
    for (std::size_t j = 0; j < grid.size(); ++j) {
        BackendConfig c = cfg;
        c.seed = mix_seed(mix_seed(cfg.seed, target.index()), (initial.index() << 16) ^ j);
        auto run = reverse_anneal_run(problem, initial, target, grid[j], presets, envelope, c, exact);
        out.curve.p_gs.push_back(exact && run.distribution ? pgs(*run.distribution, target.index())
                                                           : pgs(run.samples, target.index()));
        out.per_h.push_back(std::move(run));
    }
    return out;
}

inline SusceptibilityRecord make_record(const IsingProblem& problem, const ResponseCurve& curve) {
    const std::size_t n = problem.num_variables();
    const auto init = SpinState::from_index(curve.initial_state, n);
    const auto gs = SpinState::from_index(curve.target_gs, n);
    return {curve.initial_state, curve.target_gs, chi(curve), delta_metric(problem, init, gs),
            energy(problem, init), hamming_distance_proportion(init, gs)};
}

struct ChiAverage {
    double mean = 0.0;
    std::size_t count = 0;
    bool complete = false;  // every one of the 2^n initial states present
};

inline std::map<StateIndex, ChiAverage> average_chi_per_gs(std::span<const SusceptibilityRecord> records,
                                                           std::size_t num_variables) {
    std::map<StateIndex, std::vector<StateIndex>> seen;
    std::map<StateIndex, ChiAverage> out;
    for (const auto& r : records) {
        auto& a = out[r.target_gs];
        a.mean += r.chi;
        a.count += 1;
        seen[r.target_gs].push_back(r.initial_state);
    }
    const std::size_t expected = std::size_t{1} << num_variables;
    for (auto& [gs, a] : out) {
        a.mean /= static_cast<double>(a.count);
        auto& v = seen[gs];
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
        a.complete = v.size() == expected;
    }
    return out;
}

/// Sample Pearson correlation coefficient.
inline double pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw InvalidInput("pearson: length mismatch");
    if (x.size() < 2) throw InvalidInput("pearson: need at least 2 points");
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) throw UndefinedResult("pearson: zero variance");
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

// ---------------------------------------------------------------------------
// Spectral clustering

struct ClusteringOptions {
    std::size_t k = 4;
    double gamma = 1.0;       // RBF affinity bandwidth
    std::size_t n_init = 10;  // k-means restarts
    std::size_t max_iter = 300;
    std::uint64_t seed = 0;
};

struct ClusterAssignment {
    std::vector<int> labels;  // aligned with the input vectors, values in [0, k)
    std::size_t k = 0;
    std::uint64_t seed = 0;
    double inertia = 0.0;
};

namespace detail {

struct KMeansResult {
    std::vector<int> labels;
    double inertia = std::numeric_limits<double>::infinity();
};

inline KMeansResult kmeans_once(const Eigen::MatrixXd& x, std::size_t k, std::size_t max_iter, std::mt19937_64& rng) {
    const Eigen::Index m = x.rows();
    const Eigen::Index kk = static_cast<Eigen::Index>(k);
    Eigen::MatrixXd centers(kk, x.cols());

    // k-means++ seeding
    std::uniform_int_distribution<Eigen::Index> first(0, m - 1);
    centers.row(0) = x.row(first(rng));
    Eigen::VectorXd d2(m);
    for (Eigen::Index i = 0; i < m; ++i) d2[i] = (x.row(i) - centers.row(0)).squaredNorm();
    for (Eigen::Index c = 1; c < kk; ++c) {
        const double total = d2.sum();
        Eigen::Index pick = 0;
        if (total > 0.0) {
            double u = std::uniform_real_distribution<double>(0.0, total)(rng);
            for (pick = 0; pick < m - 1; ++pick) {
                u -= d2[pick];
                if (u < 0.0) break;
            }
        } else {
            pick = first(rng);
        }
        centers.row(c) = x.row(pick);
        for (Eigen::Index i = 0; i < m; ++i) d2[i] = std::min(d2[i], (x.row(i) - centers.row(c)).squaredNorm());
    }

    KMeansResult res;
    res.labels.assign(static_cast<std::size_t>(m), -1);
    for (std::size_t iter = 0; iter < max_iter; ++iter) {
        bool changed = false;
        double inertia = 0.0;
        for (Eigen::Index i = 0; i < m; ++i) {
            int best = 0;
            double bd = std::numeric_limits<double>::infinity();
            for (Eigen::Index c = 0; c < kk; ++c) {
                const double d = (x.row(i) - centers.row(c)).squaredNorm();
                if (d < bd) {
                    bd = d;
                    best = static_cast<int>(c);
                }
            }
            inertia += bd;
            if (res.labels[static_cast<std::size_t>(i)] != best) {
                res.labels[static_cast<std::size_t>(i)] = best;
                changed = true;
            }
        }
        res.inertia = inertia;
        if (!changed) break;
        Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(kk, x.cols());
        std::vector<std::size_t> cnt(k, 0);
        for (Eigen::Index i = 0; i < m; ++i) {
            const auto l = res.labels[static_cast<std::size_t>(i)];
            sum.row(l) += x.row(i);
            ++cnt[static_cast<std::size_t>(l)];
        }
        for (Eigen::Index c = 0; c < kk; ++c) {
            // empty clusters keep their previous center
            if (cnt[static_cast<std::size_t>(c)] > 0) centers.row(c) = sum.row(c) / static_cast<double>(cnt[c]);
        }
    }
    return res;
}

/// Renumbers labels so cluster ids ascend with their smallest member index.
inline std::vector<int> canonical_labels(const std::vector<int>& labels) {
    std::map<int, int> remap;
    std::vector<int> out(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
        auto it = remap.find(labels[i]);
        if (it == remap.end()) it = remap.emplace(labels[i], static_cast<int>(remap.size())).first;
        out[i] = it->second;
    }
    return out;
}

}  // namespace detail

/// Normalized spectral clustering: RBF affinity, symmetric normalized
/// Laplacian, row-normalized embedding on the k smallest eigenvectors, then
/// seeded k-means++ with `n_init` restarts (lowest inertia wins, earliest
/// restart on ties).
inline ClusterAssignment spectral_cluster(const std::vector<std::vector<double>>& vectors,
                                          const ClusteringOptions& opt = {}) {
    const std::size_t m = vectors.size();
    if (opt.k == 0) throw InvalidInput("spectral_cluster: k must be positive");
    if (m < opt.k) {
        throw InvalidInput("spectral_cluster: " + std::to_string(m) + " vectors for k=" + std::to_string(opt.k));
    }
    const std::size_t dim = vectors.front().size();
    for (const auto& v : vectors) {
        if (v.size() != dim) throw InvalidInput("spectral_cluster: vectors differ in length");
    }
    ClusterAssignment out;
    out.k = opt.k;
    out.seed = opt.seed;
    if (opt.k == 1) {
        out.labels.assign(m, 0);
        return out;
    }

    const auto mi = static_cast<Eigen::Index>(m);
    Eigen::MatrixXd w(mi, mi);
    for (std::size_t u = 0; u < m; ++u) {
        for (std::size_t v = u; v < m; ++v) {
            double d2 = 0.0;
            for (std::size_t c = 0; c < dim; ++c) {
                const double d = vectors[u][c] - vectors[v][c];
                d2 += d * d;
            }
            const double a = std::exp(-opt.gamma * d2);
            w(static_cast<Eigen::Index>(u), static_cast<Eigen::Index>(v)) = a;
            w(static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(u)) = a;
        }
    }
    const Eigen::VectorXd inv_sqrt_deg = w.rowwise().sum().cwiseSqrt().cwiseInverse();
    const Eigen::MatrixXd lap =
        Eigen::MatrixXd::Identity(mi, mi) - inv_sqrt_deg.asDiagonal() * w * inv_sqrt_deg.asDiagonal();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(lap);
    if (eig.info() != Eigen::Success) throw UndefinedResult("spectral_cluster: eigendecomposition failed");
    Eigen::MatrixXd emb = eig.eigenvectors().leftCols(static_cast<Eigen::Index>(opt.k));
    for (Eigen::Index r = 0; r < mi; ++r) {
        const double nrm = emb.row(r).norm();
        if (nrm > 0.0) emb.row(r) /= nrm;
    }

    std::mt19937_64 rng(opt.seed);
    detail::KMeansResult best;
    for (std::size_t r = 0; r < std::max<std::size_t>(1, opt.n_init); ++r) {
        auto res = detail::kmeans_once(emb, opt.k, opt.max_iter, rng);
        if (res.inertia < best.inertia) best = std::move(res);
    }
    out.labels = detail::canonical_labels(best.labels);
    out.inertia = best.inertia;
    return out;
}

}  // namespace susmap

#endif  // SUSMAP_ANALYSIS_HPP
