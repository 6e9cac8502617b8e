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

#ifndef SUSMAP_SIMULATOR_HPP
#define SUSMAP_SIMULATOR_HPP

/*
 * Closed-system evolution under the transverse-field Ising Hamiltonian
 *
 *   H(t) = -(A/2) sum_i X_i + (B/2) ( g(t) sum_i h_i Z_i + sum_{i<j} J_ij Z_i Z_j )
 *
 * with A = A(s(t)), B = B(s(t)) in GHz and t in microseconds, so the
 * propagator phase per step is 2*pi*1e3 * H * dt.
 *
 * Time is split at every schedule anchor. Inside a segment each step is
 * either the midpoint rule or a fourth-order commutator-free Magnus step
 * (two exponentials at Gauss-node combinations of H). Every exponential is
 * exact through the eigendecomposition of the real symmetric H, which keeps
 * the state unitary to rounding. Segments where nothing changes, or where A = 0 and
 * only g varies linearly, are taken in one exact step.
 *
 * The Monte Carlo backend replaces each qubit by a planar rotor angle
 * theta_i in [0, pi] (cos theta_i plays the role of the spin) evolved with
 * Metropolis updates on
 *
 *   E(theta) = -(A/2) sum sin theta_i + (B/2)(g sum h_i cos theta_i + sum J_ij cos theta_i cos theta_j).
 */

#include <Eigen/Dense>
#ifdef SUSMAP_WITH_LAPACKE
#include <lapacke.h>
#endif

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "susmap/error.hpp"
#include "susmap/ising.hpp"
#include "susmap/schedule.hpp"

namespace susmap {

/// GHz * us -> radians.
inline constexpr double kPhasePerGHzMicrosecond = 2.0 * std::numbers::pi * 1e3;

/// Largest n for dense state-vector evolution.
inline constexpr std::size_t kDefaultDenseLimit = 14;

/// Tolerance on the Euclidean norm before an evolution is declared broken.
inline constexpr double kNormFailureTolerance = 1e-6;

using Distribution = std::vector<double>;

enum class BackendKind { Schrodinger, Svmc };

/// Step rule for the Schrodinger backend. Midpoint freezes H at the step
/// midpoint (second order); Cf4 is the fourth-order commutator-free Magnus
/// rule, two frozen-H exponentials per step at the Gauss points.
enum class Integrator { Midpoint, Cf4 };

inline std::string to_string(Integrator k) { return k == Integrator::Midpoint ? "midpoint" : "cf4"; }

inline Integrator parse_integrator(const std::string& s) {
    if (s == "midpoint") return Integrator::Midpoint;
    if (s == "cf4") return Integrator::Cf4;
    throw InvalidInput("unknown integrator '" + s + "' (expected midpoint or cf4)");
}

inline std::string to_string(BackendKind k) { return k == BackendKind::Schrodinger ? "schrodinger" : "svmc"; }

inline BackendKind parse_backend_kind(const std::string& s) {
    if (s == "schrodinger") return BackendKind::Schrodinger;
    if (s == "svmc") return BackendKind::Svmc;
    throw InvalidInput("unknown backend '" + s + "' (expected schrodinger or svmc)");
}

struct BackendConfig {
    BackendKind kind = BackendKind::Schrodinger;
    Integrator integrator = Integrator::Cf4;
    double dt = 2e-4;                     // physical microseconds per step
    double convergence_tolerance = 0.0;   // total variation; 0 disables step doubling
    std::size_t max_refinements = 6;
    std::size_t sweeps = 1000;            // SVMC sweeps per read
    double temperature = 0.05;            // SVMC, GHz
    std::uint64_t seed = 0;
    std::size_t dense_limit = kDefaultDenseLimit;

    void validate() const {
        if (!(dt > 0.0)) throw InvalidInput("backend.dt must be positive");
        if (convergence_tolerance < 0.0) throw InvalidInput("backend.convergence_tolerance must be >= 0");
        if (kind == BackendKind::Svmc && !(temperature > 0.0)) {
            throw InvalidInput("backend.temperature must be positive");
        }
    }
};

struct SampleSet {
    std::map<StateIndex, std::uint64_t> counts;
    std::uint64_t total_reads = 0;
    std::string provenance;

    std::uint64_t count(StateIndex k) const {
        const auto it = counts.find(k);
        return it == counts.end() ? 0 : it->second;
    }
};

/// Diagonal pieces of the Hamiltonian for one problem, in basis order.
class HamiltonianTerms {
public:
    explicit HamiltonianTerms(const IsingProblem& problem, std::size_t dense_limit = kDefaultDenseLimit)
        : n_(problem.num_variables()) {
        if (n_ > dense_limit) {
            throw CapabilityError("n=" + std::to_string(n_) + " exceeds the dense simulator limit of " +
                                  std::to_string(dense_limit));
        }
        const std::size_t dim = std::size_t{1} << n_;
        linear_.resize(static_cast<Eigen::Index>(dim));
        quadratic_.resize(static_cast<Eigen::Index>(dim));
        for (StateIndex k = 0; k < dim; ++k) {
            linear_[static_cast<Eigen::Index>(k)] = problem.linear_energy(k);
            quadratic_[static_cast<Eigen::Index>(k)] = problem.quadratic_energy(k);
        }
    }

    std::size_t num_variables() const { return n_; }
    Eigen::Index dimension() const { return linear_.size(); }
    const Eigen::VectorXd& linear_diagonal() const { return linear_; }
    const Eigen::VectorXd& quadratic_diagonal() const { return quadratic_; }

    /// Diagonal of (B/2)(g * linear + quadratic).
    Eigen::VectorXd diagonal(double b, double g) const { return (0.5 * b) * (g * linear_ + quadratic_); }

    /// Dense H for the given schedule values.
    Eigen::MatrixXd matrix(double a, double b, double g) const {
        const Eigen::Index dim = dimension();
        Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
        h.diagonal() = diagonal(b, g);
        if (a != 0.0) {
            const double off = -0.5 * a;
            for (Eigen::Index k = 0; k < dim; ++k) {
                for (std::size_t j = 0; j < n_; ++j) {
                    h(k, k ^ (Eigen::Index{1} << j)) = off;
                }
            }
        }
        return h;
    }

private:
    std::size_t n_;
    Eigen::VectorXd linear_;
    Eigen::VectorXd quadratic_;
};

inline Eigen::MatrixXd build_hamiltonian(const IsingProblem& problem, double a, double b, double g,
                                         std::size_t dense_limit = kDefaultDenseLimit) {
    return HamiltonianTerms(problem, dense_limit).matrix(a, b, g);
}

struct EvolutionTrace {
    std::size_t steps = 0;
    std::size_t refinements = 0;
    double max_norm_drift = 0.0;  // max over steps and columns of | ||psi|| - 1 |
    double final_dt = 0.0;
    double convergence_tv = 0.0;  // last step-doubling difference, when checked
};

namespace detail {

/// Eigenpairs of a real symmetric matrix. Uses LAPACK's divide-and-conquer
/// driver when built with SUSMAP_WITH_LAPACKE, Eigen's solver otherwise.
class SymmetricEigen {
public:
    void compute(const Eigen::MatrixXd& h) {
#ifdef SUSMAP_WITH_LAPACKE
        vectors_ = h;
        values_.resize(h.rows());
        const auto n = static_cast<lapack_int>(h.rows());
        if (LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'L', n, vectors_.data(), n, values_.data()) != 0) {
            throw IntegrationError("eigendecomposition failed");
        }
#else
        eig_.compute(h);
        if (eig_.info() != Eigen::Success) throw IntegrationError("eigendecomposition failed");
        vectors_ = eig_.eigenvectors();
        values_ = eig_.eigenvalues();
#endif
    }
    const Eigen::MatrixXd& eigenvectors() const { return vectors_; }
    const Eigen::VectorXd& eigenvalues() const { return values_; }

private:
#ifndef SUSMAP_WITH_LAPACKE
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig_;
#endif
    Eigen::MatrixXd vectors_;
    Eigen::VectorXd values_;
};

/// Advances every column of `psi` across [t0, t1] (nominal time).
inline void propagate_segment(const HamiltonianTerms& terms, const AnnealEnvelope& envelope,
                              const AnnealSpec& spec, double t0, double t1, double dt,
                              Integrator cfg_integrator, Eigen::MatrixXcd& psi, EvolutionTrace& trace) {
    const double len = t1 - t0;
    if (len <= 0.0) return;
    const double q1 = t0 + 0.25 * len;
    const double q3 = t0 + 0.75 * len;
    // both schedules are affine inside a segment, so two probes decide constancy
    const bool s_const = spec.s_at(q1) == spec.s_at(q3);
    const bool g_const = spec.g_at(q1) == spec.g_at(q3);
    const double a_mid = envelope(spec.s_at(t0 + 0.5 * len)).a;
    const bool single = s_const && (g_const || a_mid == 0.0);

    const double phys_len = len * spec.time_scale;
    const std::size_t nsteps =
        single ? 1 : static_cast<std::size_t>(std::max(1.0, std::ceil(phys_len / dt - 1e-9)));
    const double h_nom = len / static_cast<double>(nsteps);
    const double phase = kPhasePerGHzMicrosecond * h_nom * spec.time_scale;

    SymmetricEigen eig;
    Eigen::MatrixXd re, im;
    // psi <- exp(-i phase H) psi for a frozen real symmetric H
    const auto apply_exp = [&](const Eigen::MatrixXd& h, const Eigen::VectorXd& diag_only, bool diagonal) {
        if (diagonal) {
            for (Eigen::Index r = 0; r < diag_only.size(); ++r) psi.row(r) *= std::polar(1.0, -phase * diag_only[r]);
            return;
        }
        eig.compute(h);
        // V diag(exp(-i phase lambda)) V^T with V real: four real products
        const Eigen::MatrixXd& v = eig.eigenvectors();
        re.noalias() = v.transpose() * psi.real();
        im.noalias() = v.transpose() * psi.imag();
        for (Eigen::Index r = 0; r < re.rows(); ++r) {
            const double theta = phase * eig.eigenvalues()[r];
            const double c = std::cos(theta);
            const double sn = std::sin(theta);
            const Eigen::RowVectorXd re_r = re.row(r);
            re.row(r) = c * re_r + sn * im.row(r);
            im.row(r) = c * im.row(r) - sn * re_r;
        }
        psi.real() = v * re;
        psi.imag() = v * im;
    };
    const auto params = [&](double t) {
        const auto [a, b] = envelope(spec.s_at(t));
        return std::array<double, 3>{a, b, spec.g_at(t)};
    };

    // Gauss nodes and weights of the commutator-free fourth-order rule
    constexpr double kGauss = 0.28867513459481287;  // sqrt(3)/6
    constexpr double kW1 = 0.25 - kGauss;           // (3 - 2 sqrt 3)/12
    constexpr double kW2 = 0.25 + kGauss;
    const bool cf4 = cfg_integrator == Integrator::Cf4 && !single;

    for (std::size_t k = 0; k < nsteps; ++k) {
        const double tm = t0 + (static_cast<double>(k) + 0.5) * h_nom;
        if (!cf4) {
            const auto [a, b, g] = params(tm);
            if (a == 0.0) {
                apply_exp({}, terms.diagonal(b, g), true);
            } else {
                apply_exp(terms.matrix(a, b, g), {}, false);
            }
        } else {
            const auto p1 = params(tm - kGauss * h_nom);
            const auto p2 = params(tm + kGauss * h_nom);
            // H is affine in (a, b, b*g), so weighted sums of H are H at weighted parameters
            const auto combo = [&](double w1, double w2) {
                const double a = w1 * p1[0] + w2 * p2[0];
                const double b = w1 * p1[1] + w2 * p2[1];
                const double bg = w1 * p1[1] * p1[2] + w2 * p2[1] * p2[2];
                return std::array<double, 3>{a, b, b != 0.0 ? bg / b : 0.0};
            };
            // psi <- exp(-i dt (w1 H1 + w2 H2)) exp(-i dt (w2 H1 + w1 H2)) psi
            for (const auto& [w1, w2] : {std::pair{kW2, kW1}, std::pair{kW1, kW2}}) {
                const auto c = combo(2.0 * w1, 2.0 * w2);
                if (c[0] == 0.0) {
                    apply_exp({}, 0.5 * terms.diagonal(c[1], c[2]), true);
                } else {
                    apply_exp(0.5 * terms.matrix(c[0], c[1], c[2]), {}, false);
                }
            }
        }
        ++trace.steps;
        for (Eigen::Index c = 0; c < psi.cols(); ++c) {
            const double drift = std::abs(psi.col(c).norm() - 1.0);
            trace.max_norm_drift = std::max(trace.max_norm_drift, drift);
            if (drift > kNormFailureTolerance) {
                throw IntegrationError("norm drift " + std::to_string(drift) + " at nominal t=" +
                                       std::to_string(tm) + "; reduce backend.dt");
            }
        }
    }
}

inline Eigen::MatrixXcd integrate(const HamiltonianTerms& terms, const AnnealEnvelope& envelope,
                                  const AnnealSpec& spec, double dt, Integrator integrator,
                                  Eigen::MatrixXcd psi, EvolutionTrace& trace) {
    const auto bps = spec.breakpoints();
    for (std::size_t i = 0; i + 1 < bps.size(); ++i) {
        propagate_segment(terms, envelope, spec, bps[i], bps[i + 1], dt, integrator, psi, trace);
    }
    trace.final_dt = dt;
    return psi;
}

/// max over columns of total variation between |a|^2 and |b|^2.
inline double column_tv(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    double worst = 0.0;
    for (Eigen::Index c = 0; c < a.cols(); ++c) {
        const double tv = 0.5 * (a.col(c).cwiseAbs2() - b.col(c).cwiseAbs2()).cwiseAbs().sum();
        worst = std::max(worst, tv);
    }
    return worst;
}

/// Runs the integration, halving dt until successive results agree to
/// `cfg.convergence_tolerance` when that check is enabled.
inline Eigen::MatrixXcd integrate_checked(const HamiltonianTerms& terms, const AnnealEnvelope& envelope,
                                          const AnnealSpec& spec, const BackendConfig& cfg,
                                          const Eigen::MatrixXcd& psi0, EvolutionTrace& trace) {
    Eigen::MatrixXcd coarse = integrate(terms, envelope, spec, cfg.dt, cfg.integrator, psi0, trace);
    if (cfg.convergence_tolerance <= 0.0) return coarse;
    double dt = cfg.dt;
    for (std::size_t r = 0; r < cfg.max_refinements; ++r) {
        dt *= 0.5;
        Eigen::MatrixXcd fine = integrate(terms, envelope, spec, dt, cfg.integrator, psi0, trace);
        ++trace.refinements;
        trace.convergence_tv = column_tv(coarse, fine);
        if (trace.convergence_tv < cfg.convergence_tolerance) return fine;
        coarse = std::move(fine);
    }
    throw IntegrationError("step doubling did not converge below " + std::to_string(cfg.convergence_tolerance) +
                           " (last difference " + std::to_string(trace.convergence_tv) + ")");
}

inline void check_schrodinger(const BackendConfig& cfg) {
    cfg.validate();
    if (cfg.kind != BackendKind::Schrodinger) throw InvalidInput("backend kind must be schrodinger");
}

}  // namespace detail

/// Final-state probabilities |<k|psi(T)>|^2 for one anneal. Reverse anneals
/// start in the programmed basis state, forward anneals in the uniform
/// superposition (ground state of -sum X).
inline Distribution evolve(const IsingProblem& problem, const AnnealEnvelope& envelope, const AnnealSpec& spec,
                           const BackendConfig& cfg, EvolutionTrace* trace_out = nullptr) {
    detail::check_schrodinger(cfg);
    spec.validate();
    const HamiltonianTerms terms(problem, cfg.dense_limit);
    const Eigen::Index dim = terms.dimension();
    Eigen::MatrixXcd psi0 = Eigen::MatrixXcd::Zero(dim, 1);
    if (spec.initial_state) {
        require_same_length(spec.initial_state->size(), problem.num_variables(), "evolve initial_state");
        psi0(static_cast<Eigen::Index>(spec.initial_state->index()), 0) = 1.0;
    } else {
        psi0.setConstant(1.0 / std::sqrt(static_cast<double>(dim)));
    }
    EvolutionTrace trace;
    const Eigen::MatrixXcd psi = detail::integrate_checked(terms, envelope, spec, cfg, psi0, trace);
    if (trace_out) *trace_out = trace;
    Distribution p(static_cast<std::size_t>(dim));
    for (Eigen::Index k = 0; k < dim; ++k) p[static_cast<std::size_t>(k)] = std::norm(psi(k, 0));
    return p;
}

/// Transition probabilities for every basis initial state at once:
/// result(k, i) = |<k| U |i>|^2 where U is the propagator of `spec`
/// (whose initial_state, if any, is ignored). Column i is the distribution
/// a reverse anneal from state i would produce.
inline Eigen::MatrixXd transition_matrix(const IsingProblem& problem, const AnnealEnvelope& envelope,
                                         const AnnealSpec& spec, const BackendConfig& cfg,
                                         EvolutionTrace* trace_out = nullptr) {
    detail::check_schrodinger(cfg);
    AnnealSpec probe = spec;
    probe.initial_state = SpinState::from_index(0, problem.num_variables());
    probe.validate();
    const HamiltonianTerms terms(problem, cfg.dense_limit);
    const Eigen::Index dim = terms.dimension();
    EvolutionTrace trace;
    const Eigen::MatrixXcd u =
        detail::integrate_checked(terms, envelope, probe, cfg, Eigen::MatrixXcd::Identity(dim, dim), trace);
    if (trace_out) *trace_out = trace;
    return u.cwiseAbs2();
}

// ---------------------------------------------------------------------------
// Sampling

inline void check_distribution(const Distribution& dist) {
    if (dist.empty()) throw InvalidInput("empty distribution");
    double total = 0.0;
    for (double p : dist) {
        if (!(p >= 0.0) || !std::isfinite(p)) throw InvalidInput("distribution has a negative or non-finite entry");
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-9) {
        throw InvalidInput("distribution sums to " + std::to_string(total) + ", expected 1");
    }
}

/// Multinomial draw of `num_reads` states, deterministic for a fixed seed.
inline SampleSet sample(const Distribution& dist, std::uint64_t num_reads, std::uint64_t seed,
                        std::string provenance = {}) {
    check_distribution(dist);
    SampleSet out;
    out.total_reads = num_reads;
    out.provenance = std::move(provenance);
    std::mt19937_64 rng(seed);
    std::uint64_t remaining = num_reads;
    double mass = 1.0;
    for (std::size_t k = 0; k < dist.size() && remaining > 0; ++k) {
        if (dist[k] <= 0.0) continue;
        std::uint64_t draw = remaining;
        const double p = std::min(1.0, dist[k] / mass);
        if (p < 1.0) {
            std::binomial_distribution<std::uint64_t> binom(remaining, p);
            draw = binom(rng);
        }
        if (draw > 0) out.counts[k] = draw;
        remaining -= draw;
        mass -= dist[k];
        if (mass <= 0.0) break;
    }
    // rounding in `mass` can leave a few reads; give them to the most likely state
    if (remaining > 0) {
        const auto top = static_cast<StateIndex>(std::max_element(dist.begin(), dist.end()) - dist.begin());
        out.counts[top] += remaining;
    }
    return out;
}

/// Deterministic "expected counts" in place of a random draw; largest
/// remainder rounding keeps the counts integral and summing to num_reads.
inline SampleSet expected_counts(const Distribution& dist, std::uint64_t num_reads, std::string provenance = {}) {
    check_distribution(dist);
    SampleSet out;
    out.total_reads = num_reads;
    out.provenance = std::move(provenance);
    std::vector<std::pair<double, std::size_t>> remainders;
    std::uint64_t assigned = 0;
    for (std::size_t k = 0; k < dist.size(); ++k) {
        const double exact = dist[k] * static_cast<double>(num_reads);
        const auto whole = static_cast<std::uint64_t>(std::floor(exact));
        if (whole > 0) out.counts[k] = whole;
        assigned += whole;
        remainders.emplace_back(exact - static_cast<double>(whole), k);
    }
    std::stable_sort(remainders.begin(), remainders.end(),
                     [](const auto& x, const auto& y) { return x.first > y.first; });
    for (std::size_t r = 0; assigned < num_reads && r < remainders.size(); ++r, ++assigned) {
        out.counts[remainders[r].second] += 1;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Spin-vector Monte Carlo

/// SplitMix64 finaliser; used to derive independent streams from (seed, key).
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t key) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (key + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline SampleSet svmc_evolve(const IsingProblem& problem, const AnnealEnvelope& envelope, const AnnealSpec& spec,
                             const BackendConfig& cfg) {
    cfg.validate();
    if (cfg.kind != BackendKind::Svmc) throw InvalidInput("backend kind must be svmc");
    spec.validate();
    const std::size_t n = problem.num_variables();
    if (spec.initial_state) require_same_length(spec.initial_state->size(), n, "svmc initial_state");

    std::vector<std::vector<std::pair<std::size_t, double>>> nbrs(n);
    for (const auto& c : problem.couplers()) {
        nbrs[c.i].emplace_back(c.j, c.value);
        nbrs[c.j].emplace_back(c.i, c.value);
    }
    std::vector<double> bias(n);
    for (std::size_t i = 0; i < n; ++i) bias[i] = problem.bias(i);

    struct Slice {
        double a, b, g;
    };
    std::vector<Slice> slices(cfg.sweeps);
    for (std::size_t k = 0; k < cfg.sweeps; ++k) {
        const double t = (static_cast<double>(k) + 0.5) / static_cast<double>(cfg.sweeps) * spec.annealing_time;
        const auto [a, b] = envelope(spec.s_at(t));
        slices[k] = {a, b, spec.g_at(t)};
    }

    SampleSet out;
    out.total_reads = spec.num_reads;
    out.provenance = "svmc";
    const double beta = 1.0 / cfg.temperature;
    std::vector<double> theta(n), cth(n), sth(n);
    for (std::size_t read = 0; read < spec.num_reads; ++read) {
        std::mt19937_64 rng(mix_seed(cfg.seed, read));
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        for (std::size_t i = 0; i < n; ++i) {
            theta[i] = spec.initial_state ? ((*spec.initial_state)[i] > 0 ? 0.0 : std::numbers::pi)
                                          : 0.5 * std::numbers::pi;
            cth[i] = std::cos(theta[i]);
            sth[i] = std::sin(theta[i]);
        }
        for (const auto& sl : slices) {
            for (std::size_t i = 0; i < n; ++i) {
                const double prop = std::numbers::pi * unit(rng);
                const double cp = std::cos(prop);
                const double sp = std::sin(prop);
                double field = sl.g * bias[i];
                for (const auto& [j, J] : nbrs[i]) field += J * cth[j];
                const double de = -0.5 * sl.a * (sp - sth[i]) + 0.5 * sl.b * field * (cp - cth[i]);
                if (de <= 0.0 || unit(rng) < std::exp(-beta * de)) {
                    theta[i] = prop;
                    cth[i] = cp;
                    sth[i] = sp;
                }
            }
        }
        StateIndex k = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (cth[i] < 0.0) k |= StateIndex{1} << i;
        }
        out.counts[k] += 1;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Composed runs

struct RunResult {
    std::optional<Distribution> distribution;  // Schrodinger backend only
    SampleSet samples;
};

inline IsingProblem encode_target(const IsingProblem& problem, const SpinState& target) {
    require_same_length(target.size(), problem.num_variables(), "encode_target");
    return problem.with_linear(complement_encoding(target));
}

namespace detail {
inline RunResult run_backend(const IsingProblem& problem, const AnnealEnvelope& envelope, const AnnealSpec& spec,
                             const BackendConfig& cfg, bool exact) {
    RunResult out;
    if (cfg.kind == BackendKind::Svmc) {
        out.samples = svmc_evolve(problem, envelope, spec, cfg);
        return out;
    }
    out.distribution = evolve(problem, envelope, spec, cfg);
    out.samples = exact ? expected_counts(*out.distribution, spec.num_reads, "schrodinger-exact")
                        : sample(*out.distribution, spec.num_reads, cfg.seed, "schrodinger");
    return out;
}
}  // namespace detail

/// Reverse anneal from `initial` with the h-gain plateau at `h_strength`.
/// The problem's linear terms are replaced by the complement encoding of
/// `target` before the run.
inline RunResult reverse_anneal_run(const IsingProblem& problem, const SpinState& initial, const SpinState& target,
                                    double h_strength, const AnnealPresets& presets, const AnnealEnvelope& envelope,
                                    const BackendConfig& cfg, bool exact = true) {
    const IsingProblem encoded = encode_target(problem, target);
    return detail::run_backend(encoded, envelope, presets.reverse_spec(initial, h_strength), cfg, exact);
}

/// Plain reverse anneal on the problem as given (no h-gain schedule).
inline RunResult reverse_anneal_only_run(const IsingProblem& problem, const SpinState& initial,
                                         const AnnealPresets& presets, const AnnealEnvelope& envelope,
                                         const BackendConfig& cfg, bool exact = true) {
    return detail::run_backend(problem, envelope, presets.reverse_spec(initial, std::nullopt), cfg, exact);
}

inline RunResult forward_anneal_run(const IsingProblem& problem, const AnnealPresets& presets,
                                    const AnnealEnvelope& envelope, const BackendConfig& cfg, bool exact = false) {
    return detail::run_backend(problem, envelope, presets.forward_spec(), cfg, exact);
}

}  // namespace susmap

#endif  // SUSMAP_SIMULATOR_HPP
