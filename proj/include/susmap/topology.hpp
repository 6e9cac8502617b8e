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

#ifndef SUSMAP_TOPOLOGY_HPP
#define SUSMAP_TOPOLOGY_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <istream>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "susmap/error.hpp"
#include "susmap/ising.hpp"

namespace susmap {

using Qubit = std::size_t;

/// Simple undirected graph over integer qubit ids with a removed-qubit set.
/// The defect-free base graph is kept so tilings can be computed against it.
class HardwareGraph {
public:
    HardwareGraph() = default;

    HardwareGraph(std::vector<Qubit> nodes, std::vector<Edge> edges, std::set<Qubit> defects = {},
                  std::string family = "generic", std::size_t m = 0)
        : family_(std::move(family)), m_(m), base_nodes_(std::move(nodes)), defects_(std::move(defects)) {
        std::sort(base_nodes_.begin(), base_nodes_.end());
        if (std::adjacent_find(base_nodes_.begin(), base_nodes_.end()) != base_nodes_.end()) {
            throw InvalidInput("hardware graph has duplicate nodes");
        }
        for (auto& [a, b] : edges) {
            if (a == b) throw InvalidInput("hardware graph has a self-loop at " + std::to_string(a));
            if (a > b) std::swap(a, b);
            if (!std::binary_search(base_nodes_.begin(), base_nodes_.end(), a) ||
                !std::binary_search(base_nodes_.begin(), base_nodes_.end(), b)) {
                throw InvalidInput("hardware edge " + std::to_string(a) + "-" + std::to_string(b) +
                                   " touches an unknown node");
            }
        }
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
        base_edges_ = std::move(edges);
        for (Qubit d : defects_) {
            if (!std::binary_search(base_nodes_.begin(), base_nodes_.end(), d)) {
                throw InvalidInput("defect qubit " + std::to_string(d) + " is not in the graph");
            }
        }
        bound_ = base_nodes_.empty() ? 0 : base_nodes_.back() + 1;
        adj_.assign(bound_, {});
        present_.assign(bound_, false);
        for (Qubit q : base_nodes_) {
            if (!defects_.contains(q)) {
                nodes_.push_back(q);
                present_[q] = true;
            }
        }
        for (const auto& [a, b] : base_edges_) {
            if (present_[a] && present_[b]) {
                edges_.emplace_back(a, b);
                adj_[a].push_back(b);
                adj_[b].push_back(a);
            }
        }
    }

    const std::string& family() const noexcept { return family_; }
    std::size_t size_parameter() const noexcept { return m_; }
    const std::vector<Qubit>& nodes() const noexcept { return nodes_; }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    const std::set<Qubit>& defects() const noexcept { return defects_; }
    std::size_t id_bound() const noexcept { return bound_; }

    bool has_node(Qubit q) const noexcept { return q < bound_ && present_[q]; }
    const std::vector<Qubit>& neighbors(Qubit q) const { return adj_.at(q); }
    bool has_edge(Qubit a, Qubit b) const {
        if (!has_node(a) || !has_node(b)) return false;
        const auto& n = adj_[a].size() <= adj_[b].size() ? adj_[a] : adj_[b];
        const Qubit other = adj_[a].size() <= adj_[b].size() ? b : a;
        return std::find(n.begin(), n.end(), other) != n.end();
    }

    /// Same graph with no defects.
    HardwareGraph without_defects() const { return {base_nodes_, base_edges_, {}, family_, m_}; }
    HardwareGraph with_defects(std::set<Qubit> defects) const {
        return {base_nodes_, base_edges_, std::move(defects), family_, m_};
    }

private:
    std::string family_ = "generic";
    std::size_t m_ = 0;
    std::vector<Qubit> base_nodes_;
    std::vector<Edge> base_edges_;
    std::set<Qubit> defects_;
    std::vector<Qubit> nodes_;
    std::vector<Edge> edges_;
    std::size_t bound_ = 0;
    std::vector<std::vector<Qubit>> adj_;
    std::vector<bool> present_;
};

// ---------------------------------------------------------------------------
// Pegasus

struct PegasusCoord {
    int u, w, k, z;
};

inline constexpr std::array<int, 12> kPegasusOffsetsVertical{2, 2, 2, 2, 10, 10, 10, 10, 6, 6, 6, 6};
inline constexpr std::array<int, 12> kPegasusOffsetsHorizontal{6, 6, 6, 6, 2, 2, 2, 2, 10, 10, 10, 10};

/// u*12*m*(m-1) + w*12*(m-1) + k*(m-1) + z
inline Qubit pegasus_linear(std::size_t m, const PegasusCoord& c) {
    const auto mm = static_cast<std::int64_t>(m);
    return static_cast<Qubit>(c.u * 12 * mm * (mm - 1) + c.w * 12 * (mm - 1) + c.k * (mm - 1) + c.z);
}

inline PegasusCoord pegasus_coordinates(std::size_t m, Qubit q) {
    const auto m1 = static_cast<Qubit>(m - 1);
    PegasusCoord c{};
    c.z = static_cast<int>(q % m1);
    q /= m1;
    c.k = static_cast<int>(q % 12);
    q /= 12;
    c.w = static_cast<int>(q % m);
    c.u = static_cast<int>(q / m);
    return c;
}

/// Whether a coordinate survives the fabric-only cut (boundary qubits that
/// cannot couple into the fabric are dropped).
inline bool pegasus_in_fabric(std::size_t m, const PegasusCoord& c, bool fabric_only) {
    if (!fabric_only) return true;
    const auto& o0 = kPegasusOffsetsVertical;
    const auto& o1 = kPegasusOffsetsHorizontal;
    const int start[2] = {*std::min_element(o1.begin(), o1.end()), *std::min_element(o0.begin(), o0.end())};
    const int end[2] = {12 - *std::max_element(o1.begin(), o1.end()), 12 - *std::max_element(o0.begin(), o0.end())};
    const int m1 = static_cast<int>(m) - 1;
    if (c.w == 0) return c.k >= start[c.u];
    if (c.w == m1) return c.k < 12 - end[c.u];
    return true;
}

/// Pegasus P_m in linear indexing. Nodes are the endpoints of the
/// generated couplers; defects are removed with their incident edges.
inline HardwareGraph pegasus_graph(std::size_t m, bool fabric_only = true, std::set<Qubit> defects = {}) {
    if (m < 2) throw InvalidInput("pegasus_graph: m must be >= 2");
    const auto& o0 = kPegasusOffsetsVertical;
    const auto& o1 = kPegasusOffsetsHorizontal;
    const int mi = static_cast<int>(m);
    const int m1 = mi - 1;
    int start[2] = {0, 0};
    int end[2] = {0, 0};
    if (fabric_only) {
        start[0] = *std::min_element(o1.begin(), o1.end());
        start[1] = *std::min_element(o0.begin(), o0.end());
        end[0] = 12 - *std::max_element(o1.begin(), o1.end());
        end[1] = 12 - *std::max_element(o0.begin(), o0.end());
    }
    const auto lin = [&](int u, int w, int k, int z) { return pegasus_linear(m, {u, w, k, z}); };
    const auto keep = [&](int u, int w, int k, int z) { return pegasus_in_fabric(m, {u, w, k, z}, fabric_only); };

    std::vector<Edge> edges;
    // external couplers along a line, then odd couplers between paired lines
    for (int u = 0; u < 2; ++u) {
        for (int w = 0; w < mi; ++w) {
            const int k_lo = w == 0 ? start[u] : 0;
            const int k_hi = 12 - (w == m1 ? end[u] : 0);
            for (int k = k_lo; k < k_hi; ++k) {
                for (int z = 0; z + 1 < m1; ++z) edges.emplace_back(lin(u, w, k, z), lin(u, w, k, z + 1));
            }
            for (int k = k_lo; k + 1 < k_hi; k += 2) {
                for (int z = 0; z < m1; ++z) edges.emplace_back(lin(u, w, k, z), lin(u, w, k + 1, z));
            }
        }
    }
    // internal couplers between vertical and horizontal qubits
    for (int w = 0; w < mi; ++w) {
        for (int kk = 0; kk < 12; ++kk) {
            const int k_lo = w != 0 ? 0 : o1[static_cast<std::size_t>(kk)];
            const int k_hi = w < m1 ? 12 : o1[static_cast<std::size_t>(kk)];
            for (int k = k_lo; k < k_hi; ++k) {
                for (int z = 0; z < m1; ++z) {
                    const int w2 = z + (kk < o0[static_cast<std::size_t>(k)] ? 1 : 0);
                    const int z2 = w - (k < o1[static_cast<std::size_t>(kk)] ? 1 : 0);
                    if (keep(0, w, k, z) && keep(1, w2, kk, z2)) edges.emplace_back(lin(0, w, k, z), lin(1, w2, kk, z2));
                }
            }
        }
    }
    std::vector<Qubit> nodes;
    for (const auto& [a, b] : edges) {
        nodes.push_back(a);
        nodes.push_back(b);
    }
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    for (Qubit d : defects) {
        if (!std::binary_search(nodes.begin(), nodes.end(), d)) {
            throw InvalidInput("defect qubit " + std::to_string(d) + " is not a node of P" + std::to_string(m));
        }
    }
    return {std::move(nodes), std::move(edges), std::move(defects), "pegasus", m};
}

/// One qubit id per line; blank lines and '#' comments are ignored.
inline std::set<Qubit> parse_defect_list(std::istream& in) {
    std::set<Qubit> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        const auto last = line.find_last_not_of(" \t\r");
        const std::string tok = line.substr(first, last - first + 1);
        if (tok.find_first_not_of("0123456789") != std::string::npos) {
            throw InvalidInput("defect list line " + std::to_string(lineno) + ": '" + tok + "' is not a qubit id");
        }
        out.insert(static_cast<Qubit>(std::stoull(tok)));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Tiling

struct PatternGraph {
    std::size_t num_variables = 0;
    std::vector<Edge> edges;

    static PatternGraph of(const IsingProblem& p) {
        PatternGraph g{p.num_variables(), {}};
        for (const auto& c : p.couplers()) g.edges.emplace_back(c.i, c.j);
        return g;
    }

    std::vector<std::vector<std::size_t>> adjacency() const {
        std::vector<std::vector<std::size_t>> adj(num_variables);
        for (const auto& [a, b] : edges) {
            adj[a].push_back(b);
            adj[b].push_back(a);
        }
        return adj;
    }

    bool connected() const {
        if (num_variables == 0) return false;
        const auto adj = adjacency();
        std::vector<bool> seen(num_variables, false);
        std::vector<std::size_t> stack{0};
        seen[0] = true;
        std::size_t count = 1;
        while (!stack.empty()) {
            const auto v = stack.back();
            stack.pop_back();
            for (auto w : adj[v]) {
                if (!seen[w]) {
                    seen[w] = true;
                    ++count;
                    stack.push_back(w);
                }
            }
        }
        return count == num_variables;
    }
};

/// embeddings[e][v] is the qubit carrying pattern variable v in copy e.
struct EmbeddingSet {
    std::vector<std::vector<Qubit>> embeddings;

    std::size_t size() const noexcept { return embeddings.size(); }
};

struct TilingOptions {
    std::size_t passes = 2;                // anchor sweeps; stops early when a sweep adds nothing
    std::size_t search_budget = 20000;     // backtracking nodes per anchor
    bool fill_around_defects = false;      // greedily refill holes left by defects
};

namespace detail {

/// Pattern variables ordered so each one after the first has an earlier
/// neighbor: start at max degree, then most already-placed neighbors.
inline std::vector<std::size_t> search_order(const PatternGraph& p) {
    const auto adj = p.adjacency();
    std::vector<std::size_t> order;
    std::vector<bool> placed(p.num_variables, false);
    std::vector<std::size_t> links(p.num_variables, 0);
    for (std::size_t step = 0; step < p.num_variables; ++step) {
        std::size_t best = p.num_variables;
        for (std::size_t v = 0; v < p.num_variables; ++v) {
            if (placed[v]) continue;
            if (step > 0 && links[v] == 0) continue;
            if (best == p.num_variables || links[v] > links[best] ||
                (links[v] == links[best] && adj[v].size() > adj[best].size())) {
                best = v;
            }
        }
        placed[best] = true;
        order.push_back(best);
        for (auto w : adj[best]) ++links[w];
    }
    return order;
}

class Tiler {
public:
    Tiler(const HardwareGraph& target, const PatternGraph& pattern, std::vector<bool>& used, const TilingOptions& opt)
        : g_(target), p_(pattern), adj_(pattern.adjacency()), order_(search_order(pattern)), used_(used), opt_(opt) {
        pos_.assign(p_.num_variables, 0);
        for (std::size_t i = 0; i < order_.size(); ++i) pos_[order_[i]] = i;
    }

    /// Tries to place a copy with its first variable on `anchor`.
    bool place(Qubit anchor, std::mt19937_64& rng, std::vector<Qubit>& out) {
        if (used_[anchor] || !g_.has_node(anchor)) return false;
        if (g_.neighbors(anchor).size() < adj_[order_[0]].size()) return false;
        image_.assign(p_.num_variables, 0);
        budget_ = opt_.search_budget;
        image_[order_[0]] = anchor;
        used_[anchor] = true;
        const bool ok = extend(1, rng);
        used_[anchor] = false;
        if (!ok) return false;
        out = image_;
        for (Qubit q : out) used_[q] = true;
        return true;
    }

private:
    bool extend(std::size_t i, std::mt19937_64& rng) {
        if (i == order_.size()) return true;
        if (budget_ == 0) return false;
        --budget_;
        const std::size_t v = order_[i];
        // earlier-placed neighbors; candidates come from the first one's neighborhood
        std::vector<Qubit> anchors;
        for (auto w : adj_[v]) {
            if (pos_[w] < i) anchors.push_back(image_[w]);
        }
        std::vector<Qubit> cand;
        for (Qubit q : g_.neighbors(anchors.front())) {
            if (used_[q] || g_.neighbors(q).size() < adj_[v].size()) continue;
            bool ok = true;
            for (std::size_t a = 1; a < anchors.size() && ok; ++a) ok = g_.has_edge(q, anchors[a]);
            if (ok) cand.push_back(q);
        }
        std::shuffle(cand.begin(), cand.end(), rng);
        for (Qubit q : cand) {
            image_[v] = q;
            used_[q] = true;
            const bool ok = extend(i + 1, rng);
            used_[q] = false;
            if (ok) return true;
            if (budget_ == 0) return false;
        }
        return false;
    }

    const HardwareGraph& g_;
    const PatternGraph& p_;
    std::vector<std::vector<std::size_t>> adj_;
    std::vector<std::size_t> order_;
    std::vector<std::size_t> pos_;
    std::vector<bool>& used_;
    const TilingOptions& opt_;
    std::vector<Qubit> image_;
    std::size_t budget_ = 0;
};

inline void greedy_fill(const HardwareGraph& target, const PatternGraph& pattern, std::uint64_t seed,
                        const TilingOptions& opt, std::vector<bool>& used, EmbeddingSet& out) {
    std::mt19937_64 rng(seed);
    Tiler tiler(target, pattern, used, opt);
    std::vector<Qubit> emb;
    for (std::size_t pass = 0; pass < std::max<std::size_t>(1, opt.passes); ++pass) {
        std::vector<Qubit> anchors = target.nodes();
        std::shuffle(anchors.begin(), anchors.end(), rng);
        std::size_t added = 0;
        for (Qubit a : anchors) {
            if (tiler.place(a, rng, emb)) {
                out.embeddings.push_back(emb);
                ++added;
            }
        }
        if (added == 0) break;
    }
}

}  // namespace detail

/// Greedy randomized packing of node-disjoint copies of `pattern`. The
/// packing is computed on the defect-free graph and copies touching a defect
/// are dropped, so adding defects never increases the count for a fixed
/// seed. `fill_around_defects` then tries to place extra copies in the gaps.
inline EmbeddingSet tile_disjoint_embeddings(const HardwareGraph& target, const PatternGraph& pattern,
                                             std::uint64_t seed, const TilingOptions& opt = {}) {
    if (!pattern.connected()) throw InvalidInput("tiling pattern must be connected");
    for (const auto& [a, b] : pattern.edges) {
        if (a >= pattern.num_variables || b >= pattern.num_variables || a == b) {
            throw InvalidInput("tiling pattern has an invalid edge");
        }
    }
    if (pattern.num_variables > target.nodes().size()) {
        throw InvalidInput("pattern has " + std::to_string(pattern.num_variables) + " variables but the target only " +
                           std::to_string(target.nodes().size()) + " qubits");
    }
    EmbeddingSet base;
    const HardwareGraph clean = target.without_defects();
    std::vector<bool> used(clean.id_bound(), false);
    detail::greedy_fill(clean, pattern, seed, opt, used, base);
    if (target.defects().empty()) return base;

    EmbeddingSet out;
    for (auto& e : base.embeddings) {
        const bool hit = std::any_of(e.begin(), e.end(), [&](Qubit q) { return target.defects().contains(q); });
        if (!hit) out.embeddings.push_back(std::move(e));
    }
    if (opt.fill_around_defects) {
        std::vector<bool> taken(target.id_bound(), false);
        for (const auto& e : out.embeddings) {
            for (Qubit q : e) taken[q] = true;
        }
        detail::greedy_fill(target, pattern, seed ^ 0x9e3779b97f4a7c15ULL, opt, taken, out);
    }
    return out;
}

inline EmbeddingSet tile_disjoint_embeddings(const HardwareGraph& target, const IsingProblem& pattern,
                                             std::uint64_t seed, const TilingOptions& opt = {}) {
    return tile_disjoint_embeddings(target, PatternGraph::of(pattern), seed, opt);
}

struct EmbeddingFinding {
    enum class Kind { Shape, UnknownQubit, Injectivity, Disjointness, EdgePreservation };
    Kind kind;
    std::size_t embedding;
    std::string message;
};

inline std::string to_string(EmbeddingFinding::Kind k) {
    switch (k) {
    case EmbeddingFinding::Kind::Shape: return "shape";
    case EmbeddingFinding::Kind::UnknownQubit: return "unknown_qubit";
    case EmbeddingFinding::Kind::Injectivity: return "injectivity";
    case EmbeddingFinding::Kind::Disjointness: return "disjointness";
    case EmbeddingFinding::Kind::EdgePreservation: return "edge_preservation";
    }
    return "unknown";
}

/// Empty result means the set is valid.
inline std::vector<EmbeddingFinding> validate_embeddings(const HardwareGraph& target, const PatternGraph& pattern,
                                                         const EmbeddingSet& set) {
    using K = EmbeddingFinding::Kind;
    std::vector<EmbeddingFinding> out;
    std::vector<std::size_t> owner(target.id_bound(), SIZE_MAX);
    for (std::size_t e = 0; e < set.embeddings.size(); ++e) {
        const auto& emb = set.embeddings[e];
        if (emb.size() != pattern.num_variables) {
            out.push_back({K::Shape, e,
                           "maps " + std::to_string(emb.size()) + " variables, pattern has " +
                               std::to_string(pattern.num_variables)});
            continue;
        }
        std::set<Qubit> seen;
        for (std::size_t v = 0; v < emb.size(); ++v) {
            const Qubit q = emb[v];
            if (!target.has_node(q)) {
                out.push_back({K::UnknownQubit, e, "variable " + std::to_string(v) + " on missing qubit " +
                                                       std::to_string(q)});
                continue;
            }
            if (!seen.insert(q).second) {
                out.push_back({K::Injectivity, e, "qubit " + std::to_string(q) + " carries two variables"});
                continue;
            }
            if (owner[q] != SIZE_MAX && owner[q] != e) {
                out.push_back({K::Disjointness, e,
                               "qubit " + std::to_string(q) + " also used by embedding " + std::to_string(owner[q])});
            }
            owner[q] = e;
        }
        for (const auto& [a, b] : pattern.edges) {
            if (!target.has_edge(emb[a], emb[b])) {
                out.push_back({K::EdgePreservation, e,
                               "pattern edge " + std::to_string(a) + "-" + std::to_string(b) + " maps to non-coupler " +
                                   std::to_string(emb[a]) + "-" + std::to_string(emb[b])});
            }
        }
    }
    return out;
}

}  // namespace susmap

#endif  // SUSMAP_TOPOLOGY_HPP
