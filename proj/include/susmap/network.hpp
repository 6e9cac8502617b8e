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

#ifndef SUSMAP_NETWORK_HPP
#define SUSMAP_NETWORK_HPP

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdint>
#include <iomanip>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "susmap/error.hpp"
#include "susmap/ising.hpp"
#include "susmap/simulator.hpp"

namespace susmap {

/// Probabilities closer than this to the maximum count as tied. Exact
/// symmetries of the Hamiltonian give equal probabilities that the
/// integrator reproduces only to rounding.
inline constexpr double kDominantTieTolerance = 1e-9;

/// Argmax state; ties go to the lowest index.
inline StateIndex dominant_state(const Distribution& dist) {
    if (dist.empty()) throw InvalidInput("dominant_state: empty distribution");
    const double top = *std::max_element(dist.begin(), dist.end());
    StateIndex k = 0;
    while (dist[k] < top - kDominantTieTolerance) ++k;
    return k;
}

inline StateIndex dominant_state(const SampleSet& samples) {
    if (samples.counts.empty()) throw InvalidInput("dominant_state: empty sample set");
    // std::map iterates in ascending index, so strict > keeps the lowest on ties
    auto best = samples.counts.begin();
    for (auto it = samples.counts.begin(); it != samples.counts.end(); ++it) {
        if (it->second > best->second) best = it;
    }
    return best->first;
}

struct DominantPath {
    StateIndex initial_state = 0;
    StateIndex target_gs = 0;
    std::vector<StateIndex> states;
};

/// Collapses consecutive repeats of a dominant-state sequence.
inline DominantPath build_path(const std::vector<StateIndex>& dominants, StateIndex initial = 0,
                               StateIndex target = 0) {
    DominantPath p{initial, target, {}};
    for (StateIndex s : dominants) {
        if (p.states.empty() || p.states.back() != s) p.states.push_back(s);
    }
    return p;
}

/// Per-h distributions in ascending h order.
inline DominantPath build_path(const std::vector<Distribution>& per_h, StateIndex initial = 0,
                               StateIndex target = 0) {
    std::vector<StateIndex> d;
    d.reserve(per_h.size());
    for (const auto& dist : per_h) d.push_back(dominant_state(dist));
    return build_path(d, initial, target);
}

struct NetworkEdge {
    std::uint64_t multiplicity = 0;
    std::uint64_t forward = 0;   // traversals from the lower to the higher index
    std::uint64_t backward = 0;  // traversals from the higher to the lower index

    bool operator==(const NetworkEdge&) const = default;
};

struct TransitionNetwork {
    std::size_t num_variables = 0;
    std::map<StateIndex, double> nodes;  // state -> energy
    std::map<std::pair<StateIndex, StateIndex>, NetworkEdge> edges;  // key (lo, hi)

    /// Associative, commutative merge.
    void merge(const TransitionNetwork& other) {
        if (num_variables == 0) num_variables = other.num_variables;
        for (const auto& [s, e] : other.nodes) nodes.emplace(s, e);
        for (const auto& [k, e] : other.edges) {
            auto& mine = edges[k];
            mine.multiplicity += e.multiplicity;
            mine.forward += e.forward;
            mine.backward += e.backward;
        }
    }

    bool operator==(const TransitionNetwork&) const = default;
};

inline void add_path(TransitionNetwork& net, const DominantPath& path, const IsingProblem& problem) {
    for (StateIndex s : path.states) net.nodes.emplace(s, problem.energy(s));
    for (std::size_t i = 0; i + 1 < path.states.size(); ++i) {
        const StateIndex u = path.states[i];
        const StateIndex v = path.states[i + 1];
        auto& e = net.edges[{std::min(u, v), std::max(u, v)}];
        ++e.multiplicity;
        if (u < v) ++e.forward;
        else ++e.backward;
    }
}

inline TransitionNetwork union_network(const std::vector<DominantPath>& paths, const IsingProblem& problem) {
    TransitionNetwork net;
    net.num_variables = problem.num_variables();
    for (const auto& p : paths) add_path(net, p, problem);
    return net;
}

/// Relabels every node by its bit complement. Direction counts swap with
/// the index order.
inline TransitionNetwork complemented(const TransitionNetwork& net) {
    TransitionNetwork out;
    out.num_variables = net.num_variables;
    for (const auto& [s, e] : net.nodes) out.nodes.emplace(complement_index(s, net.num_variables), e);
    for (const auto& [k, e] : net.edges) {
        const StateIndex a = complement_index(k.first, net.num_variables);
        const StateIndex b = complement_index(k.second, net.num_variables);
        out.edges[{std::min(a, b), std::max(a, b)}] = {e.multiplicity, e.backward, e.forward};
    }
    return out;
}

enum class NetworkFormat { GraphML, Dot, Json };

inline NetworkFormat parse_network_format(const std::string& s) {
    if (s == "graphml") return NetworkFormat::GraphML;
    if (s == "dot") return NetworkFormat::Dot;
    if (s == "json") return NetworkFormat::Json;
    throw InvalidInput("unknown network format '" + s + "' (expected graphml, dot or json)");
}

inline nlohmann::json network_to_json(const TransitionNetwork& net, bool directions = true) {
    nlohmann::json j;
    j["num_variables"] = net.num_variables;
    j["nodes"] = nlohmann::json::array();
    j["edges"] = nlohmann::json::array();
    for (const auto& [s, e] : net.nodes) j["nodes"].push_back({{"state", s}, {"energy", e}});
    for (const auto& [k, e] : net.edges) {
        nlohmann::json ej{{"u", k.first}, {"v", k.second}, {"multiplicity", e.multiplicity}};
        if (directions) {
            ej["forward"] = e.forward;
            ej["backward"] = e.backward;
        }
        j["edges"].push_back(std::move(ej));
    }
    return j;
}

inline TransitionNetwork network_from_json(const nlohmann::json& j) {
    TransitionNetwork net;
    try {
        net.num_variables = j.value("num_variables", std::size_t{0});
        for (const auto& n : j.at("nodes")) net.nodes[n.at("state").get<StateIndex>()] = n.at("energy").get<double>();
        for (const auto& e : j.at("edges")) {
            const auto u = e.at("u").get<StateIndex>();
            const auto v = e.at("v").get<StateIndex>();
            if (!net.nodes.contains(u) || !net.nodes.contains(v)) {
                throw InvalidInput("network edge " + std::to_string(u) + "-" + std::to_string(v) +
                                   " references a missing node");
            }
            NetworkEdge ne;
            ne.multiplicity = e.at("multiplicity").get<std::uint64_t>();
            ne.forward = e.value("forward", std::uint64_t{0});
            ne.backward = e.value("backward", std::uint64_t{0});
            net.edges[{std::min(u, v), std::max(u, v)}] = ne;
        }
    } catch (const nlohmann::json::exception& ex) {
        throw InvalidInput(std::string("network json: ") + ex.what());
    }
    return net;
}

namespace detail {
inline std::string fmt_energy(double e) {
    std::ostringstream os;
    os << std::setprecision(17) << e;
    return os.str();
}
}  // namespace detail

inline std::string export_network(const TransitionNetwork& net, NetworkFormat format, bool directions = false) {
    std::ostringstream os;
    switch (format) {
    case NetworkFormat::Json:
        return network_to_json(net, directions).dump(2) + "\n";
    case NetworkFormat::GraphML:
        os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
           << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
           << "  <key id=\"state\" for=\"node\" attr.name=\"state\" attr.type=\"long\"/>\n"
           << "  <key id=\"energy\" for=\"node\" attr.name=\"energy\" attr.type=\"double\"/>\n"
           << "  <key id=\"multiplicity\" for=\"edge\" attr.name=\"multiplicity\" attr.type=\"long\"/>\n";
        if (directions) {
            os << "  <key id=\"forward\" for=\"edge\" attr.name=\"forward\" attr.type=\"long\"/>\n"
               << "  <key id=\"backward\" for=\"edge\" attr.name=\"backward\" attr.type=\"long\"/>\n";
        }
        os << "  <graph id=\"transitions\" edgedefault=\"undirected\">\n";
        for (const auto& [s, e] : net.nodes) {
            os << "    <node id=\"n" << s << "\"><data key=\"state\">" << s << "</data><data key=\"energy\">"
               << detail::fmt_energy(e) << "</data></node>\n";
        }
        for (const auto& [k, e] : net.edges) {
            os << "    <edge source=\"n" << k.first << "\" target=\"n" << k.second
               << "\"><data key=\"multiplicity\">" << e.multiplicity << "</data>";
            if (directions) {
                os << "<data key=\"forward\">" << e.forward << "</data><data key=\"backward\">" << e.backward
                   << "</data>";
            }
            os << "</edge>\n";
        }
        os << "  </graph>\n</graphml>\n";
        return os.str();
    case NetworkFormat::Dot:
        os << "graph transitions {\n";
        for (const auto& [s, e] : net.nodes) {
            os << "  " << s << " [state=" << s << ", energy=" << detail::fmt_energy(e) << "];\n";
        }
        for (const auto& [k, e] : net.edges) {
            os << "  " << k.first << " -- " << k.second << " [multiplicity=" << e.multiplicity;
            if (directions) os << ", forward=" << e.forward << ", backward=" << e.backward;
            os << "];\n";
        }
        os << "}\n";
        return os.str();
    }
    throw InvalidInput("unknown network format");
}

inline TransitionNetwork parse_network(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& ex) {
        throw InvalidInput(std::string("network json: ") + ex.what());
    }
    return network_from_json(j);
}

}  // namespace susmap

#endif  // SUSMAP_NETWORK_HPP
