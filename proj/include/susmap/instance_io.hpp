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

#ifndef SUSMAP_INSTANCE_IO_HPP
#define SUSMAP_INSTANCE_IO_HPP

// Instance files:
//
//   {"name": "n6", "num_variables": 6,
//    "linear": {"0": 0.5},
//    "quadratic": [[0, 1, 1.0], [1, 2, -1.0]]}

#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "susmap/error.hpp"
#include "susmap/ising.hpp"

namespace susmap {

namespace detail {

/// Records the 1-based line of every JSON value, keyed by a slash-joined
/// path ("quadratic/3", "linear/0"). Assumes the text already parsed.
class JsonLineIndex {
public:
    explicit JsonLineIndex(const std::string& text) : t_(text) {
        skip_ws();
        value("");
    }

    std::size_t line_of(const std::string& path) const {
        const auto it = lines_.find(path);
        return it == lines_.end() ? 0 : it->second;
    }

private:
    void skip_ws() {
        while (i_ < t_.size() && (t_[i_] == ' ' || t_[i_] == '\t' || t_[i_] == '\r' || t_[i_] == '\n')) {
            if (t_[i_] == '\n') ++line_;
            ++i_;
        }
    }

    std::string string() {
        std::string out;
        ++i_;  // opening quote
        while (i_ < t_.size() && t_[i_] != '"') {
            if (t_[i_] == '\\' && i_ + 1 < t_.size()) ++i_;
            out += t_[i_++];
        }
        ++i_;
        return out;
    }

    void value(const std::string& path) {
        lines_.emplace(path, line_);
        if (i_ >= t_.size()) return;
        const auto child = [&](const std::string& k) { return path.empty() ? k : path + "/" + k; };
        if (t_[i_] == '{') {
            ++i_;
            skip_ws();
            while (i_ < t_.size() && t_[i_] != '}') {
                const std::string key = string();
                skip_ws();
                ++i_;  // colon
                skip_ws();
                value(child(key));
                skip_ws();
                if (i_ < t_.size() && t_[i_] == ',') ++i_;
                skip_ws();
            }
            ++i_;
        } else if (t_[i_] == '[') {
            ++i_;
            skip_ws();
            std::size_t idx = 0;
            while (i_ < t_.size() && t_[i_] != ']') {
                value(child(std::to_string(idx++)));
                skip_ws();
                if (i_ < t_.size() && t_[i_] == ',') ++i_;
                skip_ws();
            }
            ++i_;
        } else if (t_[i_] == '"') {
            string();
        } else {
            while (i_ < t_.size() && t_[i_] != ',' && t_[i_] != '}' && t_[i_] != ']' && t_[i_] != ' ' &&
                   t_[i_] != '\n' && t_[i_] != '\t' && t_[i_] != '\r') {
                ++i_;
            }
        }
    }

    const std::string& t_;
    std::size_t i_ = 0;
    std::size_t line_ = 1;
    std::map<std::string, std::size_t> lines_;
};

}  // namespace detail

/// Parses an instance document. `source` prefixes diagnostics ("file:line: ...").
inline IsingProblem parse_instance(const std::string& text, const std::string& source = "<instance>") {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& ex) {
        std::size_t line = 1;
        for (std::size_t i = 0; i < std::min(ex.byte, text.size()); ++i) line += text[i] == '\n';
        throw InvalidInput(source + ":" + std::to_string(line) + ": malformed JSON (" + ex.what() + ")");
    }
    const detail::JsonLineIndex lines(text);
    const auto fail = [&](const std::string& path, const std::string& msg) -> InvalidInput {
        return InvalidInput(source + ":" + std::to_string(lines.line_of(path)) + ": " + msg);
    };
    if (!j.is_object()) throw fail("", "instance must be an object");
    if (!j.contains("num_variables") || !j["num_variables"].is_number_integer() || j["num_variables"].get<long long>() <= 0) {
        throw fail("num_variables", "num_variables must be a positive integer");
    }
    const auto n = j["num_variables"].get<std::size_t>();

    IsingProblem::LinearMap linear;
    if (j.contains("linear")) {
        if (!j["linear"].is_object()) throw fail("linear", "linear must be an object of index -> bias");
        for (const auto& [key, val] : j["linear"].items()) {
            const std::string path = "linear/" + key;
            if (key.empty() || key.find_first_not_of("0123456789") != std::string::npos) {
                throw fail(path, "linear key '" + key + "' is not a decimal index");
            }
            const auto i = static_cast<std::size_t>(std::stoull(key));
            if (i >= n) throw fail(path, "linear index " + key + " out of range for " + std::to_string(n) + " variables");
            if (!val.is_number() || !std::isfinite(val.get<double>())) throw fail(path, "linear bias must be a finite number");
            linear[i] = val.get<double>();
        }
    }

    IsingProblem::QuadraticMap quadratic;
    if (j.contains("quadratic")) {
        if (!j["quadratic"].is_array()) throw fail("quadratic", "quadratic must be a list of [i, j, J]");
        for (std::size_t e = 0; e < j["quadratic"].size(); ++e) {
            const auto& t = j["quadratic"][e];
            const std::string path = "quadratic/" + std::to_string(e);
            if (!t.is_array() || t.size() != 3 || !t[0].is_number_integer() || !t[1].is_number_integer() ||
                !t[2].is_number()) {
                throw fail(path, "quadratic entry " + std::to_string(e) + " must be [i, j, J]");
            }
            const auto a = t[0].get<long long>();
            const auto b = t[1].get<long long>();
            const double v = t[2].get<double>();
            if (a < 0 || b < 0 || static_cast<std::size_t>(a) >= n || static_cast<std::size_t>(b) >= n) {
                throw fail(path, "coupler index out of range for " + std::to_string(n) + " variables");
            }
            if (a == b) throw fail(path, "self-coupler on variable " + std::to_string(a));
            if (a > b) throw fail(path, "coupler indices must satisfy i < j");
            if (!std::isfinite(v)) throw fail(path, "coupler value must be finite");
            const std::pair<std::size_t, std::size_t> key{static_cast<std::size_t>(a), static_cast<std::size_t>(b)};
            if (!quadratic.emplace(key, v).second) throw fail(path, "duplicate coupler " + std::to_string(a) + "-" + std::to_string(b));
        }
    }
    std::string name = j.value("name", std::string{});
    return IsingProblem(n, std::move(linear), std::move(quadratic), std::move(name));
}

inline IsingProblem load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open instance file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_instance(ss.str(), path);
}

inline nlohmann::json instance_to_json(const IsingProblem& p) {
    nlohmann::json j;
    if (!p.name().empty()) j["name"] = p.name();
    j["num_variables"] = p.num_variables();
    j["linear"] = nlohmann::json::object();
    for (const auto& [i, h] : p.linear()) j["linear"][std::to_string(i)] = h;
    j["quadratic"] = nlohmann::json::array();
    for (const auto& c : p.couplers()) j["quadratic"].push_back({c.i, c.j, c.value});
    return j;
}

}  // namespace susmap

#endif  // SUSMAP_INSTANCE_IO_HPP
