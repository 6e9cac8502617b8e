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

#include "susmap/instance_io.hpp"

namespace susmap {
namespace {

// Parses `text` and returns the error message, or "" when it parses.
std::string error_of(const std::string& text) {
    try {
        parse_instance(text, "inst.json");
    } catch (const InvalidInput& e) {
        return e.what();
    }
    return "";
}

TEST(InstanceIoTest, ParsesAllFields) {
    const auto p = parse_instance(R"({"name": "tiny", "num_variables": 3,
        "linear": {"0": 0.5, "2": -1},
        "quadratic": [[0, 1, 1], [1, 2, -0.25]]})");
    EXPECT_EQ(p.name(), "tiny");
    EXPECT_EQ(p.num_variables(), 3u);
    EXPECT_DOUBLE_EQ(p.bias(0), 0.5);
    EXPECT_DOUBLE_EQ(p.bias(1), 0.0);
    EXPECT_DOUBLE_EQ(p.quadratic().at({1, 2}), -0.25);
}

TEST(InstanceIoTest, LinearAndQuadraticAreOptional) {
    const auto p = parse_instance(R"({"num_variables": 2})");
    EXPECT_FALSE(p.has_linear_terms());
    EXPECT_TRUE(p.quadratic().empty());
}

TEST(InstanceIoTest, RoundTripThroughJson) {
    const IsingProblem p(4, {{1, 0.125}}, {{{0, 3}, -1.0}, {{1, 2}, 2.5}}, "rt");
    const auto q = parse_instance(instance_to_json(p).dump(2));
    EXPECT_EQ(q.name(), p.name());
    EXPECT_EQ(q.num_variables(), p.num_variables());
    EXPECT_EQ(q.linear(), p.linear());
    EXPECT_EQ(q.quadratic(), p.quadratic());
}

TEST(InstanceIoTest, ErrorsNameFileAndLine) {
    const std::string text =
        "{\n"
        "  \"num_variables\": 3,\n"
        "  \"quadratic\": [\n"
        "    [0, 1, 1],\n"
        "    [1, 5, -1]\n"
        "  ]\n"
        "}\n";
    const auto msg = error_of(text);
    EXPECT_EQ(msg.rfind("inst.json:5: ", 0), 0u) << msg;
    EXPECT_NE(msg.find("out of range"), std::string::npos) << msg;
}

TEST(InstanceIoTest, EachInvariantHasADiagnostic) {
    EXPECT_NE(error_of(R"({"num_variables": 0})").find("positive integer"), std::string::npos);
    EXPECT_NE(error_of(R"({"linear": {}})").find("num_variables"), std::string::npos);
    EXPECT_NE(error_of(R"({"num_variables": 2, "quadratic": [[1, 1, 1]]})").find("self-coupler"), std::string::npos);
    EXPECT_NE(error_of(R"({"num_variables": 2, "quadratic": [[1, 0, 1]]})").find("i < j"), std::string::npos);
    EXPECT_NE(error_of(R"({"num_variables": 3, "quadratic": [[0, 1, 1], [0, 1, -1]]})").find("duplicate"),
              std::string::npos);
    EXPECT_NE(error_of(R"({"num_variables": 2, "quadratic": [[0, 1]]})").find("[i, j, J]"), std::string::npos);
    EXPECT_NE(error_of(R"({"num_variables": 2, "linear": {"x": 1}})").find("decimal index"), std::string::npos);
    EXPECT_NE(error_of(R"({"num_variables": 2, "linear": {"2": 1}})").find("out of range"), std::string::npos);
    EXPECT_NE(error_of(R"([1, 2])").find("must be an object"), std::string::npos);
}

TEST(InstanceIoTest, MalformedJsonReportsItsLine) {
    const auto msg = error_of("{\n  \"num_variables\": 2,\n  \"quadratic\": [[0, 1, 1],,]\n}\n");
    EXPECT_EQ(msg.rfind("inst.json:3: malformed JSON", 0), 0u) << msg;
}

TEST(InstanceIoTest, BundledInstancesLoad) {
    for (const char* name : {"n6.json", "n7.json", "n8.json"}) {
        const auto p = load_instance(std::string(SUSMAP_SOURCE_DIR) + "/instances/" + name);
        EXPECT_FALSE(p.has_linear_terms()) << name;
        for (const auto& [k, J] : p.quadratic()) EXPECT_EQ(std::abs(J), 1.0) << name;
    }
    EXPECT_THROW(load_instance("/nonexistent/instance.json"), InvalidInput);
}

}  // namespace
}  // namespace susmap
