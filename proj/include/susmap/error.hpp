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

#ifndef SUSMAP_ERROR_HPP
#define SUSMAP_ERROR_HPP

#include <stdexcept>
#include <string>

namespace susmap {

/// Base of every error thrown by the library. `code()` is a stable
/// machine-readable tag used by the CLI in its error output.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(what), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

/// Input violates a documented precondition or type invariant.
class InvalidInput : public Error {
public:
    explicit InvalidInput(const std::string& what) : Error("invalid_input", what) {}
};

/// Request exceeds a configured size limit (exhaustive enumeration, dense evolution).
class CapabilityError : public Error {
public:
    explicit CapabilityError(const std::string& what) : Error("capability", what) {}
};

/// Numerical integration lost unitarity or failed to converge.
class IntegrationError : public Error {
public:
    explicit IntegrationError(const std::string& what) : Error("integration", what) {}
};

/// Quantity is mathematically undefined for the given data (zero variance, no ground-state hits).
class UndefinedResult : public Error {
public:
    explicit UndefinedResult(const std::string& what) : Error("undefined", what) {}
};

/// A pipeline step was invoked before the step that produces its inputs.
class MissingPrerequisite : public Error {
public:
    explicit MissingPrerequisite(const std::string& what) : Error("missing_prerequisite", what) {}
};

}  // namespace susmap

#endif  // SUSMAP_ERROR_HPP
