// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace jetg {

/// Violation of a mathematical precondition (non-composable arrows,
/// non-normal subgroupoid, singular Jacobian, flow blow-up, ...).
/// Messages name the violated precondition.
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input at a serialization boundary.
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace jetg
