// Copyright 2026 The covelim Authors
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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace covelim {

enum class ErrorCode {
  invalid_parameter,
  size_limit,
  invalid_subgroup,
  unsupported_group,
  multiplicity_violation,
  seed_norm_violation,
  completeness_failure,
  invalid_partition,
  no_exact_solution,
  exact_regime,
  numerical_failure,
  invalid_density_matrix,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_parameter: return "invalid-parameter";
    case ErrorCode::size_limit: return "size-limit";
    case ErrorCode::invalid_subgroup: return "invalid-subgroup";
    case ErrorCode::unsupported_group: return "unsupported-group";
    case ErrorCode::multiplicity_violation: return "multiplicity-violation";
    case ErrorCode::seed_norm_violation: return "seed-norm-violation";
    case ErrorCode::completeness_failure: return "completeness-failure";
    case ErrorCode::invalid_partition: return "invalid-partition";
    case ErrorCode::no_exact_solution: return "no-exact-solution";
    case ErrorCode::exact_regime: return "exact-regime";
    case ErrorCode::numerical_failure: return "numerical-failure";
    case ErrorCode::invalid_density_matrix: return "invalid-density-matrix";
  }
  return "unknown";
}

/// Exception carrying a machine-readable error code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace covelim
