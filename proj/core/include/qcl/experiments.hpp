// Copyright 2026 The qclab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "qcl/config.hpp"
#include "qcl/report.hpp"

namespace qcl {

/// Registered experiment names, in documentation order.
const std::vector<std::string>& experiment_names();
bool is_experiment(std::string_view name);

/// Commitment and SDCID experiments, which need m > n.
bool requires_expanding_generator(std::string_view name);

/// Runs one experiment. Every non-timing field of the report is a pure
/// function of `config`. Throws UnknownExperimentError, ConfigError,
/// CapExceededError or DimensionError.
ExperimentReport run_experiment(const ExperimentConfig& config);

/// Library version string.
std::string_view version();

/// Base seed used by sub-run `index` inside one experiment.
std::uint64_t sub_seed(std::uint64_t base, std::uint64_t index);

}  // namespace qcl
