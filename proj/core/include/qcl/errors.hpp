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

#include <stdexcept>
#include <string>

namespace qcl {

/// Shapes, subsystem indices or register sizes that do not line up.
struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A matrix that was required to be positive semidefinite has an eigenvalue
/// below the error threshold (-1e-6).
struct NotPsdError : std::domain_error {
    using std::domain_error::domain_error;
};

/// A requested enumeration or dense representation exceeds a size cap.
struct CapExceededError : std::length_error {
    using std::length_error::length_error;
};

/// Invalid configuration value (unknown family, m <= n for commitments, ...).
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// An adversary strategy broke the fixed interaction order of a security game.
struct ProtocolError : std::logic_error {
    using std::logic_error::logic_error;
};

/// The requested experiment is not registered.
struct UnknownExperimentError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A report could not be written.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace qcl
