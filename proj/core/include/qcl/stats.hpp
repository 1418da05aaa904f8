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

#include <cmath>
#include <cstddef>
#include <span>

namespace qcl {

/// Sample mean with its standard error (sample standard deviation / sqrt(N)).
struct Estimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t count = 0;
};

inline Estimate estimate(std::span<const double> samples) {
    Estimate out;
    out.count = samples.size();
    if (samples.empty()) {
        return out;
    }
    double sum = 0.0;
    for (double v : samples) {
        sum += v;
    }
    out.mean = sum / static_cast<double>(samples.size());
    if (samples.size() > 1) {
        double ss = 0.0;
        for (double v : samples) {
            ss += (v - out.mean) * (v - out.mean);
        }
        const double variance = ss / static_cast<double>(samples.size() - 1);
        out.std_error = std::sqrt(variance / static_cast<double>(samples.size()));
    }
    return out;
}

}  // namespace qcl
