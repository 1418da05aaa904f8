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

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "qcl/config.hpp"

namespace qcl {

using ReportValue = std::variant<bool, std::int64_t, double, std::string>;

/// Ordered field list; keys keep insertion order in JSON and CSV.
class ReportRow {
  public:
    ReportRow& set(std::string key, ReportValue value);
    ReportRow& set(std::string key, bool value) { return set(std::move(key), ReportValue(value)); }
    ReportRow& set(std::string key, int value) { return set(std::move(key), ReportValue(std::int64_t{value})); }
    ReportRow& set(std::string key, std::int64_t value) { return set(std::move(key), ReportValue(value)); }
    ReportRow& set(std::string key, std::size_t value) {
        return set(std::move(key), ReportValue(static_cast<std::int64_t>(value)));
    }
    ReportRow& set(std::string key, double value) { return set(std::move(key), ReportValue(value)); }
    ReportRow& set(std::string key, std::string value) {
        return set(std::move(key), ReportValue(std::move(value)));
    }
    ReportRow& set(std::string key, const char* value) { return set(std::move(key), std::string(value)); }
    const std::vector<std::pair<std::string, ReportValue>>& fields() const { return fields_; }
    const ReportValue* find(std::string_view key) const;

  private:
    std::vector<std::pair<std::string, ReportValue>> fields_;
};

struct Verdict {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct ExperimentReport {
    ExperimentConfig config;
    std::string version;
    std::vector<ReportRow> rows;
    std::vector<Verdict> verdicts;
    std::string seed_provenance;
    double wall_seconds = 0.0;  ///< the only field allowed to differ between reruns

    void check(std::string name, bool pass, std::string detail = {});
    bool all_pass() const;
};

/// Single JSON object with keys config, version, rows, verdicts,
/// seed_provenance and, when `include_timing`, timing. Numbers use 17
/// significant digits; non-finite doubles become null.
std::string to_json(const ExperimentReport& report, bool include_timing = true);

/// Rows only, one header line with the union of row keys in first-seen order.
std::string to_csv(const ExperimentReport& report);

/// Writes JSON or CSV to `path`, or to stdout when `path` is empty.
/// Throws IoError when the file cannot be written.
void write_report(const ExperimentReport& report, const std::string& format,
                  const std::string& path);

/// "%.17g"
std::string format_number(double value);

}  // namespace qcl
