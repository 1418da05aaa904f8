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

#include "qcl/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "qcl/errors.hpp"

namespace qcl {

namespace {

std::string quote(const std::string& s) { return nlohmann::json(s).dump(); }

std::string json_value(const ReportValue& value) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, bool>) {
                return v ? "true" : "false";
            } else if constexpr (std::is_same_v<T, std::int64_t>) {
                return std::to_string(v);
            } else if constexpr (std::is_same_v<T, double>) {
                return std::isfinite(v) ? format_number(v) : "null";
            } else {
                return quote(v);
            }
        },
        value);
}

std::string csv_cell(const ReportValue& value) {
    if (const auto* s = std::get_if<std::string>(&value)) {
        if (s->find_first_of(",\"\n") == std::string::npos) {
            return *s;
        }
        std::string out = "\"";
        for (char c : *s) {
            out += c;
            if (c == '"') out += '"';
        }
        return out + "\"";
    }
    return json_value(value);
}

std::string config_json(const ExperimentConfig& c) {
    std::ostringstream out;
    out << "{\"experiment\":" << quote(c.experiment)
        << ",\"generator\":" << quote(std::string(family_name(c.generator)))
        << ",\"n\":" << c.n << ",\"m\":" << c.m << ",\"t\":" << c.t
        << ",\"trials\":" << c.trials << ",\"seed\":" << c.seed
        << ",\"format\":" << quote(c.format) << ",\"adversary\":" << quote(c.adversary)
        << ",\"ancilla\":" << (c.ancilla ? "true" : "false")
        << ",\"threshold\":" << (c.threshold ? format_number(*c.threshold) : "null")
        << ",\"out\":" << quote(c.out) << "}";
    return out.str();
}

}  // namespace

std::string format_number(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

ReportRow& ReportRow::set(std::string key, ReportValue value) {
    for (auto& [k, v] : fields_) {
        if (k == key) {
            v = std::move(value);
            return *this;
        }
    }
    fields_.emplace_back(std::move(key), std::move(value));
    return *this;
}

const ReportValue* ReportRow::find(std::string_view key) const {
    for (const auto& [k, v] : fields_) {
        if (k == key) {
            return &v;
        }
    }
    return nullptr;
}

void ExperimentReport::check(std::string name, bool pass, std::string detail) {
    verdicts.push_back(Verdict{std::move(name), pass, std::move(detail)});
}

bool ExperimentReport::all_pass() const {
    return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.pass; });
}

std::string to_json(const ExperimentReport& report, bool include_timing) {
    std::ostringstream out;
    out << "{\n  \"config\": " << config_json(report.config) << ",\n";
    out << "  \"version\": " << quote(report.version) << ",\n";
    out << "  \"rows\": [";
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
        out << (i ? ",\n    {" : "\n    {");
        const auto& fields = report.rows[i].fields();
        for (std::size_t j = 0; j < fields.size(); ++j) {
            out << (j ? "," : "") << quote(fields[j].first) << ":" << json_value(fields[j].second);
        }
        out << "}";
    }
    out << (report.rows.empty() ? "],\n" : "\n  ],\n");
    out << "  \"verdicts\": [";
    for (std::size_t i = 0; i < report.verdicts.size(); ++i) {
        const auto& v = report.verdicts[i];
        out << (i ? ",\n    " : "\n    ") << "{\"name\":" << quote(v.name)
            << ",\"pass\":" << (v.pass ? "true" : "false") << ",\"detail\":" << quote(v.detail)
            << "}";
    }
    out << (report.verdicts.empty() ? "],\n" : "\n  ],\n");
    out << "  \"seed_provenance\": " << quote(report.seed_provenance);
    if (include_timing) {
        out << ",\n  \"timing\": {\"wall_seconds\":" << format_number(report.wall_seconds) << "}";
    }
    out << "\n}\n";
    return out.str();
}

std::string to_csv(const ExperimentReport& report) {
    std::vector<std::string> header;
    for (const auto& row : report.rows) {
        for (const auto& [key, value] : row.fields()) {
            if (std::find(header.begin(), header.end(), key) == header.end()) {
                header.push_back(key);
            }
        }
    }
    std::ostringstream out;
    for (std::size_t i = 0; i < header.size(); ++i) {
        out << (i ? "," : "") << header[i];
    }
    out << "\n";
    for (const auto& row : report.rows) {
        for (std::size_t i = 0; i < header.size(); ++i) {
            out << (i ? "," : "");
            if (const ReportValue* v = row.find(header[i])) {
                out << csv_cell(*v);
            }
        }
        out << "\n";
    }
    return out.str();
}

void write_report(const ExperimentReport& report, const std::string& format,
                  const std::string& path) {
    if (format != "json" && format != "csv") {
        throw ConfigError("unknown report format '" + format + "'");
    }
    const std::string text = format == "json" ? to_json(report) : to_csv(report);
    if (path.empty()) {
        std::cout << text << std::flush;
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open '" + path + "' for writing");
    }
    out << text;
    out.flush();
    if (!out) {
        throw IoError("failed writing '" + path + "'");
    }
}

}  // namespace qcl
