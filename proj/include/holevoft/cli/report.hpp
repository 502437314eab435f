// Copyright 2026 The holevoft Authors
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

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "holevoft/check.hpp"
#include "holevoft/holevo.hpp"
#include "holevoft/optimize.hpp"
#include "holevoft/ttm.hpp"

namespace holevoft::cli {

inline constexpr int kReportVersion = 1;
inline constexpr int kCsvVersion = 1;

std::string sha256_hex(std::string_view bytes);

/// Shortest text that round-trips the double; used for CSV cells.
std::string format_double(double x);

nlohmann::json checks_to_json(const std::vector<Check>& checks);
nlohmann::json atoms_to_json(const ttm::DeltaDistribution& d);
nlohmann::json ft_report_to_json(const ttm::FtReport& r);
nlohmann::json jarzynski_report_to_json(const ttm::JarzynskiReport& r);
nlohmann::json holevo_report_to_json(const holevo::HolevoReport& r);
nlohmann::json optimization_to_json(const holevo::OptimizationResult& r);

struct RandomTrialRow {
  int trial = 0;
  std::uint64_t seed = 0;
  Index dim = 0;
  Index words = 0;
  Index outcomes = 0;
  std::string state_kind;
  holevo::HolevoReport report;
};

/// First line is a versioned comment, second the column names.
std::string csv_header();
std::string csv_row(const RandomTrialRow& row);

}  // namespace holevoft::cli
