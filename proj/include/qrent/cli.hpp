// Copyright 2026 The qrent Authors
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

// Command-line front end: `qrent entropy | closest | table | verify`.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "qrent/json_io.hpp"

namespace qrent {

enum ExitCode : int {
  kExitOk = 0,
  kExitVerificationFailure = 1,
  kExitInputError = 2,
  kExitHypothesisViolation = 3,
};

struct ReportFlag {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Everything one command produced. Exit code is 0 iff every flag passed.
struct RunReport {
  std::string command;
  Json inputs = Json::object();
  Json outputs = Json::object();
  std::vector<ReportFlag> flags;
  double wall_time = 0.0;

  bool passed() const;
  Json to_json() const;
};

/// Fixed notation with `precision` decimals for moderate magnitudes,
/// scientific otherwise; "inf" for +inf.
std::string format_number(double x, int precision);

/// Runs the tool on argv-style arguments (without the program name).
/// Never throws; errors are reported on `err` and mapped to exit codes.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qrent
