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

// Seeded property suites over the generator, divergence and closest-state
// modules. Each check reports the worst observed quantity against its bound.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qrent {

enum class Suite { Functions, Divergence, Theorems, All };
Suite parse_suite(const std::string& name);
const char* to_string(Suite s);

struct InvariantCheck {
  std::string suite;
  std::string name;
  /// Worst-case observed value (an error, or a quantity that must stay
  /// above a bound).
  double observed = 0.0;
  double bound = 0.0;
  /// Distance to failure; nonnegative iff the check passed.
  double margin = 0.0;
  int trials = 0;
  bool passed = false;
};

struct VerifyReport {
  std::vector<InvariantCheck> checks;

  bool passed() const;
};

inline constexpr int kDivergenceTrials = 100;

VerifyReport verify_functions(std::uint64_t seed);
VerifyReport verify_divergence(std::uint64_t seed, int trials = kDivergenceTrials);
VerifyReport verify_theorems(std::uint64_t seed);
VerifyReport run_suite(Suite suite, std::uint64_t seed);

}  // namespace qrent
