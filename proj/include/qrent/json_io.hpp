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

// JSON forms of states. Both kinds share the layout
//   {"dim": n, "split": [dA, dB] | null, "re": ..., "im": ...}
// with row-major nested arrays for density matrices and flat arrays for
// pure states.

#pragma once

#include <filesystem>
#include <variant>

#include <json.hpp>

#include "qrent/qstate.hpp"

namespace qrent {

using Json = nlohmann::json;

Json to_json(const DensityMatrix& rho);
Json to_json(const PureState& psi);

DensityMatrix density_from_json(const Json& j);
PureState pure_from_json(const Json& j);

/// Detects the kind from the shape of "re".
std::variant<DensityMatrix, PureState> state_from_json(const Json& j);

/// Reads a state file; pure states are returned as their projector.
DensityMatrix load_density(const std::filesystem::path& path);
std::variant<DensityMatrix, PureState> load_state(const std::filesystem::path& path);
void save_json(const Json& j, const std::filesystem::path& path);

Json to_json(const CVector& v);
CVector cvector_from_json(const Json& j);

}  // namespace qrent
