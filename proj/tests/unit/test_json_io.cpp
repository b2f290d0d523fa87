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

#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "qrent/errors.hpp"
#include "qrent/json_io.hpp"

namespace qrent {
namespace {

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("qrent_test_" + name);
}

TEST(JsonIo, DensityRoundTripIsExact) {
  const DensityMatrix rho = random_density(4, 3, Split{2, 2});
  const DensityMatrix back = density_from_json(to_json(rho));
  EXPECT_EQ(back.matrix(), rho.matrix());
  EXPECT_EQ(back.split(), rho.split());
}

TEST(JsonIo, PureRoundTripThroughFile) {
  const PureState psi = random_pure(6, 8, Split{2, 3});
  const auto path = temp_file("pure.json");
  save_json(to_json(psi), path);
  const auto loaded = load_state(path);
  ASSERT_TRUE(std::holds_alternative<PureState>(loaded));
  EXPECT_EQ(std::get<PureState>(loaded).amplitudes(), psi.amplitudes());
  EXPECT_LT((load_density(path).matrix() - psi.density().matrix()).cwiseAbs().maxCoeff(), 1e-16);
  std::filesystem::remove(path);
}

TEST(JsonIo, SchemaErrors) {
  EXPECT_THROW(state_from_json(Json{{"re", {1.0}}}), UsageError);
  EXPECT_THROW(density_from_json(Json{{"dim", 2}, {"re", {{1.0, 0.0}}}, {"im", {{0.0, 0.0}}}}),
               UsageError);
  EXPECT_THROW(load_state(temp_file("missing.json")), UsageError);
  const auto path = temp_file("garbage.json");
  { std::ofstream(path) << "{not json"; }
  EXPECT_THROW(load_state(path), UsageError);
  std::filesystem::remove(path);
}

TEST(JsonIo, ValidationStillApplies) {
  const Json j = {{"dim", 2}, {"split", nullptr}, {"re", {{0.5, 0.0}, {0.0, 0.6}}},
                  {"im", {{0.0, 0.0}, {0.0, 0.0}}}};
  EXPECT_THROW(density_from_json(j), DomainError);
}

}  // namespace
}  // namespace qrent
