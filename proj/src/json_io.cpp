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

#include "qrent/json_io.hpp"

#include <fstream>
#include <sstream>
#include <string>

#include "qrent/errors.hpp"

namespace qrent {

namespace {

Json split_json(const std::optional<Split>& s) {
  if (!s) return nullptr;
  return Json::array({s->a, s->b});
}

std::optional<Split> split_from(const Json& j) {
  if (!j.contains("split") || j.at("split").is_null()) return std::nullopt;
  const Json& s = j.at("split");
  if (!s.is_array() || s.size() != 2) throw UsageError("\"split\" must be [dA, dB] or null");
  return Split{s.at(0).get<int>(), s.at(1).get<int>()};
}

void require_fields(const Json& j) {
  if (!j.is_object() || !j.contains("re") || !j.contains("im"))
    throw UsageError("state JSON needs \"re\" and \"im\" fields");
}

int declared_dim(const Json& j, int observed) {
  if (j.contains("dim")) {
    const int d = j.at("dim").get<int>();
    if (d != observed) throw UsageError("\"dim\" does not match the array shape");
  }
  return observed;
}

}  // namespace

Json to_json(const CVector& v) {
  Json re = Json::array(), im = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    re.push_back(v(i).real());
    im.push_back(v(i).imag());
  }
  return Json{{"re", re}, {"im", im}};
}

CVector cvector_from_json(const Json& j) {
  require_fields(j);
  const auto re = j.at("re").get<std::vector<double>>();
  const auto im = j.at("im").get<std::vector<double>>();
  if (re.size() != im.size()) throw UsageError("\"re\" and \"im\" lengths differ");
  CVector v(static_cast<Eigen::Index>(re.size()));
  for (std::size_t i = 0; i < re.size(); ++i) v(static_cast<Eigen::Index>(i)) = Complex(re[i], im[i]);
  return v;
}

Json to_json(const DensityMatrix& rho) {
  Json re = Json::array(), im = Json::array();
  for (int i = 0; i < rho.dim(); ++i) {
    Json rr = Json::array(), ii = Json::array();
    for (int k = 0; k < rho.dim(); ++k) {
      rr.push_back(rho.matrix()(i, k).real());
      ii.push_back(rho.matrix()(i, k).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ii));
  }
  return Json{{"dim", rho.dim()}, {"split", split_json(rho.split())}, {"re", re}, {"im", im}};
}

Json to_json(const PureState& psi) {
  Json j = to_json(psi.amplitudes());
  j["dim"] = psi.dim();
  j["split"] = split_json(psi.split());
  return j;
}

DensityMatrix density_from_json(const Json& j) {
  require_fields(j);
  const auto re = j.at("re").get<std::vector<std::vector<double>>>();
  const auto im = j.at("im").get<std::vector<std::vector<double>>>();
  const int n = declared_dim(j, static_cast<int>(re.size()));
  if (static_cast<int>(im.size()) != n) throw UsageError("\"re\" and \"im\" shapes differ");
  CMatrix m(n, n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(re[i].size()) != n || static_cast<int>(im[i].size()) != n)
      throw UsageError("density matrix rows must have length dim");
    for (int k = 0; k < n; ++k) m(i, k) = Complex(re[i][k], im[i][k]);
  }
  return DensityMatrix(std::move(m), split_from(j));
}

PureState pure_from_json(const Json& j) {
  CVector v = cvector_from_json(j);
  declared_dim(j, static_cast<int>(v.size()));
  return PureState(std::move(v), split_from(j));
}

std::variant<DensityMatrix, PureState> state_from_json(const Json& j) {
  require_fields(j);
  const Json& re = j.at("re");
  if (!re.is_array() || re.empty()) throw UsageError("\"re\" must be a non-empty array");
  if (re.at(0).is_array()) return density_from_json(j);
  return pure_from_json(j);
}

std::variant<DensityMatrix, PureState> load_state(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open state file " + path.string());
  Json j;
  try {
    in >> j;
  } catch (const Json::exception& e) {
    throw UsageError("malformed JSON in " + path.string() + ": " + e.what());
  }
  try {
    return state_from_json(j);
  } catch (const Json::exception& e) {
    throw UsageError("bad state schema in " + path.string() + ": " + e.what());
  }
}

DensityMatrix load_density(const std::filesystem::path& path) {
  auto s = load_state(path);
  if (auto* p = std::get_if<PureState>(&s)) return p->density();
  return std::get<DensityMatrix>(std::move(s));
}

void save_json(const Json& j, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

}  // namespace qrent
