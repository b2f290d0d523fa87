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

// Brute-force upper bounds on min_{sigma separable} S_f(rho || sigma).
//
// sigma ranges over mixtures of k product pure states. Each restart runs
// block-coordinate Nelder-Mead: one block is a single component's local
// angles plus its weight, and the remaining components are rescaled so the
// weights stay on the simplex. Every candidate is separable by construction,
// so every reported value is an upper bound on the entanglement.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "qrent/fgen.hpp"
#include "qrent/json_io.hpp"
#include "qrent/qre.hpp"
#include "qrent/qstate.hpp"

namespace qrent {

struct ProductEnsemble {
  int dim_a = 0;
  int dim_b = 0;
  std::vector<double> weights;
  std::vector<CVector> locals_a;
  std::vector<CVector> locals_b;

  int size() const { return static_cast<int>(weights.size()); }
  /// Weights nonnegative and summing to 1, unit-norm locals of the right
  /// dimensions (tolerance 1e-12). UsageError/DomainError otherwise.
  void validate() const;
  /// sum_i w_i |a_i b_i><a_i b_i| with split (dim_a, dim_b).
  DensityMatrix assemble() const;
};

Json to_json(const ProductEnsemble& e);
ProductEnsemble ensemble_from_json(const Json& j);

/// sum_j w_j |a_j b_j><a_j b_j| from basis columns; zero weights are kept.
ProductEnsemble diagonal_ensemble(std::span<const double> weights, const CMatrix& basis_a,
                                  const CMatrix& basis_b);

/// Hyperspherical parametrization of a unit vector in C^d by d-1 polar
/// angles followed by d-1 phases. The inverse is exact up to global phase.
CVector local_from_angles(std::span<const double> angles, int d);
std::vector<double> angles_from_local(const CVector& v);

struct OptimizerConfig {
  int restarts = 50;
  /// Nelder-Mead iterations per restart, summed over blocks.
  int max_iters = 2000;
  /// Restart stops once the block step size drops below this.
  double tol = 1e-9;
  std::uint64_t seed = 0;
  /// Component count; (dA dB)^2 when unset.
  std::optional<int> components;

  void validate() const;
};

/// Stand-in for +inf objective values during the search.
inline constexpr double kInfinitePenalty = 1e6;

struct RestartOutcome {
  /// Exact objective of the final ensemble (may be +inf).
  ExtendedReal value = 0.0;
  ExtendedReal initial_value = 0.0;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;  // step size fell below tol
  bool warm = false;
};

struct MinimizeResult {
  ExtendedReal value = kPlusInfinity;
  ProductEnsemble ensemble;
  int best_restart = -1;
  std::vector<RestartOutcome> restarts;

  /// Best value among cold (random) restarts; +inf when there are none.
  ExtendedReal best_cold_value() const;
  /// Value of the warm restart, when one was supplied.
  std::optional<ExtendedReal> warm_value() const;
};

/// Deterministic in cfg.seed. Runs cfg.restarts cold restarts from
/// Haar-random locals with uniform weights. A warm start, when given, runs
/// first as an extra restart 0, padded with zero-weight random components up
/// to k. Requires a_f = 0 and a split on rho.
MinimizeResult minimize(const DensityMatrix& rho, const GeneratorFunction& f,
                        const OptimizerConfig& cfg,
                        const std::optional<ProductEnsemble>& warm_start = std::nullopt);

}  // namespace qrent
