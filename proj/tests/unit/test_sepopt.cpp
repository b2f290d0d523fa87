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

#include <cmath>

#include <gtest/gtest.h>

#include "qrent/closest.hpp"
#include "qrent/errors.hpp"
#include "qrent/sepopt.hpp"

namespace qrent {
namespace {

ProductEnsemble random_ensemble(int da, int db, int k, std::uint64_t seed) {
  Rng rng(seed);
  ProductEnsemble e{da, db, {}, {}, {}};
  double total = 0.0;
  for (int i = 0; i < k; ++i) {
    e.weights.push_back(std::uniform_real_distribution<double>(0.0, 1.0)(rng));
    total += e.weights.back();
    e.locals_a.push_back(haar_vector(da, rng));
    e.locals_b.push_back(haar_vector(db, rng));
  }
  for (double& w : e.weights) w /= total;
  return e;
}

DensityMatrix with_split(const PureState& psi) {
  return psi.density().with_split(psi.require_split());
}

TEST(Ensemble, AssembleExamples) {
  const CMatrix id = CMatrix::Identity(2, 2);
  const double one[] = {1.0};
  const DensityMatrix s00 = diagonal_ensemble(one, id, id).assemble();
  EXPECT_EQ(s00.matrix()(0, 0), Complex(1.0));
  EXPECT_NEAR(s00.matrix().cwiseAbs().sum(), 1.0, 1e-15);

  const double half[] = {0.5, 0.5};
  const DensityMatrix mix = diagonal_ensemble(half, id, id).assemble();
  CMatrix expected = CMatrix::Zero(4, 4);
  expected(0, 0) = expected(3, 3) = 0.5;
  EXPECT_LT((mix.matrix() - expected).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_EQ(mix.require_split(), (Split{2, 2}));
}

TEST(Ensemble, RandomEnsemblesArePpt) {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const DensityMatrix sigma = random_ensemble(2, 2, 1 + seed % 16, seed).assemble();
    EXPECT_TRUE(is_ppt(sigma).ppt) << seed;
  }
}

TEST(Ensemble, Validation) {
  ProductEnsemble e = random_ensemble(2, 3, 3, 1);
  e.weights[0] += 0.1;
  EXPECT_THROW(e.validate(), DomainError);
  e = random_ensemble(2, 3, 3, 1);
  e.locals_b[1] *= 2.0;
  EXPECT_THROW(e.validate(), DomainError);
  e = random_ensemble(2, 3, 3, 1);
  e.locals_a.pop_back();
  EXPECT_THROW(e.validate(), UsageError);
}

TEST(Ensemble, JsonRoundTrip) {
  const ProductEnsemble e = random_ensemble(2, 3, 4, 9);
  const ProductEnsemble back = ensemble_from_json(to_json(e));
  EXPECT_EQ(back.weights, e.weights);
  for (int i = 0; i < e.size(); ++i) {
    EXPECT_EQ(back.locals_a[i], e.locals_a[i]);
    EXPECT_EQ(back.locals_b[i], e.locals_b[i]);
  }
  EXPECT_THROW(ensemble_from_json(Json{{"dims", {2}}}), UsageError);
}

TEST(Parametrization, RoundTripUpToGlobalPhase) {
  Rng rng(4);
  for (int d = 1; d <= 4; ++d)
    for (int trial = 0; trial < 10; ++trial) {
      const CVector v = haar_vector(d, rng);
      const CVector back = local_from_angles(angles_from_local(v), d);
      EXPECT_NEAR(back.norm(), 1.0, 1e-14);
      EXPECT_NEAR(fidelity(back, v), 1.0, 1e-13);
    }
  const CVector e2 = CVector::Unit(3, 2);
  EXPECT_NEAR(fidelity(local_from_angles(angles_from_local(e2), 3), e2), 1.0, 1e-15);
  EXPECT_THROW(local_from_angles(std::vector<double>{0.1}, 3), UsageError);
}

TEST(Minimize, SeparableInputReachesZero) {
  CMatrix m = CMatrix::Zero(4, 4);
  m(0, 0) = m(3, 3) = 0.5;
  const DensityMatrix rho(m, Split{2, 2});
  OptimizerConfig cfg;
  cfg.restarts = 5;
  const MinimizeResult r = minimize(rho, parse_generator("log"), cfg);
  EXPECT_LE(r.value, 1e-6);
  EXPECT_GE(r.value, -1e-12);
}

TEST(Minimize, BellWithNegLogColdStarts) {
  OptimizerConfig cfg;
  cfg.seed = 11;
  const MinimizeResult r = minimize(with_split(maximally_entangled(2)), parse_generator("log"), cfg);
  EXPECT_EQ(r.restarts.size(), 50u);
  EXPECT_FALSE(r.warm_value().has_value());
  EXPECT_GE(r.value, std::log(2.0) - 1e-6);
  EXPECT_LE(r.value, std::log(2.0) + 1e-3);
  EXPECT_TRUE(is_ppt(r.ensemble.assemble()).ppt);
}

TEST(Minimize, QubitPowerEntropyWithWarmStart) {
  const GeneratorFunction f = make_builtin("power_entropy", {0.5});
  const ClosestResult c = closest_two_qubit(0.75, f);
  OptimizerConfig cfg;
  cfg.seed = 3;
  const MinimizeResult r =
      minimize(with_split(c.state()), f, cfg, diagonal_ensemble(c.q, c.basis_a, c.basis_b));
  EXPECT_EQ(r.restarts.size(), 51u);
  EXPECT_TRUE(r.restarts.front().warm);
  EXPECT_NEAR(*r.warm_value(), 0.209431, 1e-6);
  EXPECT_NEAR(r.value, 0.209431, 1e-3);
  EXPECT_GE(r.value, c.entanglement - 1e-6);
  EXPECT_GE(r.best_cold_value(), c.entanglement - 1e-6);
}

TEST(Minimize, DeterministicInSeed) {
  OptimizerConfig cfg;
  cfg.restarts = 3;
  cfg.max_iters = 300;
  cfg.seed = 8;
  const DensityMatrix rho = with_split(random_pure(4, 2, Split{2, 2}));
  const GeneratorFunction f = parse_generator("tsallis:0.5");
  const MinimizeResult a = minimize(rho, f, cfg);
  const MinimizeResult b = minimize(rho, f, cfg);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.best_restart, b.best_restart);
  cfg.seed = 9;
  EXPECT_NE(minimize(rho, f, cfg).value, a.value);
}

TEST(Minimize, MonotoneWithinRestart) {
  OptimizerConfig cfg;
  cfg.restarts = 4;
  cfg.max_iters = 200;
  const MinimizeResult r =
      minimize(with_split(random_pure(6, 5, Split{2, 3})), parse_generator("power:0.5"), cfg);
  for (const auto& o : r.restarts) {
    EXPECT_LE(o.value, o.initial_value + 1e-12);
    EXPECT_LE(o.iterations, cfg.max_iters);
  }
}

TEST(Minimize, DoublingComponentsDoesNotBeatTheorem) {
  const GeneratorFunction f = parse_generator("log");
  const ClosestResult c = closest_maxent(2, f);
  const auto warm = diagonal_ensemble(c.q, c.basis_a, c.basis_b);
  OptimizerConfig cfg;
  cfg.restarts = 5;
  const MinimizeResult base = minimize(with_split(c.state()), f, cfg, warm);
  cfg.components = 32;
  const MinimizeResult doubled = minimize(with_split(c.state()), f, cfg, warm);
  EXPECT_GE(doubled.value, base.value - 1e-6);
}

TEST(Minimize, RejectsBadInput) {
  OptimizerConfig cfg;
  cfg.restarts = 0;
  const DensityMatrix rho = with_split(maximally_entangled(2));
  EXPECT_THROW(minimize(rho, parse_generator("log"), cfg), UsageError);
  EXPECT_THROW(minimize(DensityMatrix::maximally_mixed(4), parse_generator("log"), {}), UsageError);
  const ProductEnsemble wrong = random_ensemble(3, 3, 2, 1);
  EXPECT_THROW(minimize(rho, parse_generator("log"), {}, wrong), UsageError);
}

}  // namespace
}  // namespace qrent
