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

#include <algorithm>
#include <cmath>

#include <gtest/gtest.h>
#include <unsupported/Eigen/MatrixFunctions>

#include "qrent/errors.hpp"
#include "qrent/qre.hpp"

namespace qrent {
namespace {

DensityMatrix diag_state(std::vector<double> xs) {
  return DensityMatrix(Eigen::Map<RVector>(xs.data(), xs.size()).cast<Complex>().asDiagonal());
}

// Tr rho (log rho - log sigma) through the matrix logarithm.
double umegaki_oracle(const DensityMatrix& rho, const DensityMatrix& sigma) {
  const CMatrix lr = rho.matrix().log();
  const CMatrix ls = sigma.matrix().log();
  return (rho.matrix() * (lr - ls)).trace().real();
}

// Tr rho^a sigma^{1-a} through the matrix power.
double overlap_oracle(const DensityMatrix& rho, const DensityMatrix& sigma, double a) {
  const CMatrix x = rho.matrix().pow(a);
  const CMatrix y = sigma.matrix().pow(1.0 - a);
  return (x * y).trace().real();
}

TEST(Spectral, BellAgainstMaximallyMixed) {
  const DensityMatrix bell = maximally_entangled(2).density();
  const DensityMatrix mixed = DensityMatrix::maximally_mixed(4);
  EXPECT_NEAR(qre_spectral(bell, mixed, parse_generator("log")), std::log(4.0), 1e-12);
  EXPECT_NEAR(qre_spectral(bell, mixed, parse_generator("power_entropy:0.5")), 0.5, 1e-12);
}

TEST(Spectral, SelfDivergenceVanishes) {
  for (const auto& s : builtin_samples()) {
    const DensityMatrix rho = random_density(3, 4);
    EXPECT_NEAR(qre_spectral(rho, rho, parse_generator(s)), 0.0, 1e-12) << s;
  }
}

TEST(Spectral, UmegakiMatchesMatrixLogarithm) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const int d = 2 + static_cast<int>(seed % 3);
    const DensityMatrix rho = random_density(d, 2 * seed);
    const DensityMatrix sigma = random_density(d, 2 * seed + 1);
    EXPECT_NEAR(umegaki(rho, sigma), umegaki_oracle(rho, sigma), 1e-10);
  }
}

TEST(Spectral, AlphaFamiliesMatchMatrixPowers) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const DensityMatrix rho = random_density(3, 100 + seed);
    const DensityMatrix sigma = random_density(3, 200 + seed);
    for (double a : {0.3, 0.5, 0.7}) {
      const double ov = overlap_oracle(rho, sigma, a);
      EXPECT_NEAR(alpha_divergence(rho, sigma, a), 1.0 - ov, 1e-10);
      EXPECT_NEAR(tsallis_relative(rho, sigma, a), (1.0 - ov) / (1.0 - a), 1e-10);
      EXPECT_NEAR(renyi_relative(rho, sigma, a), std::log(ov) / (a - 1.0), 1e-10);
      EXPECT_NEAR(divergence(rho, sigma, "renyi:" + std::to_string(a)), std::log(ov) / (a - 1.0),
                  1e-10);
    }
  }
}

TEST(Spectral, SupportHandling) {
  const DensityMatrix zero = diag_state({1.0, 0.0});
  const DensityMatrix one = diag_state({0.0, 1.0});
  const DensityMatrix half = diag_state({0.5, 0.5});
  EXPECT_EQ(qre_spectral(zero, one, parse_generator("log")), kPlusInfinity);
  // f(0+) = 1 for power_entropy.
  EXPECT_NEAR(qre_spectral(zero, one, parse_generator("power_entropy:0.5")), 1.0, 1e-15);
  EXPECT_NEAR(qre_spectral(zero, half, parse_generator("log")), std::log(2.0), 1e-15);
  // Singular sigma covering rho's support stays finite.
  EXPECT_NEAR(qre_spectral(zero, zero, parse_generator("log")), 0.0, 1e-15);
  EXPECT_EQ(renyi_relative(zero, one, 0.5), kPlusInfinity);
}

TEST(Spectral, DimensionMismatch) {
  EXPECT_THROW(qre_spectral(random_density(2, 1), random_density(3, 1), parse_generator("log")),
               UsageError);
  EXPECT_THROW(divergence(random_density(2, 1), random_density(2, 2), "bogus"), UsageError);
}

TEST(Modular, SpectrumIsEigenvalueRatios) {
  const DensityMatrix a = diag_state({0.2, 0.8});
  const DensityMatrix b = diag_state({0.6, 0.4});
  const ModularOperator delta(a, b);
  std::vector<double> got(delta.spectrum().eigenvalues.data(),
                          delta.spectrum().eigenvalues.data() + 4);
  std::vector<double> want{0.2 / 0.6, 0.2 / 0.4, 0.8 / 0.6, 0.8 / 0.4};
  std::sort(got.begin(), got.end());
  std::sort(want.begin(), want.end());
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(got[i], want[i], 1e-14);
}

TEST(Modular, ApplyIsSandwich) {
  const DensityMatrix a = random_density(3, 1);
  const DensityMatrix b = random_density(3, 2);
  const CMatrix x = CMatrix::Random(3, 3);
  const CMatrix expected = a.matrix() * x * b.matrix().inverse();
  EXPECT_LT((ModularOperator(a, b).apply(x) - expected).norm() / expected.norm(), 1e-12);
}

TEST(Modular, AgreesWithSpectral) {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    const int d = 2 + static_cast<int>(seed % 3);
    const DensityMatrix rho = random_density(d, 300 + seed);
    const DensityMatrix sigma = random_density(d, 400 + seed);
    for (const auto& s : builtin_samples()) {
      const GeneratorFunction f = parse_generator(s);
      EXPECT_NEAR(qre_modular(rho, sigma, f), qre_spectral(rho, sigma, f), 1e-9) << s;
    }
  }
}

TEST(Modular, RejectsSingularStates) {
  EXPECT_THROW(qre_modular(diag_state({1.0, 0.0}), diag_state({0.5, 0.5}), parse_generator("log")),
               DomainError);
}

TEST(Properties, DataProcessingUnderPartialTrace) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const DensityMatrix rho = random_density(4, 500 + seed, Split{2, 2});
    const DensityMatrix sigma = random_density(4, 600 + seed, Split{2, 2});
    for (const auto& s : builtin_samples()) {
      const GeneratorFunction f = parse_generator(s);
      const double full = qre_spectral(rho, sigma, f);
      const double reduced = qre_spectral(partial_trace(rho, Subsystem::B),
                                          partial_trace(sigma, Subsystem::B), f);
      EXPECT_LE(reduced, full + 1e-10) << s;
      EXPECT_GE(full, -1e-12);
    }
  }
}

TEST(Properties, PureStateReducesToExpectation) {
  // S_f(|psi><psi| || sigma) = <psi| f(sigma) |psi> for full-rank sigma.
  const PureState psi = random_pure(3, 7);
  const DensityMatrix sigma = random_density(3, 8);
  const GeneratorFunction f = parse_generator("power:0.3");
  const SpectralDecomposition sd = state_spectrum(sigma);
  double expected = 0.0;
  for (int k = 0; k < 3; ++k)
    expected += f(sd.eigenvalues(k)) * std::norm(sd.eigenvectors.col(k).dot(psi.amplitudes()));
  EXPECT_NEAR(qre_spectral(psi.density(), sigma, f), expected, 1e-12);
}

}  // namespace
}  // namespace qrent
