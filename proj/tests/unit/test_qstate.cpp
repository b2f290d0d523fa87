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

#include "qrent/errors.hpp"
#include "qrent/qstate.hpp"

namespace qrent {
namespace {

CMatrix diag(std::initializer_list<double> xs) {
  RVector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v.cast<Complex>().asDiagonal();
}

TEST(DensityMatrix, AcceptsValidStates) {
  EXPECT_NO_THROW(DensityMatrix(diag({0.5, 0.5})));
  EXPECT_NO_THROW(DensityMatrix::maximally_mixed(4, Split{2, 2}));
}

TEST(DensityMatrix, RejectsInvalidInput) {
  EXPECT_THROW(DensityMatrix(CMatrix::Zero(2, 3)), UsageError);
  EXPECT_THROW(DensityMatrix(diag({0.5, 0.6})), DomainError);
  EXPECT_THROW(DensityMatrix(diag({1.5, -0.5})), DomainError);
  CMatrix m = diag({0.5, 0.5});
  m(0, 1) = 0.1;
  EXPECT_THROW(DensityMatrix{m}, DomainError);
  EXPECT_THROW(DensityMatrix(diag({0.5, 0.5}), Split{3, 1}), UsageError);
}

TEST(DensityMatrix, RequireSplit) {
  EXPECT_THROW(DensityMatrix(diag({0.5, 0.5})).require_split(), UsageError);
  EXPECT_EQ(DensityMatrix::maximally_mixed(6, Split{2, 3}).require_split(), (Split{2, 3}));
}

TEST(PureState, NormalizationAndBasis) {
  EXPECT_THROW(PureState(CVector::Ones(2)), DomainError);
  const PureState psi = PureState::normalized(CVector::Ones(2));
  EXPECT_NEAR(psi.amplitudes().norm(), 1.0, 1e-15);
  EXPECT_THROW(PureState::normalized(CVector::Zero(3)), DomainError);
  EXPECT_EQ(PureState::basis(3, 2).amplitudes()(2), Complex(1.0));
}

TEST(TensorProduct, KroneckerOrdering) {
  // |1> (x) |0> on 2 x 3 is basis index 1 * 3 + 0.
  const PureState v = tensor_product(PureState::basis(2, 1), PureState::basis(3, 0));
  EXPECT_EQ(v.amplitudes()(3), Complex(1.0));
  EXPECT_EQ(v.require_split(), (Split{2, 3}));
}

TEST(PartialTrace, ProductStatesFactor) {
  const DensityMatrix a = random_density(2, 1);
  const DensityMatrix b = random_density(3, 2);
  const DensityMatrix ab = tensor_product(a, b);
  EXPECT_LT((partial_trace(ab, Subsystem::B).matrix() - a.matrix()).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_LT((partial_trace(ab, Subsystem::A).matrix() - b.matrix()).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(PartialTrace, BellMarginalIsMaximallyMixed) {
  for (int d = 2; d <= 4; ++d) {
    const DensityMatrix rho = maximally_entangled(d).density();
    const DensityMatrix m = partial_trace(rho.with_split(Split{d, d}), Subsystem::A);
    EXPECT_LT((m.matrix() - CMatrix::Identity(d, d) / d).cwiseAbs().maxCoeff(), 1e-15);
  }
}

TEST(Schmidt, ReconstructsRandomStates) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Split s{2 + static_cast<int>(seed % 3), 2 + static_cast<int>((seed / 3) % 3)};
    const PureState psi = random_pure(s.dim(), seed, s);
    const SchmidtForm f = schmidt_decompose(psi);
    EXPECT_NEAR(f.coefficients.sum(), 1.0, 1e-12);
    for (Eigen::Index k = 1; k < f.coefficients.size(); ++k)
      EXPECT_GE(f.coefficients(k - 1), f.coefficients(k));
    EXPECT_LT((f.reconstruct() - psi.amplitudes()).norm(), 1e-12);
    EXPECT_LT((f.basis_a.adjoint() * f.basis_a - CMatrix::Identity(s.a, s.a)).norm(), 1e-12);
    EXPECT_LT((f.basis_b.adjoint() * f.basis_b - CMatrix::Identity(s.b, s.b)).norm(), 1e-12);
  }
}

TEST(Schmidt, CoefficientsMatchMarginalSpectrum) {
  const PureState psi = random_pure(9, 11, Split{3, 3});
  const SchmidtForm f = schmidt_decompose(psi);
  const SpectralDecomposition marginal =
      state_spectrum(partial_trace(psi.density(), Subsystem::B));
  EXPECT_LT((marginal.eigenvalues - f.coefficients).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Schmidt, KnownState) {
  const double p[] = {0.7, 0.3};
  const SchmidtForm f = schmidt_decompose(schmidt_state(p));
  EXPECT_NEAR(f.coefficients(0), 0.7, 1e-14);
  EXPECT_NEAR(f.coefficients(1), 0.3, 1e-14);
}

TEST(Spectrum, DescendingAndClamped) {
  const SpectralDecomposition sd = state_spectrum(DensityMatrix(diag({0.25, 0.75, 0.0})));
  EXPECT_DOUBLE_EQ(sd.eigenvalues(0), 0.75);
  EXPECT_EQ(sd.eigenvalues(2), 0.0);
  EXPECT_LT((sd.reconstruct() - diag({0.25, 0.75, 0.0})).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_THROW(eig_hermitian(CMatrix::Random(3, 3)), UsageError);
}

TEST(Random, DeterministicInSeed) {
  EXPECT_EQ(random_density(3, 5).matrix(), random_density(3, 5).matrix());
  EXPECT_NE(random_density(3, 5).matrix(), random_density(3, 6).matrix());
  EXPECT_EQ(random_pure(4, 9).amplitudes(), random_pure(4, 9).amplitudes());
}

TEST(Random, UnitaryAndIsometry) {
  Rng rng(3);
  const CMatrix u = random_unitary(4, rng);
  EXPECT_LT((u.adjoint() * u - CMatrix::Identity(4, 4)).norm(), 1e-12);
  const CMatrix v = random_isometry(2, 5, rng);
  EXPECT_EQ(v.rows(), 5);
  EXPECT_LT((v.adjoint() * v - CMatrix::Identity(2, 2)).norm(), 1e-12);
  EXPECT_THROW(random_isometry(3, 2, rng), UsageError);
}

TEST(Random, ProductStatesHaveSchmidtRankOne) {
  const PureState psi = random_product_pure(Split{2, 3}, 4);
  EXPECT_NEAR(schmidt_decompose(psi).coefficients(0), 1.0, 1e-12);
  const auto v = random_state(StateKind::Density, Split{2, 2}, 1);
  EXPECT_TRUE(std::holds_alternative<DensityMatrix>(v));
}

TEST(Ppt, BellIsNotPptProductsAre) {
  const PptVerdict bell = is_ppt(maximally_entangled(2).density());
  EXPECT_FALSE(bell.ppt);
  EXPECT_TRUE(bell.conclusive);
  EXPECT_NEAR(bell.min_eigenvalue, -0.5, 1e-14);
  for (std::uint64_t seed = 0; seed < 10; ++seed)
    EXPECT_TRUE(is_ppt(random_product_pure(Split{2, 2}, seed).density()).ppt);
  EXPECT_FALSE(is_ppt(DensityMatrix::maximally_mixed(6, Split{2, 3})).conclusive);
}

TEST(Ppt, PartialTransposeIsInvolution) {
  const DensityMatrix rho = random_density(6, 2, Split{2, 3});
  const CMatrix twice = partial_transpose(partial_transpose(rho.matrix(), Split{2, 3}), Split{2, 3});
  EXPECT_EQ(twice, rho.matrix());
}

TEST(SchmidtState, Validation) {
  const double bad_sum[] = {0.5, 0.6};
  const double negative[] = {1.2, -0.2};
  EXPECT_THROW(schmidt_state(bad_sum), DomainError);
  EXPECT_THROW(schmidt_state(negative), DomainError);
  EXPECT_NEAR(fidelity(maximally_entangled(2).amplitudes(),
                       schmidt_state(std::vector<double>{0.5, 0.5}).amplitudes()),
              1.0, 1e-15);
}

}  // namespace
}  // namespace qrent
