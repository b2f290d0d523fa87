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

namespace qrent {
namespace {

// For f = power_entropy:alpha the qubit equation reads
// p / (1-p) = (q / (1-q))^alpha, so q = r / (1 + r) with r = (p/(1-p))^{1/alpha}.
double power_entropy_q(double p, double alpha) {
  const double r = std::pow(p / (1.0 - p), 1.0 / alpha);
  return r / (1.0 + r);
}

DensityMatrix rho_of(const ClosestResult& r) {
  const PureState psi = r.state();
  return psi.density().with_split(psi.require_split());
}

TEST(MaxEnt, ValueIsFOfOneOverD) {
  for (const auto& s : builtin_samples()) {
    const GeneratorFunction f = parse_generator(s);
    for (int d = 2; d <= 4; ++d) {
      const ClosestResult r = closest_maxent(d, f);
      EXPECT_NEAR(r.entanglement, f(1.0 / d), 1e-15);
      EXPECT_NEAR(r.entanglement, qre_spectral(rho_of(r), r.sigma_star, f), 1e-10) << s << d;
      EXPECT_TRUE(r.certificate.passed()) << s << " d=" << d;
      EXPECT_EQ(r.certificate.theorem, Theorem::MaxEntangled);
    }
  }
  EXPECT_NEAR(closest_maxent(2, parse_generator("log")).entanglement, std::log(2.0), 1e-15);
  EXPECT_THROW(closest_maxent(1, parse_generator("log")), DomainError);
}

TEST(MaxEnt, SigmaIsUniformDiagonalMixture) {
  const ClosestResult r = closest_maxent(3, parse_generator("log"));
  CMatrix expected = CMatrix::Zero(9, 9);
  for (int j = 0; j < 3; ++j) expected(4 * j, 4 * j) = 1.0 / 3.0;
  EXPECT_LT((r.sigma_star.matrix() - expected).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_TRUE(is_ppt(r.sigma_star).ppt);
}

TEST(FlatH, NegLogEntropyOfEntanglement) {
  const double p[] = {0.7, 0.3};
  const ClosestResult r = closest_pure_flatH(p, parse_generator("log"));
  EXPECT_NEAR(r.entanglement, -(0.7 * std::log(0.7) + 0.3 * std::log(0.3)), 1e-15);
  EXPECT_NEAR(r.entanglement, 0.610864, 1e-6);
  EXPECT_TRUE(r.certificate.passed());
  EXPECT_EQ(r.q, r.p);
}

TEST(FlatH, ZeroCoefficientsContributeNothing) {
  const double p[] = {0.6, 0.4, 0.0};
  const ClosestResult r = closest_pure_flatH(p, parse_generator("log"));
  EXPECT_NEAR(r.entanglement, -(0.6 * std::log(0.6) + 0.4 * std::log(0.4)), 1e-15);
  EXPECT_TRUE(r.certificate.passed());
}

TEST(FlatH, RejectsNonConstantH) {
  const double p[] = {0.5, 0.3, 0.2};
  try {
    closest_pure_flatH(p, parse_generator("power_entropy:0.5"));
    FAIL() << "expected HypothesisError";
  } catch (const HypothesisError& e) {
    EXPECT_EQ(e.theorem(), "flatH");
  }
  const double bad[] = {0.5, 0.6};
  EXPECT_THROW(closest_pure_flatH(bad, parse_generator("log")), DomainError);
}

TEST(FlatH, ArbitraryLocalBases) {
  // Local unitaries change the Schmidt bases but not E; sigma* follows them.
  const GeneratorFunction f = parse_generator("log");
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const PureState psi = random_pure(6, seed, Split{2, 3});
    const SchmidtForm s = schmidt_decompose(psi);
    const ClosestResult r = closest_pure_flatH(s, f);
    double entropy = 0.0;
    for (Eigen::Index j = 0; j < s.coefficients.size(); ++j)
      if (s.coefficients(j) > 0) entropy -= s.coefficients(j) * std::log(s.coefficients(j));
    EXPECT_NEAR(r.entanglement, entropy, 1e-12);
    EXPECT_NEAR(qre_spectral(psi.density().with_split(Split{2, 3}), r.sigma_star, f), entropy, 1e-10);
    EXPECT_NEAR(fidelity(r.state().amplitudes(), psi.amplitudes()), 1.0, 1e-12);
  }
}

TEST(SolveQ, PowerEntropyMatchesClosedForm) {
  for (double alpha : {0.3, 0.5, 0.7}) {
    const GeneratorFunction f = make_builtin("power_entropy", {alpha});
    for (int i = 1; i <= 9; ++i) {
      const double p = 0.1 * i;
      EXPECT_NEAR(solve_q(p, f), power_entropy_q(p, alpha), 1e-10) << alpha << " " << p;
    }
    for (double q : {0.1, 0.4, 0.85}) {
      const double closed = std::pow(q, alpha) / (std::pow(q, alpha) + std::pow(1 - q, alpha));
      EXPECT_NEAR(qubit_rhs(q, f), closed, 1e-12);
    }
  }
  EXPECT_NEAR(solve_q(0.75, make_builtin("power_entropy", {0.5})), 0.9, 1e-11);
}

TEST(SolveQ, ConstantAndSymmetricCases) {
  EXPECT_EQ(solve_q(0.3, parse_generator("log")), 0.3);
  EXPECT_EQ(solve_q(0.5, parse_generator("power:0.5")), 0.5);
  EXPECT_THROW(solve_q(0.0, parse_generator("log")), DomainError);
  EXPECT_THROW(solve_q(1.0, parse_generator("log")), DomainError);
}

TEST(SolveQ, BracketingLaws) {
  // Every non-log builtin has increasing H_f, pushing q away from 1/2.
  for (const auto& s : builtin_samples()) {
    if (s == "log") continue;
    const GeneratorFunction f = parse_generator(s);
    for (int i = 1; i <= 19; ++i) {
      const double p = 0.05 * i;
      const double q = solve_q(p, f);
      EXPECT_GE((p - 0.5) * (q - 0.5), 0.0);
      EXPECT_GE((p - 0.5) * (q - p), 0.0) << s << " p=" << p;
      EXPECT_GT(q, 0.0);
      EXPECT_LT(q, 1.0);
    }
  }
}

TEST(TwoQubit, ReferenceValue) {
  const GeneratorFunction f = make_builtin("power_entropy", {0.5});
  const ClosestResult r = closest_two_qubit(0.75, f);
  const double expected = 0.75 * (1 - std::sqrt(0.9)) + 0.25 * (1 - std::sqrt(0.1));
  EXPECT_NEAR(r.q[0], 0.9, 1e-11);
  EXPECT_NEAR(r.entanglement, expected, 1e-11);
  EXPECT_NEAR(r.entanglement, 0.209431, 1e-6);
  EXPECT_NEAR(r.entanglement, qre_spectral(rho_of(r), r.sigma_star, f), 1e-10);
  ASSERT_EQ(r.edge_derivatives.size(), 2u);
  EXPECT_NEAR(r.edge_derivatives[0], 0.0, 1e-8);
  EXPECT_NEAR(r.edge_derivatives[1], 0.0, 1e-8);
  EXPECT_TRUE(r.certificate.passed());
  EXPECT_EQ(r.certificate.theorem, Theorem::Qubit);
}

TEST(TwoQubit, EndpointsAreProductStates) {
  for (double p : {0.0, 1.0}) {
    const ClosestResult r = closest_two_qubit(p, parse_generator("power:0.5"));
    EXPECT_EQ(r.entanglement, 0.0);
    EXPECT_EQ(r.q[0], p);
    EXPECT_TRUE(r.certificate.passed());
  }
  EXPECT_THROW(closest_two_qubit(1.2, parse_generator("log")), DomainError);
}

TEST(TwoQubit, HalfAgreesWithMaxEnt) {
  for (const auto& s : builtin_samples()) {
    const GeneratorFunction f = parse_generator(s);
    const ClosestResult a = closest_two_qubit(0.5, f);
    const ClosestResult b = closest_maxent(2, f);
    EXPECT_NEAR(a.entanglement, b.entanglement, 1e-10);
    EXPECT_LT((a.sigma_star.matrix() - b.sigma_star.matrix()).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(TwoQubit, SchmidtFormInput) {
  const GeneratorFunction f = parse_generator("tsallis:0.5");
  const PureState psi = random_pure(4, 21, Split{2, 2});
  const SchmidtForm s = schmidt_decompose(psi);
  const ClosestResult r = closest_two_qubit(s, f);
  EXPECT_NEAR(r.entanglement, closest_two_qubit(s.coefficients(0), f).entanglement, 1e-14);
  EXPECT_NEAR(qre_spectral(psi.density().with_split(Split{2, 2}), r.sigma_star, f), r.entanglement,
              1e-10);
  EXPECT_TRUE(r.certificate.passed());
}

TEST(DirectionalDerivative, ReferenceCases) {
  const GeneratorFunction log = parse_generator("log");
  const std::vector<double> half{0.5, 0.5};
  const CVector e0 = CVector::Unit(2, 0), e1 = CVector::Unit(2, 1);
  EXPECT_NEAR(directional_derivative(half, half, log, e0, e0), 0.0, 1e-14);

  const GeneratorFunction pe = make_builtin("power_entropy", {0.5});
  const std::vector<double> p{0.75, 0.25}, q{0.9, 0.1};
  EXPECT_NEAR(directional_derivative(p, q, pe, e1, e1), 0.0, 1e-8);
  EXPECT_NEAR(directional_derivative(p, q, pe, e0, e0), 0.0, 1e-8);
  // Off-Schmidt directions are strictly positive.
  EXPECT_GT(directional_derivative(p, q, pe, e0, e1), 0.1);
}

TEST(DirectionalDerivative, MatchesFiniteDifference) {
  // d/dx S_f(rho || (1-x) sigma + x |ab><ab|) at 0, from the spectral formula.
  const GeneratorFunction f = parse_generator("power:0.5");
  const ClosestResult r = closest_two_qubit(0.8, f);
  Rng rng(5);
  const CVector a = haar_vector(2, rng), b = haar_vector(2, rng);
  CVector ab(4);
  for (int i = 0; i < 2; ++i) ab.segment(2 * i, 2) = a(i) * b;
  const DensityMatrix rho = rho_of(r);
  const double h = 1e-6;
  const DensityMatrix moved((1 - h) * r.sigma_star.matrix() + h * ab * ab.adjoint());
  const double fd = (qre_spectral(rho, moved, f) - r.entanglement) / h;
  EXPECT_NEAR(directional_derivative(r.p, r.q, f, a, b), fd, 1e-4);
}

TEST(Certificate, DeterministicInSeed) {
  const GeneratorFunction f = parse_generator("log");
  const ClosestResult r = closest_maxent(2, f);
  const Certificate a = certify(r, f, 200, 3);
  const Certificate b = certify(r, f, 200, 3);
  const Certificate c = certify(r, f, 200, 4);
  EXPECT_EQ(a.min_directional_derivative, b.min_directional_derivative);
  EXPECT_NE(a.min_directional_derivative, c.min_directional_derivative);
  EXPECT_EQ(a.samples, 200);
  EXPECT_THROW(certify(r, f, 0, 1), UsageError);
}

TEST(Certificate, DetectsSuboptimalSigma) {
  // sigma({p_j}) is not optimal for power_entropy when p != 1/2.
  const GeneratorFunction f = make_builtin("power_entropy", {0.5});
  ClosestResult wrong = closest_two_qubit(0.75, f);
  wrong.q = wrong.p;
  EXPECT_LT(certify(wrong, f, 1000, 0).min_directional_derivative, kCertificateTolerance);
}

}  // namespace
}  // namespace qrent
