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

// Closest separable states to pure bipartite states |Psi> = sum_j sqrt(p_j) |jj>:
//
//   * maximally entangled input, any generator: sigma* = sigma({1/d}), E = f(1/d);
//   * any Schmidt vector, generators with constant H_f: sigma* = sigma({p_j}),
//     E = sum_j p_j f(p_j);
//   * two qubits, generators with monotone H_f: sigma* = sigma({q, 1-q}) with
//     q solving p = q H_f(1-q) / (q H_f(1-q) + (1-q) H_f(q)).
//
// Optimality is spot-checked through the one-sided derivative of
// x -> S_f(rho || (1-x) sigma* + x |ab><ab|) at x = 0 over sampled product
// states |ab>, which must be nonnegative.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qrent/fgen.hpp"
#include "qrent/qre.hpp"
#include "qrent/qstate.hpp"

namespace qrent {

enum class Theorem { MaxEntangled, FlatH, Qubit };
const char* to_string(Theorem t);

inline constexpr double kCertificateTolerance = -1e-8;
inline constexpr int kDefaultCertificateSamples = 1000;

struct Certificate {
  double min_directional_derivative = 0.0;
  int samples = 0;
  std::uint64_t seed = 0;
  Theorem theorem = Theorem::MaxEntangled;

  bool passed() const { return min_directional_derivative >= kCertificateTolerance; }
};

struct ClosestResult {
  ExtendedReal entanglement = 0.0;
  DensityMatrix sigma_star = DensityMatrix::maximally_mixed(1);
  /// Schmidt coefficients of the input and weights of sigma*, both in the
  /// input's Schmidt order.
  std::vector<double> p;
  std::vector<double> q;
  /// Local Schmidt bases (columns); sigma* = sum_j q_j |a_j b_j><a_j b_j|.
  CMatrix basis_a;
  CMatrix basis_b;
  Certificate certificate;
  /// Two-qubit results only: derivatives towards |00> and |11>, which
  /// vanish at the optimum.
  std::vector<double> edge_derivatives;

  /// The pure state sum_j sqrt(p_j) |a_j b_j> the result refers to.
  PureState state() const;
};

struct CertifyOptions {
  int samples = kDefaultCertificateSamples;
  std::uint64_t seed = 0;
  QuadratureSpec quadrature{};
};

ClosestResult closest_maxent(int d, const GeneratorFunction& f, const CertifyOptions& opts = {});

/// Requires classify_hf(f) == constant; HypothesisError otherwise.
ClosestResult closest_pure_flatH(const SchmidtForm& schmidt, const GeneratorFunction& f,
                                 const CertifyOptions& opts = {});
ClosestResult closest_pure_flatH(std::span<const double> p, const GeneratorFunction& f,
                                 const CertifyOptions& opts = {});

/// q in (0, 1) with rhs(q) = p, bisection to 1e-12 on the bracket implied
/// by the shape of H_f. Constant H_f gives q = p and p = 1/2 gives q = 1/2.
/// HypothesisError when H_f is neither constant nor monotone;
/// NumericError when no sign change is found on (1e-9, 1 - 1e-9).
double solve_q(double p, const GeneratorFunction& f, const QuadratureSpec& spec = {});

/// q H_f(1-q) / (q H_f(1-q) + (1-q) H_f(q)).
double qubit_rhs(double q, const GeneratorFunction& f, const QuadratureSpec& spec = {});

ClosestResult closest_two_qubit(double p, const GeneratorFunction& f, const CertifyOptions& opts = {});
/// Two-qubit input given in Schmidt form (dimensions must be 2 x 2).
ClosestResult closest_two_qubit(const SchmidtForm& schmidt, const GeneratorFunction& f,
                                const CertifyOptions& opts = {});

/// Re-expresses a result in other local bases: sigma* becomes
/// sum_j q_j |a_j b_j><a_j b_j| with a_j, b_j the leading basis columns.
ClosestResult rebase(ClosestResult result, const CMatrix& basis_a, const CMatrix& basis_b);

/// Derivative towards |00>: (1-p) H_f(1-q) - p (1-q)/q H_f(q).
double partial_derivative_00(double p, double q, const GeneratorFunction& f,
                             const QuadratureSpec& spec = {});
/// Derivative towards |11>: p H_f(q) - (1-p) q/(1-q) H_f(1-q).
double partial_derivative_11(double p, double q, const GeneratorFunction& f,
                             const QuadratureSpec& spec = {});

/// Precomputed H_f / G_f tables for repeated directional derivatives at
/// fixed (p, q).
class DirectionalDerivative {
 public:
  DirectionalDerivative(std::span<const double> p, std::span<const double> q,
                        const GeneratorFunction& f, const QuadratureSpec& spec = {});

  /// sum_j p_j H_f(q_j) - sum_{jk} sqrt(p_j p_k / (q_j q_k)) G_f(q_j, q_k)
  ///   a_k b_k conj(a_j) conj(b_j), with a, b in Schmidt-basis coordinates.
  double operator()(const CVector& a, const CVector& b) const;

  double constant_term() const { return constant_; }

 private:
  std::vector<int> active_;  // indices with p_j > 0
  double constant_ = 0.0;
  Eigen::MatrixXd coupling_;  // over active indices
};

double directional_derivative(std::span<const double> p, std::span<const double> q,
                              const GeneratorFunction& f, const CVector& a, const CVector& b,
                              const QuadratureSpec& spec = {});

/// Minimum directional derivative over `samples` Haar-random product states.
Certificate certify(const ClosestResult& result, const GeneratorFunction& f, int samples,
                    std::uint64_t seed, const QuadratureSpec& spec = {});

}  // namespace qrent
