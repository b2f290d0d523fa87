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

#pragma once

#include <limits>
#include <string>

#include "qrent/fgen.hpp"
#include "qrent/qstate.hpp"

namespace qrent {

/// Real number or +inf. Divergences never return NaN.
using ExtendedReal = double;
inline constexpr ExtendedReal kPlusInfinity = std::numeric_limits<double>::infinity();

/// Overlaps |<psi_k|phi_j>|^2 at or below this count as exact zeros when
/// deciding support violations.
inline constexpr double kOverlapThreshold = 1e-14;

/// S_f(rho||sigma) = sum_{j,k} lambda_j f(mu_k / lambda_j) |<psi_k|phi_j>|^2
/// over the spectra rho = sum lambda_j |phi_j><phi_j|,
/// sigma = sum mu_k |psi_k><psi_k|.
///
/// Zero eigenvalues are handled as limits of the strictly positive case:
/// terms with lambda_j = 0 contribute -a_f mu_k |<psi_k|phi_j>|^2 (nothing
/// for a_f = 0); terms with mu_k = 0 and a nonzero overlap contribute
/// lambda_j f(0+), which is +inf for generators unbounded at zero.
ExtendedReal qre_spectral(const DensityMatrix& rho, const DensityMatrix& sigma,
                          const GeneratorFunction& f);

/// qre_spectral on precomputed spectra (eigenvalues already clamped at
/// zero, any order).
ExtendedReal qre_from_spectra(const SpectralDecomposition& rho, const SpectralDecomposition& sigma,
                              const GeneratorFunction& f);

/// Relative modular operator Delta_{A,B}(X) = A X B^{-1} on the
/// Hilbert-Schmidt space, as a d^2 x d^2 matrix acting on column-major
/// vec(X). B^{-1} is the generalized inverse on the support of B.
class ModularOperator {
 public:
  ModularOperator(const DensityMatrix& a, const DensityMatrix& b);

  int dim() const { return d_; }
  const CMatrix& matrix() const { return matrix_; }
  /// Eigenvalues (descending) and eigenvectors of the superoperator.
  const SpectralDecomposition& spectrum() const { return spectrum_; }

  CMatrix apply(const CMatrix& x) const;
  /// g(Delta) applied to X through the eigendecomposition.
  CMatrix apply_function(const std::function<double(double)>& g, const CMatrix& x) const;

 private:
  int d_;
  CMatrix matrix_;
  SpectralDecomposition spectrum_;
};

/// <rho^{1/2}, f(Delta_{sigma,rho}) rho^{1/2}>_HS, the reading of
/// Tr(f(Delta_{sigma,rho}) rho) that matches the spectral formula. Both
/// states must be full rank; DomainError otherwise (use qre_spectral).
ExtendedReal qre_modular(const DensityMatrix& rho, const DensityMatrix& sigma,
                         const GeneratorFunction& f);

/// Tr(rho log rho - rho log sigma), i.e. f = -log.
ExtendedReal umegaki(const DensityMatrix& rho, const DensityMatrix& sigma);

/// 1 - Tr(rho^alpha sigma^{1-alpha}), alpha in (0, 1).
double alpha_divergence(const DensityMatrix& rho, const DensityMatrix& sigma, double alpha);

/// (1/(alpha-1)) log(1 - alpha_divergence), alpha in (0, 1). +inf when the
/// argument of the logarithm is not positive.
ExtendedReal renyi_relative(const DensityMatrix& rho, const DensityMatrix& sigma, double alpha);

/// (1 - Tr(rho^q sigma^{1-q})) / (1 - q), q in (0, 1).
double tsallis_relative(const DensityMatrix& rho, const DensityMatrix& sigma, double q);

/// Dispatches on a generator registry string, plus "renyi:alpha".
ExtendedReal divergence(const DensityMatrix& rho, const DensityMatrix& sigma,
                        const std::string& spec);

}  // namespace qrent
