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

#include "qrent/qre.hpp"

#include <cmath>
#include <sstream>

#include "qrent/errors.hpp"

namespace qrent {

namespace {

void require_same_dim(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) {
    std::ostringstream os;
    os << "dimension mismatch: " << rho.dim() << " vs " << sigma.dim();
    throw UsageError(os.str());
  }
}

CMatrix apply_spectral(const SpectralDecomposition& sd, const std::function<double(double)>& g) {
  RVector v = sd.eigenvalues;
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = g(v(i));
  return sd.eigenvectors * v.cast<Complex>().asDiagonal() * sd.eigenvectors.adjoint();
}

}  // namespace

ExtendedReal qre_from_spectra(const SpectralDecomposition& sr, const SpectralDecomposition& ss,
                              const GeneratorFunction& f) {
  const Eigen::Index n = sr.eigenvalues.size();
  if (ss.eigenvalues.size() != n) throw UsageError("spectra have different dimensions");
  // Columns with lambda_j = 0 only matter through a_f.
  Eigen::Index cols = n;
  if (f.a_f() == 0.0) {
    cols = 0;
    for (Eigen::Index j = 0; j < n; ++j)
      if (sr.eigenvalues(j) != 0.0) cols = j + 1;
  }
  // overlap(k, j) = |<psi_k|phi_j>|^2
  const Eigen::MatrixXd overlap =
      (ss.eigenvectors.adjoint() * sr.eigenvectors.leftCols(cols)).cwiseAbs2();

  double total = 0.0;
  for (Eigen::Index j = 0; j < cols; ++j) {
    const double lambda = sr.eigenvalues(j);
    for (Eigen::Index k = 0; k < n; ++k) {
      const double mu = ss.eigenvalues(k);
      const double w = overlap(k, j);
      if (lambda == 0.0) {
        total -= f.a_f() * mu * w;
        continue;
      }
      if (mu == 0.0) {
        if (w <= kOverlapThreshold) continue;
        const double f0 = f.limit_at_zero();
        if (std::isinf(f0)) return f0 > 0 ? kPlusInfinity : -kPlusInfinity;
        total += lambda * f0 * w;
        continue;
      }
      total += lambda * f(mu / lambda) * w;
    }
  }
  return total;
}

ExtendedReal qre_spectral(const DensityMatrix& rho, const DensityMatrix& sigma,
                          const GeneratorFunction& f) {
  require_same_dim(rho, sigma);
  return qre_from_spectra(state_spectrum(rho), state_spectrum(sigma), f);
}

ModularOperator::ModularOperator(const DensityMatrix& a, const DensityMatrix& b) : d_(a.dim()) {
  require_same_dim(a, b);
  const SpectralDecomposition sb = state_spectrum(b);
  const CMatrix b_inv =
      apply_spectral(sb, [](double x) { return x > 0.0 ? 1.0 / x : 0.0; });
  // vec(A X B^{-1}) = ((B^{-1})^T (x) A) vec(X) for column-major vec.
  const CMatrix bt = b_inv.transpose();
  matrix_.resize(d_ * d_, d_ * d_);
  for (int i = 0; i < d_; ++i)
    for (int k = 0; k < d_; ++k) matrix_.block(i * d_, k * d_, d_, d_) = bt(i, k) * a.matrix();
  matrix_ = 0.5 * (matrix_ + matrix_.adjoint());
  spectrum_ = eig_hermitian(matrix_);
}

CMatrix ModularOperator::apply(const CMatrix& x) const {
  if (x.rows() != d_ || x.cols() != d_) throw UsageError("operand has the wrong shape");
  const CVector v = Eigen::Map<const CVector>(x.data(), x.size());
  const CVector out = matrix_ * v;
  return Eigen::Map<const CMatrix>(out.data(), d_, d_);
}

CMatrix ModularOperator::apply_function(const std::function<double(double)>& g,
                                        const CMatrix& x) const {
  if (x.rows() != d_ || x.cols() != d_) throw UsageError("operand has the wrong shape");
  const CVector v = Eigen::Map<const CVector>(x.data(), x.size());
  const CVector out = apply_spectral(spectrum_, g) * v;
  return Eigen::Map<const CMatrix>(out.data(), d_, d_);
}

ExtendedReal qre_modular(const DensityMatrix& rho, const DensityMatrix& sigma,
                         const GeneratorFunction& f) {
  require_same_dim(rho, sigma);
  const SpectralDecomposition sr = state_spectrum(rho);
  const SpectralDecomposition ss = state_spectrum(sigma);
  if (sr.eigenvalues.minCoeff() <= 0.0 || ss.eigenvalues.minCoeff() <= 0.0)
    throw DomainError("qre_modular needs full-rank states; use qre_spectral for singular ones");

  const ModularOperator delta(sigma, rho);
  const CMatrix root = apply_spectral(sr, [](double x) { return std::sqrt(x); });
  const CMatrix image = delta.apply_function([&f](double x) { return f(x); }, root);
  // <rho^{1/2}, f(Delta) rho^{1/2}>_HS = Tr(rho^{1/2} f(Delta)(rho^{1/2}))
  return (root.adjoint() * image).trace().real();
}

ExtendedReal umegaki(const DensityMatrix& rho, const DensityMatrix& sigma) {
  static const GeneratorFunction neg_log = make_builtin("neg_log");
  return qre_spectral(rho, sigma, neg_log);
}

double alpha_divergence(const DensityMatrix& rho, const DensityMatrix& sigma, double alpha) {
  return qre_spectral(rho, sigma, make_builtin("power_entropy", {alpha}));
}

ExtendedReal renyi_relative(const DensityMatrix& rho, const DensityMatrix& sigma, double alpha) {
  const double overlap = 1.0 - alpha_divergence(rho, sigma, alpha);
  if (!(overlap > 0.0)) return kPlusInfinity;
  return std::log(overlap) / (alpha - 1.0);
}

double tsallis_relative(const DensityMatrix& rho, const DensityMatrix& sigma, double q) {
  return qre_spectral(rho, sigma, make_builtin("tsallis", {q}));
}

ExtendedReal divergence(const DensityMatrix& rho, const DensityMatrix& sigma,
                        const std::string& spec) {
  constexpr std::string_view renyi = "renyi:";
  if (spec.rfind(renyi, 0) == 0) {
    const std::string arg = spec.substr(renyi.size());
    std::size_t used = 0;
    double alpha = 0.0;
    try {
      alpha = std::stod(arg, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (arg.empty() || used != arg.size())
      throw UsageError("malformed parameter in divergence spec '" + spec + "'");
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("renyi parameter must lie in (0, 1)");
    return renyi_relative(rho, sigma, alpha);
  }
  return qre_spectral(rho, sigma, parse_generator(spec));
}

}  // namespace qrent
