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

#include "qrent/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "qrent/errors.hpp"

namespace qrent {

namespace {

void check_split(const std::optional<Split>& split, int dim) {
  if (!split) return;
  if (split->a <= 0 || split->b <= 0 || split->dim() != dim) {
    std::ostringstream os;
    os << "split (" << split->a << "," << split->b << ") does not factor dimension "
       << dim;
    throw UsageError(os.str());
  }
}

double hermitian_defect(const CMatrix& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

// First entry with modulus above the noise floor becomes real positive.
Complex phase_to_fix(const CVector& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double r = std::abs(v(i));
    if (r > 1e-12) return std::conj(v(i)) / r;
  }
  return {1.0, 0.0};
}

}  // namespace

// DensityMatrix --------------------------------------------------------------

DensityMatrix::DensityMatrix(CMatrix m, std::optional<Split> split)
    : m_(std::move(m)), split_(split) {
  if (m_.rows() == 0 || m_.rows() != m_.cols())
    throw UsageError("density matrix must be square and non-empty");
  check_split(split_, dim());
  if (!m_.allFinite()) throw DomainError("density matrix has non-finite entries");
  if (const double h = hermitian_defect(m_); h > tol::kHermitian) {
    std::ostringstream os;
    os << "density matrix is not Hermitian (defect " << h << ")";
    throw DomainError(os.str());
  }
  if (const double t = std::abs(m_.trace() - Complex(1.0)); t > tol::kTrace) {
    std::ostringstream os;
    os << "density matrix trace deviates from 1 by " << t;
    throw DomainError(os.str());
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m_, Eigen::EigenvaluesOnly);
  if (const double lo = es.eigenvalues().minCoeff(); lo < -tol::kPsd) {
    std::ostringstream os;
    os << "density matrix has negative eigenvalue " << lo;
    throw DomainError(os.str());
  }
}

DensityMatrix DensityMatrix::maximally_mixed(int dim, std::optional<Split> split) {
  if (dim <= 0) throw UsageError("dimension must be positive");
  return DensityMatrix(CMatrix::Identity(dim, dim) / static_cast<double>(dim), split);
}

Split DensityMatrix::require_split() const {
  if (!split_) throw UsageError("operation requires a bipartite split");
  return *split_;
}

// PureState ------------------------------------------------------------------

PureState::PureState(CVector amplitudes, std::optional<Split> split)
    : v_(std::move(amplitudes)), split_(split) {
  if (v_.size() == 0) throw UsageError("state vector must be non-empty");
  check_split(split_, dim());
  if (!v_.allFinite()) throw DomainError("state vector has non-finite entries");
  if (const double d = std::abs(v_.norm() - 1.0); d > tol::kNorm) {
    std::ostringstream os;
    os << "state vector norm deviates from 1 by " << d;
    throw DomainError(os.str());
  }
}

PureState PureState::normalized(const CVector& v, std::optional<Split> split) {
  const double n = v.norm();
  if (!(n > 0.0)) throw DomainError("cannot normalize a zero vector");
  return PureState(v / n, split);
}

PureState PureState::basis(int dim, int index, std::optional<Split> split) {
  if (index < 0 || index >= dim) throw UsageError("basis index out of range");
  CVector v = CVector::Zero(dim);
  v(index) = 1.0;
  return PureState(std::move(v), split);
}

Split PureState::require_split() const {
  if (!split_) throw UsageError("operation requires a bipartite split");
  return *split_;
}

DensityMatrix PureState::density() const {
  return DensityMatrix(v_ * v_.adjoint(), split_);
}

// Decompositions ------------------------------------------------------------

CVector SchmidtForm::reconstruct() const {
  const int da = static_cast<int>(basis_a.rows());
  const int db = static_cast<int>(basis_b.rows());
  CVector psi = CVector::Zero(da * db);
  for (Eigen::Index k = 0; k < coefficients.size(); ++k) {
    const double s = std::sqrt(std::max(coefficients(k), 0.0));
    if (s == 0.0) continue;
    for (int i = 0; i < da; ++i)
      for (int j = 0; j < db; ++j) psi(i * db + j) += s * basis_a(i, k) * basis_b(j, k);
  }
  return psi;
}

CMatrix SpectralDecomposition::reconstruct() const {
  return eigenvectors * eigenvalues.cast<Complex>().asDiagonal() * eigenvectors.adjoint();
}

DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b) {
  const int da = a.dim(), db = b.dim();
  CMatrix out(da * db, da * db);
  for (int i = 0; i < da; ++i)
    for (int k = 0; k < da; ++k) out.block(i * db, k * db, db, db) = a.matrix()(i, k) * b.matrix();
  return DensityMatrix(std::move(out), Split{da, db});
}

PureState tensor_product(const PureState& a, const PureState& b) {
  const int da = a.dim(), db = b.dim();
  CVector out(da * db);
  for (int i = 0; i < da; ++i) out.segment(i * db, db) = a.amplitudes()(i) * b.amplitudes();
  return PureState(std::move(out), Split{da, db});
}

DensityMatrix partial_trace(const DensityMatrix& rho, Subsystem traced) {
  const Split s = rho.require_split();
  const CMatrix& m = rho.matrix();
  if (traced == Subsystem::B) {
    CMatrix out = CMatrix::Zero(s.a, s.a);
    for (int i = 0; i < s.a; ++i)
      for (int k = 0; k < s.a; ++k)
        for (int j = 0; j < s.b; ++j) out(i, k) += m(i * s.b + j, k * s.b + j);
    return DensityMatrix(std::move(out));
  }
  CMatrix out = CMatrix::Zero(s.b, s.b);
  for (int j = 0; j < s.b; ++j)
    for (int l = 0; l < s.b; ++l)
      for (int i = 0; i < s.a; ++i) out(j, l) += m(i * s.b + j, i * s.b + l);
  return DensityMatrix(std::move(out));
}

SchmidtForm schmidt_decompose(const PureState& psi) {
  const Split s = psi.require_split();
  CMatrix amp(s.a, s.b);
  for (int i = 0; i < s.a; ++i)
    for (int j = 0; j < s.b; ++j) amp(i, j) = psi.amplitudes()(i * s.b + j);

  // amp = U S V^dagger, so psi = sum_k s_k u_k (x) conj(v_k).
  Eigen::JacobiSVD<CMatrix> svd(amp, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const int r = std::min(s.a, s.b);
  SchmidtForm out;
  out.coefficients = svd.singularValues().head(r).array().square();
  out.basis_a = svd.matrixU();
  out.basis_b = svd.matrixV().conjugate();

  // Phase convention: the A vector's first nonzero component is made real
  // positive and the inverse phase moved onto the partner B vector; columns
  // without a partner are fixed independently.
  for (int k = 0; k < s.a; ++k) {
    const Complex ph = phase_to_fix(out.basis_a.col(k));
    out.basis_a.col(k) *= ph;
    if (k < r) out.basis_b.col(k) *= std::conj(ph);
  }
  for (int k = 0; k < s.b; ++k) {
    if (k < r && out.coefficients(k) > tol::kZeroEigenvalue) continue;
    out.basis_b.col(k) *= phase_to_fix(out.basis_b.col(k));
  }
  // SVD already sorts descending; normalize the sum against rounding.
  const double total = out.coefficients.sum();
  if (total > 0.0) out.coefficients /= total;
  return out;
}

SpectralDecomposition eig_hermitian(const CMatrix& m) {
  if (m.rows() == 0 || m.rows() != m.cols()) throw UsageError("matrix must be square");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if (const double h = hermitian_defect(m); h > tol::kHermitian * scale) {
    std::ostringstream os;
    os << "matrix is not Hermitian (defect " << h << ")";
    throw UsageError(os.str());
  }
  const CMatrix herm = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(herm);
  SpectralDecomposition out;
  out.eigenvalues = es.eigenvalues().reverse();
  out.eigenvectors = es.eigenvectors().rowwise().reverse();
  return out;
}

SpectralDecomposition state_spectrum(const DensityMatrix& rho) {
  SpectralDecomposition sd = eig_hermitian(rho.matrix());
  for (Eigen::Index i = 0; i < sd.eigenvalues.size(); ++i)
    if (sd.eigenvalues(i) < tol::kZeroEigenvalue) sd.eigenvalues(i) = 0.0;
  return sd;
}

double fidelity(const CVector& a, const CVector& b) { return std::norm(a.dot(b)); }

// Random states -------------------------------------------------------------

CMatrix ginibre(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> n01(0.0, 1.0);
  CMatrix g(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) {
      const double re = n01(rng);
      const double im = n01(rng);
      g(i, j) = Complex(re, im);
    }
  return g;
}

CVector haar_vector(int dim, Rng& rng) {
  CVector v = ginibre(dim, 1, rng).col(0);
  return v / v.norm();
}

CMatrix random_unitary(int dim, Rng& rng) {
  const CMatrix g = ginibre(dim, dim, rng);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Multiply by the phases of diag(R) so the distribution is Haar.
  for (int k = 0; k < dim; ++k) {
    const double mod = std::abs(r(k, k));
    if (mod > 0.0) q.col(k) *= r(k, k) / mod;
  }
  return q;
}

CMatrix random_isometry(int in_dim, int out_dim, Rng& rng) {
  if (out_dim < in_dim) throw UsageError("isometry needs out_dim >= in_dim");
  return random_unitary(out_dim, rng).leftCols(in_dim);
}

PureState random_pure(int dim, std::uint64_t seed, std::optional<Split> split) {
  if (dim <= 0) throw UsageError("dimension must be positive");
  Rng rng(seed);
  return PureState::normalized(haar_vector(dim, rng), split);
}

DensityMatrix random_density(int dim, std::uint64_t seed, std::optional<Split> split) {
  if (dim <= 0) throw UsageError("dimension must be positive");
  Rng rng(seed);
  const CMatrix g = ginibre(dim, dim, rng);
  CMatrix m = g * g.adjoint();
  m = 0.5 * (m + m.adjoint());
  m /= m.trace().real();
  return DensityMatrix(std::move(m), split);
}

PureState random_product_pure(Split dims, std::uint64_t seed) {
  if (dims.a <= 0 || dims.b <= 0) throw UsageError("dimensions must be positive");
  Rng rng(seed);
  const PureState a = PureState::normalized(haar_vector(dims.a, rng));
  const PureState b = PureState::normalized(haar_vector(dims.b, rng));
  return tensor_product(a, b);
}

std::variant<DensityMatrix, PureState> random_state(StateKind kind, Split dims,
                                                    std::uint64_t seed) {
  switch (kind) {
    case StateKind::Density:
      return random_density(dims.dim(), seed, dims);
    case StateKind::Pure:
      return random_pure(dims.dim(), seed, dims);
    case StateKind::ProductPure:
      return random_product_pure(dims, seed);
  }
  throw UsageError("unknown state kind");
}

// PPT ------------------------------------------------------------------------

CMatrix partial_transpose(const CMatrix& m, Split s) {
  CMatrix out(m.rows(), m.cols());
  for (int i = 0; i < s.a; ++i)
    for (int j = 0; j < s.b; ++j)
      for (int k = 0; k < s.a; ++k)
        for (int l = 0; l < s.b; ++l) out(i * s.b + j, k * s.b + l) = m(i * s.b + l, k * s.b + j);
  return out;
}

PptVerdict is_ppt(const DensityMatrix& sigma) {
  const Split s = sigma.require_split();
  const CMatrix pt = partial_transpose(sigma.matrix(), s);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(pt, Eigen::EigenvaluesOnly);
  PptVerdict v;
  v.min_eigenvalue = es.eigenvalues().minCoeff();
  v.ppt = v.min_eigenvalue >= -tol::kPpt;
  v.conclusive = (s.a == 2 && s.b == 2);
  return v;
}

PureState schmidt_state(std::span<const double> p) {
  const int d = static_cast<int>(p.size());
  if (d == 0) throw UsageError("empty Schmidt vector");
  CVector v = CVector::Zero(d * d);
  double total = 0.0;
  for (int j = 0; j < d; ++j) {
    if (!(p[j] >= 0.0)) throw DomainError("Schmidt coefficients must be nonnegative");
    v(j * d + j) = std::sqrt(p[j]);
    total += p[j];
  }
  if (std::abs(total - 1.0) > 1e-9) throw DomainError("Schmidt coefficients must sum to 1");
  return PureState::normalized(v, Split{d, d});
}

PureState maximally_entangled(int d) {
  if (d <= 0) throw UsageError("dimension must be positive");
  CVector v = CVector::Zero(d * d);
  for (int j = 0; j < d; ++j) v(j * d + j) = 1.0 / std::sqrt(static_cast<double>(d));
  return PureState(std::move(v), Split{d, d});
}

}  // namespace qrent
