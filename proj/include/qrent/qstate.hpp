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

// Finite-dimensional state linear algebra: validated density matrices and
// pure states, tensor products, partial traces, Schmidt and spectral
// decompositions, seeded random states and the PPT test.

#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <variant>

#include <Eigen/Dense>

namespace qrent {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;
using Rng = std::mt19937_64;

namespace tol {
inline constexpr double kHermitian = 1e-12;
inline constexpr double kTrace = 1e-12;
inline constexpr double kPsd = 1e-10;
inline constexpr double kNorm = 1e-12;
// Eigenvalues of a state with |lambda| below this are treated as exact zeros.
inline constexpr double kZeroEigenvalue = 1e-12;
inline constexpr double kPpt = 1e-10;
}  // namespace tol

/// Bipartite split (dA, dB) of a Hilbert space of dimension dA * dB.
/// Basis index of |i>_A |j>_B is i * dB + j.
struct Split {
  int a = 0;
  int b = 0;

  int dim() const { return a * b; }
  friend bool operator==(const Split&, const Split&) = default;
};

enum class Subsystem { A, B };

/// Trace-one positive semidefinite matrix. Invariants are checked on
/// construction; instances are immutable afterwards.
class DensityMatrix {
 public:
  explicit DensityMatrix(CMatrix m, std::optional<Split> split = std::nullopt);

  static DensityMatrix maximally_mixed(int dim,
                                       std::optional<Split> split = std::nullopt);

  int dim() const { return static_cast<int>(m_.rows()); }
  const CMatrix& matrix() const { return m_; }
  const std::optional<Split>& split() const { return split_; }

  /// Split or UsageError.
  Split require_split() const;

  DensityMatrix with_split(Split s) const { return DensityMatrix(m_, s); }

 private:
  CMatrix m_;
  std::optional<Split> split_;
};

/// Unit-norm state vector.
class PureState {
 public:
  explicit PureState(CVector amplitudes, std::optional<Split> split = std::nullopt);

  /// Normalizes `v` first; throws DomainError on a zero vector.
  static PureState normalized(const CVector& v,
                              std::optional<Split> split = std::nullopt);
  static PureState basis(int dim, int index,
                         std::optional<Split> split = std::nullopt);

  int dim() const { return static_cast<int>(v_.size()); }
  const CVector& amplitudes() const { return v_; }
  const std::optional<Split>& split() const { return split_; }
  Split require_split() const;

  DensityMatrix density() const;

 private:
  CVector v_;
  std::optional<Split> split_;
};

/// Schmidt form sum_j sqrt(p_j) |a_j> (x) |b_j>. `coefficients` has
/// min(dA, dB) entries in descending order; the bases are full unitaries
/// whose leading columns carry the Schmidt vectors.
struct SchmidtForm {
  RVector coefficients;
  CMatrix basis_a;
  CMatrix basis_b;

  Split split() const {
    return {static_cast<int>(basis_a.rows()), static_cast<int>(basis_b.rows())};
  }
  /// Rebuilds the state vector from coefficients and bases.
  CVector reconstruct() const;
};

/// Eigenvalues in descending order with matching eigenvector columns.
struct SpectralDecomposition {
  RVector eigenvalues;
  CMatrix eigenvectors;

  CMatrix reconstruct() const;
};

DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b);
PureState tensor_product(const PureState& a, const PureState& b);

/// Traces out `traced`; the result carries no split.
DensityMatrix partial_trace(const DensityMatrix& rho, Subsystem traced);

SchmidtForm schmidt_decompose(const PureState& psi);

/// Throws UsageError when `m` is not Hermitian to within 1e-12 relative to
/// its largest entry.
SpectralDecomposition eig_hermitian(const CMatrix& m);

/// Spectrum of a state with eigenvalues below kZeroEigenvalue (and any
/// slightly negative ones) clamped to exactly zero.
SpectralDecomposition state_spectrum(const DensityMatrix& rho);

/// |<a|b>|^2
double fidelity(const CVector& a, const CVector& b);

// Random states. All generators are deterministic in the seed.
PureState random_pure(int dim, std::uint64_t seed,
                      std::optional<Split> split = std::nullopt);
DensityMatrix random_density(int dim, std::uint64_t seed,
                             std::optional<Split> split = std::nullopt);
PureState random_product_pure(Split dims, std::uint64_t seed);

enum class StateKind { Density, Pure, ProductPure };
std::variant<DensityMatrix, PureState> random_state(StateKind kind, Split dims,
                                                    std::uint64_t seed);

CVector haar_vector(int dim, Rng& rng);
CMatrix ginibre(int rows, int cols, Rng& rng);
CMatrix random_unitary(int dim, Rng& rng);
/// out_dim x in_dim matrix V with V^dagger V = I.
CMatrix random_isometry(int in_dim, int out_dim, Rng& rng);

struct PptVerdict {
  bool ppt = false;
  /// True only where PPT is equivalent to separability (two qubits).
  bool conclusive = false;
  double min_eigenvalue = 0.0;

  explicit operator bool() const { return ppt; }
};

CMatrix partial_transpose(const CMatrix& m, Split split);
PptVerdict is_ppt(const DensityMatrix& sigma);

/// sum_j sqrt(p_j) |jj> on a d x d system, d = p.size().
PureState schmidt_state(std::span<const double> p);
/// d^{-1/2} sum_j |jj>.
PureState maximally_entangled(int d);

}  // namespace qrent
