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

#include "qrent/closest.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "qrent/errors.hpp"

namespace qrent {

namespace {

constexpr double kBracketEpsilon = 1e-9;
constexpr double kBisectionTolerance = 1e-12;
constexpr double kResidualTolerance = 1e-10;

void require_distribution(std::span<const double> p) {
  if (p.empty()) throw DomainError("empty Schmidt vector");
  double total = 0.0;
  for (double x : p) {
    if (!(x >= 0.0 && x <= 1.0)) throw DomainError("Schmidt coefficients must lie in [0, 1]");
    total += x;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    std::ostringstream os;
    os << "Schmidt coefficients must sum to 1 (sum is " << total << ")";
    throw DomainError(os.str());
  }
}

DensityMatrix embed(std::span<const double> q, const CMatrix& basis_a, const CMatrix& basis_b) {
  const int da = static_cast<int>(basis_a.rows());
  const int db = static_cast<int>(basis_b.rows());
  CMatrix m = CMatrix::Zero(da * db, da * db);
  for (std::size_t j = 0; j < q.size(); ++j) {
    if (q[j] == 0.0) continue;
    CVector v(da * db);
    for (int i = 0; i < da; ++i) v.segment(i * db, db) = basis_a(i, j) * basis_b.col(j);
    m += q[j] * v * v.adjoint();
  }
  m = 0.5 * (m + m.adjoint());
  return DensityMatrix(std::move(m), Split{da, db});
}

// sum_j p_j f(q_j) with 0 * anything = 0.
ExtendedReal weighted_value(std::span<const double> p, std::span<const double> q,
                            const GeneratorFunction& f) {
  double total = 0.0;
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (p[j] == 0.0) continue;
    if (q[j] == 0.0) {
      if (std::isinf(f.limit_at_zero())) return kPlusInfinity;
      total += p[j] * f.limit_at_zero();
      continue;
    }
    total += p[j] * f(q[j]);
  }
  return total;
}

ClosestResult assemble(std::vector<double> p, std::vector<double> q, CMatrix basis_a,
                       CMatrix basis_b, ExtendedReal value, Theorem theorem,
                       const GeneratorFunction& f, const CertifyOptions& opts) {
  ClosestResult r;
  r.sigma_star = embed(q, basis_a, basis_b);
  r.entanglement = value;
  r.p = std::move(p);
  r.q = std::move(q);
  r.basis_a = std::move(basis_a);
  r.basis_b = std::move(basis_b);
  r.certificate = certify(r, f, opts.samples, opts.seed, opts.quadrature);
  r.certificate.theorem = theorem;
  return r;
}

}  // namespace

const char* to_string(Theorem t) {
  switch (t) {
    case Theorem::MaxEntangled: return "max";
    case Theorem::FlatH: return "flatH";
    case Theorem::Qubit: return "qubit";
  }
  return "max";
}

PureState ClosestResult::state() const {
  const int da = static_cast<int>(basis_a.rows());
  const int db = static_cast<int>(basis_b.rows());
  CVector v = CVector::Zero(da * db);
  for (std::size_t j = 0; j < p.size(); ++j) {
    const double s = std::sqrt(p[j]);
    for (int i = 0; i < da; ++i) v.segment(i * db, db) += s * basis_a(i, j) * basis_b.col(j);
  }
  return PureState::normalized(v, Split{da, db});
}

ClosestResult closest_maxent(int d, const GeneratorFunction& f, const CertifyOptions& opts) {
  if (d < 2) throw DomainError("maximally entangled state needs d >= 2");
  std::vector<double> p(d, 1.0 / d);
  const CMatrix id = CMatrix::Identity(d, d);
  return assemble(p, p, id, id, f(1.0 / d), Theorem::MaxEntangled, f, opts);
}

ClosestResult closest_pure_flatH(const SchmidtForm& schmidt, const GeneratorFunction& f,
                                 const CertifyOptions& opts) {
  std::vector<double> p(schmidt.coefficients.data(),
                        schmidt.coefficients.data() + schmidt.coefficients.size());
  require_distribution(p);
  if (f.a_f() != 0.0) throw HypothesisError("flat-H construction requires a_f = 0", "flatH");
  const HfShape shape = classify_hf(f, opts.quadrature);
  if (shape != HfShape::Constant)
    throw HypothesisError(std::string("flat-H construction requires constant H_f; H_f of ") +
                              f.spec() + " is " + to_string(shape),
                          "flatH");
  const ExtendedReal value = weighted_value(p, p, f);
  return assemble(p, p, schmidt.basis_a, schmidt.basis_b, value, Theorem::FlatH, f, opts);
}

ClosestResult closest_pure_flatH(std::span<const double> p, const GeneratorFunction& f,
                                 const CertifyOptions& opts) {
  require_distribution(p);
  const int d = static_cast<int>(p.size());
  SchmidtForm s;
  s.coefficients = Eigen::Map<const RVector>(p.data(), d);
  s.basis_a = CMatrix::Identity(d, d);
  s.basis_b = CMatrix::Identity(d, d);
  return closest_pure_flatH(s, f, opts);
}

double qubit_rhs(double q, const GeneratorFunction& f, const QuadratureSpec& spec) {
  const double num = q * hf(f, 1.0 - q, spec);
  return num / (num + (1.0 - q) * hf(f, q, spec));
}

double solve_q(double p, const GeneratorFunction& f, const QuadratureSpec& spec) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("solve_q needs p in (0, 1)");
  if (f.a_f() != 0.0) throw HypothesisError("qubit construction requires a_f = 0", "qubit");
  const HfShape shape = classify_hf(f, spec);
  if (shape == HfShape::Other)
    throw HypothesisError("qubit construction requires H_f constant or monotone; H_f of " +
                              f.spec() + " is not",
                          "qubit");
  if (shape == HfShape::Constant) return p;
  if (p == 0.5) return 0.5;

  auto g = [&](double q) { return qubit_rhs(q, f, spec) - p; };
  double lo, hi;
  if (shape == HfShape::Increasing) {
    lo = p > 0.5 ? p : kBracketEpsilon;
    hi = p > 0.5 ? 1.0 - kBracketEpsilon : p;
  } else {
    lo = p > 0.5 ? 0.5 : p;
    hi = p > 0.5 ? p : 0.5;
  }
  double glo = g(lo), ghi = g(hi);

  if (glo * ghi > 0.0) {
    // Fallback: scan the whole open interval for a sign change.
    constexpr int kScan = 200;
    std::ostringstream samples;
    bool found = false;
    double x0 = kBracketEpsilon, g0 = g(x0);
    samples << "rhs-p samples:";
    for (int i = 1; i <= kScan && !found; ++i) {
      const double x1 = kBracketEpsilon + (1.0 - 2.0 * kBracketEpsilon) * i / kScan;
      const double g1 = g(x1);
      if (i % 40 == 0) samples << " (" << x1 << ", " << g1 << ")";
      if (g0 * g1 <= 0.0) {
        lo = x0, hi = x1, glo = g0, ghi = g1;
        found = true;
      }
      x0 = x1, g0 = g1;
    }
    if (!found)
      throw NumericError("solve_q found no sign change of rhs(q) - p; " + samples.str(),
                         std::min(std::abs(glo), std::abs(ghi)));
  }

  while (hi - lo > kBisectionTolerance) {
    const double mid = 0.5 * (lo + hi);
    const double gm = g(mid);
    if (gm == 0.0) return mid;
    if ((gm < 0.0) == (glo < 0.0)) {
      lo = mid;
      glo = gm;
    } else {
      hi = mid;
      ghi = gm;
    }
  }
  const double q = 0.5 * (lo + hi);
  const double residual = std::abs(g(q));
  if (residual > kResidualTolerance) {
    std::ostringstream os;
    os << "solve_q residual " << residual << " exceeds tolerance at q = " << q;
    throw NumericError(os.str(), residual);
  }
  return q;
}

double partial_derivative_00(double p, double q, const GeneratorFunction& f,
                             const QuadratureSpec& spec) {
  return (1.0 - p) * hf(f, 1.0 - q, spec) - p * (1.0 - q) / q * hf(f, q, spec);
}

double partial_derivative_11(double p, double q, const GeneratorFunction& f,
                             const QuadratureSpec& spec) {
  return p * hf(f, q, spec) - (1.0 - p) * q / (1.0 - q) * hf(f, 1.0 - q, spec);
}

ClosestResult closest_two_qubit(double p, const GeneratorFunction& f, const CertifyOptions& opts) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("two-qubit Schmidt weight must lie in [0, 1]");
  const CMatrix id = CMatrix::Identity(2, 2);
  if (p == 0.0 || p == 1.0) {
    // Product input: sigma* = rho, no solve needed.
    return assemble({p, 1.0 - p}, {p, 1.0 - p}, id, id, 0.0, Theorem::Qubit, f, opts);
  }
  const double q = solve_q(p, f, opts.quadrature);
  const ExtendedReal value = p * f(q) + (1.0 - p) * f(1.0 - q);
  ClosestResult r = assemble({p, 1.0 - p}, {q, 1.0 - q}, id, id, value, Theorem::Qubit, f, opts);
  r.edge_derivatives = {partial_derivative_00(p, q, f, opts.quadrature),
                        partial_derivative_11(p, q, f, opts.quadrature)};
  return r;
}

ClosestResult closest_two_qubit(const SchmidtForm& schmidt, const GeneratorFunction& f,
                                const CertifyOptions& opts) {
  if (schmidt.basis_a.rows() != 2 || schmidt.basis_b.rows() != 2)
    throw DomainError("two-qubit construction needs a 2 x 2 state");
  return rebase(closest_two_qubit(schmidt.coefficients(0), f, opts), schmidt.basis_a,
                schmidt.basis_b);
}

ClosestResult rebase(ClosestResult result, const CMatrix& basis_a, const CMatrix& basis_b) {
  const auto r = static_cast<Eigen::Index>(result.q.size());
  if (basis_a.cols() < r || basis_b.cols() < r)
    throw UsageError("bases have fewer columns than Schmidt coefficients");
  result.basis_a = basis_a;
  result.basis_b = basis_b;
  result.sigma_star = embed(result.q, basis_a, basis_b);
  return result;
}

// DirectionalDerivative ------------------------------------------------------

DirectionalDerivative::DirectionalDerivative(std::span<const double> p, std::span<const double> q,
                                             const GeneratorFunction& f,
                                             const QuadratureSpec& spec) {
  if (p.size() != q.size()) throw UsageError("p and q must have the same length");
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (p[j] <= 0.0) continue;
    if (!(q[j] > 0.0)) throw DomainError("q_j must be positive wherever p_j is");
    active_.push_back(static_cast<int>(j));
  }
  const auto n = static_cast<Eigen::Index>(active_.size());
  coupling_.resize(n, n);
  std::vector<double> h(active_.size());
  for (Eigen::Index x = 0; x < n; ++x) {
    const int j = active_[x];
    h[x] = hf(f, q[j], spec);
    constant_ += p[j] * h[x];
  }
  for (Eigen::Index x = 0; x < n; ++x) {
    const int j = active_[x];
    coupling_(x, x) = p[j] / q[j] * h[x];
    for (Eigen::Index y = x + 1; y < n; ++y) {
      const int k = active_[y];
      const double c = std::sqrt(p[j] * p[k] / (q[j] * q[k])) * gf(f, q[j], q[k], spec);
      coupling_(x, y) = c;
      coupling_(y, x) = c;
    }
  }
}

double DirectionalDerivative::operator()(const CVector& a, const CVector& b) const {
  const auto n = static_cast<Eigen::Index>(active_.size());
  CVector z(n);
  for (Eigen::Index x = 0; x < n; ++x) {
    const int j = active_[x];
    if (j >= a.size() || j >= b.size()) throw UsageError("local vector too short for Schmidt index");
    z(x) = a(j) * b(j);
  }
  const Complex quad = z.dot(coupling_.cast<Complex>() * z);
  return constant_ - quad.real();
}

double directional_derivative(std::span<const double> p, std::span<const double> q,
                              const GeneratorFunction& f, const CVector& a, const CVector& b,
                              const QuadratureSpec& spec) {
  return DirectionalDerivative(p, q, f, spec)(a, b);
}

Certificate certify(const ClosestResult& result, const GeneratorFunction& f, int samples,
                    std::uint64_t seed, const QuadratureSpec& spec) {
  if (samples <= 0) throw UsageError("certificate needs a positive sample count");
  const DirectionalDerivative dd(result.p, result.q, f, spec);
  Rng rng(seed);
  const int da = static_cast<int>(result.basis_a.rows());
  const int db = static_cast<int>(result.basis_b.rows());
  Certificate c;
  c.samples = samples;
  c.seed = seed;
  c.theorem = result.certificate.theorem;
  c.min_directional_derivative = std::numeric_limits<double>::infinity();
  for (int s = 0; s < samples; ++s) {
    // Haar measure is basis independent, so draws are taken directly in
    // Schmidt-basis coordinates.
    const CVector a = haar_vector(da, rng);
    const CVector b = haar_vector(db, rng);
    c.min_directional_derivative = std::min(c.min_directional_derivative, dd(a, b));
  }
  return c;
}

}  // namespace qrent
