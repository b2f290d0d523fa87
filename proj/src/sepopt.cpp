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

#include "qrent/sepopt.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

#include "qrent/errors.hpp"

namespace qrent {

namespace {

constexpr double kInitialStep = 0.5;
constexpr double kEnsembleTolerance = 1e-12;

using RealVector = Eigen::VectorXd;

struct NmOutcome {
  RealVector x;
  double fx = 0.0;
  int iterations = 0;
  int evaluations = 0;
};

// Nelder-Mead with the dimension-adaptive coefficients of Gao and Han.
NmOutcome nelder_mead(const std::function<double(const RealVector&)>& fn, const RealVector& x0,
                      double fx0, double step, int max_iter, double ftol) {
  const int n = static_cast<int>(x0.size());
  const double expand = 1.0 + 2.0 / n;
  const double contract = 0.75 - 0.5 / n;
  const double shrink = 1.0 - 1.0 / n;

  std::vector<RealVector> xs(n + 1, x0);
  std::vector<double> fs(n + 1, fx0);
  NmOutcome out;
  for (int i = 0; i < n; ++i) {
    xs[i + 1](i) += step;
    fs[i + 1] = fn(xs[i + 1]);
    ++out.evaluations;
  }
  std::vector<int> order(n + 1);
  auto eval = [&](const RealVector& x) {
    ++out.evaluations;
    return fn(x);
  };

  for (; out.iterations < max_iter; ++out.iterations) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return fs[a] < fs[b]; });
    const int best = order[0], worst = order[n], second = order[n - 1];
    if (fs[worst] - fs[best] <= ftol) break;

    RealVector centroid = RealVector::Zero(n);
    for (int i = 0; i < n; ++i) centroid += xs[order[i]];
    centroid /= n;

    const RealVector xr = centroid + (centroid - xs[worst]);
    const double fr = eval(xr);
    if (fr < fs[best]) {
      const RealVector xe = centroid + expand * (xr - centroid);
      const double fe = eval(xe);
      if (fe < fr) {
        xs[worst] = xe, fs[worst] = fe;
      } else {
        xs[worst] = xr, fs[worst] = fr;
      }
      continue;
    }
    if (fr < fs[second]) {
      xs[worst] = xr, fs[worst] = fr;
      continue;
    }
    const bool outside = fr < fs[worst];
    const RealVector xc = outside ? RealVector(centroid + contract * (xr - centroid))
                                  : RealVector(centroid + contract * (xs[worst] - centroid));
    const double fc = eval(xc);
    if (outside ? fc <= fr : fc < fs[worst]) {
      xs[worst] = xc, fs[worst] = fc;
      continue;
    }
    for (int i = 1; i <= n; ++i) {
      const int v = order[i];
      xs[v] = xs[best] + shrink * (xs[v] - xs[best]);
      fs[v] = eval(xs[v]);
    }
  }
  const auto it = std::min_element(fs.begin(), fs.end());
  out.x = xs[it - fs.begin()];
  out.fx = *it;
  return out;
}

CVector kron(const CVector& a, const CVector& b) {
  CVector v(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) v.segment(i * b.size(), b.size()) = a(i) * b;
  return v;
}

SpectralDecomposition clamped_spectrum(const CMatrix& sigma) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(sigma);
  SpectralDecomposition sd;
  sd.eigenvalues = es.eigenvalues();
  for (Eigen::Index i = 0; i < sd.eigenvalues.size(); ++i)
    if (sd.eigenvalues(i) < tol::kZeroEigenvalue) sd.eigenvalues(i) = 0.0;
  sd.eigenvectors = es.eigenvectors();
  return sd;
}

// Working state of one restart.
class Search {
 public:
  Search(const SpectralDecomposition& rho, const GeneratorFunction& f, int da, int db)
      : rho_(rho), f_(f), da_(da), db_(db), na_(2 * (da - 1)), nb_(2 * (db - 1)) {}

  void load(const ProductEnsemble& e) {
    weights_ = e.weights;
    angles_.clear();
    vectors_.clear();
    for (int i = 0; i < e.size(); ++i) {
      std::vector<double> ang = angles_from_local(e.locals_a[i]);
      const std::vector<double> angb = angles_from_local(e.locals_b[i]);
      ang.insert(ang.end(), angb.begin(), angb.end());
      angles_.push_back(std::move(ang));
      vectors_.push_back(product_vector(angles_.back()));
    }
    current_ = objective(mixture());
  }

  ProductEnsemble ensemble() const {
    ProductEnsemble e{da_, db_, weights_, {}, {}};
    for (const auto& ang : angles_) {
      e.locals_a.push_back(local_from_angles(std::span(ang).first(na_), da_));
      e.locals_b.push_back(local_from_angles(std::span(ang).subspan(na_), db_));
    }
    return e;
  }

  double current() const { return current_; }
  int evaluations() const { return evaluations_; }

  // Optimizes component i; returns the Nelder-Mead iterations spent.
  int improve_block(int i, double step, int max_iter, double ftol) {
    const int k = static_cast<int>(weights_.size());
    const int n_ang = na_ + nb_;
    const bool has_weight = k > 1;

    CMatrix rest = CMatrix::Zero(dim(), dim());
    double rest_mass = 0.0;
    for (int j = 0; j < k; ++j) {
      if (j == i || weights_[j] == 0.0) continue;
      rest.selfadjointView<Eigen::Lower>().rankUpdate(vectors_[j], weights_[j]);
      rest_mass += weights_[j];
    }
    if (rest_mass > 0.0) {
      rest /= rest_mass;
    } else if (has_weight) {
      for (int j = 0; j < k; ++j)
        if (j != i) rest.selfadjointView<Eigen::Lower>().rankUpdate(vectors_[j], 1.0 / (k - 1));
    }
    rest.triangularView<Eigen::StrictlyUpper>() = rest.adjoint();

    auto split = [&](const RealVector& y, std::vector<double>& ang) {
      ang.assign(y.data(), y.data() + n_ang);
      return has_weight ? std::clamp(y(n_ang), 0.0, 1.0) : 1.0;
    };
    std::vector<double> ang;
    auto fn = [&](const RealVector& y) {
      const double w = split(y, ang);
      const CVector v = product_vector(ang);
      CMatrix sigma = (1.0 - w) * rest;
      sigma.noalias() += w * (v * v.adjoint());
      return objective(sigma);
    };

    RealVector y0(n_ang + (has_weight ? 1 : 0));
    for (int a = 0; a < n_ang; ++a) y0(a) = angles_[i][a];
    if (has_weight) y0(n_ang) = weights_[i];
    const NmOutcome nm = nelder_mead(fn, y0, current_, step, max_iter, ftol);
    evaluations_ += nm.evaluations;
    if (nm.fx < current_) {
      const double w = split(nm.x, ang);
      angles_[i] = ang;
      vectors_[i] = product_vector(ang);
      const double scale = rest_mass > 0.0 ? (1.0 - w) / rest_mass : 0.0;
      for (int j = 0; j < k; ++j) {
        if (j == i) continue;
        weights_[j] = rest_mass > 0.0 ? weights_[j] * scale : (1.0 - w) / (k - 1);
      }
      weights_[i] = w;
      const double total = std::accumulate(weights_.begin(), weights_.end(), 0.0);
      for (double& x : weights_) x /= total;
      current_ = nm.fx;
    }
    return std::max(nm.iterations, 1);
  }

 private:
  int dim() const { return da_ * db_; }

  CVector product_vector(const std::vector<double>& ang) const {
    return kron(local_from_angles(std::span(ang).first(na_), da_),
                local_from_angles(std::span(ang).subspan(na_), db_));
  }

  CMatrix mixture() const {
    CMatrix sigma = CMatrix::Zero(dim(), dim());
    for (std::size_t j = 0; j < weights_.size(); ++j)
      if (weights_[j] > 0.0) sigma.selfadjointView<Eigen::Lower>().rankUpdate(vectors_[j], weights_[j]);
    sigma.triangularView<Eigen::StrictlyUpper>() = sigma.adjoint();
    return sigma;
  }

  double objective(const CMatrix& sigma) {
    ++evaluations_;
    const double v = qre_from_spectra(rho_, clamped_spectrum(sigma), f_);
    return std::isfinite(v) ? v : kInfinitePenalty;
  }

  const SpectralDecomposition& rho_;
  const GeneratorFunction& f_;
  int da_, db_, na_, nb_;
  std::vector<double> weights_;
  std::vector<std::vector<double>> angles_;
  std::vector<CVector> vectors_;
  double current_ = 0.0;
  int evaluations_ = 0;
};

Rng restart_rng(std::uint64_t seed, int restart) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(restart)};
  return Rng(seq);
}

ProductEnsemble random_ensemble(int da, int db, int k, Rng& rng) {
  ProductEnsemble e{da, db, std::vector<double>(k, 1.0 / k), {}, {}};
  for (int i = 0; i < k; ++i) {
    e.locals_a.push_back(haar_vector(da, rng));
    e.locals_b.push_back(haar_vector(db, rng));
  }
  return e;
}

}  // namespace

// ProductEnsemble ------------------------------------------------------------

void ProductEnsemble::validate() const {
  if (dim_a < 1 || dim_b < 1) throw UsageError("ensemble dimensions must be positive");
  if (weights.empty()) throw UsageError("ensemble has no components");
  if (locals_a.size() != weights.size() || locals_b.size() != weights.size())
    throw UsageError("ensemble weights and locals differ in length");
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw DomainError("ensemble weights must be nonnegative");
    total += w;
  }
  if (std::abs(total - 1.0) > kEnsembleTolerance) throw DomainError("ensemble weights must sum to 1");
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (locals_a[i].size() != dim_a || locals_b[i].size() != dim_b)
      throw UsageError("ensemble local has the wrong dimension");
    if (std::abs(locals_a[i].norm() - 1.0) > kEnsembleTolerance ||
        std::abs(locals_b[i].norm() - 1.0) > kEnsembleTolerance)
      throw DomainError("ensemble locals must be unit vectors");
  }
}

DensityMatrix ProductEnsemble::assemble() const {
  validate();
  const int d = dim_a * dim_b;
  CMatrix sigma = CMatrix::Zero(d, d);
  for (int i = 0; i < size(); ++i) {
    const CVector v = kron(locals_a[i], locals_b[i]);
    sigma += weights[i] * v * v.adjoint();
  }
  sigma = 0.5 * (sigma + sigma.adjoint());
  return DensityMatrix(std::move(sigma), Split{dim_a, dim_b});
}

Json to_json(const ProductEnsemble& e) {
  Json locals = Json::array();
  for (int i = 0; i < e.size(); ++i) {
    Json a = to_json(e.locals_a[i]), b = to_json(e.locals_b[i]);
    locals.push_back({{"a", {{"re", a["re"]}, {"im", a["im"]}}},
                      {"b", {{"re", b["re"]}, {"im", b["im"]}}}});
  }
  return {{"dims", {e.dim_a, e.dim_b}}, {"weights", e.weights}, {"locals", locals}};
}

ProductEnsemble ensemble_from_json(const Json& j) {
  try {
    ProductEnsemble e;
    const auto dims = j.at("dims").get<std::vector<int>>();
    if (dims.size() != 2) throw UsageError("\"dims\" must have two entries");
    e.dim_a = dims[0];
    e.dim_b = dims[1];
    e.weights = j.at("weights").get<std::vector<double>>();
    for (const Json& l : j.at("locals")) {
      e.locals_a.push_back(cvector_from_json(l.at("a")));
      e.locals_b.push_back(cvector_from_json(l.at("b")));
    }
    e.validate();
    return e;
  } catch (const nlohmann::json::exception& ex) {
    throw UsageError(std::string("malformed ensemble JSON: ") + ex.what());
  }
}

ProductEnsemble diagonal_ensemble(std::span<const double> weights, const CMatrix& basis_a,
                                  const CMatrix& basis_b) {
  ProductEnsemble e;
  e.dim_a = static_cast<int>(basis_a.rows());
  e.dim_b = static_cast<int>(basis_b.rows());
  if (static_cast<Eigen::Index>(weights.size()) > std::min(basis_a.cols(), basis_b.cols()))
    throw UsageError("more weights than basis vectors");
  for (std::size_t j = 0; j < weights.size(); ++j) {
    e.weights.push_back(weights[j]);
    e.locals_a.push_back(basis_a.col(j));
    e.locals_b.push_back(basis_b.col(j));
  }
  e.validate();
  return e;
}

// Parametrization ------------------------------------------------------------

CVector local_from_angles(std::span<const double> angles, int d) {
  if (d < 1 || static_cast<int>(angles.size()) != 2 * (d - 1))
    throw UsageError("a local state in C^d takes 2(d-1) angles");
  const auto theta = angles.first(d - 1);
  const auto phi = angles.subspan(d - 1);
  CVector v(d);
  double radius = 1.0;
  for (int m = 0; m < d; ++m) {
    const double amp = m < d - 1 ? radius * std::cos(theta[m]) : radius;
    v(m) = m == 0 ? Complex(amp, 0.0) : std::polar(amp, phi[m - 1]);
    if (m < d - 1) radius *= std::sin(theta[m]);
  }
  return v;
}

std::vector<double> angles_from_local(const CVector& v) {
  const int d = static_cast<int>(v.size());
  if (d < 1) throw UsageError("empty local state");
  const double norm = v.norm();
  if (!(norm > 0.0)) throw DomainError("cannot parametrize the zero vector");
  CVector u = v / norm;
  // Global phase: make the first nonzero amplitude real positive.
  for (int m = 0; m < d; ++m) {
    if (std::abs(u(m)) > 0.0) {
      u *= std::polar(1.0, -std::arg(u(m)));
      break;
    }
  }
  std::vector<double> out(2 * (d - 1));
  for (int m = 0; m + 1 < d; ++m) {
    out[m] = std::atan2(u.tail(d - m - 1).norm(), std::abs(u(m)));
    out[d - 1 + m] = std::arg(u(m + 1));
  }
  return out;
}

// Optimizer ------------------------------------------------------------------

void OptimizerConfig::validate() const {
  if (restarts < 1) throw UsageError("restarts must be positive");
  if (max_iters < 1) throw UsageError("max_iters must be positive");
  if (!(tol > 0.0)) throw UsageError("tol must be positive");
  if (components && *components < 1) throw UsageError("component count must be positive");
}

ExtendedReal MinimizeResult::best_cold_value() const {
  ExtendedReal best = kPlusInfinity;
  for (const auto& r : restarts)
    if (!r.warm) best = std::min(best, r.value);
  return best;
}

std::optional<ExtendedReal> MinimizeResult::warm_value() const {
  for (const auto& r : restarts)
    if (r.warm) return r.value;
  return std::nullopt;
}

MinimizeResult minimize(const DensityMatrix& rho, const GeneratorFunction& f,
                        const OptimizerConfig& cfg, const std::optional<ProductEnsemble>& warm_start) {
  cfg.validate();
  if (f.a_f() != 0.0) throw DomainError("sepopt requires a generator with a_f = 0");
  const Split split = rho.require_split();
  const int k = cfg.components.value_or(split.dim() * split.dim());
  if (warm_start) {
    warm_start->validate();
    if (warm_start->dim_a != split.a || warm_start->dim_b != split.b)
      throw UsageError("warm start dimensions do not match the state");
  }
  const SpectralDecomposition rho_spec = state_spectrum(rho);

  MinimizeResult result;
  const int first = warm_start ? 0 : 1;
  for (int r = first; r <= cfg.restarts; ++r) {
    Rng rng = restart_rng(cfg.seed, r);
    ProductEnsemble start;
    if (r == 0) {
      start = *warm_start;
      const ProductEnsemble pad =
          random_ensemble(split.a, split.b, std::max(0, k - start.size()), rng);
      for (int i = 0; i < pad.size(); ++i) {
        start.weights.push_back(0.0);
        start.locals_a.push_back(pad.locals_a[i]);
        start.locals_b.push_back(pad.locals_b[i]);
      }
    } else {
      start = random_ensemble(split.a, split.b, k, rng);
    }

    Search search(rho_spec, f, split.a, split.b);
    search.load(start);
    RestartOutcome outcome;
    outcome.warm = r == 0;
    outcome.initial_value = search.current();

    const int n_block = 2 * (split.a - 1) + 2 * (split.b - 1) + (start.size() > 1 ? 1 : 0);
    const int inner = 2 * n_block + 2;
    std::vector<int> order(start.size());
    std::iota(order.begin(), order.end(), 0);
    double step = kInitialStep;
    while (outcome.iterations < cfg.max_iters) {
      const double before = search.current();
      std::shuffle(order.begin(), order.end(), rng);
      for (int i : order) {
        if (outcome.iterations >= cfg.max_iters) break;
        outcome.iterations += search.improve_block(
            i, step, std::min(inner, cfg.max_iters - outcome.iterations), cfg.tol);
      }
      // Keep the step while sweeps still pay off; shrink it otherwise.
      step *= before - search.current() > 1e-6 ? 0.8 : 0.5;
      if (step < cfg.tol) {
        outcome.converged = true;
        break;
      }
    }
    outcome.evaluations = search.evaluations();

    ProductEnsemble final_ensemble = search.ensemble();
    outcome.value = qre_spectral(rho, final_ensemble.assemble(), f);
    if (outcome.value < result.value || result.best_restart < 0) {
      result.value = outcome.value;
      result.ensemble = std::move(final_ensemble);
      result.best_restart = r;
    }
    result.restarts.push_back(outcome);
  }
  return result;
}

}  // namespace qrent
