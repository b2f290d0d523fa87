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

#include "qrent/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qrent/closest.hpp"
#include "qrent/errors.hpp"
#include "qrent/fgen.hpp"
#include "qrent/qre.hpp"
#include "qrent/qstate.hpp"
#include "qrent/sepopt.hpp"

namespace qrent {

namespace {

// Running worst case of one invariant.
class Tracker {
 public:
  enum class Kind { AtMost, AtLeast };

  Tracker(std::string suite, std::string name, Kind kind, double bound)
      : suite_(std::move(suite)), name_(std::move(name)), kind_(kind), bound_(bound),
        observed_(kind == Kind::AtMost ? -std::numeric_limits<double>::infinity()
                                       : std::numeric_limits<double>::infinity()) {}

  void add(double x) {
    ++trials_;
    if (std::isnan(x)) nan_ = true;
    observed_ = kind_ == Kind::AtMost ? std::max(observed_, x) : std::min(observed_, x);
  }

  InvariantCheck done() const {
    InvariantCheck c{suite_, name_, observed_, bound_, 0.0, trials_, false};
    c.margin = kind_ == Kind::AtMost ? bound_ - observed_ : observed_ - bound_;
    c.passed = !nan_ && trials_ > 0 && c.margin >= 0.0;
    if (nan_) c.observed = std::numeric_limits<double>::quiet_NaN();
    return c;
  }

 private:
  std::string suite_, name_;
  Kind kind_;
  double bound_;
  double observed_;
  int trials_ = 0;
  bool nan_ = false;
};

using Kind = Tracker::Kind;

Rng trial_rng(std::uint64_t seed, int trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial)};
  return Rng(seq);
}

std::vector<GeneratorFunction> sample_generators() {
  std::vector<GeneratorFunction> out;
  for (const auto& s : builtin_samples()) out.push_back(parse_generator(s));
  return out;
}

DensityMatrix pure_density(const ClosestResult& r) {
  const PureState psi = r.state();
  return psi.density().with_split(psi.require_split());
}

}  // namespace

Suite parse_suite(const std::string& name) {
  if (name == "functions") return Suite::Functions;
  if (name == "divergence") return Suite::Divergence;
  if (name == "theorems") return Suite::Theorems;
  if (name == "all") return Suite::All;
  throw UsageError("unknown suite '" + name + "' (functions, divergence, theorems, all)");
}

const char* to_string(Suite s) {
  switch (s) {
    case Suite::Functions: return "functions";
    case Suite::Divergence: return "divergence";
    case Suite::Theorems: return "theorems";
    case Suite::All: return "all";
  }
  return "all";
}

bool VerifyReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

VerifyReport verify_functions(std::uint64_t /*seed*/) {
  const std::string suite = "functions";
  Tracker representation(suite, "representation_error", Kind::AtMost, kRepresentationTolerance);
  Tracker bf(suite, "b_f_from_measure_error", Kind::AtMost, 1e-8);
  Tracker closed(suite, "closed_form_hf_vs_quadrature", Kind::AtMost, kClosedFormAgreement);
  Tracker cauchy(suite, "cauchy_schwarz_slack", Kind::AtLeast, -1e-10);
  Tracker geometric(suite, "gf_below_hf_of_geometric_mean_slack", Kind::AtLeast, -1e-10);
  Tracker shape(suite, "classify_hf_matches_expectation", Kind::AtLeast, 1.0);

  for (const auto& f : sample_generators()) {
    representation.add(verify_representation(f).max_abs_error);
    bf.add(std::abs(bf_from_measure(f) - f.b_f()));
    for (int i = 1; i <= 49; ++i) {
      const double p = 0.02 * i;
      const double exact = *f.closed_gf(p, p);
      closed.add(std::abs(exact - hf_quadrature(f, p).value));
    }
    std::vector<double> grid, h;
    for (int i = 1; i <= 20; ++i) {
      grid.push_back(0.05 * i);
      h.push_back(hf(f, grid.back()));
    }
    for (int i = 0; i < 20; ++i)
      for (int j = 0; j < 20; ++j) {
        const double g = gf(f, grid[i], grid[j]);
        cauchy.add(h[i] * h[j] - g * g);
        geometric.add(hf(f, std::sqrt(grid[i] * grid[j])) - g);
      }
    // H_f(p) = 1 for -log and c s p^s for the power families.
    const HfShape expected = f.name() == "neg_log" ? HfShape::Constant : HfShape::Increasing;
    shape.add(classify_hf(f) == expected ? 1.0 : 0.0);
  }
  return {{representation.done(), bf.done(), closed.done(), cauchy.done(), geometric.done(),
           shape.done()}};
}

VerifyReport verify_divergence(std::uint64_t seed, int trials) {
  const std::string suite = "divergence";
  Tracker nonneg(suite, "nonnegativity", Kind::AtLeast, -1e-10);
  Tracker self(suite, "self_divergence", Kind::AtMost, 1e-10);
  Tracker unitary(suite, "unitary_invariance_error", Kind::AtMost, 1e-9);
  Tracker dpi(suite, "data_processing_violation", Kind::AtMost, 1e-9);
  Tracker modular(suite, "spectral_vs_modular_error", Kind::AtMost, 1e-9);

  const auto gens = sample_generators();
  for (int t = 0; t < trials; ++t) {
    Rng rng = trial_rng(seed, t);
    const int d = 2 + t % 3;
    const GeneratorFunction& f = gens[t % gens.size()];
    const DensityMatrix rho = random_density(d, rng());
    const DensityMatrix sigma = random_density(d, rng());
    const double s = qre_spectral(rho, sigma, f);
    nonneg.add(s);
    self.add(std::abs(qre_spectral(rho, rho, f)));

    const CMatrix u = random_unitary(d, rng);
    const DensityMatrix ur(u * rho.matrix() * u.adjoint());
    const DensityMatrix us(u * sigma.matrix() * u.adjoint());
    unitary.add(std::abs(qre_spectral(ur, us, f) - s));

    // Stinespring dilation into C^d (x) C^2 followed by discarding C^2.
    const CMatrix v = random_isometry(d, 2 * d, rng);
    auto channel = [&](const DensityMatrix& x) {
      return partial_trace(DensityMatrix(v * x.matrix() * v.adjoint(), Split{d, 2}), Subsystem::B);
    };
    dpi.add(qre_spectral(channel(rho), channel(sigma), f) - s);

    modular.add(std::abs(qre_modular(rho, sigma, f) - s));
  }
  return {{nonneg.done(), self.done(), unitary.done(), dpi.done(), modular.done()}};
}

VerifyReport verify_theorems(std::uint64_t seed) {
  const std::string suite = "theorems";
  Tracker consistency(suite, "qubit_half_equals_maxent", Kind::AtMost, 1e-10);
  Tracker sign(suite, "bullet_sign_q_matches_p", Kind::AtLeast, 0.0);
  Tracker bracket(suite, "bullet_bracketing", Kind::AtLeast, 0.0);
  Tracker recompute(suite, "reported_E_vs_qre_spectral", Kind::AtMost, 1e-10);
  Tracker certificate(suite, "certificate_minimum", Kind::AtLeast, kCertificateTolerance);
  Tracker dominance(suite, "oracle_minus_E", Kind::AtLeast, -1e-6);
  Tracker gap(suite, "oracle_gap", Kind::AtMost, 1e-3);

  const auto gens = sample_generators();
  CertifyOptions copts;
  copts.seed = seed;
  std::vector<std::pair<const GeneratorFunction*, ClosestResult>> results;

  for (const auto& f : gens) {
    const ClosestResult half = closest_two_qubit(0.5, f, copts);
    const ClosestResult max2 = closest_maxent(2, f, copts);
    consistency.add(std::max(std::abs(half.entanglement - max2.entanglement),
                             (half.sigma_star.matrix() - max2.sigma_star.matrix()).cwiseAbs().maxCoeff()));
    results.emplace_back(&f, max2);
    results.emplace_back(&f, closest_maxent(3, f, copts));

    const HfShape shape = classify_hf(f);
    for (int i = 1; i <= 19; ++i) {
      const double p = 0.05 * i;
      const double q = solve_q(p, f);
      const double sp = p - 0.5, sq = q - 0.5;
      sign.add(sp == 0.0 ? (sq == 0.0 ? 1.0 : -1.0) : sp * sq);
      if (shape == HfShape::Increasing) bracket.add(sp * (q - p));
      if (shape == HfShape::Decreasing) bracket.add(-sp * (q - p));
    }
    results.emplace_back(&f, closest_two_qubit(0.75, f, copts));
  }

  const GeneratorFunction& neg_log = gens.front();
  Rng rng = trial_rng(seed, 0);
  for (int t = 0; t < 6; ++t) {
    const CVector v = haar_vector(2 + t % 2, rng);
    std::vector<double> p(v.size());
    for (Eigen::Index j = 0; j < v.size(); ++j) p[j] = std::norm(v(j));
    results.emplace_back(&neg_log, closest_pure_flatH(p, neg_log, copts));
  }

  for (const auto& [f, r] : results) {
    recompute.add(std::abs(r.entanglement - qre_spectral(pure_density(r), r.sigma_star, *f)));
    certificate.add(r.certificate.min_directional_derivative);
  }

  // Oracle runs cover the two-qubit results, which are the cheap ones.
  OptimizerConfig cfg;
  cfg.seed = seed;
  for (const auto& [f, r] : results) {
    if (r.basis_a.rows() != 2 || r.basis_b.rows() != 2) continue;
    const MinimizeResult m =
        minimize(pure_density(r), *f, cfg, diagonal_ensemble(r.q, r.basis_a, r.basis_b));
    dominance.add(m.value - r.entanglement);
    gap.add(m.value - r.entanglement);
  }

  return {{consistency.done(), sign.done(), bracket.done(), recompute.done(), certificate.done(),
           dominance.done(), gap.done()}};
}

VerifyReport run_suite(Suite suite, std::uint64_t seed) {
  switch (suite) {
    case Suite::Functions: return verify_functions(seed);
    case Suite::Divergence: return verify_divergence(seed);
    case Suite::Theorems: return verify_theorems(seed);
    case Suite::All: break;
  }
  VerifyReport all = verify_functions(seed);
  const VerifyReport d = verify_divergence(seed);
  const VerifyReport t = verify_theorems(seed);
  all.checks.insert(all.checks.end(), d.checks.begin(), d.checks.end());
  all.checks.insert(all.checks.end(), t.checks.begin(), t.checks.end());
  return all;
}

}  // namespace qrent
