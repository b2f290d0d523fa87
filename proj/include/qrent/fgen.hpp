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

// Operator monotone decreasing generators f with f(1) = 0, stored through
// their integral representation
//
//   f(x) = a_f (1 - x) + int_0^inf (1/(t+x) - 1/(t+1)) m(t) dt,
//
// with a density m(t) = c * t^s, 0 <= s < 1. The integrals
//
//   G_f(p, q) = int_0^inf sqrt(pq) / ((t+p)(t+q)) m(t) dt,   H_f(p) = G_f(p, p)
//
// drive the optimality conditions for closest separable states.

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qrent/quadrature.hpp"

namespace qrent {

/// m(t) = scale * t^exponent. The exponent is the singular-exponent
/// annotation used to pick quadrature substitutions.
struct PowerMeasure {
  double scale = 1.0;
  double exponent = 0.0;

  double density(double t) const;
};

class GeneratorFunction {
 public:
  struct Definition {
    std::string name;
    std::vector<double> params;
    std::function<double(double)> closed_form;
    double a_f = 0.0;
    double b_f = 0.0;
    PowerMeasure measure;
    /// lim_{x -> 0+} f(x); +inf when it diverges.
    double limit_at_zero = 0.0;
    /// Analytic G_f(p, q) (including p == q) when known.
    std::function<double(double, double)> closed_g;
    std::string domain_note;
  };

  /// Checks f(1) = 0, convex-decreasing shape on a grid, and (for a_f = 0)
  /// the integral representation against the closed form. Throws
  /// DomainError on failure.
  explicit GeneratorFunction(Definition def);

  double operator()(double x) const { return def_.closed_form(x); }

  const std::string& name() const { return def_.name; }
  const std::vector<double>& params() const { return def_.params; }
  double a_f() const { return def_.a_f; }
  double b_f() const { return def_.b_f; }
  const PowerMeasure& measure() const { return def_.measure; }
  double limit_at_zero() const { return def_.limit_at_zero; }
  const std::string& domain_note() const { return def_.domain_note; }
  bool has_closed_g() const { return static_cast<bool>(def_.closed_g); }
  std::optional<double> closed_gf(double p, double q) const;

  /// Registry string, e.g. "power_entropy:0.5".
  std::string spec() const;

 private:
  Definition def_;
};

/// Built-ins: neg_log (alias log), neg_power (alias power), scaled_power,
/// tsallis, power_entropy. Every parameter must lie in (0, 1).
GeneratorFunction make_builtin(const std::string& name, const std::vector<double>& params = {});

/// Parses "log", "power:p", "scaled_power:p", "tsallis:q", "power_entropy:alpha".
GeneratorFunction parse_generator(const std::string& spec);

/// Registry strings with representative parameters, one per family and a
/// few extra exponents.
std::vector<std::string> builtin_samples();

/// sqrt(pq) / ((t+p)(t+q))
double integrand_g(double t, double p, double q);

QuadratureResult hf_quadrature(const GeneratorFunction& f, double p, const QuadratureSpec& spec = {});
QuadratureResult gf_quadrature(const GeneratorFunction& f, double p, double q,
                               const QuadratureSpec& spec = {});

/// Tolerance for agreement between analytic and quadrature H_f / G_f.
inline constexpr double kClosedFormAgreement = 1e-8;

/// H_f(p) for p in (0, 1]. Returns the analytic value when the generator
/// carries one, after checking it against quadrature; NumericError on
/// disagreement or quadrature failure. DomainError when a_f != 0.
double hf(const GeneratorFunction& f, double p, const QuadratureSpec& spec = {});

/// G_f(p, q), symmetric by construction (arguments are sorted first).
double gf(const GeneratorFunction& f, double p, double q, const QuadratureSpec& spec = {});

enum class HfShape { Constant, Increasing, Decreasing, Other };
const char* to_string(HfShape s);

/// Shape of H_f on p = 0.02, 0.04, ..., 0.98: constant when the total
/// variation is at most 1e-7, increasing/decreasing when every step moves by
/// more than 1e-9 in one direction.
HfShape classify_hf(const GeneratorFunction& f, const QuadratureSpec& spec = {});

struct RepresentationPoint {
  double x = 0.0;
  double closed_form = 0.0;
  double reconstructed = 0.0;
  double abs_error = 0.0;
};

struct RepresentationReport {
  std::vector<RepresentationPoint> points;
  double max_abs_error = 0.0;
  bool passed = false;
};

inline constexpr double kRepresentationTolerance = 1e-8;

/// Rebuilds f(x) = a_f (1-x) + int (1/(t+x) - 1/(t+1)) m(t) dt at
/// x in {0.1, 0.5, 1, 2, 10} and compares with the closed form.
RepresentationReport verify_representation(const GeneratorFunction& f,
                                           const QuadratureSpec& spec = {});

/// int (1/(t+1) - t/(t^2+1)) m(t) dt - a_f, which must equal b_f when f(1) = 0.
double bf_from_measure(const GeneratorFunction& f, const QuadratureSpec& spec = {});

struct ShapeDiagnostic {
  bool decreasing = false;
  bool convex = false;
  double worst_increase = 0.0;    // max f(x_{i+1}) - f(x_i)
  double worst_concavity = 0.0;   // min second difference
};

/// Finite-difference shape check on x = 0.01, 0.02, ..., 10.
ShapeDiagnostic check_convex_decreasing(const std::function<double(double)>& f);

}  // namespace qrent
