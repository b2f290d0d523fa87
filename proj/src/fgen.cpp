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

#include "qrent/fgen.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "qrent/errors.hpp"

namespace qrent {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// k(t) on [0, 1] and k(1/w) / w^2 on w in (0, 1], plus the kernel's
// characteristic scales in t (used as breakpoints).
struct Kernel {
  std::function<double(double)> near;
  std::function<double(double)> tail;
  std::vector<double> scales;
};

// int_0^inf c t^s k(t) dt.
// On [0, 1] substitute t = v^{1/(1+s)}, which turns t^s dt into dv/(1+s).
// On [1, inf) substitute t = 1/w with w = z^{1/(1-s)}, which turns
// t^s dt into t^2 dz/(1-s); the kernel decays like t^-2 so k(t) t^2 stays
// bounded as z -> 0.
QuadratureResult integrate_measure(const PowerMeasure& m, const Kernel& k,
                                   const QuadratureSpec& spec) {
  spec.validate();
  const double s = m.exponent;
  const double near_factor = m.scale / (1.0 + s);
  const double tail_factor = m.scale / (1.0 - s);
  if (m.scale == 0.0) return {};

  std::vector<double> near_bp, tail_bp;
  for (double x : k.scales) {
    if (x > 0.0 && x < 1.0) near_bp.push_back(std::pow(x, 1.0 + s));
    if (x > 1.0) tail_bp.push_back(std::pow(1.0 / x, 1.0 - s));
  }

  const double near_exp = 1.0 / (1.0 + s);
  const double tail_exp = 1.0 / (1.0 - s);
  QuadratureSpec near_spec = spec, tail_spec = spec;
  near_spec.abs_tol = 0.5 * spec.abs_tol / near_factor;
  tail_spec.abs_tol = 0.5 * spec.abs_tol / tail_factor;

  const QuadratureResult a = integrate(
      [&](double v) { return k.near(s == 0.0 ? v : std::pow(v, near_exp)); }, 0.0, 1.0,
      near_spec, near_bp);
  const QuadratureResult b = integrate(
      [&](double z) { return k.tail(s == 0.0 ? z : std::pow(z, tail_exp)); }, 0.0, 1.0,
      tail_spec, tail_bp);

  QuadratureResult out;
  out.value = near_factor * a.value + tail_factor * b.value;
  out.error = near_factor * a.error + tail_factor * b.error;
  out.subdivisions = a.subdivisions + b.subdivisions;
  out.evaluations = a.evaluations + b.evaluations;
  return out;
}

Kernel g_kernel(double p, double q) {
  const double r = std::sqrt(p * q);
  return {[=](double t) { return r / ((t + p) * (t + q)); },
          [=](double w) { return r / ((1.0 + p * w) * (1.0 + q * w)); },
          {p, q}};
}

Kernel representation_kernel(double x) {
  return {[=](double t) { return (1.0 - x) / ((t + x) * (t + 1.0)); },
          [=](double w) { return (1.0 - x) / ((1.0 + x * w) * (1.0 + w)); },
          {x}};
}

constexpr std::array<double, 5> kRepresentationPoints = {0.1, 0.5, 1.0, 2.0, 10.0};

RepresentationReport representation_report(const GeneratorFunction::Definition& def,
                                           const QuadratureSpec& spec) {
  RepresentationReport rep;
  for (double x : kRepresentationPoints) {
    RepresentationPoint pt;
    pt.x = x;
    pt.closed_form = def.closed_form(x);
    pt.reconstructed =
        def.a_f * (1.0 - x) + integrate_measure(def.measure, representation_kernel(x), spec).value;
    pt.abs_error = std::abs(pt.closed_form - pt.reconstructed);
    rep.max_abs_error = std::max(rep.max_abs_error, pt.abs_error);
    rep.points.push_back(pt);
  }
  rep.passed = rep.max_abs_error <= kRepresentationTolerance;
  return rep;
}

// sqrt(r) * log(r) / (r - 1), continuous at r = 1.
double log_g_ratio(double r) {
  const double lr = std::log(r);
  if (lr == 0.0) return 1.0;
  return std::sqrt(r) * lr / std::expm1(lr);
}

// sqrt(r) * (r^s - 1) / (r - 1), continuous at r = 1 (value s).
double power_g_ratio(double r, double s) {
  const double lr = std::log(r);
  if (lr == 0.0) return s;
  return std::sqrt(r) * std::expm1(s * lr) / std::expm1(lr);
}

std::string format_param(double v) {
  std::array<char, 32> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

void require_open_unit(const std::string& name, double v) {
  if (!(v > 0.0 && v < 1.0)) {
    std::ostringstream os;
    os << name << " parameter must lie in (0, 1), got " << v;
    throw DomainError(os.str());
  }
}

// c * (1 - x^s) with its representation data.
GeneratorFunction::Definition power_family(std::string name, double param, double s, double c,
                                           std::string note) {
  GeneratorFunction::Definition d;
  d.name = std::move(name);
  d.params = {param};
  d.closed_form = [=](double x) { return c * (1.0 - std::pow(x, s)); };
  d.a_f = 0.0;
  d.b_f = c * (std::cos(s * std::numbers::pi / 2.0) - 1.0);
  d.measure = {c * std::sin(s * std::numbers::pi) / std::numbers::pi, s};
  d.limit_at_zero = c;
  d.closed_g = [=](double p, double q) { return c * std::pow(p, s) * power_g_ratio(q / p, s); };
  d.domain_note = std::move(note);
  return d;
}

}  // namespace

double PowerMeasure::density(double t) const {
  return exponent == 0.0 ? scale : scale * std::pow(t, exponent);
}

GeneratorFunction::GeneratorFunction(Definition def) : def_(std::move(def)) {
  if (!def_.closed_form) throw DomainError("generator needs a closed form");
  if (!(def_.a_f >= 0.0)) throw DomainError("a_f must be nonnegative");
  if (!(def_.measure.scale >= 0.0) || !(def_.measure.exponent >= 0.0) ||
      !(def_.measure.exponent < 1.0))
    throw DomainError("measure density must be c t^s with c >= 0 and 0 <= s < 1");
  if (std::abs(def_.closed_form(1.0)) > 1e-12)
    throw DomainError("generator " + def_.name + " violates f(1) = 0");
  const ShapeDiagnostic shape = check_convex_decreasing(def_.closed_form);
  if (!shape.decreasing || !shape.convex)
    throw DomainError("generator " + def_.name + " is not convex and decreasing on the sample grid");
  const RepresentationReport rep = representation_report(def_, QuadratureSpec{});
  if (!rep.passed) {
    std::ostringstream os;
    os << "generator " << def_.name << " does not match its integral representation (max error "
       << rep.max_abs_error << ")";
    throw DomainError(os.str());
  }
}

std::optional<double> GeneratorFunction::closed_gf(double p, double q) const {
  if (!def_.closed_g) return std::nullopt;
  return def_.closed_g(p, q);
}

std::string GeneratorFunction::spec() const {
  if (def_.name == "neg_log") return "log";
  std::string base = def_.name == "neg_power" ? "power" : def_.name;
  for (double p : def_.params) base += ":" + format_param(p);
  return base;
}

GeneratorFunction make_builtin(const std::string& name, const std::vector<double>& params) {
  const std::string canonical = name == "log" ? "neg_log" : name == "power" ? "neg_power" : name;
  auto one_param = [&]() {
    if (params.size() != 1) throw UsageError(canonical + " takes exactly one parameter");
    require_open_unit(canonical, params[0]);
    return params[0];
  };

  if (canonical == "neg_log") {
    if (!params.empty()) throw UsageError("neg_log takes no parameters");
    GeneratorFunction::Definition d;
    d.name = "neg_log";
    d.closed_form = [](double x) { return -std::log(x); };
    d.measure = {1.0, 0.0};
    d.limit_at_zero = kInf;
    d.closed_g = [](double p, double q) { return log_g_ratio(q / p); };
    d.domain_note = "no parameters";
    return GeneratorFunction(std::move(d));
  }
  if (canonical == "neg_power") {
    const double p = one_param();
    return GeneratorFunction(power_family("neg_power", p, p, 1.0, "f(x) = 1 - x^p, p in (0,1)"));
  }
  if (canonical == "scaled_power") {
    const double p = one_param();
    return GeneratorFunction(power_family("scaled_power", p, p, 1.0 / (p * (1.0 - p)),
                                          "f(x) = (1 - x^p)/(p(1-p)), p in (0,1)"));
  }
  if (canonical == "tsallis") {
    const double q = one_param();
    return GeneratorFunction(power_family("tsallis", q, 1.0 - q, 1.0 / (1.0 - q),
                                          "f(x) = (1 - x^{1-q})/(1-q), q in (0,1)"));
  }
  if (canonical == "power_entropy") {
    const double a = one_param();
    return GeneratorFunction(
        power_family("power_entropy", a, 1.0 - a, 1.0, "f(x) = 1 - x^{1-alpha}, alpha in (0,1)"));
  }
  throw UsageError("unknown generator function '" + name + "'");
}

GeneratorFunction parse_generator(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  std::vector<double> params;
  if (colon != std::string::npos) {
    const std::string arg = spec.substr(colon + 1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), v);
    if (arg.empty() || ec != std::errc() || ptr != arg.data() + arg.size())
      throw UsageError("malformed parameter in generator spec '" + spec + "'");
    params.push_back(v);
  }
  return make_builtin(name, params);
}

std::vector<std::string> builtin_samples() {
  return {"log",          "power:0.5",     "power:0.3",         "scaled_power:0.5",
          "tsallis:0.3",  "tsallis:0.5",   "power_entropy:0.3", "power_entropy:0.5",
          "power_entropy:0.7"};
}

double integrand_g(double t, double p, double q) {
  return std::sqrt(p * q) / ((t + p) * (t + q));
}

QuadratureResult hf_quadrature(const GeneratorFunction& f, double p, const QuadratureSpec& spec) {
  return gf_quadrature(f, p, p, spec);
}

QuadratureResult gf_quadrature(const GeneratorFunction& f, double p, double q,
                               const QuadratureSpec& spec) {
  if (!(p > 0.0) || !(q > 0.0)) throw DomainError("G_f needs p, q > 0");
  return integrate_measure(f.measure(), g_kernel(std::min(p, q), std::max(p, q)), spec);
}

namespace {

void require_unit_arg(double p) {
  if (!(p > 0.0 && p <= 1.0)) {
    std::ostringstream os;
    os << "argument must lie in (0, 1], got " << p;
    throw DomainError(os.str());
  }
}

void require_zero_af(const GeneratorFunction& f) {
  if (f.a_f() != 0.0) throw DomainError("H_f and G_f require a_f = 0 (generator " + f.name() + ")");
}

double cross_checked(const GeneratorFunction& f, double p, double q, const QuadratureSpec& spec) {
  const QuadratureResult quad = gf_quadrature(f, p, q, spec);
  const auto closed = f.closed_gf(p, q);
  if (!closed) return quad.value;
  const double gap = std::abs(*closed - quad.value);
  if (gap > kClosedFormAgreement) {
    std::ostringstream os;
    os << "analytic and quadrature values disagree for " << f.spec() << " at (" << p << ", " << q
       << "): gap " << gap;
    throw NumericError(os.str(), gap);
  }
  return *closed;
}

}  // namespace

double hf(const GeneratorFunction& f, double p, const QuadratureSpec& spec) {
  require_zero_af(f);
  require_unit_arg(p);
  return cross_checked(f, p, p, spec);
}

double gf(const GeneratorFunction& f, double p, double q, const QuadratureSpec& spec) {
  require_zero_af(f);
  require_unit_arg(p);
  require_unit_arg(q);
  if (p > q) std::swap(p, q);
  return cross_checked(f, p, q, spec);
}

const char* to_string(HfShape s) {
  switch (s) {
    case HfShape::Constant: return "constant";
    case HfShape::Increasing: return "increasing";
    case HfShape::Decreasing: return "decreasing";
    case HfShape::Other: return "other";
  }
  return "other";
}

HfShape classify_hf(const GeneratorFunction& f, const QuadratureSpec& spec) {
  std::vector<double> h;
  for (int k = 1; k <= 49; ++k) h.push_back(hf(f, 0.02 * k, spec));
  double variation = 0.0;
  bool up = true, down = true;
  for (std::size_t i = 1; i < h.size(); ++i) {
    const double step = h[i] - h[i - 1];
    variation += std::abs(step);
    up = up && step > 1e-9;
    down = down && step < -1e-9;
  }
  if (variation <= 1e-7) return HfShape::Constant;
  if (up) return HfShape::Increasing;
  if (down) return HfShape::Decreasing;
  return HfShape::Other;
}

RepresentationReport verify_representation(const GeneratorFunction& f, const QuadratureSpec& spec) {
  GeneratorFunction::Definition d;
  d.closed_form = [&f](double x) { return f(x); };
  d.a_f = f.a_f();
  d.measure = f.measure();
  return representation_report(d, spec);
}

double bf_from_measure(const GeneratorFunction& f, const QuadratureSpec& spec) {
  const Kernel k{[](double t) { return (1.0 - t) / ((t + 1.0) * (t * t + 1.0)); },
                 [](double w) { return (w - 1.0) / ((1.0 + w) * (1.0 + w * w)); },
                 {}};
  return integrate_measure(f.measure(), k, spec).value - f.a_f();
}

ShapeDiagnostic check_convex_decreasing(const std::function<double(double)>& f) {
  ShapeDiagnostic d;
  d.worst_increase = -kInf;
  d.worst_concavity = kInf;
  double prev2 = 0.0, prev = f(0.01);
  for (int i = 2; i <= 1000; ++i) {
    const double cur = f(0.01 * i);
    d.worst_increase = std::max(d.worst_increase, cur - prev);
    if (i >= 3) d.worst_concavity = std::min(d.worst_concavity, cur - 2.0 * prev + prev2);
    prev2 = prev;
    prev = cur;
  }
  d.decreasing = d.worst_increase < 0.0;
  d.convex = d.worst_concavity >= -1e-12;
  return d;
}

}  // namespace qrent
