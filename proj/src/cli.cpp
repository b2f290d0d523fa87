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

#include "qrent/cli.hpp"

#include <chrono>
#include <cmath>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "qrent/closest.hpp"
#include "qrent/errors.hpp"
#include "qrent/fgen.hpp"
#include "qrent/qre.hpp"
#include "qrent/qstate.hpp"
#include "qrent/sepopt.hpp"
#include "qrent/verify.hpp"

namespace qrent {

namespace {

constexpr int kMaxPrecision = 15;
constexpr double kModularAgreement = 1e-9;
constexpr double kOracleSlack = 1e-6;
constexpr double kTableTolerance = 1e-10;

Json num(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

Json num_array(const std::vector<double>& xs) {
  Json a = Json::array();
  for (double x : xs) a.push_back(num(x));
  return a;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double x = 0.0;
    try {
      x = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || item.find_first_not_of(" \t", used) != std::string::npos)
      throw UsageError("cannot parse '" + item + "' as a number");
    out.push_back(x);
  }
  if (out.empty()) throw UsageError("empty number list");
  return out;
}

void add_flag(RunReport& r, std::string name, bool passed, std::string detail) {
  r.flags.push_back({std::move(name), passed, std::move(detail)});
}

std::string fmt(double x, int precision) { return format_number(x, precision); }

// entropy --------------------------------------------------------------------

struct EntropyArgs {
  std::string rho, sigma, f;
  bool check_modular = false;
};

RunReport cmd_entropy(const EntropyArgs& a, int precision) {
  RunReport r;
  r.command = "entropy";
  r.inputs = {{"rho", a.rho}, {"sigma", a.sigma}, {"f", a.f}, {"check_modular", a.check_modular}};
  const DensityMatrix rho = load_density(a.rho);
  const DensityMatrix sigma = load_density(a.sigma);
  if (rho.dim() != sigma.dim()) throw UsageError("rho and sigma have different dimensions");
  const ExtendedReal value = divergence(rho, sigma, a.f);
  r.outputs["value"] = num(value);
  if (a.check_modular) {
    if (a.f.rfind("renyi:", 0) == 0) throw UsageError("--check-modular needs a generator spec");
    ExtendedReal modular = 0.0;
    try {
      modular = qre_modular(rho, sigma, parse_generator(a.f));
    } catch (const DomainError& e) {
      // Rank-deficient input: the spectral value stands on its own.
      r.outputs["modular_skipped"] = e.what();
      return r;
    }
    const double gap = std::abs(modular - value);
    r.outputs["modular_value"] = num(modular);
    r.outputs["discrepancy"] = num(gap);
    add_flag(r, "spectral_matches_modular", gap <= kModularAgreement,
             "|spectral - modular| = " + fmt(gap, precision));
  }
  return r;
}

// closest --------------------------------------------------------------------

struct ClosestArgs {
  std::optional<int> bell;
  std::optional<std::string> schmidt;
  std::optional<double> p;
  std::optional<std::string> state;
  std::string f;
  int certify = kDefaultCertificateSamples;
  std::uint64_t seed = 0;
  bool oracle = false;
  int restarts = 50;
  int max_iters = 2000;
  std::optional<std::string> save_state, save_sigma;
};

bool all_equal(const RVector& p) {
  return p.size() >= 2 && (p.array() - p(0)).abs().maxCoeff() <= 1e-12 && p(0) > 0.0;
}

ClosestResult dispatch(const SchmidtForm& s, const GeneratorFunction& f, const CertifyOptions& o) {
  const Split split = s.split();
  const auto r = static_cast<int>(s.coefficients.size());
  if (all_equal(s.coefficients)) return rebase(closest_maxent(r, f, o), s.basis_a, s.basis_b);
  if (classify_hf(f, o.quadrature) == HfShape::Constant) return closest_pure_flatH(s, f, o);
  if (r == 2 && split.a == 2 && split.b == 2) return closest_two_qubit(s, f, o);
  // Raises the hypothesis error for non-constant H_f.
  return closest_pure_flatH(s, f, o);
}

RunReport cmd_closest(const ClosestArgs& a, int precision) {
  RunReport r;
  r.command = "closest";
  r.inputs = {{"f", a.f}, {"certify", a.certify}, {"seed", a.seed}, {"oracle", a.oracle}};
  const GeneratorFunction f = parse_generator(a.f);
  CertifyOptions opts;
  opts.samples = a.certify;
  opts.seed = a.seed;

  ClosestResult result;
  if (a.bell) {
    r.inputs["bell"] = *a.bell;
    result = closest_maxent(*a.bell, f, opts);
  } else if (a.p) {
    r.inputs["p"] = *a.p;
    result = closest_two_qubit(*a.p, f, opts);
  } else if (a.schmidt) {
    std::vector<double> p = parse_list(*a.schmidt);
    r.inputs["schmidt"] = p;
    double total = 0.0;
    for (double x : p) {
      if (!(x >= 0.0)) throw UsageError("Schmidt coefficients must be nonnegative");
      total += x;
    }
    if (std::abs(total - 1.0) > 1e-6) throw UsageError("Schmidt coefficients must sum to 1");
    for (double& x : p) x /= total;
    const int d = static_cast<int>(p.size());
    SchmidtForm s{Eigen::Map<const RVector>(p.data(), d), CMatrix::Identity(d, d),
                  CMatrix::Identity(d, d)};
    result = dispatch(s, f, opts);
  } else {
    r.inputs["state"] = *a.state;
    const auto loaded = load_state(*a.state);
    const auto* psi = std::get_if<PureState>(&loaded);
    if (!psi) throw UsageError("closest needs a pure state file");
    result = dispatch(schmidt_decompose(*psi), f, opts);
  }

  const Certificate& c = result.certificate;
  r.outputs["theorem"] = to_string(c.theorem);
  r.outputs["E"] = num(result.entanglement);
  r.outputs["p"] = num_array(result.p);
  r.outputs["q"] = num_array(result.q);
  r.outputs["certificate"] = {{"min_directional_derivative", num(c.min_directional_derivative)},
                              {"samples", c.samples},
                              {"seed", c.seed},
                              {"theorem", to_string(c.theorem)},
                              {"passed", c.passed()}};
  if (!result.edge_derivatives.empty()) r.outputs["edge_derivatives"] = num_array(result.edge_derivatives);
  r.outputs["sigma_star"] = to_json(result.sigma_star);
  add_flag(r, "certificate_nonnegative", c.passed(),
           "min directional derivative " + fmt(c.min_directional_derivative, precision) + " over " +
               std::to_string(c.samples) + " samples");

  const PureState psi = result.state();
  if (a.save_state) save_json(to_json(psi), *a.save_state);
  if (a.save_sigma) save_json(to_json(result.sigma_star), *a.save_sigma);

  if (a.oracle) {
    OptimizerConfig cfg;
    cfg.restarts = a.restarts;
    cfg.max_iters = a.max_iters;
    cfg.seed = a.seed;
    const DensityMatrix rho = psi.density().with_split(psi.require_split());
    const MinimizeResult m =
        minimize(rho, f, cfg, diagonal_ensemble(result.q, result.basis_a, result.basis_b));
    const double gap = m.value - result.entanglement;
    r.outputs["oracle"] = {{"value", num(m.value)},
                           {"gap", num(gap)},
                           {"best_cold_value", num(m.best_cold_value())},
                           {"best_restart", m.best_restart},
                           {"restarts", cfg.restarts},
                           {"max_iters", cfg.max_iters},
                           {"ensemble", to_json(m.ensemble)}};
    add_flag(r, "oracle_not_below_analytic", gap >= -kOracleSlack,
             "oracle - E = " + fmt(gap, precision));
  }
  return r;
}

// table ----------------------------------------------------------------------

RunReport cmd_table(const std::vector<int>& dims, const std::vector<double>& alphas, int precision) {
  RunReport r;
  r.command = "table";
  r.inputs = {{"d", dims}, {"alpha", alphas}};
  Json rows = Json::array();
  bool renyi_ok = true, tsallis_ok = true, gap_ok = true;
  double worst_renyi = 0.0, worst_tsallis = 0.0, min_gap = kPlusInfinity;
  for (int d : dims) {
    const PureState bell = maximally_entangled(d);
    const DensityMatrix marginal =
        partial_trace(bell.density().with_split(Split{d, d}), Subsystem::B);
    const RVector lambda = state_spectrum(marginal).eigenvalues;
    for (double alpha : alphas) {
      const double e_alpha =
          closest_maxent(d, make_builtin("power_entropy", {alpha})).entanglement;
      const double e_renyi = std::log(1.0 - e_alpha) / (alpha - 1.0);
      const double e_tsallis = closest_maxent(d, make_builtin("tsallis", {alpha})).entanglement;
      const double power_sum = lambda.array().pow(alpha).sum();
      const double m_renyi = std::log(power_sum) / (1.0 - alpha);
      const double m_tsallis = (1.0 - power_sum) / (alpha - 1.0);
      const double tsallis_formula = (1.0 - std::pow(d, alpha - 1.0)) / (1.0 - alpha);
      const double gap = std::abs(m_tsallis - e_tsallis);

      worst_renyi = std::max({worst_renyi, std::abs(e_renyi - m_renyi),
                              std::abs(e_renyi - std::log(static_cast<double>(d)))});
      worst_tsallis = std::max(worst_tsallis, std::abs(e_tsallis - tsallis_formula));
      min_gap = std::min(min_gap, gap);
      renyi_ok = renyi_ok && worst_renyi <= kTableTolerance;
      tsallis_ok = tsallis_ok && worst_tsallis <= kTableTolerance;
      gap_ok = gap_ok && gap > kTableTolerance;
      rows.push_back({{"d", d},
                      {"alpha", alpha},
                      {"alpha_divergence_E", num(e_alpha)},
                      {"renyi_E", num(e_renyi)},
                      {"renyi_marginal", num(m_renyi)},
                      {"renyi_reduces", std::abs(e_renyi - m_renyi) <= kTableTolerance},
                      {"tsallis_E", num(e_tsallis)},
                      {"tsallis_marginal", num(m_tsallis)},
                      {"tsallis_reduces", gap <= kTableTolerance}});
    }
  }
  r.outputs["rows"] = rows;
  add_flag(r, "renyi_equals_marginal", renyi_ok, "worst error " + fmt(worst_renyi, precision));
  add_flag(r, "tsallis_matches_formula", tsallis_ok, "worst error " + fmt(worst_tsallis, precision));
  add_flag(r, "tsallis_differs_from_marginal", gap_ok, "smallest gap " + fmt(min_gap, precision));
  return r;
}

// verify ---------------------------------------------------------------------

RunReport cmd_verify(const std::string& suite_name, std::uint64_t seed, int precision) {
  RunReport r;
  r.command = "verify";
  r.inputs = {{"suite", suite_name}, {"seed", seed}};
  const VerifyReport report = run_suite(parse_suite(suite_name), seed);
  Json checks = Json::array();
  for (const auto& c : report.checks) {
    checks.push_back({{"suite", c.suite},
                      {"name", c.name},
                      {"observed", num(c.observed)},
                      {"bound", num(c.bound)},
                      {"margin", num(c.margin)},
                      {"trials", c.trials},
                      {"passed", c.passed}});
    add_flag(r, c.suite + "." + c.name, c.passed, "margin " + fmt(c.margin, precision));
  }
  r.outputs["checks"] = checks;
  return r;
}

// human output ---------------------------------------------------------------

std::string render(const Json& v, int precision) {
  if (v.is_number_float()) return format_number(v.get<double>(), precision);
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array()) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + render(v[i], precision);
    return s + ")";
  }
  return v.dump();
}

bool is_state(const Json& v) { return v.is_object() && v.contains("re"); }

void print_rows(const Json& rows, std::ostream& out, int precision) {
  std::vector<std::string> keys;
  for (const auto& [k, v] : rows.front().items())
    if (!v.is_object() && !v.is_array()) keys.push_back(k);
  std::vector<std::vector<std::string>> cells;
  std::vector<std::size_t> width;
  for (const auto& k : keys) width.push_back(k.size());
  for (const auto& row : rows) {
    cells.emplace_back();
    for (std::size_t i = 0; i < keys.size(); ++i) {
      cells.back().push_back(render(row.at(keys[i]), precision));
      width[i] = std::max(width[i], cells.back().back().size());
    }
  }
  for (std::size_t i = 0; i < keys.size(); ++i) out << std::setw(width[i] + 2) << keys[i];
  out << '\n';
  for (const auto& line : cells) {
    for (std::size_t i = 0; i < line.size(); ++i) out << std::setw(width[i] + 2) << line[i];
    out << '\n';
  }
}

void print_object(const Json& obj, const std::string& prefix, std::ostream& out, int precision) {
  for (const auto& [k, v] : obj.items()) {
    if (is_state(v) || k == "ensemble") continue;  // matrices only in --json
    if (v.is_object()) {
      print_object(v, prefix + k + ".", out, precision);
    } else if (v.is_array() && !v.empty() && v.front().is_object()) {
      print_rows(v, out, precision);
    } else {
      out << prefix << k << " = " << render(v, precision) << '\n';
    }
  }
}

void print_human(const RunReport& r, std::ostream& out, int precision) {
  print_object(r.outputs, "", out, precision);
  for (const auto& f : r.flags)
    out << (f.passed ? "[PASS] " : "[FAIL] ") << f.name << ": " << f.detail << '\n';
}

}  // namespace

// public ---------------------------------------------------------------------

bool RunReport::passed() const {
  for (const auto& f : flags)
    if (!f.passed) return false;
  return true;
}

Json RunReport::to_json() const {
  Json fl = Json::array();
  for (const auto& f : flags) fl.push_back({{"name", f.name}, {"passed", f.passed}, {"detail", f.detail}});
  return {{"command", command}, {"inputs", inputs},   {"outputs", outputs},
          {"flags", fl},        {"passed", passed()}, {"wall_time", wall_time}};
}

std::string format_number(double x, int precision) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  std::ostringstream os;
  const double ax = std::abs(x);
  if (x == 0.0 || (ax >= 1e-4 && ax < 1e6))
    os << std::fixed << std::setprecision(precision) << x;
  else
    os << std::scientific << std::setprecision(precision) << x;
  return os.str();
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quasi-relative entropy of entanglement toolkit", "qrent"};
  app.require_subcommand(1);
  app.fallthrough();
  bool json = false;
  int precision = 6;
  app.add_flag("--json", json, "Emit the run report as JSON");
  app.add_option("--precision", precision, "Decimals in printed numbers")
      ->check(CLI::Range(1, kMaxPrecision));

  EntropyArgs ea;
  auto* entropy = app.add_subcommand("entropy", "S_f(rho || sigma) between two state files");
  entropy->add_option("--rho", ea.rho, "State file for rho")->required();
  entropy->add_option("--sigma", ea.sigma, "State file for sigma")->required();
  entropy->add_option("--f", ea.f, "Generator spec, e.g. log, power_entropy:0.5, renyi:0.5")
      ->required();
  entropy->add_flag("--check-modular", ea.check_modular, "Also evaluate via the modular operator");

  ClosestArgs ca;
  std::uint64_t closest_seed = 0;
  auto* closest = app.add_subcommand("closest", "Closest separable state to a pure state");
  auto* o_bell = closest->add_option("--bell", ca.bell, "Maximally entangled state of dimension D")
                     ->check(CLI::PositiveNumber);
  auto* o_schmidt = closest->add_option("--schmidt", ca.schmidt, "Schmidt coefficients p1,p2,...");
  auto* o_p = closest->add_option("--p", ca.p, "Two-qubit Schmidt weight on |00>");
  auto* o_state = closest->add_option("--state", ca.state, "Pure state file");
  for (auto* o : {o_bell, o_schmidt, o_p, o_state}) {
    for (auto* other : {o_bell, o_schmidt, o_p, o_state})
      if (o != other) o->excludes(other);
  }
  closest->add_option("--f", ca.f, "Generator spec")->required();
  closest->add_option("--certify", ca.certify, "Certificate sample count")
      ->check(CLI::PositiveNumber);
  closest->add_option("--seed", closest_seed, "Seed")->envname("QRE_SEED");
  closest->add_flag("--oracle", ca.oracle, "Cross-check with the separable-state optimizer");
  closest->add_option("--restarts", ca.restarts, "Oracle cold restarts")->check(CLI::PositiveNumber);
  closest->add_option("--max-iters", ca.max_iters, "Oracle iterations per restart")
      ->check(CLI::PositiveNumber);
  closest->add_option("--save-state", ca.save_state, "Write the input pure state to a file");
  closest->add_option("--save-sigma", ca.save_sigma, "Write sigma* to a file");

  std::vector<int> table_d{2, 3};
  std::vector<double> table_alpha{0.3, 0.5, 0.7};
  auto* table = app.add_subcommand("table", "Renyi and Tsallis entanglement of maximally entangled states");
  table->add_option("--d", table_d, "Dimensions")->check(CLI::Range(2, 64))->delimiter(',');
  table->add_option("--alpha", table_alpha, "Orders in (0, 1)")
      ->check(CLI::Range(0.0, 1.0))
      ->delimiter(',');

  std::string suite = "all";
  std::uint64_t verify_seed = 0;
  auto* verify = app.add_subcommand("verify", "Run property suites");
  verify->add_option("--suite", suite, "functions, divergence, theorems or all")
      ->check(CLI::IsMember({"functions", "divergence", "theorems", "all"}));
  verify->add_option("--seed", verify_seed, "Seed")->envname("QRE_SEED");

  std::vector<const char*> argv{"qrent"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  const auto start = std::chrono::steady_clock::now();
  try {
    RunReport report;
    if (entropy->parsed()) {
      report = cmd_entropy(ea, precision);
    } else if (closest->parsed()) {
      if (!ca.bell && !ca.schmidt && !ca.p && !ca.state)
        throw UsageError("closest needs one of --bell, --schmidt, --p, --state");
      ca.seed = closest_seed;
      report = cmd_closest(ca, precision);
    } else if (table->parsed()) {
      for (double a : table_alpha)
        if (!(a > 0.0 && a < 1.0)) throw UsageError("--alpha values must lie in (0, 1)");
      report = cmd_table(table_d, table_alpha, precision);
    } else {
      report = cmd_verify(suite, verify_seed, precision);
    }
    report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (json)
      out << report.to_json().dump(2) << '\n';
    else
      print_human(report, out, precision);
    return report.passed() ? kExitOk : kExitVerificationFailure;
  } catch (const HypothesisError& e) {
    err << "hypothesis violated (" << e.theorem() << "): " << e.what() << '\n';
    return kExitHypothesisViolation;
  } catch (const NumericError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitVerificationFailure;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
}

}  // namespace qrent
