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

#include "qrent/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <vector>

#include "qrent/errors.hpp"

namespace qrent {

namespace {

// Kronrod abscissae; odd indices are the Gauss-Legendre 7-point nodes.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b;
  KronrodPanel est;
  bool operator<(const Panel& o) const { return est.error < o.est.error; }
};

}  // namespace

void QuadratureSpec::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0) || max_subdivisions <= 0)
    throw UsageError("quadrature tolerances and subdivision cap must be positive");
}

KronrodPanel gauss_kronrod15(const std::function<double(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double resk = fc * kWgk[7];
  double resg = fc * kWg[3];
  double resabs = std::abs(resk);
  std::array<double, 7> f1{}, f2{};
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    f1[j] = f(center - dx);
    f2[j] = f(center + dx);
    const double sum = f1[j] + f2[j];
    resk += kWgk[j] * sum;
    resabs += kWgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
    if (j % 2 == 1) resg += kWg[j / 2] * sum;
  }
  const double mean = 0.5 * resk;
  double resasc = kWgk[7] * std::abs(fc - mean);
  for (int j = 0; j < 7; ++j)
    resasc += kWgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));

  KronrodPanel p;
  p.kronrod = resk * half;
  p.gauss = resg * half;
  resabs *= std::abs(half);
  resasc *= std::abs(half);
  double err = std::abs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / (50.0 * eps))
    err = std::max(err, 50.0 * eps * resabs);
  p.error = err;
  return p;
}

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureSpec& spec, std::span<const double> breakpoints) {
  spec.validate();
  if (!(a < b)) throw UsageError("integration interval must satisfy a < b");

  std::vector<double> edges{a};
  for (double x : breakpoints)
    if (x > a && x < b) edges.push_back(x);
  edges.push_back(b);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  std::priority_queue<Panel> heap;
  QuadratureResult res;
  double total = 0.0, total_err = 0.0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    Panel p{edges[i], edges[i + 1], gauss_kronrod15(f, edges[i], edges[i + 1])};
    res.evaluations += 15;
    total += p.est.kronrod;
    total_err += p.est.error;
    heap.push(p);
  }

  auto converged = [&] { return total_err <= std::max(spec.abs_tol, spec.rel_tol * std::abs(total)); };
  while (!converged()) {
    if (res.subdivisions >= spec.max_subdivisions) break;
    Panel worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    // Panel too narrow to split in floating point: accept what we have.
    if (!(mid > worst.a && mid < worst.b)) break;
    heap.pop();
    Panel left{worst.a, mid, gauss_kronrod15(f, worst.a, mid)};
    Panel right{mid, worst.b, gauss_kronrod15(f, mid, worst.b)};
    res.evaluations += 30;
    ++res.subdivisions;
    total += left.est.kronrod + right.est.kronrod - worst.est.kronrod;
    total_err += left.est.error + right.est.error - worst.est.error;
    heap.push(left);
    heap.push(right);
  }

  // Re-sum from the panels to shed accumulated update rounding.
  total = 0.0;
  total_err = 0.0;
  while (!heap.empty()) {
    total += heap.top().est.kronrod;
    total_err += heap.top().est.error;
    heap.pop();
  }
  res.value = total;
  res.error = total_err;
  if (!std::isfinite(total)) throw NumericError("quadrature produced a non-finite value", total_err);
  if (!converged()) {
    std::ostringstream os;
    os << "quadrature did not converge: estimated error " << total_err << " after "
       << res.subdivisions << " subdivisions";
    throw NumericError(os.str(), total_err);
  }
  return res;
}

}  // namespace qrent
