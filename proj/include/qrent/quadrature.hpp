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

#pragma once

#include <functional>
#include <span>

namespace qrent {

struct QuadratureSpec {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  int max_subdivisions = 2000;

  /// Throws UsageError unless both tolerances and the subdivision cap are
  /// positive.
  void validate() const;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;  // estimated absolute error
  int subdivisions = 0;
  int evaluations = 0;
};

/// One 15-point Kronrod panel with its embedded 7-point Gauss estimate.
struct KronrodPanel {
  double kronrod = 0.0;
  double gauss = 0.0;
  double error = 0.0;  // QUADPACK-style estimate
};

KronrodPanel gauss_kronrod15(const std::function<double(double)>& f, double a, double b);

/// Globally adaptive Gauss-Kronrod integration of f over [a, b], split first
/// at the given interior breakpoints. The worst panel is bisected until the
/// summed error estimate meets max(abs_tol, rel_tol * |I|). Throws
/// NumericError (carrying the achieved error) when the subdivision budget
/// runs out first.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureSpec& spec,
                           std::span<const double> breakpoints = {});

}  // namespace qrent
