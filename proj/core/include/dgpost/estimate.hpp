// Copyright 2026 The dgpost Authors
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

#ifndef DGPOST_ESTIMATE_HPP_
#define DGPOST_ESTIMATE_HPP_

#include <iosfwd>
#include <optional>

#include "dgpost/diffusion.hpp"
#include "dgpost/field.hpp"

namespace dgpost {

struct EstimatorReport {
  Eigen::VectorXd eta_cell;   // element residuals
  Eigen::VectorXd eta_facet;  // facet residuals, indexed like mesh.facets()
  Eigen::VectorXd lambda;     // combined per-cell indicators
  double total = 0.0;         // sqrt(sum lambda^2)
  std::optional<double> efficiency;
};

/// sqrt of sum_T |h_K (f + div(D grad w))|^2_T over the sub-cells T of K,
/// plus (1D) 1/2 h_K |[D grad w]|^2 at each internal breakpoint.
double element_residual(const Field& w, const ScalarFunction& f, const DiffusionSpec& diffusion,
                        int cell, int extra_degree = 4);

/// sqrt(h_e |[n . D grad w]|^2_e + h_e^{-1} |[w]|^2_e). The flux jump is taken
/// on interior facets only; on boundary facets the jump is w - g.
double facet_residual(const Field& w, const ScalarFunction& g, const DiffusionSpec& diffusion,
                      const Facet& facet, int extra_degree = 4);

/// lambda_K^2 = eta_K^2 + sum over facets of K of eta_e^2, weighted by 1/2
/// for interior facets and by 1 for boundary facets.
EstimatorReport estimate(const Field& w, const ScalarFunction& f, const ScalarFunction& g,
                         const DiffusionSpec& diffusion, int extra_degree = 4);

/// R / error, absent when the error is zero.
std::optional<double> efficiency(double estimate, double error);

/// Writes `cell_id eta_K lambda_K` and `facet_id eta_e` lines.
void write_report(std::ostream& cells, std::ostream& facets, const EstimatorReport& report);

}  // namespace dgpost

#endif  // DGPOST_ESTIMATE_HPP_
