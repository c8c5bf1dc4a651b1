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

#ifndef DGPOST_CONVERGENCE_HPP_
#define DGPOST_CONVERGENCE_HPP_

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "dgpost/io.hpp"
#include "dgpost/norms.hpp"
#include "dgpost/pipeline.hpp"

namespace dgpost {

struct LevelRecord {
  int level = 0;
  int n_cells = 0;
  int dofs = 0;
  ErrorNorms uh;
  std::optional<ErrorNorms> ustar;
  std::optional<ErrorNorms> ustarstar;
  double rh = std::numeric_limits<double>::quiet_NaN();
  double rss = std::numeric_limits<double>::quiet_NaN();
  std::optional<double> eff_h;   // R_h / |u - u_h|_dG
  std::optional<double> eff_ss;  // R** / |u - u**|_dG
  // Norms restricted to the cells inside the interior window, if any.
  std::optional<ErrorNorms> uh_interior;
  std::optional<ErrorNorms> ustar_interior;
  std::optional<ErrorNorms> ustarstar_interior;
};

struct ConvergenceOptions {
  std::string problem = "smooth1d";
  PipelineOptions pipeline;
  int levels = 5;
  int macro_resolution = -1;
  std::uint64_t seed = 1;
  /// 1D window (lo, hi) for additional error norms away from the boundary.
  std::optional<std::pair<double, double>> interior_window;
  /// Called after each level, e.g. for progress output.
  std::function<void(const LevelRecord&, const PipelineResult&)> on_level;
};

struct ConvergenceTable {
  std::vector<LevelRecord> levels;
};

/// Uniform refinement from the problem's macro mesh; needs an exact solution.
ConvergenceTable run_convergence(const ConvergenceOptions& options);

/// Columns level, n_cells, dofs, err_L2_uh, err_H1_uh, err_L2_ustar,
/// err_H1_ustar, err_L2_ustarstar, err_H1_ustarstar, Rh, Rss, eff_h, eff_ss.
CsvTable eoc_table(const ConvergenceTable& table);

/// Same columns with each error replaced by its EOC against the previous
/// level (NaN on the first level).
CsvTable rate_table(const CsvTable& errors);

}  // namespace dgpost

#endif  // DGPOST_CONVERGENCE_HPP_
