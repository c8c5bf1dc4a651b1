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

#ifndef DGPOST_ADAPT_HPP_
#define DGPOST_ADAPT_HPP_

#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "dgpost/io.hpp"
#include "dgpost/pipeline.hpp"

namespace dgpost {

struct MarkResult {
  RefinementMarks marks;
  bool fallback = false;  // nothing exceeded the mean, so every cell was marked
};

/// Marks cells whose combined indicator exceeds the mean indicator. If none
/// does while the total exceeds `tol`, all cells are marked.
MarkResult mark(const EstimatorReport& report, double tol);

struct AdaptRecord {
  int iter = 0;
  int dofs = 0;
  int cells = 0;
  double estimate = 0.0;
  double err_dg = std::numeric_limits<double>::quiet_NaN();  // of the driven field
  double err_l2 = std::numeric_limits<double>::quiet_NaN();
  int marked = 0;
  bool fallback = false;
};

struct AdaptOptions {
  PipelineOptions pipeline;
  Driver driver = Driver::Rss;
  double tol = 0.01;
  int max_iter = 30;
  int max_dofs = 500000;
  int macro_resolution = -1;
  std::uint64_t seed = 1;
  /// Optional extra stopping rule checked after each record.
  std::function<bool(const AdaptRecord&)> stop_when;
  std::function<void(const AdaptRecord&)> on_iteration;
};

struct AdaptHistory {
  std::vector<AdaptRecord> records;
  bool converged = false;  // estimate reached tol
  std::shared_ptr<const Mesh> final_mesh;
  std::shared_ptr<const Field> final_field;  // u_h or u**, per driver
  std::vector<int> max_indicator_cells;      // argmax lambda per iteration
};

/// solve -> (post-process, improve) -> estimate -> stop? -> mark -> refine.
AdaptHistory adapt_loop(const ProblemSpec& problem, const AdaptOptions& options);

/// Columns iter, dofs, cells, R, err_dG, err_L2, marked.
CsvTable history_table(const AdaptHistory& history);

}  // namespace dgpost

#endif  // DGPOST_ADAPT_HPP_
