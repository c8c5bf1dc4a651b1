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

#include "dgpost/adapt.hpp"

#include "dgpost/norms.hpp"

namespace dgpost {

MarkResult mark(const EstimatorReport& report, double tol) {
  const int n = static_cast<int>(report.lambda.size());
  MarkResult out{RefinementMarks(n), false};
  if (n == 0) return out;
  const double mean = report.lambda.sum() / n;
  for (int c = 0; c < n; ++c) {
    if (report.lambda[c] > mean) out.marks.set(c);
  }
  if (out.marks.count() == 0 && report.total > tol) {
    out.marks = RefinementMarks(n, true);
    out.fallback = true;
  }
  return out;
}

AdaptHistory adapt_loop(const ProblemSpec& problem, const AdaptOptions& options) {
  AdaptHistory hist;
  PipelineOptions popt = options.pipeline;
  const bool improved = options.driver == Driver::Rss;
  if (improved && popt.post == PostKind::None) {
    throw InvalidArgument("the improved-reconstruction driver needs a post-processor");
  }
  popt.estimate_uh = !improved;
  popt.estimate_improved = improved;
  if (!improved) popt.post = PostKind::None;
  auto mesh = std::make_shared<const Mesh>(
      problem.macro_mesh(options.macro_resolution, options.seed));
  for (int iter = 0;; ++iter) {
    const PipelineResult res = run_pipeline(problem, mesh, popt);
    const EstimatorReport& rep = improved ? *res.rss : *res.rh;
    const Field& field = improved ? static_cast<const Field&>(*res.improved->field)
                                  : static_cast<const Field&>(*res.uh);
    AdaptRecord rec;
    rec.iter = iter;
    rec.dofs = res.space->num_dofs();
    rec.cells = mesh->num_cells();
    rec.estimate = rep.total;
    if (problem.has_exact) {
      const ErrorNorms e = error_norms(problem.u, problem.grad_u, field, *res.form);
      rec.err_dg = e.dg;
      rec.err_l2 = e.l2;
    }
    int arg = 0;
    rep.lambda.maxCoeff(&arg);
    hist.max_indicator_cells.push_back(arg);
    hist.final_mesh = mesh;
    hist.final_field = improved ? std::static_pointer_cast<const Field>(res.improved->field)
                                : std::static_pointer_cast<const Field>(res.uh);
    const bool done = rep.total <= options.tol;
    const bool stop = done || iter + 1 >= options.max_iter || rec.dofs >= options.max_dofs ||
                      (options.stop_when && options.stop_when(rec));
    MarkResult marks;
    if (!stop) {
      marks = mark(rep, options.tol);
      rec.marked = static_cast<int>(marks.marks.count());
      rec.fallback = marks.fallback;
    }
    hist.records.push_back(rec);
    if (options.on_iteration) options.on_iteration(rec);
    if (stop) {
      hist.converged = done;
      break;
    }
    mesh = std::make_shared<const Mesh>(refine(*mesh, marks.marks));
  }
  return hist;
}

CsvTable history_table(const AdaptHistory& history) {
  CsvTable t;
  t.header = {"iter", "dofs", "cells", "R", "err_dG", "err_L2", "marked"};
  for (const auto& r : history.records) {
    t.rows.push_back({static_cast<double>(r.iter), static_cast<double>(r.dofs),
                      static_cast<double>(r.cells), r.estimate, r.err_dg, r.err_l2,
                      static_cast<double>(r.marked)});
  }
  return t;
}

}  // namespace dgpost
