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

#include "dgpost/convergence.hpp"

#include <cmath>
#include <limits>

namespace dgpost {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace

ConvergenceTable run_convergence(const ConvergenceOptions& options) {
  const ProblemSpec problem = make_problem(options.problem);
  if (!problem.has_exact) throw InvalidArgument("convergence runs need an exact solution");
  if (options.levels < 1) throw InvalidArgument("at least one level required");
  ConvergenceTable table;
  auto mesh = std::make_shared<const Mesh>(
      problem.macro_mesh(options.macro_resolution, options.seed));
  for (int level = 0; level < options.levels; ++level) {
    if (level > 0) mesh = std::make_shared<const Mesh>(refine_uniform(*mesh));
    const PipelineResult res = run_pipeline(problem, mesh, options.pipeline);
    LevelRecord rec;
    rec.level = level;
    rec.n_cells = mesh->num_cells();
    rec.dofs = res.space->num_dofs();
    std::vector<char> mask;
    if (options.interior_window) {
      mask.resize(mesh->num_cells());
      for (int c = 0; c < mesh->num_cells(); ++c) {
        const double a = mesh->vertex(mesh->cell(c)[0]).x();
        const double b = mesh->vertex(mesh->cell(c)[1]).x();
        mask[c] = a >= options.interior_window->first - 1e-12 &&
                  b <= options.interior_window->second + 1e-12;
      }
    }
    auto norms = [&](const Field& w, std::optional<ErrorNorms>* interior) {
      if (interior && !mask.empty()) {
        *interior = error_norms(problem.u, problem.grad_u, w, *res.form, &mask);
      }
      return error_norms(problem.u, problem.grad_u, w, *res.form);
    };
    rec.uh = norms(*res.uh, &rec.uh_interior);
    if (res.ustar) rec.ustar = norms(*res.ustar, &rec.ustar_interior);
    if (res.improved) rec.ustarstar = norms(*res.improved->field, &rec.ustarstar_interior);
    if (res.rh) {
      rec.rh = res.rh->total;
      rec.eff_h = efficiency(rec.rh, rec.uh.dg);
    }
    if (res.rss && rec.ustarstar) {
      rec.rss = res.rss->total;
      rec.eff_ss = efficiency(rec.rss, rec.ustarstar->dg);
    }
    if (options.on_level) options.on_level(rec, res);
    table.levels.push_back(std::move(rec));
  }
  return table;
}

CsvTable eoc_table(const ConvergenceTable& table) {
  CsvTable t;
  t.header = {"level",         "n_cells",      "dofs",         "err_L2_uh",
              "err_H1_uh",     "err_L2_ustar", "err_H1_ustar", "err_L2_ustarstar",
              "err_H1_ustarstar", "Rh",        "Rss",          "eff_h",
              "eff_ss"};
  for (const auto& r : table.levels) {
    t.rows.push_back({static_cast<double>(r.level), static_cast<double>(r.n_cells),
                      static_cast<double>(r.dofs), r.uh.l2, r.uh.h1,
                      r.ustar ? r.ustar->l2 : kNaN, r.ustar ? r.ustar->h1 : kNaN,
                      r.ustarstar ? r.ustarstar->l2 : kNaN, r.ustarstar ? r.ustarstar->h1 : kNaN,
                      r.rh, r.rss, r.eff_h.value_or(kNaN), r.eff_ss.value_or(kNaN)});
  }
  return t;
}

CsvTable rate_table(const CsvTable& errors) {
  CsvTable t;
  t.header = errors.header;
  for (std::size_t i = 0; i < errors.rows.size(); ++i) {
    std::vector<double> row = errors.rows[i];
    for (std::size_t c = 0; c < row.size(); ++c) {
      const std::string& name = t.header[c];
      const bool is_error = name.rfind("err_", 0) == 0 || name == "Rh" || name == "Rss";
      if (!is_error) continue;
      row[c] = i == 0 ? kNaN : eoc(errors.rows[i - 1][c], errors.rows[i][c]);
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace dgpost
