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

#include "dgpost/pipeline.hpp"

#include <algorithm>

#include "dgpost/siac.hpp"
#include "dgpost/spr.hpp"

namespace dgpost {

PostKind parse_post(const std::string& s) {
  if (s == "none") return PostKind::None;
  if (s == "siac") return PostKind::Siac;
  if (s == "spr") return PostKind::Spr;
  throw InvalidArgument("unknown post-processor '" + s + "' (siac, spr, none)");
}

Driver parse_driver(const std::string& s) {
  if (s == "rh") return Driver::Rh;
  if (s == "rss") return Driver::Rss;
  throw InvalidArgument("unknown driver '" + s + "' (rh, rss)");
}

std::string to_string(PostKind k) {
  switch (k) {
    case PostKind::None: return "none";
    case PostKind::Siac: return "siac";
    case PostKind::Spr: return "spr";
  }
  return "?";
}

std::string to_string(Driver d) { return d == Driver::Rh ? "rh" : "rss"; }

std::shared_ptr<const Field> postprocess(const ProblemSpec& problem, const DiscreteField& uh,
                                         const PipelineOptions& options) {
  switch (options.post) {
    case PostKind::None:
      return nullptr;
    case PostKind::Siac: {
      const int r = options.r < 0 ? default_kernel(uh.space().degree()).r : options.r;
      const KernelSpec kernel = make_kernel(r, options.m);
      const Mesh& mesh = uh.mesh();
      double a = mesh.vertex(0).x(), b = a;
      for (const Vec2& x : mesh.vertices()) {
        a = std::min(a, x.x());
        b = std::max(b, x.x());
      }
      MirrorExtension mirror;
      if (problem.g) {
        mirror.left = problem.g(Vec2(a, 0.0));
        mirror.right = problem.g(Vec2(b, 0.0));
      }
      return convolve(uh, kernel, mirror);
    }
    case PostKind::Spr:
      return recover(uh);
  }
  return nullptr;
}

PipelineResult run_pipeline(const ProblemSpec& problem, std::shared_ptr<const Mesh> mesh,
                            const PipelineOptions& options) {
  PipelineResult res;
  res.mesh = mesh;
  const Continuity cont = options.continuity.value_or(problem.default_continuity);
  res.space = std::make_shared<PolySpace>(mesh, options.p, cont);
  auto form = std::make_shared<IpdgForm>(res.space, problem.diffusion, options.penalty);
  res.form = form;
  res.solver = std::make_shared<LinearSolver>(form->assemble_matrix());
  res.load = form->assemble_load(problem.f, problem.g);
  res.uh = std::make_shared<DiscreteField>(res.space, res.solver->solve(res.load));
  if (options.estimate_uh) {
    res.rh = estimate(*res.uh, problem.f, problem.g, problem.diffusion);
  }
  res.ustar = postprocess(problem, *res.uh, options);
  if (res.ustar) {
    res.improved = improve(res.ustar, res.uh, *form, *res.solver);
    if (options.estimate_improved) {
      res.rss = estimate(*res.improved->field, problem.f, problem.g, problem.diffusion);
    }
  }
  return res;
}

}  // namespace dgpost
