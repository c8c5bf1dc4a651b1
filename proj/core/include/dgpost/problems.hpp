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

#ifndef DGPOST_PROBLEMS_HPP_
#define DGPOST_PROBLEMS_HPP_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "dgpost/diffusion.hpp"
#include "dgpost/field.hpp"
#include "dgpost/mesh.hpp"
#include "dgpost/space.hpp"

namespace dgpost {

/// -div(D grad u) = f in the domain, u = g on its boundary.
struct ProblemSpec {
  std::string name;
  int dim = 1;
  std::string domain;
  std::string regularity;
  DiffusionSpec diffusion;
  ScalarFunction f;
  ScalarFunction g;
  bool has_exact = false;
  ScalarFunction u;
  VectorFunction grad_u;
  MatrixFunction hess_u;  // may be empty

  /// Points where u is not smooth (kinks in 1D, corner singularities in 2D).
  std::vector<Vec2> singular_points;
  /// Membership test for the open domain.
  std::function<bool(const Vec2&)> inside;
  Vec2 box_lo = Vec2::Zero();
  Vec2 box_hi = Vec2::Ones();

  /// Initial mesh; `resolution` <= 0 selects the default.
  std::function<Mesh(int resolution, std::uint64_t seed)> macro_mesh;
  Continuity default_continuity = Continuity::Discontinuous;
};

std::vector<std::string> catalog();

/// Throws InvalidArgument listing the catalog for unknown names.
ProblemSpec make_problem(const std::string& name);

struct SelfCheckResult {
  int points = 0;
  double max_relative_error = 0.0;  // max |f + div(D grad u)| / max |f|
  bool passed = false;
};

/// Compares f with -div(D grad u) from fourth-order central differences of
/// u and D at `points` quasi-random points kept away from the boundary and
/// from singular points.
SelfCheckResult self_check(const ProblemSpec& problem, int points = 100, double tol = 1e-6);

}  // namespace dgpost

#endif  // DGPOST_PROBLEMS_HPP_
