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

#ifndef DGPOST_QUADRATURE_HPP_
#define DGPOST_QUADRATURE_HPP_

#include <vector>

#include "dgpost/common.hpp"

namespace dgpost {

/// Points and weights on a reference cell. Intervals are [0,1] (first
/// coordinate only), triangles have vertices (0,0), (1,0), (0,1).
struct QuadratureRule {
  int dim = 1;
  int degree = 0;  // exact for polynomials up to this total degree
  std::vector<Vec2> points;
  std::vector<double> weights;

  std::size_t size() const { return weights.size(); }
};

/// Highest exactness degree the rule factories accept.
inline constexpr int kMaxQuadratureDegree = 121;

/// Gauss-Legendre rule on [0,1].
const QuadratureRule& gauss_interval(int degree);

/// Collapsed (Duffy) Gauss product rule on the reference triangle.
const QuadratureRule& triangle_rule(int degree);

/// Rule on the reference cell of the given dimension.
const QuadratureRule& cell_rule(int dim, int degree);

/// Gauss-Legendre nodes and weights on [-1,1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace dgpost

#endif  // DGPOST_QUADRATURE_HPP_
