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

#ifndef DGPOST_NORMS_HPP_
#define DGPOST_NORMS_HPP_

#include <vector>

#include "dgpost/ipdg.hpp"

namespace dgpost {

struct ErrorNorms {
  double l2 = 0.0;
  double h1 = 0.0;      // broken H1 seminorm
  double dg = 0.0;      // sqrt(h1^2 + sum_e h_e^{-1} |[e]|^2)
  double energy = 0.0;  // sqrt(A(e, e)), always over the whole mesh
};

/// Norms of e = u - w. With `cell_mask`, the L2, H1 and dG parts are
/// restricted to masked cells and to facets whose neighbours are all
/// masked.
ErrorNorms error_norms(const ScalarFunction& u, const VectorFunction& grad_u, const Field& w,
                       const IpdgForm& form, const std::vector<char>* cell_mask = nullptr,
                       int extra_degree = 6);

/// sqrt(A(w - v, w - v)).
double energy_distance(const Field& w, const Field& v, const IpdgForm& form);

/// log2(coarse / fine); NaN if either value is not positive.
double eoc(double coarse, double fine);

}  // namespace dgpost

#endif  // DGPOST_NORMS_HPP_
