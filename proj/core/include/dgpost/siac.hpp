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

#ifndef DGPOST_SIAC_HPP_
#define DGPOST_SIAC_HPP_

#include <memory>
#include <vector>

#include "dgpost/field.hpp"

namespace dgpost {

/// Centered cardinal B-spline of the given order (order 1 is the indicator
/// of [-1/2, 1/2), order k has degree k-1 and support [-k/2, k/2]).
double bspline(int order, double x);

/// Coefficients c_{-r..r} of K(x) = sum_g c_g psi(x - g), psi the B-spline
/// of order m+1, such that K integrates x^j to delta_{0j} for j <= 2r.
Eigen::VectorXd kernel_coefficients(int r, int m);

struct KernelSpec {
  int r = 1;
  int m = 1;
  double scale = 1.0;  // kernel width H in units of the mesh size
  Eigen::VectorXd coefficients;

  /// Half-width of the support in units of H: r + (m+1)/2.
  double support_radius() const { return r + 0.5 * (m + 1); }
  double operator()(double x) const;
  /// Breakpoints of K in units of H, ascending.
  std::vector<double> knots() const;
};

KernelSpec make_kernel(int r, int m);

/// m = 1 and r = ceil((p+1)/2).
KernelSpec default_kernel(int p);

/// Boundary data for the odd reflection u(a - s) = 2 g(a) - u(a + s).
struct MirrorExtension {
  double left = 0.0;
  double right = 0.0;
};

/// Per-offset stencil matrices mapping the nodal values of cell k+d to the
/// monomial coefficients of u* on each sub-cell of cell k.
struct SiacStencil {
  int degree = 0;                  // p
  int output_degree = 0;           // p + m + 1
  int reach = 0;                   // d ranges over [-reach, reach]
  std::vector<double> partition;   // sub-cell breakpoints in [0, 1]
  // blocks[sub][d + reach] has size (output_degree + 1) x (p + 1).
  std::vector<std::vector<Eigen::MatrixXd>> blocks;
};

SiacStencil build_stencil(const KernelSpec& kernel, int p);

/// Convolves u_h with the kernel scaled to the mesh size. Requires a
/// uniform 1D mesh; the field is extended beyond the domain by odd
/// reflection about the boundary data.
std::shared_ptr<SubdividedPolyField> convolve(const DiscreteField& uh, const KernelSpec& kernel,
                                              const MirrorExtension& mirror = {});

}  // namespace dgpost

#endif  // DGPOST_SIAC_HPP_
