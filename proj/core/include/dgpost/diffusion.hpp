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

#ifndef DGPOST_DIFFUSION_HPP_
#define DGPOST_DIFFUSION_HPP_

#include <functional>
#include <vector>

#include "dgpost/common.hpp"

namespace dgpost {

/// Diffusion tensor D(x). In 1D only the (0,0) entry is used.
class DiffusionSpec {
 public:
  using MatrixFn = std::function<Mat2(const Vec2&)>;
  using VectorFn = std::function<Vec2(const Vec2&)>;

  /// D = I.
  DiffusionSpec();
  /// `divergence` returns the vector with components sum_i d_i D_ij; if
  /// empty, central differences of `matrix` are used.
  explicit DiffusionSpec(MatrixFn matrix, VectorFn divergence = {}, bool constant = false);

  /// D = a(x) I with gradient of a.
  static DiffusionSpec scalar(std::function<double(const Vec2&)> a,
                              std::function<Vec2(const Vec2&)> grad_a);

  Mat2 operator()(const Vec2& x) const { return constant_ ? value_ : matrix_(x); }
  bool is_constant() const { return constant_; }

  /// sum_i d_i D_ij at x; `h` sets the finite-difference step when no
  /// analytic divergence was given.
  Vec2 divergence(const Vec2& x, double h = 1.0) const;

  /// Throws InvalidArgument unless D is symmetric positive definite at
  /// every sample point.
  void check_spd(const std::vector<Vec2>& samples, int dim) const;

 private:
  MatrixFn matrix_;
  VectorFn divergence_;
  bool constant_ = false;
  Mat2 value_ = Mat2::Identity();
};

struct PenaltySpec {
  enum class Mode { Standard, Hyper };
  Mode mode = Mode::Standard;
  double c = 10.0;

  /// c p^2 / h_e (standard) or c p^2 / h_e^2 (hyper).
  double sigma(int p, double h_e) const;
};

}  // namespace dgpost

#endif  // DGPOST_DIFFUSION_HPP_
