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

#include "dgpost/diffusion.hpp"

#include <cmath>
#include <sstream>

namespace dgpost {

DiffusionSpec::DiffusionSpec() : constant_(true) {}

DiffusionSpec::DiffusionSpec(MatrixFn matrix, VectorFn divergence, bool constant)
    : matrix_(std::move(matrix)), divergence_(std::move(divergence)), constant_(constant) {
  if (!matrix_) throw InvalidArgument("diffusion tensor function is empty");
  if (constant_) value_ = matrix_(Vec2::Zero());
}

DiffusionSpec DiffusionSpec::scalar(std::function<double(const Vec2&)> a,
                                    std::function<Vec2(const Vec2&)> grad_a) {
  return DiffusionSpec([a](const Vec2& x) { return Mat2(a(x) * Mat2::Identity()); },
                       [grad_a](const Vec2& x) { return grad_a(x); });
}

Vec2 DiffusionSpec::divergence(const Vec2& x, double h) const {
  if (constant_) return Vec2::Zero();
  if (divergence_) return divergence_(x);
  const double step = 1e-6 * h;
  Vec2 d = Vec2::Zero();
  for (int i = 0; i < 2; ++i) {
    Vec2 e = Vec2::Zero();
    e[i] = step;
    const Mat2 dm = (matrix_(x + e) - matrix_(x - e)) / (2.0 * step);
    d += dm.row(i).transpose();
  }
  return d;
}

void DiffusionSpec::check_spd(const std::vector<Vec2>& samples, int dim) const {
  for (const Vec2& x : samples) {
    const Mat2 d = (*this)(x);
    bool ok;
    if (dim == 1) {
      ok = d(0, 0) > 0.0;
    } else {
      const double scale = d.cwiseAbs().maxCoeff();
      ok = std::abs(d(0, 1) - d(1, 0)) <= 1e-12 * scale && d(0, 0) > 0.0 && d.determinant() > 0.0;
    }
    if (!ok) {
      std::ostringstream msg;
      msg << "diffusion tensor not SPD at (" << x.x() << ", " << x.y() << ")";
      throw InvalidArgument(msg.str());
    }
  }
}

double PenaltySpec::sigma(int p, double h_e) const {
  if (!(c > 0.0)) throw InvalidArgument("penalty constant must be positive");
  const double base = c * p * p / h_e;
  return mode == Mode::Hyper ? base / h_e : base;
}

}  // namespace dgpost
