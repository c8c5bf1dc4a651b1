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

#include "dgpost/basis.hpp"

#include <memory>
#include <mutex>
#include <string>

namespace dgpost {

namespace {

double ipow(double x, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

}  // namespace

LagrangeBasis::LagrangeBasis(int dim, int degree) : dim_(dim), degree_(degree) {
  if (dim != 1 && dim != 2) throw InvalidArgument("basis dimension must be 1 or 2");
  if (degree < 1 || degree > 3) {
    throw Unsupported("Lagrange basis degree " + std::to_string(degree) +
                      " (supported: 1..3)");
  }
  const int p = degree;
  const double h = 1.0 / p;
  if (dim == 1) {
    nodes_ = {Vec2(0.0, 0.0), Vec2(1.0, 0.0)};
    info_ = {{NodeInfo::Kind::Vertex, 0, 0}, {NodeInfo::Kind::Vertex, 1, 0}};
    for (int k = 1; k < p; ++k) {
      nodes_.emplace_back(k * h, 0.0);
      info_.push_back({NodeInfo::Kind::Edge, 0, k});
    }
    for (int i = 0; i <= p; ++i) exponents_.emplace_back(i, 0);
  } else {
    const std::array<Vec2, 3> v = {Vec2(0, 0), Vec2(1, 0), Vec2(0, 1)};
    for (int i = 0; i < 3; ++i) {
      nodes_.push_back(v[i]);
      info_.push_back({NodeInfo::Kind::Vertex, i, 0});
    }
    for (int e = 0; e < 3; ++e) {
      for (int k = 1; k < p; ++k) {
        nodes_.push_back(v[e] + k * h * (v[(e + 1) % 3] - v[e]));
        info_.push_back({NodeInfo::Kind::Edge, e, k});
      }
    }
    for (int j = 1; j < p; ++j) {
      for (int i = 1; i + j < p; ++i) {
        nodes_.emplace_back(i * h, j * h);
        info_.push_back({NodeInfo::Kind::Interior, 0, 0});
      }
    }
    for (int d = 0; d <= p; ++d) {
      for (int j = 0; j <= d; ++j) exponents_.emplace_back(d - j, j);
    }
  }
  const int n = size();
  Eigen::MatrixXd vander(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      vander(i, j) = ipow(nodes_[i].x(), exponents_[j].first) *
                     ipow(nodes_[i].y(), exponents_[j].second);
    }
  }
  coeff_ = vander.inverse();
}

void LagrangeBasis::evaluate(const Vec2& ref, double* values, Vec2* grads,
                             Mat2* hessians) const {
  const int n = size();
  std::array<double, kMaxSize> m{}, mx{}, my{}, mxx{}, mxy{}, myy{};
  const double x = ref.x(), y = ref.y();
  for (int j = 0; j < n; ++j) {
    const auto [a, b] = exponents_[j];
    const double xa = ipow(x, a), yb = ipow(y, b);
    m[j] = xa * yb;
    mx[j] = a > 0 ? a * ipow(x, a - 1) * yb : 0.0;
    my[j] = b > 0 ? b * xa * ipow(y, b - 1) : 0.0;
    mxx[j] = a > 1 ? a * (a - 1) * ipow(x, a - 2) * yb : 0.0;
    mxy[j] = (a > 0 && b > 0) ? a * b * ipow(x, a - 1) * ipow(y, b - 1) : 0.0;
    myy[j] = b > 1 ? b * (b - 1) * xa * ipow(y, b - 2) : 0.0;
  }
  for (int i = 0; i < n; ++i) {
    double v = 0, gx = 0, gy = 0, hxx = 0, hxy = 0, hyy = 0;
    for (int j = 0; j < n; ++j) {
      const double c = coeff_(j, i);
      v += c * m[j];
      gx += c * mx[j];
      gy += c * my[j];
      hxx += c * mxx[j];
      hxy += c * mxy[j];
      hyy += c * myy[j];
    }
    if (values) values[i] = v;
    if (grads) grads[i] = Vec2(gx, gy);
    if (hessians) hessians[i] << hxx, hxy, hxy, hyy;
  }
}

const LagrangeBasis& lagrange_basis(int dim, int degree) {
  static std::mutex mutex;
  static std::unique_ptr<LagrangeBasis> cache[2][4];
  if (dim < 1 || dim > 2 || degree < 1 || degree > 3) {
    LagrangeBasis probe(dim, degree);  // throws with the right message
  }
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[dim - 1][degree];
  if (!slot) slot = std::make_unique<LagrangeBasis>(dim, degree);
  return *slot;
}

}  // namespace dgpost
