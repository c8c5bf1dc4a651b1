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

#include "dgpost/spr.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include <Eigen/QR>

namespace dgpost {

namespace {

bool contains(const Mesh& mesh, int cell, const Vec2& x, Vec2* ref) {
  const Vec2 r = mesh.to_reference(cell, x);
  constexpr double tol = 1e-10;
  if (r.x() < -tol || r.y() < -tol || r.x() + r.y() > 1.0 + tol) return false;
  if (ref) {
    Vec2 s = r.cwiseMax(0.0);
    if (s.x() + s.y() > 1.0) s /= s.x() + s.y();
    *ref = s;
  }
  return true;
}

void add_unique(std::vector<Vec2>& pts, const Vec2& x, double tol) {
  for (const Vec2& y : pts) {
    if ((x - y).lpNorm<Eigen::Infinity>() <= tol) return;
  }
  pts.push_back(x);
}

int monomial_count(int degree) { return (degree + 1) * (degree + 2) / 2; }

}  // namespace

std::vector<Vec2> sample_points(const Mesh& mesh, int p, std::span<const int> cells) {
  if (p < 1 || p > 3) throw Unsupported("patch recovery for p = " + std::to_string(p));
  if (mesh.dim() != 2) throw Unsupported("patch recovery is two-dimensional");
  double hmin = mesh.diameter(cells[0]);
  for (int c : cells) hmin = std::min(hmin, mesh.diameter(c));
  const double tol = 1e-9 * hmin;
  std::vector<Vec2> pts;
  for (int c : cells) {
    for (int v : mesh.cell(c)) add_unique(pts, mesh.vertex(v), tol);
  }
  if (p >= 2) {
    const double l1 = 0.5 - std::sqrt(5.0) / 10.0;
    const double l2 = 0.5 + std::sqrt(5.0) / 10.0;
    for (int c : cells) {
      auto k = mesh.cell(c);
      for (int e = 0; e < 3; ++e) {
        const Vec2& a = mesh.vertex(std::min(k[e], k[(e + 1) % 3]));
        const Vec2& b = mesh.vertex(std::max(k[e], k[(e + 1) % 3]));
        if (p == 2) {
          add_unique(pts, 0.5 * (a + b), tol);
        } else {
          add_unique(pts, a + l1 * (b - a), tol);
          add_unique(pts, a + l2 * (b - a), tol);
        }
      }
    }
  }
  if (p == 3) {
    for (int c : cells) add_unique(pts, mesh.centroid(c), tol);
  }
  return pts;
}

NodePatch build_patch(const DiscreteField& uh, int node, int layers) {
  const Mesh& mesh = uh.mesh();
  NodePatch patch;
  patch.node = node;
  patch.layers = layers;
  patch.center = mesh.vertex(node);
  std::set<int> cells(mesh.vertex_cells(node).begin(), mesh.vertex_cells(node).end());
  if (layers >= 2) {
    std::set<int> outer = cells;
    for (int c : cells) {
      for (int v : mesh.cell(c)) {
        for (int k : mesh.vertex_cells(v)) outer.insert(k);
      }
    }
    cells = std::move(outer);
  }
  patch.cells.assign(cells.begin(), cells.end());
  patch.points = sample_points(mesh, uh.space().degree(), patch.cells);
  patch.values.reserve(patch.points.size());
  for (const Vec2& x : patch.points) {
    double sum = 0.0;
    int count = 0;
    Vec2 ref;
    for (int c : patch.cells) {
      if (contains(mesh, c, x, &ref)) {
        sum += uh.value(c, ref);
        ++count;
      }
    }
    patch.values.push_back(sum / count);
  }
  return patch;
}

Jet NodeFit::evaluate(const Vec2& x) const {
  const Vec2 s = (x - center) / scale;
  Jet jet;
  double gx = 0, gy = 0, hxx = 0, hxy = 0, hyy = 0;
  int idx = 0;
  for (int d = 0; d <= degree; ++d) {
    for (int b = 0; b <= d; ++b, ++idx) {
      const int a = d - b;
      const double c = coefficients[idx];
      const double xa = std::pow(s.x(), a), yb = std::pow(s.y(), b);
      jet.value += c * xa * yb;
      if (a > 0) gx += c * a * std::pow(s.x(), a - 1) * yb;
      if (b > 0) gy += c * b * xa * std::pow(s.y(), b - 1);
      if (a > 1) hxx += c * a * (a - 1) * std::pow(s.x(), a - 2) * yb;
      if (a > 0 && b > 0) hxy += c * a * b * std::pow(s.x(), a - 1) * std::pow(s.y(), b - 1);
      if (b > 1) hyy += c * b * (b - 1) * xa * std::pow(s.y(), b - 2);
    }
  }
  jet.grad = Vec2(gx, gy) / scale;
  jet.hess << hxx, hxy, hxy, hyy;
  jet.hess /= scale * scale;
  return jet;
}

NodeFit fit_node_polynomial(const NodePatch& patch, int degree, bool* ok) {
  NodeFit fit;
  fit.node = patch.node;
  fit.degree = degree;
  fit.layers = patch.layers;
  const int n = monomial_count(degree);
  const int m = static_cast<int>(patch.points.size());
  if (ok) *ok = false;
  if (m < n) return fit;
  const Vec2 center = patch.center;
  double scale = 0.0;
  for (const Vec2& x : patch.points) scale = std::max(scale, (x - center).norm());
  fit.scale = scale > 0.0 ? scale : 1.0;
  fit.center = center;
  Eigen::MatrixXd a(m, n);
  Eigen::VectorXd rhs(m);
  for (int i = 0; i < m; ++i) {
    const Vec2 s = (patch.points[i] - center) / fit.scale;
    int idx = 0;
    for (int d = 0; d <= degree; ++d) {
      for (int b = 0; b <= d; ++b) a(i, idx++) = std::pow(s.x(), d - b) * std::pow(s.y(), b);
    }
    rhs[i] = patch.values[i];
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
  qr.setThreshold(1e-10);
  if (qr.rank() < n) return fit;
  fit.coefficients = qr.solve(rhs);
  if (ok) *ok = true;
  return fit;
}

NodeFit fit_node(const DiscreteField& uh, int node, int min_layers) {
  const int degree = 2 * uh.space().degree();
  for (int layers = std::max(min_layers, 1); layers <= 2; ++layers) {
    const NodePatch patch = build_patch(uh, node, layers);
    bool ok = false;
    NodeFit fit = fit_node_polynomial(patch, degree, &ok);
    if (ok) return fit;
  }
  throw InvalidArgument("patch recovery: samples around node " + std::to_string(node) +
                        " do not determine a degree-" + std::to_string(degree) +
                        " polynomial even with two layers");
}

SprField::SprField(std::shared_ptr<const Mesh> mesh, std::vector<NodeFit> fits)
    : Field(std::move(mesh)), fits_(std::move(fits)) {
  if (static_cast<int>(fits_.size()) != this->mesh().num_vertices()) {
    throw InvalidArgument("one node fit per vertex required");
  }
  for (int c = 0; c < this->mesh().num_cells(); ++c) {
    for (int v : this->mesh().cell(c)) {
      if (fits_[v].coefficients.size() == 0) {
        throw InvalidArgument("missing fit at node " + std::to_string(v));
      }
      degree_ = std::max(degree_, fits_[v].degree);
    }
  }
}

Jet SprField::evaluate_unchecked(int cell, const Vec2& ref, Side) const {
  const Mesh& m = mesh();
  const Vec2 x = m.to_physical(cell, ref);
  const Mat2& it = m.inverse_transpose(cell);
  const std::array<double, 3> lambda = {1.0 - ref.x() - ref.y(), ref.x(), ref.y()};
  const Vec2 g1 = it * Vec2(1.0, 0.0);
  const Vec2 g2 = it * Vec2(0.0, 1.0);
  const std::array<Vec2, 3> glambda = {-(g1 + g2), g1, g2};
  auto verts = m.cell(cell);
  Jet jet;
  for (int i = 0; i < 3; ++i) {
    const Jet q = fits_[verts[i]].evaluate(x);
    jet.value += lambda[i] * q.value;
    jet.grad += lambda[i] * q.grad + q.value * glambda[i];
    jet.hess += lambda[i] * q.hess + glambda[i] * q.grad.transpose() +
                q.grad * glambda[i].transpose();
  }
  return jet;
}

std::shared_ptr<SprField> blend(std::vector<NodeFit> fits, std::shared_ptr<const Mesh> mesh) {
  return std::make_shared<SprField>(std::move(mesh), std::move(fits));
}

std::vector<char> boundary_vertices(const Mesh& mesh) {
  std::vector<char> out(mesh.num_vertices(), 0);
  for (const Facet& f : mesh.facets()) {
    if (!f.is_boundary()) continue;
    for (int v : mesh.cell(f.minus)) {
      const Vec2& x = mesh.vertex(v);
      if ((x - f.a).norm() <= 1e-12 * f.h || (x - f.b).norm() <= 1e-12 * f.h) out[v] = 1;
    }
  }
  return out;
}

std::shared_ptr<SprField> recover(const DiscreteField& uh) {
  const Mesh& mesh = uh.mesh();
  std::vector<NodeFit> fits(mesh.num_vertices());
  const std::vector<char> on_boundary = boundary_vertices(mesh);
  for (int v = 0; v < mesh.num_vertices(); ++v) {
    if (!mesh.vertex_cells(v).empty()) fits[v] = fit_node(uh, v, on_boundary[v] ? 2 : 1);
  }
  return blend(std::move(fits), uh.mesh_ptr());
}

}  // namespace dgpost
