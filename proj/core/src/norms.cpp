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

#include "dgpost/norms.hpp"

#include <cmath>
#include <limits>
#include <memory>

#include "dgpost/quadrature.hpp"

namespace dgpost {

namespace {

struct NoDelete {
  void operator()(const Field*) const {}
};

Vec2 snap(const Mesh& mesh, int cell, const Vec2& x) {
  Vec2 r = mesh.to_reference(cell, x).cwiseMax(0.0);
  if (mesh.dim() == 1) {
    r.x() = std::min(r.x(), 1.0);
  } else if (r.x() + r.y() > 1.0) {
    r /= r.x() + r.y();
  }
  return r;
}

}  // namespace

ErrorNorms error_norms(const ScalarFunction& u, const VectorFunction& grad_u, const Field& w,
                       const IpdgForm& form, const std::vector<char>* cell_mask,
                       int extra_degree) {
  const Mesh& mesh = w.mesh();
  const int degree = 2 * w.polynomial_degree() + extra_degree;
  const QuadratureRule& q = cell_rule(mesh.dim(), degree);
  auto use = [&](int c) { return !cell_mask || (*cell_mask)[c]; };
  double l2 = 0.0, h1 = 0.0, jumps = 0.0;
  for (int c = 0; c < mesh.num_cells(); ++c) {
    if (!use(c)) continue;
    const std::vector<double> part = cell_partition(w, c);
    const double jac = mesh.jacobian_det(c);
    for (std::size_t j = 0; j + 1 < part.size(); ++j) {
      const double lo = part[j], width = part[j + 1] - part[j];
      for (std::size_t k = 0; k < q.size(); ++k) {
        Vec2 ref = q.points[k];
        double wt = q.weights[k] * jac;
        if (mesh.dim() == 1) {
          ref = Vec2(lo + width * ref.x(), 0.0);
          wt *= width;
        }
        const Vec2 x = mesh.to_physical(c, ref);
        const Jet jw = w.evaluate(c, ref);
        const double ev = u(x) - jw.value;
        Vec2 eg = grad_u(x) - jw.grad;
        if (mesh.dim() == 1) eg.y() = 0.0;
        l2 += wt * ev * ev;
        h1 += wt * eg.squaredNorm();
      }
    }
  }
  const QuadratureRule& qf = gauss_interval(degree);
  for (const Facet& f : mesh.facets()) {
    if (!use(f.minus) || (f.plus >= 0 && !use(f.plus))) continue;
    auto jump_at = [&](const Vec2& x) {
      const Vec2 rm = snap(mesh, f.minus, x);
      double jv = w.evaluate(f.minus, rm, rm.x() > 0.5 ? Side::Lower : Side::Upper).value;
      if (f.is_boundary()) return u(x) - jv;
      const Vec2 rp = snap(mesh, f.plus, x);
      return -(jv - w.evaluate(f.plus, rp, rp.x() > 0.5 ? Side::Lower : Side::Upper).value);
    };
    if (mesh.dim() == 1) {
      const double j = jump_at(f.a);
      jumps += j * j / f.h;
    } else {
      for (std::size_t k = 0; k < qf.size(); ++k) {
        const double j = jump_at(f.point(qf.points[k].x()));
        jumps += qf.weights[k] * f.measure * j * j / f.h;
      }
    }
  }
  ErrorNorms out;
  out.l2 = std::sqrt(l2);
  out.h1 = std::sqrt(h1);
  out.dg = std::sqrt(h1 + jumps);
  FunctionField exact(w.mesh_ptr(), u, grad_u, {}, degree / 2);
  out.energy = energy_distance(exact, w, form);
  return out;
}

double energy_distance(const Field& w, const Field& v, const IpdgForm& form) {
  std::shared_ptr<const Field> pw(&w, NoDelete{});
  std::shared_ptr<const Field> pv(&v, NoDelete{});
  const CompositeField diff({{1.0, pw}, {-1.0, pv}});
  const double a = form.evaluate(diff, diff);
  return std::sqrt(std::max(a, 0.0));
}

double eoc(double coarse, double fine) {
  if (!(coarse > 0.0) || !(fine > 0.0)) return std::numeric_limits<double>::quiet_NaN();
  return std::log2(coarse / fine);
}

}  // namespace dgpost
