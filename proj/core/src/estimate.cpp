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

#include "dgpost/estimate.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

#include "dgpost/quadrature.hpp"

namespace dgpost {

namespace {

Vec2 snap(const Mesh& mesh, int cell, const Vec2& x) {
  Vec2 r = mesh.to_reference(cell, x).cwiseMax(0.0);
  if (mesh.dim() == 1) {
    r.x() = std::min(r.x(), 1.0);
  } else if (r.x() + r.y() > 1.0) {
    r /= r.x() + r.y();
  }
  return r;
}

Side trace_side(const Mesh& mesh, const Vec2& ref) {
  if (mesh.dim() != 1) return Side::Any;
  return ref.x() > 0.5 ? Side::Lower : Side::Upper;
}

}  // namespace

double element_residual(const Field& w, const ScalarFunction& f, const DiffusionSpec& diffusion,
                        int cell, int extra_degree) {
  const Mesh& mesh = w.mesh();
  const double hk = mesh.diameter(cell);
  const double jac = mesh.jacobian_det(cell);
  const QuadratureRule& q = cell_rule(mesh.dim(), 2 * w.polynomial_degree() + extra_degree);
  const std::vector<double> part = cell_partition(w, cell);
  double sum = 0.0;
  for (std::size_t j = 0; j + 1 < part.size(); ++j) {
    const double lo = part[j], width = part[j + 1] - part[j];
    for (std::size_t k = 0; k < q.size(); ++k) {
      Vec2 ref = q.points[k];
      double wt = q.weights[k] * jac;
      if (mesh.dim() == 1) {
        ref = Vec2(lo + width * ref.x(), 0.0);
        wt *= width;
      }
      const Vec2 x = mesh.to_physical(cell, ref);
      const Jet jet = w.evaluate(cell, ref);
      const Mat2 d = diffusion(x);
      Vec2 divd = diffusion.divergence(x, hk);
      Vec2 grad = jet.grad;
      if (mesh.dim() == 1) {
        divd.y() = 0.0;
        grad.y() = 0.0;
      }
      const double div_flux = divd.dot(grad) + (d.cwiseProduct(jet.hess)).sum();
      const double r = hk * ((f ? f(x) : 0.0) + div_flux);
      sum += wt * r * r;
    }
  }
  if (mesh.dim() == 1) {
    for (std::size_t j = 1; j + 1 < part.size(); ++j) {
      const Vec2 ref(part[j], 0.0);
      const double dx = diffusion(mesh.to_physical(cell, ref))(0, 0);
      const double jump = dx * (w.evaluate(cell, ref, Side::Lower).grad.x() -
                                w.evaluate(cell, ref, Side::Upper).grad.x());
      sum += 0.5 * hk * jump * jump;
    }
  }
  return std::sqrt(sum);
}

double facet_residual(const Field& w, const ScalarFunction& g, const DiffusionSpec& diffusion,
                      const Facet& facet, int extra_degree) {
  const Mesh& mesh = w.mesh();
  auto terms = [&](const Vec2& x) {
    const Vec2 rm = snap(mesh, facet.minus, x);
    const Jet wm = w.evaluate(facet.minus, rm, trace_side(mesh, rm));
    if (facet.is_boundary()) {
      const double jump = wm.value - (g ? g(x) : 0.0);
      return std::pair<double, double>(0.0, jump);
    }
    const Vec2 rp = snap(mesh, facet.plus, x);
    const Jet wp = w.evaluate(facet.plus, rp, trace_side(mesh, rp));
    const Mat2 d = diffusion(x);
    const double flux = facet.normal.dot(d * (wm.grad - wp.grad));
    return std::pair<double, double>(flux, wm.value - wp.value);
  };
  double flux2 = 0.0, jump2 = 0.0;
  if (mesh.dim() == 1) {
    const auto [fj, vj] = terms(facet.a);
    flux2 = fj * fj;
    jump2 = vj * vj;
  } else {
    const QuadratureRule& q = gauss_interval(2 * w.polynomial_degree() + extra_degree);
    for (std::size_t k = 0; k < q.size(); ++k) {
      const auto [fj, vj] = terms(facet.point(q.points[k].x()));
      const double wt = q.weights[k] * facet.measure;
      flux2 += wt * fj * fj;
      jump2 += wt * vj * vj;
    }
  }
  return std::sqrt(facet.h * flux2 + jump2 / facet.h);
}

EstimatorReport estimate(const Field& w, const ScalarFunction& f, const ScalarFunction& g,
                         const DiffusionSpec& diffusion, int extra_degree) {
  const Mesh& mesh = w.mesh();
  EstimatorReport rep;
  rep.eta_cell.resize(mesh.num_cells());
  rep.eta_facet.resize(static_cast<Eigen::Index>(mesh.facets().size()));
  Eigen::VectorXd lambda2(mesh.num_cells());
  for (int c = 0; c < mesh.num_cells(); ++c) {
    rep.eta_cell[c] = element_residual(w, f, diffusion, c, extra_degree);
    lambda2[c] = rep.eta_cell[c] * rep.eta_cell[c];
  }
  for (std::size_t i = 0; i < mesh.facets().size(); ++i) {
    const Facet& fc = mesh.facets()[i];
    const double e = facet_residual(w, g, diffusion, fc, extra_degree);
    rep.eta_facet[static_cast<Eigen::Index>(i)] = e;
    if (fc.is_boundary()) {
      lambda2[fc.minus] += e * e;
    } else {
      lambda2[fc.minus] += 0.5 * e * e;
      lambda2[fc.plus] += 0.5 * e * e;
    }
  }
  rep.lambda = lambda2.cwiseSqrt();
  rep.total = std::sqrt(lambda2.sum());
  return rep;
}

std::optional<double> efficiency(double estimate, double error) {
  if (!(error > 0.0)) return std::nullopt;
  return estimate / error;
}

void write_report(std::ostream& cells, std::ostream& facets, const EstimatorReport& report) {
  std::ostringstream c, f;
  c.precision(12);
  f.precision(12);
  for (Eigen::Index i = 0; i < report.eta_cell.size(); ++i) {
    c << i << ' ' << report.eta_cell[i] << ' ' << report.lambda[i] << '\n';
  }
  for (Eigen::Index i = 0; i < report.eta_facet.size(); ++i) {
    f << i << ' ' << report.eta_facet[i] << '\n';
  }
  cells << c.str();
  facets << f.str();
}

}  // namespace dgpost
