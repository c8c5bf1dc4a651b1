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

#include "dgpost/field.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>

namespace dgpost {

namespace {

constexpr double kInsideTol = 1e-10;

bool inside_reference(int dim, const Vec2& r) {
  if (dim == 1) return r.x() >= -kInsideTol && r.x() <= 1.0 + kInsideTol;
  return r.x() >= -kInsideTol && r.y() >= -kInsideTol && r.x() + r.y() <= 1.0 + kInsideTol;
}

}  // namespace

Field::Field(std::shared_ptr<const Mesh> mesh) : mesh_(std::move(mesh)) {
  if (!mesh_) throw InvalidArgument("field needs a mesh");
}

Jet Field::evaluate(int cell, const Vec2& ref, Side side) const {
  if (cell < 0 || cell >= mesh_->num_cells()) {
    throw InvalidArgument("cell index " + std::to_string(cell) + " out of range");
  }
  if (!inside_reference(mesh_->dim(), ref)) {
    std::ostringstream msg;
    msg << "point (" << ref.x() << ", " << ref.y() << ") outside reference cell";
    throw InvalidArgument(msg.str());
  }
  return evaluate_unchecked(cell, ref, side);
}

std::vector<double> Field::breakpoints(int) const { return {}; }

DiscreteField::DiscreteField(std::shared_ptr<const PolySpace> space, Eigen::VectorXd coefficients)
    : Field(space ? space->mesh_ptr() : nullptr),
      space_(std::move(space)),
      coeffs_(std::move(coefficients)) {
  if (coeffs_.size() != space_->num_dofs()) {
    throw InvalidArgument("coefficient vector has length " + std::to_string(coeffs_.size()) +
                          ", space has " + std::to_string(space_->num_dofs()) + " dofs");
  }
}

Eigen::VectorXd DiscreteField::local_coefficients(int cell) const {
  auto dofs = space_->cell_dofs(cell);
  Eigen::VectorXd u(dofs.size());
  for (std::size_t i = 0; i < dofs.size(); ++i) u[i] = coeffs_[dofs[i]];
  return u;
}

Jet DiscreteField::evaluate_unchecked(int cell, const Vec2& ref, Side) const {
  const LagrangeBasis& basis = space_->basis();
  std::array<double, LagrangeBasis::kMaxSize> v;
  std::array<Vec2, LagrangeBasis::kMaxSize> g;
  std::array<Mat2, LagrangeBasis::kMaxSize> h;
  basis.evaluate(ref, v.data(), g.data(), h.data());
  auto dofs = space_->cell_dofs(cell);
  Jet jet;
  Vec2 gr = Vec2::Zero();
  Mat2 hr = Mat2::Zero();
  for (std::size_t i = 0; i < dofs.size(); ++i) {
    const double c = coeffs_[dofs[i]];
    jet.value += c * v[i];
    gr += c * g[i];
    hr += c * h[i];
  }
  const Mat2& it = mesh().inverse_transpose(cell);
  jet.grad = it * gr;
  jet.hess = it * hr * it.transpose();
  return jet;
}

SubdividedPolyField::SubdividedPolyField(std::shared_ptr<const Mesh> mesh, int degree,
                                         int smoothness, std::vector<std::vector<Piece>> pieces)
    : Field(std::move(mesh)), degree_(degree), smoothness_(smoothness), pieces_(std::move(pieces)) {
  if (this->mesh().dim() != 1) throw Unsupported("subdivided fields are one-dimensional");
  if (static_cast<int>(pieces_.size()) != this->mesh().num_cells()) {
    throw InvalidArgument("one piece list per cell required");
  }
  for (const auto& list : pieces_) {
    if (list.empty() || std::abs(list.front().lo) > 1e-14 || std::abs(list.back().hi - 1.0) > 1e-14) {
      throw InvalidArgument("pieces must cover the reference cell");
    }
    for (std::size_t j = 0; j < list.size(); ++j) {
      if (!(list[j].hi > list[j].lo)) throw InvalidArgument("empty piece");
      if (j > 0 && std::abs(list[j].lo - list[j - 1].hi) > 1e-14) {
        throw InvalidArgument("pieces must be contiguous");
      }
      if (static_cast<int>(list[j].coeffs.size()) > degree_ + 1) {
        throw InvalidArgument("piece exceeds the declared degree");
      }
    }
  }
}

std::vector<double> SubdividedPolyField::breakpoints(int cell) const {
  std::vector<double> b;
  const auto& list = pieces_[cell];
  for (std::size_t j = 1; j < list.size(); ++j) b.push_back(list[j].lo);
  return b;
}

Jet SubdividedPolyField::evaluate_unchecked(int cell, const Vec2& ref, Side side) const {
  const auto& list = pieces_[cell];
  const double t = std::clamp(ref.x(), 0.0, 1.0);
  std::size_t j = 0;
  if (side == Side::Lower) {
    while (j + 1 < list.size() && t > list[j].hi) ++j;
  } else {
    while (j + 1 < list.size() && t >= list[j].hi) ++j;
  }
  const Piece& piece = list[j];
  const double width = piece.hi - piece.lo;
  const double s = 2.0 * (t - piece.lo) / width - 1.0;
  double v = 0.0, d1 = 0.0, d2 = 0.0;
  const int n = static_cast<int>(piece.coeffs.size());
  for (int k = n - 1; k >= 0; --k) {
    d2 = d2 * s + 2.0 * d1;
    d1 = d1 * s + v;
    v = v * s + piece.coeffs[k];
  }
  const double ds_dx = 2.0 / width / mesh().diameter(cell);
  Jet jet;
  jet.value = v;
  jet.grad = Vec2(d1 * ds_dx, 0.0);
  jet.hess(0, 0) = d2 * ds_dx * ds_dx;
  return jet;
}

CompositeField::CompositeField(std::vector<Term> terms)
    : Field(terms.empty() ? nullptr : terms.front().second->mesh_ptr()), terms_(std::move(terms)) {
  smoothness_ = 1000;
  for (const auto& [w, f] : terms_) {
    if (!f) throw InvalidArgument("composite member is null");
    if (f->mesh_ptr() != mesh_ptr() && &f->mesh() != &mesh()) {
      throw InvalidArgument("composite members must share one mesh");
    }
    degree_ = std::max(degree_, f->polynomial_degree());
    smoothness_ = std::min(smoothness_, f->smoothness());
  }
}

std::vector<double> CompositeField::breakpoints(int cell) const {
  std::vector<double> all;
  for (const auto& term : terms_) {
    auto b = term.second->breakpoints(cell);
    all.insert(all.end(), b.begin(), b.end());
  }
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end(),
                        [](double a, double b) { return std::abs(a - b) < 1e-13; }),
            all.end());
  return all;
}

Jet CompositeField::evaluate_unchecked(int cell, const Vec2& ref, Side side) const {
  Jet jet;
  for (const auto& [w, f] : terms_) jet += f->evaluate(cell, ref, side) * w;
  return jet;
}

FunctionField::FunctionField(std::shared_ptr<const Mesh> mesh, ScalarFunction value,
                             VectorFunction gradient, MatrixFunction hessian,
                             int quadrature_degree)
    : Field(std::move(mesh)),
      value_(std::move(value)),
      gradient_(std::move(gradient)),
      hessian_(std::move(hessian)),
      quadrature_degree_(quadrature_degree) {}

Jet FunctionField::evaluate_unchecked(int cell, const Vec2& ref, Side) const {
  const Vec2 x = mesh().to_physical(cell, ref);
  Jet jet;
  jet.value = value_(x);
  if (gradient_) jet.grad = gradient_(x);
  if (hessian_) jet.hess = hessian_(x);
  if (mesh().dim() == 1) {
    jet.grad.y() = 0.0;
    jet.hess.row(1).setZero();
    jet.hess.col(1).setZero();
  }
  return jet;
}

std::shared_ptr<DiscreteField> interpolate(const ScalarFunction& u,
                                           std::shared_ptr<const PolySpace> space) {
  Eigen::VectorXd c = Eigen::VectorXd::Zero(space->num_dofs());
  const int n = space->dofs_per_cell();
  for (int k = 0; k < space->mesh().num_cells(); ++k) {
    auto dofs = space->cell_dofs(k);
    for (int i = 0; i < n; ++i) c[dofs[i]] = u(space->node_point(k, i));
  }
  return std::make_shared<DiscreteField>(std::move(space), std::move(c));
}

std::vector<double> cell_partition(const Field& field, int cell) {
  std::vector<double> t{0.0};
  if (field.mesh().dim() == 1) {
    for (double b : field.breakpoints(cell)) {
      if (b > t.back() + 1e-14 && b < 1.0 - 1e-14) t.push_back(b);
    }
  }
  t.push_back(1.0);
  return t;
}

void write_field_dump(std::ostream& out, const Field& field, int samples_per_cell) {
  const Mesh& mesh = field.mesh();
  const int n = std::max(1, samples_per_cell);
  std::ostringstream s;
  s.precision(12);
  if (mesh.dim() == 1) {
    std::vector<int> order(mesh.num_cells());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      return mesh.vertex(mesh.cell(a)[0]).x() < mesh.vertex(mesh.cell(b)[0]).x();
    });
    for (int c : order) {
      for (int i = 0; i <= n; ++i) {
        const Vec2 ref(static_cast<double>(i) / n, 0.0);
        const Jet j = field.evaluate(c, ref, i == n ? Side::Lower : Side::Upper);
        s << mesh.to_physical(c, ref).x() << ' ' << j.value << ' ' << j.grad.x() << '\n';
      }
      s << '\n';
    }
  } else {
    for (int c = 0; c < mesh.num_cells(); ++c) {
      for (int j = 0; j <= n; ++j) {
        for (int i = 0; i + j <= n; ++i) {
          const Vec2 ref(static_cast<double>(i) / n, static_cast<double>(j) / n);
          const Vec2 x = mesh.to_physical(c, ref);
          const Jet v = field.evaluate(c, ref);
          s << x.x() << ' ' << x.y() << ' ' << v.value << ' ' << v.grad.x() << ' '
            << v.grad.y() << '\n';
        }
        s << '\n';
      }
      s << '\n';
    }
  }
  out << s.str();
}

}  // namespace dgpost
