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

#include "dgpost/ipdg.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>
#include <vector>

#include <Eigen/IterativeLinearSolvers>

#include "dgpost/quadrature.hpp"

namespace dgpost {

namespace {

using Triplet = Eigen::Triplet<double>;

// Calls fn(ref, weight) over the sub-partition of `cell`, with weights
// already scaled to physical measure.
template <class Fn>
void integrate_cell(const Mesh& mesh, int cell, const std::vector<double>& partition,
                    int degree, Fn&& fn) {
  const QuadratureRule& q = cell_rule(mesh.dim(), degree);
  const double jac = mesh.jacobian_det(cell);
  if (mesh.dim() == 2) {
    for (std::size_t k = 0; k < q.size(); ++k) fn(q.points[k], q.weights[k] * jac);
    return;
  }
  for (std::size_t j = 0; j + 1 < partition.size(); ++j) {
    const double lo = partition[j], width = partition[j + 1] - partition[j];
    for (std::size_t k = 0; k < q.size(); ++k) {
      fn(Vec2(lo + width * q.points[k].x(), 0.0), q.weights[k] * width * jac);
    }
  }
}

// Calls fn(x, weight) over the facet quadrature points.
template <class Fn>
void integrate_facet(const Mesh& mesh, const Facet& facet, int degree, Fn&& fn) {
  if (mesh.dim() == 1) {
    fn(facet.a, 1.0);
    return;
  }
  const QuadratureRule& q = gauss_interval(degree);
  for (std::size_t k = 0; k < q.size(); ++k) {
    fn(facet.point(q.points[k].x()), q.weights[k] * facet.measure);
  }
}

Vec2 reference_point(const Mesh& mesh, int cell, const Vec2& x) {
  Vec2 r = mesh.to_reference(cell, x);
  // Snap roundoff so facet points never fall outside the closed cell.
  r = r.cwiseMax(0.0);
  if (mesh.dim() == 1) {
    r.x() = std::min(r.x(), 1.0);
  } else if (r.x() + r.y() > 1.0) {
    r /= r.x() + r.y();
  }
  return r;
}

// Side selection on facet traces of 1D subdivided fields.
Side facet_side(const Mesh& mesh, const Vec2& ref) {
  if (mesh.dim() != 1) return Side::Any;
  return ref.x() > 0.5 ? Side::Lower : Side::Upper;
}

}  // namespace

IpdgForm::IpdgForm(std::shared_ptr<const PolySpace> space, DiffusionSpec diffusion,
                   PenaltySpec penalty, int extra_degree)
    : space_(std::move(space)),
      diffusion_(std::move(diffusion)),
      penalty_(penalty),
      extra_degree_(extra_degree) {
  if (!space_) throw InvalidArgument("form needs a space");
  if (!(penalty_.c > 0.0)) throw InvalidArgument("penalty constant must be positive");
  const Mesh& mesh = space_->mesh();
  std::vector<Vec2> samples;
  for (int c = 0; c < mesh.num_cells(); c += std::max(1, mesh.num_cells() / 50)) {
    samples.push_back(mesh.centroid(c));
  }
  diffusion_.check_spd(samples, mesh.dim());
}

SparseMatrix IpdgForm::assemble_matrix() const {
  const PolySpace& V = *space_;
  const Mesh& mesh = V.mesh();
  const int p = V.degree();
  const int n = V.dofs_per_cell();
  std::vector<Triplet> trip;
  trip.reserve(static_cast<std::size_t>(mesh.num_cells()) * n * n * 3);
  const std::vector<double> whole{0.0, 1.0};
  BasisValues b;
  Eigen::MatrixXd local(n, n);
  for (int c = 0; c < mesh.num_cells(); ++c) {
    local.setZero();
    integrate_cell(mesh, c, whole, 2 * p + extra_degree_, [&](const Vec2& ref, double w) {
      V.evaluate(c, ref, b);
      const Mat2 d = diffusion_(mesh.to_physical(c, ref));
      for (int j = 0; j < n; ++j) {
        const Vec2 flux = w * (d * b.grad[j]);
        for (int i = 0; i < n; ++i) local(i, j) += flux.dot(b.grad[i]);
      }
    });
    auto dofs = V.cell_dofs(c);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) trip.emplace_back(dofs[i], dofs[j], local(i, j));
  }

  BasisValues bm, bp;
  std::vector<double> jump(2 * n), flux(2 * n);
  std::vector<int> dofs(2 * n);
  Eigen::MatrixXd fl(2 * n, 2 * n);
  for (const Facet& f : mesh.facets()) {
    const bool interior = !f.is_boundary();
    if (interior && V.is_continuous()) continue;
    const int m = interior ? 2 * n : n;
    const double sigma = this->sigma(f);
    fl.setZero();
    integrate_facet(mesh, f, 2 * p + extra_degree_, [&](const Vec2& x, double w) {
      const Mat2 d = diffusion_(x);
      V.evaluate(f.minus, reference_point(mesh, f.minus, x), bm);
      const double avg = interior ? 0.5 : 1.0;
      for (int i = 0; i < n; ++i) {
        jump[i] = bm.value[i];
        flux[i] = avg * f.normal.dot(d * bm.grad[i]);
      }
      if (interior) {
        V.evaluate(f.plus, reference_point(mesh, f.plus, x), bp);
        for (int i = 0; i < n; ++i) {
          jump[n + i] = -bp.value[i];
          flux[n + i] = 0.5 * f.normal.dot(d * bp.grad[i]);
        }
      }
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
          fl(i, j) += w * (-jump[i] * flux[j] - flux[i] * jump[j] + sigma * jump[i] * jump[j]);
    });
    auto dm = V.cell_dofs(f.minus);
    std::copy(dm.begin(), dm.end(), dofs.begin());
    if (interior) {
      auto dp = V.cell_dofs(f.plus);
      std::copy(dp.begin(), dp.end(), dofs.begin() + n);
    }
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) trip.emplace_back(dofs[i], dofs[j], fl(i, j));
  }
  SparseMatrix a(V.num_dofs(), V.num_dofs());
  a.setFromTriplets(trip.begin(), trip.end());
  a.makeCompressed();
  return a;
}

Eigen::VectorXd IpdgForm::assemble_load(const ScalarFunction& f, const ScalarFunction& g,
                                        int degree) const {
  const PolySpace& V = *space_;
  const Mesh& mesh = V.mesh();
  const int p = V.degree();
  const int n = V.dofs_per_cell();
  if (degree < 0) degree = 2 * p + 8;
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(V.num_dofs());
  const std::vector<double> whole{0.0, 1.0};
  BasisValues b;
  if (f) {
    for (int c = 0; c < mesh.num_cells(); ++c) {
      auto dofs = V.cell_dofs(c);
      integrate_cell(mesh, c, whole, degree, [&](const Vec2& ref, double w) {
        V.evaluate(c, ref, b);
        const double fx = w * f(mesh.to_physical(c, ref));
        for (int i = 0; i < n; ++i) rhs[dofs[i]] += fx * b.value[i];
      });
    }
  }
  if (g) {
    for (const Facet& fc : mesh.facets()) {
      if (!fc.is_boundary()) continue;
      const double sigma = this->sigma(fc);
      auto dofs = V.cell_dofs(fc.minus);
      integrate_facet(mesh, fc, degree, [&](const Vec2& x, double w) {
        V.evaluate(fc.minus, reference_point(mesh, fc.minus, x), b);
        const Mat2 d = diffusion_(x);
        const double gx = w * g(x);
        for (int i = 0; i < n; ++i) {
          rhs[dofs[i]] += gx * (sigma * b.value[i] - fc.normal.dot(d * b.grad[i]));
        }
      });
    }
  }
  return rhs;
}

Eigen::VectorXd IpdgForm::apply(const Field& w) const {
  const PolySpace& V = *space_;
  const Mesh& mesh = V.mesh();
  if (&w.mesh() != &mesh) throw InvalidArgument("field and space live on different meshes");
  const int p = V.degree();
  const int n = V.dofs_per_cell();
  const int cell_degree = w.polynomial_degree() + p + extra_degree_;
  Eigen::VectorXd out = Eigen::VectorXd::Zero(V.num_dofs());
  BasisValues b;
  for (int c = 0; c < mesh.num_cells(); ++c) {
    auto dofs = V.cell_dofs(c);
    integrate_cell(mesh, c, cell_partition(w, c), cell_degree, [&](const Vec2& ref, double wt) {
      V.evaluate(c, ref, b);
      const Vec2 flux = wt * (diffusion_(mesh.to_physical(c, ref)) * w.gradient(c, ref));
      for (int i = 0; i < n; ++i) out[dofs[i]] += flux.dot(b.grad[i]);
    });
  }
  BasisValues bp;
  for (const Facet& f : mesh.facets()) {
    const bool interior = !f.is_boundary();
    const double sigma = this->sigma(f);
    auto dm = V.cell_dofs(f.minus);
    integrate_facet(mesh, f, cell_degree, [&](const Vec2& x, double wt) {
      const Mat2 d = diffusion_(x);
      const Vec2 rm = reference_point(mesh, f.minus, x);
      const Jet wm = w.evaluate(f.minus, rm, facet_side(mesh, rm));
      double wjump = wm.value;
      double wflux = f.normal.dot(d * wm.grad);
      V.evaluate(f.minus, rm, b);
      if (interior) {
        const Vec2 rp = reference_point(mesh, f.plus, x);
        const Jet wp = w.evaluate(f.plus, rp, facet_side(mesh, rp));
        wjump -= wp.value;
        wflux = 0.5 * (wflux + f.normal.dot(d * wp.grad));
        V.evaluate(f.plus, rp, bp);
        auto dp = V.cell_dofs(f.plus);
        for (int i = 0; i < n; ++i) {
          const double jump = -bp.value[i];
          const double flux = 0.5 * f.normal.dot(d * bp.grad[i]);
          out[dp[i]] += wt * (-jump * wflux - flux * wjump + sigma * jump * wjump);
        }
      }
      const double avg = interior ? 0.5 : 1.0;
      for (int i = 0; i < n; ++i) {
        const double jump = b.value[i];
        const double flux = avg * f.normal.dot(d * b.grad[i]);
        out[dm[i]] += wt * (-jump * wflux - flux * wjump + sigma * jump * wjump);
      }
    });
  }
  return out;
}

double IpdgForm::evaluate(const Field& w, const Field& v) const {
  const Mesh& mesh = space_->mesh();
  if (&w.mesh() != &mesh || &v.mesh() != &mesh) {
    throw InvalidArgument("fields and form live on different meshes");
  }
  const int degree = w.polynomial_degree() + v.polynomial_degree() + extra_degree_;
  double total = 0.0;
  for (int c = 0; c < mesh.num_cells(); ++c) {
    std::vector<double> part = cell_partition(w, c);
    const std::vector<double> pv = cell_partition(v, c);
    part.insert(part.end(), pv.begin(), pv.end());
    std::sort(part.begin(), part.end());
    part.erase(std::unique(part.begin(), part.end()), part.end());
    integrate_cell(mesh, c, part, degree, [&](const Vec2& ref, double wt) {
      const Mat2 d = diffusion_(mesh.to_physical(c, ref));
      total += wt * (d * w.gradient(c, ref)).dot(v.gradient(c, ref));
    });
  }
  for (const Facet& f : mesh.facets()) {
    const bool interior = !f.is_boundary();
    const double sigma = this->sigma(f);
    integrate_facet(mesh, f, degree, [&](const Vec2& x, double wt) {
      const Mat2 d = diffusion_(x);
      const Vec2 rm = reference_point(mesh, f.minus, x);
      const Side sm = facet_side(mesh, rm);
      const Jet wm = w.evaluate(f.minus, rm, sm), vm = v.evaluate(f.minus, rm, sm);
      double wj = wm.value, vj = vm.value;
      double wf = f.normal.dot(d * wm.grad), vf = f.normal.dot(d * vm.grad);
      if (interior) {
        const Vec2 rp = reference_point(mesh, f.plus, x);
        const Side sp = facet_side(mesh, rp);
        const Jet wp = w.evaluate(f.plus, rp, sp), vp = v.evaluate(f.plus, rp, sp);
        wj -= wp.value;
        vj -= vp.value;
        wf = 0.5 * (wf + f.normal.dot(d * wp.grad));
        vf = 0.5 * (vf + f.normal.dot(d * vp.grad));
      }
      total += wt * (-vj * wf - vf * wj + sigma * wj * vj);
    });
  }
  return total;
}

struct LinearSolver::Impl {
  std::unique_ptr<Eigen::SimplicialLDLT<SparseMatrix>> ldlt;
  std::unique_ptr<Eigen::ConjugateGradient<SparseMatrix, Eigen::Lower | Eigen::Upper,
                                           Eigen::DiagonalPreconditioner<double>>>
      cg;
};

LinearSolver::LinearSolver(const SparseMatrix& matrix, SolverOptions options)
    : matrix_(matrix), options_(options), impl_(std::make_unique<Impl>()) {
  if (matrix_.rows() != matrix_.cols()) throw InvalidArgument("solver needs a square matrix");
  if (matrix_.rows() <= options_.direct_limit) {
    impl_->ldlt = std::make_unique<Eigen::SimplicialLDLT<SparseMatrix>>(matrix_);
    if (impl_->ldlt->info() != Eigen::Success) {
      throw SolverError("sparse LDLT factorization failed", -1.0);
    }
    const auto d = impl_->ldlt->vectorD();
    if ((d.array() == 0.0).any()) throw SolverError("matrix is singular", -1.0);
  } else {
    impl_->cg = std::make_unique<std::remove_reference_t<decltype(*impl_->cg)>>();
    impl_->cg->setTolerance(options_.tolerance);
    impl_->cg->setMaxIterations(options_.max_iterations > 0 ? options_.max_iterations
                                                            : 10 * static_cast<int>(matrix_.rows()));
    impl_->cg->compute(matrix_);
  }
}

LinearSolver::~LinearSolver() = default;
LinearSolver::LinearSolver(LinearSolver&&) noexcept = default;
LinearSolver& LinearSolver::operator=(LinearSolver&&) noexcept = default;

bool LinearSolver::is_direct() const { return impl_->ldlt != nullptr; }

Eigen::VectorXd LinearSolver::solve(const Eigen::VectorXd& rhs) const {
  if (rhs.size() != matrix_.rows()) throw InvalidArgument("right-hand side has wrong length");
  const double bnorm = rhs.norm();
  if (bnorm == 0.0) {
    residual_ = 0.0;
    return Eigen::VectorXd::Zero(rhs.size());
  }
  Eigen::VectorXd x;
  if (impl_->ldlt) {
    x = impl_->ldlt->solve(rhs);
    residual_ = (matrix_ * x - rhs).norm() / bnorm;
    if (!std::isfinite(residual_) || residual_ > 1e6 * options_.tolerance) {
      throw SolverError("direct solve lost accuracy", residual_);
    }
  } else {
    x = impl_->cg->solve(rhs);
    residual_ = (matrix_ * x - rhs).norm() / bnorm;
    if (impl_->cg->info() != Eigen::Success) {
      std::ostringstream msg;
      msg << "conjugate gradients did not converge in " << impl_->cg->iterations()
          << " iterations";
      throw SolverError(msg.str(), residual_);
    }
  }
  return x;
}

void write_coordinate_matrix(std::ostream& out, const SparseMatrix& matrix) {
  std::ostringstream s;
  s.precision(17);
  for (int k = 0; k < matrix.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(matrix, k); it; ++it) {
      s << it.row() << ' ' << it.col() << ' ' << it.value() << '\n';
    }
  }
  out << s.str();
}

}  // namespace dgpost
