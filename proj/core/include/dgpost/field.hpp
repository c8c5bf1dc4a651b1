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

#ifndef DGPOST_FIELD_HPP_
#define DGPOST_FIELD_HPP_

#include <functional>
#include <iosfwd>
#include <memory>
#include <utility>
#include <vector>

#include "dgpost/space.hpp"

namespace dgpost {

using ScalarFunction = std::function<double(const Vec2&)>;
using VectorFunction = std::function<Vec2(const Vec2&)>;
using MatrixFunction = std::function<Mat2(const Vec2&)>;

/// Value, physical gradient and physical Hessian at a point.
struct Jet {
  double value = 0.0;
  Vec2 grad = Vec2::Zero();
  Mat2 hess = Mat2::Zero();

  Jet& operator+=(const Jet& o) {
    value += o.value;
    grad += o.grad;
    hess += o.hess;
    return *this;
  }
  Jet operator*(double w) const { return {w * value, w * grad, w * hess}; }
};

/// Which sub-cell to use when a point sits exactly on an internal
/// breakpoint: the one below it, the one above it, or either.
enum class Side { Any, Lower, Upper };

/// A scalar field that is smooth on each cell, or on each sub-cell of a
/// known internal partition of the cell.
class Field {
 public:
  explicit Field(std::shared_ptr<const Mesh> mesh);
  virtual ~Field() = default;

  const Mesh& mesh() const { return *mesh_; }
  const std::shared_ptr<const Mesh>& mesh_ptr() const { return mesh_; }

  /// Throws InvalidArgument if `ref` lies outside the reference cell.
  Jet evaluate(int cell, const Vec2& ref, Side side = Side::Any) const;
  double value(int cell, const Vec2& ref) const { return evaluate(cell, ref).value; }
  Vec2 gradient(int cell, const Vec2& ref) const { return evaluate(cell, ref).grad; }

  /// Reference coordinates of internal breakpoints in a 1D cell, ascending,
  /// excluding 0 and 1.
  virtual std::vector<double> breakpoints(int cell) const;

  /// Polynomial degree per (sub-)cell, used to size quadrature.
  virtual int polynomial_degree() const = 0;

  /// Smoothness across internal breakpoints: k means C^k, -1 discontinuous.
  virtual int smoothness() const { return -1; }

 protected:
  virtual Jet evaluate_unchecked(int cell, const Vec2& ref, Side side) const = 0;

 private:
  std::shared_ptr<const Mesh> mesh_;
};

/// Coefficient vector over a PolySpace.
class DiscreteField : public Field {
 public:
  DiscreteField(std::shared_ptr<const PolySpace> space, Eigen::VectorXd coefficients);

  const PolySpace& space() const { return *space_; }
  const std::shared_ptr<const PolySpace>& space_ptr() const { return space_; }
  const Eigen::VectorXd& coefficients() const { return coeffs_; }

  /// Coefficients attached to the local nodes of one cell.
  Eigen::VectorXd local_coefficients(int cell) const;

  int polynomial_degree() const override { return space_->degree(); }

 protected:
  Jet evaluate_unchecked(int cell, const Vec2& ref, Side side) const override;

 private:
  std::shared_ptr<const PolySpace> space_;
  Eigen::VectorXd coeffs_;
};

/// One-dimensional piecewise polynomial with internal breakpoints per cell.
/// Each piece covers [lo, hi] in cell reference coordinates and stores
/// monomial coefficients in s = 2 (t - lo) / (hi - lo) - 1.
class SubdividedPolyField : public Field {
 public:
  struct Piece {
    double lo = 0.0;
    double hi = 1.0;
    std::vector<double> coeffs;
  };

  SubdividedPolyField(std::shared_ptr<const Mesh> mesh, int degree, int smoothness,
                      std::vector<std::vector<Piece>> pieces);

  const std::vector<Piece>& pieces(int cell) const { return pieces_[cell]; }
  std::vector<double> breakpoints(int cell) const override;
  int polynomial_degree() const override { return degree_; }
  int smoothness() const override { return smoothness_; }

 protected:
  Jet evaluate_unchecked(int cell, const Vec2& ref, Side side) const override;

 private:
  int degree_;
  int smoothness_;
  std::vector<std::vector<Piece>> pieces_;
};

/// Weighted sum of fields on a common mesh.
class CompositeField : public Field {
 public:
  using Term = std::pair<double, std::shared_ptr<const Field>>;

  explicit CompositeField(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  std::vector<double> breakpoints(int cell) const override;
  int polynomial_degree() const override { return degree_; }
  int smoothness() const override { return smoothness_; }

 protected:
  Jet evaluate_unchecked(int cell, const Vec2& ref, Side side) const override;

 private:
  std::vector<Term> terms_;
  int degree_ = 0;
  int smoothness_ = -1;
};

/// Analytic function seen as a field. The Hessian is zero unless supplied.
class FunctionField : public Field {
 public:
  FunctionField(std::shared_ptr<const Mesh> mesh, ScalarFunction value,
                VectorFunction gradient, MatrixFunction hessian = {},
                int quadrature_degree = 8);

  int polynomial_degree() const override { return quadrature_degree_; }
  int smoothness() const override { return 2; }

 protected:
  Jet evaluate_unchecked(int cell, const Vec2& ref, Side side) const override;

 private:
  ScalarFunction value_;
  VectorFunction gradient_;
  MatrixFunction hessian_;
  int quadrature_degree_;
};

/// Nodal interpolation; reproduces polynomials of degree <= p.
std::shared_ptr<DiscreteField> interpolate(const ScalarFunction& u,
                                           std::shared_ptr<const PolySpace> space);

/// Reference-cell pieces on which `field` is polynomial: [0,1] split at the
/// breakpoints in 1D, the whole triangle in 2D (returned as {0, 1}).
std::vector<double> cell_partition(const Field& field, int cell);

/// Gnuplot-friendly dump: one sample per line, `x value dx` in 1D and
/// `x y value dx dy` in 2D, cells separated by blank lines.
void write_field_dump(std::ostream& out, const Field& field, int samples_per_cell = 8);

}  // namespace dgpost

#endif  // DGPOST_FIELD_HPP_
