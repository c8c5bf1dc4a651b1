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

#ifndef DGPOST_IPDG_HPP_
#define DGPOST_IPDG_HPP_

#include <iosfwd>
#include <memory>

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include "dgpost/diffusion.hpp"
#include "dgpost/field.hpp"

namespace dgpost {

using SparseMatrix = Eigen::SparseMatrix<double>;

/// Symmetric interior penalty form
///   A(w, v) = sum_K (D grad w, grad v)_K
///           - sum_e ([v], {D grad w})_e - sum_e ([w], {D grad v})_e
///           + sum_e sigma_e ([w], [v])_e
/// over interior and boundary facets; on boundary facets the jump is the
/// trace times the outward normal and the average is the one-sided flux.
/// Continuous spaces skip interior facets in the matrix, where all jump
/// terms vanish.
class IpdgForm {
 public:
  IpdgForm(std::shared_ptr<const PolySpace> space, DiffusionSpec diffusion,
           PenaltySpec penalty = {}, int extra_degree = 2);

  const PolySpace& space() const { return *space_; }
  const std::shared_ptr<const PolySpace>& space_ptr() const { return space_; }
  const DiffusionSpec& diffusion() const { return diffusion_; }
  const PenaltySpec& penalty() const { return penalty_; }
  double sigma(const Facet& facet) const { return penalty_.sigma(space_->degree(), facet.h); }

  SparseMatrix assemble_matrix() const;

  /// (f, phi_i) plus the weak Dirichlet terms
  ///   - (g, n . D grad phi_i)_{E_b} + (sigma g, phi_i)_{E_b}.
  /// `degree` < 0 selects 2p + 8.
  Eigen::VectorXd assemble_load(const ScalarFunction& f, const ScalarFunction& g,
                                int degree = -1) const;

  /// Entries A(w, phi_i) for an arbitrary piecewise smooth field w.
  Eigen::VectorXd apply(const Field& w) const;

  /// A(w, v) for arbitrary fields.
  double evaluate(const Field& w, const Field& v) const;

 private:
  std::shared_ptr<const PolySpace> space_;
  DiffusionSpec diffusion_;
  PenaltySpec penalty_;
  int extra_degree_;
};

struct SolverOptions {
  double tolerance = 1e-12;
  int max_iterations = 0;  // 0 selects 10 * dimension
  int direct_limit = 200000;
};

/// Sparse direct LDL^T up to `direct_limit` unknowns, diagonally
/// preconditioned conjugate gradients beyond. The factorization is kept
/// for repeated solves.
class LinearSolver {
 public:
  explicit LinearSolver(const SparseMatrix& matrix, SolverOptions options = {});
  ~LinearSolver();
  LinearSolver(LinearSolver&&) noexcept;
  LinearSolver& operator=(LinearSolver&&) noexcept;

  /// Throws SolverError if the relative residual exceeds the tolerance
  /// by more than a safety factor (direct) or CG stalls.
  Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const;

  /// Relative residual |A x - b| / |b| of the last solve.
  double last_residual() const { return residual_; }
  bool is_direct() const;
  const SparseMatrix& matrix() const { return matrix_; }

 private:
  struct Impl;
  SparseMatrix matrix_;
  SolverOptions options_;
  std::unique_ptr<Impl> impl_;
  mutable double residual_ = 0.0;
};

/// Writes `i j value` per stored entry.
void write_coordinate_matrix(std::ostream& out, const SparseMatrix& matrix);

}  // namespace dgpost

#endif  // DGPOST_IPDG_HPP_
