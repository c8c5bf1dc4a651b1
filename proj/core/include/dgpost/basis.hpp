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

#ifndef DGPOST_BASIS_HPP_
#define DGPOST_BASIS_HPP_

#include <array>
#include <utility>
#include <vector>

#include "dgpost/common.hpp"

namespace dgpost {

/// Where a Lagrange node sits on the reference cell. Edge nodes record their
/// position k (1..p-1) counted from the first vertex of local edge
/// (v0,v1), (v1,v2) or (v2,v0).
struct NodeInfo {
  enum class Kind { Vertex, Edge, Interior };
  Kind kind = Kind::Interior;
  int entity = 0;
  int position = 0;
};

/// Lagrange basis on equispaced nodes of the reference interval or triangle.
///
/// Node order: vertices, then edge nodes edge by edge, then interior nodes.
/// In 1D this is 0, 1, then the interior nodes left to right.
class LagrangeBasis {
 public:
  static constexpr int kMaxSize = 10;

  LagrangeBasis(int dim, int degree);

  int dim() const { return dim_; }
  int degree() const { return degree_; }
  int size() const { return static_cast<int>(nodes_.size()); }
  const Vec2& node(int i) const { return nodes_[i]; }
  const NodeInfo& node_info(int i) const { return info_[i]; }

  /// Reference values, gradients and Hessians; null outputs are skipped.
  void evaluate(const Vec2& ref, double* values, Vec2* grads = nullptr,
                Mat2* hessians = nullptr) const;

 private:
  int dim_;
  int degree_;
  std::vector<Vec2> nodes_;
  std::vector<NodeInfo> info_;
  std::vector<std::pair<int, int>> exponents_;
  Eigen::MatrixXd coeff_;  // basis_i = sum_j coeff_(j, i) * monomial_j
};

/// Shared, lazily built basis for p = 1..3.
const LagrangeBasis& lagrange_basis(int dim, int degree);

/// Per-point basis data in physical coordinates.
struct BasisValues {
  int size = 0;
  std::array<double, LagrangeBasis::kMaxSize> value{};
  std::array<Vec2, LagrangeBasis::kMaxSize> grad{};
};

}  // namespace dgpost

#endif  // DGPOST_BASIS_HPP_
