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

#ifndef DGPOST_SPACE_HPP_
#define DGPOST_SPACE_HPP_

#include <memory>
#include <span>
#include <vector>

#include "dgpost/basis.hpp"
#include "dgpost/mesh.hpp"

namespace dgpost {

enum class Continuity { Discontinuous, Continuous };

/// Piecewise polynomials of degree p on a mesh, either fully discontinuous
/// or continuous across vertices and edges.
class PolySpace {
 public:
  PolySpace(std::shared_ptr<const Mesh> mesh, int degree,
            Continuity continuity = Continuity::Discontinuous);

  const Mesh& mesh() const { return *mesh_; }
  const std::shared_ptr<const Mesh>& mesh_ptr() const { return mesh_; }
  int degree() const { return degree_; }
  Continuity continuity() const { return continuity_; }
  bool is_continuous() const { return continuity_ == Continuity::Continuous; }
  int num_dofs() const { return num_dofs_; }
  int dofs_per_cell() const { return basis_->size(); }
  const LagrangeBasis& basis() const { return *basis_; }

  std::span<const int> cell_dofs(int c) const {
    return {dofs_.data() + static_cast<std::size_t>(c) * dofs_per_cell(),
            static_cast<std::size_t>(dofs_per_cell())};
  }

  /// Physical position of local node i on cell c.
  Vec2 node_point(int c, int i) const { return mesh_->to_physical(c, basis_->node(i)); }

  /// Physical basis values and gradients on cell c at a reference point.
  void evaluate(int c, const Vec2& ref, BasisValues& out) const;

 private:
  std::shared_ptr<const Mesh> mesh_;
  int degree_;
  Continuity continuity_;
  const LagrangeBasis* basis_;
  std::vector<int> dofs_;
  int num_dofs_ = 0;
};

}  // namespace dgpost

#endif  // DGPOST_SPACE_HPP_
