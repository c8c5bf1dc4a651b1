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

#include "dgpost/space.hpp"

#include <array>
#include <map>
#include <tuple>

namespace dgpost {

PolySpace::PolySpace(std::shared_ptr<const Mesh> mesh, int degree, Continuity continuity)
    : mesh_(std::move(mesh)), degree_(degree), continuity_(continuity) {
  if (!mesh_ || mesh_->num_cells() == 0) throw InvalidArgument("space needs a non-empty mesh");
  basis_ = &lagrange_basis(mesh_->dim(), degree);
  const int nc = mesh_->num_cells();
  const int nloc = basis_->size();
  dofs_.assign(static_cast<std::size_t>(nc) * nloc, -1);
  if (continuity_ == Continuity::Discontinuous) {
    for (std::size_t i = 0; i < dofs_.size(); ++i) dofs_[i] = static_cast<int>(i);
    num_dofs_ = static_cast<int>(dofs_.size());
    return;
  }
  if (mesh_->has_hanging_nodes()) {
    throw Unsupported("continuous spaces on meshes with hanging nodes");
  }
  std::vector<int> vertex_dof(mesh_->num_vertices(), -1);
  std::map<std::tuple<int, int, int>, int> edge_dof;
  int next = 0;
  for (int c = 0; c < nc; ++c) {
    auto verts = mesh_->cell(c);
    for (int i = 0; i < nloc; ++i) {
      const NodeInfo& info = basis_->node_info(i);
      int& slot = dofs_[static_cast<std::size_t>(c) * nloc + i];
      switch (info.kind) {
        case NodeInfo::Kind::Vertex: {
          int& d = vertex_dof[verts[info.entity]];
          if (d < 0) d = next++;
          slot = d;
          break;
        }
        case NodeInfo::Kind::Edge: {
          if (mesh_->dim() == 1) {
            slot = next++;
            break;
          }
          const int a = verts[info.entity];
          const int b = verts[(info.entity + 1) % 3];
          const int pos = a < b ? info.position : degree_ - info.position;
          auto [it, inserted] = edge_dof.emplace(std::make_tuple(std::min(a, b), std::max(a, b), pos), next);
          if (inserted) ++next;
          slot = it->second;
          break;
        }
        case NodeInfo::Kind::Interior:
          slot = next++;
          break;
      }
    }
  }
  num_dofs_ = next;
}

void PolySpace::evaluate(int c, const Vec2& ref, BasisValues& out) const {
  out.size = basis_->size();
  std::array<Vec2, LagrangeBasis::kMaxSize> g;
  basis_->evaluate(ref, out.value.data(), g.data());
  const Mat2& it = mesh_->inverse_transpose(c);
  for (int i = 0; i < out.size; ++i) out.grad[i] = it * g[i];
}

}  // namespace dgpost
