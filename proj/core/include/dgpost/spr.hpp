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

#ifndef DGPOST_SPR_HPP_
#define DGPOST_SPR_HPP_

#include <memory>
#include <span>
#include <vector>

#include "dgpost/field.hpp"

namespace dgpost {

/// Sample points of a patch: cell vertices (p = 1), plus edge midpoints
/// (p = 2), or plus two Lobatto points per edge and the barycenters
/// (p = 3). Coincident points are listed once.
std::vector<Vec2> sample_points(const Mesh& mesh, int p, std::span<const int> cells);

struct NodePatch {
  int node = -1;
  int layers = 1;
  Vec2 center = Vec2::Zero();  // position of the node
  std::vector<int> cells;
  std::vector<Vec2> points;
  std::vector<double> values;  // u_h at each point, averaged over the cells containing it
};

/// Patch of the cells touching `node` (layers = 1), or additionally the
/// cells touching any vertex of those (layers = 2).
NodePatch build_patch(const DiscreteField& uh, int node, int layers);

/// Polynomial in the scaled coordinates (x - center) / scale.
struct NodeFit {
  int node = -1;
  int degree = 0;
  Vec2 center = Vec2::Zero();
  double scale = 1.0;
  int layers = 1;
  Eigen::VectorXd coefficients;  // monomials x^a y^b ordered by total degree

  Jet evaluate(const Vec2& x) const;
};

/// Least-squares fit of total degree `degree` to the patch samples.
/// Returns false in `ok` (without throwing) if the samples do not determine
/// the polynomial.
NodeFit fit_node_polynomial(const NodePatch& patch, int degree, bool* ok = nullptr);

/// Fit at one node on a patch of at least `min_layers` layers, enlarging it
/// to two layers when needed. Throws InvalidArgument naming the node if both
/// attempts fail.
NodeFit fit_node(const DiscreteField& uh, int node, int min_layers = 1);

/// u*|_K = sum over the vertices i of K of lambda_i q_i.
class SprField : public Field {
 public:
  SprField(std::shared_ptr<const Mesh> mesh, std::vector<NodeFit> fits);

  const NodeFit& fit(int node) const { return fits_[node]; }
  int polynomial_degree() const override { return degree_ + 1; }
  int smoothness() const override { return 0; }

 protected:
  Jet evaluate_unchecked(int cell, const Vec2& ref, Side side) const override;

 private:
  std::vector<NodeFit> fits_;
  int degree_ = 0;
};

std::shared_ptr<SprField> blend(std::vector<NodeFit> fits, std::shared_ptr<const Mesh> mesh);

/// Flags the vertices lying on the domain boundary.
std::vector<char> boundary_vertices(const Mesh& mesh);

/// Fits at every vertex followed by blending. Boundary vertices always use
/// two layers.
std::shared_ptr<SprField> recover(const DiscreteField& uh);

}  // namespace dgpost

#endif  // DGPOST_SPR_HPP_
