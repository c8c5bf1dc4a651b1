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

#ifndef DGPOST_MESH_HPP_
#define DGPOST_MESH_HPP_

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "dgpost/common.hpp"

namespace dgpost {

/// Per-cell refinement flags. Length always equals the cell count of the
/// mesh it was built for.
class RefinementMarks {
 public:
  RefinementMarks() = default;
  explicit RefinementMarks(std::size_t num_cells, bool value = false)
      : marked_(num_cells, value ? 1 : 0) {}

  std::size_t size() const { return marked_.size(); }
  bool operator[](std::size_t c) const { return marked_[c] != 0; }
  void set(std::size_t c, bool value = true) { marked_[c] = value ? 1 : 0; }
  std::size_t count() const;

 private:
  std::vector<std::uint8_t> marked_;
};

/// A mesh facet used for integration. Interior facets separate `minus` and
/// `plus`; boundary facets have plus == -1. Next to a hanging node the facet
/// is the fine sub-edge, with the fine cell on the minus side.
struct Facet {
  int minus = -1;
  int plus = -1;
  Vec2 a = Vec2::Zero();   // endpoints; a == b in 1D
  Vec2 b = Vec2::Zero();
  Vec2 normal = Vec2::Zero();  // unit, outward from `minus`
  double measure = 0.0;        // edge length, 1 for point facets
  double h = 0.0;              // mean diameter of the adjacent cells
  bool hanging = false;

  bool is_boundary() const { return plus < 0; }
  Vec2 point(double t) const { return a + t * (b - a); }
};

struct ShapeReport {
  double h_min = 0.0;
  double h_max = 0.0;
  double max_aspect = 0.0;  // max over cells of h_K / rho_K
};

/// Simplicial mesh in one (intervals) or two (triangles) dimensions.
///
/// Meshes are immutable once built. `refine` returns a new mesh that keeps
/// the parent index of every cell and the edge-midpoint table needed to
/// resolve hanging nodes on later refinements.
class Mesh {
 public:
  using Cell = std::array<int, 3>;  // third entry unused (-1) in 1D

  Mesh(int dim, std::vector<Vec2> vertices, std::vector<Cell> cells);

  int dim() const { return dim_; }
  int num_cells() const { return static_cast<int>(cells_.size()); }
  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  int vertices_per_cell() const { return dim_ + 1; }

  const Vec2& vertex(int v) const { return vertices_[v]; }
  const std::vector<Vec2>& vertices() const { return vertices_; }
  std::span<const int> cell(int c) const {
    return {cells_[c].data(), static_cast<std::size_t>(dim_ + 1)};
  }

  double diameter(int c) const { return geometry_[c].diameter; }
  double measure(int c) const { return geometry_[c].measure; }
  double inradius(int c) const { return geometry_[c].inradius; }
  /// |det J| of the affine map from the reference cell.
  double jacobian_det(int c) const { return geometry_[c].det; }
  /// Maps reference gradients to physical gradients.
  const Mat2& inverse_transpose(int c) const { return geometry_[c].inv_t; }

  Vec2 to_physical(int c, const Vec2& ref) const;
  Vec2 to_reference(int c, const Vec2& x) const;
  Vec2 centroid(int c) const;

  const std::vector<Facet>& facets() const { return facets_; }
  /// Facet indices touching cell c (more than dim+1 next to hanging nodes).
  std::span<const int> cell_facets(int c) const;
  /// Cells having v as a vertex.
  std::span<const int> vertex_cells(int v) const;

  int parent(int c) const { return parent_.empty() ? -1 : parent_[c]; }
  int level(int c) const { return level_.empty() ? 0 : level_[c]; }
  bool has_hanging_nodes() const { return hanging_count_ > 0; }
  int num_hanging_facets() const { return hanging_count_; }

  /// Midpoint vertex of edge (a, b) if it was ever created, else -1.
  int edge_midpoint(int a, int b) const;

  bool is_uniform(double rel_tol = 1e-10) const;

 private:
  friend Mesh refine(const Mesh&, const RefinementMarks&);

  struct CellGeometry {
    Vec2 origin;
    Mat2 jac;
    Mat2 inv;
    Mat2 inv_t;
    double det = 0.0;
    double measure = 0.0;
    double diameter = 0.0;
    double inradius = 0.0;
  };

  void build();
  void build_facets_1d();
  void build_facets_2d();

  int dim_;
  std::vector<Vec2> vertices_;
  std::vector<Cell> cells_;
  std::vector<int> parent_;
  std::vector<int> level_;
  std::map<std::pair<int, int>, int> midpoints_;

  std::vector<CellGeometry> geometry_;
  std::vector<Facet> facets_;
  std::vector<int> cell_facet_offsets_;
  std::vector<int> cell_facet_list_;
  std::vector<int> vertex_cell_offsets_;
  std::vector<int> vertex_cell_list_;
  int hanging_count_ = 0;
};

/// n equal cells spanning [a, b].
Mesh uniform_interval(double a, double b, int n);

/// Structured triangulation of the unit square with n x n squares, each cut
/// along its main diagonal. Interior vertices are displaced by a
/// deterministic pseudo-random offset of at most jitter * (1/n) per axis.
Mesh unit_square(int n, double jitter = 0.0, std::uint64_t seed = 1);

/// Structured triangulation of (-1,1)^2 minus [0,1]x[-1,0] with n x n
/// squares per unit quadrant.
Mesh l_shape(int n);

/// Applies closure so that no edge ends up with more than one hanging node,
/// then bisects (1D) or red-refines (2D) every marked cell.
Mesh refine(const Mesh& mesh, const RefinementMarks& marks);
Mesh refine_uniform(const Mesh& mesh);

/// Extends marks to coarse neighbours of marked cells across hanging facets.
RefinementMarks close_marks(const Mesh& mesh, RefinementMarks marks);

ShapeReport shape_report(const Mesh& mesh);

/// Macro-grid text format: "vertices N", N lines "x y", "cells M",
/// M lines "i j k" with 0-based indices.
Mesh read_macro_grid(std::istream& in);
void write_macro_grid(std::ostream& out, const Mesh& mesh);

/// Cell outlines for gnuplot, one closed polygon per block.
void write_mesh_dump(std::ostream& out, const Mesh& mesh);

}  // namespace dgpost

#endif  // DGPOST_MESH_HPP_
