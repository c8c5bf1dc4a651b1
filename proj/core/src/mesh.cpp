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

#include "dgpost/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <unordered_map>

namespace dgpost {

namespace {

using EdgeKey = std::pair<int, int>;

EdgeKey edge_key(int a, int b) { return a < b ? EdgeKey{a, b} : EdgeKey{b, a}; }

struct EdgeKeyHash {
  std::size_t operator()(const EdgeKey& k) const {
    return std::hash<long long>()((static_cast<long long>(k.first) << 32) ^
                                  static_cast<long long>(k.second));
  }
};

double cross(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

}  // namespace

std::size_t RefinementMarks::count() const {
  return static_cast<std::size_t>(std::count(marked_.begin(), marked_.end(), 1));
}

Mesh::Mesh(int dim, std::vector<Vec2> vertices, std::vector<Cell> cells)
    : dim_(dim), vertices_(std::move(vertices)), cells_(std::move(cells)) {
  if (dim_ != 1 && dim_ != 2) {
    throw InvalidArgument("mesh dimension must be 1 or 2");
  }
  if (cells_.empty()) throw InvalidArgument("mesh has no cells");
  const int nv = num_vertices();
  for (std::size_t c = 0; c < cells_.size(); ++c) {
    auto& cell = cells_[c];
    if (dim_ == 1) cell[2] = -1;
    for (int i = 0; i <= dim_; ++i) {
      if (cell[i] < 0 || cell[i] >= nv) {
        throw InvalidArgument("cell " + std::to_string(c) + " references vertex " +
                              std::to_string(cell[i]) + " out of range");
      }
    }
    if (dim_ == 1) {
      const double len = vertices_[cell[1]].x() - vertices_[cell[0]].x();
      if (len < 0.0) std::swap(cell[0], cell[1]);
      if (!(std::abs(len) > 0.0)) {
        throw InvalidArgument("cell " + std::to_string(c) + " has zero length");
      }
    } else {
      const double area = cross(vertices_[cell[1]] - vertices_[cell[0]],
                                vertices_[cell[2]] - vertices_[cell[0]]);
      if (area < 0.0) std::swap(cell[1], cell[2]);
      if (!(std::abs(area) > 0.0)) {
        throw InvalidArgument("cell " + std::to_string(c) + " is degenerate");
      }
    }
  }
  build();
}

void Mesh::build() {
  const int nc = num_cells();
  geometry_.assign(nc, CellGeometry{});
  for (int c = 0; c < nc; ++c) {
    auto& g = geometry_[c];
    const auto& cell = cells_[c];
    g.origin = vertices_[cell[0]];
    if (dim_ == 1) {
      const double h = vertices_[cell[1]].x() - g.origin.x();
      g.jac << h, 0.0, 0.0, 1.0;
      g.det = h;
      g.measure = h;
      g.diameter = h;
      g.inradius = 0.5 * h;
    } else {
      const Vec2 e1 = vertices_[cell[1]] - g.origin;
      const Vec2 e2 = vertices_[cell[2]] - g.origin;
      g.jac.col(0) = e1;
      g.jac.col(1) = e2;
      g.det = cross(e1, e2);
      g.measure = 0.5 * g.det;
      const double l0 = e1.norm();
      const double l1 = (e2 - e1).norm();
      const double l2 = e2.norm();
      g.diameter = std::max({l0, l1, l2});
      g.inradius = 2.0 * g.measure / (l0 + l1 + l2);
    }
    g.inv = g.jac.inverse();
    g.inv_t = g.inv.transpose();
  }

  const int nv = num_vertices();
  vertex_cell_offsets_.assign(nv + 1, 0);
  for (int c = 0; c < nc; ++c) {
    for (int v : cell(c)) ++vertex_cell_offsets_[v + 1];
  }
  for (int v = 0; v < nv; ++v) vertex_cell_offsets_[v + 1] += vertex_cell_offsets_[v];
  vertex_cell_list_.assign(vertex_cell_offsets_.back(), 0);
  {
    std::vector<int> fill(vertex_cell_offsets_.begin(), vertex_cell_offsets_.end() - 1);
    for (int c = 0; c < nc; ++c) {
      for (int v : cell(c)) vertex_cell_list_[fill[v]++] = c;
    }
  }

  facets_.clear();
  hanging_count_ = 0;
  if (dim_ == 1) {
    build_facets_1d();
  } else {
    build_facets_2d();
  }

  cell_facet_offsets_.assign(nc + 1, 0);
  for (const auto& f : facets_) {
    ++cell_facet_offsets_[f.minus + 1];
    if (f.plus >= 0) ++cell_facet_offsets_[f.plus + 1];
  }
  for (int c = 0; c < nc; ++c) cell_facet_offsets_[c + 1] += cell_facet_offsets_[c];
  cell_facet_list_.assign(cell_facet_offsets_.back(), 0);
  std::vector<int> fill(cell_facet_offsets_.begin(), cell_facet_offsets_.end() - 1);
  for (int i = 0; i < static_cast<int>(facets_.size()); ++i) {
    cell_facet_list_[fill[facets_[i].minus]++] = i;
    if (facets_[i].plus >= 0) cell_facet_list_[fill[facets_[i].plus]++] = i;
  }
}

void Mesh::build_facets_1d() {
  const int nv = num_vertices();
  std::vector<int> left(nv, -1);   // cell having v as right endpoint
  std::vector<int> right(nv, -1);  // cell having v as left endpoint
  for (int c = 0; c < num_cells(); ++c) {
    const auto& cell = cells_[c];
    if (right[cell[0]] >= 0 || left[cell[1]] >= 0) {
      throw InvalidArgument("interval cells overlap at a shared vertex");
    }
    right[cell[0]] = c;
    left[cell[1]] = c;
  }
  std::vector<int> order(nv);
  for (int v = 0; v < nv; ++v) order[v] = v;
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return vertices_[a].x() < vertices_[b].x(); });
  for (int v : order) {
    if (left[v] < 0 && right[v] < 0) continue;
    Facet f;
    f.a = f.b = vertices_[v];
    f.measure = 1.0;
    if (left[v] >= 0 && right[v] >= 0) {
      f.minus = left[v];
      f.plus = right[v];
      f.normal = Vec2(1.0, 0.0);
      f.h = 0.5 * (diameter(f.minus) + diameter(f.plus));
    } else if (left[v] >= 0) {
      f.minus = left[v];
      f.normal = Vec2(1.0, 0.0);
      f.h = diameter(f.minus);
    } else {
      f.minus = right[v];
      f.normal = Vec2(-1.0, 0.0);
      f.h = diameter(f.minus);
    }
    facets_.push_back(f);
  }
}

void Mesh::build_facets_2d() {
  std::unordered_map<EdgeKey, std::vector<std::pair<int, int>>, EdgeKeyHash> edges;
  const int nc = num_cells();
  edges.reserve(3 * nc);
  for (int c = 0; c < nc; ++c) {
    for (int i = 0; i < 3; ++i) {
      edges[edge_key(cells_[c][i], cells_[c][(i + 1) % 3])].emplace_back(c, i);
    }
  }
  for (const auto& [key, list] : edges) {
    if (list.size() > 2) {
      throw InvalidArgument("edge (" + std::to_string(key.first) + ", " +
                            std::to_string(key.second) + ") shared by more than two cells");
    }
  }

  // Coarse edges carrying a hanging node: fine sub-edge -> coarse cell.
  std::unordered_map<EdgeKey, int, EdgeKeyHash> sub_to_coarse;
  std::unordered_map<EdgeKey, bool, EdgeKeyHash> coarse_hanging;
  for (const auto& [key, list] : edges) {
    if (list.size() != 1) continue;
    const int m = edge_midpoint(key.first, key.second);
    if (m < 0) continue;
    const auto s1 = edges.find(edge_key(key.first, m));
    const auto s2 = edges.find(edge_key(m, key.second));
    if (s1 == edges.end() || s2 == edges.end()) continue;
    if (s1->second.size() != 1 || s2->second.size() != 1) continue;
    sub_to_coarse[s1->first] = list[0].first;
    sub_to_coarse[s2->first] = list[0].first;
    coarse_hanging[key] = true;
  }

  std::unordered_map<EdgeKey, bool, EdgeKeyHash> done;
  for (int c = 0; c < nc; ++c) {
    for (int i = 0; i < 3; ++i) {
      const int va = cells_[c][i];
      const int vb = cells_[c][(i + 1) % 3];
      const EdgeKey key = edge_key(va, vb);
      if (done.count(key) || coarse_hanging.count(key)) continue;
      done[key] = true;
      Facet f;
      f.minus = c;
      f.a = vertices_[va];
      f.b = vertices_[vb];
      const Vec2 t = f.b - f.a;
      f.measure = t.norm();
      f.normal = Vec2(t.y(), -t.x()) / f.measure;
      const auto& list = edges.at(key);
      if (list.size() == 2) {
        f.plus = list[0].first == c ? list[1].first : list[0].first;
      } else if (auto it = sub_to_coarse.find(key); it != sub_to_coarse.end()) {
        f.plus = it->second;
        f.hanging = true;
        ++hanging_count_;
      }
      f.h = f.plus >= 0 ? 0.5 * (diameter(f.minus) + diameter(f.plus)) : diameter(f.minus);
      facets_.push_back(f);
    }
  }
}

Vec2 Mesh::to_physical(int c, const Vec2& ref) const {
  const auto& g = geometry_[c];
  if (dim_ == 1) return Vec2(g.origin.x() + g.det * ref.x(), 0.0);
  return g.origin + g.jac * ref;
}

Vec2 Mesh::to_reference(int c, const Vec2& x) const {
  const auto& g = geometry_[c];
  if (dim_ == 1) return Vec2((x.x() - g.origin.x()) / g.det, 0.0);
  return g.inv * (x - g.origin);
}

Vec2 Mesh::centroid(int c) const {
  Vec2 s = Vec2::Zero();
  for (int v : cell(c)) s += vertices_[v];
  return s / (dim_ + 1);
}

std::span<const int> Mesh::cell_facets(int c) const {
  return {cell_facet_list_.data() + cell_facet_offsets_[c],
          static_cast<std::size_t>(cell_facet_offsets_[c + 1] - cell_facet_offsets_[c])};
}

std::span<const int> Mesh::vertex_cells(int v) const {
  return {vertex_cell_list_.data() + vertex_cell_offsets_[v],
          static_cast<std::size_t>(vertex_cell_offsets_[v + 1] - vertex_cell_offsets_[v])};
}

int Mesh::edge_midpoint(int a, int b) const {
  auto it = midpoints_.find(edge_key(a, b));
  return it == midpoints_.end() ? -1 : it->second;
}

bool Mesh::is_uniform(double rel_tol) const {
  double lo = diameter(0), hi = diameter(0);
  for (int c = 1; c < num_cells(); ++c) {
    lo = std::min(lo, diameter(c));
    hi = std::max(hi, diameter(c));
  }
  return hi - lo <= rel_tol * hi;
}

Mesh uniform_interval(double a, double b, int n) {
  if (n <= 0) throw InvalidArgument("interval mesh needs at least one cell");
  if (!(a < b)) throw InvalidArgument("interval mesh needs a < b");
  std::vector<Vec2> v(n + 1);
  for (int i = 0; i <= n; ++i) {
    v[i] = Vec2(i == n ? b : a + (b - a) * i / n, 0.0);
  }
  std::vector<Mesh::Cell> cells(n);
  for (int i = 0; i < n; ++i) cells[i] = {i, i + 1, -1};
  return Mesh(1, std::move(v), std::move(cells));
}

Mesh unit_square(int n, double jitter, std::uint64_t seed) {
  if (n <= 0) throw InvalidArgument("unit square mesh needs n >= 1");
  if (jitter < 0.0 || jitter >= 0.5) {
    throw InvalidArgument("jitter must lie in [0, 0.5)");
  }
  std::mt19937_64 gen(seed);
  auto uniform = [&gen] {
    return 2.0 * static_cast<double>(gen() >> 11) * 0x1.0p-53 - 1.0;
  };
  const double h = 1.0 / n;
  std::vector<Vec2> v;
  v.reserve((n + 1) * (n + 1));
  for (int j = 0; j <= n; ++j) {
    for (int i = 0; i <= n; ++i) {
      Vec2 x(i * h, j * h);
      const double dx = uniform();
      const double dy = uniform();
      if (i > 0 && i < n && j > 0 && j < n) x += jitter * h * Vec2(dx, dy);
      v.push_back(x);
    }
  }
  std::vector<Mesh::Cell> cells;
  auto id = [n](int i, int j) { return j * (n + 1) + i; };
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      cells.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      cells.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  }
  return Mesh(2, std::move(v), std::move(cells));
}

Mesh l_shape(int n) {
  if (n <= 0) throw InvalidArgument("L-shape mesh needs n >= 1");
  const int m = 2 * n;
  const double h = 1.0 / n;
  auto inside_square = [n](int i, int j) { return !(i >= n && j < n); };
  std::vector<int> index((m + 1) * (m + 1), -1);
  std::vector<Vec2> v;
  auto vid = [&](int i, int j) {
    int& k = index[j * (m + 1) + i];
    if (k < 0) {
      k = static_cast<int>(v.size());
      v.emplace_back(-1.0 + i * h, -1.0 + j * h);
    }
    return k;
  };
  std::vector<Mesh::Cell> cells;
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < m; ++i) {
      if (!inside_square(i, j)) continue;
      const int a = vid(i, j), b = vid(i + 1, j), c = vid(i + 1, j + 1), d = vid(i, j + 1);
      // Diagonals point away from the reentrant corner in each quadrant.
      const bool flip = (i < n) != (j < n);
      if (flip) {
        cells.push_back({a, b, d});
        cells.push_back({b, c, d});
      } else {
        cells.push_back({a, b, c});
        cells.push_back({a, c, d});
      }
    }
  }
  return Mesh(2, std::move(v), std::move(cells));
}

RefinementMarks close_marks(const Mesh& mesh, RefinementMarks marks) {
  if (marks.size() != static_cast<std::size_t>(mesh.num_cells())) {
    throw InvalidArgument("refinement marks do not match the mesh");
  }
  if (mesh.dim() == 1 || !mesh.has_hanging_nodes()) return marks;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& f : mesh.facets()) {
      if (f.hanging && marks[f.minus] && !marks[f.plus]) {
        marks.set(f.plus);
        changed = true;
      }
    }
  }
  return marks;
}

Mesh refine(const Mesh& mesh, const RefinementMarks& input) {
  const RefinementMarks marks = close_marks(mesh, input);
  std::vector<Vec2> v = mesh.vertices_;
  auto midpoints = mesh.midpoints_;
  auto midpoint = [&](int a, int b) {
    auto [it, inserted] = midpoints.emplace(edge_key(a, b), static_cast<int>(v.size()));
    if (inserted) v.push_back(0.5 * (v[a] + v[b]));
    return it->second;
  };
  std::vector<Mesh::Cell> cells;
  std::vector<int> parent, level;
  cells.reserve(mesh.num_cells() + 3 * marks.count());
  for (int c = 0; c < mesh.num_cells(); ++c) {
    const auto& k = mesh.cells_[c];
    const int lev = mesh.level(c);
    if (!marks[c]) {
      cells.push_back(k);
      parent.push_back(c);
      level.push_back(lev);
      continue;
    }
    if (mesh.dim() == 1) {
      const int m = midpoint(k[0], k[1]);
      cells.push_back({k[0], m, -1});
      cells.push_back({m, k[1], -1});
    } else {
      const int m01 = midpoint(k[0], k[1]);
      const int m12 = midpoint(k[1], k[2]);
      const int m20 = midpoint(k[2], k[0]);
      cells.push_back({k[0], m01, m20});
      cells.push_back({m01, k[1], m12});
      cells.push_back({m20, m12, k[2]});
      cells.push_back({m01, m12, m20});
    }
    const int children = mesh.dim() == 1 ? 2 : 4;
    for (int i = 0; i < children; ++i) {
      parent.push_back(c);
      level.push_back(lev + 1);
    }
  }
  Mesh out(mesh.dim(), std::move(v), std::move(cells));
  out.parent_ = std::move(parent);
  out.level_ = std::move(level);
  out.midpoints_ = std::move(midpoints);
  out.build();
  return out;
}

Mesh refine_uniform(const Mesh& mesh) {
  return refine(mesh, RefinementMarks(mesh.num_cells(), true));
}

ShapeReport shape_report(const Mesh& mesh) {
  ShapeReport r;
  r.h_min = r.h_max = mesh.diameter(0);
  for (int c = 0; c < mesh.num_cells(); ++c) {
    r.h_min = std::min(r.h_min, mesh.diameter(c));
    r.h_max = std::max(r.h_max, mesh.diameter(c));
    r.max_aspect = std::max(r.max_aspect, mesh.diameter(c) / mesh.inradius(c));
  }
  return r;
}

Mesh read_macro_grid(std::istream& in) {
  std::string word;
  int nv = -1;
  if (!(in >> word >> nv) || word != "vertices" || nv <= 0) {
    throw InvalidArgument("macro grid: expected 'vertices N'");
  }
  std::vector<Vec2> v(nv);
  for (int i = 0; i < nv; ++i) {
    double x, y;
    if (!(in >> x >> y)) {
      throw InvalidArgument("macro grid: bad vertex line " + std::to_string(i));
    }
    v[i] = Vec2(x, y);
  }
  int nc = -1;
  if (!(in >> word >> nc) || word != "cells" || nc <= 0) {
    throw InvalidArgument("macro grid: expected 'cells M'");
  }
  std::vector<Mesh::Cell> cells(nc);
  for (int i = 0; i < nc; ++i) {
    if (!(in >> cells[i][0] >> cells[i][1] >> cells[i][2])) {
      throw InvalidArgument("macro grid: bad cell line " + std::to_string(i));
    }
  }
  return Mesh(2, std::move(v), std::move(cells));
}

void write_macro_grid(std::ostream& out, const Mesh& mesh) {
  if (mesh.dim() != 2) throw InvalidArgument("macro grids are two-dimensional");
  std::ostringstream s;
  s.precision(17);
  s << "vertices " << mesh.num_vertices() << '\n';
  for (const auto& x : mesh.vertices()) s << x.x() << ' ' << x.y() << '\n';
  s << "cells " << mesh.num_cells() << '\n';
  for (int c = 0; c < mesh.num_cells(); ++c) {
    auto k = mesh.cell(c);
    s << k[0] << ' ' << k[1] << ' ' << k[2] << '\n';
  }
  out << s.str();
}

void write_mesh_dump(std::ostream& out, const Mesh& mesh) {
  std::ostringstream s;
  s.precision(12);
  for (int c = 0; c < mesh.num_cells(); ++c) {
    auto k = mesh.cell(c);
    for (int i = 0; i <= mesh.dim(); ++i) {
      const Vec2& x = mesh.vertex(k[i]);
      s << x.x() << ' ' << x.y() << '\n';
    }
    if (mesh.dim() == 2) s << mesh.vertex(k[0]).x() << ' ' << mesh.vertex(k[0]).y() << '\n';
    s << '\n';
  }
  out << s.str();
}

}  // namespace dgpost
