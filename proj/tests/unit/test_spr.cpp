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


#include <cmath>
#include <memory>
#include <random>
#include <set>

#include "doctest.h"
#include "dgpost/spr.hpp"

using namespace dgpost;

namespace {

std::shared_ptr<const Mesh> structured(int n) {
  return std::make_shared<const Mesh>(unit_square(n, 0.0));
}

bool contains(const std::vector<Vec2>& pts, const Vec2& x) {
  for (const Vec2& y : pts) {
    if ((x - y).norm() < 1e-13) return true;
  }
  return false;
}

double poly(const Vec2& x, int degree) {
  double s = 0.3;
  for (int a = 0; a <= degree; ++a) {
    for (int b = 0; a + b <= degree; ++b) {
      s += std::pow(-1.0, a) * (1.0 + 0.1 * a + 0.07 * b) * std::pow(x.x(), a) * std::pow(x.y(), b);
    }
  }
  return s;
}

// Fits of `q` sampled directly at the patch points, using the same layer
// rule as recover.
std::shared_ptr<SprField> fit_polynomial_everywhere(const DiscreteField& uh, int degree) {
  const Mesh& mesh = uh.mesh();
  const std::vector<char> boundary = boundary_vertices(mesh);
  std::vector<NodeFit> fits(mesh.num_vertices());
  for (int v = 0; v < mesh.num_vertices(); ++v) {
    for (int layers = boundary[v] ? 2 : 1; layers <= 2; ++layers) {
      NodePatch patch = build_patch(uh, v, layers);
      for (std::size_t i = 0; i < patch.points.size(); ++i) {
        patch.values[i] = poly(patch.points[i], degree);
      }
      bool ok = false;
      NodeFit fit = fit_node_polynomial(patch, degree, &ok);
      if (ok) {
        fits[v] = fit;
        break;
      }
    }
    REQUIRE(fits[v].coefficients.size() > 0);
  }
  return blend(std::move(fits), uh.mesh_ptr());
}

}  // namespace

TEST_CASE("sample points of an interior patch") {
  auto mesh = structured(4);
  const int node = 6;  // vertex (1/4, 1/4)
  REQUIRE((mesh->vertex(node) - Vec2(0.25, 0.25)).norm() < 1e-15);
  auto cells = mesh->vertex_cells(node);
  REQUIRE(cells.size() == 6);
  CHECK(sample_points(*mesh, 1, cells).size() == 7);
  CHECK(sample_points(*mesh, 2, cells).size() == 19);
  const std::vector<Vec2> p3 = sample_points(*mesh, 3, cells);
  CHECK(p3.size() == 37);
  const double t = 0.5 - std::sqrt(5.0) / 10;
  CHECK(std::abs(t - 0.27639320225) < 1e-10);
  const Vec2 a = mesh->vertex(node), b(0.5, 0.25);
  CHECK(contains(p3, a + t * (b - a)));
  CHECK(contains(p3, a + (1 - t) * (b - a)));
}

TEST_CASE("node fit reproduces consistent samples") {
  auto mesh = std::make_shared<const Mesh>(unit_square(5, 0.15, 2));
  for (int p = 1; p <= 3; ++p) {
    auto V = std::make_shared<const PolySpace>(mesh, p);
    auto uh = interpolate([](const Vec2&) { return 0.0; }, V);
    NodePatch patch = build_patch(*uh, 14, 1);
    for (std::size_t i = 0; i < patch.points.size(); ++i) patch.values[i] = poly(patch.points[i], 2 * p);
    bool ok = false;
    const NodeFit fit = fit_node_polynomial(patch, 2 * p, &ok);
    REQUIRE(ok);
    for (std::size_t i = 0; i < patch.points.size(); ++i) {
      CHECK(std::abs(fit.evaluate(patch.points[i]).value - patch.values[i]) <
            1e-10 * std::abs(patch.values[i]) + 1e-10);
    }
  }
}

TEST_CASE("boundary corner gets a second layer") {
  auto mesh = std::make_shared<const Mesh>(unit_square(4, 0.15, 1));
  auto V = std::make_shared<const PolySpace>(mesh, 1);
  auto uh = interpolate([](const Vec2& x) { return x.x() + x.y(); }, V);
  bool ok = true;
  fit_node_polynomial(build_patch(*uh, 0, 1), 2, &ok);
  CHECK_FALSE(ok);
  CHECK(fit_node(*uh, 0).layers == 2);
  const std::vector<char> boundary = boundary_vertices(*mesh);
  int count = 0;
  for (char b : boundary) count += b;
  CHECK(count == 16);
}

TEST_CASE("blending reproduces global polynomials of degree 2p") {
  auto mesh = std::make_shared<const Mesh>(unit_square(6, 0.15, 3));
  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int p = 1; p <= 3; ++p) {
    auto V = std::make_shared<const PolySpace>(mesh, p);
    auto uh = interpolate([](const Vec2&) { return 0.0; }, V);
    auto star = fit_polynomial_everywhere(*uh, 2 * p);
    for (int c = 0; c < mesh->num_cells(); ++c) {
      Vec2 ref(u(gen), u(gen));
      if (ref.sum() > 1) ref = Vec2(1 - ref.x(), 1 - ref.y());
      const double exact = poly(mesh->to_physical(c, ref), 2 * p);
      CHECK(std::abs(star->value(c, ref) - exact) <= 1e-9 * std::abs(exact) + 1e-12);
    }
  }
}

TEST_CASE("recovery of a constant is that constant") {
  auto mesh = std::make_shared<const Mesh>(unit_square(4, 0.15, 8));
  for (int p = 1; p <= 3; ++p) {
    auto uh = interpolate([](const Vec2&) { return -2.5; },
                          std::make_shared<const PolySpace>(mesh, p));
    auto star = recover(*uh);
    CHECK(star->polynomial_degree() == 2 * p + 1);
    for (int c = 0; c < mesh->num_cells(); ++c) {
      CHECK(std::abs(star->value(c, Vec2(0.2, 0.3)) + 2.5) < 1e-11);
      CHECK(star->gradient(c, Vec2(0.2, 0.3)).norm() < 1e-9);
    }
  }
}

TEST_CASE("recovered field is continuous across conforming edges") {
  auto mesh = std::make_shared<const Mesh>(unit_square(5, 0.15, 4));
  auto V = std::make_shared<const PolySpace>(mesh, 2);
  auto uh = interpolate([](const Vec2& x) { return std::sin(3 * x.x()) * std::exp(x.y()); }, V);
  auto star = recover(*uh);
  for (const Facet& f : mesh->facets()) {
    if (f.is_boundary()) continue;
    for (double t : {0.0, 0.2, 0.5, 0.8, 1.0}) {
      const Vec2 x = f.point(t);
      auto ref = [&](int c) {
        Vec2 r = mesh->to_reference(c, x).cwiseMax(0.0);
        if (r.sum() > 1) r /= r.sum();
        return r;
      };
      CHECK(std::abs(star->value(f.minus, ref(f.minus)) - star->value(f.plus, ref(f.plus))) <
            1e-10);
    }
  }
}

TEST_CASE("changing u_h on one cell changes u* only nearby") {
  auto mesh = std::make_shared<const Mesh>(unit_square(6, 0.15, 5));
  auto V = std::make_shared<const PolySpace>(mesh, 1);
  auto uh = interpolate([](const Vec2& x) { return x.x() * x.y(); }, V);
  const int target = 30;
  Eigen::VectorXd c = uh->coefficients();
  for (int d : V->cell_dofs(target)) c[d] += 1.0;
  const DiscreteField bumped(V, c);
  auto a = recover(*uh);
  auto b = recover(bumped);
  std::set<int> nodes;
  for (int v = 0; v < mesh->num_vertices(); ++v) {
    const NodePatch patch = build_patch(*uh, v, a->fit(v).layers);
    for (int cell : patch.cells) {
      if (cell == target) nodes.insert(v);
    }
  }
  int changed = 0;
  for (int cell = 0; cell < mesh->num_cells(); ++cell) {
    bool near = false;
    for (int v : mesh->cell(cell)) near |= nodes.count(v) > 0;
    const double d = std::abs(a->value(cell, Vec2(0.3, 0.3)) - b->value(cell, Vec2(0.3, 0.3)));
    if (!near) CHECK(d == 0.0);
    if (d > 0.0) ++changed;
  }
  CHECK(changed > 0);
}
