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

#include "doctest.h"
#include "dgpost/field.hpp"
#include "dgpost/quadrature.hpp"
#include "dgpost/space.hpp"

using namespace dgpost;

namespace {

std::shared_ptr<const PolySpace> interval_space(int n, int p,
                                                Continuity c = Continuity::Discontinuous) {
  auto mesh = std::make_shared<const Mesh>(uniform_interval(0.0, 1.0, n));
  return std::make_shared<const PolySpace>(mesh, p, c);
}

// L2 norm of u - w by a high-order rule, independent of the norms module.
double l2_error(const ScalarFunction& u, const Field& w) {
  const Mesh& m = w.mesh();
  const QuadratureRule& q = cell_rule(m.dim(), 20);
  double s = 0.0;
  for (int c = 0; c < m.num_cells(); ++c) {
    for (std::size_t k = 0; k < q.size(); ++k) {
      const double e = u(m.to_physical(c, q.points[k])) - w.value(c, q.points[k]);
      s += q.weights[k] * m.jacobian_det(c) * e * e;
    }
  }
  return std::sqrt(s);
}

}  // namespace

TEST_CASE("constant field") {
  auto V = interval_space(4, 2);
  auto one = interpolate([](const Vec2&) { return 1.0; }, V);
  for (double t : {0.0, 0.3, 1.0}) {
    CHECK(std::abs(one->value(2, Vec2(t, 0)) - 1.0) < 1e-14);
    CHECK(one->gradient(2, Vec2(t, 0)).norm() < 1e-12);
  }
}

TEST_CASE("quadratic interpolant of x^2 has slope 1 at x = 1/2") {
  auto V = interval_space(1, 2);
  auto w = interpolate([](const Vec2& x) { return x.x() * x.x(); }, V);
  CHECK(std::abs(w->gradient(0, Vec2(0.5, 0)).x() - 1.0) < 1e-13);
  CHECK(std::abs(w->evaluate(0, Vec2(0.5, 0)).hess(0, 0) - 2.0) < 1e-11);
}

TEST_CASE("composite field cancels") {
  auto V = interval_space(3, 3);
  std::shared_ptr<const Field> f =
      interpolate([](const Vec2& x) { return std::sin(3 * x.x()); }, V);
  const CompositeField zero({{1.0, f}, {-1.0, f}});
  for (int c = 0; c < 3; ++c) {
    const Jet j = zero.evaluate(c, Vec2(0.37, 0));
    CHECK(j.value == 0.0);
    CHECK(j.grad.norm() == 0.0);
  }
}

TEST_CASE("interpolation reproduces the space and converges at order p+1") {
  for (int p = 1; p <= 3; ++p) {
    auto V = interval_space(5, p);
    auto lin = interpolate([](const Vec2& x) { return 2 * x.x() - 1; }, V);
    CHECK(l2_error([](const Vec2& x) { return 2 * x.x() - 1; }, *lin) < 1e-14);
    auto zero = interpolate([](const Vec2&) { return 0.0; }, V);
    CHECK(zero->coefficients().norm() == 0.0);

    auto u = [p](const Vec2& x) { return std::pow(x.x(), p + 1); };
    const double e1 = l2_error(u, *interpolate(u, interval_space(8, p)));
    const double e2 = l2_error(u, *interpolate(u, interval_space(16, p)));
    CHECK(e1 > 0.0);
    CHECK(e1 / e2 == doctest::Approx(std::pow(2.0, p + 1)).epsilon(0.05));
  }
}

TEST_CASE("2D interpolation reproduces polynomials of degree p") {
  auto mesh = std::make_shared<const Mesh>(unit_square(3, 0.2, 1));
  for (int p = 1; p <= 3; ++p) {
    for (Continuity c : {Continuity::Discontinuous, Continuity::Continuous}) {
      auto V = std::make_shared<const PolySpace>(mesh, p, c);
      auto u = [p](const Vec2& x) { return std::pow(x.x() + 0.5 * x.y(), p) - x.y(); };
      CHECK(l2_error(u, *interpolate(u, V)) < 1e-13);
    }
  }
}

TEST_CASE("continuous space shares vertex and edge dofs") {
  auto mesh = std::make_shared<const Mesh>(unit_square(2, 0.0));
  const PolySpace cg(mesh, 2, Continuity::Continuous);
  CHECK(cg.num_dofs() == 25);
  const PolySpace dg(mesh, 2);
  CHECK(dg.num_dofs() == 6 * mesh->num_cells());
  CHECK(PolySpace(std::make_shared<const Mesh>(uniform_interval(0, 1, 4)), 3,
                  Continuity::Continuous)
            .num_dofs() == 13);
}

TEST_CASE("evaluation outside the reference cell throws") {
  auto V = interval_space(2, 1);
  auto w = interpolate([](const Vec2& x) { return x.x(); }, V);
  CHECK_THROWS_AS(w->value(0, Vec2(1.5, 0)), InvalidArgument);
  CHECK_THROWS_AS(w->value(7, Vec2(0.5, 0)), InvalidArgument);
}

TEST_CASE("subdivided field picks the requested side at a breakpoint") {
  auto mesh = std::make_shared<const Mesh>(uniform_interval(0.0, 1.0, 1));
  // Pieces: 0 on [0, 1/2] and 1 + s = 4t - 2 on [1/2, 1].
  std::vector<std::vector<SubdividedPolyField::Piece>> pieces(1);
  pieces[0].push_back({0.0, 0.5, {0.0}});
  pieces[0].push_back({0.5, 1.0, {1.0, 1.0}});
  const SubdividedPolyField w(mesh, 1, -1, pieces);
  CHECK(w.breakpoints(0) == std::vector<double>{0.5});
  CHECK(w.evaluate(0, Vec2(0.5, 0), Side::Lower).value == 0.0);
  CHECK(std::abs(w.evaluate(0, Vec2(0.5, 0), Side::Upper).value) < 1e-15);
  CHECK(std::abs(w.evaluate(0, Vec2(0.75, 0)).value - 1.0) < 1e-14);
  CHECK(std::abs(w.evaluate(0, Vec2(0.75, 0)).grad.x() - 4.0) < 1e-13);
  CHECK(cell_partition(w, 0) == std::vector<double>{0.0, 0.5, 1.0});
}
