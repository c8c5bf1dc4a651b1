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
#include <numbers>
#include <string>

#include "doctest.h"
#include "dgpost/problems.hpp"

using namespace dgpost;

TEST_CASE("catalog") {
  const std::vector<std::string> names = catalog();
  CHECK(names == std::vector<std::string>{"smooth1d", "kinked1d", "smooth2d", "corner2d", "extcorner2d"});
  for (const auto& n : names) {
    const ProblemSpec p = make_problem(n);
    CHECK(p.name == n);
    CHECK(p.dim == (n.find("1d") != std::string::npos ? 1 : 2));
    CHECK(p.has_exact);
  }
}

TEST_CASE("unknown problems list the catalog") {
  try {
    make_problem("nope");
    FAIL("expected a throw");
  } catch (const InvalidArgument& e) {
    const std::string msg = e.what();
    for (const auto& n : catalog()) CHECK(msg.find(n) != std::string::npos);
  }
}

TEST_CASE("boundary and support values") {
  const ProblemSpec s = make_problem("smooth1d");
  CHECK(std::abs(s.u(Vec2(0.0, 0.0))) < 1e-15);
  CHECK(std::abs(s.u(Vec2(1.0 / 6.0, 0.0))) < 1e-15);
  CHECK(std::abs(s.u(Vec2(1.0 / 3.0, 0.0))) < 1e-14);
  CHECK(std::abs(s.u(Vec2(1.0 / 12.0, 0.0)) - std::cos(3.0 * std::numbers::pi / 8.0)) < 1e-14);

  const ProblemSpec k = make_problem("kinked1d");
  for (double x : {0.0, 0.1, 0.3, 0.7, 0.9, 1.0}) CHECK(k.u(Vec2(x, 0.0)) == 0.0);
  CHECK(k.u(Vec2(0.35, 0.0)) != 0.0);

  const ProblemSpec c = make_problem("corner2d");
  for (double r : {0.1, 0.5, 1.0}) {
    CHECK(std::abs(c.u(Vec2(r, 0.0))) < 1e-15);
    CHECK(std::abs(c.u(Vec2(0.0, -r))) < 1e-14);
    CHECK(std::abs(c.u(Vec2(0.0, r)) - std::pow(r, 2.0 / 3.0) * std::sin(std::numbers::pi / 3.0)) < 1e-14);
  }
  const ProblemSpec e = make_problem("extcorner2d");
  for (double t : {-0.9, -0.2, 0.4}) {
    CHECK(std::abs(e.u(Vec2(-1.0, t))) < 1e-14);
    CHECK(std::abs(e.u(Vec2(t, 1.0))) < 1e-14);
  }
  CHECK(c.inside(Vec2(-0.5, -0.5)));
  CHECK_FALSE(c.inside(Vec2(0.5, -0.5)));
}

TEST_CASE("gradients match central differences") {
  const double h = 1e-5;
  for (const auto& n : catalog()) {
    const ProblemSpec p = make_problem(n);
    for (const Vec2& x : {Vec2(0.41, 0.37), Vec2(0.55, 0.62), Vec2(-0.45, 0.3)}) {
      Vec2 y = x;
      if (p.dim == 1) y.y() = 0.0;
      if (!p.inside(y)) continue;
      const Vec2 g = p.grad_u(y);
      for (int i = 0; i < p.dim; ++i) {
        Vec2 e = Vec2::Zero();
        e[i] = h;
        const double fd = (p.u(y + e) - p.u(y - e)) / (2 * h);
        CHECK(std::abs(fd - g[i]) < 1e-6 * std::max(1.0, std::abs(g[i])));
      }
    }
  }
}

TEST_CASE("manufactured sources are consistent") {
  for (const auto& n : catalog()) {
    const SelfCheckResult r = self_check(make_problem(n));
    INFO(n << " " << r.max_relative_error);
    CHECK(r.passed);
    CHECK(r.points == 100);
  }
}

TEST_CASE("self check detects a wrong source") {
  ProblemSpec p = make_problem("smooth2d");
  auto f = p.f;
  p.f = [f](const Vec2& x) { return 1.001 * f(x); };
  CHECK_FALSE(self_check(p).passed);
}

TEST_CASE("macro meshes") {
  CHECK(make_problem("smooth1d").macro_mesh(-1, 1).num_cells() == 20);
  const Mesh m = make_problem("corner2d").macro_mesh(-1, 1);
  double area = 0.0;
  for (int c = 0; c < m.num_cells(); ++c) area += m.measure(c);
  CHECK(std::abs(area - 3.0) < 1e-12);
}
