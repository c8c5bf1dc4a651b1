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

#include "doctest.h"
#include "dgpost/adapt.hpp"

using namespace dgpost;

namespace {

EstimatorReport report_from(const Eigen::VectorXd& lambda) {
  EstimatorReport r;
  r.lambda = lambda;
  r.eta_cell = lambda;
  r.total = lambda.norm();
  return r;
}

}  // namespace

TEST_CASE("marking above the mean") {
  Eigen::VectorXd lam = Eigen::VectorXd::Constant(6, 0.1);
  lam[4] = 5.0;
  const MarkResult m = mark(report_from(lam), 1e-3);
  CHECK_FALSE(m.fallback);
  CHECK(m.marks.count() == 1);
  CHECK(m.marks[4]);
}

TEST_CASE("uniform indicators fall back to marking every cell") {
  const MarkResult m = mark(report_from(Eigen::VectorXd::Constant(5, 0.2)), 1e-3);
  CHECK(m.fallback);
  CHECK(m.marks.count() == 5);
  const MarkResult done = mark(report_from(Eigen::VectorXd::Constant(5, 0.2)), 10.0);
  CHECK_FALSE(done.fallback);
  CHECK(done.marks.count() == 0);
}

TEST_CASE("a loose tolerance stops after one iteration") {
  AdaptOptions opt;
  opt.tol = 1e6;
  opt.pipeline.p = 1;
  opt.pipeline.post = PostKind::Spr;
  const AdaptHistory h = adapt_loop(make_problem("corner2d"), opt);
  CHECK(h.records.size() == 1);
  CHECK(h.converged);
  CHECK(h.records[0].marked == 0);
}

TEST_CASE("the residual driver needs a post-processor") {
  AdaptOptions opt;
  opt.pipeline.post = PostKind::None;
  CHECK_THROWS_AS(adapt_loop(make_problem("corner2d"), opt), InvalidArgument);
}

TEST_CASE("corner refinement concentrates at the reentrant corner") {
  const ProblemSpec problem = make_problem("corner2d");
  for (Driver d : {Driver::Rh, Driver::Rss}) {
    AdaptOptions opt;
    opt.driver = d;
    opt.pipeline.p = 1;
    opt.pipeline.post = PostKind::Spr;
    opt.tol = 1e-9;
    opt.max_iter = 8;
    const AdaptHistory h = adapt_loop(problem, opt);
    REQUIRE(h.records.size() == 8);
    CHECK_FALSE(h.converged);
    const Mesh& m = *h.final_mesh;
    CHECK(m.centroid(h.max_indicator_cells.back()).norm() < 0.1);
    double smallest = 1e300;
    Vec2 where;
    for (int c = 0; c < m.num_cells(); ++c) {
      if (m.diameter(c) < smallest) {
        smallest = m.diameter(c);
        where = m.centroid(c);
      }
    }
    CHECK(where.norm() < 0.05);
    for (std::size_t i = 1; i < h.records.size(); ++i) {
      CHECK(h.records[i].dofs > h.records[i - 1].dofs);
    }
    CHECK(h.records.back().estimate < 0.6 * h.records.front().estimate);
    CHECK(h.records.back().err_dg < h.records.front().err_dg);
  }
}

TEST_CASE("adaptive runs are deterministic") {
  AdaptOptions opt;
  opt.pipeline.p = 1;
  opt.pipeline.post = PostKind::Spr;
  opt.max_iter = 4;
  opt.tol = 1e-9;
  const ProblemSpec problem = make_problem("corner2d");
  const AdaptHistory a = adapt_loop(problem, opt);
  const AdaptHistory b = adapt_loop(problem, opt);
  REQUIRE(a.records.size() == b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    CHECK(a.records[i].dofs == b.records[i].dofs);
    CHECK(a.records[i].estimate == b.records[i].estimate);
  }
}

TEST_CASE("stop callback and history table") {
  AdaptOptions opt;
  opt.pipeline.p = 1;
  opt.pipeline.post = PostKind::Spr;
  opt.tol = 1e-9;
  int calls = 0;
  opt.on_iteration = [&](const AdaptRecord&) { ++calls; };
  opt.stop_when = [](const AdaptRecord& r) { return r.iter == 2; };
  const AdaptHistory h = adapt_loop(make_problem("corner2d"), opt);
  CHECK(h.records.size() == 3);
  CHECK(calls == 3);
  const CsvTable t = history_table(h);
  CHECK(t.header == std::vector<std::string>{"iter", "dofs", "cells", "R", "err_dG", "err_L2", "marked"});
  CHECK(t.rows.size() == 3);
  CHECK(t.at(2, "iter") == 2.0);
  CHECK(t.at(2, "marked") == 0.0);
  CHECK(t.at(0, "marked") > 0.0);
}

TEST_CASE("smooth problem reaches the tolerance") {
  AdaptOptions opt;
  opt.pipeline.p = 2;
  opt.pipeline.post = PostKind::Spr;
  opt.tol = 0.02;
  const AdaptHistory h = adapt_loop(make_problem("smooth2d"), opt);
  CHECK(h.converged);
  CHECK(h.records.back().estimate <= 0.02);
  CHECK(h.records.back().err_dg <= h.records.back().estimate);
}
