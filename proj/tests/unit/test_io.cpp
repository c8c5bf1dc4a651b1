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
#include <limits>
#include <sstream>

#include "doctest.h"
#include "dgpost/convergence.hpp"
#include "dgpost/io.hpp"

using namespace dgpost;

TEST_CASE("csv round trip") {
  CsvTable t;
  t.header = {"a", "b", "c"};
  t.rows = {{1.0, 0.1, -3e-17}, {std::numeric_limits<double>::quiet_NaN(), 2.5e8, 1.0 / 3.0}};
  std::stringstream ss;
  write_csv(ss, t);
  const CsvTable r = read_csv(ss);
  CHECK(r.header == t.header);
  REQUIRE(r.rows.size() == 2);
  CHECK(std::isnan(r.rows[1][0]));
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      if (!std::isnan(t.rows[i][j])) CHECK(r.rows[i][j] == t.rows[i][j]);
    }
  }
  CHECK(r.column("b") == 1);
  CHECK(r.column("zz") == -1);
  CHECK(r.at(1, "b") == 2.5e8);
  CHECK_THROWS_AS(r.at(0, "zz"), InvalidArgument);
}

TEST_CASE("malformed csv") {
  std::istringstream empty("");
  CHECK_THROWS_AS(read_csv(empty), InvalidArgument);
  std::istringstream bad("a,b\n1,x\n");
  CHECK_THROWS_AS(read_csv(bad), InvalidArgument);
  std::istringstream ragged("a,b\n1,2,3\n");
  CHECK_THROWS_AS(read_csv(ragged), InvalidArgument);
}

TEST_CASE("convergence tables") {
  ConvergenceOptions opt;
  opt.pipeline.p = 1;
  opt.levels = 3;
  const ConvergenceTable t = run_convergence(opt);
  REQUIRE(t.levels.size() == 3);
  const CsvTable e = eoc_table(t);
  CHECK(e.header.front() == "level");
  CHECK(e.column("err_L2_ustarstar") >= 0);
  CHECK(e.column("eff_ss") >= 0);
  CHECK(e.rows.size() == 3);
  CHECK(e.at(2, "n_cells") == 4 * e.at(0, "n_cells"));
  const CsvTable r = rate_table(e);
  CHECK(std::isnan(r.at(0, "err_L2_uh")));
  CHECK(r.at(0, "dofs") == e.at(0, "dofs"));
  const double expected = std::log2(e.at(1, "err_L2_uh") / e.at(2, "err_L2_uh"));
  CHECK(std::abs(r.at(2, "err_L2_uh") - expected) < 1e-12);
  CHECK(r.at(2, "err_L2_uh") > 1.5);

  opt.levels = 1;
  const CsvTable one = rate_table(eoc_table(run_convergence(opt)));
  for (const auto& name : {"err_L2_uh", "err_H1_ustarstar", "Rss"}) CHECK(std::isnan(one.at(0, name)));

  ConvergenceOptions bad;
  bad.levels = 0;
  CHECK_THROWS_AS(run_convergence(bad), InvalidArgument);
}
