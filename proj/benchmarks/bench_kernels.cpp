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


#include <benchmark/benchmark.h>

#include <memory>

#include "dgpost/pipeline.hpp"
#include "dgpost/siac.hpp"
#include "dgpost/spr.hpp"

using namespace dgpost;

namespace {

struct Solved {
  ProblemSpec problem;
  PipelineResult result;
};

Solved solve(const std::string& name, int resolution, int p) {
  Solved s{make_problem(name), {}};
  auto mesh = std::make_shared<const Mesh>(s.problem.macro_mesh(resolution, 1));
  PipelineOptions opt;
  opt.p = p;
  opt.post = PostKind::None;
  opt.estimate_uh = opt.estimate_improved = false;
  s.result = run_pipeline(s.problem, mesh, opt);
  return s;
}

void BM_AssembleMatrix2D(benchmark::State& state) {
  const Solved s = solve("smooth2d", static_cast<int>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(s.result.form->assemble_matrix());
  state.counters["dofs"] = s.result.space->num_dofs();
}
BENCHMARK(BM_AssembleMatrix2D)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_Solve2D(benchmark::State& state) {
  const Solved s = solve("smooth2d", static_cast<int>(state.range(0)), 2);
  for (auto _ : state) {
    const LinearSolver solver(s.result.form->assemble_matrix());
    benchmark::DoNotOptimize(solver.solve(s.result.load));
  }
}
BENCHMARK(BM_Solve2D)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_SiacConvolve(benchmark::State& state) {
  const int p = static_cast<int>(state.range(1));
  const Solved s = solve("smooth1d", static_cast<int>(state.range(0)), p);
  const KernelSpec k = default_kernel(p);
  for (auto _ : state) benchmark::DoNotOptimize(convolve(*s.result.uh, k, {}));
}
BENCHMARK(BM_SiacConvolve)->Args({160, 1})->Args({160, 2})->Args({640, 2})->Args({640, 3});

void BM_SprRecover(benchmark::State& state) {
  const int p = static_cast<int>(state.range(1));
  const Solved s = solve("smooth2d", static_cast<int>(state.range(0)), p);
  for (auto _ : state) benchmark::DoNotOptimize(recover(*s.result.uh));
}
BENCHMARK(BM_SprRecover)->Args({8, 1})->Args({16, 1})->Args({16, 2})->Unit(benchmark::kMillisecond);

void BM_Estimate(benchmark::State& state) {
  const Solved s = solve("smooth2d", static_cast<int>(state.range(0)), 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(estimate(*s.result.uh, s.problem.f, s.problem.g, s.problem.diffusion));
  }
}
BENCHMARK(BM_Estimate)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_ImproveSpr(benchmark::State& state) {
  const Solved s = solve("smooth2d", static_cast<int>(state.range(0)), 1);
  const std::shared_ptr<const Field> ustar = recover(*s.result.uh);
  for (auto _ : state) {
    benchmark::DoNotOptimize(improve(ustar, s.result.uh, *s.result.form, *s.result.solver));
  }
}
BENCHMARK(BM_ImproveSpr)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
