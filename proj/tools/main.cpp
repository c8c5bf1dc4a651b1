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

// Command line front end: convergence tables, adaptive runs, kernel
// inspection and manufactured-solution checks.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dgpost/adapt.hpp"
#include "dgpost/convergence.hpp"
#include "dgpost/siac.hpp"

namespace fs = std::filesystem;
using namespace dgpost;

namespace {

struct Settings {
  std::string problem = "smooth1d";
  int p = 2;
  int levels = 5;
  std::string post = "siac";
  bool hyper = false;
  double sigma = 10.0;
  int r = -1;
  int m = 1;
  std::string space;
  std::string out = "out";
  int macro = -1;
  std::uint64_t seed = 1;
  double tol = 0.01;
  std::string driver = "rss";
  int max_iter = 30;
  int max_dofs = 500000;
};

// Reads `key = value` lines and turns them into `--key value` arguments.
std::vector<std::string> config_arguments(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open config file " + path);
  std::vector<std::string> args;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r");
      const auto b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    if (trim(line).empty()) continue;
    if (eq == std::string::npos) {
      throw InvalidArgument(path + ":" + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "hyper") {
      if (value == "true" || value == "1" || value == "yes") args.push_back("--hyper");
      continue;
    }
    args.push_back("--" + key);
    args.push_back(value);
  }
  return args;
}

PipelineOptions pipeline_options(const Settings& s) {
  PipelineOptions o;
  o.p = s.p;
  o.post = parse_post(s.post);
  o.penalty.c = s.sigma;
  o.penalty.mode = s.hyper ? PenaltySpec::Mode::Hyper : PenaltySpec::Mode::Standard;
  o.r = s.r;
  o.m = s.m;
  if (s.space == "cg") {
    o.continuity = Continuity::Continuous;
  } else if (s.space == "dg") {
    o.continuity = Continuity::Discontinuous;
  } else if (!s.space.empty()) {
    throw InvalidArgument("--space must be cg or dg");
  }
  return o;
}

void write_file(const fs::path& path, const std::function<void(std::ostream&)>& fn) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write " + path.string());
  fn(out);
}

std::string fmt(double v, const char* spec = "%10.3e") {
  if (std::isnan(v)) return std::string(10, ' ');
  char buf[32];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

int run_converge(const Settings& s) {
  ConvergenceOptions opt;
  opt.problem = s.problem;
  opt.pipeline = pipeline_options(s);
  opt.levels = s.levels;
  opt.macro_resolution = s.macro;
  opt.seed = s.seed;
  fs::create_directories(s.out);
  opt.on_level = [&](const LevelRecord& rec, const PipelineResult& res) {
    std::cerr << "level " << rec.level << ": " << rec.n_cells << " cells, " << rec.dofs
              << " dofs\n";
    if (rec.level + 1 != s.levels) return;
    write_file(fs::path(s.out) / "mesh.dat", [&](std::ostream& o) { write_mesh_dump(o, *res.mesh); });
    write_file(fs::path(s.out) / "uh.dat", [&](std::ostream& o) { write_field_dump(o, *res.uh); });
    if (res.ustar) {
      write_file(fs::path(s.out) / "ustar.dat",
                 [&](std::ostream& o) { write_field_dump(o, *res.ustar); });
      write_file(fs::path(s.out) / "ustarstar.dat",
                 [&](std::ostream& o) { write_field_dump(o, *res.improved->field); });
    }
  };
  const ConvergenceTable table = run_convergence(opt);
  const CsvTable errors = eoc_table(table);
  const CsvTable rates = rate_table(errors);
  write_file(fs::path(s.out) / "eoc.csv", [&](std::ostream& o) { write_csv(o, errors); });
  write_file(fs::path(s.out) / "rates.csv", [&](std::ostream& o) { write_csv(o, rates); });

  const char* names[] = {"err_L2_uh", "err_H1_uh", "err_L2_ustar", "err_H1_ustar",
                         "err_L2_ustarstar", "err_H1_ustarstar", "Rh", "Rss"};
  std::printf("%5s %8s", "level", "cells");
  for (const char* n : names) std::printf(" %16s", n);
  std::printf("\n");
  for (std::size_t i = 0; i < errors.rows.size(); ++i) {
    std::printf("%5d %8d", static_cast<int>(errors.rows[i][0]),
                static_cast<int>(errors.rows[i][1]));
    for (const char* n : names) {
      std::printf(" %10s %5s", fmt(errors.at(i, n)).c_str(),
                  fmt(rates.at(i, n), "%5.2f").c_str());
    }
    std::printf("\n");
  }
  return 0;
}

int run_adapt(const Settings& s) {
  const ProblemSpec problem = make_problem(s.problem);
  AdaptOptions opt;
  opt.pipeline = pipeline_options(s);
  opt.driver = parse_driver(s.driver);
  opt.tol = s.tol;
  opt.max_iter = s.max_iter;
  opt.max_dofs = s.max_dofs;
  opt.macro_resolution = s.macro;
  opt.seed = s.seed;
  opt.on_iteration = [](const AdaptRecord& r) {
    std::printf("iter %3d  cells %7d  dofs %8d  R %10.3e  err_dG %10.3e  marked %6d%s\n", r.iter,
                r.cells, r.dofs, r.estimate, r.err_dg, r.marked,
                r.fallback ? "  (uniform fallback)" : "");
    std::fflush(stdout);
  };
  const AdaptHistory hist = adapt_loop(problem, opt);
  fs::create_directories(s.out);
  write_file(fs::path(s.out) / "history.csv",
             [&](std::ostream& o) { write_csv(o, history_table(hist)); });
  write_file(fs::path(s.out) / "mesh.dat",
             [&](std::ostream& o) { write_mesh_dump(o, *hist.final_mesh); });
  write_file(fs::path(s.out) / "field.dat",
             [&](std::ostream& o) { write_field_dump(o, *hist.final_field); });
  const EstimatorReport rep =
      estimate(*hist.final_field, problem.f, problem.g, problem.diffusion);
  std::ofstream cells(fs::path(s.out) / "indicators_cells.dat");
  std::ofstream facets(fs::path(s.out) / "indicators_facets.dat");
  if (!cells || !facets) throw InvalidArgument("cannot write indicator files in " + s.out);
  write_report(cells, facets, rep);
  std::printf("final estimate %.6e over %d cells\n", rep.total, hist.final_mesh->num_cells());
  if (!hist.converged) {
    std::fprintf(stderr, "warning: tolerance %g not reached\n", s.tol);
    return 3;
  }
  return 0;
}

int run_kernel_info(int r, int m, int p) {
  const KernelSpec k = r >= 0 ? make_kernel(r, m) : default_kernel(p);
  std::printf("r = %d, m = %d, support = [%g, %g]\n", k.r, k.m, -k.support_radius(),
              k.support_radius());
  for (int g = -k.r; g <= k.r; ++g) std::printf("  c[%+d] = %.16g\n", g, k.coefficients[g + k.r]);
  return 0;
}

int run_self_check(const std::string& name) {
  int failures = 0;
  for (const auto& n : name.empty() ? catalog() : std::vector<std::string>{name}) {
    const SelfCheckResult r = self_check(make_problem(n));
    std::printf("%-12s points %3d  max rel. error %9.2e  %s\n", n.c_str(), r.points,
                r.max_relative_error, r.passed ? "ok" : "FAILED");
    failures += r.passed ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}

void common_options(CLI::App* cmd, Settings& s) {
  cmd->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  cmd->add_option("--problem", s.problem, "Problem name")->capture_default_str();
  cmd->add_option("--p", s.p, "Polynomial degree (1-3)")->capture_default_str();
  cmd->add_option("--post", s.post, "Post-processor: siac, spr or none")->capture_default_str();
  cmd->add_flag("--hyper", s.hyper, "Penalty c p^2/h^2 instead of c p^2/h");
  cmd->add_option("--sigma", s.sigma, "Penalty constant c")->capture_default_str();
  cmd->add_option("--r", s.r, "SIAC kernel: 2r+1 B-splines (default ceil((p+1)/2))");
  cmd->add_option("--m", s.m, "SIAC kernel: B-spline order m+1")->capture_default_str();
  cmd->add_option("--space", s.space, "cg or dg (default: cg in 1D, dg in 2D)");
  cmd->add_option("--macro", s.macro, "Macro mesh resolution (problem default if unset)");
  cmd->add_option("--seed", s.seed, "Seed of the macro-grid perturbation")->capture_default_str();
  cmd->add_option("--out", s.out, "Output directory")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  // Splice `key = value` lines of --config FILE in front of the other
  // arguments of the subcommand so that explicit flags win.
  std::vector<std::string> args(argv + 1, argv + argc);
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] != "--config" && args[i].rfind("--config=", 0) != 0) continue;
    std::string path;
    std::size_t erase = 1;
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) {
        std::cerr << "--config needs a file name\n";
        return 2;
      }
      path = args[i + 1];
      erase = 2;
    } else {
      path = args[i].substr(9);
    }
    args.erase(args.begin() + static_cast<long>(i), args.begin() + static_cast<long>(i + erase));
    try {
      const auto extra = config_arguments(path);
      const std::size_t at = args.empty() ? 0 : 1;
      args.insert(args.begin() + static_cast<long>(at), extra.begin(), extra.end());
    } catch (const std::exception& e) {
      std::cerr << e.what() << '\n';
      return 2;
    }
    break;
  }

  CLI::App app{"Post-processing and a posteriori error estimation for interior penalty DG"};
  app.require_subcommand(1);
  Settings s;

  auto* conv = app.add_subcommand("converge", "Uniform refinement study with EOC table");
  common_options(conv, s);
  conv->add_option("--levels", s.levels, "Number of levels")->capture_default_str();

  auto* adapt = app.add_subcommand("adapt", "Adaptive solve-estimate-mark-refine loop");
  common_options(adapt, s);
  adapt->add_option("--tol", s.tol, "Stop when the estimate is below this")->capture_default_str();
  adapt->add_option("--driver", s.driver, "rh (u_h) or rss (improved reconstruction)")
      ->capture_default_str();
  adapt->add_option("--max-iter", s.max_iter, "Iteration limit")->capture_default_str();
  adapt->add_option("--max-dofs", s.max_dofs, "Stop once u_h has this many dofs")
      ->capture_default_str();

  int kr = -1, km = 1, kp = 2;
  auto* kinfo = app.add_subcommand("kernel-info", "Print SIAC kernel coefficients");
  kinfo->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  kinfo->add_option("--r", kr, "Kernel half-width count");
  kinfo->add_option("--m", km, "B-spline order m+1")->capture_default_str();
  kinfo->add_option("--p", kp, "Use the default kernel for degree p")->capture_default_str();

  std::string check_name;
  auto* check = app.add_subcommand("self-check", "Manufactured-solution consistency check");
  check->add_option("--problem", check_name, "Single problem (default: all)");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*conv) return run_converge(s);
    if (*adapt) return run_adapt(s);
    if (*kinfo) return run_kernel_info(kr, km, kp);
    if (*check) return run_self_check(check_name);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
