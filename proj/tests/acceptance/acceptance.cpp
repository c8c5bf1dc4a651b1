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


// Acceptance suite. Prints one PASS/FAIL line per criterion followed by the
// measured quantities, and exits non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "dgpost/adapt.hpp"
#include "dgpost/convergence.hpp"
#include "dgpost/norms.hpp"
#include "dgpost/ortho.hpp"
#include "dgpost/quadrature.hpp"
#include "dgpost/siac.hpp"
#include "dgpost/spr.hpp"

using namespace dgpost;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void report(int id, const char* name, bool pass, const std::string& detail) {
  if (!pass) ++failures;
  std::printf("%s %2d %s: %s\n", pass ? "PASS" : "FAIL", id, name, detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

bool within(double v, double target, double tol) { return std::abs(v - target) <= tol; }

// Energy-improvement bookkeeping shared by every convergence run.
struct EnergyLog {
  int levels = 0;
  double worst_gap = -1e300;      // max of |u-u**|_A - |u-u*|_A
  double worst_identity = 0.0;    // max | |u-u**|_A - |u-u_h|_A | with u* := u_h

  void observe(const ProblemSpec& problem, const LevelRecord& rec, const PipelineResult& res) {
    ++levels;
    if (rec.ustar && rec.ustarstar) {
      worst_gap = std::max(worst_gap, rec.ustarstar->energy - rec.ustar->energy);
    }
    const ImprovedReconstruction same = improve(res.uh, res.uh, *res.form, *res.solver);
    const double e_same = error_norms(problem.u, problem.grad_u, *same.field, *res.form).energy;
    worst_identity = std::max(worst_identity, std::abs(e_same - rec.uh.energy));
  }
};

EnergyLog energy_log;

ConvergenceTable converge(ConvergenceOptions opt) {
  const ProblemSpec problem = make_problem(opt.problem);
  opt.on_level = [&](const LevelRecord& rec, const PipelineResult& res) {
    energy_log.observe(problem, rec, res);
  };
  return run_convergence(opt);
}

// Row i of the rate table for a column of the error table.
double rate(const CsvTable& rates, std::size_t row, const std::string& col) {
  return rates.at(row, col);
}

void criterion1() {
  const auto t0 = Clock::now();
  const ProblemSpec problem = make_problem("smooth1d");
  auto mesh = std::make_shared<const Mesh>(problem.macro_mesh(80, 1));
  PipelineOptions opt;
  opt.p = 2;
  opt.post = PostKind::Siac;
  opt.estimate_uh = opt.estimate_improved = false;
  const PipelineResult res = run_pipeline(problem, mesh, opt);
  const KernelSpec k = default_kernel(opt.p);
  // Exactness of the test quadrature: at least p + m + 4 beyond the basis.
  auto exact = std::make_shared<FunctionField>(mesh, problem.u, problem.grad_u, problem.hess_u,
                                               2 * opt.p + k.m + 4 + 8);
  const CompositeField err({{1.0, exact}, {-1.0, res.improved->field}});
  const double worst = res.form->apply(err).lpNorm<Eigen::Infinity>();
  const double bound = 1e-8 * res.load.lpNorm<Eigen::Infinity>();
  const double t = seconds_since(t0);
  report(1, "galerkin-orthogonality", worst <= bound && t < 5.0,
         fmt("max|A(u-u**,phi_i)| = %.3e, bound %.3e, %.2f s", worst, bound, t));
}

void criterion3(ConvergenceTable& table) {
  const auto t0 = Clock::now();
  ConvergenceOptions opt;
  opt.problem = "smooth1d";
  opt.pipeline.p = 2;
  opt.pipeline.post = PostKind::Siac;
  opt.pipeline.r = 2;
  opt.pipeline.m = 1;
  opt.levels = 6;
  opt.macro_resolution = 20;
  opt.interior_window = std::make_pair(0.25, 0.75);
  table = converge(opt);
  const double t = seconds_since(t0);
  const CsvTable rates = rate_table(eoc_table(table));
  bool pass = t < 60.0;
  std::string detail;
  for (std::size_t row = rates.rows.size() - 2; row < rates.rows.size(); ++row) {
    const double uh_l2 = rate(rates, row, "err_L2_uh"), uh_h1 = rate(rates, row, "err_H1_uh");
    const double us_l2 = rate(rates, row, "err_L2_ustar"), us_h1 = rate(rates, row, "err_H1_ustar");
    const double uss_l2 = rate(rates, row, "err_L2_ustarstar");
    const double uss_h1 = rate(rates, row, "err_H1_ustarstar");
    pass = pass && within(uh_l2, 3, 0.4) && within(uh_h1, 2, 0.4) && within(uss_l2, 5, 0.4) &&
           within(uss_h1, 4, 0.4) && within(us_l2, 4, 0.4) && us_h1 >= 2.6 && us_h1 <= 4.4;
    detail += fmt("n=%d: uh %.2f/%.2f u* %.2f/%.2f u** %.2f/%.2f; ", table.levels[row].n_cells,
                  uh_l2, uh_h1, us_l2, us_h1, uss_l2, uss_h1);
  }
  const auto& a = table.levels[table.levels.size() - 2];
  const auto& b = table.levels.back();
  detail += fmt("interior (0.25,0.75) u** %.2f/%.2f; %.1f s",
                eoc(a.ustarstar_interior->l2, b.ustarstar_interior->l2),
                eoc(a.ustarstar_interior->h1, b.ustarstar_interior->h1), t);
  report(3, "eoc-1d-p2", pass, detail);
}

void criterion4() {
  ConvergenceOptions opt;
  opt.problem = "smooth1d";
  opt.pipeline.p = 1;
  opt.pipeline.post = PostKind::Siac;
  opt.pipeline.penalty = PenaltySpec{PenaltySpec::Mode::Hyper, 10.0};
  opt.levels = 6;
  opt.macro_resolution = 20;
  opt.interior_window = std::make_pair(0.25, 0.75);
  const ConvergenceTable table = converge(opt);
  const CsvTable rates = rate_table(eoc_table(table));
  bool pass = true;
  std::string detail;
  for (std::size_t row = rates.rows.size() - 2; row < rates.rows.size(); ++row) {
    const double l2 = rate(rates, row, "err_L2_ustarstar");
    const double h1 = rate(rates, row, "err_H1_ustarstar");
    pass = pass && l2 >= 3.5 && h1 >= 2.5;
    detail += fmt("n=%d: u** %.2f/%.2f; ", table.levels[row].n_cells, l2, h1);
  }
  const auto& a = table.levels[table.levels.size() - 2];
  const auto& b = table.levels.back();
  detail += fmt("interior (0.25,0.75) u** %.2f/%.2f",
                eoc(a.ustarstar_interior->l2, b.ustarstar_interior->l2),
                eoc(a.ustarstar_interior->h1, b.ustarstar_interior->h1));
  report(4, "eoc-1d-p1-hyper", pass, detail);
}

// Piecewise Gauss integration of g(y) K(y) over the kernel support.
double kernel_integral(const KernelSpec& k, const std::function<double(double)>& g) {
  const std::vector<double> knots = k.knots();
  const QuadratureRule rule = gauss_interval(40);
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    const double a = knots[i], b = knots[i + 1];
    for (std::size_t q = 0; q < rule.weights.size(); ++q) {
      const double y = a + (b - a) * rule.points[q].x();
      sum += (b - a) * rule.weights[q] * k(y) * g(y);
    }
  }
  return sum;
}

void criterion5() {
  double moment_err = 0.0, repro_err = 0.0;
  for (auto [r, m] : {std::pair{1, 1}, {2, 1}, {2, 0}, {3, 1}}) {
    const KernelSpec k = make_kernel(r, m);
    for (int j = 0; j <= 2 * r; ++j) {
      const double mom = kernel_integral(k, [j](double y) { return std::pow(y, j); });
      moment_err = std::max(moment_err, std::abs(mom - (j == 0 ? 1.0 : 0.0)));
      for (double x : {-0.6, 0.0, 0.35, 1.2}) {
        const double conv = kernel_integral(k, [x, j](double y) { return std::pow(x - y, j); });
        repro_err = std::max(repro_err, std::abs(conv - std::pow(x, j)));
      }
    }
  }
  report(5, "kernel-moments", moment_err <= 1e-12 && repro_err <= 1e-10,
         fmt("max moment error %.2e, max reproduction error %.2e", moment_err, repro_err));
}

double poly2d(const Vec2& x, int degree) {
  double s = 0.3;
  for (int a = 0; a <= degree; ++a) {
    for (int b = 0; a + b <= degree; ++b) {
      s += (1.0 + 0.25 * a - 0.4 * b) * std::pow(x.x() - 0.4, a) * std::pow(x.y() - 0.55, b);
    }
  }
  return s;
}

void criterion6() {
  auto mesh = std::make_shared<const Mesh>(unit_square(8, 0.15, 1));
  const std::vector<char> boundary = boundary_vertices(*mesh);
  std::mt19937 gen(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  bool fitted = true;
  for (int p = 1; p <= 3; ++p) {
    auto uh = interpolate([](const Vec2&) { return 0.0; }, std::make_shared<const PolySpace>(mesh, p));
    for (int degree = 0; degree <= 2 * p; ++degree) {
      std::vector<NodeFit> fits(mesh->num_vertices());
      for (int v = 0; v < mesh->num_vertices(); ++v) {
        bool ok = false;
        for (int layers = boundary[v] ? 2 : 1; layers <= 2 && !ok; ++layers) {
          NodePatch patch = build_patch(*uh, v, layers);
          for (std::size_t i = 0; i < patch.points.size(); ++i) {
            patch.values[i] = poly2d(patch.points[i], degree);
          }
          fits[v] = fit_node_polynomial(patch, 2 * p, &ok);
        }
        fitted = fitted && ok;
      }
      auto star = blend(std::move(fits), mesh);
      double scale = 0.0, err = 0.0;
      for (int c = 0; c < mesh->num_cells(); ++c) {
        for (int s = 0; s < 6; ++s) {
          Vec2 ref(u(gen), u(gen));
          if (ref.sum() > 1) ref = Vec2(1 - ref.x(), 1 - ref.y());
          const double exact = poly2d(mesh->to_physical(c, ref), degree);
          scale = std::max(scale, std::abs(exact));
          err = std::max(err, std::abs(star->value(c, ref) - exact));
        }
      }
      worst = std::max(worst, err / scale);
    }
  }
  report(6, "spr-reproduction", fitted && worst <= 1e-9,
         fmt("max relative error %.2e over degrees <= 2p, p = 1..3", worst));
}

void criterion7_10() {
  const auto t0 = Clock::now();
  ConvergenceOptions opt;
  opt.problem = "smooth2d";
  opt.pipeline.p = 1;
  opt.pipeline.post = PostKind::Spr;
  opt.levels = 4;
  const ConvergenceTable table = converge(opt);
  const double t = seconds_since(t0);
  const CsvTable rates = rate_table(eoc_table(table));
  const std::size_t last = rates.rows.size() - 1;
  const double uh_l2 = rate(rates, last, "err_L2_uh");
  const double uss_l2 = rate(rates, last, "err_L2_ustarstar");
  const double gain = rate(rates, last, "err_H1_ustar") - rate(rates, last, "err_H1_uh");
  report(7, "eoc-2d-smooth",
         within(uh_l2, 2, 0.3) && within(uss_l2, 3, 0.4) && within(gain, 1, 0.4) && t < 300.0,
         fmt("L2 uh %.2f u** %.2f, H1 u* - uh %.2f, %.1f s", uh_l2, uss_l2, gain, t));

  std::vector<double> eff_h, eff_ss;
  for (std::size_t i = table.levels.size() - 3; i < table.levels.size(); ++i) {
    const LevelRecord& r = table.levels[i];
    eff_h.push_back(r.rh / r.uh.h1);
    eff_ss.push_back(r.rss / r.ustarstar->h1);
  }
  auto spread = [](const std::vector<double>& v) {
    return *std::max_element(v.begin(), v.end()) / *std::min_element(v.begin(), v.end());
  };
  double lo = 1e300, hi = 0.0;
  std::string detail;
  for (std::size_t i = 0; i < eff_h.size(); ++i) {
    const double q = eff_ss[i] / eff_h[i];
    lo = std::min(lo, q);
    hi = std::max(hi, q);
    detail += fmt("(%.2f, %.2f) ", eff_h[i], eff_ss[i]);
  }
  report(10, "estimator-stability", spread(eff_h) < 2 && spread(eff_ss) < 2 && lo >= 0.5 && hi <= 3,
         fmt("efficiency (Rh, R**) on last 3 levels %sspread %.2f/%.2f, ratio in [%.2f, %.2f]",
             detail.c_str(), spread(eff_h), spread(eff_ss), lo, hi));
}

double kink_ratio(const Mesh& mesh, const EstimatorReport& rep) {
  double near = 0.0;
  std::vector<double> mid;
  for (int c = 0; c < mesh.num_cells(); ++c) {
    const double x = mesh.centroid(c).x();
    if (std::abs(x - 0.3) < 3.0 / 320.0) near = std::max(near, rep.lambda[c]);
    if (x > 0.35 && x < 0.65) mid.push_back(rep.lambda[c]);
  }
  std::nth_element(mid.begin(), mid.begin() + mid.size() / 2, mid.end());
  return near / mid[mid.size() / 2];
}

void criterion8() {
  const ProblemSpec problem = make_problem("kinked1d");
  auto mesh = std::make_shared<const Mesh>(problem.macro_mesh(320, 1));
  PipelineOptions opt;
  opt.p = 2;
  opt.post = PostKind::Siac;
  const PipelineResult res = run_pipeline(problem, mesh, opt);
  const double rh = kink_ratio(*mesh, *res.rh);
  const double rss = kink_ratio(*mesh, *res.rss);
  report(8, "kink-localization", rss >= 3 * rh,
         fmt("peak/median from R** %.3g, from Rh %.3g, factor %.3g", rss, rh, rss / rh));
}

struct MatchedRun {
  AdaptRecord ss;
  AdaptRecord h;
  double seconds = 0.0;
};

MatchedRun matched_adapt(const std::string& name, int p, double target, int max_dofs) {
  const auto t0 = Clock::now();
  const ProblemSpec problem = make_problem(name);
  AdaptOptions opt;
  opt.pipeline.p = p;
  opt.pipeline.post = PostKind::Spr;
  opt.tol = 1e-12;
  opt.max_iter = 200;
  opt.max_dofs = max_dofs;
  opt.driver = Driver::Rss;
  opt.stop_when = [target](const AdaptRecord& r) { return r.err_dg <= target; };
  MatchedRun out;
  out.ss = adapt_loop(problem, opt).records.back();
  const double e_ss = out.ss.err_dg;
  opt.driver = Driver::Rh;
  opt.stop_when = [e_ss](const AdaptRecord& r) { return r.err_dg <= 1.2 * e_ss; };
  out.h = adapt_loop(problem, opt).records.back();
  out.seconds = seconds_since(t0);
  return out;
}

void criterion9() {
  const MatchedRun corner = matched_adapt("corner2d", 1, 0.015, 400000);
  const double match1 = corner.h.err_dg / corner.ss.err_dg;
  const double dof_ratio = static_cast<double>(corner.ss.dofs) / corner.h.dofs;
  bool pass = std::abs(match1 - 1) <= 0.2 && dof_ratio <= 0.6;
  std::string detail =
      fmt("corner p=1: dofs %d (R**, err %.3e) vs %d (Rh, err %.3e), ratio %.2f, %.1f s", corner.ss.dofs,
          corner.ss.err_dg, corner.h.dofs, corner.h.err_dg, dof_ratio, corner.seconds);

  for (double target : {1e-2, 4e-3}) {
    const MatchedRun ext = matched_adapt("extcorner2d", 2, target, 400000);
    const double match = ext.h.err_dg / ext.ss.err_dg;
    const double cell_ratio = static_cast<double>(ext.ss.cells) / ext.h.cells;
    pass = pass && std::abs(match - 1) <= 0.2 && cell_ratio <= 0.5;
    detail += fmt("; extcorner p=2: cells %d (err %.3e) vs %d (err %.3e), ratio %.2f, %.1f s", ext.ss.cells,
                  ext.ss.err_dg, ext.h.cells, ext.h.err_dg, cell_ratio, ext.seconds);
  }
  report(9, "adaptive-advantage", pass, detail);
}

void criterion11() {
  bool pass = true;
  std::string detail;
  for (const auto& name : catalog()) {
    const ProblemSpec p = make_problem(name);
    if (!p.has_exact) continue;
    const SelfCheckResult r = self_check(p, 100, 1e-6);
    pass = pass && r.passed;
    detail += fmt("%s %.1e (%d pts); ", name.c_str(), r.max_relative_error, r.points);
  }
  report(11, "manufactured-self-check", pass, detail);
}

}  // namespace

int main() {
  const auto t0 = Clock::now();
  ConvergenceTable smooth1d;
  criterion1();
  criterion3(smooth1d);
  criterion4();
  criterion5();
  criterion6();
  criterion7_10();
  criterion8();
  criterion9();
  criterion11();
  report(2, "energy-improvement",
         energy_log.worst_gap <= 1e-10 && energy_log.worst_identity <= 1e-10,
         fmt("%d levels, max(|u-u**|_A - |u-u*|_A) = %.2e, max identity gap %.2e",
             energy_log.levels, energy_log.worst_gap, energy_log.worst_identity));
  std::printf("%d criteria failed, %.1f s total\n", failures, seconds_since(t0));
  return failures == 0 ? 0 : 1;
}
