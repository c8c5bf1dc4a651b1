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

#include "dgpost/problems.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace dgpost {

namespace {

using std::cos;
using std::sin;
constexpr double kPi = std::numbers::pi;

// w(s) = sin(6 pi s)^2 cos(9/2 pi s) and its first two derivatives.
struct Profile {
  static constexpr double a = 6.0 * kPi;
  static constexpr double b = 4.5 * kPi;
  static double value(double s) {
    const double sa = sin(a * s);
    return sa * sa * cos(b * s);
  }
  static double d1(double s) {
    const double sa = sin(a * s), ca = cos(a * s);
    return 2.0 * a * sa * ca * cos(b * s) - b * sa * sa * sin(b * s);
  }
  static double d2(double s) {
    const double sa = sin(a * s), ca = cos(a * s), sb = sin(b * s), cb = cos(b * s);
    return 2.0 * a * a * (ca * ca - sa * sa) * cb - 4.0 * a * b * sa * ca * sb -
           b * b * sa * sa * cb;
  }
};

Mat2 hess_1d(double v) {
  Mat2 m = Mat2::Zero();
  m(0, 0) = v;
  return m;
}

ProblemSpec smooth1d() {
  ProblemSpec p;
  p.name = "smooth1d";
  p.dim = 1;
  p.domain = "(0,1)";
  p.regularity = "analytic";
  p.has_exact = true;
  p.u = [](const Vec2& x) { return Profile::value(x.x()); };
  p.grad_u = [](const Vec2& x) { return Vec2(Profile::d1(x.x()), 0.0); };
  p.hess_u = [](const Vec2& x) { return hess_1d(Profile::d2(x.x())); };
  p.f = [](const Vec2& x) { return -Profile::d2(x.x()); };
  p.g = p.u;
  p.inside = [](const Vec2& x) { return x.x() > 0.0 && x.x() < 1.0; };
  p.box_lo = Vec2(0.0, 0.0);
  p.box_hi = Vec2(1.0, 0.0);
  p.macro_mesh = [](int n, std::uint64_t) { return uniform_interval(0.0, 1.0, n > 0 ? n : 20); };
  p.default_continuity = Continuity::Continuous;
  return p;
}

ProblemSpec kinked1d() {
  ProblemSpec p = smooth1d();
  p.name = "kinked1d";
  p.regularity = "H2, C1 but not C2 at x=0.3, C2 but not C3 at x=0.7";
  constexpr double lo = 0.3, width = 0.4;
  auto in = [](double x) { return x > lo && x < lo + width; };
  p.u = [in](const Vec2& x) { return in(x.x()) ? Profile::value((x.x() - lo) / width) : 0.0; };
  p.grad_u = [in](const Vec2& x) {
    return Vec2(in(x.x()) ? Profile::d1((x.x() - lo) / width) / width : 0.0, 0.0);
  };
  p.hess_u = [in](const Vec2& x) {
    return hess_1d(in(x.x()) ? Profile::d2((x.x() - lo) / width) / (width * width) : 0.0);
  };
  p.f = [in](const Vec2& x) {
    return in(x.x()) ? -Profile::d2((x.x() - lo) / width) / (width * width) : 0.0;
  };
  p.g = p.u;
  p.singular_points = {Vec2(lo, 0.0), Vec2(lo + width, 0.0)};
  return p;
}

ProblemSpec smooth2d() {
  ProblemSpec p;
  p.name = "smooth2d";
  p.dim = 2;
  p.domain = "(0,1)^2";
  p.regularity = "analytic";
  p.has_exact = true;
  p.diffusion = DiffusionSpec::scalar(
      [](const Vec2& x) { return x.squaredNorm() + 0.5; },
      [](const Vec2& x) { return Vec2(2.0 * x.x(), 2.0 * x.y()); });
  // u = sin(phi) sin(psi) with phi = pi x / (1/4 + x y), psi = pi (x + y).
  struct Parts {
    double sp, cp, ss, cs, px, py, pxx, pxy, pyy;
    explicit Parts(const Vec2& v) {
      const double x = v.x(), y = v.y();
      const double q = 0.25 + x * y;
      const double phi = kPi * x / q, psi = kPi * (x + y);
      sp = sin(phi);
      cp = cos(phi);
      ss = sin(psi);
      cs = cos(psi);
      px = 0.25 * kPi / (q * q);
      py = -kPi * x * x / (q * q);
      pxx = -0.5 * kPi * y / (q * q * q);
      pxy = -0.5 * kPi * x / (q * q * q);
      pyy = 2.0 * kPi * x * x * x / (q * q * q);
    }
    Vec2 grad() const {
      return Vec2(cp * px * ss + kPi * sp * cs, cp * py * ss + kPi * sp * cs);
    }
    Mat2 hess() const {
      const double uxx = -sp * px * px * ss + cp * pxx * ss + 2.0 * kPi * cp * px * cs -
                         kPi * kPi * sp * ss;
      const double uyy = -sp * py * py * ss + cp * pyy * ss + 2.0 * kPi * cp * py * cs -
                         kPi * kPi * sp * ss;
      const double uxy = -sp * px * py * ss + cp * pxy * ss + kPi * cp * (px + py) * cs -
                         kPi * kPi * sp * ss;
      Mat2 h;
      h << uxx, uxy, uxy, uyy;
      return h;
    }
  };
  p.u = [](const Vec2& x) {
    const Parts s(x);
    return s.sp * s.ss;
  };
  p.grad_u = [](const Vec2& x) { return Parts(x).grad(); };
  p.hess_u = [](const Vec2& x) { return Parts(x).hess(); };
  p.f = [](const Vec2& x) {
    const Parts s(x);
    const double a = x.squaredNorm() + 0.5;
    return -(2.0 * x.dot(s.grad()) + a * s.hess().trace());
  };
  p.g = p.u;
  p.inside = [](const Vec2& x) {
    return x.x() > 0.0 && x.x() < 1.0 && x.y() > 0.0 && x.y() < 1.0;
  };
  p.box_lo = Vec2(0.0, 0.0);
  p.box_hi = Vec2(1.0, 1.0);
  p.macro_mesh = [](int n, std::uint64_t seed) { return unit_square(n > 0 ? n : 8, 0.15, seed); };
  return p;
}

double corner_angle(const Vec2& x) {
  double t = std::atan2(x.y(), x.x());
  if (t < 0.0) t += 2.0 * kPi;
  return t;
}

double corner_value(const Vec2& x) {
  const double r = x.norm();
  if (r == 0.0) return 0.0;
  return std::pow(r, 2.0 / 3.0) * sin(2.0 * corner_angle(x) / 3.0);
}

Vec2 corner_grad(const Vec2& x) {
  const double r = x.norm();
  if (r == 0.0) return Vec2::Zero();
  const double t = corner_angle(x) / 3.0;
  return (2.0 / 3.0) * std::pow(r, -1.0 / 3.0) * Vec2(-sin(t), cos(t));
}

bool in_l_shape(const Vec2& x) {
  const bool square = x.x() > -1.0 && x.x() < 1.0 && x.y() > -1.0 && x.y() < 1.0;
  return square && !(x.x() >= 0.0 && x.y() <= 0.0);
}

ProblemSpec corner2d() {
  ProblemSpec p;
  p.name = "corner2d";
  p.dim = 2;
  p.domain = "(-1,1)^2 minus [0,1]x[-1,0]";
  p.regularity = "H^{5/3-eps}, singular gradient at the reentrant corner";
  p.has_exact = true;
  p.u = corner_value;
  p.grad_u = corner_grad;
  p.f = [](const Vec2&) { return 0.0; };
  p.g = p.u;
  p.singular_points = {Vec2::Zero()};
  p.inside = in_l_shape;
  p.box_lo = Vec2(-1.0, -1.0);
  p.box_hi = Vec2(1.0, 1.0);
  p.macro_mesh = [](int n, std::uint64_t) { return l_shape(n > 0 ? n : 2); };
  return p;
}

ProblemSpec extcorner2d() {
  ProblemSpec p = corner2d();
  p.name = "extcorner2d";
  // u = omega * u_c with omega = -sin(3/2 pi P), P = (1 - x^2)(1 - y^2).
  struct Omega {
    double value;
    Vec2 grad;
    double lap;
    explicit Omega(const Vec2& v) {
      const double x = v.x(), y = v.y();
      const double P = (1.0 - x * x) * (1.0 - y * y);
      const Vec2 gp(-2.0 * x * (1.0 - y * y), -2.0 * y * (1.0 - x * x));
      const double lp = -2.0 * (1.0 - y * y) - 2.0 * (1.0 - x * x);
      const double k = 1.5 * kPi;
      value = -sin(k * P);
      grad = -k * cos(k * P) * gp;
      lap = k * k * sin(k * P) * gp.squaredNorm() - k * cos(k * P) * lp;
    }
  };
  p.u = [](const Vec2& x) { return Omega(x).value * corner_value(x); };
  p.grad_u = [](const Vec2& x) {
    const Omega w(x);
    return Vec2(w.value * corner_grad(x) + corner_value(x) * w.grad);
  };
  p.f = [](const Vec2& x) {
    const Omega w(x);
    return -(2.0 * w.grad.dot(corner_grad(x)) + corner_value(x) * w.lap);
  };
  p.g = p.u;
  return p;
}

}  // namespace

std::vector<std::string> catalog() {
  return {"smooth1d", "kinked1d", "smooth2d", "corner2d", "extcorner2d"};
}

ProblemSpec make_problem(const std::string& name) {
  if (name == "smooth1d") return smooth1d();
  if (name == "kinked1d") return kinked1d();
  if (name == "smooth2d") return smooth2d();
  if (name == "corner2d") return corner2d();
  if (name == "extcorner2d") return extcorner2d();
  std::string list;
  for (const auto& n : catalog()) list += (list.empty() ? "" : ", ") + n;
  throw InvalidArgument("unknown problem '" + name + "' (available: " + list + ")");
}

namespace {

double halton(int index, int base) {
  double f = 1.0, r = 0.0;
  for (int i = index; i > 0; i /= base) {
    f /= base;
    r += f * (i % base);
  }
  return r;
}

// Fourth-order central difference of fn along direction e with step h.
template <class Fn>
auto central(const Fn& fn, const Vec2& x, const Vec2& e, double h) {
  return (fn(x - 2.0 * h * e) - 8.0 * fn(x - h * e) + 8.0 * fn(x + h * e) - fn(x + 2.0 * h * e)) /
         (12.0 * h);
}

}  // namespace

SelfCheckResult self_check(const ProblemSpec& problem, int points, double tol) {
  SelfCheckResult res;
  if (!problem.has_exact) {
    res.passed = true;
    return res;
  }
  const int dim = problem.dim;
  const Vec2 size = problem.box_hi - problem.box_lo;
  const double h = 2.5e-4 * size.maxCoeff();
  const double margin = 5.0 * h;
  const std::array<Vec2, 2> axes = {Vec2(1.0, 0.0), Vec2(0.0, 1.0)};

  auto grad_fd = [&](const Vec2& x) {
    Vec2 g = Vec2::Zero();
    for (int i = 0; i < dim; ++i) g[i] = central(problem.u, x, axes[i], h);
    return g;
  };
  auto flux_fd = [&](const Vec2& x) -> Vec2 {
    Mat2 d = problem.diffusion(x);
    Vec2 gr = grad_fd(x);
    return d * gr;
  };
  auto usable = [&](const Vec2& x) {
    for (int i = -4; i <= 4; ++i) {
      for (int j = (dim == 2 ? -4 : 0); j <= (dim == 2 ? 4 : 0); ++j) {
        if (!problem.inside(x + margin / 4.0 * Vec2(i, j))) return false;
      }
    }
    for (const Vec2& s : problem.singular_points) {
      if ((x - s).norm() < 0.1 * size.maxCoeff()) return false;
    }
    return true;
  };

  std::vector<double> fvals, resid;
  for (int k = 1; static_cast<int>(fvals.size()) < points && k < 100 * points; ++k) {
    Vec2 x(problem.box_lo.x() + size.x() * halton(k, 2),
           dim == 2 ? problem.box_lo.y() + size.y() * halton(k, 3) : 0.0);
    if (!usable(x)) continue;
    double div = 0.0;
    for (int i = 0; i < dim; ++i) {
      div += central([&](const Vec2& y) { return flux_fd(y)[i]; }, x, axes[i], h);
    }
    const double fx = problem.f(x);
    fvals.push_back(std::abs(fx));
    resid.push_back(std::abs(fx + div));
  }
  res.points = static_cast<int>(fvals.size());
  const double scale = std::max(1.0, *std::max_element(fvals.begin(), fvals.end()));
  for (double r : resid) res.max_relative_error = std::max(res.max_relative_error, r / scale);
  res.passed = res.points == points && res.max_relative_error <= tol;
  return res;
}

}  // namespace dgpost
