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

#include "dgpost/siac.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include <Eigen/LU>

#include "dgpost/quadrature.hpp"

namespace dgpost {

double bspline(int order, double x) {
  if (order < 1) throw InvalidArgument("B-spline order must be at least 1");
  if (order == 1) return (x >= -0.5 && x < 0.5) ? 1.0 : 0.0;
  const double half = 0.5 * order;
  if (x <= -half || x >= half) return 0.0;
  const int k = order - 1;
  return ((x + half) * bspline(k, x + 0.5) + (half - x) * bspline(k, x - 0.5)) / k;
}

namespace {

// Gauss quadrature of fn over [lo, hi], split at every knot inside; exact
// when fn is a polynomial of the given degree between knots.
double integrate_piecewise(double lo, double hi, const std::vector<double>& knots, int degree,
                           const std::function<double(double)>& fn) {
  if (!(hi > lo)) return 0.0;
  std::vector<double> cuts{lo};
  for (double k : knots) {
    if (k > lo && k < hi) cuts.push_back(k);
  }
  cuts.push_back(hi);
  const QuadratureRule& q = gauss_interval(degree);
  double sum = 0.0;
  for (std::size_t j = 0; j + 1 < cuts.size(); ++j) {
    const double a = cuts[j], w = cuts[j + 1] - cuts[j];
    for (std::size_t i = 0; i < q.size(); ++i) sum += q.weights[i] * w * fn(a + w * q.points[i].x());
  }
  return sum;
}

std::vector<double> spline_knots(int order, double shift) {
  std::vector<double> k(order + 1);
  for (int i = 0; i <= order; ++i) k[i] = shift - 0.5 * order + i;
  return k;
}

}  // namespace

Eigen::VectorXd kernel_coefficients(int r, int m) {
  if (r < 0 || m < 0) throw InvalidArgument("kernel needs r >= 0 and m >= 0");
  const int n = 2 * r + 1;
  const int order = m + 1;
  Eigen::MatrixXd moments(n, n);
  for (int g = -r; g <= r; ++g) {
    const auto knots = spline_knots(order, g);
    for (int j = 0; j < n; ++j) {
      moments(j, g + r) = integrate_piecewise(
          knots.front(), knots.back(), knots, m + j,
          [&](double x) { return bspline(order, x - g) * std::pow(x, j); });
    }
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(moments);
  if (!lu.isInvertible()) {
    throw SolverError("kernel moment matrix is singular for r=" + std::to_string(r) +
                          ", m=" + std::to_string(m),
                      std::numeric_limits<double>::quiet_NaN());
  }
  Eigen::VectorXd e0 = Eigen::VectorXd::Zero(n);
  e0[0] = 1.0;
  Eigen::VectorXd c = lu.solve(e0);
  // The exact solution is symmetric; remove roundoff asymmetry.
  for (int g = 1; g <= r; ++g) {
    const double avg = 0.5 * (c[r + g] + c[r - g]);
    c[r + g] = c[r - g] = avg;
  }
  return c;
}

double KernelSpec::operator()(double x) const {
  double sum = 0.0;
  for (int g = -r; g <= r; ++g) sum += coefficients[g + r] * bspline(m + 1, x - g);
  return sum;
}

std::vector<double> KernelSpec::knots() const {
  std::vector<double> k;
  const double rad = support_radius();
  for (double z = -rad; z <= rad + 1e-12; z += 1.0) k.push_back(z);
  return k;
}

KernelSpec make_kernel(int r, int m) {
  KernelSpec k;
  k.r = r;
  k.m = m;
  k.coefficients = kernel_coefficients(r, m);
  return k;
}

KernelSpec default_kernel(int p) {
  if (p < 1) throw InvalidArgument("polynomial degree must be at least 1");
  return make_kernel((p + 2) / 2, 1);
}

SiacStencil build_stencil(const KernelSpec& kernel, int p) {
  if (kernel.coefficients.size() != 2 * kernel.r + 1) {
    throw InvalidArgument("kernel coefficients missing");
  }
  const LagrangeBasis& basis = lagrange_basis(1, p);
  SiacStencil st;
  st.degree = p;
  st.output_degree = p + kernel.m + 1;
  const double rad = kernel.support_radius();
  st.reach = static_cast<int>(std::ceil(rad)) + 1;
  const std::vector<double> knots = kernel.knots();
  const double frac = knots.front() - std::floor(knots.front());
  st.partition = {0.0};
  if (frac > 1e-12 && frac < 1.0 - 1e-12) st.partition.push_back(frac);
  st.partition.push_back(1.0);

  const int nout = st.output_degree + 1;
  const int nloc = p + 1;
  std::vector<double> s(nout);
  for (int q = 0; q < nout; ++q) s[q] = std::cos(std::numbers::pi * (2 * q + 1) / (2.0 * nout));
  Eigen::MatrixXd vander(nout, nout);
  for (int q = 0; q < nout; ++q)
    for (int k = 0; k < nout; ++k) vander(q, k) = std::pow(s[q], k);
  const Eigen::MatrixXd vinv = vander.inverse();

  std::array<double, LagrangeBasis::kMaxSize> phi;
  for (std::size_t sub = 0; sub + 1 < st.partition.size(); ++sub) {
    const double lo = st.partition[sub], hi = st.partition[sub + 1];
    std::vector<Eigen::MatrixXd> blocks;
    for (int d = -st.reach; d <= st.reach; ++d) {
      Eigen::MatrixXd values(nout, nloc);
      for (int q = 0; q < nout; ++q) {
        const double t = lo + 0.5 * (s[q] + 1.0) * (hi - lo);
        // z such that the source point t - z - d lies in [0, 1].
        const double zlo = std::max(t - d - 1.0, -rad);
        const double zhi = std::min(t - double(d), rad);
        std::vector<double> cuts = knots;
        cuts.push_back(t - d - 1.0);
        cuts.push_back(t - d);
        for (int l = 0; l < nloc; ++l) {
          values(q, l) = integrate_piecewise(zlo, zhi, cuts, kernel.m + p, [&](double z) {
            basis.evaluate(Vec2(t - z - d, 0.0), phi.data());
            return kernel(z) * phi[l];
          });
        }
      }
      blocks.push_back(vinv * values);
    }
    st.blocks.push_back(std::move(blocks));
  }
  return st;
}

std::shared_ptr<SubdividedPolyField> convolve(const DiscreteField& uh, const KernelSpec& kernel,
                                              const MirrorExtension& mirror) {
  const Mesh& mesh = uh.mesh();
  if (mesh.dim() != 1) throw Unsupported("SIAC filtering is implemented in 1D only");
  if (!mesh.is_uniform(1e-9)) throw Unsupported("SIAC filtering needs a uniform mesh");
  if (std::abs(kernel.scale - 1.0) > 1e-14) {
    throw Unsupported("SIAC kernel scaling other than the mesh size");
  }
  const int p = uh.space().degree();
  const SiacStencil st = build_stencil(kernel, p);
  const int n = mesh.num_cells();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return mesh.vertex(mesh.cell(a)[0]).x() < mesh.vertex(mesh.cell(b)[0]).x();
  });

  const LagrangeBasis& basis = uh.space().basis();
  const int nloc = basis.size();
  std::vector<int> reversed(nloc);
  for (int i = 0; i < nloc; ++i) {
    for (int j = 0; j < nloc; ++j) {
      if (std::abs(basis.node(j).x() - (1.0 - basis.node(i).x())) < 1e-12) reversed[i] = j;
    }
  }
  std::vector<Eigen::VectorXd> local(n);
  for (int k = 0; k < n; ++k) local[k] = uh.local_coefficients(order[k]);

  std::function<Eigen::VectorXd(int)> values = [&](int j) -> Eigen::VectorXd {
    if (j >= 0 && j < n) return local[j];
    const bool left = j < 0;
    const Eigen::VectorXd src = values(left ? -1 - j : 2 * n - 1 - j);
    const double g = left ? mirror.left : mirror.right;
    Eigen::VectorXd out(nloc);
    for (int i = 0; i < nloc; ++i) out[i] = 2.0 * g - src[reversed[i]];
    return out;
  };

  std::vector<std::vector<SubdividedPolyField::Piece>> pieces(n);
  for (int k = 0; k < n; ++k) {
    std::vector<Eigen::VectorXd> nb;
    for (int d = -st.reach; d <= st.reach; ++d) nb.push_back(values(k + d));
    auto& list = pieces[order[k]];
    for (std::size_t sub = 0; sub + 1 < st.partition.size(); ++sub) {
      Eigen::VectorXd a = Eigen::VectorXd::Zero(st.output_degree + 1);
      for (int d = 0; d <= 2 * st.reach; ++d) a += st.blocks[sub][d] * nb[d];
      SubdividedPolyField::Piece piece;
      piece.lo = st.partition[sub];
      piece.hi = st.partition[sub + 1];
      piece.coeffs.assign(a.data(), a.data() + a.size());
      list.push_back(std::move(piece));
    }
  }
  return std::make_shared<SubdividedPolyField>(uh.mesh_ptr(), st.output_degree, kernel.m,
                                               std::move(pieces));
}

}  // namespace dgpost
