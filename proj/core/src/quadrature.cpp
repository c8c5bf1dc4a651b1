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

#include "dgpost/quadrature.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>

namespace dgpost {

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n <= 0) throw InvalidArgument("Gauss rule needs at least one point");
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    weights[i] = weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) nodes[n / 2] = 0.0;
}

namespace {

void check_degree(int degree) {
  if (degree < 0) throw InvalidArgument("quadrature degree must be nonnegative");
  if (degree > kMaxQuadratureDegree) {
    throw Unsupported("quadrature degree " + std::to_string(degree) + " exceeds " +
                      std::to_string(kMaxQuadratureDegree));
  }
}

QuadratureRule make_interval(int degree) {
  QuadratureRule q;
  q.dim = 1;
  const int n = degree / 2 + 1;
  q.degree = 2 * n - 1;
  std::vector<double> x, w;
  gauss_legendre(n, x, w);
  for (int i = 0; i < n; ++i) {
    q.points.emplace_back(0.5 * (x[i] + 1.0), 0.0);
    q.weights.push_back(0.5 * w[i]);
  }
  return q;
}

QuadratureRule make_triangle(int degree) {
  QuadratureRule q;
  q.dim = 2;
  // The collapsed map carries a factor (1 - u), so u needs one more degree.
  const int n = (degree + 1) / 2 + 1;
  q.degree = 2 * n - 2;
  std::vector<double> x, w;
  gauss_legendre(n, x, w);
  for (int i = 0; i < n; ++i) {
    const double u = 0.5 * (x[i] + 1.0);
    for (int j = 0; j < n; ++j) {
      const double v = 0.5 * (x[j] + 1.0);
      q.points.emplace_back(u, v * (1.0 - u));
      q.weights.push_back(0.25 * w[i] * w[j] * (1.0 - u));
    }
  }
  return q;
}

struct RuleCache {
  std::mutex mutex;
  std::map<int, std::unique_ptr<QuadratureRule>> rules;

  template <class Make>
  const QuadratureRule& get(int degree, Make make) {
    check_degree(degree);
    std::lock_guard<std::mutex> lock(mutex);
    auto& slot = rules[degree];
    if (!slot) slot = std::make_unique<QuadratureRule>(make(degree));
    return *slot;
  }
};

}  // namespace

const QuadratureRule& gauss_interval(int degree) {
  static RuleCache cache;
  return cache.get(degree, make_interval);
}

const QuadratureRule& triangle_rule(int degree) {
  static RuleCache cache;
  return cache.get(degree, make_triangle);
}

const QuadratureRule& cell_rule(int dim, int degree) {
  return dim == 1 ? gauss_interval(degree) : triangle_rule(degree);
}

}  // namespace dgpost
