// Copyright 2026 The sixdls Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SIXDLS_QUADRATURE_HPP_
#define SIXDLS_QUADRATURE_HPP_

#include <cmath>
#include <map>
#include <mutex>
#include <utility>
#include <vector>

#include "sixdls/core.hpp"

namespace sixdls {

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1], ascending
  std::vector<double> weights;  // sum to 2
};

/// Gauss-Legendre rule of the given order, computed by Newton iteration on
/// P_n with the Chebyshev initial guess. Rules are memoized per order.
inline const GaussRule& gauss_legendre(int order) {
  if (order < 1) throw DomainError("quadrature order must be >= 1");
  static std::mutex mu;
  static std::map<int, GaussRule> rules;
  std::lock_guard<std::mutex> lock(mu);
  auto it = rules.find(order);
  if (it != rules.end()) return it->second;

  GaussRule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  const int n = order;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      // P_n = p1, P_{n-1} = p0
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute derivative at the converged node.
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n == 1 ? 1.0 : n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[n - 1 - i] = x;
    rule.nodes[i] = -x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n == 1) {
    rule.nodes[0] = 0.0;
    rule.weights[0] = 2.0;
  }
  return rules.emplace(order, std::move(rule)).first->second;
}

namespace detail {
inline std::atomic<int>& quadrature_setting() {
  static std::atomic<int> order{64};
  return order;
}
}  // namespace detail

/// Per-axis node count used for parametric surface integrals.
inline int default_quadrature_order() { return detail::quadrature_setting().load(); }
inline void set_default_quadrature_order(int order) {
  if (order < 1) throw DomainError("quadrature order must be >= 1");
  detail::quadrature_setting().store(order);
}

}  // namespace sixdls

#endif  // SIXDLS_QUADRATURE_HPP_
