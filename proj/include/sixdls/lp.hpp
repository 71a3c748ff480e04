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

#ifndef SIXDLS_LP_HPP_
#define SIXDLS_LP_HPP_

#include <cmath>
#include <limits>
#include <vector>

#include "sixdls/core.hpp"

namespace sixdls {

struct LpResult {
  enum class Status { Optimal, Infeasible, Unbounded, IterationLimit };
  Status status = Status::Infeasible;
  VecX x;
  double objective = 0.0;
  int iterations = 0;
};

/// Dense two-phase tableau simplex for
///
///   maximize c'x  subject to  A x = b,  x >= 0
///
/// with Dantzig pricing and a Bland's-rule fallback against cycling. Intended for
/// few rows and up to a few thousand columns.
inline LpResult solve_lp(const MatX& A_in, const VecX& b_in, const VecX& c, double tol = 1e-10,
                         int max_iterations = 200000) {
  const Eigen::Index m = A_in.rows(), n = A_in.cols();
  if (b_in.size() != m || c.size() != n) throw DomainError("LP dimensions do not match");
  MatX A = A_in;
  VecX b = b_in;
  // Row equilibration and nonnegative right-hand side.
  for (Eigen::Index i = 0; i < m; ++i) {
    double s = A.row(i).cwiseAbs().maxCoeff();
    if (!(s > 0)) {
      if (std::abs(b[i]) > tol) return {LpResult::Status::Infeasible, {}, 0.0, 0};
      s = 1.0;
    }
    if (b[i] < 0) s = -s;
    A.row(i) /= s;
    b[i] /= s;
  }

  const Eigen::Index N = n + m;  // structural + artificial columns
  MatX T = MatX::Zero(m, N + 1);
  T.leftCols(n) = A;
  T.block(0, n, m, m).setIdentity();
  T.col(N) = b;
  std::vector<Eigen::Index> basis(m);
  for (Eigen::Index i = 0; i < m; ++i) basis[i] = n + i;

  int iterations = 0;
  auto objective = [&](const VecX& cost) {
    double z = 0;
    for (Eigen::Index i = 0; i < m; ++i) z += cost[basis[i]] * T(i, N);
    return z;
  };
  // Dantzig pricing; after a run of non-improving (degenerate) pivots switch
  // to Bland's rule until the objective moves again.
  auto run = [&](const VecX& cost, Eigen::Index allowed) -> LpResult::Status {
    int stall = 0;
    double last = objective(cost);
    const double cscale = std::max(1.0, cost.head(allowed).cwiseAbs().maxCoeff());
    while (true) {
      if (iterations >= max_iterations) return LpResult::Status::IterationLimit;
      const bool bland = stall >= 50;
      Eigen::Index enter = -1;
      double most = -tol * cscale;
      for (Eigen::Index j = 0; j < allowed; ++j) {
        double z = -cost[j];
        for (Eigen::Index i = 0; i < m; ++i) z += cost[basis[i]] * T(i, j);
        if (z < most) {
          enter = j;
          most = z;
          if (bland) break;
        }
      }
      if (enter < 0) return LpResult::Status::Optimal;
      Eigen::Index leave = -1;
      double best = std::numeric_limits<double>::infinity();
      for (Eigen::Index i = 0; i < m; ++i) {
        if (T(i, enter) > tol) {
          const double ratio = std::max(0.0, T(i, N)) / T(i, enter);
          const double tie = 1e-12 * std::max(1.0, std::abs(best));
          if (leave < 0 || ratio < best - tie || (ratio <= best + tie && basis[i] < basis[leave])) {
            best = std::min(best, ratio);
            leave = i;
          }
        }
      }
      if (leave < 0) return LpResult::Status::Unbounded;
      T.row(leave) /= T(leave, enter);
      for (Eigen::Index i = 0; i < m; ++i)
        if (i != leave && T(i, enter) != 0.0) T.row(i) -= T(i, enter) * T.row(leave);
      basis[leave] = enter;
      ++iterations;
      const double now = objective(cost);
      if (now > last + 1e-12 * std::max(1.0, std::abs(last))) {
        last = now;
        stall = 0;
      } else {
        ++stall;
      }
    }
  };

  VecX phase1 = VecX::Zero(N);
  phase1.tail(m).setConstant(-1.0);
  auto st = run(phase1, N);
  if (st == LpResult::Status::IterationLimit) return {st, {}, 0.0, iterations};
  double infeas = 0.0;
  for (Eigen::Index i = 0; i < m; ++i)
    if (basis[i] >= n) infeas += T(i, N);
  if (infeas > 1e-9 * std::max(1.0, b.cwiseAbs().maxCoeff()))
    return {LpResult::Status::Infeasible, {}, 0.0, iterations};
  // Drive zero-level artificials out where possible.
  for (Eigen::Index i = 0; i < m; ++i) {
    if (basis[i] < n) continue;
    Eigen::Index j = 0;
    const double piv = T.row(i).head(n).cwiseAbs().maxCoeff(&j);
    if (piv > 1e-9) {
      T.row(i) /= T(i, j);
      for (Eigen::Index r = 0; r < m; ++r)
        if (r != i && T(r, j) != 0.0) T.row(r) -= T(r, j) * T.row(i);
      basis[i] = j;
    }
  }

  VecX phase2 = VecX::Zero(N);
  phase2.head(n) = c;
  st = run(phase2, n);
  LpResult out;
  out.status = st;
  out.iterations = iterations;
  if (st != LpResult::Status::Optimal) return out;
  out.x = VecX::Zero(n);
  for (Eigen::Index i = 0; i < m; ++i)
    if (basis[i] < n) out.x[basis[i]] = std::max(0.0, T(i, N));
  out.objective = c.dot(out.x);
  return out;
}

}  // namespace sixdls

#endif  // SIXDLS_LP_HPP_
