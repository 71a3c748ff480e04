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

#include <gtest/gtest.h>

#include <random>
#include <set>

#include "sixdls/limit_surface.hpp"

namespace sixdls {
namespace {

// Points on {w : w' A w = 1} for a random SPD A.
MatX ellipsoid_points(const MatX& A, int n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  MatX out(n, A.rows());
  for (int i = 0; i < n; ++i) {
    VecX d(A.rows());
    for (Eigen::Index k = 0; k < d.size(); ++k) d[k] = g(rng);
    out.row(i) = (d / std::sqrt(d.dot(A * d))).transpose();
  }
  return out;
}

MatX random_spd(int d, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-0.3, 0.3);
  MatX B(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) B(i, j) = u(rng);
  return B * B.transpose() + MatX::Identity(d, d);
}

TEST(Basis, MonomialCountsAndOrder) {
  EXPECT_EQ(monomial_exponents(6, 4).size(), 126u);
  EXPECT_EQ(monomial_exponents(3, 4).size(), 15u);
  const auto e = monomial_exponents(3, 4);
  EXPECT_EQ(e.front(), (Exponents{4, 0, 0}));
  EXPECT_EQ(e.back(), (Exponents{0, 0, 4}));
  for (const auto& x : e) EXPECT_EQ(x[0] + x[1] + x[2], 4);
}

TEST(Basis, PairIndexIsABijection) {
  std::set<int> seen;
  for (int i = 0; i < 6; ++i)
    for (int j = i; j < 6; ++j) {
      EXPECT_EQ(pair_index(i, j, 6), pair_index(j, i, 6));
      seen.insert(pair_index(i, j, 6));
    }
  EXPECT_EQ(seen.size(), 21u);
  EXPECT_EQ(*seen.begin(), 0);
  EXPECT_EQ(*seen.rbegin(), 20);
}

TEST(Quartic, SquaredNormCoefficients) {
  const auto [a, M] = squared_norm_quartic(3);
  QuarticModel q{a, M, QuarticBasis::get(3)};
  const VecX w = (VecX(3) << 0.3, -1.2, 0.7).finished();
  EXPECT_NEAR(q.eval(w), std::pow(w.squaredNorm(), 2), 1e-12);
  EXPECT_LT(certificate_residual(q), 1e-12);
}

TEST(Quartic, DerivativesMatchFiniteDifferences) {
  const auto [a, M] = squared_norm_quartic(4);
  VecX coeff = a;
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-0.1, 0.1);
  for (Eigen::Index k = 0; k < coeff.size(); ++k) coeff[k] += u(rng);
  QuarticModel q{coeff, M, QuarticBasis::get(4)};
  const VecX w = (VecX(4) << 0.4, -0.2, 0.9, 0.1).finished();
  const double h = 1e-6;
  const VecX g = q.gradient(w);
  const MatX H = q.hessian(w);
  for (int j = 0; j < 4; ++j) {
    VecX e = VecX::Zero(4);
    e[j] = h;
    EXPECT_NEAR(g[j], (q.eval(w + e) - q.eval(w - e)) / (2 * h), 1e-7);
    const VecX dg = (q.gradient(w + e) - q.gradient(w - e)) / (2 * h);
    for (int i = 0; i < 4; ++i) EXPECT_NEAR(H(i, j), dg[i], 1e-6);
  }
}

TEST(Ellipsoid, RecoversExactEllipsoid) {
  const MatX A = random_spd(6, 1);
  const MatX pts = ellipsoid_points(A, 200, 2);
  const auto [m, rep] = fit_ellipsoid(pts);
  EXPECT_LT((m.A - A).cwiseAbs().maxCoeff(), 1e-9);
  EXPECT_LT(rep.fit_error, 1e-10);
  EXPECT_FALSE(rep.projected);
  EXPECT_EQ(rep.samples, 200u);
}

TEST(Ellipsoid, GradientAndEval) {
  EllipsoidModel m{random_spd(3, 4)};
  const VecX w = (VecX(3) << 0.1, 0.2, -0.3).finished();
  EXPECT_NEAR(m.eval(w), w.dot(m.A * w), 1e-15);
  EXPECT_LT((m.gradient(w) - 2 * m.A * w).norm(), 1e-15);
  const LimitSurfaceModel v = m;
  EXPECT_EQ(model_dim(v), 3);
  EXPECT_STREQ(model_kind_name(v), "ellipsoid");
  EXPECT_THROW(eval_ls(v, VecX::Zero(6)), DomainError);
}

TEST(Ellipsoid, RejectsDegenerateSamples) {
  EXPECT_THROW(fit_ellipsoid(MatX::Ones(5, 6)), DegenerateError);
  MatX flat = ellipsoid_points(random_spd(6, 5), 100, 6);
  flat.col(3).setZero();
  EXPECT_THROW(fit_ellipsoid(flat), DegenerateError);
}

TEST(Quartic, FitsAnEllipsoidClosely) {
  // an ellipsoid is a quartic after squaring, so the fit should be near exact
  const MatX pts = ellipsoid_points(random_spd(3, 7), 300, 8);
  const auto [m, rep] = fit_quartic(pts);
  EXPECT_LT(rep.fit_error, 1e-3);
  EXPECT_LT(rep.certificate_residual, 1e-6);
  EXPECT_GE(rep.certificate_min_eigenvalue, -1e-8);
  EXPECT_GT(rep.iterations, 0);
  EXPECT_NEAR(fitting_error(m, pts), rep.fit_error, 1e-15);
}

TEST(Quartic, FitsASuperellipsoidBetterThanAnEllipsoid) {
  // points on |x|^4 + |y|^4 + |z|^4 = 1
  std::mt19937_64 rng(9);
  std::normal_distribution<double> g;
  MatX pts(400, 3);
  for (int i = 0; i < 400; ++i) {
    Vec3 d(g(rng), g(rng), g(rng));
    d /= std::pow(d.array().pow(4).sum(), 0.25);
    pts.row(i) = d.transpose();
  }
  const auto [q, qr] = fit_quartic(pts);
  const auto [e, er] = fit_ellipsoid(pts);
  EXPECT_LT(qr.fit_error, 1e-3);
  EXPECT_GT(er.fit_error, 10 * qr.fit_error);
  // convex: Hessian PSD along random directions at random points
  for (int i = 0; i < 50; ++i) {
    const VecX w = pts.row(i).transpose() * 0.8;
    const VecX dir = pts.row(i + 50).transpose();
    EXPECT_GE(dir.dot(q.hessian(w) * dir), -1e-8);
  }
}

TEST(Quartic, RejectsTooFewSamples) {
  EXPECT_THROW(fit_quartic(ellipsoid_points(random_spd(3, 1), 10, 1)), DegenerateError);
}

TEST(Errors, FittingErrorIsMeanAbsoluteResidual) {
  const LimitSurfaceModel m = EllipsoidModel{MatX::Identity(2, 2)};
  MatX pts(2, 2);
  pts << 1, 0, 2, 0;  // f = 1 and 4
  EXPECT_DOUBLE_EQ(fitting_error(m, pts), 1.5);
  EXPECT_THROW(fitting_error(m, MatX(0, 2)), DomainError);
}

TEST(Pca, CountsSpannedDirections) {
  std::mt19937_64 rng(10);
  std::normal_distribution<double> g;
  MatX pts(500, 6);
  for (int i = 0; i < 500; ++i) {
    pts.row(i).setZero();
    for (int k = 0; k < 3; ++k) pts(i, k) = g(rng);
    pts(i, 5) = 1e-4 * g(rng);
  }
  EXPECT_EQ(pca_significant_components(pts, 0.01), 3);
  EXPECT_THROW(pca_significant_components(MatX::Ones(3, 6)), DomainError);
}

TEST(Psd, ProjectionClampsNegativeEigenvalues) {
  MatX m(2, 2);
  m << 1, 0, 0, -2;
  const MatX p = project_psd(m);
  EXPECT_NEAR(p(0, 0), 1.0, 1e-15);
  EXPECT_NEAR(p(1, 1), 0.0, 1e-15);
}

}  // namespace
}  // namespace sixdls
