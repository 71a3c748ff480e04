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

// Limit-surface models fit to normalized frictional wrenches:
//
//   ellipsoid  f1(w) = w' A w,             A positive definite
//   quartic    f2(w) = sum_k a_k prod_j w_j^d_jk,  homogeneous of degree 4
//
// The quartic is constrained to be SOS-convex: the Hessian form
// z' H(w) z must equal y' M y with y = w (x) z and M PSD. Both sides are
// biquadratic in (w, z); matching coefficients gives V1 vec(M) = V2 a.

#ifndef SIXDLS_LIMIT_SURFACE_HPP_
#define SIXDLS_LIMIT_SURFACE_HPP_

#include <array>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Sparse>

#include "sixdls/core.hpp"

namespace sixdls {

using Exponents = std::vector<int>;

/// Exponent vectors of all degree-`degree` monomials in `dim` variables, in
/// graded lexicographic order (x1^4, x1^3 x2, ..., xd^4 for degree 4).
inline std::vector<Exponents> monomial_exponents(int dim, int degree) {
  std::vector<Exponents> out;
  Exponents cur(dim, 0);
  std::function<void(int, int)> rec = [&](int var, int left) {
    if (var == dim - 1) {
      cur[var] = left;
      out.push_back(cur);
      return;
    }
    for (int e = left; e >= 0; --e) {
      cur[var] = e;
      rec(var + 1, left - e);
    }
  };
  rec(0, degree);
  return out;
}

/// Index of the unordered pair (i, j) among the d(d+1)/2 pairs i <= j.
inline int pair_index(int i, int j, int dim) {
  if (i > j) std::swap(i, j);
  return i * dim - i * (i - 1) / 2 + (j - i);
}

// ---------------------------------------------------------------------------
// Models

struct EllipsoidModel {
  MatX A;  // symmetric positive definite, dim x dim

  int dim() const { return static_cast<int>(A.rows()); }
  double eval(const VecX& w) const { return w.dot(A * w); }
  VecX gradient(const VecX& w) const { return 2.0 * A * w; }
  MatX hessian(const VecX&) const { return 2.0 * A; }
};

/// Shared monomial tables for a quartic in `dim` variables.
struct QuarticBasis {
  int dim = 6;
  std::vector<Exponents> exponents;

  static std::shared_ptr<const QuarticBasis> get(int dim) {
    static std::mutex mu;
    static std::map<int, std::shared_ptr<const QuarticBasis>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[dim];
    if (!slot) {
      auto b = std::make_shared<QuarticBasis>();
      b->dim = dim;
      b->exponents = monomial_exponents(dim, 4);
      slot = b;
    }
    return slot;
  }

  std::size_t size() const { return exponents.size(); }

  /// Values of every monomial at w.
  VecX monomials(const VecX& w) const {
    std::vector<std::array<double, 5>> pw(dim);
    for (int j = 0; j < dim; ++j) {
      pw[j][0] = 1.0;
      for (int e = 1; e <= 4; ++e) pw[j][e] = pw[j][e - 1] * w[j];
    }
    VecX out(exponents.size());
    for (std::size_t k = 0; k < exponents.size(); ++k) {
      double v = 1.0;
      for (int j = 0; j < dim; ++j) v *= pw[j][exponents[k][j]];
      out[k] = v;
    }
    return out;
  }
};

struct QuarticModel {
  VecX coefficients;  // one per monomial, grlex order
  MatX certificate;   // (dim^2 x dim^2) Gram matrix of the Hessian form
  std::shared_ptr<const QuarticBasis> basis;

  int dim() const { return basis ? basis->dim : 0; }

  double eval(const VecX& w) const { return basis->monomials(w).dot(coefficients); }

  VecX gradient(const VecX& w) const {
    const int d = dim();
    VecX g = VecX::Zero(d);
    for (std::size_t k = 0; k < basis->size(); ++k) {
      const auto& e = basis->exponents[k];
      for (int a = 0; a < d; ++a) {
        if (e[a] == 0) continue;
        double v = coefficients[k] * e[a];
        for (int j = 0; j < d; ++j) v *= std::pow(w[j], e[j] - (j == a ? 1 : 0));
        g[a] += v;
      }
    }
    return g;
  }

  MatX hessian(const VecX& w) const {
    const int d = dim();
    MatX h = MatX::Zero(d, d);
    for (std::size_t k = 0; k < basis->size(); ++k) {
      const auto& e = basis->exponents[k];
      for (int a = 0; a < d; ++a)
        for (int b = a; b < d; ++b) {
          Exponents r = e;
          double c = coefficients[k];
          c *= r[a];
          r[a] -= 1;
          if (c == 0 || r[a] < 0) continue;
          c *= r[b];
          r[b] -= 1;
          if (c == 0 || r[b] < 0) continue;
          for (int j = 0; j < d; ++j) c *= std::pow(w[j], r[j]);
          h(a, b) += c;
          if (a != b) h(b, a) += c;
        }
    }
    return h;
  }
};

using LimitSurfaceModel = std::variant<EllipsoidModel, QuarticModel>;

inline int model_dim(const LimitSurfaceModel& m) {
  return std::visit([](const auto& x) { return x.dim(); }, m);
}

inline const char* model_kind_name(const LimitSurfaceModel& m) {
  return std::holds_alternative<EllipsoidModel>(m) ? "ellipsoid" : "quartic";
}

inline double eval_ls(const LimitSurfaceModel& m, const VecX& w) {
  if (w.size() != model_dim(m)) throw DomainError("wrench dimension does not match model");
  return std::visit([&](const auto& x) { return x.eval(w); }, m);
}

inline VecX ls_gradient(const LimitSurfaceModel& m, const VecX& w) {
  if (w.size() != model_dim(m)) throw DomainError("wrench dimension does not match model");
  return std::visit([&](const auto& x) { return x.gradient(w); }, m);
}

inline MatX ls_hessian(const LimitSurfaceModel& m, const VecX& w) {
  if (w.size() != model_dim(m)) throw DomainError("wrench dimension does not match model");
  return std::visit([&](const auto& x) { return x.hessian(w); }, m);
}

struct FitReport {
  double fit_error = 0.0;
  std::size_t samples = 0;
  int iterations = 0;
  std::vector<double> residual_history;
  bool projected = false;  // ellipsoid eigenvalues were clamped to stay PD
  double certificate_residual = 0.0;
  double certificate_min_eigenvalue = 0.0;
};

/// Mean |f(w_i) - 1| over the rows of `samples`.
inline double fitting_error(const LimitSurfaceModel& m, const MatX& samples) {
  if (samples.rows() == 0) throw DomainError("fitting error needs at least one sample");
  double s = 0;
  for (Eigen::Index i = 0; i < samples.rows(); ++i)
    s += std::abs(eval_ls(m, samples.row(i).transpose()) - 1.0);
  return s / static_cast<double>(samples.rows());
}

namespace detail {
inline void require_full_rank(const MatX& samples, int dim) {
  if (samples.cols() != dim) throw DomainError("sample dimension does not match model");
  const MatX second = samples.transpose() * samples;
  Eigen::SelfAdjointEigenSolver<MatX> es(second);
  const double hi = es.eigenvalues().maxCoeff();
  if (!(hi > 0) || es.eigenvalues().minCoeff() <= 1e-12 * hi)
    throw DegenerateError("wrench samples do not span all model dimensions");
}
}  // namespace detail

// ---------------------------------------------------------------------------
// Ellipsoid

constexpr double kEllipsoidPdFloor = 1e-8;

/// Least squares over symmetric matrices of sum (w' A w - 1)^2; if the
/// optimum is not positive definite its eigenvalues are clamped.
inline std::pair<EllipsoidModel, FitReport> fit_ellipsoid(const MatX& samples) {
  const int d = static_cast<int>(samples.cols());
  const Eigen::Index n_par = d * (d + 1) / 2;
  if (samples.rows() < n_par)
    throw DegenerateError("ellipsoid fit needs at least d(d+1)/2 samples");
  detail::require_full_rank(samples, d);
  MatX design(samples.rows(), n_par);
  for (Eigen::Index r = 0; r < samples.rows(); ++r)
    for (int i = 0; i < d; ++i)
      for (int j = i; j < d; ++j)
        design(r, pair_index(i, j, d)) = (i == j ? 1.0 : 2.0) * samples(r, i) * samples(r, j);
  const VecX x = design.colPivHouseholderQr().solve(VecX::Ones(samples.rows()));
  MatX A(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) A(i, j) = A(j, i) = x[pair_index(i, j, d)];
  FitReport rep;
  Eigen::SelfAdjointEigenSolver<MatX> es(A);
  if (es.eigenvalues().minCoeff() <= kEllipsoidPdFloor) {
    const VecX ev = es.eigenvalues().cwiseMax(kEllipsoidPdFloor);
    A = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();
    A = 0.5 * (A + A.transpose()).eval();
    rep.projected = true;
  }
  EllipsoidModel model{A};
  rep.samples = static_cast<std::size_t>(samples.rows());
  rep.fit_error = fitting_error(model, samples);
  return {model, rep};
}

// ---------------------------------------------------------------------------
// SOS-convexity matrices

struct SosMatrices {
  int dim = 6;
  Eigen::SparseMatrix<double> V1;  // rows: (w-pair, z-pair); cols: vec(M) column-major
  Eigen::SparseMatrix<double> V2;  // rows: same; cols: quartic coefficients
};

inline SosMatrices build_sos_matrices(int dim = 6) {
  if (dim < 1) throw DomainError("dimension must be positive");
  const int pairs = dim * (dim + 1) / 2;
  const int rows = pairs * pairs;
  const int D = dim * dim;
  SosMatrices out;
  out.dim = dim;

  std::vector<Eigen::Triplet<double>> t1;
  t1.reserve(D * D);
  for (int q = 0; q < D; ++q)
    for (int p = 0; p < D; ++p) {
      const int i = p / dim, a = p % dim;
      const int j = q / dim, b = q % dim;
      t1.emplace_back(pair_index(i, j, dim) * pairs + pair_index(a, b, dim), q * D + p, 1.0);
    }
  out.V1.resize(rows, D * D);
  out.V1.setFromTriplets(t1.begin(), t1.end());

  const auto basis = QuarticBasis::get(dim);
  std::vector<Eigen::Triplet<double>> t2;
  for (std::size_t k = 0; k < basis->size(); ++k) {
    const auto& e = basis->exponents[k];
    for (int a = 0; a < dim; ++a)
      for (int b = a; b < dim; ++b) {
        Exponents r = e;
        int c = r[a];
        r[a] -= 1;
        if (c == 0) continue;
        c *= r[b];
        r[b] -= 1;
        if (c == 0) continue;
        int wi = -1, wj = -1;
        for (int j = 0; j < dim; ++j)
          for (int m = 0; m < r[j]; ++m) (wi < 0 ? wi : wj) = j;
        const int coef = (a == b) ? c : 2 * c;
        t2.emplace_back(pair_index(wi, wj, dim) * pairs + pair_index(a, b, dim),
                        static_cast<int>(k), static_cast<double>(coef));
      }
  }
  out.V2.resize(rows, static_cast<Eigen::Index>(basis->size()));
  out.V2.setFromTriplets(t2.begin(), t2.end());
  return out;
}

inline const SosMatrices& sos_matrices(int dim) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<SosMatrices>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[dim];
  if (!slot) slot = std::make_unique<SosMatrices>(build_sos_matrices(dim));
  return *slot;
}

inline Eigen::Map<const VecX> vec_view(const MatX& m) { return {m.data(), m.size()}; }

/// max |V1 vec(M) - V2 a|.
inline double certificate_residual(const QuarticModel& q) {
  const auto& sos = sos_matrices(q.dim());
  const VecX r = sos.V1 * vec_view(q.certificate) - sos.V2 * q.coefficients;
  return r.cwiseAbs().maxCoeff();
}

inline MatX project_psd(const MatX& m, double floor = 0.0) {
  Eigen::SelfAdjointEigenSolver<MatX> es(0.5 * (m + m.transpose()));
  const VecX ev = es.eigenvalues().cwiseMax(floor);
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();
}

// ---------------------------------------------------------------------------
// Quartic

struct QuarticFitOptions {
  int max_iterations = 2000;
  double constraint_tolerance = 1e-8;  // stop once max |V1 vec(Z) - V2 a| is below
  double step_tolerance = 1e-9;        // and the PSD iterate has stopped moving
  double ridge = 0.0;                  // optional Tikhonov weight on a
  double certificate_tolerance = 1e-6; // failure threshold after max_iterations
  double repair_limit = 1e-4;          // largest pre-repair residual accepted
  double rho_scale = 1e-2;             // initial penalty relative to mean diag of the LS Hessian
  double relaxation = 1.0;             // over-relaxation of the (a, M) step
  bool adapt_rho = true;
};

/// Coefficients of (sum_j w_j^2)^2 and a PD Gram matrix of its Hessian form,
/// 4 I + 8 c c' with c selecting the (i, i) entries of w (x) z.
inline std::pair<VecX, MatX> squared_norm_quartic(int dim) {
  const auto basis = QuarticBasis::get(dim);
  VecX a = VecX::Zero(static_cast<Eigen::Index>(basis->size()));
  for (std::size_t k = 0; k < basis->size(); ++k) {
    int twos = 0, fours = 0, other = 0;
    for (int e : basis->exponents[k]) {
      if (e == 2) ++twos;
      else if (e == 4) ++fours;
      else if (e != 0) ++other;
    }
    if (other == 0 && fours == 1) a[k] = 1.0;
    if (other == 0 && twos == 2) a[k] = 2.0;
  }
  const int D = dim * dim;
  VecX c = VecX::Zero(D);
  for (int i = 0; i < dim; ++i) c[i * dim + i] = 1.0;
  MatX M = 4.0 * MatX::Identity(D, D) + 8.0 * c * c.transpose();
  return {a, M};
}

/// Alternating scheme (ADMM) for
///
///   min_a sum (f2(w_i) - 1)^2   s.t.  V1 vec(M) = V2 a,  M PSD.
///
/// Each iteration solves the equality-constrained least-squares problem in
/// (a, M) with M pulled toward the current PSD iterate Z, then projects
/// M + U onto the PSD cone. V1 V1' is diagonal, so the (a, M) step reduces
/// to one Cholesky-factored L x L solve.
inline std::pair<QuarticModel, FitReport> fit_quartic(const MatX& samples,
                                                      const QuarticFitOptions& opt = {}) {
  const int d = static_cast<int>(samples.cols());
  const auto basis = QuarticBasis::get(d);
  const auto L = static_cast<Eigen::Index>(basis->size());
  if (samples.rows() < L) throw DegenerateError("quartic fit needs at least as many samples as terms");
  detail::require_full_rank(samples, d);
  const auto& sos = sos_matrices(d);
  const int D = d * d;

  MatX phi(samples.rows(), L);
  for (Eigen::Index r = 0; r < samples.rows(); ++r)
    phi.row(r) = basis->monomials(samples.row(r).transpose()).transpose();
  const MatX G = 2.0 * phi.transpose() * phi + 2.0 * opt.ridge * MatX::Identity(L, L);
  const VecX g = 2.0 * phi.transpose() * VecX::Ones(samples.rows());

  // K = diag(V1 V1')
  VecX kdiag = VecX::Zero(sos.V1.rows());
  for (int c = 0; c < sos.V1.outerSize(); ++c)
    for (Eigen::SparseMatrix<double>::InnerIterator it(sos.V1, c); it; ++it)
      kdiag[it.row()] += it.value() * it.value();
  const VecX kinv = kdiag.cwiseInverse();
  const MatX V2d = MatX(sos.V2);
  const MatX V2tKinv = V2d.transpose() * kinv.asDiagonal();
  const MatX V2tKinvV2 = V2tKinv * V2d;

  double rho = std::max(1.0, G.trace() / static_cast<double>(L)) * opt.rho_scale;
  Eigen::LLT<MatX> llt(G + rho * V2tKinvV2);

  MatX Z = MatX::Zero(D, D), U = MatX::Zero(D, D), M(D, D);
  VecX a = VecX::Zero(L);
  FitReport rep;
  rep.samples = static_cast<std::size_t>(samples.rows());
  double residual = std::numeric_limits<double>::infinity();
  int it = 0;
  for (; it < opt.max_iterations; ++it) {
    const MatX C = Z - U;
    const VecX v1c = sos.V1 * vec_view(C);
    a = llt.solve(g + rho * (V2tKinv * v1c));
    const VecX lambda = rho * kinv.cwiseProduct(v1c - V2d * a);
    const VecX adj = sos.V1.transpose() * lambda;
    M = C - Eigen::Map<const MatX>(adj.data(), D, D) / rho;

    const MatX z_prev = Z;
    const MatX Mr = opt.relaxation * M + (1.0 - opt.relaxation) * z_prev;
    Z = project_psd(Mr + U);
    U += Mr - Z;

    residual = (sos.V1 * vec_view(Z) - V2d * a).cwiseAbs().maxCoeff();
    const double step = (Z - z_prev).cwiseAbs().maxCoeff();
    rep.residual_history.push_back(residual);
    if (residual < opt.constraint_tolerance && step < opt.step_tolerance) {
      ++it;
      break;
    }
    // Residual balancing: keep primal and dual residuals within 10x.
    if (opt.adapt_rho && it % 50 == 49) {
      const double primal = (M - Z).norm();
      const double dual = rho * (Z - z_prev).norm();
      double factor = 1.0;
      if (primal > 10 * dual) factor = 2.0;
      else if (dual > 10 * primal) factor = 0.5;
      if (factor != 1.0) {
        rho *= factor;
        U /= factor;
        llt.compute(G + rho * V2tKinvV2);
      }
    }
  }
  rep.iterations = it;
  if (!(residual <= opt.repair_limit))
    throw NumericalError("quartic fit did not converge (certificate residual " +
                             std::to_string(residual) + ")",
                         residual);

  // Make the pair exactly consistent: move Z onto the coupling constraint by
  // the minimum-norm correction, then add just enough of the squared-norm
  // quartic (whose certificate is >= 4 I) to restore positive semidefiniteness.
  const VecX gap = V2d * a - sos.V1 * vec_view(Z);
  const VecX corr = sos.V1.transpose() * kinv.cwiseProduct(gap);
  MatX Mc = Z + Eigen::Map<const MatX>(corr.data(), D, D);
  Mc = 0.5 * (Mc + Mc.transpose()).eval();
  const double lo = Eigen::SelfAdjointEigenSolver<MatX>(Mc, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
  if (lo < 0) {
    const auto [a_sq, m_sq] = squared_norm_quartic(d);
    const double eps = -lo / 4.0 * (1.0 + 1e-6);
    a += eps * a_sq;
    Mc += eps * m_sq;
  }
  QuarticModel model{a, Mc, basis};
  rep.certificate_residual = certificate_residual(model);
  rep.certificate_min_eigenvalue =
      Eigen::SelfAdjointEigenSolver<MatX>(Mc, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
  if (rep.certificate_residual > opt.certificate_tolerance || rep.certificate_min_eigenvalue < -1e-8)
    throw NumericalError("quartic certificate check failed (residual " +
                             std::to_string(rep.certificate_residual) + ")",
                         rep.certificate_residual);
  rep.fit_error = fitting_error(model, samples);
  return {model, rep};
}

/// Number of principal components whose variance share exceeds the threshold.
inline int pca_significant_components(const MatX& samples, double variance_threshold = 0.01) {
  if (samples.rows() < samples.cols()) throw DomainError("PCA needs at least as many samples as dimensions");
  const VecX mean = samples.colwise().mean().transpose();
  const MatX centered = samples.rowwise() - mean.transpose();
  const MatX cov = centered.transpose() * centered / static_cast<double>(samples.rows() - 1);
  const VecX ev = Eigen::SelfAdjointEigenSolver<MatX>(cov, Eigen::EigenvaluesOnly).eigenvalues();
  const double total = ev.sum();
  if (!(total > 0)) return 0;
  int count = 0;
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (ev[i] / total > variance_threshold) ++count;
  return count;
}

}  // namespace sixdls

#endif  // SIXDLS_LIMIT_SURFACE_HPP_
