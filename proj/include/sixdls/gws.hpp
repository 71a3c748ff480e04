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

// Grasp wrench space: the convex hull of the Minkowski sum of per-contact
// wrench sets, and the resistance test for an external wrench.

#ifndef SIXDLS_GWS_HPP_
#define SIXDLS_GWS_HPP_

#include <cmath>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sixdls/convex_hull.hpp"
#include "sixdls/core.hpp"
#include "sixdls/linearize.hpp"
#include "sixdls/lp.hpp"
#include "sixdls/wrench.hpp"

namespace sixdls {

/// Pose of a contact in the object frame plus its force scale.
struct ContactPlacement {
  enum class ForceMode { Integral, Sensor };
  Mat3 R = Mat3::Identity();
  Vec3 t = Vec3::Zero();
  ForceMode mode = ForceMode::Integral;
  double force = 1.0;         // Integral: total normal force F
  double sensor_force = 0.0;  // Sensor: measured grip force F_s

  void validate() const {
    if ((R.transpose() * R - Mat3::Identity()).cwiseAbs().maxCoeff() > 1e-10 ||
        std::abs(R.determinant() - 1.0) > 1e-10)
      throw DomainError("placement rotation is not a proper rotation");
    if (!t.allFinite()) throw DomainError("placement translation is not finite");
    if (mode == ForceMode::Integral && !(force >= 0 && std::isfinite(force)))
      throw DomainError("contact force must be nonnegative");
    if (mode == ForceMode::Sensor && !(sensor_force >= 0 && std::isfinite(sensor_force)))
      throw DomainError("sensor force must be nonnegative");
  }
};

/// [R 0; [t]x R R] applied to a wrench about the contact reference point.
inline Wrench6 transform_wrench(const Mat3& R, const Vec3& t, const Wrench6& w) {
  Wrench6 out;
  const Vec3 f = R * w.head<3>();
  out.head<3>() = f;
  out.tail<3>() = t.cross(f) + R * w.tail<3>();
  return out;
}

/// Scale applied to unit-force constraints: F, or F_s / |f_x| of the unit
/// normal wrench rotated into the object frame.
inline double placement_scale(const ContactPlacement& pl, const Wrench6& unit_normal_wrench) {
  if (pl.mode == ContactPlacement::ForceMode::Integral) return pl.force;
  const double fx = std::abs((pl.R * unit_normal_wrench.head<3>())[0]);
  if (!(fx > 1e-12)) throw DegenerateError("normal force has no component along the object x-axis");
  return pl.sensor_force / fx;
}

/// Object-frame wrench constraints c = Ad (s + w_perp) * scale for every
/// vertex s of a denormalized unit-force constraint set.
inline std::vector<Wrench6> contact_constraints(const ConstraintSet& set, const Wrench6& normal,
                                                const ContactPlacement& placement) {
  if (set.normalized) throw StateError("constraint set must be denormalized");
  placement.validate();
  const double scale = placement_scale(placement, normal);
  std::vector<Wrench6> out;
  out.reserve(set.size());
  for (const auto& s : set.vertices) out.push_back(transform_wrench(placement.R, placement.t, s + normal) * scale);
  return out;
}

struct GraspWrenchSpace {
  std::vector<std::vector<Wrench6>> contacts;

  std::size_t contact_count() const { return contacts.size(); }

  /// Sum over contacts of the mean generator; interior when W is full-dimensional.
  Wrench6 centroid() const {
    Wrench6 g = Wrench6::Zero();
    for (const auto& c : contacts) {
      Wrench6 m = Wrench6::Zero();
      for (const auto& w : c) m += w;
      g += m / static_cast<double>(c.size());
    }
    return g;
  }

  /// Largest |component| among all generators, used for tolerances.
  double scale() const {
    double s = 0;
    for (const auto& c : contacts)
      for (const auto& w : c) s = std::max(s, w.cwiseAbs().maxCoeff());
    return s;
  }

  /// Explicit hull of the Minkowski sum, built on first use. Each partial
  /// sum is reduced to its hull vertices before the next contact is added.
  const ConvexHull& hull(const HullOptions& opt = {}) const {
    if (!hull_) {
      if (contacts.empty()) throw DomainError("grasp has no contacts");
      MatX acc;
      for (std::size_t n = 0; n < contacts.size(); ++n) {
        const auto& c = contacts[n];
        MatX next;
        if (n == 0) {
          next.resize(static_cast<Eigen::Index>(c.size()), 6);
          for (std::size_t i = 0; i < c.size(); ++i) next.row(static_cast<Eigen::Index>(i)) = c[i].transpose();
        } else {
          const Eigen::Index rows = acc.rows() * static_cast<Eigen::Index>(c.size());
          if (rows > static_cast<Eigen::Index>(opt.max_points))
            throw DomainError("Minkowski sum has too many candidate points (" + std::to_string(rows) + ")");
          next.resize(rows, 6);
          Eigen::Index r = 0;
          for (Eigen::Index i = 0; i < acc.rows(); ++i)
            for (const auto& w : c) next.row(r++) = acc.row(i) + w.transpose();
        }
        if (n + 1 == contacts.size()) {
          hull_ = std::make_shared<ConvexHull>(next, opt);
        } else {
          ConvexHull partial(next, opt);
          const auto idx = partial.vertex_indices();
          acc.resize(static_cast<Eigen::Index>(idx.size()), 6);
          for (std::size_t i = 0; i < idx.size(); ++i) acc.row(static_cast<Eigen::Index>(i)) = next.row(idx[i]);
        }
      }
    }
    return *hull_;
  }

  bool has_hull() const { return static_cast<bool>(hull_); }

 private:
  mutable std::shared_ptr<ConvexHull> hull_;
};

inline GraspWrenchSpace build_gws(std::vector<std::vector<Wrench6>> contacts) {
  if (contacts.empty()) throw DomainError("grasp needs at least one contact");
  for (const auto& c : contacts)
    if (c.empty()) throw DomainError("contact has no constraints");
  GraspWrenchSpace g;
  g.contacts = std::move(contacts);
  return g;
}

enum class PredictMode { LP, Facet };

struct PredictionResult {
  int y = 0;
  double margin = 0.0;  // 1 - 1/t*, t* = largest ray scale from the centroid toward -w_ext staying in W
  std::string mode = "lp";
  bool fallback = false;  // facet mode requested but the hull was degenerate
  double ray_scale = 0.0;
};

constexpr double kBoundaryTolerance = 1e-9;

namespace detail {
inline PredictionResult finish_prediction(double t_star, const char* mode) {
  PredictionResult r;
  r.mode = mode;
  r.ray_scale = t_star;
  if (std::isinf(t_star)) r.margin = 1.0;
  else if (t_star > 0) r.margin = 1.0 - 1.0 / t_star;
  else r.margin = -std::numeric_limits<double>::infinity();
  if (std::abs(r.margin) <= kBoundaryTolerance) r.margin = 0.0;
  r.y = r.margin > 0 ? 1 : 0;
  return r;
}
}  // namespace detail

/// Largest t >= 0 with g + t (q - g) in W, by linear programming over the
/// convex weights of each contact's generators.
inline double max_ray_scale_lp(const GraspWrenchSpace& gws, const Wrench6& q) {
  const Wrench6 g = gws.centroid();
  const Wrench6 dir = q - g;
  if (dir.cwiseAbs().maxCoeff() <= 1e-14 * std::max(1.0, gws.scale()))
    return std::numeric_limits<double>::infinity();
  std::size_t cols = 1;
  for (const auto& c : gws.contacts) cols += c.size();
  const auto N = static_cast<Eigen::Index>(gws.contacts.size());
  MatX A = MatX::Zero(6 + N, static_cast<Eigen::Index>(cols));
  VecX b = VecX::Zero(6 + N);
  VecX cost = VecX::Zero(static_cast<Eigen::Index>(cols));
  Eigen::Index col = 0;
  for (Eigen::Index n = 0; n < N; ++n) {
    for (const auto& w : gws.contacts[n]) {
      A.block(0, col, 6, 1) = w;
      A(6 + n, col) = 1.0;
      ++col;
    }
    b[6 + n] = 1.0;
  }
  A.block(0, col, 6, 1) = -dir;
  b.head<6>() = g;
  cost[col] = 1.0;
  const auto res = solve_lp(A, b, cost);
  if (res.status == LpResult::Status::Unbounded) return std::numeric_limits<double>::infinity();
  if (res.status != LpResult::Status::Optimal)
    throw NumericalError(std::string("membership LP failed (") +
                             (res.status == LpResult::Status::Infeasible ? "infeasible" : "iteration limit") + ")",
                         0.0);
  return res.x[col];
}

inline double max_ray_scale_facets(const ConvexHull& hull, const Wrench6& g, const Wrench6& q) {
  const VecX dir = q - g;
  double t = std::numeric_limits<double>::infinity();
  for (const HullFacet* f : hull.facets()) {
    const double rate = f->normal.dot(dir);
    if (rate <= 0) continue;
    t = std::min(t, (f->offset - f->normal.dot(g)) / rate);
  }
  return std::max(0.0, t);
}

/// Resistance test: y = 1 iff -w_ext lies strictly inside W.
inline PredictionResult predict(const GraspWrenchSpace& gws, const Wrench6& w_ext,
                                PredictMode mode = PredictMode::LP, const HullOptions& opt = {}) {
  if (!w_ext.allFinite()) throw DomainError("external wrench is not finite");
  const Wrench6 q = -w_ext;
  if (mode == PredictMode::Facet) {
    try {
      const auto& h = gws.hull(opt);
      return detail::finish_prediction(max_ray_scale_facets(h, gws.centroid(), q), "facet");
    } catch (const DegenerateError&) {
      auto r = detail::finish_prediction(max_ray_scale_lp(gws, q), "lp");
      r.fallback = true;
      return r;
    }
  }
  return detail::finish_prediction(max_ray_scale_lp(gws, q), "lp");
}

/// Non-strict membership of an arbitrary wrench in W (LP), with relative tolerance.
inline bool gws_contains(const GraspWrenchSpace& gws, const Wrench6& w, double tol = 1e-9) {
  return max_ray_scale_lp(gws, w) >= 1.0 - tol;
}

}  // namespace sixdls

#endif  // SIXDLS_GWS_HPP_
