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

// Vertex linearization of a limit surface: rays through points on the
// boundary of [-1, 1]^d are intersected with f(w) = 1, then scaled back to
// physical units with the per-dimension maxima.

#ifndef SIXDLS_LINEARIZE_HPP_
#define SIXDLS_LINEARIZE_HPP_

#include <cmath>
#include <string>
#include <vector>

#include "sixdls/core.hpp"
#include "sixdls/limit_surface.hpp"
#include "sixdls/wrench.hpp"

namespace sixdls {

/// Number of boundary points of a g^d grid on [-1, 1]^d.
inline std::size_t hypercube_point_count(int g, int dim) {
  auto ipow = [](std::size_t b, int e) {
    std::size_t r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
  };
  return ipow(static_cast<std::size_t>(g), dim) - ipow(static_cast<std::size_t>(g - 2), dim);
}

/// Achievable vertex counts (odd grids 3, 5, ..., up to `max_grid`).
inline std::vector<std::size_t> achievable_vertex_counts(int dim, int max_grid = 9) {
  std::vector<std::size_t> out;
  for (int g = 3; g <= max_grid; g += 2) out.push_back(hypercube_point_count(g, dim));
  return out;
}

/// Points of the regular g-per-axis grid that lie on the cube boundary
/// (||x||_inf = 1), for the odd g with g^d - (g-2)^d == count. Odd grids
/// contain the face centers +/-e_j.
inline std::vector<VecX> sample_hypercube_surface(std::size_t count, int dim = 6) {
  if (dim < 1) throw DomainError("dimension must be positive");
  int grid = -1;
  for (int g = 3; hypercube_point_count(g, dim) <= count; g += 2) {
    if (hypercube_point_count(g, dim) == count) {
      grid = g;
      break;
    }
  }
  if (grid < 0) {
    std::string msg = "vertex count " + std::to_string(count) + " is not achievable in " +
                      std::to_string(dim) + "D; use one of";
    for (auto c : achievable_vertex_counts(dim, 7)) msg += " " + std::to_string(c);
    throw DomainError(msg);
  }
  std::vector<VecX> out;
  out.reserve(count);
  std::vector<int> idx(dim, 0);
  const double step = 2.0 / (grid - 1);
  while (true) {
    bool boundary = false;
    for (int j = 0; j < dim; ++j) boundary |= (idx[j] == 0 || idx[j] == grid - 1);
    if (boundary) {
      VecX p(dim);
      for (int j = 0; j < dim; ++j) {
        // exact 0 and +/-1 at the center and ends
        p[j] = (2 * idx[j] == grid - 1) ? 0.0 : -1.0 + step * idx[j];
        if (idx[j] == grid - 1) p[j] = 1.0;
      }
      out.push_back(std::move(p));
    }
    int j = dim - 1;
    while (j >= 0 && ++idx[j] == grid) idx[j--] = 0;
    if (j < 0) break;
  }
  return out;
}

struct RayIntersection {
  VecX point;
  double gamma = 1.0;
  int iterations = 0;
};

/// Solves f(gamma s) = 1 for gamma > 0 by Newton's method from gamma = 1.
inline RayIntersection ray_intersect_ls(const LimitSurfaceModel& model, const VecX& direction,
                                        double tolerance = 1e-12, int max_iterations = 100) {
  if (!(direction.norm() > 0)) throw DomainError("ray direction must be nonzero");
  double gamma = 1.0;
  for (int it = 0; it < max_iterations; ++it) {
    const VecX p = gamma * direction;
    const double g = eval_ls(model, p) - 1.0;
    if (std::abs(g) <= tolerance) return {p, gamma, it};
    const double slope = ls_gradient(model, p).dot(direction);
    if (!(slope > 0) || !std::isfinite(slope))
      throw NumericalError("ray does not cross the limit surface", std::abs(g));
    double next = gamma - g / slope;
    if (!(next > 0)) next = 0.5 * gamma;
    gamma = next;
  }
  const double res = std::abs(eval_ls(model, gamma * direction) - 1.0);
  throw NumericalError("ray intersection did not converge", res);
}

/// Vertex set of one contact. Vertices are always stored as 6-vectors; a
/// 3D model fills only `components` and leaves the rest zero.
struct ConstraintSet {
  std::vector<Wrench6> vertices;
  bool normalized = true;
  Wrench6 w_max = Wrench6::Ones();
  std::vector<int> components{0, 1, 2, 3, 4, 5};

  std::size_t size() const { return vertices.size(); }
};

inline VecX restrict_to(const Wrench6& w, const std::vector<int>& components) {
  VecX out(static_cast<Eigen::Index>(components.size()));
  for (std::size_t j = 0; j < components.size(); ++j) out[static_cast<Eigen::Index>(j)] = w[components[j]];
  return out;
}

/// Intersects every hypercube ray with the model; `components` places a
/// lower-dimensional model in the 6D layout.
inline ConstraintSet linearize(const LimitSurfaceModel& model, std::size_t count,
                               std::vector<int> components = {}) {
  const int d = model_dim(model);
  if (components.empty())
    for (int j = 0; j < d; ++j) components.push_back(j);
  if (static_cast<int>(components.size()) != d)
    throw DomainError("component list does not match model dimension");
  const auto dirs = sample_hypercube_surface(count, d);
  ConstraintSet out;
  out.components = components;
  out.vertices.resize(dirs.size());
  parallel_for(dirs.size(), [&](std::size_t i) {
    const auto hit = ray_intersect_ls(model, dirs[i]);
    Wrench6 v = Wrench6::Zero();
    for (int j = 0; j < d; ++j) v[components[j]] = hit.point[j];
    out.vertices[i] = v;
  });
  return out;
}

/// Largest |f(s) - 1| over the vertices of a normalized set.
inline double max_surface_deviation(const LimitSurfaceModel& model, const ConstraintSet& set) {
  if (!set.normalized) throw StateError("constraint set is not normalized");
  double worst = 0.0;
  for (const auto& v : set.vertices)
    worst = std::max(worst, std::abs(eval_ls(model, restrict_to(v, set.components)) - 1.0));
  return worst;
}

/// Componentwise product of every vertex with w_max.
inline ConstraintSet denormalize(const ConstraintSet& set, const Wrench6& w_max) {
  if (!set.normalized) throw StateError("constraint set is already denormalized");
  if (!(w_max.array() >= 0).all()) throw DomainError("w_max must be nonnegative");
  ConstraintSet out = set;
  for (auto& v : out.vertices) v = v.cwiseProduct(w_max);
  out.normalized = false;
  out.w_max = w_max;
  return out;
}

}  // namespace sixdls

#endif  // SIXDLS_LINEARIZE_HPP_
