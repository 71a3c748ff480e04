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

#ifndef SIXDLS_WRENCH_HPP_
#define SIXDLS_WRENCH_HPP_

#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "sixdls/core.hpp"
#include "sixdls/geometry.hpp"
#include "sixdls/kinematics.hpp"

namespace sixdls {

/// [f; tau] in N and N m.
using Wrench6 = Vec6;

/// Coulomb frictional wrench about `center` for the given twist. Samples
/// whose velocity is parallel to the normal contribute nothing.
inline Wrench6 frictional_wrench(const SurfaceSamples& samples, const Vec3& center, double mu,
                                 const UnitTwist& twist) {
  Vec3 f = Vec3::Zero(), tau = Vec3::Zero();
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double w = samples.weights[i];
    if (w == 0.0) continue;
    const Vec3& x = samples.points[i];
    const Vec3& n = samples.normals[i];
    const Vec3 v = velocity_at_point(twist, x);
    const Vec3 proj = v - n * n.dot(v);
    const double len = proj.norm();
    if (!(len > 1e-12 * std::max(1.0, v.norm()))) continue;
    const Vec3 dir = proj / len;
    f -= w * dir;
    tau -= w * (x - center).cross(dir);
  }
  Wrench6 out;
  out << mu * f, mu * tau;
  return out;
}

inline Wrench6 frictional_wrench_parametric(const ContactProfile& profile, const UnitTwist& twist,
                                            int order = default_quadrature_order()) {
  if (profile.is_mesh()) throw DomainError("profile surface is a mesh; use the discrete form");
  profile.validate();
  const SurfaceSamples s = discretize(profile, order);
  return frictional_wrench(s, pressure_center(s), profile.mu, twist);
}

inline Wrench6 frictional_wrench_discrete(const ContactProfile& profile, const UnitTwist& twist) {
  if (!profile.is_mesh()) throw DomainError("profile surface is parametric; use the integral form");
  profile.validate();
  const SurfaceSamples s = discretize(profile);
  return frictional_wrench(s, pressure_center(s), profile.mu, twist);
}

/// Either form, selected by surface type.
inline Wrench6 frictional_wrench(const ContactProfile& profile, const UnitTwist& twist,
                                 int order = default_quadrature_order()) {
  return profile.is_mesh() ? frictional_wrench_discrete(profile, twist)
                           : frictional_wrench_parametric(profile, twist, order);
}

/// Wrench impressed by the pressure alone, about `center`.
inline Wrench6 normal_wrench(const SurfaceSamples& samples, const Vec3& center) {
  Vec3 f = Vec3::Zero(), tau = Vec3::Zero();
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double w = samples.weights[i];
    f -= w * samples.normals[i];
    tau -= w * (samples.points[i] - center).cross(samples.normals[i]);
  }
  Wrench6 out;
  out << f, tau;
  return out;
}

inline Wrench6 normal_wrench(const ContactProfile& profile, int order = default_quadrature_order()) {
  profile.validate();
  const SurfaceSamples s = discretize(profile, order);
  if (!(s.total_weight() > 0)) throw DegenerateError("total contact pressure is zero");
  return normal_wrench(s, pressure_center(s));
}

// ---------------------------------------------------------------------------
// Sample sets

struct WrenchSampleSet {
  std::vector<UnitTwist> twists;
  std::vector<Wrench6> samples;
  Wrench6 w_max = Wrench6::Zero();
  std::vector<Wrench6> normalized;
};

/// Per-dimension maximum magnitude.
inline Wrench6 max_magnitudes(const std::vector<Wrench6>& samples) {
  Wrench6 m = Wrench6::Zero();
  for (const auto& w : samples) m = m.cwiseMax(w.cwiseAbs());
  return m;
}

inline std::vector<Wrench6> compute_wrenches(const SurfaceSamples& s, const Vec3& center, double mu,
                                             const std::vector<UnitTwist>& twists) {
  std::vector<Wrench6> out(twists.size());
  parallel_for(twists.size(), [&](std::size_t i) { out[i] = frictional_wrench(s, center, mu, twists[i]); });
  return out;
}

/// Frictional wrenches for all twists, their per-dimension maxima and the
/// normalized samples w_i ./ w_max. Every component in `required` must have
/// nonzero extent; other zero-extent components normalize to zero.
inline WrenchSampleSet sample_wrench_set(const ContactProfile& profile,
                                         const std::vector<UnitTwist>& twists,
                                         int order = default_quadrature_order(),
                                         const std::vector<int>& required = {0, 1, 2, 3, 4, 5}) {
  if (twists.size() < 12) throw DomainError("at least 12 twists are required");
  profile.validate();
  const SurfaceSamples s = discretize(profile, order);
  const Vec3 o = pressure_center(s);
  WrenchSampleSet set;
  set.twists = twists;
  set.samples = compute_wrenches(s, o, profile.mu, twists);
  set.w_max = max_magnitudes(set.samples);
  for (int k : required)
    if (!(set.w_max[k] > 0))
      throw DegenerateError("wrench samples have zero extent in dimension " + std::to_string(k));
  set.normalized.reserve(set.samples.size());
  for (const auto& w : set.samples) {
    Wrench6 n = Wrench6::Zero();
    for (int k = 0; k < 6; ++k)
      if (set.w_max[k] > 0) n[k] = w[k] / set.w_max[k];
    set.normalized.push_back(n);
  }
  return set;
}

/// Normalizes arbitrary samples with a fixed w_max (e.g. evaluation sets).
inline std::vector<Wrench6> normalize_with(const std::vector<Wrench6>& samples, const Wrench6& w_max) {
  std::vector<Wrench6> out;
  out.reserve(samples.size());
  for (const auto& w : samples) out.push_back(w.cwiseQuotient(w_max));
  return out;
}

/// Indices kept by a 3D reduction with plane normal `normal_axis`: the two
/// in-plane force components and the torque about the normal.
inline std::array<int, 3> planar_components(int normal_axis) {
  if (normal_axis < 0 || normal_axis > 2) throw DomainError("axis must be 0, 1 or 2");
  std::array<int, 3> c{};
  int j = 0;
  for (int a = 0; a < 3; ++a)
    if (a != normal_axis) c[j++] = a;
  c[2] = 3 + normal_axis;
  return c;
}

/// Rows of the selected components, one row per sample.
inline MatX component_matrix(const std::vector<Wrench6>& samples, const std::vector<int>& components) {
  MatX out(samples.size(), components.size());
  for (std::size_t i = 0; i < samples.size(); ++i)
    for (std::size_t j = 0; j < components.size(); ++j) out(i, j) = samples[i][components[j]];
  return out;
}

inline MatX component_matrix(const std::vector<Wrench6>& samples) {
  return component_matrix(samples, {0, 1, 2, 3, 4, 5});
}

/// w_max restricted to the given components, zero elsewhere.
inline Wrench6 masked(const Wrench6& w, const std::array<int, 3>& components) {
  Wrench6 out = Wrench6::Zero();
  for (int c : components) out[c] = w[c];
  return out;
}

// ---------------------------------------------------------------------------
// Planar baseline

/// Contact flattened onto the coordinate plane orthogonal to `normal_axis`,
/// carrying uniform pressure over the projected area with the same total
/// normal force as the source profile. Points keep 3D coordinates with the
/// normal coordinate set to zero.
struct PlanarContact {
  int normal_axis = 1;
  std::vector<Vec3> points;
  std::vector<double> weights;
  Vec3 center = Vec3::Zero();
  double mu = 1.0;
  double area = 0.0;
};

inline PlanarContact project_to_plane(const ContactProfile& profile, int normal_axis,
                                      int order = default_quadrature_order()) {
  if (normal_axis < 0 || normal_axis > 2) throw DomainError("axis must be 0, 1 or 2");
  profile.validate();
  const SurfaceSamples s = discretize(profile, order);
  const double force = s.total_weight();
  if (!(force > 0)) throw DegenerateError("total contact pressure is zero");
  PlanarContact pc;
  pc.normal_axis = normal_axis;
  pc.mu = profile.mu;
  std::vector<double> proj_area(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) proj_area[i] = std::abs(s.normals[i][normal_axis]) * s.areas[i];
  pc.area = SurfaceSamples::pairwise_sum(proj_area.data(), proj_area.size());
  if (!(pc.area > 0)) throw DegenerateError("projected contact area is zero");
  pc.points.reserve(s.size());
  pc.weights.reserve(s.size());
  Vec3 c = Vec3::Zero();
  for (std::size_t i = 0; i < s.size(); ++i) {
    Vec3 p = s.points[i];
    p[normal_axis] = 0.0;
    pc.points.push_back(p);
    pc.weights.push_back(force * proj_area[i] / pc.area);
    c += pc.weights.back() * p;
  }
  pc.center = c / force;
  return pc;
}

/// In-plane motion: translation along a plane direction, or rotation with
/// unit angular speed (sign `omega`) about a center of rotation.
struct PlanarTwist {
  bool rotational = false;
  Vec3 direction = Vec3::UnitX();  // translation direction (in plane)
  Vec3 cor = Vec3::Zero();         // center of rotation (in plane)
  double omega = 1.0;
};

/// (f_a, f_b, tau_n) where a < b are the in-plane axes and n the normal.
inline Vec3 planar_wrench_baseline(const PlanarContact& pc, const PlanarTwist& twist) {
  const Vec3 axis = Vec3::Unit(pc.normal_axis);
  Vec3 f = Vec3::Zero(), tau = Vec3::Zero();
  for (std::size_t i = 0; i < pc.points.size(); ++i) {
    const Vec3& x = pc.points[i];
    Vec3 v = twist.rotational ? Vec3(twist.omega * axis.cross(x - twist.cor)) : twist.direction;
    v[pc.normal_axis] = 0.0;
    const double len = v.norm();
    if (!(len > 1e-14)) continue;
    const Vec3 dir = v / len;
    f -= pc.weights[i] * dir;
    tau -= pc.weights[i] * (x - pc.center).cross(dir);
  }
  f *= pc.mu;
  tau *= pc.mu;
  const auto comp = planar_components(pc.normal_axis);
  return {f[comp[0]], f[comp[1]], tau[pc.normal_axis]};
}

inline Vec3 planar_wrench_baseline(const ContactProfile& profile, int normal_axis,
                                   const PlanarTwist& twist, int order = default_quadrature_order()) {
  return planar_wrench_baseline(project_to_plane(profile, normal_axis, order), twist);
}

/// Places a planar (f_a, f_b, tau_n) triple in 6D wrench layout.
inline Wrench6 embed_planar(const Vec3& w3, int normal_axis) {
  const auto comp = planar_components(normal_axis);
  Wrench6 out = Wrench6::Zero();
  for (int j = 0; j < 3; ++j) out[comp[j]] = w3[j];
  return out;
}

/// Axis seeds (+/- translations along both plane axes, +/- rotation about
/// the center) followed by evenly spaced translations and rotations about
/// CORs drawn uniformly in a disk around the pressure center.
inline std::vector<PlanarTwist> sample_planar_twists(const PlanarContact& pc, double longest_side,
                                                     std::size_t count, std::uint64_t seed,
                                                     double rotational_fraction = 0.8) {
  if (count < 6) throw DomainError("planar twist sample count must be >= 6");
  const auto comp = planar_components(pc.normal_axis);
  const Vec3 a = Vec3::Unit(comp[0]), b = Vec3::Unit(comp[1]);
  std::vector<PlanarTwist> out;
  for (const Vec3& d : {a, Vec3(-a), b, Vec3(-b)}) out.push_back({false, d, Vec3::Zero(), 1.0});
  out.push_back({true, a, pc.center, 1.0});
  out.push_back({true, a, pc.center, -1.0});
  const std::size_t rest = count - 6;
  const auto n_rot = static_cast<std::size_t>(std::lround(rotational_fraction * rest));
  const std::size_t n_trans = rest - n_rot;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double radius = 0.25 * longest_side;
  for (std::size_t i = 0; i < n_rot; ++i) {
    const double rad = radius * std::sqrt(unit(rng));
    const double phi = 2 * kPi * unit(rng);
    const Vec3 cor = pc.center + rad * (std::cos(phi) * a + std::sin(phi) * b);
    out.push_back({true, a, cor, i % 2 == 0 ? 1.0 : -1.0});
  }
  for (std::size_t j = 0; j < n_trans; ++j) {
    const double phi = 2 * kPi * (j + 0.5) / n_trans;
    out.push_back({false, std::cos(phi) * a + std::sin(phi) * b, Vec3::Zero(), 1.0});
  }
  return out;
}

}  // namespace sixdls

#endif  // SIXDLS_WRENCH_HPP_
