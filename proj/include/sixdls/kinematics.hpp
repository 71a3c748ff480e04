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

#ifndef SIXDLS_KINEMATICS_HPP_
#define SIXDLS_KINEMATICS_HPP_

#include <cmath>
#include <cstdint>
#include <random>
#include <variant>
#include <vector>

#include "sixdls/core.hpp"
#include "sixdls/geometry.hpp"

namespace sixdls {

/// Line with unit direction e and moment m = q x e.
struct PluckerLine {
  Vec3 e = Vec3::UnitZ();
  Vec3 m = Vec3::Zero();
};

inline PluckerLine plucker_from_point_direction(const Vec3& q, const Vec3& e) {
  const double n = e.norm();
  if (!(n > 1e-12) || !std::isfinite(n)) throw DomainError("line direction must be nonzero");
  const Vec3 dir = e / n;
  return {dir, q.cross(dir)};
}

/// Unit twist: rotation about a screw axis with finite pitch (|omega| = 1),
/// or pure translation along a unit direction (|v| = 1).
struct UnitTwist {
  enum class Kind { Rotational, Translational };
  Kind kind = Kind::Translational;
  PluckerLine line;  // Translational: only line.e is used
  double pitch = 0.0;

  static UnitTwist rotation(const PluckerLine& l, double h = 0.0) {
    return {Kind::Rotational, l, h};
  }
  static UnitTwist rotation_about(const Vec3& q, const Vec3& e, double h = 0.0) {
    return rotation(plucker_from_point_direction(q, e), h);
  }
  static UnitTwist translation(const Vec3& e) {
    const double n = e.norm();
    if (!(n > 1e-12)) throw DomainError("translation direction must be nonzero");
    return {Kind::Translational, PluckerLine{e / n, Vec3::Zero()}, 0.0};
  }

  bool rotational() const { return kind == Kind::Rotational; }

  /// Same motion in the opposite sense.
  UnitTwist reversed() const {
    UnitTwist t = *this;
    t.line.e = -line.e;
    t.line.m = -line.m;
    return t;
  }

  /// 6-vector [v; omega] at the origin.
  Vec6 as_vector() const {
    Vec6 out;
    if (rotational()) {
      out << pitch * line.e + line.m, line.e;
    } else {
      out << line.e, Vec3::Zero();
    }
    return out;
  }
};

/// Linear velocity of the body point p.
inline Vec3 velocity_at_point(const UnitTwist& twist, const Vec3& p) {
  if (!twist.rotational()) return twist.line.e;
  return twist.pitch * twist.line.e + twist.line.m - p.cross(twist.line.e);
}

/// Unit projection of v onto the tangent plane with normal n.
inline Vec3 tangential_direction(const Vec3& v, const Vec3& n) {
  const Vec3 proj = v - n * n.dot(v);
  const double len = proj.norm();
  if (!(len >= 1e-12 * std::max(1.0, v.norm())))
    throw DegenerateError("velocity is parallel to the surface normal");
  return proj / len;
}

/// Fibonacci-sphere point i of n (approximately uniform on S^2).
inline Vec3 fibonacci_sphere_point(std::size_t i, std::size_t n) {
  const double golden = kPi * (3.0 - std::sqrt(5.0));
  const double z = 1.0 - 2.0 * (static_cast<double>(i) + 0.5) / static_cast<double>(n);
  const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
  const double phi = golden * static_cast<double>(i);
  return {r * std::cos(phi), r * std::sin(phi), z};
}

/// The 6 axis translations (+/-x, +/-y, +/-z) followed by the 6 axis
/// rotations through `center`.
inline std::vector<UnitTwist> axis_aligned_twists(const Vec3& center) {
  std::vector<UnitTwist> out;
  out.reserve(12);
  for (int axis = 0; axis < 3; ++axis)
    for (double s : {1.0, -1.0}) out.push_back(UnitTwist::translation(s * Vec3::Unit(axis)));
  for (int axis = 0; axis < 3; ++axis)
    for (double s : {1.0, -1.0})
      out.push_back(UnitTwist::rotation_about(center, s * Vec3::Unit(axis), 0.0));
  return out;
}

struct TwistSamplingOptions {
  double rotational_fraction = 0.8;
  double radius_factor = 0.25;  // ball radius relative to the longest bbox side
  double pitch_limit = 2.0;     // h uniform in [-pitch_limit, pitch_limit]
};

/// Twist samples for a contact: the 12 axis-aligned seeds, then rotational
/// twists (Fibonacci-sphere direction, axis point uniform in a ball around
/// the pressure center, uniform pitch) and translations whose directions are
/// drawn from the same Fibonacci set.
inline std::vector<UnitTwist> sample_unit_twists(const Vec3& pressure_center, double longest_side,
                                                 std::size_t count, std::uint64_t seed,
                                                 const TwistSamplingOptions& opt = {}) {
  if (count < 12) throw DomainError("twist sample count must be >= 12");
  std::vector<UnitTwist> out = axis_aligned_twists(pressure_center);
  const std::size_t rest = count - 12;
  const auto n_rot = static_cast<std::size_t>(std::lround(opt.rotational_fraction * rest));
  const std::size_t n_trans = rest - n_rot;
  const double radius = opt.radius_factor * longest_side;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const std::size_t n_dir = std::max<std::size_t>(n_rot, 1);
  for (std::size_t i = 0; i < n_rot; ++i) {
    const Vec3 e = fibonacci_sphere_point(i, n_dir);
    Vec3 g(gauss(rng), gauss(rng), gauss(rng));
    while (g.norm() < 1e-12) g = Vec3(gauss(rng), gauss(rng), gauss(rng));
    const double rad = radius * std::cbrt(unit(rng));
    const Vec3 q = pressure_center + rad * g.normalized();
    const double h = opt.pitch_limit * (2.0 * unit(rng) - 1.0);
    out.push_back(UnitTwist::rotation_about(q, e, h));
  }
  for (std::size_t j = 0; j < n_trans; ++j) {
    const std::size_t idx = n_rot > 0 ? (j * n_rot) / n_trans : j;
    const Vec3 e = fibonacci_sphere_point(idx, n_rot > 0 ? n_dir : n_trans);
    out.push_back(UnitTwist::translation(e));
  }
  return out;
}

/// Convenience overload that reads the pressure center and bounding box
/// from the profile.
inline std::vector<UnitTwist> sample_unit_twists(const ContactProfile& profile, std::size_t count,
                                                 std::uint64_t seed,
                                                 const TwistSamplingOptions& opt = {}) {
  return sample_unit_twists(pressure_center(profile), longest_bounding_side(profile.surface),
                            count, seed, opt);
}

}  // namespace sixdls

#endif  // SIXDLS_KINEMATICS_HPP_
