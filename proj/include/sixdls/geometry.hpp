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

// Contact surfaces (parametric and triangle mesh), pressure fields and the
// pressure-weighted discretization shared by every surface integral.

#ifndef SIXDLS_GEOMETRY_HPP_
#define SIXDLS_GEOMETRY_HPP_

#include <array>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "sixdls/core.hpp"
#include "sixdls/quadrature.hpp"

namespace sixdls {

enum class SurfaceKind { S1, S2, S3, S4, S5, S6, Custom };

inline const char* to_string(SurfaceKind k) {
  switch (k) {
    case SurfaceKind::S1: return "S1";
    case SurfaceKind::S2: return "S2";
    case SurfaceKind::S3: return "S3";
    case SurfaceKind::S4: return "S4";
    case SurfaceKind::S5: return "S5";
    case SurfaceKind::S6: return "S6";
    case SurfaceKind::Custom: return "custom";
  }
  return "?";
}

inline std::optional<SurfaceKind> surface_kind_from_string(const std::string& s) {
  for (auto k : {SurfaceKind::S1, SurfaceKind::S2, SurfaceKind::S3, SurfaceKind::S4,
                 SurfaceKind::S5, SurfaceKind::S6, SurfaceKind::Custom})
    if (s == to_string(k)) return k;
  return std::nullopt;
}

struct ParameterDomain {
  double u0 = 0, u1 = 1, v0 = 0, v1 = 1;

  bool contains(double u, double v) const {
    const double eu = 1e-12 * std::max(1.0, u1 - u0);
    const double ev = 1e-12 * std::max(1.0, v1 - v0);
    return u >= u0 - eu && u <= u1 + eu && v >= v0 - ev && v <= v1 + ev;
  }
};

/// A parametric patch sigma(u, v) = scale * shape(u, v; a, b, c) + offset.
///
/// The six built-in shapes are the cylinder, elliptic cylinder, sphere,
/// ellipsoid, paraboloid and elliptic paraboloid test surfaces. `Custom`
/// surfaces supply their own evaluator; tangents then come from central
/// differences unless `custom_tangents` is set.
struct ParametricSurface {
  SurfaceKind kind = SurfaceKind::S1;
  double a = 1.0, b = 1.0, c = 1.0;
  double scale = 1.0;
  ParameterDomain domain;
  Vec3 offset = Vec3::Zero();
  std::function<Vec3(double, double)> custom;
  std::function<std::pair<Vec3, Vec3>(double, double)> custom_tangents;

  /// Built-in surface with its reference parameters and domain.
  static ParametricSurface standard(SurfaceKind kind) {
    ParametricSurface s;
    s.kind = kind;
    switch (kind) {
      case SurfaceKind::S1:
        s.domain = {0, kPi, 0, 1};
        break;
      case SurfaceKind::S2:
        s.a = 1.0, s.b = 0.5;
        s.domain = {0, kPi, 0, 1};
        break;
      case SurfaceKind::S3:
        s.domain = {-0.5 * kPi, 0.5 * kPi, 0, kPi};
        break;
      case SurfaceKind::S4:
        s.a = 1.0, s.b = 0.5, s.c = 0.6;
        s.domain = {-0.5 * kPi, 0.5 * kPi, 0, kPi};
        break;
      case SurfaceKind::S5:
        s.domain = {0, kPi, 0, 1};
        break;
      case SurfaceKind::S6:
        s.a = 1.0, s.b = 0.5;
        s.domain = {0, kPi, 0, 1};
        break;
      case SurfaceKind::Custom:
        throw DomainError("custom surfaces have no standard form");
    }
    return s;
  }

  void validate() const {
    if (!(domain.u1 > domain.u0) || !(domain.v1 > domain.v0))
      throw DomainError("parameter domain must be nonempty");
    if (!(scale > 0) || !std::isfinite(scale)) throw DomainError("surface scale must be positive");
    if (kind == SurfaceKind::Custom && !custom)
      throw DomainError("custom surface requires an evaluator");
  }

  /// Unscaled shape value without domain checks.
  Vec3 shape(double u, double v) const {
    switch (kind) {
      case SurfaceKind::S1: return {std::cos(u), std::sin(u), v};
      case SurfaceKind::S2: return {a * std::cos(u), b * std::sin(u), v};
      case SurfaceKind::S3:
        return {std::cos(u) * std::cos(v), std::cos(u) * std::sin(v), std::sin(u)};
      case SurfaceKind::S4:
        return {a * std::cos(u) * std::cos(v), b * std::cos(u) * std::sin(v), c * std::sin(u)};
      case SurfaceKind::S5: return {std::cos(u) * v, std::sin(u) * v, v * v};
      case SurfaceKind::S6: return {a * std::cos(u) * v, b * std::sin(u) * v, v * v};
      case SurfaceKind::Custom: return custom(u, v);
    }
    return Vec3::Zero();
  }

  Vec3 point(double u, double v) const { return scale * shape(u, v) + offset; }

  /// (sigma_u, sigma_v) including the scale factor.
  std::pair<Vec3, Vec3> tangents(double u, double v) const {
    const double cu = std::cos(u), su = std::sin(u), cv = std::cos(v), sv = std::sin(v);
    Vec3 tu, tv;
    switch (kind) {
      case SurfaceKind::S1:
        tu = {-su, cu, 0}, tv = {0, 0, 1};
        break;
      case SurfaceKind::S2:
        tu = {-a * su, b * cu, 0}, tv = {0, 0, 1};
        break;
      case SurfaceKind::S3:
        tu = {-su * cv, -su * sv, cu}, tv = {-cu * sv, cu * cv, 0};
        break;
      case SurfaceKind::S4:
        tu = {-a * su * cv, -b * su * sv, c * cu}, tv = {-a * cu * sv, b * cu * cv, 0};
        break;
      case SurfaceKind::S5:
        tu = {-su * v, cu * v, 0}, tv = {cu, su, 2 * v};
        break;
      case SurfaceKind::S6:
        tu = {-a * su * v, b * cu * v, 0}, tv = {a * cu, b * su, 2 * v};
        break;
      case SurfaceKind::Custom: {
        if (custom_tangents) {
          auto t = custom_tangents(u, v);
          return {scale * t.first, scale * t.second};
        }
        const double hu = 1e-6 * std::max(1.0, domain.u1 - domain.u0);
        const double hv = 1e-6 * std::max(1.0, domain.v1 - domain.v0);
        tu = (custom(u + hu, v) - custom(u - hu, v)) / (2 * hu);
        tv = (custom(u, v + hv) - custom(u, v - hv)) / (2 * hv);
        break;
      }
    }
    return {scale * tu, scale * tv};
  }

  /// Lower-left corner of the axis-aligned bounding box and its extent,
  /// estimated on a dense parameter grid that includes the boundary.
  std::pair<Vec3, Vec3> bounding_box(int grid = 201) const {
    Vec3 lo = Vec3::Constant(std::numeric_limits<double>::infinity());
    Vec3 hi = -lo;
    for (int i = 0; i < grid; ++i)
      for (int j = 0; j < grid; ++j) {
        const double u = domain.u0 + (domain.u1 - domain.u0) * i / (grid - 1);
        const double v = domain.v0 + (domain.v1 - domain.v0) * j / (grid - 1);
        const Vec3 p = point(u, v);
        lo = lo.cwiseMin(p);
        hi = hi.cwiseMax(p);
      }
    return {lo, hi - lo};
  }
};

/// Triangle mesh with per-face centers, unit normals and areas.
class TriangleMesh {
 public:
  TriangleMesh() = default;

  /// Builds the mesh and drops faces with area below `min_area`. Indices of
  /// retained input faces are available through `kept_faces()`.
  TriangleMesh(std::vector<Vec3> vertices, const std::vector<std::array<int, 3>>& faces,
               double min_area = 1e-14, bool warn = true)
      : vertices_(std::move(vertices)) {
    std::size_t dropped = 0;
    for (std::size_t f = 0; f < faces.size(); ++f) {
      const auto& t = faces[f];
      for (int idx : t)
        if (idx < 0 || static_cast<std::size_t>(idx) >= vertices_.size())
          throw DomainError("face " + std::to_string(f) + " has out-of-range vertex index");
      const Vec3& p0 = vertices_[t[0]];
      const Vec3& p1 = vertices_[t[1]];
      const Vec3& p2 = vertices_[t[2]];
      const Vec3 cr = (p1 - p0).cross(p2 - p0);
      const double area = 0.5 * cr.norm();
      if (!(area >= min_area)) {
        ++dropped;
        continue;
      }
      faces_.push_back(t);
      kept_.push_back(f);
      centers_.push_back((p0 + p1 + p2) / 3.0);
      normals_.push_back(cr.normalized());
      areas_.push_back(area);
    }
    if (dropped > 0 && warn)
      std::fprintf(stderr, "warning: dropped %zu degenerate face(s) from mesh\n", dropped);
  }

  const std::vector<Vec3>& vertices() const { return vertices_; }
  const std::vector<std::array<int, 3>>& faces() const { return faces_; }
  const std::vector<Vec3>& centers() const { return centers_; }
  const std::vector<Vec3>& normals() const { return normals_; }
  const std::vector<double>& areas() const { return areas_; }
  const std::vector<std::size_t>& kept_faces() const { return kept_; }
  std::size_t size() const { return faces_.size(); }

  TriangleMesh translated(const Vec3& delta) const {
    TriangleMesh m = *this;
    for (auto& v : m.vertices_) v += delta;
    for (auto& c : m.centers_) c += delta;
    return m;
  }

  std::pair<Vec3, Vec3> bounding_box() const {
    Vec3 lo = Vec3::Constant(std::numeric_limits<double>::infinity());
    Vec3 hi = -lo;
    for (const auto& f : faces_)
      for (int i : f) {
        lo = lo.cwiseMin(vertices_[i]);
        hi = hi.cwiseMax(vertices_[i]);
      }
    return {lo, hi - lo};
  }

 private:
  std::vector<Vec3> vertices_;
  std::vector<std::array<int, 3>> faces_;
  std::vector<std::size_t> kept_;
  std::vector<Vec3> centers_;
  std::vector<Vec3> normals_;
  std::vector<double> areas_;
};

using Surface = std::variant<ParametricSurface, TriangleMesh>;

// ---------------------------------------------------------------------------
// Pressure fields

struct UniformPressure {
  double value = 1.0;  // Pa
};

/// Radial coordinate used by the power-law field.
enum class RadialMode {
  Line,   // distance to the line through `center` parallel to z
  Point,  // distance to `center`
};

struct PowerLawPressure {
  double k = 2.0;
  double p0 = 1.0;     // Pa
  double r_max = 1.0;  // m
  RadialMode mode = RadialMode::Point;
  Vec3 center = Vec3::Zero();
};

struct PerElementPressure {
  std::vector<double> values;  // Pa, one per mesh face
};

using PressureField = std::variant<UniformPressure, PowerLawPressure, PerElementPressure>;

/// P0 [1 - (r / r_max)^k]^(1/k).
inline double power_law_pressure(double r, double r_max, double k, double p0) {
  if (!(k > 0)) throw DomainError("power-law exponent must be positive");
  if (!(r_max > 0)) throw DomainError("power-law r_max must be positive");
  if (r < 0 || r > r_max) throw DomainError("power-law radius outside [0, r_max]");
  const double t = 1.0 - std::pow(r / r_max, k);
  if (t <= 0) return 0.0;
  return p0 * std::pow(t, 1.0 / k);
}

inline double radial_coordinate(const PowerLawPressure& pl, const Vec3& x) {
  const Vec3 d = x - pl.center;
  return pl.mode == RadialMode::Line ? std::hypot(d.x(), d.y()) : d.norm();
}

inline void validate_pressure(const PressureField& field) {
  std::visit(
      [](const auto& f) {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, UniformPressure>) {
          if (!(f.value >= 0) || !std::isfinite(f.value))
            throw DomainError("uniform pressure must be >= 0");
        } else if constexpr (std::is_same_v<T, PowerLawPressure>) {
          if (!(f.k > 0)) throw DomainError("power-law exponent must be positive");
          if (!(f.r_max > 0)) throw DomainError("power-law r_max must be positive");
          if (!(f.p0 >= 0)) throw DomainError("power-law p0 must be >= 0");
        } else {
          for (double v : f.values)
            if (!(v >= 0) || !std::isfinite(v))
              throw DomainError("per-element pressure values must be >= 0");
        }
      },
      field);
}

/// Pressure at point x (face index for per-element fields). Radii that
/// exceed r_max by rounding only are clamped; larger excursions throw.
inline double pressure_at(const PressureField& field, const Vec3& x,
                          std::size_t face = std::numeric_limits<std::size_t>::max()) {
  return std::visit(
      [&](const auto& f) -> double {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, UniformPressure>) {
          return f.value;
        } else if constexpr (std::is_same_v<T, PowerLawPressure>) {
          double r = radial_coordinate(f, x);
          if (r > f.r_max && r <= f.r_max * (1 + 1e-9)) r = f.r_max;
          return power_law_pressure(r, f.r_max, f.k, f.p0);
        } else {
          if (face >= f.values.size())
            throw DomainError("per-element pressure needs a face index within range");
          return f.values[face];
        }
      },
      field);
}

inline PressureField scaled(const PressureField& field, double factor) {
  return std::visit(
      [&](const auto& f) -> PressureField {
        using T = std::decay_t<decltype(f)>;
        T g = f;
        if constexpr (std::is_same_v<T, UniformPressure>) {
          g.value *= factor;
        } else if constexpr (std::is_same_v<T, PowerLawPressure>) {
          g.p0 *= factor;
        } else {
          for (double& v : g.values) v *= factor;
        }
        return g;
      },
      field);
}

inline PressureField translated(const PressureField& field, const Vec3& delta) {
  if (const auto* pl = std::get_if<PowerLawPressure>(&field)) {
    PowerLawPressure g = *pl;
    g.center += delta;
    return g;
  }
  return field;
}

// ---------------------------------------------------------------------------
// Contact profile

struct ContactProfile {
  Surface surface;
  PressureField pressure = UniformPressure{};
  double mu = 1.0;

  bool is_mesh() const { return std::holds_alternative<TriangleMesh>(surface); }

  void validate() const {
    if (!(mu > 0) || !std::isfinite(mu)) throw DomainError("friction coefficient must be positive");
    validate_pressure(pressure);
    if (const auto* ps = std::get_if<ParametricSurface>(&surface)) {
      ps->validate();
      if (std::holds_alternative<PerElementPressure>(pressure))
        throw DomainError("per-element pressure requires a mesh surface");
    } else {
      const auto& m = std::get<TriangleMesh>(surface);
      if (m.size() == 0) throw DegenerateError("mesh has no non-degenerate faces");
      if (const auto* pe = std::get_if<PerElementPressure>(&pressure))
        if (pe->values.size() != m.size())
          throw DomainError("per-element pressure count does not match face count");
    }
  }
};

/// Longest side of the axis-aligned bounding box of the contact surface.
inline double longest_bounding_side(const Surface& s) {
  const auto box = std::visit([](const auto& x) { return x.bounding_box(); }, s);
  return box.second.maxCoeff();
}

/// Pressure-weighted point set representing one contact. Every integral
/// over the surface is a sum over these samples: for parametric surfaces
/// they are Gauss-Legendre nodes with weight P dS; for meshes they are
/// face centers with weight p_i a_i.
struct SurfaceSamples {
  std::vector<Vec3> points;
  std::vector<Vec3> normals;
  std::vector<double> weights;  // pressure * area element (N)
  std::vector<double> areas;    // area element only (m^2)

  std::size_t size() const { return points.size(); }

  /// Pairwise summation for bit-stable totals.
  static double pairwise_sum(const double* x, std::size_t n) {
    if (n <= 8) {
      double s = 0;
      for (std::size_t i = 0; i < n; ++i) s += x[i];
      return s;
    }
    const std::size_t h = n / 2;
    return pairwise_sum(x, h) + pairwise_sum(x + h, n - h);
  }

  double total_weight() const { return pairwise_sum(weights.data(), weights.size()); }
  double total_area() const { return pairwise_sum(areas.data(), areas.size()); }
};

inline SurfaceSamples discretize(const ContactProfile& profile,
                                 int order = default_quadrature_order()) {
  SurfaceSamples out;
  if (const auto* ps = std::get_if<ParametricSurface>(&profile.surface)) {
    ps->validate();
    const GaussRule& rule = gauss_legendre(order);
    const auto& d = ps->domain;
    const double hu = 0.5 * (d.u1 - d.u0), hv = 0.5 * (d.v1 - d.v0);
    const double mu = 0.5 * (d.u1 + d.u0), mv = 0.5 * (d.v1 + d.v0);
    const std::size_t n = rule.nodes.size();
    out.points.reserve(n * n);
    out.normals.reserve(n * n);
    out.weights.reserve(n * n);
    out.areas.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      const double u = mu + hu * rule.nodes[i];
      for (std::size_t j = 0; j < n; ++j) {
        const double v = mv + hv * rule.nodes[j];
        const auto [tu, tv] = ps->tangents(u, v);
        const Vec3 cr = tu.cross(tv);
        const double jac = cr.norm();
        const double dA = jac * hu * hv * rule.weights[i] * rule.weights[j];
        const Vec3 x = ps->point(u, v);
        out.points.push_back(x);
        out.normals.push_back(jac > 0 ? Vec3(cr / jac) : Vec3::Zero());
        out.areas.push_back(dA);
        out.weights.push_back(pressure_at(profile.pressure, x) * dA);
      }
    }
  } else {
    const auto& m = std::get<TriangleMesh>(profile.surface);
    out.points = m.centers();
    out.normals = m.normals();
    out.areas = m.areas();
    out.weights.resize(m.size());
    for (std::size_t f = 0; f < m.size(); ++f)
      out.weights[f] = pressure_at(profile.pressure, m.centers()[f], f) * m.areas()[f];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Operations

/// sigma(u, v) including the rigid offset.
inline Vec3 eval_surface(const ParametricSurface& s, double u, double v) {
  if (!s.domain.contains(u, v)) throw DomainError("(u, v) outside the parameter domain");
  return s.point(u, v);
}

/// Unit normal sigma_u x sigma_v / |sigma_u x sigma_v|.
inline Vec3 surface_normal(const ParametricSurface& s, double u, double v) {
  if (!s.domain.contains(u, v)) throw DomainError("(u, v) outside the parameter domain");
  const auto [tu, tv] = s.tangents(u, v);
  const Vec3 cr = tu.cross(tv);
  const double scale = tu.norm() * tv.norm();
  if (!(cr.norm() > 1e-12 * scale) || scale == 0.0)
    throw DegenerateError("surface is singular at (u, v)");
  return cr.normalized();
}

/// Pressure-weighted centroid of the contact surface.
inline Vec3 pressure_center(const SurfaceSamples& samples) {
  const double total = samples.total_weight();
  if (!(total > 0)) throw DegenerateError("total contact pressure is zero");
  std::array<std::vector<double>, 3> comp;
  for (auto& c : comp) c.resize(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i)
    for (int k = 0; k < 3; ++k) comp[k][i] = samples.weights[i] * samples.points[i][k];
  Vec3 o;
  for (int k = 0; k < 3; ++k) o[k] = SurfaceSamples::pairwise_sum(comp[k].data(), comp[k].size()) / total;
  return o;
}

inline Vec3 pressure_center(const ContactProfile& profile, int order = default_quadrature_order()) {
  return pressure_center(discretize(profile, order));
}

/// Total normal-force magnitude F = integral of P dS.
inline double total_normal_force(const ContactProfile& profile,
                                 int order = default_quadrature_order()) {
  return discretize(profile, order).total_weight();
}

/// Profile translated so that coordinates x' = x + delta.
inline ContactProfile translated(const ContactProfile& profile, const Vec3& delta) {
  ContactProfile out = profile;
  if (auto* ps = std::get_if<ParametricSurface>(&out.surface)) {
    ps->offset += delta;
  } else {
    out.surface = std::get<TriangleMesh>(profile.surface).translated(delta);
  }
  out.pressure = translated(profile.pressure, delta);
  return out;
}

struct LocalFrame {
  ContactProfile profile;  // expressed in the local contact frame
  Vec3 origin;             // pressure center in the input frame
};

/// Re-expresses the profile in a frame whose origin is the pressure center.
inline LocalFrame to_local_contact_frame(const ContactProfile& profile,
                                         int order = default_quadrature_order()) {
  profile.validate();
  const Vec3 o = pressure_center(profile, order);
  ContactProfile local = translated(profile, -o);
  // One refinement pass removes the rounding left by the first shift.
  const Vec3 residual = pressure_center(local, order);
  local = translated(local, -residual);
  return {std::move(local), o + residual};
}

/// Returns (P / F, F).
inline std::pair<PressureField, double> normalize_pressure(const ContactProfile& profile,
                                                           int order = default_quadrature_order()) {
  const double force = total_normal_force(profile, order);
  if (!(force > 0)) throw DegenerateError("total contact pressure is zero");
  return {scaled(profile.pressure, 1.0 / force), force};
}

/// The profile with its pressure replaced by the normalized field.
inline ContactProfile normalized(const ContactProfile& profile,
                                 int order = default_quadrature_order()) {
  ContactProfile out = profile;
  out.pressure = normalize_pressure(profile, order).first;
  return out;
}

/// Power-law field whose r_max is the largest radial coordinate on the
/// surface, so the pressure vanishes at the contact boundary.
inline PowerLawPressure fit_power_law(const Surface& surface, double k, RadialMode mode,
                                      const Vec3& center, double p0 = 1.0) {
  PowerLawPressure pl;
  pl.k = k;
  pl.p0 = p0;
  pl.mode = mode;
  pl.center = center;
  double r_max = 0;
  if (const auto* ps = std::get_if<ParametricSurface>(&surface)) {
    const int grid = 401;
    for (int i = 0; i < grid; ++i)
      for (int j = 0; j < grid; ++j) {
        const double u = ps->domain.u0 + (ps->domain.u1 - ps->domain.u0) * i / (grid - 1);
        const double v = ps->domain.v0 + (ps->domain.v1 - ps->domain.v0) * j / (grid - 1);
        r_max = std::max(r_max, radial_coordinate(pl, ps->point(u, v)));
      }
  } else {
    for (const auto& v : std::get<TriangleMesh>(surface).vertices())
      r_max = std::max(r_max, radial_coordinate(pl, v));
  }
  if (!(r_max > 0)) throw DegenerateError("power-law field has zero radial extent");
  pl.r_max = r_max * (1 + 1e-12);
  return pl;
}

/// Regular (u, v) grid tessellation with two triangles per cell. The cell
/// aspect ratio follows the mean tangent lengths so triangles are close to
/// isotropic; degenerate triangles at surface singularities are dropped.
inline TriangleMesh tessellate(const ParametricSurface& s, int target_triangles) {
  if (target_triangles < 2) throw DomainError("mesh resolution must be >= 2 triangles");
  s.validate();
  const auto& d = s.domain;
  double lu = 0, lv = 0;
  const int probe = 32;
  for (int i = 0; i < probe; ++i)
    for (int j = 0; j < probe; ++j) {
      const double u = d.u0 + (d.u1 - d.u0) * (i + 0.5) / probe;
      const double v = d.v0 + (d.v1 - d.v0) * (j + 0.5) / probe;
      const auto [tu, tv] = s.tangents(u, v);
      lu += tu.norm();
      lv += tv.norm();
    }
  lu *= (d.u1 - d.u0) / (probe * probe);
  lv *= (d.v1 - d.v0) / (probe * probe);
  const double cells = 0.5 * target_triangles;
  int nu = std::max(1, static_cast<int>(std::lround(std::sqrt(cells * lu / lv))));
  int nv = std::max(1, static_cast<int>(std::lround(cells / nu)));
  std::vector<Vec3> verts;
  verts.reserve((nu + 1) * (nv + 1));
  for (int i = 0; i <= nu; ++i)
    for (int j = 0; j <= nv; ++j)
      verts.push_back(s.point(d.u0 + (d.u1 - d.u0) * i / nu, d.v0 + (d.v1 - d.v0) * j / nv));
  const auto id = [nv](int i, int j) { return i * (nv + 1) + j; };
  std::vector<std::array<int, 3>> faces;
  faces.reserve(2 * nu * nv);
  for (int i = 0; i < nu; ++i)
    for (int j = 0; j < nv; ++j) {
      faces.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      faces.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  return TriangleMesh(std::move(verts), faces, 1e-14, false);
}

/// Mesh version of a parametric profile; point-evaluable pressure fields
/// are sampled at face centers.
inline ContactProfile tessellate(const ContactProfile& profile, int target_triangles) {
  const auto* ps = std::get_if<ParametricSurface>(&profile.surface);
  if (!ps) return profile;
  ContactProfile out;
  out.surface = tessellate(*ps, target_triangles);
  out.pressure = profile.pressure;
  out.mu = profile.mu;
  return out;
}

}  // namespace sixdls

#endif  // SIXDLS_GEOMETRY_HPP_
