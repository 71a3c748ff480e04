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

// Studies over synthetic contacts: mesh convergence of w_max, batch
// classification metrics, and sensitivity sweeps over friction, pressure
// shape and contact length.

#ifndef SIXDLS_STUDY_HPP_
#define SIXDLS_STUDY_HPP_

#include <optional>
#include <string>
#include <vector>

#include "sixdls/geometry.hpp"
#include "sixdls/kinematics.hpp"
#include "sixdls/pipeline.hpp"
#include "sixdls/wrench.hpp"

namespace sixdls {

// ---------------------------------------------------------------------------
// Mesh convergence

struct ConvergenceRow {
  SurfaceKind surface = SurfaceKind::S1;
  int target_triangles = 0;
  std::size_t triangles = 0;  // after dropping degenerate faces
  Wrench6 reference = Wrench6::Zero();
  Wrench6 mesh = Wrench6::Zero();
  double error_rate = 0.0;  // mean over components of |mesh - reference| / reference
};

struct ConvergenceOptions {
  std::size_t twist_count = 2000;
  std::uint64_t seed = 1;
  double mu = 1.0;
  int quadrature_order = default_quadrature_order();
};

/// Mean relative deviation of w_max over the six components.
inline double wrench_error_rate(const Wrench6& mesh, const Wrench6& reference) {
  if (!(reference.minCoeff() > 0)) throw DegenerateError("reference w_max has a zero component");
  return (mesh - reference).cwiseAbs().cwiseQuotient(reference).mean();
}

/// w_max of each tessellation against the parametric surface, using one
/// twist set drawn about the parametric pressure center for all of them.
inline std::vector<ConvergenceRow> convergence_study(const std::vector<SurfaceKind>& surfaces,
                                                     const std::vector<int>& resolutions,
                                                     const ConvergenceOptions& opt = {}) {
  if (surfaces.empty()) throw DomainError("no surfaces given");
  if (resolutions.empty()) throw DomainError("no mesh resolutions given");
  for (int r : resolutions)
    if (r <= 0) throw DomainError("mesh resolution must be positive, got " + std::to_string(r));
  std::vector<ConvergenceRow> rows;
  for (SurfaceKind kind : surfaces) {
    const ContactProfile p{ParametricSurface::standard(kind), UniformPressure{1.0}, opt.mu};
    const Vec3 o = pressure_center(p, opt.quadrature_order);
    const auto twists = sample_unit_twists(o, longest_bounding_side(p.surface), opt.twist_count, opt.seed);
    const Wrench6 ref = sample_wrench_set(p, twists, opt.quadrature_order).w_max;
    for (int n : resolutions) {
      const ContactProfile mp = tessellate(p, n);
      ConvergenceRow row;
      row.surface = kind;
      row.target_triangles = n;
      row.triangles = std::get<TriangleMesh>(mp.surface).size();
      row.reference = ref;
      row.mesh = sample_wrench_set(mp, twists, opt.quadrature_order).w_max;
      row.error_rate = wrench_error_rate(row.mesh, ref);
      rows.push_back(row);
    }
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Classification metrics

struct Confusion {
  std::size_t tp = 0, fp = 0, tn = 0, fn = 0;

  void add(int label, int predicted) {
    if (predicted == 1) (label == 1 ? tp : fp)++;
    else (label == 1 ? fn : tn)++;
  }
  std::size_t total() const { return tp + fp + tn + fn; }
  std::size_t positives() const { return tp + fp; }
  // Ratios with an empty denominator are reported as 0.
  double precision() const { return tp + fp ? double(tp) / double(tp + fp) : 0.0; }
  double recall() const { return tp + fn ? double(tp) / double(tp + fn) : 0.0; }
  double f1() const {
    const double p = precision(), r = recall();
    return p + r > 0 ? 2 * p * r / (p + r) : 0.0;
  }
  double accuracy() const { return total() ? double(tp + tn) / double(total()) : 0.0; }
};

inline Json confusion_to_json(const Confusion& c) {
  return {{"tp", c.tp},           {"fp", c.fp},         {"tn", c.tn},
          {"fn", c.fn},           {"precision", c.precision()}, {"recall", c.recall()},
          {"f1", c.f1()},         {"accuracy", c.accuracy()}};
}

struct BatchResult {
  std::vector<GraspPrediction> predictions;
  std::optional<Confusion> metrics;  // present when every grasp has a label
};

/// Predicts every grasp (in parallel, results in input order).
inline BatchResult predict_batch(const std::vector<GraspSpec>& grasps, ConstraintCache* cache = nullptr,
                                 PredictMode mode = PredictMode::LP) {
  if (grasps.empty()) throw ValidationError("grasps", "batch is empty");
  BatchResult out;
  out.predictions.resize(grasps.size());
  parallel_for(grasps.size(), [&](std::size_t i) { out.predictions[i] = predict_grasp(grasps[i], cache, mode); });
  bool labeled = true;
  for (const auto& g : grasps) labeled = labeled && g.label.has_value();
  if (labeled) {
    Confusion c;
    for (std::size_t i = 0; i < grasps.size(); ++i) c.add(*grasps[i].label, out.predictions[i].result.y);
    out.metrics = c;
  }
  return out;
}

inline std::vector<GraspSpec> batch_from_json(const Json& j, const PipelineOptions& defaults,
                                              const std::string& base_dir = "") {
  if (!j.is_object()) throw ValidationError("", "expected an object");
  const PipelineOptions opt = options_from_json(j, defaults, "");
  const Json& gj = detail::require(j, "grasps", "");
  if (!gj.is_array()) throw ValidationError("grasps", "expected an array");
  if (gj.empty()) throw ValidationError("grasps", "batch is empty");
  std::vector<GraspSpec> out;
  for (std::size_t i = 0; i < gj.size(); ++i)
    out.push_back(grasp_from_json(gj[i], opt, detail::join("grasps", i), base_dir));
  return out;
}

// ---------------------------------------------------------------------------
// Sensitivity sweeps

enum class SweepKind { FrictionOffset, PressureExponent, ContactLength };

inline const char* to_string(SweepKind k) {
  switch (k) {
    case SweepKind::FrictionOffset: return "mu";
    case SweepKind::PressureExponent: return "k";
    case SweepKind::ContactLength: return "length";
  }
  return "";
}

inline SweepKind sweep_kind_from_string(const std::string& s) {
  if (s == "mu") return SweepKind::FrictionOffset;
  if (s == "k") return SweepKind::PressureExponent;
  if (s == "length") return SweepKind::ContactLength;
  throw ValidationError("sweep", "expected mu, k or length, got '" + s + "'");
}

namespace detail {
/// Rescales the pressure so the total normal force equals `force`.
inline ContactProfile with_total_force(ContactProfile p, double force, int order) {
  const double now = total_normal_force(p, order);
  if (!(now > 0)) throw DegenerateError("total contact pressure is zero");
  p.pressure = scaled(p.pressure, force / now);
  return p;
}

inline Vec3 geometric_center(const ContactProfile& p, int order) {
  ContactProfile u = p;
  u.pressure = UniformPressure{1.0};
  return pressure_center(u, order);
}
}  // namespace detail

/// Friction coefficient scaled by (1 + offset).
inline ContactProfile with_friction_offset(ContactProfile p, double offset) {
  if (!(1 + offset > 0)) throw DomainError("friction offset must be > -1");
  p.mu *= 1 + offset;
  return p;
}

/// Pressure replaced by a power law of exponent k about the geometric
/// center, with r_max at the contact boundary and the same total force.
inline ContactProfile with_pressure_exponent(const ContactProfile& p, double k,
                                             int order = default_quadrature_order()) {
  if (!(k > 0)) throw DomainError("power-law exponent must be positive");
  const double force = total_normal_force(p, order);
  ContactProfile out = p;
  out.pressure = fit_power_law(p.surface, k, RadialMode::Point, detail::geometric_center(p, order));
  return detail::with_total_force(out, force, order);
}

/// Contact lengthened by `factor`: parametric surfaces extend their v-range
/// from v0, meshes stretch along their longest bounding-box axis about the
/// box center. Total force is kept.
inline ContactProfile with_contact_length(const ContactProfile& p, double factor,
                                          int order = default_quadrature_order()) {
  if (!(factor > 0)) throw DomainError("contact length factor must be positive");
  const double force = total_normal_force(p, order);
  ContactProfile out = p;
  if (auto* ps = std::get_if<ParametricSurface>(&out.surface)) {
    ps->domain.v1 = ps->domain.v0 + factor * (ps->domain.v1 - ps->domain.v0);
  } else {
    const auto& mesh = std::get<TriangleMesh>(p.surface);
    const auto [lo, ext] = mesh.bounding_box();
    Eigen::Index axis = 0;
    ext.maxCoeff(&axis);
    const double mid = lo[axis] + 0.5 * ext[axis];
    std::vector<Vec3> verts = mesh.vertices();
    for (auto& v : verts) v[axis] = mid + factor * (v[axis] - mid);
    out.surface = TriangleMesh(std::move(verts), mesh.faces(), 0.0, false);
  }
  if (std::holds_alternative<PowerLawPressure>(out.pressure)) {
    const auto& pl = std::get<PowerLawPressure>(out.pressure);
    out.pressure = fit_power_law(out.surface, pl.k, pl.mode, detail::geometric_center(out, order));
  }
  return detail::with_total_force(out, force, order);
}

inline ContactProfile apply_sweep(const ContactProfile& p, SweepKind kind, double value,
                                  int order = default_quadrature_order()) {
  switch (kind) {
    case SweepKind::FrictionOffset: return with_friction_offset(p, value);
    case SweepKind::PressureExponent: return with_pressure_exponent(p, value, order);
    case SweepKind::ContactLength: return with_contact_length(p, value, order);
  }
  return p;
}

struct SweepRow {
  SweepKind kind = SweepKind::FrictionOffset;
  double value = 0.0;
  ModelKind model = ModelKind::Quartic;
  ContactModelType contact_model = ContactModelType::SixD;
  std::size_t positives = 0;
  std::optional<Confusion> metrics;
};

struct SweepOptions {
  std::vector<ModelKind> models{ModelKind::Quartic};
  std::vector<ContactModelType> contact_models{ContactModelType::SixD};
};

/// Re-predicts the batch for every sweep value and model combination.
/// Contacts given only by cache key cannot be modified and are rejected.
inline std::vector<SweepRow> sensitivity_sweep(const std::vector<GraspSpec>& grasps, SweepKind kind,
                                               const std::vector<double>& values, const SweepOptions& opt = {},
                                               ConstraintCache* cache = nullptr) {
  if (grasps.empty()) throw ValidationError("grasps", "batch is empty");
  if (values.empty()) throw DomainError("sweep has no values");
  for (const auto& g : grasps)
    for (const auto& c : g.contacts)
      if (!c.profile) throw ValidationError("contacts", "sweeps need explicit contact profiles, not cache keys");
  std::vector<SweepRow> rows;
  for (ModelKind model : opt.models)
    for (ContactModelType cm : opt.contact_models)
      for (double value : values) {
        std::vector<GraspSpec> swept = grasps;
        for (auto& g : swept) {
          g.options.kind = model;
          g.options.contact_model = cm;
          for (auto& c : g.contacts) c.profile = apply_sweep(*c.profile, kind, value, g.options.quadrature_order);
        }
        const BatchResult r = predict_batch(swept, cache);
        SweepRow row;
        row.kind = kind;
        row.value = value;
        row.model = model;
        row.contact_model = cm;
        for (const auto& p : r.predictions) row.positives += static_cast<std::size_t>(p.result.y);
        row.metrics = r.metrics;
        rows.push_back(row);
      }
  return rows;
}

}  // namespace sixdls

#endif  // SIXDLS_STUDY_HPP_
