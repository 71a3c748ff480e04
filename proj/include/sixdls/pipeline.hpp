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

// End-to-end contact modeling and grasp prediction:
//
//   profile -> unit-force profile in its contact frame -> twist samples ->
//   wrenches -> normalized fit -> ray linearization -> denormalized vertices
//
// and for a grasp, per contact: cache lookup or fit, object-frame
// constraints, Minkowski-sum wrench space, resistance test.

#ifndef SIXDLS_PIPELINE_HPP_
#define SIXDLS_PIPELINE_HPP_

#include <atomic>
#include <optional>
#include <string>
#include <vector>

#include "sixdls/cache.hpp"
#include "sixdls/gws.hpp"
#include "sixdls/io.hpp"
#include "sixdls/kinematics.hpp"
#include "sixdls/limit_surface.hpp"
#include "sixdls/linearize.hpp"
#include "sixdls/wrench.hpp"

namespace sixdls {

enum class ModelKind { Ellipsoid, Quartic };

/// Which wrench space the limit surface is fit in.
enum class ContactModelType {
  SixD,             // all six components of the contact wrenches
  NonplanarThreeD,  // three components of the 6D wrenches, others zero
  PlanarThreeD,     // wrenches of the contact flattened onto a plane
};

inline const char* to_string(ModelKind k) { return k == ModelKind::Ellipsoid ? "ellipsoid" : "quartic"; }

inline ModelKind model_kind_from_string(const std::string& s) {
  if (s == "ellipsoid") return ModelKind::Ellipsoid;
  if (s == "quartic") return ModelKind::Quartic;
  throw ValidationError("model", "expected \"ellipsoid\" or \"quartic\", got '" + s + "'");
}

inline const char* to_string(ContactModelType t) {
  switch (t) {
    case ContactModelType::SixD: return "6dls";
    case ContactModelType::NonplanarThreeD: return "3dls-nonplanar";
    case ContactModelType::PlanarThreeD: return "3dls-planar";
  }
  return "";
}

inline ContactModelType contact_model_from_string(const std::string& s) {
  if (s == "6dls") return ContactModelType::SixD;
  if (s == "3dls-nonplanar") return ContactModelType::NonplanarThreeD;
  if (s == "3dls-planar") return ContactModelType::PlanarThreeD;
  throw ValidationError("contact_model", "expected 6dls, 3dls-nonplanar or 3dls-planar, got '" + s + "'");
}

struct PipelineOptions {
  ModelKind kind = ModelKind::Quartic;
  ContactModelType contact_model = ContactModelType::SixD;
  std::size_t twist_count = 600;
  std::uint64_t seed = 1;
  std::size_t vertex_count = 0;  // 0: 3^d - 1 (728 in 6D, 26 in 3D)
  int normal_axis = 1;           // plane normal for the 3D variants
  int quadrature_order = default_quadrature_order();
  QuarticFitOptions quartic;

  int model_dim() const { return contact_model == ContactModelType::SixD ? 6 : 3; }

  std::size_t vertices() const {
    return vertex_count ? vertex_count : hypercube_point_count(3, model_dim());
  }

  KeyOptions key_options() const {
    KeyOptions k;
    k.model_kind = to_string(kind);
    k.vertex_count = vertices();
    k.contact_model = to_string(contact_model);
    if (contact_model != ContactModelType::SixD) k.contact_model += "/axis" + std::to_string(normal_axis);
    k.twist_count = twist_count;
    k.seed = seed;
    k.quadrature_order = quadrature_order;
    return k;
  }
};

/// Number of limit-surface fits executed in this process.
inline std::atomic<std::size_t>& fit_counter() {
  static std::atomic<std::size_t> n{0};
  return n;
}

struct ContactFit {
  LimitSurfaceModel model;
  FitReport report;
  MatX fit_samples;            // normalized samples used for the fit (reduced components)
  std::vector<int> components;
  ConstraintSet normalized_vertices;
  CachedContact contact;       // unit-force constraints and normal wrench
  double force = 0.0;          // total normal force of the input profile
  Vec3 pressure_center = Vec3::Zero();
};

inline LimitSurfaceModel fit_model(const MatX& samples, ModelKind kind, FitReport& report,
                                   const QuarticFitOptions& qopt = {}) {
  if (kind == ModelKind::Ellipsoid) {
    auto [m, r] = fit_ellipsoid(samples);
    report = r;
    return m;
  }
  auto [m, r] = fit_quartic(samples, qopt);
  report = r;
  return m;
}

/// Fits one contact and linearizes its limit surface.
inline ContactFit fit_contact(const ContactProfile& profile, const PipelineOptions& opt) {
  profile.validate();
  const int order = opt.quadrature_order;
  const LocalFrame lf = to_local_contact_frame(profile, order);
  const auto [unit_pressure, force] = normalize_pressure(lf.profile, order);
  ContactProfile unit = lf.profile;
  unit.pressure = unit_pressure;

  ContactFit out;
  out.force = force;
  out.pressure_center = lf.origin;
  Wrench6 w_max;
  const Wrench6 normal = normal_wrench(unit, order);

  if (opt.contact_model == ContactModelType::PlanarThreeD) {
    const auto comps = planar_components(opt.normal_axis);
    out.components.assign(comps.begin(), comps.end());
    const PlanarContact pc = project_to_plane(unit, opt.normal_axis, order);
    const auto twists = sample_planar_twists(pc, longest_bounding_side(unit.surface), opt.twist_count, opt.seed);
    std::vector<Vec3> w3(twists.size());
    parallel_for(twists.size(), [&](std::size_t i) { w3[i] = planar_wrench_baseline(pc, twists[i]); });
    Vec3 m3 = Vec3::Zero();
    for (const auto& w : w3) m3 = m3.cwiseMax(w.cwiseAbs());
    if (!(m3.minCoeff() > 0)) throw DegenerateError("planar wrenches have zero extent");
    out.fit_samples.resize(static_cast<Eigen::Index>(w3.size()), 3);
    for (std::size_t i = 0; i < w3.size(); ++i)
      out.fit_samples.row(static_cast<Eigen::Index>(i)) = w3[i].cwiseQuotient(m3).transpose();
    w_max = embed_planar(m3, opt.normal_axis);
    // Flat contact: the whole normal force along the plane normal, no torque
    // about its center.
    out.contact.normal_wrench = Wrench6::Zero();
    out.contact.normal_wrench[opt.normal_axis] = normal[opt.normal_axis] < 0 ? -1.0 : 1.0;
  } else {
    const auto twists = sample_unit_twists(unit, opt.twist_count, opt.seed);
    std::vector<int> required{0, 1, 2, 3, 4, 5};
    if (opt.contact_model == ContactModelType::NonplanarThreeD) {
      const auto comps = planar_components(opt.normal_axis);
      required.assign(comps.begin(), comps.end());
    }
    out.components = required;
    const WrenchSampleSet set = sample_wrench_set(unit, twists, order, required);
    out.fit_samples = component_matrix(set.normalized, out.components);
    w_max = Wrench6::Zero();
    for (int c : out.components) w_max[c] = set.w_max[c];
    out.contact.normal_wrench = normal;
  }

  out.model = fit_model(out.fit_samples, opt.kind, out.report, opt.quartic);
  ++fit_counter();
  out.normalized_vertices = linearize(out.model, opt.vertices(), out.components);
  out.contact.constraints = denormalize(out.normalized_vertices, w_max);
  return out;
}

// ---------------------------------------------------------------------------
// Grasps

struct GraspContact {
  std::optional<ContactProfile> profile;
  std::string key;  // cache key when the profile is given by reference
  ContactPlacement placement;
  bool force_given = false;  // Integral mode with an explicit F
};

struct GraspSpec {
  std::vector<GraspContact> contacts;
  Wrench6 w_ext = Wrench6::Zero();
  PipelineOptions options;
  std::optional<int> label;  // ground truth for batch evaluation
  std::string name;
};

struct ContactDiagnostics {
  std::string key;
  bool cache_hit = false;
  double force = 0.0;
  double scale = 0.0;
  std::size_t vertices = 0;
  std::optional<double> fit_error;
};

struct GraspPrediction {
  PredictionResult result;
  std::vector<ContactDiagnostics> per_contact;
  GraspWrenchSpace gws;
};

/// Contact constraints in the object frame for one grasp contact, using the
/// cache when available.
inline std::vector<Wrench6> grasp_contact_constraints(const GraspContact& gc, const PipelineOptions& opt,
                                                      ConstraintCache* cache, ContactDiagnostics& diag) {
  CachedContact entry;
  ContactPlacement placement = gc.placement;
  Vec3 center = Vec3::Zero();
  if (gc.profile) {
    const ContactProfile& profile = *gc.profile;
    diag.key = canonical_key(profile, opt.key_options());
    std::optional<CachedContact> hit;
    if (cache) hit = cache->get(diag.key);
    const int order = opt.quadrature_order;
    double force = 0.0;
    if (hit) {
      entry = *hit;
      diag.cache_hit = true;
      const LocalFrame lf = to_local_contact_frame(profile, order);
      center = lf.origin;
      force = total_normal_force(lf.profile, order);
    } else {
      ContactFit fit = fit_contact(profile, opt);
      entry = fit.contact;
      force = fit.force;
      center = fit.pressure_center;
      diag.fit_error = fit.report.fit_error;
      if (cache) cache->put(diag.key, entry);
    }
    if (placement.mode == ContactPlacement::ForceMode::Integral && !gc.force_given) placement.force = force;
    diag.force = force;
  } else {
    if (gc.key.empty()) throw ValidationError("contacts", "contact needs a profile or a cache key");
    if (!cache) throw StateError("a cache is required to resolve contact key " + gc.key);
    const auto hit = cache->get(gc.key);
    if (!hit) throw StateError("cache has no entry for key " + gc.key);
    if (placement.mode == ContactPlacement::ForceMode::Integral && !gc.force_given)
      throw ValidationError("contacts.force", "contacts given by key need an explicit F or sensor mode");
    entry = *hit;
    diag.key = gc.key;
    diag.cache_hit = true;
    diag.force = placement.force;
  }
  // Constraints are about the pressure center; place that point in the object frame.
  placement.t = placement.t + placement.R * center;
  diag.scale = placement_scale(placement, entry.normal_wrench);
  diag.vertices = entry.constraints.size();
  return contact_constraints(entry.constraints, entry.normal_wrench, placement);
}

inline GraspPrediction predict_grasp(const GraspSpec& spec, ConstraintCache* cache = nullptr,
                                     PredictMode mode = PredictMode::LP) {
  if (spec.contacts.empty()) throw ValidationError("contacts", "grasp needs at least one contact");
  GraspPrediction out;
  std::vector<std::vector<Wrench6>> sets;
  for (const auto& gc : spec.contacts) {
    ContactDiagnostics d;
    sets.push_back(grasp_contact_constraints(gc, spec.options, cache, d));
    out.per_contact.push_back(d);
  }
  out.gws = build_gws(std::move(sets));
  out.result = predict(out.gws, spec.w_ext, mode);
  return out;
}

// ---------------------------------------------------------------------------
// Grasp JSON

inline Mat3 rotation_from_json(const Json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 3) throw ValidationError(path, "expected a 3x3 matrix");
  Mat3 R;
  for (int r = 0; r < 3; ++r) {
    const auto row = detail::numbers(j[r], detail::join(path, r), 3);
    for (int c = 0; c < 3; ++c) R(r, c) = row[c];
  }
  return R;
}

/// Applies the optional pipeline fields of a grasp document.
inline PipelineOptions options_from_json(const Json& j, PipelineOptions opt, const std::string& path) {
  using namespace detail;
  if (j.contains("model")) opt.kind = model_kind_from_string(j.at("model").get<std::string>());
  if (j.contains("contact_model")) opt.contact_model = contact_model_from_string(j.at("contact_model").get<std::string>());
  if (j.contains("M")) {
    if (!j.at("M").is_number_integer() || j.at("M").get<long long>() <= 0)
      throw ValidationError(join(path, "M"), "expected a positive integer");
    opt.vertex_count = j.at("M").get<std::size_t>();
  }
  if (j.contains("twists")) {
    if (!j.at("twists").is_number_integer() || j.at("twists").get<long long>() < 12)
      throw ValidationError(join(path, "twists"), "expected an integer >= 12");
    opt.twist_count = j.at("twists").get<std::size_t>();
  }
  if (j.contains("seed")) opt.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("normal_axis")) opt.normal_axis = j.at("normal_axis").get<int>();
  return opt;
}

inline GraspSpec grasp_from_json(const Json& j, const PipelineOptions& defaults, const std::string& path = "",
                                 const std::string& base_dir = "") {
  using namespace detail;
  if (!j.is_object()) throw ValidationError(path, "expected an object");
  GraspSpec g;
  g.options = options_from_json(j, defaults, path);
  const Json& cj = require(j, "contacts", path);
  if (!cj.is_array() || cj.empty()) throw ValidationError(join(path, "contacts"), "expected a nonempty array");
  for (std::size_t i = 0; i < cj.size(); ++i) {
    const std::string cp = join(join(path, "contacts"), i);
    const Json& c = cj[i];
    GraspContact gc;
    const Json& pj = require(c, "profile", cp);
    if (pj.is_string()) {
      const std::string s = pj.get<std::string>();
      if (s.size() == 64 && s.find_first_not_of("0123456789abcdef") == std::string::npos) {
        gc.key = s;
      } else {
        std::filesystem::path p(s);
        if (p.is_relative() && !base_dir.empty()) p = std::filesystem::path(base_dir) / p;
        gc.profile = load_profile(p.string());
      }
    } else {
      gc.profile = profile_from_json(pj, join(cp, "profile"), base_dir);
    }
    if (c.contains("R")) gc.placement.R = rotation_from_json(c.at("R"), join(cp, "R"));
    if (c.contains("t")) gc.placement.t = vec3(c.at("t"), join(cp, "t"));
    if (c.contains("force")) {
      const Json& fj = c.at("force");
      const std::string fp = join(cp, "force");
      const std::string mode = require(fj, "mode", fp).get<std::string>();
      if (mode == "integral") {
        gc.placement.mode = ContactPlacement::ForceMode::Integral;
        if (fj.contains("F")) {
          gc.placement.force = number(fj.at("F"), join(fp, "F"));
          gc.force_given = true;
        }
      } else if (mode == "sensor") {
        gc.placement.mode = ContactPlacement::ForceMode::Sensor;
        gc.placement.sensor_force = number_field(fj, "F_s", fp);
      } else {
        throw ValidationError(join(fp, "mode"), "expected \"integral\" or \"sensor\"");
      }
    }
    try {
      gc.placement.validate();
    } catch (const DomainError& e) {
      throw ValidationError(cp, e.what());
    }
    g.contacts.push_back(std::move(gc));
  }
  g.w_ext = vec6(require(j, "w_ext", path), join(path, "w_ext"));
  if (j.contains("label")) {
    const Json& l = j.at("label");
    if (!l.is_number_integer() || (l.get<int>() != 0 && l.get<int>() != 1))
      throw ValidationError(join(path, "label"), "expected 0 or 1");
    g.label = l.get<int>();
  }
  if (j.contains("name")) g.name = j.at("name").get<std::string>();
  return g;
}

inline Json prediction_to_json(const GraspPrediction& p) {
  Json per = Json::array();
  for (const auto& d : p.per_contact) {
    Json c = {{"key", d.key}, {"cache_hit", d.cache_hit}, {"force", d.force}, {"scale", d.scale},
              {"vertices", d.vertices}};
    if (d.fit_error) c["fit_error"] = *d.fit_error;
    per.push_back(std::move(c));
  }
  return {{"v", kFormatVersion},
          {"y", p.result.y},
          {"margin", std::isfinite(p.result.margin) ? Json(p.result.margin) : Json("-inf")},
          {"mode", p.result.mode},
          {"fallback", p.result.fallback},
          {"per_contact", std::move(per)}};
}

}  // namespace sixdls

#endif  // SIXDLS_PIPELINE_HPP_
