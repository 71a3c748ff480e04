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

// Acceptance checks. Prints one PASS/FAIL line per criterion followed by the
// measured values; exits nonzero if any hard criterion fails.

#include <chrono>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "sixdls.hpp"

using namespace sixdls;

namespace {

// 1. worked example
constexpr double kWorkedRelTol = 5e-3;
constexpr double kWorkedZeroTol = 1e-5;
constexpr double kWorkedSeconds = 5;
// 2. maxima on S1
constexpr double kMaxAbsTol = 0.02;
constexpr double kMaxZeroTol = 1e-12;
constexpr std::size_t kDenseTwists = 2000;
constexpr double kMaxSeconds = 120;
// 3. mesh convergence
constexpr double kConv300 = 0.04;
constexpr double kConv1000 = 0.01;
constexpr double kConvSeconds = 300;
// 4. fitting error
constexpr std::size_t kFitSamples = 600;
constexpr std::size_t kEvalSamples = 20000;
constexpr double kEllipsoidSoft = 0.05;
constexpr double kQuarticSoft = 0.03;
constexpr double kFitSeconds = 900;
// 5. PCA
constexpr int kMinComponents = 5;
constexpr double kPcaThreshold = 0.01;
// 6. linearization
constexpr double kVertexTol = 1e-8;
// 7. oracles
constexpr int kOracleInstances = 200;
constexpr double kOracleMargin = 1e-6;
constexpr int kContainmentPairs = 20;
constexpr double kMembershipTol = 1e-9;
// 8. invariance
constexpr int kTranslations = 50;
constexpr int kMonotoneGrasps = 50;
constexpr double kScaleRelTol = 1e-12;

const std::vector<SurfaceKind> kSurfaces{SurfaceKind::S1, SurfaceKind::S2, SurfaceKind::S3,
                                         SurfaceKind::S4, SurfaceKind::S5, SurfaceKind::S6};

struct Outcome {
  bool pass = true;
  std::vector<std::string> lines;

  void note(const char* fmt, ...) __attribute__((format(printf, 2, 3))) {
    char buf[512];
    va_list ap;
    va_start(ap, fmt);
    std::vsnprintf(buf, sizeof buf, fmt, ap);
    va_end(ap);
    lines.emplace_back(buf);
  }
  void check(bool ok, const char* fmt, ...) __attribute__((format(printf, 3, 4))) {
    char buf[512];
    va_list ap;
    va_start(ap, fmt);
    std::vsnprintf(buf, sizeof buf, fmt, ap);
    va_end(ap);
    lines.push_back(std::string(ok ? "ok    " : "FAIL  ") + buf);
    pass = pass && ok;
  }
};

int failures = 0;

void report(int id, const std::string& title, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.check(false, "exception: %s", e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("[%s] criterion %d: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", id, title.c_str(), secs);
  for (const auto& l : o.lines) std::printf("        %s\n", l.c_str());
  std::fflush(stdout);
  if (!o.pass) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool rel_close(double got, double want, double tol) { return std::abs(got - want) <= tol * std::abs(want); }

ContactProfile standard_profile(SurfaceKind k, double mu) {
  return {ParametricSurface::standard(k), UniformPressure{1.0}, mu};
}

Mat3 random_rotation(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  Eigen::Quaterniond q(n(rng), n(rng), n(rng), n(rng));
  q.normalize();
  return q.toRotationMatrix();
}

Vec3 random_vec(std::mt19937_64& rng, double half) {
  std::uniform_real_distribution<double> u(-half, half);
  return {u(rng), u(rng), u(rng)};
}

Wrench6 random_direction(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  Wrench6 d;
  for (int k = 0; k < 6; ++k) d[k] = n(rng);
  return d.normalized();
}

// Fits shared by criteria 4-6.
struct SuiteFit {
  SurfaceKind surface;
  ModelKind kind;
  ContactFit fit;
  ContactProfile unit_local;
};

std::vector<SuiteFit>& suite() {
  static std::vector<SuiteFit> fits;
  if (fits.empty()) {
    for (SurfaceKind s : kSurfaces) {
      const ContactProfile p = standard_profile(s, 1.0);
      const ContactProfile local = normalized(to_local_contact_frame(p).profile);
      for (ModelKind k : {ModelKind::Ellipsoid, ModelKind::Quartic}) {
        PipelineOptions opt;
        opt.kind = k;
        opt.twist_count = kFitSamples;
        opt.seed = 1;
        fits.push_back({s, k, fit_contact(p, opt), local});
      }
    }
  }
  return fits;
}

// --------------------------------------------------------------------------

void worked_example(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  ParametricSurface s = ParametricSurface::standard(SurfaceKind::S2);
  s.a = 0.02;
  s.b = 0.02;
  s.domain = {0.25 * kPi, 0.75 * kPi, -0.05, -0.03};
  const ContactProfile p{s, UniformPressure{1000.0}, 0.3};
  const LocalFrame lf = to_local_contact_frame(p);
  const auto [unit, F] = normalize_pressure(lf.profile);
  const double p_hat = std::get<UniformPressure>(unit).value;
  const Wrench6 wn = normal_wrench(lf.profile);
  const UnitTwist rot = UnitTwist::rotation_about(Vec3::Zero(), Vec3(0, -1, 0));
  const Wrench6 wf = frictional_wrench_parametric(lf.profile, rot);
  const double secs = seconds_since(t0);

  o.check(rel_close(F, 0.6283, kWorkedRelTol), "F = %.6f (expect 0.6283 +- %.1f%%)", F, 100 * kWorkedRelTol);
  o.check(rel_close(p_hat, 1592, kWorkedRelTol), "normalized pressure = %.3f (expect 1592)", p_hat);
  bool zeros = true;
  for (int k : {0, 2, 3, 4, 5}) zeros = zeros && std::abs(wn[k]) <= kWorkedZeroTol;
  o.check(rel_close(wn[1], -0.5657, kWorkedRelTol) && zeros,
          "normal wrench = (%.3g, %.6f, %.3g, %.3g, %.3g, %.3g) (expect (0, -0.5657, 0, 0, 0, 0))", wn[0], wn[1],
          wn[2], wn[3], wn[4], wn[5]);
  zeros = true;
  for (int k : {0, 1, 2, 3, 5}) zeros = zeros && std::abs(wf[k]) <= kWorkedZeroTol;
  o.check(zeros, "frictional wrench zero components max |.| = %.3g",
          std::max({std::abs(wf[0]), std::abs(wf[1]), std::abs(wf[2]), std::abs(wf[3]), std::abs(wf[5])}));
  o.check(rel_close(wf[4], 0.0018, kWorkedRelTol), "frictional tau_y = %.8f (expect 0.0018 +- %.1f%%, deviation %.2f%%)",
          wf[4], 100 * kWorkedRelTol, 100 * std::abs(wf[4] - 0.0018) / 0.0018);
  o.check(secs < kWorkedSeconds, "runtime %.3f s < %.0f s", secs, kWorkedSeconds);
}

void table_maxima(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  const ContactProfile p = standard_profile(SurfaceKind::S1, 1.0);
  const ContactProfile local = normalized(to_local_contact_frame(p).profile);
  const auto twists = sample_unit_twists(local, kDenseTwists, 1);
  const Wrench6 wm = sample_wrench_set(local, twists).w_max;
  const Wrench6 want6 = (Wrench6() << 0.64, 0.64, 1.00, 0.34, 0.69, 0.59).finished();
  bool ok = true;
  for (int k = 0; k < 6; ++k) ok = ok && std::abs(wm[k] - want6[k]) <= kMaxAbsTol;
  o.check(ok, "6D w_max = (%.4f, %.4f, %.4f, %.4f, %.4f, %.4f), expect (0.64, 0.64, 1.00, 0.34, 0.69, 0.59) +- %.2f",
          wm[0], wm[1], wm[2], wm[3], wm[4], wm[5], kMaxAbsTol);

  const PlanarContact pc = project_to_plane(local, 1);
  const auto ptw = sample_planar_twists(pc, longest_bounding_side(local.surface), kDenseTwists, 1);
  Vec3 m3 = Vec3::Zero();
  for (const auto& t : ptw) m3 = m3.cwiseMax(planar_wrench_baseline(pc, t).cwiseAbs());
  o.check(std::abs(m3[0] - 1.0) <= kMaxAbsTol && std::abs(m3[1] - 1.0) <= kMaxAbsTol &&
              std::abs(m3[2] - 0.59) <= kMaxAbsTol,
          "planar (f_x, f_z, tau_y) = (%.4f, %.4f, %.4f), expect (1.00, 1.00, 0.59) +- %.2f", m3[0], m3[1], m3[2],
          kMaxAbsTol);

  PipelineOptions opt;
  opt.contact_model = ContactModelType::NonplanarThreeD;
  opt.twist_count = kDenseTwists;
  const Wrench6 wr = fit_contact(p, opt).contact.constraints.w_max;
  const Wrench6 want3 = (Wrench6() << 0.64, 0, 1.00, 0, 0.69, 0).finished();
  ok = true;
  for (int k = 0; k < 6; ++k)
    ok = ok && (want3[k] == 0 ? std::abs(wr[k]) <= kMaxZeroTol : std::abs(wr[k] - want3[k]) <= kMaxAbsTol);
  o.check(ok, "3D nonplanar w_max = (%.4f, %.3g, %.4f, %.3g, %.4f, %.3g), expect (0.64, 0, 1.00, 0, 0.69, 0)", wr[0],
          wr[1], wr[2], wr[3], wr[4], wr[5]);
  const double secs = seconds_since(t0);
  o.check(secs < kMaxSeconds, "runtime %.1f s < %.0f s", secs, kMaxSeconds);
}

void convergence(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto rows = convergence_study(kSurfaces, {300, 1000});
  std::map<SurfaceKind, double> at300;
  for (const auto& r : rows) {
    const double lim = r.target_triangles == 300 ? kConv300 : kConv1000;
    o.check(r.error_rate < lim, "%s @ %d (%zu faces): error rate %.3f%% < %.0f%%", to_string(r.surface),
            r.target_triangles, r.triangles, 100 * r.error_rate, 100 * lim);
    if (r.target_triangles == 300) at300[r.surface] = r.error_rate;
  }
  double worst12 = std::max(at300[SurfaceKind::S1], at300[SurfaceKind::S2]);
  double best_rest = 1e9;
  for (SurfaceKind s : {SurfaceKind::S3, SurfaceKind::S4, SurfaceKind::S5, SurfaceKind::S6})
    best_rest = std::min(best_rest, at300[s]);
  o.check(worst12 < best_rest, "S1/S2 lowest at 300: max(S1,S2) = %.3f%% < min(S3..S6) = %.3f%%", 100 * worst12,
          100 * best_rest);
  const double secs = seconds_since(t0);
  o.check(secs < kConvSeconds, "runtime %.1f s < %.0f s", secs, kConvSeconds);
}

void fit_errors(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  auto& fits = suite();
  for (std::size_t i = 0; i < fits.size(); i += 2) {
    const auto& e = fits[i];
    const auto& q = fits[i + 1];
    const auto twists = sample_unit_twists(e.unit_local, kEvalSamples, 2);
    const auto eval = sample_wrench_set(e.unit_local, twists);
    const MatX em = component_matrix(normalize_with(eval.samples, e.fit.contact.constraints.w_max));
    const MatX qm = component_matrix(normalize_with(eval.samples, q.fit.contact.constraints.w_max));
    const double ee = fitting_error(e.fit.model, em);
    const double qe = fitting_error(q.fit.model, qm);
    o.check(qe < ee, "%s: quartic %.4f < ellipsoid %.4f (fit-set: %.4f / %.4f)", to_string(e.surface), qe, ee,
            q.fit.report.fit_error, e.fit.report.fit_error);
    o.note("soft  %s: ellipsoid %.4f %s %.2f, quartic %.4f %s %.2f (reported only)", to_string(e.surface), ee,
           ee <= kEllipsoidSoft ? "<=" : ">", kEllipsoidSoft, qe, qe <= kQuarticSoft ? "<=" : ">", kQuarticSoft);
  }
  const double secs = seconds_since(t0);
  o.check(secs < kFitSeconds, "runtime %.1f s < %.0f s", secs, kFitSeconds);
}

void pca(Outcome& o) {
  auto& fits = suite();
  for (std::size_t i = 0; i < fits.size(); i += 2) {
    const int n = pca_significant_components(fits[i].fit.fit_samples, kPcaThreshold);
    o.check(n >= kMinComponents, "%s: %d significant components (>= %d)", to_string(fits[i].surface), n,
            kMinComponents);
  }
}

void linearization(Outcome& o) {
  std::vector<std::pair<std::string, ContactFit>> models;
  for (auto& f : suite())
    models.emplace_back(std::string(to_string(f.surface)) + " 6dls " + to_string(f.kind), f.fit);
  for (SurfaceKind s : kSurfaces)
    for (ModelKind k : {ModelKind::Ellipsoid, ModelKind::Quartic})
      for (ContactModelType cm : {ContactModelType::NonplanarThreeD, ContactModelType::PlanarThreeD}) {
        PipelineOptions opt;
        opt.kind = k;
        opt.contact_model = cm;
        models.emplace_back(std::string(to_string(s)) + " " + to_string(cm) + " " + to_string(k),
                            fit_contact(standard_profile(s, 1.0), opt));
      }
  std::size_t total = 0, on_surface = 0, converged = 0, directions = 0;
  double worst = 0;
  int max_iter = 0;
  for (const auto& [name, f] : models) {
    const auto& set = f.normalized_vertices;
    for (const auto& v : set.vertices) {
      const double dev = std::abs(eval_ls(f.model, restrict_to(v, set.components)) - 1.0);
      worst = std::max(worst, dev);
      on_surface += dev <= kVertexTol;
      ++total;
    }
    const int d = model_dim(f.model);
    for (const auto& dir : sample_hypercube_surface(hypercube_point_count(3, d), d)) {
      ++directions;
      try {
        const auto hit = ray_intersect_ls(f.model, dir);
        max_iter = std::max(max_iter, hit.iterations);
        ++converged;
      } catch (const NumericalError&) {
      }
    }
  }
  o.check(on_surface == total, "%zu/%zu vertices with |f - 1| <= %.0e over %zu models (worst %.2e)", on_surface, total,
          kVertexTol, models.size(), worst);
  o.check(converged == directions, "Newton from gamma = 1 converged on %zu/%zu directions (max %d iterations)",
          converged, directions, max_iter);
}

void oracles(Outcome& o) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  // Part A: LP vs facet mode.
  int agree = 0, compared = 0, skipped = 0, fallbacks = 0;
  // Single 6D contacts: two 3D contacts always span at most five wrench
  // dimensions, and two 6D contacts give too many Minkowski points for an
  // explicit hull.
  int grasp_id = 0;
  while (compared < kOracleInstances) {
    const SurfaceKind s = kSurfaces[rng() % kSurfaces.size()];
    const double mu = 0.2 + 0.8 * unit(rng);
    PipelineOptions opt;
    opt.kind = grasp_id % 2 == 0 ? ModelKind::Quartic : ModelKind::Ellipsoid;
    const ContactFit f = fit_contact(standard_profile(s, mu), opt);
    ContactPlacement pl;
    pl.R = random_rotation(rng);
    pl.t = random_vec(rng, 0.5);
    pl.force = 0.5 + unit(rng);
    std::vector<std::vector<Wrench6>> sets{contact_constraints(f.contact.constraints, f.contact.normal_wrench, pl)};
    const GraspWrenchSpace gws = build_gws(std::move(sets));
    const Wrench6 g = gws.centroid();
    for (int k = 0; k < 20 && compared < kOracleInstances; ++k) {
      const Wrench6 d = random_direction(rng) * gws.scale();
      const double reach = max_ray_scale_lp(gws, g + d);
      const Wrench6 q = g + (0.3 + 1.4 * unit(rng)) * reach * d;
      const PredictionResult lp = predict(gws, -q, PredictMode::LP);
      if (std::abs(lp.margin) <= kOracleMargin) {
        ++skipped;
        continue;
      }
      const PredictionResult fc = predict(gws, -q, PredictMode::Facet);
      fallbacks += fc.fallback;
      agree += lp.y == fc.y;
      ++compared;
    }
    ++grasp_id;
  }
  o.check(agree == compared && fallbacks == 0,
          "LP and facet predictions agree on %d/%d instances over %d grasps (%d near-boundary skipped, %d fallbacks)",
          agree, compared, grasp_id, skipped, fallbacks);

  // Part B: every 3D nonplanar generator inside the 6D wrench space.
  int pairs_ok = 0;
  std::size_t outside_total = 0, generators_total = 0;
  double worst_scale = 1e300;
  for (int i = 0; i < kContainmentPairs; ++i) {
    PipelineOptions o6;
    o6.kind = i % 2 == 0 ? ModelKind::Quartic : ModelKind::Ellipsoid;
    PipelineOptions o3 = o6;
    o3.contact_model = ContactModelType::NonplanarThreeD;
    const double mu = 0.2 + 0.8 * unit(rng);
    std::vector<std::vector<Wrench6>> s6, s3;
    for (int c = 0; c < 2; ++c) {
      const ContactProfile p = standard_profile(kSurfaces[rng() % kSurfaces.size()], mu);
      const ContactFit f6 = fit_contact(p, o6);
      const ContactFit f3 = fit_contact(p, o3);
      ContactPlacement pl;
      pl.R = random_rotation(rng);
      pl.t = random_vec(rng, 0.5);
      pl.force = 0.5 + unit(rng);
      s6.push_back(contact_constraints(f6.contact.constraints, f6.contact.normal_wrench, pl));
      s3.push_back(contact_constraints(f3.contact.constraints, f3.contact.normal_wrench, pl));
    }
    const GraspWrenchSpace w6 = build_gws(s6);
    std::size_t outside = 0;
    for (const auto& a : s3[0])
      for (const auto& b : s3[1]) {
        const double t = max_ray_scale_lp(w6, a + b);
        worst_scale = std::min(worst_scale, t);
        outside += t < 1.0 - kMembershipTol;
        ++generators_total;
      }
    outside_total += outside;
    pairs_ok += outside == 0;
  }
  o.check(pairs_ok == kContainmentPairs,
          "6D wrench space contains every 3D nonplanar generator on %d/%d contact pairs "
          "(%zu/%zu generators outside, smallest ray scale %.4f)",
          pairs_ok, kContainmentPairs, outside_total, generators_total, worst_scale);
}

// Two-jaw grasp over standard surfaces, jaws facing each other along y.
GraspSpec jaw_grasp(SurfaceKind a, SurfaceKind b, double mu, std::mt19937_64& rng) {
  GraspSpec g;
  g.options.kind = ModelKind::Quartic;
  for (int c = 0; c < 2; ++c) {
    GraspContact gc;
    gc.profile = standard_profile(c == 0 ? a : b, mu);
    const Mat3 flip = c == 0 ? Mat3::Identity() : Mat3(Eigen::AngleAxisd(kPi, Vec3::UnitZ()));
    gc.placement.R = Eigen::AngleAxisd(0.2 * (static_cast<double>(rng() % 1000) / 1000.0 - 0.5), Vec3::UnitX()) * flip;
    gc.placement.t = gc.placement.R * Vec3(0, 0.6, 0) + random_vec(rng, 0.05);
    g.contacts.push_back(gc);
  }
  return g;
}

void invariance(Outcome& o) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  ConstraintCache cache;

  // Reference-point invariance.
  std::vector<GraspSpec> base;
  for (int i = 0; i < 10; ++i)
    base.push_back(jaw_grasp(kSurfaces[i % 6], kSurfaces[(i + 2) % 6], 0.3, rng));
  int same = 0, positives = 0;
  for (int i = 0; i < kTranslations; ++i) {
    GraspSpec g = base[i % base.size()];
    const GraspPrediction ref0 = predict_grasp(g, &cache);
    const Wrench6 gcen = ref0.gws.centroid();
    const Wrench6 d = random_direction(rng) * ref0.gws.scale();
    const double reach = max_ray_scale_lp(ref0.gws, gcen + d);
    const Wrench6 q = gcen + (0.5 + unit(rng)) * reach * d;
    g.w_ext = -q;
    const int y0 = predict_grasp(g, &cache).result.y;
    const Vec3 delta = random_vec(rng, 2.0);
    GraspSpec moved = g;
    for (auto& c : moved.contacts) c.placement.t += delta;
    moved.w_ext.tail<3>() += delta.cross(Vec3(g.w_ext.head<3>()));
    const int y1 = predict_grasp(moved, &cache).result.y;
    same += y0 == y1;
    positives += y0;
  }
  o.check(same == kTranslations, "y unchanged under %d/%d frame translations (%d positive)", same, kTranslations,
          positives);

  // Monotonicity in the friction coefficient.
  int monotone = 0;
  int counts[3] = {0, 0, 0};
  for (int i = 0; i < kMonotoneGrasps; ++i) {
    const SurfaceKind a = kSurfaces[rng() % 6], b = kSurfaces[rng() % 6];
    std::mt19937_64 place(1000 + static_cast<unsigned>(i));
    GraspSpec mid = jaw_grasp(a, b, 0.3, place);
    const GraspPrediction ref0 = predict_grasp(mid, &cache);
    const Wrench6 gcen = ref0.gws.centroid();
    const Wrench6 d = random_direction(rng) * ref0.gws.scale();
    const double reach = max_ray_scale_lp(ref0.gws, gcen + d);
    const Wrench6 w_ext = -(gcen + (0.6 + 0.8 * unit(rng)) * reach * d);
    int y[3];
    const double mus[3] = {0.2, 0.3, 0.4};
    for (int m = 0; m < 3; ++m) {
      std::mt19937_64 p2(1000 + static_cast<unsigned>(i));
      GraspSpec g = jaw_grasp(a, b, mus[m], p2);
      g.w_ext = w_ext;
      y[m] = predict_grasp(g, &cache).result.y;
      counts[m] += y[m];
    }
    monotone += y[0] <= y[1] && y[1] <= y[2];
  }
  o.check(monotone == kMonotoneGrasps, "y nondecreasing over mu in {0.2, 0.3, 0.4} on %d/%d grasps (positives %d/%d/%d)",
          monotone, kMonotoneGrasps, counts[0], counts[1], counts[2]);

  // Keys under pressure scaling.
  std::vector<ContactProfile> profiles;
  for (SurfaceKind s : kSurfaces) profiles.push_back(standard_profile(s, 0.3));
  ContactProfile pl = standard_profile(SurfaceKind::S3, 0.5);
  pl.pressure = fit_power_law(pl.surface, 2.4, RadialMode::Point, pressure_center(pl), 3.0);
  profiles.push_back(pl);
  ContactProfile mesh = tessellate(standard_profile(SurfaceKind::S4, 0.4), 300);
  std::vector<double> vals(std::get<TriangleMesh>(mesh.surface).size());
  for (std::size_t i = 0; i < vals.size(); ++i) vals[i] = 1.0 + 0.5 * std::sin(0.37 * static_cast<double>(i));
  mesh.pressure = PerElementPressure{vals};
  profiles.push_back(mesh);
  int keys_equal = 0, key_checks = 0;
  for (const auto& p : profiles) {
    const std::string k0 = canonical_key(p);
    for (double lambda : {1e-3, 0.5, 2.0, 7.3, 1e4}) {
      ContactProfile q = p;
      q.pressure = scaled(p.pressure, lambda);
      keys_equal += canonical_key(q) == k0;
      ++key_checks;
    }
  }
  o.check(keys_equal == key_checks, "cache key unchanged under pressure scaling on %d/%d cases", keys_equal,
          key_checks);

  // Linear scaling of denormalized constraints.
  const ContactFit f = fit_contact(standard_profile(SurfaceKind::S5, 0.3), PipelineOptions{});
  double worst = 0;
  for (double lambda : {0.25, 2.0, 10.0}) {
    ContactPlacement a, b;
    a.R = b.R = random_rotation(rng);
    a.t = b.t = random_vec(rng, 0.5);
    a.force = 1.3;
    b.force = 1.3 * lambda;
    const auto ca = contact_constraints(f.contact.constraints, f.contact.normal_wrench, a);
    const auto cb = contact_constraints(f.contact.constraints, f.contact.normal_wrench, b);
    for (std::size_t i = 0; i < ca.size(); ++i)
      worst = std::max(worst, (cb[i] - lambda * ca[i]).norm() / std::max(1e-300, (lambda * ca[i]).norm()));
    const ConstraintSet d1 = denormalize(f.normalized_vertices, f.contact.constraints.w_max);
    const ConstraintSet d2 = denormalize(f.normalized_vertices, lambda * f.contact.constraints.w_max);
    for (std::size_t i = 0; i < d1.size(); ++i)
      if (d1.vertices[i].norm() > 0)
        worst = std::max(worst, (d2.vertices[i] - lambda * d1.vertices[i]).norm() / (lambda * d1.vertices[i]).norm());
  }
  o.check(worst <= kScaleRelTol, "constraints scale linearly with F and w_max (worst relative deviation %.2e <= %.0e)",
          worst, kScaleRelTol);
}

}  // namespace

int main() {
  std::printf("sixdls acceptance\n");
  report(1, "worked example (elliptic cylinder, uniform 1e3 Pa, mu = 0.3)", worked_example);
  report(2, "w_max of S1 (6D, planar projection, 3D nonplanar)", table_maxima);
  report(3, "mesh convergence of w_max", convergence);
  report(4, "quartic vs ellipsoid fitting error", fit_errors);
  report(5, "significant principal components", pca);
  report(6, "linearization vertices and ray intersection", linearization);
  report(7, "LP/facet agreement and 6D vs 3D wrench space containment", oracles);
  report(8, "invariance suite", invariance);
  std::printf("[INFO] criterion 9: not reproducible here: FEM contact fit errors (0.011/0.019), the 1,035-grasp "
              "precision/recall table (66.8%%/76.9%%), runtime plots and sensitivity magnitudes need the physical "
              "dataset; trend checks above and the CLI sweeps stand in for them\n");
  std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
