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

#include <filesystem>
#include <fstream>

#include "sixdls.hpp"

namespace sixdls {
namespace {

namespace fs = std::filesystem;

const std::string kData = SIXDLS_DATA_DIR;

ContactProfile standard(SurfaceKind k, double mu = 0.5) {
  return {ParametricSurface::standard(k), UniformPressure{1.0}, mu};
}

// The jaw fit is shared by several tests.
const ContactFit& jaw_fit() {
  static const ContactFit f = fit_contact(load_profile(kData + "/profiles/jaw_cylinder.json"), PipelineOptions{});
  return f;
}

TEST(FitContact, SixDimensionalContact) {
  const ContactFit& f = jaw_fit();
  EXPECT_EQ(f.normalized_vertices.size(), 728u);
  EXPECT_EQ(f.contact.constraints.size(), 728u);
  EXPECT_FALSE(f.contact.constraints.normalized);
  EXPECT_LT(max_surface_deviation(f.model, f.normalized_vertices), 1e-10);
  EXPECT_NEAR(f.force, 3.062, 0.01);
  EXPECT_EQ(f.fit_samples.rows(), 600);
  // unit-force normal wrench: normals spread over the curved jaw, so |f_n| < 1
  const double fn = f.contact.normal_wrench.head<3>().norm();
  EXPECT_GT(fn, 0.5);
  EXPECT_LT(fn, 1.0);
  EXPECT_LT(f.report.fit_error, 0.05);
}

TEST(FitContact, ThreeDimensionalVariants) {
  for (auto cm : {ContactModelType::NonplanarThreeD, ContactModelType::PlanarThreeD}) {
    PipelineOptions opt;
    opt.contact_model = cm;
    opt.kind = ModelKind::Ellipsoid;
    const ContactFit f = fit_contact(standard(SurfaceKind::S1), opt);
    EXPECT_EQ(f.components, (std::vector<int>{0, 2, 4}));
    ASSERT_EQ(f.contact.constraints.size(), 26u);
    for (const auto& v : f.contact.constraints.vertices) EXPECT_EQ(v[1] + v[3] + v[5], 0.0);
    EXPECT_EQ(model_dim(f.model), 3);
  }
}

TEST(FitContact, BadVertexCountRejected) {
  PipelineOptions opt;
  opt.kind = ModelKind::Ellipsoid;
  opt.vertex_count = 100;
  EXPECT_THROW(fit_contact(standard(SurfaceKind::S3), opt), DomainError);
}

TEST(Options, NamesRoundTrip) {
  for (auto k : {ModelKind::Ellipsoid, ModelKind::Quartic}) EXPECT_EQ(model_kind_from_string(to_string(k)), k);
  for (auto c : {ContactModelType::SixD, ContactModelType::NonplanarThreeD, ContactModelType::PlanarThreeD})
    EXPECT_EQ(contact_model_from_string(to_string(c)), c);
  EXPECT_THROW(model_kind_from_string("cubic"), ValidationError);
  PipelineOptions o;
  EXPECT_EQ(o.vertices(), 728u);
  o.contact_model = ContactModelType::PlanarThreeD;
  EXPECT_EQ(o.vertices(), 26u);
}

TEST(Grasp, AntipodalLiftFromFile) {
  const std::string file = kData + "/grasps/antipodal.json";
  const GraspSpec g = grasp_from_json(read_json_file(file), PipelineOptions{}, "", fs::path(file).parent_path().string());
  ASSERT_EQ(g.contacts.size(), 2u);
  ConstraintCache cache;
  const std::size_t before = fit_counter();
  const GraspPrediction p = predict_grasp(g, &cache);
  EXPECT_EQ(fit_counter() - before, 1u);  // both jaws share one fit
  EXPECT_EQ(p.result.y, 1);
  EXPECT_NEAR(p.result.margin, 0.733, 0.01);
  EXPECT_FALSE(p.per_contact[0].cache_hit);
  EXPECT_TRUE(p.per_contact[1].cache_hit);
  EXPECT_EQ(p.per_contact[0].key, p.per_contact[1].key);

  // a load above the two-jaw friction capacity is not resisted
  GraspSpec heavy = g;
  heavy.w_ext[2] = -2.5;
  EXPECT_EQ(predict_grasp(heavy, &cache).result.y, 0);
  EXPECT_EQ(fit_counter() - before, 1u);
}

TEST(Grasp, ReferencePointInvariance) {
  const std::string file = kData + "/grasps/antipodal.json";
  GraspSpec g = grasp_from_json(read_json_file(file), PipelineOptions{}, "", fs::path(file).parent_path().string());
  g.w_ext << 0.3, -0.1, -1.2, 0.004, -0.01, 0.002;
  ConstraintCache cache;
  const double m0 = predict_grasp(g, &cache).result.margin;
  const Vec3 d(0.3, -0.7, 1.1);
  for (auto& c : g.contacts) c.placement.t += d;
  g.w_ext.tail<3>() += d.cross(Vec3(g.w_ext.head<3>()));
  EXPECT_NEAR(predict_grasp(g, &cache).result.margin, m0, 1e-7);
}

TEST(Grasp, KeyOnlyContactsNeedCacheAndForce) {
  const ContactFit& f = jaw_fit();
  GraspSpec g;
  GraspContact c;
  c.key = "deadbeef";
  g.contacts.push_back(c);
  EXPECT_THROW(predict_grasp(g, nullptr), StateError);
  ConstraintCache cache;
  EXPECT_THROW(predict_grasp(g, &cache), StateError);
  cache.put("deadbeef", f.contact);
  EXPECT_THROW(predict_grasp(g, &cache), ValidationError);
  g.contacts[0].force_given = true;
  g.contacts[0].placement.force = 2.0;
  const auto p = predict_grasp(g, &cache);
  EXPECT_TRUE(p.per_contact[0].cache_hit);
  EXPECT_EQ(p.per_contact[0].scale, 2.0);
  EXPECT_THROW(predict_grasp(GraspSpec{}, &cache), ValidationError);
}

TEST(Cache, PersistsAndRejectsCorruptEntries) {
  const fs::path dir = fs::temp_directory_path() / "sixdls_pipeline_cache";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const ContactFit& f = jaw_fit();
  {
    ConstraintCache c(dir.string());
    c.put("k1", f.contact);
  }
  ConstraintCache c(dir.string());
  const auto hit = c.get("k1");
  ASSERT_TRUE(hit.has_value());
  EXPECT_EQ(hit->normal_wrench, f.contact.normal_wrench);
  for (std::size_t i = 0; i < f.contact.constraints.size(); ++i)
    EXPECT_EQ(hit->constraints.vertices[i], f.contact.constraints.vertices[i]);
  EXPECT_EQ(c.hits(), 1u);

  std::ofstream(c.path_for("k2")) << "{ broken";
  EXPECT_FALSE(c.get("k2").has_value());
  fs::copy_file(c.path_for("k1"), c.path_for("k3"));  // stored key does not match
  EXPECT_FALSE(c.get("k3").has_value());
  EXPECT_EQ(c.misses(), 2u);
  fs::remove_all(dir);
}

TEST(Batch, LabeledLiftsAreClassified) {
  const std::string file = kData + "/grasps/batch.json";
  const auto grasps = batch_from_json(read_json_file(file), PipelineOptions{}, fs::path(file).parent_path().string());
  ASSERT_EQ(grasps.size(), 8u);
  ConstraintCache cache;
  const BatchResult r = predict_batch(grasps, &cache);
  ASSERT_TRUE(r.metrics.has_value());
  EXPECT_EQ(r.metrics->total(), 8u);
  EXPECT_EQ(r.metrics->accuracy(), 1.0);
  EXPECT_EQ(r.metrics->precision(), 1.0);
  EXPECT_THROW(predict_batch({}), ValidationError);
}

TEST(Metrics, Confusion) {
  Confusion c;
  c.add(1, 1);
  c.add(1, 0);
  c.add(0, 1);
  c.add(0, 0);
  c.add(1, 1);
  EXPECT_EQ(c.tp, 2u);
  EXPECT_DOUBLE_EQ(c.precision(), 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(c.recall(), 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(c.accuracy(), 0.6);
  EXPECT_EQ(Confusion{}.precision(), 0.0);
  EXPECT_EQ(confusion_to_json(c).at("fn"), 1);
}

TEST(Sweep, ProfileEdits) {
  const ContactProfile p = load_profile(kData + "/profiles/jaw_cylinder.json");
  const double force = total_normal_force(p);
  EXPECT_NEAR(with_friction_offset(p, -0.2).mu, 0.8 * p.mu, 1e-15);
  EXPECT_THROW(with_friction_offset(p, -1.0), DomainError);

  const ContactProfile k = with_pressure_exponent(p, 5.5);
  EXPECT_EQ(std::get<PowerLawPressure>(k.pressure).k, 5.5);
  EXPECT_NEAR(total_normal_force(k), force, 1e-9 * force);

  const ContactProfile l = with_contact_length(p, 1.3);
  const auto& s0 = std::get<ParametricSurface>(p.surface);
  const auto& s1 = std::get<ParametricSurface>(l.surface);
  EXPECT_NEAR(s1.domain.v1 - s1.domain.v0, 1.3 * (s0.domain.v1 - s0.domain.v0), 1e-15);
  EXPECT_NEAR(total_normal_force(l), force, 1e-9 * force);

  const ContactProfile mesh = load_profile(kData + "/profiles/cap_mesh.json");
  const ContactProfile ml = with_contact_length(mesh, 0.8);
  EXPECT_NEAR(total_normal_force(ml), total_normal_force(mesh), 1e-9 * total_normal_force(mesh));
  EXPECT_EQ(sweep_kind_from_string("length"), SweepKind::ContactLength);
  EXPECT_THROW(sweep_kind_from_string("width"), ValidationError);
}

TEST(Sweep, FrictionSweepIsMonotone) {
  const std::string file = kData + "/grasps/offset_loads.json";
  const auto grasps = batch_from_json(read_json_file(file), PipelineOptions{}, fs::path(file).parent_path().string());
  ConstraintCache cache;
  const auto rows = sensitivity_sweep(grasps, SweepKind::FrictionOffset, {-0.3, 0.0, 0.3}, {}, &cache);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_LE(rows[0].positives, rows[1].positives);
  EXPECT_LE(rows[1].positives, rows[2].positives);
  EXPECT_FALSE(rows[0].metrics.has_value());
  EXPECT_THROW(sensitivity_sweep(grasps, SweepKind::FrictionOffset, {}), DomainError);
}

TEST(Convergence, FinerMeshesAreCloser) {
  ConvergenceOptions o;
  o.twist_count = 200;
  const auto rows = convergence_study({SurfaceKind::S3}, {100, 1000}, o);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_LT(rows[1].error_rate, rows[0].error_rate);
  EXPECT_THROW(convergence_study({SurfaceKind::S3}, {0}), DomainError);
}

TEST(Threads, ParallelForMatchesSerial) {
  const int saved = thread_count();
  set_thread_count(4);
  std::vector<int> out(1000, 0);
  parallel_for(out.size(), [&](std::size_t i) {
    std::vector<int> inner(10, 0);
    parallel_for(inner.size(), [&](std::size_t j) { inner[j] = 1; });
    out[i] = static_cast<int>(i) + inner[9];
  });
  for (std::size_t i = 0; i < out.size(); ++i) EXPECT_EQ(out[i], static_cast<int>(i) + 1);
  set_thread_count(saved);
}

TEST(Threads, ResultsDoNotDependOnThreadCount) {
  const int saved = thread_count();
  set_thread_count(1);
  const ContactProfile p = normalized(to_local_contact_frame(standard(SurfaceKind::S6)).profile);
  const auto twists = sample_unit_twists(p, 200, 4);
  const auto a = sample_wrench_set(p, twists);
  set_thread_count(3);
  const auto b = sample_wrench_set(p, twists);
  set_thread_count(saved);
  for (std::size_t i = 0; i < a.samples.size(); ++i) EXPECT_EQ(a.samples[i], b.samples[i]);
}

}  // namespace
}  // namespace sixdls
