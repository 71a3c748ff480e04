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

// sixdls command-line driver.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sixdls.hpp"

namespace {

using namespace sixdls;

struct Globals {
  std::uint64_t seed = 1;
  int quadrature_order = 64;
  int threads = 1;
  std::string cache_dir;
};

std::string base_dir_of(const std::string& path) {
  return std::filesystem::path(path).parent_path().string();
}

void emit(const std::string& out, const std::string& text) {
  if (out.empty() || out == "-") {
    std::cout << text;
  } else {
    write_text_file_atomic(out, text);
  }
}

Json config_json(const Globals& g) {
  return {{"seed", g.seed}, {"quadrature_order", g.quadrature_order}, {"threads", g.threads}};
}

std::string csv_comment(const Json& config) { return "# " + config.dump() + "\n"; }

template <typename T>
std::string join_values(const std::vector<T>& v) {
  std::ostringstream s;
  for (std::size_t i = 0; i < v.size(); ++i) s << (i ? ";" : "") << v[i];
  return s.str();
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

// ---------------------------------------------------------------------------
// wrench

struct WrenchArgs {
  std::string profile, twists, out;
  std::size_t count = 2000;
  bool axis_only = false;
};

int run_wrench(const Globals& g, const WrenchArgs& a) {
  const ContactProfile profile = load_profile(a.profile);
  const Vec3 o = pressure_center(profile, g.quadrature_order);
  std::vector<UnitTwist> twists;
  if (!a.twists.empty()) {
    twists = twists_from_csv(read_text_file(a.twists), a.twists);
  } else if (a.axis_only) {
    twists = axis_aligned_twists(o);
  } else {
    twists = sample_unit_twists(o, longest_bounding_side(profile.surface), a.count, g.seed);
  }
  const WrenchSampleSet set = sample_wrench_set(profile, twists, g.quadrature_order, {});
  Json cfg = config_json(g);
  cfg["command"] = "wrench";
  cfg["profile"] = a.profile;
  cfg["twists"] = twists.size();
  cfg["pressure_center"] = detail::array(o, FloatEncoding::Decimal);
  emit(a.out, csv_comment(cfg) + wrenches_to_csv(set.samples, set.twists));
  Json summary = cfg;
  summary["v"] = kFormatVersion;
  summary["w_max"] = detail::array(set.w_max, FloatEncoding::Decimal);
  summary["discrete"] = profile.is_mesh();
  if (!a.out.empty() && a.out != "-") std::cout << summary.dump(2) << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// fit

struct FitArgs {
  std::string wrenches, profile, out, model = "quartic", contact_model = "6dls";
  std::size_t samples = 600;
  int normal_axis = 1;
};

int run_fit(const Globals& g, const FitArgs& a) {
  if (a.wrenches.empty() == a.profile.empty())
    throw ValidationError("fit", "give exactly one of --wrenches or --profile");
  PipelineOptions opt;
  opt.kind = model_kind_from_string(a.model);
  opt.contact_model = contact_model_from_string(a.contact_model);
  opt.twist_count = a.samples;
  opt.seed = g.seed;
  opt.quadrature_order = g.quadrature_order;
  opt.normal_axis = a.normal_axis;

  Json cfg = config_json(g);
  cfg["command"] = "fit";
  LimitSurfaceModel model;
  FitReport report;
  Wrench6 w_max;
  std::vector<int> components;
  if (!a.profile.empty()) {
    const ContactFit fit = fit_contact(load_profile(a.profile), opt);
    model = fit.model;
    report = fit.report;
    w_max = fit.contact.constraints.w_max;
    components = fit.components;
    cfg["profile"] = a.profile;
  } else {
    if (opt.contact_model == ContactModelType::PlanarThreeD)
      throw ValidationError("contact_model", "3dls-planar needs a profile, not a wrench file");
    auto samples = wrenches_from_csv(read_text_file(a.wrenches), a.wrenches);
    if (samples.size() > a.samples) samples.resize(a.samples);
    components = {0, 1, 2, 3, 4, 5};
    if (opt.contact_model == ContactModelType::NonplanarThreeD) {
      const auto c = planar_components(opt.normal_axis);
      components.assign(c.begin(), c.end());
    }
    const Wrench6 m = max_magnitudes(samples);
    w_max = Wrench6::Zero();
    for (int c : components) {
      if (!(m[c] > 0)) throw DegenerateError("wrench samples have zero extent in dimension " + std::to_string(c));
      w_max[c] = m[c];
    }
    std::vector<Wrench6> normalized;
    for (const auto& w : samples) {
      Wrench6 n = Wrench6::Zero();
      for (int c : components) n[c] = w[c] / w_max[c];
      normalized.push_back(n);
    }
    model = fit_model(component_matrix(normalized, components), opt.kind, report, opt.quartic);
    cfg["wrenches"] = a.wrenches;
  }
  cfg["samples"] = report.samples;
  cfg["model"] = a.model;
  cfg["contact_model"] = a.contact_model;
  Json j = model_to_json(model, &report);
  j["w_max"] = detail::array(w_max, FloatEncoding::Decimal);
  j["components"] = components;
  j["config"] = cfg;
  emit(a.out, j.dump(2) + "\n");
  if (!a.out.empty() && a.out != "-")
    std::cout << Json({{"fit_error", report.fit_error}, {"samples", report.samples}, {"out", a.out}}).dump() << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// linearize

struct LinearizeArgs {
  std::string model, out;
  std::size_t vertices = 0;
  bool decimal = false;
};

int run_linearize(const Globals& g, const LinearizeArgs& a) {
  const Json j = read_json_file(a.model);
  const LimitSurfaceModel model = model_from_json(j, a.model);
  const int d = model_dim(model);
  std::vector<int> components;
  if (j.contains("components")) components = j.at("components").get<std::vector<int>>();
  const std::size_t count = a.vertices ? a.vertices : hypercube_point_count(3, d);
  ConstraintSet set = linearize(model, count, components);
  const double deviation = max_surface_deviation(model, set);
  if (j.contains("w_max")) set = denormalize(set, detail::vec6(j.at("w_max"), a.model + ".w_max"));
  Json out = constraints_to_json(set, "", a.decimal ? FloatEncoding::Decimal : FloatEncoding::Hex);
  Json cfg = config_json(g);
  cfg["command"] = "linearize";
  cfg["model"] = a.model;
  cfg["vertices"] = set.size();
  out["config"] = cfg;
  out["max_surface_deviation"] = deviation;
  emit(a.out, out.dump() + "\n");
  if (!a.out.empty() && a.out != "-")
    std::cout << Json({{"vertices", set.size()}, {"max_surface_deviation", deviation}, {"out", a.out}}).dump()
              << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// gws / predict

PipelineOptions default_options(const Globals& g) {
  PipelineOptions opt;
  opt.seed = g.seed;
  opt.quadrature_order = g.quadrature_order;
  return opt;
}

struct GwsArgs {
  std::string grasp, out;
  bool facets = false;
};

int run_gws(const Globals& g, const GwsArgs& a, ConstraintCache* cache) {
  const GraspSpec spec = grasp_from_json(read_json_file(a.grasp), default_options(g), "", base_dir_of(a.grasp));
  std::vector<std::vector<Wrench6>> sets;
  Json per = Json::array();
  for (const auto& c : spec.contacts) {
    ContactDiagnostics d;
    auto s = grasp_contact_constraints(c, spec.options, cache, d);
    Json gens = Json::array();
    for (const auto& w : s) gens.push_back(detail::array(w, FloatEncoding::Decimal));
    per.push_back({{"key", d.key}, {"cache_hit", d.cache_hit}, {"force", d.force}, {"generators", gens}});
    sets.push_back(std::move(s));
  }
  const GraspWrenchSpace gws = build_gws(std::move(sets));
  Json cfg = config_json(g);
  cfg["command"] = "gws";
  cfg["grasp"] = a.grasp;
  Json out = {{"v", kFormatVersion},
              {"config", cfg},
              {"centroid", detail::array(gws.centroid(), FloatEncoding::Decimal)},
              {"contacts", per}};
  if (a.facets) {
    try {
      const ConvexHull& h = gws.hull();
      Json facets = Json::array();
      for (const HullFacet* f : h.facets())
        facets.push_back({{"normal", detail::array(Wrench6(f->normal), FloatEncoding::Decimal)}, {"offset", f->offset}});
      out["facets"] = facets;
      out["hull_vertices"] = h.vertex_indices().size();
    } catch (const DegenerateError& e) {
      out["facets"] = nullptr;
      out["degenerate"] = e.what();
    }
  }
  emit(a.out, out.dump(2) + "\n");
  return 0;
}

struct PredictArgs {
  std::string grasp, batch, out, mode = "lp";
};

int run_predict(const Globals& g, const PredictArgs& a, ConstraintCache* cache) {
  if (a.grasp.empty() == a.batch.empty()) throw ValidationError("predict", "give exactly one of --grasp or --batch");
  const PredictMode mode = a.mode == "facet" ? PredictMode::Facet : PredictMode::LP;
  if (a.mode != "lp" && a.mode != "facet") throw ValidationError("mode", "expected lp or facet");
  Json cfg = config_json(g);
  cfg["command"] = "predict";
  cfg["mode"] = a.mode;
  Json out;
  if (!a.grasp.empty()) {
    const GraspSpec spec = grasp_from_json(read_json_file(a.grasp), default_options(g), "", base_dir_of(a.grasp));
    out = prediction_to_json(predict_grasp(spec, cache, mode));
    cfg["grasp"] = a.grasp;
  } else {
    const auto grasps = batch_from_json(read_json_file(a.batch), default_options(g), base_dir_of(a.batch));
    const BatchResult r = predict_batch(grasps, cache, mode);
    Json items = Json::array();
    for (std::size_t i = 0; i < grasps.size(); ++i) {
      Json p = prediction_to_json(r.predictions[i]);
      p.erase("v");
      if (!grasps[i].name.empty()) p["name"] = grasps[i].name;
      if (grasps[i].label) p["label"] = *grasps[i].label;
      items.push_back(std::move(p));
    }
    out = {{"v", kFormatVersion}, {"predictions", items}};
    if (r.metrics) out["metrics"] = confusion_to_json(*r.metrics);
    cfg["batch"] = a.batch;
  }
  if (cache) {
    cfg["cache_dir"] = cache->dir();
    out["cache"] = {{"hits", cache->hits()}, {"misses", cache->misses()}};
  }
  out["config"] = cfg;
  out["fits"] = fit_counter().load();
  emit(a.out, out.dump(2) + "\n");
  return 0;
}

// ---------------------------------------------------------------------------
// studies

struct ConvergenceArgs {
  std::vector<std::string> surfaces{"S1", "S2", "S3", "S4", "S5", "S6"};
  std::vector<int> resolutions{25, 100, 300, 1000};
  std::size_t twists = 2000;
  double mu = 1.0;
  std::string out;
};

int run_convergence(const Globals& g, const ConvergenceArgs& a) {
  std::vector<SurfaceKind> kinds;
  for (const auto& s : a.surfaces) {
    const auto k = surface_kind_from_string(s);
    if (!k || *k == SurfaceKind::Custom) throw ValidationError("surfaces", "unknown surface id '" + s + "'");
    kinds.push_back(*k);
  }
  ConvergenceOptions opt;
  opt.twist_count = a.twists;
  opt.seed = g.seed;
  opt.mu = a.mu;
  opt.quadrature_order = g.quadrature_order;
  const auto rows = convergence_study(kinds, a.resolutions, opt);
  Json cfg = config_json(g);
  cfg["command"] = "study-convergence";
  cfg["twists"] = a.twists;
  cfg["mu"] = a.mu;
  cfg["surfaces"] = a.surfaces;
  cfg["resolutions"] = a.resolutions;
  std::ostringstream csv;
  csv << csv_comment(cfg);
  csv << "surface,target_triangles,triangles,error_rate";
  for (const char* c : {"fx", "fy", "fz", "tx", "ty", "tz"}) csv << ",ref_" << c;
  for (const char* c : {"fx", "fy", "fz", "tx", "ty", "tz"}) csv << ",mesh_" << c;
  csv << "\n";
  for (const auto& r : rows) {
    csv << to_string(r.surface) << ',' << r.target_triangles << ',' << r.triangles << ',' << fmt(r.error_rate);
    for (int k = 0; k < 6; ++k) csv << ',' << fmt(r.reference[k]);
    for (int k = 0; k < 6; ++k) csv << ',' << fmt(r.mesh[k]);
    csv << "\n";
  }
  emit(a.out, csv.str());
  return 0;
}

struct SensitivityArgs {
  std::string batch, sweep = "mu", out;
  std::vector<double> values;
  std::vector<std::string> models{"quartic"};
  std::vector<std::string> contact_models{"6dls"};
};

int run_sensitivity(const Globals& g, const SensitivityArgs& a, ConstraintCache* cache) {
  const SweepKind kind = sweep_kind_from_string(a.sweep);
  std::vector<double> values = a.values;
  if (values.empty()) {
    switch (kind) {
      case SweepKind::FrictionOffset: values = {-0.3, -0.2, -0.1, 0.0, 0.1, 0.2, 0.3}; break;
      case SweepKind::PressureExponent: values = {2.0, 2.4, 5.5, 1e6}; break;
      case SweepKind::ContactLength: values = {0.7, 0.8, 0.9, 1.0, 1.1, 1.2, 1.3}; break;
    }
  }
  SweepOptions opt;
  opt.models.clear();
  opt.contact_models.clear();
  for (const auto& m : a.models) opt.models.push_back(model_kind_from_string(m));
  for (const auto& m : a.contact_models) opt.contact_models.push_back(contact_model_from_string(m));
  const auto grasps = batch_from_json(read_json_file(a.batch), default_options(g), base_dir_of(a.batch));
  const auto rows = sensitivity_sweep(grasps, kind, values, opt, cache);
  Json cfg = config_json(g);
  cfg["command"] = "study-sensitivity";
  cfg["batch"] = a.batch;
  cfg["sweep"] = a.sweep;
  cfg["values"] = values;
  std::ostringstream csv;
  csv << csv_comment(cfg);
  csv << "sweep,value,model,contact_model,grasps,positives,tp,fp,tn,fn,precision,recall,f1,accuracy\n";
  for (const auto& r : rows) {
    csv << to_string(r.kind) << ',' << fmt(r.value) << ',' << to_string(r.model) << ','
        << to_string(r.contact_model) << ',' << grasps.size() << ',' << r.positives;
    if (r.metrics) {
      const auto& m = *r.metrics;
      csv << ',' << m.tp << ',' << m.fp << ',' << m.tn << ',' << m.fn << ',' << fmt(m.precision()) << ','
          << fmt(m.recall()) << ',' << fmt(m.f1()) << ',' << fmt(m.accuracy());
    } else {
      csv << ",,,,,,,,";
    }
    csv << "\n";
  }
  emit(a.out, csv.str());
  return 0;
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const NumericalError*>(&e) || dynamic_cast<const DegenerateError*>(&e)) return 3;
  if (dynamic_cast<const ValidationError*>(&e) || dynamic_cast<const DomainError*>(&e) ||
      dynamic_cast<const StateError*>(&e) || dynamic_cast<const Json::exception*>(&e))
    return 2;
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sixdls: 6D limit surfaces for nonplanar contacts and grasp wrench spaces"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "Random seed for twist sampling")->capture_default_str();
  app.add_option("--quadrature-order", g.quadrature_order, "Gauss-Legendre nodes per parameter")
      ->check(CLI::Range(1, 512))
      ->capture_default_str();
  app.add_option("--threads", g.threads, "Worker threads (0: all cores)")->capture_default_str();
  app.add_option("--cache-dir", g.cache_dir, std::string("Constraint cache directory (overridden by ") +
                                                 kCacheDirEnv + ")");

  WrenchArgs wa;
  auto* wrench = app.add_subcommand("wrench", "Frictional wrenches of a contact for sampled twists");
  wrench->add_option("--profile", wa.profile, "Contact profile JSON")->required();
  wrench->add_option("--twists", wa.twists, "Twist CSV (default: sampled)");
  wrench->add_option("--count", wa.count, "Number of sampled twists")->capture_default_str();
  wrench->add_flag("--axis-only", wa.axis_only, "Use only the 12 axis-aligned twists");
  wrench->add_option("--out", wa.out, "Output CSV (default: stdout)");

  FitArgs fa;
  auto* fit = app.add_subcommand("fit", "Fit a limit surface model");
  fit->add_option("--wrenches", fa.wrenches, "Wrench CSV");
  fit->add_option("--profile", fa.profile, "Contact profile JSON");
  fit->add_option("--model", fa.model, "ellipsoid or quartic")->capture_default_str();
  fit->add_option("--contact-model", fa.contact_model, "6dls, 3dls-nonplanar or 3dls-planar")->capture_default_str();
  fit->add_option("--samples", fa.samples, "Number of fitted samples")->capture_default_str();
  fit->add_option("--normal-axis", fa.normal_axis, "Plane normal axis for 3D models")->capture_default_str();
  fit->add_option("--out", fa.out, "Output model JSON (default: stdout)");

  LinearizeArgs la;
  auto* lin = app.add_subcommand("linearize", "Linear constraint set of a fitted model");
  lin->add_option("--model", la.model, "Model JSON")->required();
  lin->add_option("--vertices", la.vertices, "Vertex count (default 3^d - 1)");
  lin->add_flag("--decimal", la.decimal, "Write decimal instead of hex floats");
  lin->add_option("--out", la.out, "Output constraint JSON (default: stdout)");

  GwsArgs ga;
  auto* gws = app.add_subcommand("gws", "Object-frame generators of a grasp wrench space");
  gws->add_option("--grasp", ga.grasp, "Grasp JSON")->required();
  gws->add_flag("--facets", ga.facets, "Also compute the explicit hull facets");
  gws->add_option("--out", ga.out, "Output JSON (default: stdout)");

  PredictArgs pa;
  auto* pred = app.add_subcommand("predict", "Predict whether grasps resist their external wrench");
  pred->add_option("--grasp", pa.grasp, "Grasp JSON");
  pred->add_option("--batch", pa.batch, "Batch JSON with a \"grasps\" array");
  pred->add_option("--mode", pa.mode, "lp or facet")->capture_default_str();
  pred->add_option("--out", pa.out, "Output JSON (default: stdout)");

  ConvergenceArgs ca;
  auto* conv = app.add_subcommand("study-convergence", "w_max error of tessellated surfaces");
  conv->add_option("--surfaces", ca.surfaces, "Surface ids")->delimiter(',')->capture_default_str();
  conv->add_option("--resolutions", ca.resolutions, "Triangle counts")->delimiter(',')->capture_default_str();
  conv->add_option("--twists", ca.twists, "Twists per surface")->capture_default_str();
  conv->add_option("--mu", ca.mu, "Friction coefficient")->capture_default_str();
  conv->add_option("--out", ca.out, "Output CSV (default: stdout)");

  SensitivityArgs sa;
  auto* sens = app.add_subcommand("study-sensitivity", "Prediction counts under parameter sweeps");
  sens->add_option("--batch", sa.batch, "Batch JSON")->required();
  sens->add_option("--sweep", sa.sweep, "mu, k or length")->capture_default_str();
  sens->add_option("--values", sa.values, "Sweep values (mu offsets, exponents or length factors)")->delimiter(',');
  sens->add_option("--models", sa.models, "Model kinds")->delimiter(',')->capture_default_str();
  sens->add_option("--contact-models", sa.contact_models, "Contact models")->delimiter(',')->capture_default_str();
  sens->add_option("--out", sa.out, "Output CSV (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    set_thread_count(g.threads);
    set_default_quadrature_order(g.quadrature_order);
    const std::string dir = ConstraintCache::resolve_dir(g.cache_dir);
    ConstraintCache cache(dir);
    if (!dir.empty()) std::filesystem::create_directories(dir);

    if (*wrench) return run_wrench(g, wa);
    if (*fit) return run_fit(g, fa);
    if (*lin) return run_linearize(g, la);
    if (*gws) return run_gws(g, ga, &cache);
    if (*pred) return run_predict(g, pa, &cache);
    if (*conv) return run_convergence(g, ca);
    if (*sens) return run_sensitivity(g, sa, &cache);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
  return 0;
}
