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

// File formats. Every JSON document carries "v": 1. Human-facing files use
// shortest round-trip decimals; cache files store doubles as hex-float
// strings. Readers accept either encoding.

#ifndef SIXDLS_IO_HPP_
#define SIXDLS_IO_HPP_

#include <openssl/evp.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "sixdls/geometry.hpp"
#include "sixdls/kinematics.hpp"
#include "sixdls/limit_surface.hpp"
#include "sixdls/linearize.hpp"

namespace sixdls {

using Json = nlohmann::json;

// ---------------------------------------------------------------------------
// Scalars

inline std::string to_hex_float(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%a", x);
  return buf;
}

inline double from_hex_float(const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0') throw CorruptFileError("malformed number '" + s + "'");
  return v;
}

enum class FloatEncoding { Decimal, Hex };

inline Json encode(double x, FloatEncoding enc) {
  if (enc == FloatEncoding::Hex) return to_hex_float(x);
  return x;
}

namespace detail {

inline std::string join(const std::string& path, const std::string& field) {
  return path.empty() ? field : path + "." + field;
}
inline std::string join(const std::string& path, std::size_t idx) {
  return path + "[" + std::to_string(idx) + "]";
}

inline const Json& require(const Json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) throw ValidationError(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ValidationError(join(path, key), "missing field");
  return *it;
}

inline double number(const Json& j, const std::string& path) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    try {
      return from_hex_float(j.get<std::string>());
    } catch (const CorruptFileError&) {
      throw ValidationError(path, "expected a number");
    }
  }
  throw ValidationError(path, "expected a number");
}

inline double number_field(const Json& j, const std::string& key, const std::string& path) {
  return number(require(j, key, path), join(path, key));
}

inline double number_or(const Json& j, const std::string& key, double fallback, const std::string& path) {
  if (!j.contains(key)) return fallback;
  return number(j.at(key), join(path, key));
}

inline std::vector<double> numbers(const Json& j, const std::string& path, int expected = -1) {
  if (!j.is_array()) throw ValidationError(path, "expected an array");
  if (expected >= 0 && j.size() != static_cast<std::size_t>(expected))
    throw ValidationError(path, "expected " + std::to_string(expected) + " entries");
  std::vector<double> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], join(path, i)));
  return out;
}

inline Vec3 vec3(const Json& j, const std::string& path) {
  const auto v = numbers(j, path, 3);
  return {v[0], v[1], v[2]};
}

inline Wrench6 vec6(const Json& j, const std::string& path) {
  const auto v = numbers(j, path, 6);
  Wrench6 w;
  for (int i = 0; i < 6; ++i) w[i] = v[i];
  return w;
}

template <class V>
Json array(const V& v, FloatEncoding enc = FloatEncoding::Decimal) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(encode(v[i], enc));
  return a;
}

inline void check_version(const Json& j, const std::string& path = "") {
  if (!j.is_object()) throw ValidationError(path, "expected an object");
  auto it = j.find("v");
  if (it == j.end()) throw FormatVersionError("missing format version field \"v\"");
  if (!it->is_number_integer() || it->get<int>() != kFormatVersion)
    throw FormatVersionError("unsupported format version " + it->dump() + " (expected " +
                             std::to_string(kFormatVersion) + ")");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Files

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError(path, "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Writes through a temporary file in the same directory, then renames.
inline void write_text_file_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  std::random_device rd;
  const fs::path tmp = target.string() + ".tmp" + std::to_string(rd());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ValidationError(path, "cannot write file");
    out << content;
    out.flush();
    if (!out) throw ValidationError(path, "write failed");
  }
  fs::rename(tmp, target);
}

inline Json parse_json_text(const std::string& text, const std::string& path) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ValidationError(path, std::string("invalid JSON: ") + e.what());
  }
}

inline Json read_json_file(const std::string& path) { return parse_json_text(read_text_file(path), path); }

// ---------------------------------------------------------------------------
// Meshes

/// OBJ reader for v and f records; polygons are fan-triangulated and
/// other record types are ignored. Face order is preserved.
inline std::pair<std::vector<Vec3>, std::vector<std::array<int, 3>>> read_obj(const std::string& path) {
  std::istringstream in(read_text_file(path));
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 3>> faces;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    const std::string where = path + ":" + std::to_string(lineno);
    if (tag == "v") {
      double x, y, z;
      if (!(ls >> x >> y >> z)) throw ValidationError(where, "vertex needs three coordinates");
      vertices.emplace_back(x, y, z);
    } else if (tag == "f") {
      std::vector<int> idx;
      std::string tok;
      while (ls >> tok) {
        const std::string head = tok.substr(0, tok.find('/'));
        int i = 0;
        try {
          i = std::stoi(head);
        } catch (const std::exception&) {
          throw ValidationError(where, "bad face index '" + tok + "'");
        }
        if (i < 0) i = static_cast<int>(vertices.size()) + i + 1;
        idx.push_back(i - 1);
      }
      if (idx.size() < 3) throw ValidationError(where, "face needs at least three vertices");
      for (std::size_t k = 1; k + 1 < idx.size(); ++k) faces.push_back({idx[0], idx[k], idx[k + 1]});
    }
  }
  return {vertices, faces};
}

/// One pressure value per line; a non-numeric first line is a header.
inline std::vector<double> read_pressure_csv(const std::string& path) {
  std::istringstream in(read_text_file(path));
  std::vector<double> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    std::string cell = line.substr(first, line.find(',', first) - first);
    char* end = nullptr;
    const double v = std::strtod(cell.c_str(), &end);
    if (end == cell.c_str()) {
      if (lineno == 1) continue;
      throw ValidationError(path + ":" + std::to_string(lineno), "expected a pressure value");
    }
    out.push_back(v);
  }
  return out;
}

/// Mesh profile from an OBJ and a per-face pressure CSV (input face order).
inline ContactProfile load_mesh_profile(const std::string& obj_path, const std::string& csv_path, double mu) {
  auto [verts, faces] = read_obj(obj_path);
  TriangleMesh mesh(std::move(verts), faces);
  const auto values = read_pressure_csv(csv_path);
  if (values.size() != faces.size())
    throw ValidationError(csv_path, "expected " + std::to_string(faces.size()) + " pressure values, got " +
                                        std::to_string(values.size()));
  std::vector<double> kept;
  kept.reserve(mesh.size());
  for (auto f : mesh.kept_faces()) kept.push_back(values[f]);
  ContactProfile p{mesh, PerElementPressure{kept}, mu};
  p.validate();
  return p;
}

// ---------------------------------------------------------------------------
// Profiles

inline Json surface_to_json(const Surface& s, FloatEncoding enc = FloatEncoding::Decimal) {
  Json j;
  if (const auto* ps = std::get_if<ParametricSurface>(&s)) {
    if (ps->kind == SurfaceKind::Custom) throw DomainError("custom surfaces cannot be serialized");
    j["type"] = "parametric";
    j["id"] = to_string(ps->kind);
    j["params"] = {{"a", encode(ps->a, enc)}, {"b", encode(ps->b, enc)}, {"c", encode(ps->c, enc)},
                   {"scale", encode(ps->scale, enc)}};
    j["domain"] = Json::array({Json::array({encode(ps->domain.u0, enc), encode(ps->domain.u1, enc)}),
                               Json::array({encode(ps->domain.v0, enc), encode(ps->domain.v1, enc)})});
    j["offset"] = detail::array(ps->offset, enc);
  } else {
    const auto& m = std::get<TriangleMesh>(s);
    j["type"] = "mesh";
    Json v = Json::array();
    for (const auto& p : m.vertices()) v.push_back(detail::array(p, enc));
    Json f = Json::array();
    for (const auto& t : m.faces()) f.push_back({t[0], t[1], t[2]});
    j["vertices"] = std::move(v);
    j["faces"] = std::move(f);
  }
  return j;
}

inline Json pressure_to_json(const PressureField& field, FloatEncoding enc = FloatEncoding::Decimal) {
  return std::visit(
      [&](const auto& f) -> Json {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, UniformPressure>) {
          return {{"type", "uniform"}, {"value", encode(f.value, enc)}};
        } else if constexpr (std::is_same_v<T, PowerLawPressure>) {
          return {{"type", "power_law"},
                  {"k", encode(f.k, enc)},
                  {"p0", encode(f.p0, enc)},
                  {"r_max", encode(f.r_max, enc)},
                  {"mode", f.mode == RadialMode::Line ? "line" : "point"},
                  {"center", detail::array(f.center, enc)}};
        } else {
          Json v = Json::array();
          for (double x : f.values) v.push_back(encode(x, enc));
          return {{"type", "per_element"}, {"values", std::move(v)}};
        }
      },
      field);
}

inline Json profile_to_json(const ContactProfile& p, FloatEncoding enc = FloatEncoding::Decimal) {
  return {{"v", kFormatVersion},
          {"surface", surface_to_json(p.surface, enc)},
          {"pressure", pressure_to_json(p.pressure, enc)},
          {"mu", encode(p.mu, enc)}};
}

/// `base_dir` resolves relative "obj"/"csv" references.
inline Surface surface_from_json(const Json& j, const std::string& path, const std::string& base_dir = "") {
  using namespace detail;
  const Json& type = require(j, "type", path);
  if (!type.is_string()) throw ValidationError(join(path, "type"), "expected a string");
  const std::string t = type.get<std::string>();
  if (t == "parametric") {
    const Json& id = require(j, "id", path);
    if (!id.is_string()) throw ValidationError(join(path, "id"), "expected a string");
    if (id.get<std::string>() == "custom")
      throw ValidationError(join(path, "id"), "custom surfaces need an evaluator and cannot be loaded from JSON");
    const auto kind = surface_kind_from_string(id.get<std::string>());
    if (!kind || *kind == SurfaceKind::Custom)
      throw ValidationError(join(path, "id"), "unknown surface id '" + id.get<std::string>() + "'");
    ParametricSurface s = ParametricSurface::standard(*kind);
    if (j.contains("params")) {
      const Json& pj = j.at("params");
      const std::string pp = join(path, "params");
      if (!pj.is_object()) throw ValidationError(pp, "expected an object");
      for (auto it = pj.begin(); it != pj.end(); ++it) {
        const double v = number(it.value(), join(pp, it.key()));
        if (it.key() == "a") s.a = v;
        else if (it.key() == "b") s.b = v;
        else if (it.key() == "c") s.c = v;
        else if (it.key() == "scale") s.scale = v;
        else throw ValidationError(join(pp, it.key()), "unknown parameter");
      }
    }
    if (j.contains("domain")) {
      const Json& dj = j.at("domain");
      const std::string dp = join(path, "domain");
      if (!dj.is_array() || dj.size() != 2) throw ValidationError(dp, "expected [[u0,u1],[v0,v1]]");
      const auto u = numbers(dj[0], join(dp, 0), 2);
      const auto v = numbers(dj[1], join(dp, 1), 2);
      s.domain = {u[0], u[1], v[0], v[1]};
    }
    if (j.contains("offset")) s.offset = vec3(j.at("offset"), join(path, "offset"));
    try {
      s.validate();
    } catch (const DomainError& e) {
      throw ValidationError(path, e.what());
    }
    return s;
  }
  if (t == "mesh") {
    std::vector<Vec3> verts;
    std::vector<std::array<int, 3>> faces;
    if (j.contains("obj")) {
      std::filesystem::path p(j.at("obj").get<std::string>());
      if (p.is_relative() && !base_dir.empty()) p = std::filesystem::path(base_dir) / p;
      std::tie(verts, faces) = read_obj(p.string());
    } else {
      const Json& vj = require(j, "vertices", path);
      const Json& fj = require(j, "faces", path);
      if (!vj.is_array()) throw ValidationError(join(path, "vertices"), "expected an array");
      if (!fj.is_array()) throw ValidationError(join(path, "faces"), "expected an array");
      for (std::size_t i = 0; i < vj.size(); ++i) verts.push_back(vec3(vj[i], join(join(path, "vertices"), i)));
      for (std::size_t i = 0; i < fj.size(); ++i) {
        const std::string fp = join(join(path, "faces"), i);
        if (!fj[i].is_array() || fj[i].size() != 3) throw ValidationError(fp, "expected three indices");
        std::array<int, 3> f{};
        for (int k = 0; k < 3; ++k) {
          if (!fj[i][k].is_number_integer()) throw ValidationError(fp, "expected integer indices");
          f[k] = fj[i][k].get<int>();
          if (f[k] < 0 || static_cast<std::size_t>(f[k]) >= verts.size())
            throw ValidationError(fp, "vertex index out of range");
        }
        faces.push_back(f);
      }
    }
    try {
      return TriangleMesh(std::move(verts), faces);
    } catch (const DomainError& e) {
      throw ValidationError(path, e.what());
    }
  }
  throw ValidationError(join(path, "type"), "unknown surface type '" + t + "'");
}

inline PressureField pressure_from_json(const Json& j, const std::string& path, const Surface& surface,
                                        const std::string& base_dir = "") {
  using namespace detail;
  const Json& type = require(j, "type", path);
  if (!type.is_string()) throw ValidationError(join(path, "type"), "expected a string");
  const std::string t = type.get<std::string>();
  if (t == "uniform") return UniformPressure{number_field(j, "value", path)};
  if (t == "power_law") {
    PowerLawPressure pl;
    pl.k = number_field(j, "k", path);
    pl.p0 = number_or(j, "p0", 1.0, path);
    if (j.contains("mode")) {
      const auto m = j.at("mode").get<std::string>();
      if (m == "line") pl.mode = RadialMode::Line;
      else if (m == "point") pl.mode = RadialMode::Point;
      else throw ValidationError(join(path, "mode"), "expected \"line\" or \"point\"");
    }
    if (j.contains("center")) pl.center = vec3(j.at("center"), join(path, "center"));
    if (j.contains("r_max")) {
      pl.r_max = number(j.at("r_max"), join(path, "r_max"));
    } else {
      pl = fit_power_law(surface, pl.k, pl.mode, pl.center, pl.p0);
    }
    return pl;
  }
  if (t == "per_element") {
    const auto* mesh = std::get_if<TriangleMesh>(&surface);
    if (!mesh) throw ValidationError(path, "per-element pressure requires a mesh surface");
    std::vector<double> values;
    if (j.contains("csv")) {
      std::filesystem::path p(j.at("csv").get<std::string>());
      if (p.is_relative() && !base_dir.empty()) p = std::filesystem::path(base_dir) / p;
      values = read_pressure_csv(p.string());
    } else {
      values = numbers(require(j, "values", path), join(path, "values"));
    }
    // Values may be given per input face or per retained face.
    std::size_t total = 0;
    for (auto f : mesh->kept_faces()) total = std::max(total, f + 1);
    if (values.size() != mesh->size()) {
      if (values.size() < total) throw ValidationError(join(path, "values"), "one value per face is required");
      std::vector<double> kept;
      for (auto f : mesh->kept_faces()) kept.push_back(values[f]);
      values = std::move(kept);
    }
    return PerElementPressure{values};
  }
  throw ValidationError(join(path, "type"), "unknown pressure type '" + t + "'");
}

inline ContactProfile profile_from_json(const Json& j, const std::string& path = "",
                                        const std::string& base_dir = "") {
  using namespace detail;
  if (!j.is_object()) throw ValidationError(path, "expected an object");
  if (j.contains("v")) check_version(j, path);
  ContactProfile p;
  p.surface = surface_from_json(require(j, "surface", path), join(path, "surface"), base_dir);
  p.pressure = pressure_from_json(require(j, "pressure", path), join(path, "pressure"), p.surface, base_dir);
  p.mu = number_field(j, "mu", path);
  try {
    p.validate();
  } catch (const Error& e) {
    throw ValidationError(path.empty() ? "profile" : path, e.what());
  }
  return p;
}

inline ContactProfile load_profile(const std::string& path) {
  const Json j = read_json_file(path);
  detail::check_version(j);
  return profile_from_json(j, "", std::filesystem::path(path).parent_path().string());
}

inline void save_profile(const std::string& path, const ContactProfile& p) {
  write_text_file_atomic(path, profile_to_json(p).dump(2) + "\n");
}

// ---------------------------------------------------------------------------
// Models

inline Json model_to_json(const LimitSurfaceModel& m, const FitReport* report = nullptr,
                          FloatEncoding enc = FloatEncoding::Decimal) {
  Json j;
  j["v"] = kFormatVersion;
  j["dim"] = model_dim(m);
  if (const auto* e = std::get_if<EllipsoidModel>(&m)) {
    j["kind"] = "ellipsoid";
    Json a = Json::array();
    for (Eigen::Index r = 0; r < e->A.rows(); ++r)
      for (Eigen::Index c = 0; c < e->A.cols(); ++c) a.push_back(encode(e->A(r, c), enc));
    j["A"] = std::move(a);
  } else {
    const auto& q = std::get<QuarticModel>(m);
    j["kind"] = "quartic";
    j["monomial_order"] = "grlex";
    j["A"] = detail::array(q.coefficients, enc);
    Json cert = Json::array();
    for (Eigen::Index r = 0; r < q.certificate.rows(); ++r)
      for (Eigen::Index c = 0; c < q.certificate.cols(); ++c) cert.push_back(encode(q.certificate(r, c), enc));
    j["certificate"] = std::move(cert);
    j["certificate_residual"] = report ? report->certificate_residual : certificate_residual(q);
  }
  if (report) {
    j["fit_error"] = report->fit_error;
    j["samples"] = report->samples;
    j["iterations"] = report->iterations;
    if (std::holds_alternative<EllipsoidModel>(m)) j["projected"] = report->projected;
  }
  return j;
}

inline LimitSurfaceModel model_from_json(const Json& j, const std::string& path = "") {
  using namespace detail;
  check_version(j, path);
  const Json& kind = require(j, "kind", path);
  const Json& dim_j = require(j, "dim", path);
  if (!dim_j.is_number_integer() || dim_j.get<int>() < 1)
    throw ValidationError(join(path, "dim"), "expected a positive integer");
  const int d = dim_j.get<int>();
  const auto a = numbers(require(j, "A", path), join(path, "A"));
  if (kind == "ellipsoid") {
    if (a.size() != static_cast<std::size_t>(d * d)) throw ValidationError(join(path, "A"), "expected dim*dim entries");
    EllipsoidModel e{Eigen::Map<const Eigen::Matrix<double, -1, -1, Eigen::RowMajor>>(a.data(), d, d)};
    return e;
  }
  if (kind == "quartic") {
    if (j.contains("monomial_order") && j.at("monomial_order") != "grlex")
      throw ValidationError(join(path, "monomial_order"), "only grlex is supported");
    QuarticModel q;
    q.basis = QuarticBasis::get(d);
    if (a.size() != q.basis->size())
      throw ValidationError(join(path, "A"), "expected " + std::to_string(q.basis->size()) + " coefficients");
    q.coefficients = Eigen::Map<const VecX>(a.data(), static_cast<Eigen::Index>(a.size()));
    const int D = d * d;
    if (j.contains("certificate")) {
      const auto c = numbers(j.at("certificate"), join(path, "certificate"), D * D);
      q.certificate = Eigen::Map<const Eigen::Matrix<double, -1, -1, Eigen::RowMajor>>(c.data(), D, D);
    } else {
      q.certificate = MatX::Zero(D, D);
    }
    return q;
  }
  throw ValidationError(join(path, "kind"), "expected \"ellipsoid\" or \"quartic\"");
}

inline void save_model(const std::string& path, const LimitSurfaceModel& m, const FitReport* report = nullptr) {
  write_text_file_atomic(path, model_to_json(m, report).dump(2) + "\n");
}

inline LimitSurfaceModel load_model(const std::string& path) { return model_from_json(read_json_file(path), ""); }

// ---------------------------------------------------------------------------
// Constraint sets

inline Json constraints_to_json(const ConstraintSet& s, const std::string& key = "",
                                FloatEncoding enc = FloatEncoding::Hex) {
  Json verts = Json::array();
  for (const auto& v : s.vertices) verts.push_back(detail::array(v, enc));
  Json j = {{"v", kFormatVersion},
            {"key", key},
            {"w_max", detail::array(s.w_max, enc)},
            {"normalized", s.normalized},
            {"components", s.components},
            {"vertices", std::move(verts)}};
  return j;
}

inline ConstraintSet constraints_from_json(const Json& j, const std::string& path = "") {
  using namespace detail;
  check_version(j, path);
  ConstraintSet s;
  s.w_max = vec6(require(j, "w_max", path), join(path, "w_max"));
  const Json& nj = require(j, "normalized", path);
  if (!nj.is_boolean()) throw ValidationError(join(path, "normalized"), "expected a boolean");
  s.normalized = nj.get<bool>();
  if (j.contains("components")) {
    s.components.clear();
    for (const auto& c : j.at("components")) {
      if (!c.is_number_integer() || c.get<int>() < 0 || c.get<int>() > 5)
        throw ValidationError(join(path, "components"), "expected indices in [0, 5]");
      s.components.push_back(c.get<int>());
    }
  }
  const Json& vj = require(j, "vertices", path);
  if (!vj.is_array()) throw ValidationError(join(path, "vertices"), "expected an array");
  s.vertices.reserve(vj.size());
  for (std::size_t i = 0; i < vj.size(); ++i) s.vertices.push_back(vec6(vj[i], join(join(path, "vertices"), i)));
  return s;
}

inline void save_constraints(const std::string& path, const ConstraintSet& s, const std::string& key = "",
                             FloatEncoding enc = FloatEncoding::Hex) {
  write_text_file_atomic(path, constraints_to_json(s, key, enc).dump() + "\n");
}

/// Malformed or truncated files raise CorruptFileError; a wrong "v" raises
/// FormatVersionError.
inline ConstraintSet load_constraints(const std::string& path) {
  const std::string text = read_text_file(path);
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw CorruptFileError(path + ": " + e.what());
  }
  try {
    return constraints_from_json(j, path);
  } catch (const FormatVersionError&) {
    throw;
  } catch (const ValidationError& e) {
    throw CorruptFileError(e.what());
  }
}

// ---------------------------------------------------------------------------
// Twist and wrench CSV

inline std::string twists_to_csv(const std::vector<UnitTwist>& twists) {
  std::ostringstream out;
  out << std::setprecision(17);
  out << "kind,ex,ey,ez,mx,my,mz,h\n";
  for (const auto& t : twists) {
    out << (t.rotational() ? "rotation" : "translation") << ',' << t.line.e.x() << ',' << t.line.e.y() << ','
        << t.line.e.z() << ',' << t.line.m.x() << ',' << t.line.m.y() << ',' << t.line.m.z() << ',' << t.pitch
        << '\n';
  }
  return out.str();
}

namespace detail {
inline std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
    out.push_back(cell);
  }
  return out;
}

inline double csv_number(const std::string& cell, const std::string& where) {
  char* end = nullptr;
  const double v = std::strtod(cell.c_str(), &end);
  if (end == cell.c_str() || *end != '\0') throw ValidationError(where, "expected a number, got '" + cell + "'");
  return v;
}
}  // namespace detail

inline std::vector<UnitTwist> twists_from_csv(const std::string& text, const std::string& path = "twists") {
  std::istringstream in(text);
  std::string line;
  std::vector<UnitTwist> out;
  std::size_t lineno = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r" || line[0] == '#') continue;
    if (!header) {
      header = true;
      continue;
    }
    const auto c = detail::split_csv(line);
    const std::string where = path + ":" + std::to_string(lineno);
    if (c.size() < 8) throw ValidationError(where, "expected 8 columns");
    double v[7];
    for (int i = 0; i < 7; ++i) v[i] = detail::csv_number(c[i + 1], where);
    const Vec3 e(v[0], v[1], v[2]);
    if (c[0] == "translation") {
      out.push_back(UnitTwist::translation(e));
    } else if (c[0] == "rotation") {
      UnitTwist t;
      t.kind = UnitTwist::Kind::Rotational;
      t.line = {e, Vec3(v[3], v[4], v[5])};
      t.pitch = v[6];
      out.push_back(t);
    } else {
      throw ValidationError(where, "kind must be rotation or translation");
    }
  }
  return out;
}

/// Wrench rows followed by the generating twist.
inline std::string wrenches_to_csv(const std::vector<Wrench6>& wrenches, const std::vector<UnitTwist>& twists) {
  if (wrenches.size() != twists.size()) throw DomainError("wrench and twist counts differ");
  std::ostringstream out;
  out << std::setprecision(17);
  out << "fx,fy,fz,tx,ty,tz,kind,ex,ey,ez,mx,my,mz,h\n";
  for (std::size_t i = 0; i < wrenches.size(); ++i) {
    const auto& w = wrenches[i];
    const auto& t = twists[i];
    for (int k = 0; k < 6; ++k) out << w[k] << ',';
    out << (t.rotational() ? "rotation" : "translation") << ',' << t.line.e.x() << ',' << t.line.e.y() << ','
        << t.line.e.z() << ',' << t.line.m.x() << ',' << t.line.m.y() << ',' << t.line.m.z() << ',' << t.pitch
        << '\n';
  }
  return out.str();
}

/// Reads the first six columns of a wrench CSV (header required, lines
/// starting with '#' ignored).
inline std::vector<Wrench6> wrenches_from_csv(const std::string& text, const std::string& path = "wrenches") {
  std::istringstream in(text);
  std::string line;
  std::vector<Wrench6> out;
  std::size_t lineno = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r" || line[0] == '#') continue;
    const auto c = detail::split_csv(line);
    if (!header) {
      if (c.size() < 6 || c[0] != "fx") throw ValidationError(path + ":1", "expected header fx,fy,fz,tx,ty,tz");
      header = true;
      continue;
    }
    const std::string where = path + ":" + std::to_string(lineno);
    if (c.size() < 6) throw ValidationError(where, "expected at least 6 columns");
    Wrench6 w;
    for (int k = 0; k < 6; ++k) w[k] = detail::csv_number(c[k], where);
    out.push_back(w);
  }
  if (!header) throw ValidationError(path, "empty wrench file");
  return out;
}

// ---------------------------------------------------------------------------
// Canonical keys

namespace detail {
inline std::string canon(double x, int digits = 17) {
  if (x == 0.0) x = 0.0;  // fold -0
  if (!std::isfinite(x)) throw DomainError("cannot hash a non-finite value");
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*e", digits - 1, x);
  return buf;
}

inline Json canon_vec(const Vec3& v) { return Json::array({canon(v.x()), canon(v.y()), canon(v.z())}); }

/// Pressure shape with the overall scale removed. Normalized values are
/// rounded to 12 significant digits so that quadrature rounding in F does
/// not split keys of proportional fields.
inline Json canonical_pressure(const ContactProfile& profile, int order) {
  return std::visit(
      [&](const auto& f) -> Json {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, UniformPressure>) {
          return {{"type", "uniform"}};
        } else if constexpr (std::is_same_v<T, PowerLawPressure>) {
          return {{"type", "power_law"},
                  {"k", canon(f.k)},
                  {"r_max", canon(f.r_max)},
                  {"mode", f.mode == RadialMode::Line ? "line" : "point"},
                  {"center", canon_vec(f.center)}};
        } else {
          const double force = total_normal_force(profile, order);
          Json v = Json::array();
          for (double x : f.values) v.push_back(canon(x / force, 12));
          return {{"type", "per_element"}, {"values", std::move(v)}};
        }
      },
      profile.pressure);
}
}  // namespace detail

struct KeyOptions {
  std::string model_kind = "quartic";
  std::size_t vertex_count = 728;
  std::string contact_model = "6dls";
  std::size_t twist_count = 600;
  std::uint64_t seed = 1;
  int quadrature_order = 64;
};

/// Canonical JSON text hashed by canonical_key.
inline std::string canonical_profile_text(const ContactProfile& profile, const KeyOptions& opt) {
  profile.validate();
  Json j;
  if (const auto* ps = std::get_if<ParametricSurface>(&profile.surface)) {
    if (ps->kind == SurfaceKind::Custom) throw DomainError("custom surfaces cannot be hashed");
    j["surface"] = {{"type", "parametric"},
                    {"id", to_string(ps->kind)},
                    {"a", detail::canon(ps->a)},
                    {"b", detail::canon(ps->b)},
                    {"c", detail::canon(ps->c)},
                    {"scale", detail::canon(ps->scale)},
                    {"domain", {detail::canon(ps->domain.u0), detail::canon(ps->domain.u1),
                                detail::canon(ps->domain.v0), detail::canon(ps->domain.v1)}},
                    {"offset", detail::canon_vec(ps->offset)}};
    j["quadrature_order"] = opt.quadrature_order;
  } else {
    const auto& m = std::get<TriangleMesh>(profile.surface);
    Json faces = Json::array();
    for (const auto& f : m.faces())
      faces.push_back({detail::canon_vec(m.vertices()[f[0]]), detail::canon_vec(m.vertices()[f[1]]),
                       detail::canon_vec(m.vertices()[f[2]])});
    j["surface"] = {{"type", "mesh"}, {"faces", std::move(faces)}};
  }
  j["pressure"] = detail::canonical_pressure(profile, opt.quadrature_order);
  j["mu"] = detail::canon(profile.mu);
  j["model"] = opt.model_kind;
  j["M"] = opt.vertex_count;
  j["contact_model"] = opt.contact_model;
  j["twists"] = opt.twist_count;
  j["seed"] = std::to_string(opt.seed);
  j["v"] = kFormatVersion;
  return j.dump();  // object keys are sorted
}

inline std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (!ctx) throw Error("cannot allocate digest context");
  const bool ok = EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) == 1 &&
                  EVP_DigestUpdate(ctx, data.data(), data.size()) == 1 &&
                  EVP_DigestFinal_ex(ctx, digest, &len) == 1;
  EVP_MD_CTX_free(ctx);
  if (!ok) throw Error("SHA-256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 15]);
  }
  return out;
}

inline std::string canonical_key(const ContactProfile& profile, const KeyOptions& opt = {}) {
  return sha256_hex(canonical_profile_text(profile, opt));
}

}  // namespace sixdls

#endif  // SIXDLS_IO_HPP_
