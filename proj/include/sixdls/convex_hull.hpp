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

// Quickhull in d dimensions. Facets are simplices (d vertices) with outward
// unit normals; coplanar input yields several coplanar facets, which is
// harmless for membership tests.

#ifndef SIXDLS_CONVEX_HULL_HPP_
#define SIXDLS_CONVEX_HULL_HPP_

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <vector>

#include <Eigen/SVD>

#include "sixdls/core.hpp"

namespace sixdls {

struct HullFacet {
  std::vector<int> vertices;   // d point indices
  std::vector<int> neighbors;  // neighbors[k] shares every vertex except vertices[k]
  VecX normal;                 // outward, unit length
  double offset = 0.0;         // normal . x = offset on the facet
  std::vector<int> outside;
  bool alive = true;

  double distance(const VecX& p) const { return normal.dot(p) - offset; }
};

struct HullOptions {
  double relative_tolerance = 1e-10;
  std::size_t max_points = 250000;
};

class ConvexHull {
 public:
  /// `points` holds one point per row.
  explicit ConvexHull(const MatX& points, const HullOptions& opt = {})
      : pts_(points), dim_(static_cast<int>(points.cols())) {
    if (points.rows() > static_cast<Eigen::Index>(opt.max_points))
      throw DomainError("too many points for an explicit hull (" + std::to_string(points.rows()) + ")");
    if (dim_ < 2) throw DomainError("hull dimension must be >= 2");
    if (points.rows() < dim_ + 1) throw DegenerateError("hull needs at least d+1 points");
    scale_ = std::max(1e-300, points.cwiseAbs().maxCoeff());
    eps_ = opt.relative_tolerance * scale_;
    build();
  }

  int dim() const { return dim_; }
  const MatX& points() const { return pts_; }
  double tolerance() const { return eps_; }
  const VecX& interior_point() const { return interior_; }

  std::vector<const HullFacet*> facets() const {
    std::vector<const HullFacet*> out;
    for (const auto& f : facets_)
      if (f.alive) out.push_back(&f);
    return out;
  }

  std::size_t facet_count() const {
    return static_cast<std::size_t>(std::count_if(facets_.begin(), facets_.end(),
                                                  [](const HullFacet& f) { return f.alive; }));
  }

  /// Indices of input points that are hull vertices.
  std::vector<int> vertex_indices() const {
    std::set<int> s;
    for (const auto& f : facets_)
      if (f.alive) s.insert(f.vertices.begin(), f.vertices.end());
    return {s.begin(), s.end()};
  }

  /// max_i (n_i . p - a_i); negative strictly inside.
  double max_violation(const VecX& p) const {
    double worst = -std::numeric_limits<double>::infinity();
    for (const auto& f : facets_)
      if (f.alive) worst = std::max(worst, f.distance(p));
    return worst;
  }

  bool contains(const VecX& p, double tol = -1.0) const {
    return max_violation(p) <= (tol < 0 ? eps_ : tol);
  }

 private:
  VecX point(int i) const { return pts_.row(i).transpose(); }

  bool set_plane(HullFacet& f) const {
    MatX diff(dim_ - 1, dim_);
    const VecX p0 = point(f.vertices[0]);
    for (int k = 1; k < dim_; ++k) diff.row(k - 1) = (point(f.vertices[k]) - p0).transpose();
    Eigen::JacobiSVD<MatX> svd(diff, Eigen::ComputeFullV);
    VecX nrm = svd.matrixV().col(dim_ - 1);
    const double len = nrm.norm();
    if (!(len > 0)) return false;
    nrm /= len;
    double off = nrm.dot(p0);
    if (nrm.dot(interior_) - off > 0) {
      nrm = -nrm;
      off = -off;
    }
    f.normal = nrm;
    f.offset = off;
    return true;
  }

  void build() {
    const Eigen::Index n = pts_.rows();
    // Initial simplex: greedy farthest points from the growing affine span.
    std::vector<int> simplex;
    Eigen::Index i0 = 0;
    pts_.col(0).minCoeff(&i0);
    simplex.push_back(static_cast<int>(i0));
    std::vector<VecX> basis;
    for (int k = 0; k < dim_; ++k) {
      double best = -1.0;
      int arg = -1;
      const VecX origin = point(simplex[0]);
      for (Eigen::Index i = 0; i < n; ++i) {
        VecX r = point(static_cast<int>(i)) - origin;
        for (const auto& b : basis) r -= b * b.dot(r);
        const double d = r.norm();
        if (d > best) {
          best = d;
          arg = static_cast<int>(i);
        }
      }
      if (!(best > 1e3 * eps_)) throw DegenerateError("points are not full-dimensional");
      VecX r = point(arg) - origin;
      for (const auto& b : basis) r -= b * b.dot(r);
      basis.push_back(r / r.norm());
      simplex.push_back(arg);
    }
    interior_ = VecX::Zero(dim_);
    for (int v : simplex) interior_ += point(v);
    interior_ /= static_cast<double>(simplex.size());

    facets_.clear();
    for (int skip = 0; skip <= dim_; ++skip) {
      HullFacet f;
      for (int k = 0; k <= dim_; ++k)
        if (k != skip) f.vertices.push_back(simplex[k]);
      set_plane(f);
      facets_.push_back(std::move(f));
    }
    // facet `skip` omits simplex[skip]; neighbor opposite vertex simplex[k] omits it too
    for (int skip = 0; skip <= dim_; ++skip) {
      auto& f = facets_[skip];
      f.neighbors.resize(dim_);
      for (int k = 0; k < dim_; ++k) {
        const int v = f.vertices[k];
        f.neighbors[k] = static_cast<int>(std::find(simplex.begin(), simplex.end(), v) - simplex.begin());
      }
    }
    std::vector<char> used(n, 0);
    for (int v : simplex) used[v] = 1;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (used[i]) continue;
      assign(static_cast<int>(i), 0, static_cast<int>(facets_.size()));
    }

    std::vector<int> stack;
    for (int fi = 0; fi < static_cast<int>(facets_.size()); ++fi) stack.push_back(fi);
    while (!stack.empty()) {
      const int fi = stack.back();
      stack.pop_back();
      if (!facets_[fi].alive || facets_[fi].outside.empty()) continue;
      const int first_new = static_cast<int>(facets_.size());
      add_point(fi);
      for (int k = first_new; k < static_cast<int>(facets_.size()); ++k) stack.push_back(k);
    }
  }

  void assign(int p, int first, int last) {
    const VecX x = point(p);
    double best = eps_;
    int arg = -1;
    for (int fi = first; fi < last; ++fi) {
      if (!facets_[fi].alive) continue;
      const double d = facets_[fi].distance(x);
      if (d > best) {
        best = d;
        arg = fi;
      }
    }
    if (arg >= 0) facets_[arg].outside.push_back(p);
  }

  void add_point(int start) {
    // eye point: farthest outside point of the start facet
    auto& sf = facets_[start];
    int eye = sf.outside.front();
    double far = sf.distance(point(eye));
    for (int p : sf.outside) {
      const double d = sf.distance(point(p));
      if (d > far) {
        far = d;
        eye = p;
      }
    }
    const VecX e = point(eye);

    std::vector<int> visible{start};
    std::set<int> vis_set{start};
    for (std::size_t q = 0; q < visible.size(); ++q) {
      for (int nb : facets_[visible[q]].neighbors) {
        if (vis_set.count(nb)) continue;
        if (facets_[nb].distance(e) > eps_) {
          vis_set.insert(nb);
          visible.push_back(nb);
        }
      }
    }

    const int first_new = static_cast<int>(facets_.size());
    std::map<std::vector<int>, std::pair<int, int>> open;
    for (int vf : visible) {
      for (int k = 0; k < dim_; ++k) {
        const int nb = facets_[vf].neighbors[k];
        if (vis_set.count(nb)) continue;
        HullFacet nf;
        for (int j = 0; j < dim_; ++j)
          if (j != k) nf.vertices.push_back(facets_[vf].vertices[j]);
        nf.vertices.push_back(eye);
        set_plane(nf);
        nf.neighbors.assign(dim_, -1);
        const int id = static_cast<int>(facets_.size());
        nf.neighbors[dim_ - 1] = nb;
        auto& nbf = facets_[nb];
        for (int j = 0; j < dim_; ++j)
          if (nbf.neighbors[j] == vf) nbf.neighbors[j] = id;
        facets_.push_back(std::move(nf));
        // link facets sharing the eye across sub-ridges
        for (int j = 0; j < dim_ - 1; ++j) {
          std::vector<int> key;
          for (int r = 0; r < dim_ - 1; ++r)
            if (r != j) key.push_back(facets_[id].vertices[r]);
          std::sort(key.begin(), key.end());
          auto it = open.find(key);
          if (it == open.end()) {
            open.emplace(std::move(key), std::make_pair(id, j));
          } else {
            facets_[id].neighbors[j] = it->second.first;
            facets_[it->second.first].neighbors[it->second.second] = id;
            open.erase(it);
          }
        }
      }
    }
    if (!open.empty()) throw NumericalError("hull horizon is not closed", 0.0);
    const int last_new = static_cast<int>(facets_.size());
    for (int vf : visible) {
      facets_[vf].alive = false;
      for (int p : facets_[vf].outside)
        if (p != eye) assign(p, first_new, last_new);
      facets_[vf].outside.clear();
      facets_[vf].outside.shrink_to_fit();
    }
  }

  MatX pts_;
  int dim_;
  double scale_ = 1.0;
  double eps_ = 0.0;
  VecX interior_;
  std::vector<HullFacet> facets_;
};

}  // namespace sixdls

#endif  // SIXDLS_CONVEX_HULL_HPP_
