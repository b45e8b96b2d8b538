#pragma once

// Exact lattice and polytope geometry for small supports: convex hulls by
// facet enumeration, fan triangulations, volumes, Minkowski sums, mixed
// volumes, difference lattices and the essentiality predicate.
//
// Coordinates are 64-bit integers; every determinant is evaluated in 128-bit
// arithmetic and checked back into range, so overflow is reported instead of
// silently wrapping. Supports are limited to |coordinate| <= kCoordLimit.

#include "sparseres/numeric.hpp"

#include <algorithm>
#include <compare>
#include <functional>
#include <ostream>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace sparseres {

using Coord = std::int64_t;
inline constexpr Coord kCoordLimit = Coord{1} << 24;

class LatticePoint {
 public:
  LatticePoint() = default;
  explicit LatticePoint(std::vector<Coord> coords) : coords_(std::move(coords)) {}
  LatticePoint(std::initializer_list<Coord> coords) : coords_(coords) {}

  std::size_t dim() const noexcept { return coords_.size(); }
  Coord operator[](std::size_t k) const { return coords_[k]; }
  Coord& operator[](std::size_t k) { return coords_[k]; }
  const std::vector<Coord>& coords() const noexcept { return coords_; }

  friend LatticePoint operator+(const LatticePoint& a, const LatticePoint& b) {
    LatticePoint r = a;
    for (std::size_t k = 0; k < r.dim(); ++k) r.coords_[k] += b.coords_[k];
    return r;
  }
  friend LatticePoint operator-(const LatticePoint& a, const LatticePoint& b) {
    LatticePoint r = a;
    for (std::size_t k = 0; k < r.dim(); ++k) r.coords_[k] -= b.coords_[k];
    return r;
  }
  friend auto operator<=>(const LatticePoint&, const LatticePoint&) = default;
  friend bool operator==(const LatticePoint&, const LatticePoint&) = default;

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t k = 0; k < coords_.size(); ++k) {
      if (k) s += ",";
      s += std::to_string(coords_[k]);
    }
    return s + ")";
  }

 private:
  std::vector<Coord> coords_;
};

using RationalPoint = std::vector<Rational>;

inline std::ostream& operator<<(std::ostream& os, const LatticePoint& p) { return os << p.to_string(); }

inline RationalPoint to_rational(const LatticePoint& p) {
  RationalPoint r(p.dim());
  for (std::size_t k = 0; k < p.dim(); ++k) r[k] = p[k];
  return r;
}

/// A finite set of lattice points, kept sorted lexicographically.
class Support {
 public:
  Support() = default;
  explicit Support(std::vector<LatticePoint> points) : points_(std::move(points)) {
    if (points_.empty()) fail(ErrorKind::kInvalidInput, "support must be nonempty");
    const std::size_t n = points_.front().dim();
    for (const auto& p : points_) {
      if (p.dim() != n) fail(ErrorKind::kInvalidInput, "support points differ in dimension");
      for (Coord c : p.coords())
        if (c > kCoordLimit || c < -kCoordLimit)
          fail(ErrorKind::kInvalidInput, "coordinate out of supported range: " + p.to_string());
    }
    std::sort(points_.begin(), points_.end());
    if (std::adjacent_find(points_.begin(), points_.end()) != points_.end())
      fail(ErrorKind::kInvalidInput, "support contains duplicate points");
  }

  std::size_t size() const noexcept { return points_.size(); }
  std::size_t dim() const { return points_.front().dim(); }
  const LatticePoint& operator[](std::size_t k) const { return points_[k]; }
  const std::vector<LatticePoint>& points() const noexcept { return points_; }
  auto begin() const { return points_.begin(); }
  auto end() const { return points_.end(); }

  /// Position of p in canonical order, if present.
  std::optional<std::size_t> index_of(const LatticePoint& p) const {
    auto it = std::lower_bound(points_.begin(), points_.end(), p);
    if (it == points_.end() || *it != p) return std::nullopt;
    return static_cast<std::size_t>(it - points_.begin());
  }

  Support translated(const LatticePoint& t) const {
    std::vector<LatticePoint> pts;
    for (const auto& p : points_) pts.push_back(p + t);
    return Support(std::move(pts));
  }

  friend bool operator==(const Support&, const Support&) = default;

 private:
  std::vector<LatticePoint> points_;
};

/// Pointwise sum A + B with duplicates removed.
inline Support minkowski_sum(const Support& a, const Support& b) {
  std::set<LatticePoint> pts;
  for (const auto& p : a)
    for (const auto& q : b) pts.insert(p + q);
  return Support(std::vector<LatticePoint>(pts.begin(), pts.end()));
}

/// k-fold pointwise sum k*A.
inline Support dilate(const Support& a, unsigned k) {
  if (k == 0) fail(ErrorKind::kInvalidInput, "dilation factor must be positive");
  Support r = a;
  for (unsigned t = 1; t < k; ++t) r = minkowski_sum(r, a);
  return r;
}

/// n+1 supports in Z^n.
class SupportFamily {
 public:
  SupportFamily() = default;
  SupportFamily(std::size_t dim, std::vector<Support> supports, std::string name = {})
      : dim_(dim), supports_(std::move(supports)), name_(std::move(name)) {
    if (dim_ < 1) fail(ErrorKind::kInvalidInput, "family dimension must be at least 1");
    if (supports_.size() != dim_ + 1)
      fail(ErrorKind::kInvalidInput, "a family in dimension " + std::to_string(dim_) +
                                         " needs exactly " + std::to_string(dim_ + 1) +
                                         " supports, got " + std::to_string(supports_.size()));
    for (const auto& s : supports_)
      if (s.dim() != dim_) fail(ErrorKind::kInvalidInput, "support dimension does not match family");
  }

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return supports_.size(); }
  const Support& operator[](std::size_t i) const { return supports_[i]; }
  const std::vector<Support>& supports() const noexcept { return supports_; }
  const std::string& name() const noexcept { return name_; }

  std::vector<std::size_t> cardinalities() const {
    std::vector<std::size_t> m;
    for (const auto& s : supports_) m.push_back(s.size());
    return m;
  }

  SupportFamily dilated(unsigned k) const {
    std::vector<Support> s;
    for (const auto& a : supports_) s.push_back(dilate(a, k));
    return SupportFamily(dim_, std::move(s), name_.empty() ? "" : name_ + "*" + std::to_string(k));
  }

 private:
  std::size_t dim_ = 0;
  std::vector<Support> supports_;
  std::string name_;
};

namespace detail {

using Wide = __int128;

inline Coord narrow(Wide v) {
  if (v > std::numeric_limits<Coord>::max() || v < std::numeric_limits<Coord>::min())
    fail(ErrorKind::kInvariant, "64-bit overflow in lattice arithmetic");
  return static_cast<Coord>(v);
}

/// Determinant of a small square integer matrix (fraction-free elimination).
inline Wide small_det(std::vector<std::vector<Wide>> a) {
  const std::size_t k = a.size();
  if (k == 0) return 1;
  Wide prev = 1;
  int sign = 1;
  for (std::size_t c = 0; c + 1 < k; ++c) {
    if (a[c][c] == 0) {
      std::size_t r = c + 1;
      while (r < k && a[r][c] == 0) ++r;
      if (r == k) return 0;
      std::swap(a[r], a[c]);
      sign = -sign;
    }
    for (std::size_t r = c + 1; r < k; ++r) {
      for (std::size_t j = c + 1; j < k; ++j)
        a[r][j] = (a[r][j] * a[c][c] - a[r][c] * a[c][j]) / prev;
      a[r][c] = 0;
    }
    prev = a[c][c];
  }
  return sign * a[k - 1][k - 1];
}

inline Coord gcd_abs(Coord a, Coord b) { return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b); }

/// Rank of a set of integer vectors (exact, via rational elimination).
inline std::size_t rank_of(const std::vector<std::vector<Coord>>& rows, std::size_t width) {
  std::vector<std::vector<Rational>> m;
  for (const auto& r : rows) {
    std::vector<Rational> row(width);
    for (std::size_t k = 0; k < width; ++k) row[k] = r[k];
    m.push_back(std::move(row));
  }
  std::size_t rank = 0;
  for (std::size_t c = 0; c < width && rank < m.size(); ++c) {
    std::size_t p = rank;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[rank]);
    for (std::size_t r = rank + 1; r < m.size(); ++r) {
      if (m[r][c] == 0) continue;
      Rational f = m[r][c] / m[rank][c];
      for (std::size_t j = c; j < width; ++j) m[r][j] -= f * m[rank][j];
    }
    ++rank;
  }
  return rank;
}

inline std::size_t affine_rank(const std::vector<LatticePoint>& pts) {
  if (pts.size() <= 1) return 0;
  std::vector<std::vector<Coord>> diffs;
  for (std::size_t k = 1; k < pts.size(); ++k) diffs.push_back((pts[k] - pts[0]).coords());
  return rank_of(diffs, pts[0].dim());
}

/// Coordinate indices on which the affine hull of pts projects injectively.
inline std::vector<std::size_t> injective_coordinates(const std::vector<LatticePoint>& pts,
                                                      std::size_t rank) {
  std::vector<std::vector<Coord>> diffs;
  for (std::size_t k = 1; k < pts.size(); ++k) diffs.push_back((pts[k] - pts[0]).coords());
  std::vector<std::size_t> chosen;
  for (std::size_t c = 0; c < pts[0].dim() && chosen.size() < rank; ++c) {
    auto trial = chosen;
    trial.push_back(c);
    std::vector<std::vector<Coord>> proj;
    for (const auto& d : diffs) {
      std::vector<Coord> row;
      for (std::size_t t : trial) row.push_back(d[t]);
      proj.push_back(std::move(row));
    }
    if (rank_of(proj, trial.size()) == trial.size()) chosen = std::move(trial);
  }
  return chosen;
}

inline std::vector<LatticePoint> project(const std::vector<LatticePoint>& pts,
                                         const std::vector<std::size_t>& coords) {
  std::vector<LatticePoint> out;
  for (const auto& p : pts) {
    std::vector<Coord> c;
    for (std::size_t t : coords) c.push_back(p[t]);
    out.emplace_back(std::move(c));
  }
  return out;
}

inline void for_each_combination(std::size_t n, std::size_t k,
                                 const std::function<void(const std::vector<std::size_t>&)>& fn) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    fn(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace detail


/// Halfspace normal . x >= offset with a primitive inward normal. `vertices`
/// indexes the owning polytope's vertex list.
struct Facet {
  std::vector<Coord> normal;
  Coord offset = 0;
  std::vector<std::size_t> vertices;

  /// normal . x - offset, exact.
  Rational slack(const RationalPoint& x) const {
    Rational s = -Rational(offset);
    for (std::size_t k = 0; k < normal.size(); ++k) s += normal[k] * x[k];
    return s;
  }
  detail::Wide slack(const LatticePoint& x) const {
    detail::Wide s = -detail::Wide(offset);
    for (std::size_t k = 0; k < normal.size(); ++k) s += detail::Wide(normal[k]) * x[k];
    return s;
  }
};

/// Where a point sits relative to a full-dimensional polytope.
enum class Location { kInterior, kBoundary, kExterior };

/// Convex hull of lattice points. Vertices are integral and kept in
/// lexicographic order; the facet list is filled only when the polytope is
/// full-dimensional in its ambient space.
class Polytope {
 public:
  Polytope() = default;
  Polytope(std::size_t ambient_dim, std::size_t affine_dim, std::vector<LatticePoint> vertices,
           std::vector<Facet> facets)
      : ambient_dim_(ambient_dim),
        affine_dim_(affine_dim),
        vertices_(std::move(vertices)),
        facets_(std::move(facets)) {}

  std::size_t ambient_dim() const noexcept { return ambient_dim_; }
  std::size_t affine_dim() const noexcept { return affine_dim_; }
  bool full_dimensional() const noexcept { return affine_dim_ == ambient_dim_; }
  const std::vector<LatticePoint>& vertices() const noexcept { return vertices_; }
  const std::vector<Facet>& facets() const noexcept { return facets_; }

  Location locate(const RationalPoint& x) const {
    if (!full_dimensional()) fail(ErrorKind::kInvariant, "locate() needs a full-dimensional polytope");
    bool boundary = false;
    for (const auto& f : facets_) {
      const Rational s = f.slack(x);
      if (s < 0) return Location::kExterior;
      if (s == 0) boundary = true;
    }
    return boundary ? Location::kBoundary : Location::kInterior;
  }

  bool contains(const LatticePoint& x) const {
    if (!full_dimensional()) fail(ErrorKind::kInvariant, "contains() needs a full-dimensional polytope");
    return std::all_of(facets_.begin(), facets_.end(), [&](const Facet& f) { return f.slack(x) >= 0; });
  }

  /// Axis-aligned bounding box [lo, hi] of the vertices.
  std::pair<LatticePoint, LatticePoint> bounding_box() const {
    LatticePoint lo = vertices_.front(), hi = vertices_.front();
    for (const auto& v : vertices_)
      for (std::size_t k = 0; k < ambient_dim_; ++k) {
        lo[k] = std::min(lo[k], v[k]);
        hi[k] = std::max(hi[k], v[k]);
      }
    return {lo, hi};
  }

 private:
  std::size_t ambient_dim_ = 0;
  std::size_t affine_dim_ = 0;
  std::vector<LatticePoint> vertices_;
  std::vector<Facet> facets_;
};

namespace detail {

struct HullData {
  std::vector<std::size_t> vertex_ids;  // into the input point list
  std::vector<std::vector<Coord>> normals;
  std::vector<Coord> offsets;
  std::vector<std::vector<std::size_t>> facet_ids;  // input ids of vertices on each facet
};

/// Facet enumeration for a full-dimensional, duplicate-free point set: every
/// k-subset spans a candidate hyperplane, kept when all points lie on one side.
inline HullData hull_full(const std::vector<LatticePoint>& pts) {
  const std::size_t k = pts.front().dim();
  HullData h;
  if (k == 1) {
    std::size_t lo = 0, hi = 0;
    for (std::size_t t = 1; t < pts.size(); ++t) {
      if (pts[t][0] < pts[lo][0]) lo = t;
      if (pts[t][0] > pts[hi][0]) hi = t;
    }
    h.vertex_ids = {lo, hi};
    std::sort(h.vertex_ids.begin(), h.vertex_ids.end());
    h.normals = {{1}, {-1}};
    h.offsets = {pts[lo][0], -pts[hi][0]};
    h.facet_ids = {{lo}, {hi}};
    return h;
  }

  std::set<std::vector<Coord>> seen;
  for_each_combination(pts.size(), k, [&](const std::vector<std::size_t>& idx) {
    const LatticePoint& p0 = pts[idx[0]];
    std::vector<std::vector<Wide>> vecs;
    for (std::size_t j = 1; j < k; ++j) {
      std::vector<Wide> v(k);
      for (std::size_t c = 0; c < k; ++c) v[c] = Wide(pts[idx[j]][c]) - p0[c];
      vecs.push_back(std::move(v));
    }
    std::vector<Wide> normal(k);
    bool nonzero = false;
    for (std::size_t c = 0; c < k; ++c) {
      std::vector<std::vector<Wide>> minor;
      for (const auto& v : vecs) {
        std::vector<Wide> row;
        for (std::size_t t = 0; t < k; ++t)
          if (t != c) row.push_back(v[t]);
        minor.push_back(std::move(row));
      }
      normal[c] = ((c % 2) ? -1 : 1) * small_det(std::move(minor));
      nonzero = nonzero || normal[c] != 0;
    }
    if (!nonzero) return;
    Coord g = 0;
    for (Wide c : normal) g = gcd_abs(g, narrow(c));
    std::vector<Coord> n(k);
    for (std::size_t c = 0; c < k; ++c) n[c] = narrow(normal[c] / g);

    Wide off = 0;
    for (std::size_t c = 0; c < k; ++c) off += Wide(n[c]) * p0[c];
    bool pos = false, neg = false;
    for (const auto& p : pts) {
      Wide s = -off;
      for (std::size_t c = 0; c < k; ++c) s += Wide(n[c]) * p[c];
      if (s > 0) pos = true;
      if (s < 0) neg = true;
      if (pos && neg) return;
    }
    if (neg) {
      for (auto& c : n) c = -c;
      off = -off;
    }
    if (!seen.insert(n).second) return;
    h.normals.push_back(n);
    h.offsets.push_back(narrow(off));
  });

  h.facet_ids.resize(h.normals.size());
  std::vector<std::vector<std::vector<Coord>>> tight(pts.size());
  for (std::size_t f = 0; f < h.normals.size(); ++f)
    for (std::size_t t = 0; t < pts.size(); ++t) {
      Wide s = -Wide(h.offsets[f]);
      for (std::size_t c = 0; c < k; ++c) s += Wide(h.normals[f][c]) * pts[t][c];
      if (s == 0) tight[t].push_back(h.normals[f]);
    }
  for (std::size_t t = 0; t < pts.size(); ++t)
    if (tight[t].size() >= k && rank_of(tight[t], k) == k) h.vertex_ids.push_back(t);
  for (std::size_t f = 0; f < h.normals.size(); ++f)
    for (std::size_t t : h.vertex_ids) {
      Wide s = -Wide(h.offsets[f]);
      for (std::size_t c = 0; c < k; ++c) s += Wide(h.normals[f][c]) * pts[t][c];
      if (s == 0) h.facet_ids[f].push_back(t);
    }
  return h;
}

inline std::vector<LatticePoint> dedupe(std::vector<LatticePoint> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

/// Fan triangulation of a full-dimensional point set: cone from one vertex
/// over recursive triangulations of the facets not containing it. Simplices
/// are returned as k+1 indices into `pts`.
inline std::vector<std::vector<std::size_t>> triangulate_full(const std::vector<LatticePoint>& pts) {
  const std::size_t k = pts.front().dim();
  const HullData h = hull_full(pts);
  if (k == 1) return {h.vertex_ids};
  const std::size_t apex = h.vertex_ids.front();
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t f = 0; f < h.normals.size(); ++f) {
    const auto& ids = h.facet_ids[f];
    if (std::find(ids.begin(), ids.end(), apex) != ids.end()) continue;
    std::size_t drop = 0;
    while (h.normals[f][drop] == 0) ++drop;
    std::vector<std::size_t> keep;
    for (std::size_t c = 0; c < k; ++c)
      if (c != drop) keep.push_back(c);
    std::vector<LatticePoint> facet_pts;
    for (std::size_t id : ids) facet_pts.push_back(pts[id]);
    for (const auto& s : triangulate_full(project(facet_pts, keep))) {
      std::vector<std::size_t> simplex{apex};
      for (std::size_t j : s) simplex.push_back(ids[j]);
      out.push_back(std::move(simplex));
    }
  }
  return out;
}

inline Integer factorial(std::size_t k) {
  Integer f = 1;
  for (std::size_t t = 2; t <= k; ++t) f *= t;
  return f;
}

}  // namespace detail

/// Convex hull of a nonempty list of lattice points of uniform dimension.
/// Lower-dimensional hulls carry their affine dimension and no facets.
inline Polytope convex_hull(const std::vector<LatticePoint>& input) {
  if (input.empty()) fail(ErrorKind::kInvalidInput, "convex_hull of an empty point list");
  const std::size_t n = input.front().dim();
  for (const auto& p : input)
    if (p.dim() != n) fail(ErrorKind::kInvalidInput, "convex_hull: points differ in dimension");
  const std::vector<LatticePoint> pts = detail::dedupe(input);
  const std::size_t r = detail::affine_rank(pts);
  if (r == 0) return Polytope(n, 0, {pts.front()}, {});

  if (r < n) {
    const auto coords = detail::injective_coordinates(pts, r);
    const detail::HullData h = detail::hull_full(detail::project(pts, coords));
    std::vector<LatticePoint> verts;
    for (std::size_t id : h.vertex_ids) verts.push_back(pts[id]);
    std::sort(verts.begin(), verts.end());
    return Polytope(n, r, std::move(verts), {});
  }

  const detail::HullData h = detail::hull_full(pts);
  std::vector<std::size_t> ids = h.vertex_ids;
  std::sort(ids.begin(), ids.end(), [&](std::size_t a, std::size_t b) { return pts[a] < pts[b]; });
  std::map<std::size_t, std::size_t> position;
  std::vector<LatticePoint> verts;
  for (std::size_t t = 0; t < ids.size(); ++t) {
    position[ids[t]] = t;
    verts.push_back(pts[ids[t]]);
  }
  std::vector<Facet> facets;
  for (std::size_t f = 0; f < h.normals.size(); ++f) {
    Facet facet{h.normals[f], h.offsets[f], {}};
    for (std::size_t id : h.facet_ids[f]) facet.vertices.push_back(position.at(id));
    std::sort(facet.vertices.begin(), facet.vertices.end());
    facets.push_back(std::move(facet));
  }
  std::sort(facets.begin(), facets.end(),
            [](const Facet& a, const Facet& b) { return a.normal < b.normal; });
  return Polytope(n, n, std::move(verts), std::move(facets));
}

inline Polytope convex_hull(const Support& s) { return convex_hull(s.points()); }

/// Triangulation of a full-dimensional polytope into simplices over its
/// vertices (each simplex as dim+1 vertex indices).
inline std::vector<std::vector<std::size_t>> triangulate(const Polytope& p) {
  if (!p.full_dimensional()) return {};
  return detail::triangulate_full(p.vertices());
}

/// Exact Euclidean volume; zero for lower-dimensional polytopes.
inline Rational euclidean_volume(const Polytope& p) {
  if (!p.full_dimensional()) return 0;
  const std::size_t k = p.ambient_dim();
  const auto& v = p.vertices();
  Integer total = 0;
  for (const auto& s : triangulate(p)) {
    std::vector<std::vector<detail::Wide>> m;
    for (std::size_t j = 1; j <= k; ++j) {
      std::vector<detail::Wide> row(k);
      for (std::size_t c = 0; c < k; ++c) row[c] = detail::Wide(v[s[j]][c]) - v[s[0]][c];
      m.push_back(std::move(row));
    }
    detail::Wide d = detail::small_det(std::move(m));
    if (d < 0) d = -d;
    total += Integer(detail::narrow(d));
  }
  return Rational(total) / Rational(detail::factorial(k));
}

/// n! times the Euclidean volume; an integer for lattice polytopes.
inline Rational normalized_volume(const Polytope& p) {
  return euclidean_volume(p) * Rational(detail::factorial(p.ambient_dim()));
}

inline Polytope minkowski_sum(const Polytope& p, const Polytope& q) {
  if (p.ambient_dim() != q.ambient_dim())
    fail(ErrorKind::kInvalidInput, "minkowski_sum: ambient dimensions differ");
  std::vector<LatticePoint> sums;
  for (const auto& a : p.vertices())
    for (const auto& b : q.vertices()) sums.push_back(a + b);
  return convex_hull(sums);
}

/// Normalized mixed volume of n lattice polytopes in R^n by inclusion-exclusion
/// over the Euclidean volumes of all partial Minkowski sums.
inline Integer mixed_volume(const std::vector<Polytope>& polys) {
  if (polys.empty()) fail(ErrorKind::kInvalidInput, "mixed_volume needs at least one polytope");
  const std::size_t n = polys.front().ambient_dim();
  if (polys.size() != n)
    fail(ErrorKind::kInvalidInput, "mixed_volume needs exactly " + std::to_string(n) +
                                       " polytopes in R^" + std::to_string(n));
  for (const auto& p : polys)
    if (p.ambient_dim() != n) fail(ErrorKind::kInvalidInput, "mixed_volume: dimension mismatch");
  Rational mv = 0;
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    std::optional<Polytope> sum;
    std::size_t count = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!(mask >> i & 1u)) continue;
      ++count;
      sum = sum ? minkowski_sum(*sum, polys[i]) : polys[i];
    }
    const Rational vol = euclidean_volume(*sum);
    if ((n - count) % 2) mv -= vol;
    else mv += vol;
  }
  if (!is_integer(mv) || mv < 0)
    fail(ErrorKind::kInvariant, "mixed volume is not a nonnegative integer: " + mv.str());
  return to_integer(mv);
}

inline std::vector<Polytope> newton_polytopes(const SupportFamily& family) {
  std::vector<Polytope> q;
  for (const auto& s : family.supports()) q.push_back(convex_hull(s));
  return q;
}

/// Integer row basis in Hermite normal form: pivots positive, strictly
/// increasing pivot columns, entries above each pivot reduced into [0, pivot).
struct LatticeBasis {
  std::vector<std::vector<Integer>> rows;
  std::size_t rank = 0;
  std::size_t ambient_dim = 0;

  friend bool operator==(const LatticeBasis&, const LatticeBasis&) = default;
};

inline LatticeBasis hermite_normal_form(std::vector<std::vector<Integer>> m, std::size_t width) {
  std::size_t r = 0;
  std::vector<std::size_t> pivots;
  for (std::size_t c = 0; c < width && r < m.size(); ++c) {
    // Euclid on column c among rows r.. until one nonzero remains.
    while (true) {
      std::size_t best = m.size();
      for (std::size_t t = r; t < m.size(); ++t)
        if (m[t][c] != 0 && (best == m.size() || abs(m[t][c]) < abs(m[best][c]))) best = t;
      if (best == m.size()) break;
      std::swap(m[r], m[best]);
      bool done = true;
      for (std::size_t t = r + 1; t < m.size(); ++t) {
        if (m[t][c] == 0) continue;
        const Integer q = m[t][c] / m[r][c];
        for (std::size_t j = c; j < width; ++j) m[t][j] -= q * m[r][j];
        if (m[t][c] != 0) done = false;
      }
      if (done) break;
    }
    if (r < m.size() && m[r][c] != 0) {
      if (m[r][c] < 0)
        for (auto& x : m[r]) x = -x;
      pivots.push_back(c);
      ++r;
    }
  }
  m.resize(r);
  for (std::size_t t = 0; t < r; ++t) {
    const std::size_t c = pivots[t];
    for (std::size_t u = 0; u < t; ++u) {
      Integer q = m[u][c] / m[t][c];
      if (m[u][c] - q * m[t][c] < 0) q -= 1;
      if (q != 0)
        for (std::size_t j = c; j < width; ++j) m[u][j] -= q * m[t][j];
    }
  }
  return LatticeBasis{std::move(m), r, width};
}

namespace detail {

inline std::vector<std::vector<Integer>> difference_generators(const Support& s) {
  std::vector<std::vector<Integer>> gens;
  for (std::size_t t = 1; t < s.size(); ++t) {
    std::vector<Integer> g;
    for (std::size_t c = 0; c < s.dim(); ++c) g.push_back(Integer(s[t][c] - s[0][c]));
    gens.push_back(std::move(g));
  }
  return gens;
}

inline LatticeBasis difference_lattice_of(const SupportFamily& family,
                                          const std::vector<std::size_t>& subset) {
  std::vector<std::vector<Integer>> gens;
  for (std::size_t i : subset) {
    auto g = difference_generators(family[i]);
    gens.insert(gens.end(), g.begin(), g.end());
  }
  return hermite_normal_form(std::move(gens), family.dim());
}

}  // namespace detail

/// Basis of the lattice spanned by the differences within each support.
inline LatticeBasis difference_lattice(const SupportFamily& family) {
  std::vector<std::size_t> all(family.size());
  std::iota(all.begin(), all.end(), 0);
  return detail::difference_lattice_of(family, all);
}

/// [Z^n : L] for a full-rank basis.
inline Integer lattice_index(const LatticeBasis& basis, std::size_t n) {
  if (basis.rank != n || basis.ambient_dim != n)
    fail(ErrorKind::kInvalidInput, "family not full-dimensional / not essential: lattice rank " +
                                       std::to_string(basis.rank) + " < " + std::to_string(n));
  Integer idx = 1;
  for (std::size_t t = 0; t < n; ++t) idx *= basis.rows[t][t];
  return abs(idx);
}

struct Essentiality {
  bool essential = false;
  /// Support indices of the first violated rank condition (empty when essential).
  std::vector<std::size_t> witness;
};

/// Rank conditions: the whole family spans rank n and every nonempty proper
/// subfamily J spans rank at least |J|.
inline Essentiality is_essential(const SupportFamily& family) {
  const std::size_t count = family.size();
  std::vector<std::size_t> all(count);
  std::iota(all.begin(), all.end(), 0);
  if (detail::difference_lattice_of(family, all).rank < family.dim()) return {false, all};
  for (std::size_t size = 1; size < count; ++size) {
    std::optional<std::vector<std::size_t>> bad;
    detail::for_each_combination(count, size, [&](const std::vector<std::size_t>& subset) {
      if (!bad && detail::difference_lattice_of(family, subset).rank < size) bad = subset;
    });
    if (bad) return {false, *bad};
  }
  return {true, {}};
}

/// Mixed volume of all Newton polytopes except the i-th, divided by the
/// lattice index: the degree of the resultant in the i-th coefficient group.
inline Integer mv_deficient(const SupportFamily& family, std::size_t i,
                            const std::vector<Polytope>& newton) {
  const Essentiality ess = is_essential(family);
  if (!ess.essential) fail(ErrorKind::kInvalidInput, "family is not essential");
  const Integer index = lattice_index(difference_lattice(family), family.dim());
  std::vector<Polytope> rest;
  for (std::size_t t = 0; t < family.size(); ++t)
    if (t != i) rest.push_back(newton[t]);
  const Integer mv = mixed_volume(rest);
  if (mv % index != 0)
    fail(ErrorKind::kInvariant, "mixed volume " + mv.str() + " not divisible by index " + index.str());
  const Integer d = mv / index;
  if (d <= 0) fail(ErrorKind::kInvariant, "deficient mixed volume must be positive");
  return d;
}

inline Integer mv_deficient(const SupportFamily& family, std::size_t i) {
  return mv_deficient(family, i, newton_polytopes(family));
}

/// (MV_0, ..., MV_n).
inline std::vector<Integer> mv_vector(const SupportFamily& family) {
  const auto newton = newton_polytopes(family);
  std::vector<Integer> mv;
  for (std::size_t i = 0; i < family.size(); ++i) mv.push_back(mv_deficient(family, i, newton));
  return mv;
}

}  // namespace sparseres
