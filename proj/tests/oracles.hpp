#pragma once

// Independent reference implementations used by the unit tests. None of them
// shares code with the library beyond the basic value types.

#include "sparseres/lattice_geom.hpp"
#include "sparseres/multipoly.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <vector>

namespace oracle {

using sparseres::Coord;
using sparseres::Integer;
using sparseres::LatticePoint;
using sparseres::Rational;

inline __int128 cross(const LatticePoint& o, const LatticePoint& a, const LatticePoint& b) {
  return static_cast<__int128>(a[0] - o[0]) * (b[1] - o[1]) - static_cast<__int128>(a[1] - o[1]) * (b[0] - o[0]);
}

inline bool on_segment(const LatticePoint& p, const LatticePoint& a, const LatticePoint& b) {
  return cross(a, b, p) == 0 && std::min(a[0], b[0]) <= p[0] && p[0] <= std::max(a[0], b[0]) &&
         std::min(a[1], b[1]) <= p[1] && p[1] <= std::max(a[1], b[1]);
}

inline bool in_triangle(const LatticePoint& p, const LatticePoint& a, const LatticePoint& b, const LatticePoint& c) {
  const auto d1 = cross(a, b, p), d2 = cross(b, c, p), d3 = cross(c, a, p);
  const bool neg = d1 < 0 || d2 < 0 || d3 < 0, pos = d1 > 0 || d2 > 0 || d3 > 0;
  return !(neg && pos);
}

/// Planar convex-hull membership by Caratheodory: p lies in conv(S) iff it
/// lies in the hull of at most three points of S.
inline bool in_hull_2d(const LatticePoint& p, const std::vector<LatticePoint>& s) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == p) return true;
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      if (on_segment(p, s[i], s[j])) return true;
      for (std::size_t k = j + 1; k < s.size(); ++k)
        if (cross(s[i], s[j], s[k]) != 0 && in_triangle(p, s[i], s[j], s[k])) return true;
    }
  }
  return false;
}

/// Vertices of conv(pts): the points not in the hull of the others.
inline std::vector<LatticePoint> hull_vertices_2d(std::vector<LatticePoint> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  std::vector<LatticePoint> out;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    std::vector<LatticePoint> others = pts;
    others.erase(others.begin() + static_cast<std::ptrdiff_t>(i));
    if (!in_hull_2d(pts[i], others)) out.push_back(pts[i]);
  }
  return out;
}

/// Lattice points of t * conv(pts) in the plane.
inline std::size_t ehrhart_count_2d(const std::vector<LatticePoint>& pts, Coord t) {
  std::vector<LatticePoint> scaled;
  Coord lo0 = 0, hi0 = 0, lo1 = 0, hi1 = 0;
  for (const auto& p : pts) {
    scaled.push_back({p[0] * t, p[1] * t});
    lo0 = std::min(lo0, p[0] * t), hi0 = std::max(hi0, p[0] * t);
    lo1 = std::min(lo1, p[1] * t), hi1 = std::max(hi1, p[1] * t);
  }
  std::size_t n = 0;
  for (Coord x = lo0; x <= hi0; ++x)
    for (Coord y = lo1; y <= hi1; ++y) n += in_hull_2d({x, y}, scaled);
  return n;
}

/// Ehrhart polynomial L(t) = a t^2 + b t + 1 of a lattice polygon; returns
/// the normalized area 2a from L(1), L(2), L(3).
inline Integer ehrhart_normalized_area(const std::vector<LatticePoint>& pts) {
  const auto l1 = static_cast<long long>(ehrhart_count_2d(pts, 1));
  const auto l2 = static_cast<long long>(ehrhart_count_2d(pts, 2));
  const auto l3 = static_cast<long long>(ehrhart_count_2d(pts, 3));
  return Integer(l3 - 2 * l2 + l1);
}

/// Index of the lattice spanned by integer rows in Z^2 as the gcd of all
/// 2x2 minors.
inline Integer index_by_minors_2d(const std::vector<LatticePoint>& gens) {
  Integer g = 0;
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      g = gcd(g, Integer(gens[i][0] * gens[j][1] - gens[i][1] * gens[j][0]));
  return abs(g);
}

/// Dense product of polynomials given as exponent-vector maps.
using Dense = std::map<std::vector<unsigned>, Integer>;

inline Dense to_dense(const sparseres::SparsePoly& p, std::size_t nv) {
  Dense d;
  for (const auto& t : p.terms()) {
    std::vector<unsigned> e(nv);
    for (std::size_t v = 0; v < nv; ++v) e[v] = t.mono[v];
    d[e] = t.coef;
  }
  return d;
}

inline Dense dense_product(const Dense& a, const Dense& b) {
  Dense out;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      std::vector<unsigned> e(ea.size());
      for (std::size_t v = 0; v < e.size(); ++v) e[v] = ea[v] + eb[v];
      out[e] += ca * cb;
    }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

/// Laplace expansion along the first row.
inline Integer cofactor_det(const std::vector<std::vector<Integer>>& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  Integer det = 0;
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::vector<Integer>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Integer> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(m[r][k]);
      minor.push_back(std::move(row));
    }
    const Integer term = m[0][c] * cofactor_det(minor);
    det += c % 2 ? Integer(-term) : term;
  }
  return det;
}

}  // namespace oracle
