#pragma once

// Coherent mixed subdivisions of a Minkowski sum from integer liftings, the
// generic shift delta, and cell location for lattice points of Q + delta.

#include "sparseres/lattice_geom.hpp"
#include "sparseres/numeric.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace sparseres {

/// Raised when a lifting or shift is not generic enough; callers reseed.
class DegenerateConstruction : public Error {
 public:
  explicit DegenerateConstruction(const std::string& what) : Error(ErrorKind::kExtraction, what) {}
};

/// Integer weight per support point; weights[i][k] lifts the k-th point of
/// the i-th support.
struct Lifting {
  std::vector<std::vector<Coord>> weights;
  std::uint64_t seed = 0;
  Coord range = 0;
};

/// Default weight range: 12 * (total number of support points)^2.
inline Coord default_lifting_range(const std::vector<Support>& supports) {
  Coord total = 0;
  for (const auto& s : supports) total += static_cast<Coord>(s.size());
  return 12 * total * total;
}

/// Weights drawn uniformly from [0, range]; a zero range gives the all-zero
/// (degenerate) lifting.
inline Lifting random_lifting(const std::vector<Support>& supports, std::uint64_t seed, Coord range) {
  if (range < 0) fail(ErrorKind::kInvalidInput, "lifting range must be nonnegative");
  Rng rng(seed);
  Lifting l{{}, seed, range};
  for (const auto& s : supports) {
    std::vector<Coord> w;
    for (std::size_t k = 0; k < s.size(); ++k) w.push_back(range == 0 ? 0 : rng.uniform_int(0, range));
    l.weights.push_back(std::move(w));
  }
  return l;
}

inline Lifting random_lifting(const SupportFamily& family, std::uint64_t seed, Coord range) {
  return random_lifting(family.supports(), seed, range);
}

/// One cell F_0 + ... + F_k of a mixed subdivision. faces[i] lists indices
/// into the i-th support.
struct Cell {
  std::vector<std::vector<std::size_t>> faces;
  std::vector<std::size_t> face_dims;
  Polytope polytope;

  bool is_singleton(std::size_t i) const { return faces[i].size() == 1; }

  std::size_t singleton_count() const {
    std::size_t k = 0;
    for (const auto& f : faces) k += f.size() == 1;
    return k;
  }

  /// For n+1 summands in R^n: the index i when the cell is i-mixed (F_i a
  /// vertex, every other summand an edge).
  std::optional<std::size_t> mixed_index() const {
    std::optional<std::size_t> idx;
    for (std::size_t i = 0; i < faces.size(); ++i) {
      if (face_dims[i] == 0) {
        if (idx) return std::nullopt;
        idx = i;
      } else if (face_dims[i] != 1) {
        return std::nullopt;
      }
    }
    return idx;
  }

  /// For n summands in R^n: every summand is an edge.
  bool is_fully_mixed() const {
    return std::all_of(face_dims.begin(), face_dims.end(), [](std::size_t d) { return d == 1; });
  }
};

struct MixedSubdivision {
  std::size_t dim = 0;
  std::vector<Support> supports;
  Lifting lifting;
  Polytope total;  // Q = sum of the Newton polytopes
  std::vector<Cell> cells;
};

namespace detail {

inline Polytope hull_of_sum(const std::vector<Support>& supports,
                            const std::vector<std::vector<std::size_t>>& faces) {
  std::vector<LatticePoint> acc{LatticePoint(std::vector<Coord>(supports.front().dim(), 0))};
  for (std::size_t i = 0; i < supports.size(); ++i) {
    std::vector<LatticePoint> face;
    for (std::size_t k : faces[i]) face.push_back(supports[i][k]);
    const Polytope fp = convex_hull(face);
    std::vector<LatticePoint> next;
    for (const auto& a : acc)
      for (const auto& v : fp.vertices()) next.push_back(a + v);
    acc = convex_hull(next).vertices();
  }
  return convex_hull(acc);
}

inline RationalPoint centroid(const Polytope& p) {
  RationalPoint c(p.ambient_dim(), Rational(0));
  for (const auto& v : p.vertices())
    for (std::size_t k = 0; k < c.size(); ++k) c[k] += v[k];
  for (auto& x : c) x /= static_cast<long>(p.vertices().size());
  return c;
}

}  // namespace detail

/// Projects the lower facets of the lifted Minkowski sum. Each lower facet
/// with inward normal (w, w_last) yields the cell whose i-th summand is the
/// set of points of A_i minimizing w.a + w_last * lift(a). Rejects liftings
/// that produce non-tight cells or an inexact cover.
inline MixedSubdivision build_subdivision(const std::vector<Support>& supports, const Lifting& lifting) {
  if (supports.empty()) fail(ErrorKind::kInvalidInput, "no supports to subdivide");
  const std::size_t n = supports.front().dim();
  if (lifting.weights.size() != supports.size())
    fail(ErrorKind::kInvalidInput, "lifting does not match supports");

  // Lowest lift over every sum point.
  std::map<LatticePoint, Coord> lowest;
  std::vector<std::size_t> idx(supports.size(), 0);
  while (true) {
    LatticePoint p(std::vector<Coord>(n, 0));
    Coord lift = 0;
    for (std::size_t i = 0; i < supports.size(); ++i) {
      p = p + supports[i][idx[i]];
      lift += lifting.weights[i][idx[i]];
    }
    auto [it, fresh] = lowest.try_emplace(p, lift);
    if (!fresh) it->second = std::min(it->second, lift);
    std::size_t i = 0;
    while (i < supports.size() && ++idx[i] == supports[i].size()) idx[i++] = 0;
    if (i == supports.size()) break;
  }
  std::vector<LatticePoint> base, lifted;
  for (const auto& [p, z] : lowest) {
    base.push_back(p);
    std::vector<Coord> c = p.coords();
    c.push_back(z);
    lifted.emplace_back(std::move(c));
  }

  MixedSubdivision sub{n, supports, lifting, convex_hull(base), {}};
  if (!sub.total.full_dimensional())
    fail(ErrorKind::kInvalidInput, "Minkowski sum is not full-dimensional");
  if (detail::affine_rank(lifted) < n + 1)
    throw DegenerateConstruction("degenerate lifting (lifted points are coplanar), reseed");

  const detail::HullData h = detail::hull_full(lifted);
  for (std::size_t f = 0; f < h.normals.size(); ++f) {
    const auto& w = h.normals[f];
    if (w[n] <= 0) continue;
    Cell cell;
    std::size_t dim_sum = 0;
    for (std::size_t i = 0; i < supports.size(); ++i) {
      std::vector<detail::Wide> val;
      for (std::size_t k = 0; k < supports[i].size(); ++k) {
        detail::Wide v = detail::Wide(w[n]) * lifting.weights[i][k];
        for (std::size_t c = 0; c < n; ++c) v += detail::Wide(w[c]) * supports[i][k][c];
        val.push_back(v);
      }
      const detail::Wide lo = *std::min_element(val.begin(), val.end());
      std::vector<std::size_t> face;
      std::vector<LatticePoint> pts;
      for (std::size_t k = 0; k < val.size(); ++k)
        if (val[k] == lo) {
          face.push_back(k);
          pts.push_back(supports[i][k]);
        }
      const std::size_t d = detail::affine_rank(pts);
      dim_sum += d;
      cell.faces.push_back(std::move(face));
      cell.face_dims.push_back(d);
    }
    if (dim_sum != n)
      throw DegenerateConstruction("degenerate lifting (non-tight cell), reseed");
    cell.polytope = detail::hull_of_sum(supports, cell.faces);
    if (!cell.polytope.full_dimensional())
      throw DegenerateConstruction("degenerate lifting (flat cell), reseed");
    sub.cells.push_back(std::move(cell));
  }

  // Exact cover and pairwise disjoint interiors.
  Rational covered = 0;
  for (const auto& c : sub.cells) covered += euclidean_volume(c.polytope);
  if (covered != euclidean_volume(sub.total))
    throw DegenerateConstruction("cell volumes do not cover Q exactly, reseed");
  for (std::size_t a = 0; a < sub.cells.size(); ++a) {
    const RationalPoint probe = detail::centroid(sub.cells[a].polytope);
    for (std::size_t b = 0; b < sub.cells.size(); ++b) {
      const Location loc = sub.cells[b].polytope.locate(probe);
      if ((a == b) != (loc == Location::kInterior))
        fail(ErrorKind::kInvariant, "mixed subdivision cells overlap");
    }
  }
  return sub;
}

inline MixedSubdivision build_subdivision(const SupportFamily& family, const Lifting& lifting) {
  return build_subdivision(family.supports(), lifting);
}

/// Tries liftings derived from seed until one yields a valid subdivision.
inline MixedSubdivision build_validated_subdivision(const std::vector<Support>& supports,
                                                    std::uint64_t seed, std::size_t attempts = 32) {
  const Coord range = default_lifting_range(supports);
  for (std::size_t t = 0; t < attempts; ++t) {
    try {
      return build_subdivision(supports, random_lifting(supports, derive_seed(seed, t), range));
    } catch (const DegenerateConstruction&) {
    }
  }
  throw DegenerateConstruction("no generic lifting found after " + std::to_string(attempts) + " attempts");
}

/// Sum of the Euclidean volumes of the fully mixed cells of a subdivision of
/// n summands in R^n; equals their normalized mixed volume.
inline Rational mixed_cell_volume(const MixedSubdivision& sub) {
  if (sub.supports.size() != sub.dim)
    fail(ErrorKind::kInvalidInput, "mixed-cell volume needs exactly dim summands");
  Rational v = 0;
  for (const auto& c : sub.cells)
    if (c.is_fully_mixed()) v += euclidean_volume(c.polytope);
  return v;
}

/// Shift vector numerators / denominator, denominator prime.
struct Delta {
  std::vector<Integer> numerators;
  Integer denominator = 1;

  RationalPoint value() const {
    RationalPoint v;
    for (const auto& k : numerators) v.push_back(Rational(k, denominator));
    return v;
  }
};

namespace detail {

inline bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

inline RationalPoint minus(const LatticePoint& p, const RationalPoint& d) {
  RationalPoint r(p.dim());
  for (std::size_t k = 0; k < p.dim(); ++k) r[k] = Rational(p[k]) - d[k];
  return r;
}

inline std::vector<LatticePoint> box_points(const LatticePoint& lo, const LatticePoint& hi) {
  std::vector<LatticePoint> out;
  LatticePoint x = lo;
  while (true) {
    out.push_back(x);
    std::size_t k = 0;
    while (k < x.dim() && ++x[k] > hi[k]) x[k] = lo[k], ++k;
    if (k == x.dim()) break;
  }
  return out;
}

/// Candidate lattice points of Q + delta (bounding box, |delta_k| < 1).
inline std::vector<LatticePoint> shifted_box(const Polytope& q) {
  auto [lo, hi] = q.bounding_box();
  for (std::size_t k = 0; k < lo.dim(); ++k) lo[k] -= 1, hi[k] += 1;
  return box_points(lo, hi);
}

}  // namespace detail

/// Index of the cell whose interior contains x, or nullopt if x lies on a
/// cell boundary or outside Q.
inline std::optional<std::size_t> locate_cell(const MixedSubdivision& sub, const RationalPoint& x) {
  std::optional<std::size_t> found;
  for (std::size_t c = 0; c < sub.cells.size(); ++c) {
    const Location loc = sub.cells[c].polytope.locate(x);
    if (loc == Location::kBoundary) return std::nullopt;
    if (loc == Location::kInterior) {
      if (found) return std::nullopt;
      found = c;
    }
  }
  return found;
}

/// True when no lattice point of Q + delta lies on the boundary of Q + delta
/// or of a shifted cell.
inline bool delta_is_generic(const MixedSubdivision& sub, const Delta& delta) {
  const RationalPoint d = delta.value();
  for (const auto& p : detail::shifted_box(sub.total)) {
    const RationalPoint x = detail::minus(p, d);
    const Location loc = sub.total.locate(x);
    if (loc == Location::kBoundary) return false;
    if (loc == Location::kInterior && !locate_cell(sub, x)) return false;
  }
  return true;
}

/// Smallest prime above n * (coordinate spread of Q) * (lifting range).
inline std::uint64_t delta_denominator(const MixedSubdivision& sub) {
  auto [lo, hi] = sub.total.bounding_box();
  Coord spread = 1;
  for (std::size_t k = 0; k < lo.dim(); ++k) spread = std::max(spread, hi[k] - lo[k]);
  auto p = static_cast<std::uint64_t>(static_cast<Coord>(sub.dim) * spread * std::max<Coord>(sub.lifting.range, 1));
  do ++p;
  while (!detail::is_prime(p));
  return p;
}

/// Random small generic shift: numerators nonzero in (-p/8, p/8), so every
/// |delta_k| < 1/8. Retries fresh draws until delta_is_generic holds.
inline Delta choose_delta(const MixedSubdivision& sub, std::uint64_t seed, std::size_t attempts = 64) {
  const std::uint64_t p = delta_denominator(sub);
  const auto bound = static_cast<std::int64_t>(p / 8);
  Rng rng(seed);
  for (std::size_t t = 0; t < attempts; ++t) {
    Delta d{{}, Integer(p)};
    for (std::size_t k = 0; k < sub.dim; ++k) {
      std::int64_t v = 0;
      while (v == 0) v = rng.uniform_int(-bound, bound);
      d.numerators.push_back(Integer(v));
    }
    if (delta_is_generic(sub, d)) return d;
  }
  throw DegenerateConstruction("no generic delta found after " + std::to_string(attempts) + " attempts");
}

/// All integer points of Q + delta in lexicographic order.
inline std::vector<LatticePoint> lattice_points_E(const MixedSubdivision& sub, const Delta& delta) {
  const RationalPoint d = delta.value();
  std::vector<LatticePoint> out;
  for (const auto& p : detail::shifted_box(sub.total)) {
    const Location loc = sub.total.locate(detail::minus(p, d));
    if (loc == Location::kBoundary)
      throw DegenerateConstruction("lattice point " + p.to_string() + " on the boundary of Q + delta");
    if (loc == Location::kInterior) out.push_back(p);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Row content of a lattice point for the j-th matrix.
struct RowContent {
  std::size_t group = 0;  // i
  std::size_t point = 0;  // index of a in A_i
  std::size_t cell = 0;
};

/// Locates the cell C = F_0 + ... + F_n containing p - delta and picks the
/// first singleton summand in priority order n, n-1, ..., 0 with j moved to
/// the end.
inline RowContent row_content(const LatticePoint& p, const MixedSubdivision& sub, const Delta& delta,
                              std::size_t j) {
  const auto cell = locate_cell(sub, detail::minus(p, delta.value()));
  if (!cell)
    fail(ErrorKind::kInvariant, "lattice point " + p.to_string() + " is not interior to a unique cell");
  const Cell& c = sub.cells[*cell];
  std::vector<std::size_t> order;
  for (std::size_t i = sub.supports.size(); i-- > 0;)
    if (i != j) order.push_back(i);
  order.push_back(j);
  for (std::size_t i : order)
    if (c.is_singleton(i)) return {i, c.faces[i].front(), *cell};
  fail(ErrorKind::kInvariant, "cell without a vertex summand");
}

}  // namespace sparseres
