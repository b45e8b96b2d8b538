#pragma once

// Subdivision matrices, exact extraction of the sparse resultant, the
// classical Sylvester path for n = 1, and the structural checks a resultant
// must pass before it is released.

#include "sparseres/determinant.hpp"
#include "sparseres/lattice_geom.hpp"
#include "sparseres/multipoly.hpp"
#include "sparseres/subdivision.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace sparseres {

/// One subdivision matrix M_j with the row content of each point of E and
/// the partition sizes N_i(j).
struct CEMatrix {
  std::size_t j = 0;
  PolyMatrix matrix;
  std::vector<RowContent> contents;
  std::vector<std::size_t> counts;
};

struct MatrixSet {
  SupportFamily family;
  VarSpace vars;
  MixedSubdivision subdivision;
  Delta delta;
  std::vector<LatticePoint> points;  // E, lexicographic; labels rows and columns
  std::vector<std::size_t> point_cells;
  std::vector<CEMatrix> matrices;
  std::uint64_t seed = 0;

  /// Indices of points whose cell is not mixed; rows and columns of the
  /// denominator submatrix.
  std::vector<std::size_t> non_mixed_points() const {
    std::vector<std::size_t> keep;
    for (std::size_t t = 0; t < points.size(); ++t)
      if (!subdivision.cells[point_cells[t]].mixed_index()) keep.push_back(t);
    return keep;
  }
};

namespace detail {

inline void require_unit_index(const SupportFamily& family) {
  const Essentiality ess = is_essential(family);
  if (!ess.essential) fail(ErrorKind::kInvalidInput, "family is not essential");
  const Integer idx = lattice_index(difference_lattice(family), family.dim());
  if (idx != 1)
    fail(ErrorKind::kInvalidInput, "the subdivision-matrix construction needs L_A = Z^n (index is " + idx.str() + ")");
}

}  // namespace detail

/// Builds M_0..M_n from a validated subdivision and generic shift derived
/// from seed. Row p with content (i, a) holds U_{i,a'} in column p - a + a'.
inline MatrixSet build_matrices(const SupportFamily& family, std::uint64_t seed) {
  detail::require_unit_index(family);
  MatrixSet ce;
  ce.family = family;
  ce.vars = VarSpace(family);
  ce.seed = seed;
  ce.subdivision = build_validated_subdivision(family.supports(), derive_seed(seed, 0));
  ce.delta = choose_delta(ce.subdivision, derive_seed(seed, 1));
  ce.points = lattice_points_E(ce.subdivision, ce.delta);
  const std::size_t size = ce.points.size();
  if (size > 64) fail(ErrorKind::kInvalidInput, "subdivision matrix too large: " + std::to_string(size));

  std::map<LatticePoint, std::size_t> column;
  for (std::size_t t = 0; t < size; ++t) column[ce.points[t]] = t;
  const RationalPoint d = ce.delta.value();
  for (const auto& p : ce.points) {
    const auto cell = locate_cell(ce.subdivision, detail::minus(p, d));
    if (!cell) throw DegenerateConstruction("point " + p.to_string() + " on a cell boundary");
    ce.point_cells.push_back(*cell);
  }

  for (std::size_t j = 0; j < family.size(); ++j) {
    CEMatrix m{j, PolyMatrix(size), {}, std::vector<std::size_t>(family.size(), 0)};
    m.matrix.row_labels = ce.points;
    m.matrix.col_labels = ce.points;
    for (std::size_t r = 0; r < size; ++r) {
      const RowContent rc = row_content(ce.points[r], ce.subdivision, ce.delta, j);
      const Support& s = family[rc.group];
      const LatticePoint& a = s[rc.point];
      for (std::size_t k = 0; k < s.size(); ++k) {
        auto it = column.find(ce.points[r] - a + s[k]);
        if (it == column.end())
          fail(ErrorKind::kInvariant, "column " + (ce.points[r] - a + s[k]).to_string() + " outside E");
        m.matrix.at(r, it->second) = SparsePoly::variable(ce.vars.index_of({rc.group, s[k]}));
      }
      m.contents.push_back(rc);
      ++m.counts[rc.group];
    }
    ce.matrices.push_back(std::move(m));
  }
  return ce;
}

/// D_j = det(M_j) for every j; all must be nonzero.
inline std::vector<SparsePoly> dets(const MatrixSet& ce, const DeterminantOptions& opts = {}) {
  std::vector<SparsePoly> out;
  for (const auto& m : ce.matrices) {
    SparsePoly d = determinant(m.matrix, opts);
    if (d.is_zero())
      throw DegenerateConstruction("det(M_" + std::to_string(m.j) + ") vanishes; degenerate subdivision/delta, reseed");
    out.push_back(std::move(d));
  }
  return out;
}

/// Monomials maximizing random integer functionals on the exponent vectors,
/// i.e. sampled vertices of the Newton polytope, with their coefficients.
/// Always includes the leading term.
inline std::vector<Term> extreme_coefficients(const SparsePoly& p, std::uint64_t seed,
                                              std::size_t functionals = 64) {
  if (p.is_zero()) fail(ErrorKind::kInvalidInput, "extreme coefficients of the zero polynomial");
  const std::size_t nv = p.num_vars();
  Rng rng(seed);
  std::set<std::size_t> picked{0};
  for (std::size_t f = 0; f < functionals; ++f) {
    std::vector<std::int64_t> w(nv);
    for (auto& x : w) x = rng.uniform_int(-1000, 1000);
    std::optional<std::int64_t> best;
    std::size_t arg = 0;
    bool unique = true;
    for (std::size_t t = 0; t < p.size(); ++t) {
      std::int64_t v = 0;
      const Monomial& m = p.terms()[t].mono;
      for (std::size_t var = 0; var < nv; ++var) v += w[var] * static_cast<std::int64_t>(m[var]);
      if (!best || v > *best) best = v, arg = t, unique = true;
      else if (v == *best) unique = false;
    }
    if (unique) picked.insert(arg);
  }
  std::vector<Term> out;
  for (std::size_t t : picked) out.push_back(p.terms()[t]);
  return out;
}

/// A resultant together with the checks it passed.
struct ResultantCertificate {
  SupportFamily family;
  VarSpace vars;
  SparsePoly polynomial;
  std::vector<Integer> mv;
  std::vector<unsigned> multidegree;
  std::string method;
  std::uint64_t seed = 0;

  // Construction data (subdivision-matrix path only).
  std::size_t matrix_size = 0;
  std::vector<std::size_t> counts;  // N_i(0)
  std::vector<Integer> det_heights;

  struct Checks {
    bool degree_match = false;
    bool primitive = false;
    bool extremes_unit = false;
    bool divides_dets = false;  // trivially true on the Sylvester path
  } checks;

  bool all_passed() const {
    return checks.degree_match && checks.primitive && checks.extremes_unit && checks.divides_dets;
  }
};

namespace detail {

inline bool divides(const SparsePoly& d, const SparsePoly& p) {
  try {
    (void)exact_div(p, d);
    return true;
  } catch (const InexactDivision&) {
    return false;
  }
}

inline SparsePoly sign_normalized(SparsePoly p) {
  if (!p.is_zero() && p.leading().coef < 0) p = -p;
  return p;
}

/// Runs the structural checks; returns a description of the first failure.
inline std::optional<std::string> certify(ResultantCertificate& cert, const std::vector<SparsePoly>& ds) {
  const SparsePoly& r = cert.polynomial;
  if (r.is_zero()) return "candidate is zero";
  cert.multidegree = multidegree(r, cert.vars);
  cert.checks.degree_match = is_multihomogeneous(r, cert.vars);
  for (std::size_t i = 0; i < cert.mv.size(); ++i)
    cert.checks.degree_match = cert.checks.degree_match && Integer(cert.multidegree[i]) == cert.mv[i];
  if (!cert.checks.degree_match) return "multidegree differs from the mixed volumes";
  cert.checks.primitive = content(r) == 1;
  if (!cert.checks.primitive) return "candidate is not primitive";
  const auto ext = extreme_coefficients(r, derive_seed(cert.seed, 77));
  cert.checks.extremes_unit =
      std::all_of(ext.begin(), ext.end(), [](const Term& t) { return abs(t.coef) == 1; });
  if (!cert.checks.extremes_unit) return "an extreme coefficient is not +-1";
  cert.checks.divides_dets = std::all_of(ds.begin(), ds.end(), [&](const SparsePoly& d) { return divides(r, d); });
  if (!cert.checks.divides_dets) return "candidate does not divide every D_j";
  return std::nullopt;
}

}  // namespace detail

/// Extracts Res_A from the subdivision-matrix determinants. For each j the
/// candidate D_j / det(M_j') is tried, where M_j' is the principal submatrix
/// on points outside mixed cells. A candidate is released only after the
/// certificate checks pass. Callers reseed when this throws.
inline ResultantCertificate extract_resultant(const MatrixSet& ce, const std::vector<SparsePoly>& ds,
                                              const DeterminantOptions& opts = {}) {
  ResultantCertificate base;
  base.family = ce.family;
  base.vars = ce.vars;
  base.mv = mv_vector(ce.family);
  base.seed = ce.seed;
  base.matrix_size = ce.points.size();
  base.counts = ce.matrices.front().counts;
  for (const auto& d : ds) base.det_heights.push_back(height_H(d));

  const auto keep = ce.non_mixed_points();
  std::vector<std::string> failures;
  std::vector<SparsePoly> exact;
  for (std::size_t j = 0; j < ce.matrices.size(); ++j) {
    const SparsePoly denom = determinant(ce.matrices[j].matrix.principal_submatrix(keep), opts);
    if (denom.is_zero()) {
      failures.push_back("j=" + std::to_string(j) + ": denominator vanished");
      continue;
    }
    SparsePoly q;
    try {
      q = detail::sign_normalized(exact_div(ds[j], denom));
    } catch (const InexactDivision&) {
      failures.push_back("j=" + std::to_string(j) + ": inexact quotient");
      continue;
    }
    ResultantCertificate cert = base;
    cert.polynomial = q;
    cert.method = "matrix quotient j=" + std::to_string(j);
    if (auto why = detail::certify(cert, ds)) {
      failures.push_back("j=" + std::to_string(j) + ": " + *why);
      exact.push_back(std::move(q));
      continue;
    }
    return cert;
  }

  // Gcd by divisibility: every exact quotient is a multiple of Res_A. The
  // smallest one dividing all others is the common factor; it is released
  // only if it certifies.
  std::sort(exact.begin(), exact.end(),
            [](const SparsePoly& a, const SparsePoly& b) { return a.size() < b.size(); });
  for (const auto& cand : exact) {
    if (!std::all_of(exact.begin(), exact.end(), [&](const SparsePoly& o) { return detail::divides(cand, o); }))
      continue;
    ResultantCertificate cert = base;
    cert.polynomial = cand;
    cert.method = "matrix common quotient";
    if (auto why = detail::certify(cert, ds)) {
      failures.push_back("common quotient: " + *why);
      break;
    }
    return cert;
  }

  std::string msg = "extraction failed: denominator vanished or non-generic data";
  for (const auto& f : failures) msg += "; " + f;
  fail(ErrorKind::kExtraction, msg);
}

/// Full pipeline with reseeding on degenerate or failed constructions.
inline ResultantCertificate compute_resultant(const SupportFamily& family, std::uint64_t seed = 1,
                                              std::size_t attempts = 8) {
  detail::require_unit_index(family);
  std::string last;
  for (std::size_t t = 0; t < attempts; ++t) {
    try {
      const MatrixSet ce = build_matrices(family, derive_seed(seed, t));
      return extract_resultant(ce, dets(ce));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kExtraction) throw;
      last = e.what();
    }
  }
  fail(ErrorKind::kExtraction, "no certified resultant after " + std::to_string(attempts) + " seeds: " + last);
}

inline SupportFamily sylvester_family(std::size_t d0, std::size_t d1) {
  auto interval = [](std::size_t d) {
    std::vector<LatticePoint> pts;
    for (std::size_t k = 0; k <= d; ++k) pts.push_back({static_cast<Coord>(k)});
    return Support(std::move(pts));
  };
  return SupportFamily(1, {interval(d0), interval(d1)},
                       "sylvester(" + std::to_string(d0) + "," + std::to_string(d1) + ")");
}

/// Classical (d0+d1)-square Sylvester matrix; U_{0,k} and U_{1,k} are the
/// coefficients of x^k in the two polynomials.
inline PolyMatrix sylvester_matrix(std::size_t d0, std::size_t d1) {
  const std::size_t n = d0 + d1;
  PolyMatrix m(n);
  for (std::size_t r = 0; r < d1; ++r)
    for (std::size_t k = 0; k <= d0; ++k) m.at(r, r + d0 - k) = SparsePoly::variable(k);
  for (std::size_t r = 0; r < d0; ++r)
    for (std::size_t k = 0; k <= d1; ++k) m.at(d1 + r, r + d1 - k) = SparsePoly::variable(d0 + 1 + k);
  return m;
}

inline ResultantCertificate sylvester_resultant(std::size_t d0, std::size_t d1,
                                                const DeterminantOptions& opts = {}) {
  if (d0 < 1 || d1 < 1) fail(ErrorKind::kInvalidInput, "Sylvester degrees must be at least 1");
  ResultantCertificate cert;
  cert.family = sylvester_family(d0, d1);
  cert.vars = VarSpace(cert.family);
  cert.mv = {Integer(d1), Integer(d0)};
  cert.method = "sylvester";
  cert.matrix_size = d0 + d1;
  cert.polynomial = detail::sign_normalized(determinant(sylvester_matrix(d0, d1), opts));
  if (auto why = detail::certify(cert, {}))
    fail(ErrorKind::kInvariant, "Sylvester resultant failed certification: " + *why);
  return cert;
}

/// Sylvester path for interval families {0..d0},{0..d1}; subdivision matrices otherwise.
inline ResultantCertificate resultant_for(const SupportFamily& family, std::uint64_t seed = 1) {
  if (family.dim() == 1) {
    auto is_interval = [](const Support& s) {
      for (std::size_t k = 0; k < s.size(); ++k)
        if (s[k][0] != static_cast<Coord>(k)) return false;
      return true;
    };
    if (is_interval(family[0]) && is_interval(family[1]))
      return sylvester_resultant(family[0].size() - 1, family[1].size() - 1);
  }
  return compute_resultant(family, seed);
}

/// Per-group integer coefficient vectors f_i (indexed like A_i).
using CoefficientSystem = std::vector<std::vector<Integer>>;

inline Integer evaluate_at(const ResultantCertificate& cert, const CoefficientSystem& f) {
  return evaluate(cert.polynomial, cert.vars.flatten(f));
}

namespace detail {

inline CoefficientSystem random_system(const SupportFamily& family, Rng& rng, std::int64_t bound,
                                       bool nonzero = false) {
  CoefficientSystem f;
  for (const auto& s : family.supports()) {
    std::vector<Integer> v;
    for (std::size_t k = 0; k < s.size(); ++k) {
      std::int64_t c = rng.uniform_int(-bound, bound);
      while (nonzero && c == 0) c = rng.uniform_int(-bound, bound);
      v.push_back(Integer(c));
    }
    f.push_back(std::move(v));
  }
  return f;
}

}  // namespace detail

/// Integer system with a forced common root x in (Q*)^n: each f_i gets random
/// coefficients, then its first coefficient is solved so that f_i(x) = 0 and
/// the vector is scaled to clear denominators.
inline CoefficientSystem forced_root_system(const SupportFamily& family, const RationalPoint& x, Rng& rng) {
  CoefficientSystem f;
  for (const auto& s : family.supports()) {
    std::vector<Rational> v(s.size());
    bool nonzero = false;
    while (!nonzero) {
      for (std::size_t k = 1; k < s.size(); ++k) {
        v[k] = rng.uniform_int(-9, 9);
        nonzero = nonzero || v[k] != 0;
      }
      if (s.size() == 1) break;
    }
    Rational acc = 0;
    for (std::size_t k = 1; k < s.size(); ++k) {
      Rational mono = 1;
      for (std::size_t c = 0; c < s.dim(); ++c) mono *= rpow(x[c], s[k][c] - s[0][c]);
      acc += v[k] * mono;
    }
    v[0] = -acc;
    Integer den = 1;
    for (const auto& q : v) den = lcm(den, Integer(denominator(q)));
    std::vector<Integer> row;
    for (const auto& q : v) row.push_back(numerator(q) * (den / denominator(q)));
    f.push_back(std::move(row));
  }
  return f;
}

struct VanishingReport {
  std::size_t forced_trials = 0;
  std::size_t forced_zero = 0;
  std::size_t random_trials = 0;
  std::size_t random_nonzero = 0;
  bool passed() const { return forced_zero == forced_trials && 25 * random_nonzero >= 24 * random_trials; }
};

/// Evaluates the resultant on systems with a forced common toric root (must
/// be exactly zero) and on random systems with nonzero coefficients in
/// [-99, 99] (generically nonzero).
inline VanishingReport verify_vanishing(const ResultantCertificate& cert, std::size_t trials, std::uint64_t seed) {
  Rng rng(seed);
  VanishingReport rep;
  for (std::size_t t = 0; t < trials; ++t) {
    RationalPoint x;
    for (std::size_t c = 0; c < cert.family.dim(); ++c) {
      std::int64_t num = 0;
      while (num == 0) num = rng.uniform_int(-5, 5);
      x.push_back(Rational(num, rng.uniform_int(1, 5)));
    }
    ++rep.forced_trials;
    rep.forced_zero += evaluate_at(cert, forced_root_system(cert.family, x, rng)) == 0;
  }
  for (std::size_t t = 0; t < trials; ++t) {
    ++rep.random_trials;
    rep.random_nonzero += evaluate_at(cert, detail::random_system(cert.family, rng, 99, true)) != 0;
  }
  return rep;
}

namespace detail {

/// Coefficient vector of f^k on the support k*A.
inline std::vector<Integer> power_coefficients(const Support& a, const std::vector<Integer>& f,
                                               const Support& ka, unsigned k) {
  std::map<LatticePoint, Integer> cur;
  cur[LatticePoint(std::vector<Coord>(a.dim(), 0))] = 1;
  for (unsigned t = 0; t < k; ++t) {
    std::map<LatticePoint, Integer> next;
    for (const auto& [p, c] : cur)
      for (std::size_t s = 0; s < a.size(); ++s) next[p + a[s]] += c * f[s];
    cur = std::move(next);
  }
  std::vector<Integer> out(ka.size(), 0);
  for (const auto& [p, c] : cur) out.at(*ka.index_of(p)) = c;
  return out;
}

}  // namespace detail

struct PowerIdentityReport {
  std::size_t trials = 0;
  std::size_t matches = 0;
  bool passed() const { return matches == trials; }
};

/// Checks Res_{kA}(f_0^k, ..., f_n^k) = Res_A(f_0, ..., f_n)^(k^(n+1)) on
/// random integer systems. `res_a` and `res_ka` must be resultants of the
/// family and of its k-fold dilation.
inline PowerIdentityReport verify_power_identity(const ResultantCertificate& res_a,
                                                 const ResultantCertificate& res_ka, unsigned k,
                                                 std::size_t trials, std::uint64_t seed,
                                                 const std::vector<CoefficientSystem>& extra = {}) {
  const SupportFamily& fam = res_a.family;
  const unsigned expo = static_cast<unsigned>(ipow(Integer(k), fam.dim() + 1).convert_to<unsigned long>());
  Rng rng(seed);
  PowerIdentityReport rep;
  std::vector<CoefficientSystem> systems = extra;
  for (std::size_t t = 0; t < trials; ++t) systems.push_back(detail::random_system(fam, rng, 5));
  for (const auto& f : systems) {
    CoefficientSystem fk;
    for (std::size_t i = 0; i < fam.size(); ++i)
      fk.push_back(detail::power_coefficients(fam[i], f[i], res_ka.family[i], k));
    ++rep.trials;
    rep.matches += evaluate_at(res_ka, fk) == ipow(evaluate_at(res_a, f), expo);
  }
  return rep;
}

inline PowerIdentityReport verify_power_identity(const SupportFamily& family, unsigned k, std::size_t trials,
                                                 std::uint64_t seed) {
  if (family.dim() != 1) fail(ErrorKind::kInvalidInput, "power identity check is implemented for n = 1");
  return verify_power_identity(resultant_for(family, seed), resultant_for(family.dilated(k), seed), k, trials,
                               seed);
}

}  // namespace sparseres
