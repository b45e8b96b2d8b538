#pragma once

// Size measures of resultants and the bounds they are compared against:
// the product bound E(A), the subdivision-matrix bound, the factorial bound for
// Sylvester resultants, the l1 evaluation inequality, and Monte Carlo Mahler
// measure estimates with their inequality checks.

#include "sparseres/lattice_geom.hpp"
#include "sparseres/multipoly.hpp"
#include "sparseres/resultant.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <complex>
#include <numbers>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace sparseres {

/// prod_i m_i^{MV_i}.
inline Integer bound_E(const std::vector<std::size_t>& m, const std::vector<Integer>& mv) {
  Integer e = 1;
  for (std::size_t i = 0; i < m.size(); ++i) e *= ipow(Integer(m[i]), mv[i].convert_to<unsigned long>());
  return e;
}

inline Integer bound_E(const SupportFamily& family) { return bound_E(family.cardinalities(), mv_vector(family)); }

/// sum_i MV_i log m_i.
inline double log_bound(const std::vector<std::size_t>& m, const std::vector<Integer>& mv) {
  double s = 0;
  for (std::size_t i = 0; i < m.size(); ++i) s += mv[i].convert_to<double>() * std::log(static_cast<double>(m[i]));
  return s;
}

struct HeightCheck {
  bool holds = false;
  Integer H;
  Integer E;
  double margin = 0;  // log E - log H
};

/// H(Res) <= E(A) by exact integer comparison.
inline HeightCheck height_bound_check(const ResultantCertificate& cert) {
  HeightCheck c;
  c.H = height_H(cert.polynomial);
  c.E = bound_E(cert.family.cardinalities(), cert.mv);
  c.holds = c.H <= c.E;
  c.margin = log_integer(c.E) - log_integer(c.H);
  return c;
}

/// log E / log H; undefined when H <= 1.
inline std::optional<double> quotient_q(const Integer& E, const Integer& H) {
  if (H <= 1) return std::nullopt;
  return log_integer(E) / log_integer(H);
}

/// Two-decimal rendering by truncation toward zero, the precision of the
/// reference table.
inline std::string format_q(double q) {
  const double t = std::trunc(q * 100.0 + 1e-9) / 100.0;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", t);
  return buf;
}

struct MatrixBound {
  double log_value = 0;                // sum (2 N_i + MV_i) log m_i
  std::optional<unsigned long> exponent;  // set when all m_i are equal
  std::optional<Integer> exact;        // m^exponent
};

/// Height bound implied by the subdivision-matrix construction with realized
/// partition counts N_i.
inline MatrixBound matrix_bound(const std::vector<std::size_t>& counts, const std::vector<Integer>& mv,
                        const std::vector<std::size_t>& m) {
  MatrixBound b;
  unsigned long total = 0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    const unsigned long w = 2 * counts[i] + mv[i].convert_to<unsigned long>();
    b.log_value += static_cast<double>(w) * std::log(static_cast<double>(m[i]));
    total += w;
  }
  if (std::all_of(m.begin(), m.end(), [&](std::size_t x) { return x == m.front(); })) {
    b.exponent = total;
    b.exact = ipow(Integer(m.front()), total);
  }
  return b;
}

/// Subdivision-matrix bound for A_i = {0..d}^n in closed form. Here
/// sum N_i = #E = ((n+1)d)^n, MV_i = n! d^n and log m_i = n log(d+1), so the
/// bound is (2((n+1)d)^n + (n+1) n! d^n) n log(d+1). For n = 1 this is
/// (4d + 2d) log(d+1).
inline double matrix_bound_grid_log(std::size_t n, std::size_t d) {
  const double nn = static_cast<double>(n), dd = static_cast<double>(d);
  const double nfact = detail::factorial(n).convert_to<double>();
  return (2.0 * std::pow((nn + 1) * dd, nn) + (nn + 1) * nfact * std::pow(dd, nn)) * nn * std::log(dd + 1);
}

inline SupportFamily grid_family(std::size_t n, std::size_t d) {
  std::vector<LatticePoint> pts = detail::box_points(LatticePoint(std::vector<Coord>(n, 0)),
                                                     LatticePoint(std::vector<Coord>(n, static_cast<Coord>(d))));
  std::vector<Support> s(n + 1, Support(pts));
  return SupportFamily(n, std::move(s), "grid(" + std::to_string(n) + "," + std::to_string(d) + ")");
}

/// max(d0!, d1!).
inline Integer factorial_bound(std::size_t d0, std::size_t d1) {
  return std::max(detail::factorial(d0), detail::factorial(d1));
}

struct EvaluationBoundReport {
  std::size_t trials = 0;
  std::size_t passed = 0;
  bool ok() const { return trials == passed; }
};

/// |Res(f)| <= prod ||f_i||_1^{MV_i} on random integer systems, compared
/// exactly. The inequality is a theorem, so a violation is an internal error.
inline EvaluationBoundReport evaluation_bound_check(const ResultantCertificate& cert, std::size_t trials, std::uint64_t seed,
                                 std::int64_t coefficient_bound = 9,
                                 const std::vector<CoefficientSystem>& extra = {}) {
  Rng rng(seed);
  std::vector<CoefficientSystem> systems = extra;
  for (std::size_t t = 0; t < trials; ++t) systems.push_back(detail::random_system(cert.family, rng, coefficient_bound));
  EvaluationBoundReport rep;
  for (const auto& f : systems) {
    const Integer lhs = abs(evaluate_at(cert, f));
    Integer rhs = 1;
    for (std::size_t i = 0; i < f.size(); ++i) rhs *= ipow(l1_norm(f[i]), cert.mv[i].convert_to<unsigned long>());
    ++rep.trials;
    if (lhs > rhs)
      fail(ErrorKind::kInvariant, "evaluation bound violated: |Res(f)| = " + lhs.str() + " > " + rhs.str());
    ++rep.passed;
  }
  return rep;
}

struct MahlerEstimate {
  double estimate = 0;
  double std_error = 0;
  std::size_t samples = 0;
  std::size_t discarded = 0;
  std::uint64_t seed = 0;
};

/// Default sample count: 200,000 up to 8 torus variables, 50,000 above.
inline std::size_t default_mahler_samples(std::size_t nvars) { return nvars <= 8 ? 200000 : 50000; }

/// Mean of log|p| over uniform points of the unit torus. Samples are drawn in
/// fixed-size chunks with per-chunk derived seeds and combined in chunk
/// order, so the result does not depend on the number of worker threads.
inline MahlerEstimate mahler_mc(const SparsePoly& p, std::size_t samples, std::uint64_t seed,
                                std::size_t threads = 0) {
  if (p.is_zero()) fail(ErrorKind::kInvalidInput, "Mahler measure of the zero polynomial");
  if (samples < 100) fail(ErrorKind::kInvalidInput, "Mahler estimate needs at least 100 samples");
  const std::size_t nv = p.num_vars();

  struct FlatTerm {
    double coef;
    std::vector<std::pair<std::size_t, unsigned>> exps;
  };
  std::vector<FlatTerm> terms;
  std::vector<unsigned> maxe(nv, 0);
  for (const auto& t : p.terms()) {
    terms.push_back({t.coef.convert_to<double>(), t.mono.support()});
    for (auto [v, e] : t.mono.support()) maxe[v] = std::max(maxe[v], e);
  }

  constexpr std::size_t kChunk = 4096;
  const std::size_t chunks = (samples + kChunk - 1) / kChunk;
  struct Partial {
    double sum = 0, sumsq = 0;
    std::size_t used = 0, discarded = 0;
  };
  std::vector<Partial> partial(chunks);

  auto run_chunk = [&](std::size_t c) {
    Rng rng(derive_seed(seed, c));
    const std::size_t count = std::min(kChunk, samples - c * kChunk);
    std::vector<std::vector<std::complex<double>>> pw(nv);
    Partial& out = partial[c];
    for (std::size_t s = 0; s < count; ++s) {
      for (std::size_t v = 0; v < nv; ++v) {
        const double theta = 2.0 * std::numbers::pi * rng.uniform01();
        const std::complex<double> z = std::polar(1.0, theta);
        pw[v].assign(maxe[v] + 1, 1.0);
        for (unsigned e = 1; e <= maxe[v]; ++e) pw[v][e] = pw[v][e - 1] * z;
      }
      std::complex<double> val = 0;
      for (const auto& t : terms) {
        std::complex<double> x = t.coef;
        for (auto [v, e] : t.exps) x *= pw[v][e];
        val += x;
      }
      const double mag = std::abs(val);
      if (mag == 0.0 || !std::isfinite(mag)) {
        ++out.discarded;
        continue;
      }
      const double l = std::log(mag);
      out.sum += l;
      out.sumsq += l * l;
      ++out.used;
    }
  };

  std::size_t workers = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, chunks);
  if (workers <= 1) {
    for (std::size_t c = 0; c < chunks; ++c) run_chunk(c);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        for (std::size_t c = w; c < chunks; c += workers) run_chunk(c);
      });
    for (auto& t : pool) t.join();
  }

  MahlerEstimate est;
  est.seed = seed;
  double sum = 0, sumsq = 0;
  for (const auto& part : partial) {
    sum += part.sum;
    sumsq += part.sumsq;
    est.samples += part.used;
    est.discarded += part.discarded;
  }
  if (est.samples < 2) fail(ErrorKind::kInvariant, "Mahler estimate has no usable samples");
  const double n = static_cast<double>(est.samples);
  est.estimate = sum / n;
  const double var = std::max(0.0, (sumsq - sum * sum / n) / (n - 1));
  est.std_error = std::sqrt(var / n);
  return est;
}

/// m(Res) <= sum MV_i log m_i, within three standard errors.
inline bool mahler_bound_check(const MahlerEstimate& est, double log_bound_value) {
  return est.estimate <= log_bound_value + 3.0 * est.std_error;
}

/// |m(Res) - h(Res)| <= sum MV_i log m_i, within three standard errors.
inline bool mh_sandwich_check(const MahlerEstimate& est, double h, double log_bound_value) {
  return std::abs(est.estimate - h) <= log_bound_value + 3.0 * est.std_error;
}

/// Everything measured for one family.
struct BoundsReport {
  std::string family;
  std::vector<std::size_t> m;
  std::vector<Integer> mv;
  Integer index = 1;
  Integer E;
  double log_E = 0;

  // Present when the resultant was computed.
  std::optional<Integer> H;
  std::optional<double> h;
  std::optional<double> q;  // nullopt also when H <= 1
  bool q_defined = false;
  std::optional<bool> height_bound;
  std::optional<MatrixBound> ce;
  std::optional<std::vector<std::size_t>> counts;
  std::optional<Integer> factorial;  // n = 1 only
  std::optional<MahlerEstimate> mahler;
  std::optional<bool> mahler_bound;
  std::optional<bool> mh_sandwich;
};

inline BoundsReport basic_report(const SupportFamily& family) {
  BoundsReport r;
  r.family = family.name();
  r.m = family.cardinalities();
  r.mv = mv_vector(family);
  r.index = lattice_index(difference_lattice(family), family.dim());
  r.E = bound_E(r.m, r.mv);
  r.log_E = log_bound(r.m, r.mv);
  return r;
}

inline void add_resultant(BoundsReport& r, const ResultantCertificate& cert) {
  const HeightCheck hc = height_bound_check(cert);
  r.H = hc.H;
  r.h = log_integer(hc.H);
  r.q = quotient_q(r.E, hc.H);
  r.q_defined = r.q.has_value();
  r.height_bound = hc.holds;
  if (!cert.counts.empty()) {
    r.counts = cert.counts;
    r.ce = matrix_bound(cert.counts, r.mv, r.m);
  }
  if (cert.family.dim() == 1) {
    const auto degree = [](const Support& s) { return static_cast<std::size_t>(s.points().back()[0] - s[0][0]); };
    r.factorial = factorial_bound(degree(cert.family[0]), degree(cert.family[1]));
  }
}

inline void add_mahler(BoundsReport& r, const MahlerEstimate& est) {
  r.mahler = est;
  r.mahler_bound = mahler_bound_check(est, r.log_E);
  if (r.h) r.mh_sandwich = mh_sandwich_check(est, *r.h, r.log_E);
}

}  // namespace sparseres
