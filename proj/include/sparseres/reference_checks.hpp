#pragma once

// The bundled end-to-end checks behind `sparseres verify-paper`: known
// heights, bounds and quotients for the Sylvester series and the two
// bivariate families, plus the inequality and structural suites run on
// every certified instance. Output is deterministic for a fixed seed.

#include "sparseres/families.hpp"
#include "sparseres/io.hpp"
#include "sparseres/measures.hpp"
#include "sparseres/resultant.hpp"
#include "sparseres/subdivision.hpp"

#include <cmath>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

namespace sparseres {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ReferenceOptions {
  std::uint64_t seed = 1;
  /// Harness self-test: perturbs the degree formula so that the degree
  /// checks must fail.
  bool mutate_degree = false;
};

namespace reference {

inline constexpr std::size_t kSylvesterMax = 7;
inline const std::vector<long> kSylvesterH = {2, 3, 10, 23, 78, 274};
inline const std::vector<double> kSylvesterQ = {6.33, 7.57, 5.59, 5.71, 5.35, 5.18};
inline constexpr double kQTolerance = 0.01;

inline constexpr long kFourTermH = 8;
inline constexpr long kFourTermE = 4194304;
inline constexpr double kFourTermQ = 7.33;
inline const std::vector<std::size_t> kFourTermCounts = {4, 4, 7};
inline constexpr unsigned long kFourTermCEExponent = 41;

inline constexpr long kTrinomialH = 14;
inline constexpr long kTrinomialE = 68024448;
inline constexpr double kTrinomialQ = 6.83;

inline constexpr std::size_t kEvaluationTrials = 100;
inline constexpr std::size_t kVanishingTrials = 25;
inline constexpr std::size_t kPowerTrials = 10;

}  // namespace reference

namespace detail {

template <class T>
std::string join(const std::vector<T>& v, const char* sep = ",") {
  std::ostringstream s;
  for (std::size_t i = 0; i < v.size(); ++i) s << (i ? sep : "") << v[i];
  return s.str();
}

inline std::string fixed(double x, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

}  // namespace detail

/// One certified instance with the degree vector the harness expects.
struct Instance {
  std::string label;
  ResultantCertificate cert;
  std::vector<Integer> expected_degrees;
};

inline std::vector<CheckResult> run_reference_checks(const ReferenceOptions& opt = {}) {
  using detail::fixed;
  using detail::join;
  std::vector<CheckResult> out;
  auto add = [&](std::string name, bool ok, std::string detail) {
    out.push_back({std::move(name), ok, std::move(detail)});
  };
  auto degree_formula = [&](const SupportFamily& f) {
    auto mv = mv_vector(f);
    if (opt.mutate_degree) mv[0] += 1;
    return mv;
  };

  // Sylvester series.
  std::vector<Instance> instances;
  {
    bool h_ok = true, e_ok = true, q_ok = true, f_ok = true;
    std::vector<std::string> hs, es, qs;
    for (std::size_t d = 2; d <= reference::kSylvesterMax; ++d) {
      const SupportFamily fam = sylvester_family(d, d);
      auto cert = resultant_for(fam, opt.seed);
      BoundsReport r = basic_report(fam);
      add_resultant(r, cert);
      const Integer expected_e = ipow(Integer(d + 1), static_cast<unsigned>(2 * d));
      h_ok = h_ok && *r.H == reference::kSylvesterH[d - 2];
      e_ok = e_ok && r.E == expected_e;
      q_ok = q_ok && r.q && std::abs(*r.q - reference::kSylvesterQ[d - 2]) <= reference::kQTolerance &&
             format_q(*r.q) == fixed(reference::kSylvesterQ[d - 2], 2);
      f_ok = f_ok && *r.H <= *r.factorial;
      hs.push_back(r.H->str());
      es.push_back(r.E.str());
      qs.push_back(r.q ? format_q(*r.q) : "undefined");
      instances.push_back({"sylvester-" + std::to_string(d), std::move(cert), degree_formula(fam)});
    }
    add("sylvester_heights", h_ok, "H = " + join(hs));
    add("sylvester_E", e_ok, "E = " + join(es));
    add("sylvester_q", q_ok, "q = " + join(qs));
    add("sylvester_factorial_bound", f_ok, "H(d) <= d! for d = 2.." + std::to_string(reference::kSylvesterMax));
  }

  // Bivariate families.
  struct Bivariate {
    SupportFamily family;
    std::vector<long> mv;
    long H;
    long E;
    double q;
  };
  const std::vector<Bivariate> bivariate = {
      {four_term_family(), {4, 3, 4}, reference::kFourTermH, reference::kFourTermE, reference::kFourTermQ},
      {trinomial_family(), {5, 7, 7}, reference::kTrinomialH, reference::kTrinomialE, reference::kTrinomialQ}};
  for (const auto& b : bivariate) {
    const std::string& name = b.family.name();
    std::string key = name;
    for (auto& ch : key) ch = ch == '-' ? '_' : ch;
    const auto mv = degree_formula(b.family);
    const Integer index = lattice_index(difference_lattice(b.family), b.family.dim());
    bool mv_ok = index == 1 && mv.size() == b.mv.size();
    for (std::size_t i = 0; mv_ok && i < mv.size(); ++i) mv_ok = mv[i] == b.mv[i];
    add(key + "_mixed_volumes", mv_ok, "MV = " + join(mv) + ", index = " + index.str());

    auto cert = compute_resultant(b.family, opt.seed);
    BoundsReport r = basic_report(b.family);
    add_resultant(r, cert);
    bool res_ok = cert.all_passed() && *r.H == b.H;
    for (std::size_t i = 0; res_ok && i < mv.size(); ++i) res_ok = Integer(cert.multidegree[i]) == mv[i];
    add(key + "_resultant", res_ok,
        "multidegree = " + join(cert.multidegree) + ", H = " + r.H->str() + ", terms = " +
            std::to_string(cert.polynomial.size()));
    const bool eq_ok = r.E == b.E && r.q && std::abs(*r.q - b.q) <= reference::kQTolerance;
    add(key + "_E_q", eq_ok, "E = " + r.E.str() + ", q = " + (r.q ? format_q(*r.q) : std::string("undefined")));

    bool ce_ok = r.ce && r.ce->log_value >= r.log_E;
    std::string ce_detail = "N = " + join(*r.counts) + ", log bound = " + fixed(r.ce->log_value);
    if (name == "four-term") {
      const MatrixBound ref = matrix_bound(reference::kFourTermCounts, r.mv, r.m);
      ce_ok = ce_ok && ref.exponent && *ref.exponent == reference::kFourTermCEExponent &&
              *ref.exact == ipow(Integer(4), reference::kFourTermCEExponent);
      ce_detail += ", reference N = 4,4,7 gives 4^" + std::to_string(ref.exponent.value_or(0));
    }
    add(key + "_matrix_bound", ce_ok, ce_detail);
    instances.push_back({name, std::move(cert), mv});
  }

  // Degree formula on every certified instance.
  {
    bool ok = true;
    std::string bad;
    for (const auto& in : instances) {
      bool same = in.cert.multidegree.size() == in.expected_degrees.size();
      for (std::size_t i = 0; same && i < in.expected_degrees.size(); ++i)
        same = Integer(in.cert.multidegree[i]) == in.expected_degrees[i];
      if (!same && bad.empty()) bad = in.label;
      ok = ok && same;
    }
    add("degree_formula", ok, ok ? "multidegree = (MV_i) on all instances" : "mismatch on " + bad);
  }

  // Inequality and structural suites on every certified instance.
  {
    bool h_ok = true, l_ok = true, v_ok = true, x_ok = true;
    std::size_t eval_count = 0, forced = 0, nonzero = 0, random = 0;
    std::string first_bad_h, first_bad_v, first_bad_x;
    for (std::size_t k = 0; k < instances.size(); ++k) {
      const auto& in = instances[k];
      const HeightCheck hc = height_bound_check(in.cert);
      if (!hc.holds && first_bad_h.empty()) first_bad_h = in.label;
      h_ok = h_ok && hc.holds;
      try {
        eval_count += evaluation_bound_check(in.cert, reference::kEvaluationTrials, derive_seed(opt.seed, 100 + k)).passed;
      } catch (const Error&) {
        l_ok = false;
      }
      const VanishingReport vr =
          verify_vanishing(in.cert, reference::kVanishingTrials, derive_seed(opt.seed, 200 + k));
      forced += vr.forced_zero;
      nonzero += vr.random_nonzero;
      random += vr.random_trials;
      if (!vr.passed() && first_bad_v.empty()) first_bad_v = in.label;
      v_ok = v_ok && vr.passed();
      if (!in.cert.checks.extremes_unit && first_bad_x.empty()) first_bad_x = in.label;
      x_ok = x_ok && in.cert.checks.extremes_unit;
    }
    const std::string count = std::to_string(instances.size()) + " instances";
    add("height_bound", h_ok, h_ok ? "H <= E on " + count : "violated on " + first_bad_h);
    add("evaluation_bound", l_ok, std::to_string(eval_count) + " systems satisfy |Res(f)| <= prod |f_i|_1^MV_i");
    add("vanishing", v_ok,
        std::to_string(forced) + " forced-root systems vanish, " + std::to_string(nonzero) + "/" +
            std::to_string(random) + " random systems nonzero" + (v_ok ? "" : ", failed on " + first_bad_v));
    add("extreme_coefficients", x_ok, x_ok ? "all sampled vertex coefficients are +-1 on " + count
                                           : "failed on " + first_bad_x);
  }

  // Power identity, n = 1, k = 2.
  {
    bool ok = true;
    std::size_t matches = 0;
    for (std::size_t d = 1; d <= 2; ++d) {
      const auto rep =
          verify_power_identity(sylvester_family(d, d), 2, reference::kPowerTrials, derive_seed(opt.seed, 300 + d));
      ok = ok && rep.passed();
      matches += rep.matches;
    }
    add("power_identity", ok, std::to_string(matches) + " inputs satisfy Res_{2A}(f^2) = Res_A(f)^4 for d = 1, 2");
  }

  // Mixed-cell oracle on the (A_0, A_1) pair of each bivariate family.
  {
    bool ok = true;
    std::vector<std::string> parts;
    for (const auto& b : bivariate) {
      const std::vector<Support> pair = {b.family[0], b.family[1]};
      const MixedSubdivision sub = build_validated_subdivision(pair, derive_seed(opt.seed, 400));
      const Rational cells = mixed_cell_volume(sub);
      const Integer mv = mixed_volume({convex_hull(pair[0]), convex_hull(pair[1])});
      ok = ok && cells == Rational(mv);
      parts.push_back(b.family.name() + ": " + cells.str() + " = " + mv.str());
    }
    add("mixed_cell_oracle", ok, join(parts, "; "));
  }

  // Mahler measure suite.
  {
    const std::uint64_t mseed = derive_seed(opt.seed, 500);
    bool ok = true;
    std::vector<std::string> parts;
    // m(a1 x + a0) = log a1 + log max(1, a0 / a1); x + 1/2 is scaled to 2x + 1.
    struct Linear {
      long a1, a0;
      double expected;
      const char* label;
    };
    for (const Linear& l : {Linear{2, 1, std::log(2.0), "x+1/2"}, Linear{1, 2, std::log(2.0), "x+2"},
                            Linear{1, 5, std::log(5.0), "x+5"}}) {
      const SparsePoly p = SparsePoly::variable(0) * SparsePoly::constant(l.a1) + SparsePoly::constant(l.a0);
      const MahlerEstimate est = mahler_mc(p, default_mahler_samples(1), mseed);
      const double shift = std::log(static_cast<double>(l.a1));
      const bool good = std::abs(est.estimate - l.expected) <= 3.0 * est.std_error;
      ok = ok && good;
      parts.push_back(std::string(l.label) + ": " + fixed(est.estimate - shift) + "+-" + fixed(est.std_error));
    }
    add("mahler_jensen", ok, join(parts, "; "));

    bool b_ok = true, det_ok = true;
    std::vector<std::string> bparts;
    for (const auto& in : instances) {
      if (in.label != "sylvester-2" && in.label != "four-term") continue;
      BoundsReport r = basic_report(in.cert.family);
      add_resultant(r, in.cert);
      const std::size_t samples = default_mahler_samples(in.cert.vars.size());
      const MahlerEstimate est = mahler_mc(in.cert.polynomial, samples, mseed);
      const MahlerEstimate again = mahler_mc(in.cert.polynomial, samples, mseed, 2);
      add_mahler(r, est);
      b_ok = b_ok && *r.mahler_bound && *r.mh_sandwich;
      det_ok = det_ok && est.estimate == again.estimate && est.std_error == again.std_error;
      bparts.push_back(in.label + ": m = " + fixed(est.estimate) + "+-" + fixed(est.std_error) +
                       " <= " + fixed(r.log_E));
    }
    add("mahler_bounds", b_ok, join(bparts, "; "));
    add("mahler_determinism", det_ok, "same seed gives identical estimates across thread counts");
  }

  // Essentiality.
  {
    bool ok = true;
    for (const auto& b : bivariate) ok = ok && is_essential(b.family).essential;
    for (std::size_t d = 1; d <= 3; ++d) ok = ok && is_essential(sylvester_family(d, d)).essential;
    const SupportFamily bad(1, {Support({LatticePoint({0})}), Support({LatticePoint({0}), LatticePoint({1})})});
    const Essentiality e = is_essential(bad);
    ok = ok && !e.essential && e.witness == std::vector<std::size_t>{0};
    add("essentiality", ok, "bundled families essential; {0},{0,1} rejected with witness {0}");
  }
  return out;
}

inline Json reference_summary_json(const std::vector<CheckResult>& checks, const ReferenceOptions& opt) {
  Json list = Json::array();
  Json first_failure = nullptr;
  bool all = true;
  for (const auto& c : checks) {
    list.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    if (!c.passed && all) first_failure = c.name;
    all = all && c.passed;
  }
  return {{"tool", kToolName},
          {"version", kToolVersion},
          {"seed", opt.seed},
          {"checks", std::move(list)},
          {"passed", all},
          {"first_failure", first_failure}};
}

}  // namespace sparseres
