#pragma once

// JSON reading and writing for support families, polynomials, resultant
// certificates, bound reports and subdivisions. Integers whose magnitude
// exceeds 2^53 are written as decimal strings; smaller ones as numbers.

#include "sparseres/measures.hpp"
#include "sparseres/resultant.hpp"
#include "sparseres/subdivision.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <string>

namespace sparseres {

using Json = nlohmann::json;

inline constexpr const char* kToolName = "sparseres";
inline constexpr const char* kToolVersion = "1.0.0";

/// Number when exactly representable as a double, decimal string otherwise.
inline Json integer_json(const Integer& x) {
  static const Integer kLimit = Integer(1) << 53;
  if (abs(x) <= kLimit) return x.convert_to<long long>();
  return x.str();
}

inline Integer integer_from_json(const Json& j) {
  if (j.is_number_integer()) return Integer(j.get<long long>());
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    const bool ok = !s.empty() && s.find_first_not_of("0123456789", s[0] == '-' ? 1 : 0) == std::string::npos &&
                    s != "-";
    if (ok) return Integer(s);
  }
  fail(ErrorKind::kInvalidInput, "expected an integer, got " + j.dump());
}

inline Json point_json(const LatticePoint& p) { return p.coords(); }

// Family files ---------------------------------------------------------------

inline SupportFamily family_from_json(const Json& j, const std::string& fallback_name = {}) {
  if (!j.is_object()) fail(ErrorKind::kInvalidInput, "family file must be a JSON object");
  for (const auto& [key, _] : j.items())
    if (key != "dim" && key != "supports" && key != "name")
      fail(ErrorKind::kInvalidInput, "unknown field \"" + key + "\" in family file");
  if (!j.contains("dim") || !j["dim"].is_number_integer() || j["dim"].get<long long>() < 1)
    fail(ErrorKind::kInvalidInput, "\"dim\" must be a positive integer");
  const auto n = static_cast<std::size_t>(j["dim"].get<long long>());
  if (!j.contains("supports") || !j["supports"].is_array())
    fail(ErrorKind::kInvalidInput, "\"supports\" must be an array of supports");
  std::string name = fallback_name;
  if (j.contains("name")) {
    if (!j["name"].is_string()) fail(ErrorKind::kInvalidInput, "\"name\" must be a string");
    name = j["name"].get<std::string>();
  }
  std::vector<Support> supports;
  for (std::size_t i = 0; i < j["supports"].size(); ++i) {
    const Json& s = j["supports"][i];
    const std::string where = "support " + std::to_string(i);
    if (!s.is_array() || s.empty()) fail(ErrorKind::kInvalidInput, where + " must be a nonempty array of points");
    std::vector<LatticePoint> pts;
    for (const Json& p : s) {
      if (!p.is_array() || p.size() != n)
        fail(ErrorKind::kInvalidInput, where + ": point " + p.dump() + " must have " + std::to_string(n) +
                                           " integer coordinates");
      std::vector<Coord> c;
      for (const Json& x : p) {
        if (!x.is_number_integer()) fail(ErrorKind::kInvalidInput, where + ": non-integer coordinate " + x.dump());
        c.push_back(x.get<Coord>());
      }
      pts.emplace_back(std::move(c));
    }
    try {
      supports.emplace_back(std::move(pts));
    } catch (const Error& e) {
      fail(ErrorKind::kInvalidInput, where + ": " + e.what());
    }
  }
  return SupportFamily(n, std::move(supports), name);
}

inline Json family_to_json(const SupportFamily& f) {
  Json s = Json::array();
  for (const auto& a : f.supports()) {
    Json pts = Json::array();
    for (const auto& p : a) pts.push_back(point_json(p));
    s.push_back(std::move(pts));
  }
  return {{"dim", f.dim()}, {"name", f.name()}, {"supports", std::move(s)}};
}

inline SupportFamily load_family(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::kInvalidInput, "cannot open " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    fail(ErrorKind::kInvalidInput, path + ": " + e.what());
  }
  std::string stem = path.substr(path.find_last_of('/') + 1);
  stem = stem.substr(0, stem.find_last_of('.'));
  return family_from_json(j, stem);
}

// Polynomials ----------------------------------------------------------------

/// Terms in canonical (descending graded lex) order; each monomial is a list
/// of [group, point, exponent] in variable order.
inline Json poly_to_json(const SparsePoly& p, const VarSpace& vars) {
  Json terms = Json::array();
  for (const auto& t : p.terms()) {
    Json mono = Json::array();
    for (auto [v, e] : t.mono.support()) mono.push_back({vars[v].group, point_json(vars[v].point), e});
    terms.push_back({{"monomial", std::move(mono)}, {"coefficient", t.coef.str()}});
  }
  return terms;
}

inline SparsePoly poly_from_json(const Json& j, const VarSpace& vars) {
  if (!j.is_array()) fail(ErrorKind::kInvalidInput, "polynomial must be an array of terms");
  std::vector<Term> terms;
  for (const Json& t : j) {
    if (!t.is_object() || !t.contains("monomial") || !t.contains("coefficient"))
      fail(ErrorKind::kInvalidInput, "malformed term " + t.dump());
    std::vector<unsigned> exps(vars.size(), 0);
    for (const Json& f : t["monomial"]) {
      if (!f.is_array() || f.size() != 3) fail(ErrorKind::kInvalidInput, "malformed factor " + f.dump());
      const VarId id{f[0].get<std::size_t>(), LatticePoint(f[1].get<std::vector<Coord>>())};
      exps[vars.index_of(id)] += f[2].get<unsigned>();
    }
    terms.push_back({Monomial::from_exponents(exps), integer_from_json(t["coefficient"])});
  }
  return SparsePoly::from_terms(std::move(terms));
}

// Certificates, reports, subdivisions ----------------------------------------

inline Json certificate_to_json(const ResultantCertificate& c, bool with_terms) {
  Json mv = Json::array();
  for (const auto& x : c.mv) mv.push_back(integer_json(x));
  Json dh = Json::array();
  for (const auto& x : c.det_heights) dh.push_back(integer_json(x));
  Json j = {{"method", c.method},
            {"seed", c.seed},
            {"matrix_size", c.matrix_size},
            {"multidegree", c.multidegree},
            {"mixed_volumes", std::move(mv)},
            {"terms", c.polynomial.size()},
            {"checks",
             {{"degree_match", c.checks.degree_match},
              {"primitive", c.checks.primitive},
              {"extremes_unit", c.checks.extremes_unit},
              {"divides_dets", c.checks.divides_dets}}}};
  if (!c.counts.empty()) j["partition_counts"] = c.counts;
  if (!c.det_heights.empty()) j["determinant_heights"] = std::move(dh);
  if (with_terms) j["polynomial"] = poly_to_json(c.polynomial, c.vars);
  return j;
}

inline Json mahler_to_json(const MahlerEstimate& m) {
  return {{"estimate", m.estimate},
          {"stderr", m.std_error},
          {"samples", m.samples},
          {"discarded", m.discarded},
          {"seed", m.seed},
          {"estimate_in_stderr_units", m.std_error > 0 ? m.estimate / m.std_error : 0.0}};
}

inline Json report_to_json(const BoundsReport& r) {
  Json mv = Json::array();
  for (const auto& x : r.mv) mv.push_back(integer_json(x));
  Json j = {{"family", r.family},
            {"cardinalities", r.m},
            {"mixed_volumes", std::move(mv)},
            {"lattice_index", integer_json(r.index)},
            {"E", integer_json(r.E)},
            {"log_E", r.log_E}};
  if (r.H) {
    j["H"] = integer_json(*r.H);
    j["h"] = *r.h;
    j["q"] = r.q ? Json(*r.q) : Json(nullptr);
    j["q_display"] = r.q ? Json(format_q(*r.q)) : Json(nullptr);
    j["height_bound"] = *r.height_bound;
  }
  if (r.ce) {
    Json ce = {{"partition_counts", *r.counts}, {"log_value", r.ce->log_value},
               {"dominates_log_E", r.ce->log_value >= r.log_E}};
    if (r.ce->exponent) {
      ce["base"] = r.m.front();
      ce["exponent"] = *r.ce->exponent;
      ce["value"] = integer_json(*r.ce->exact);
    }
    j["matrix_bound"] = std::move(ce);
  }
  if (r.factorial) j["factorial_bound"] = integer_json(*r.factorial);
  if (r.mahler) {
    j["mahler"] = mahler_to_json(*r.mahler);
    j["mahler_bound"] = *r.mahler_bound;
    if (r.mh_sandwich) j["mh_sandwich"] = *r.mh_sandwich;
  }
  return j;
}

inline Json subdivision_to_json(const MixedSubdivision& s) {
  Json cells = Json::array();
  for (const auto& c : s.cells) {
    Json faces = Json::array();
    for (std::size_t i = 0; i < c.faces.size(); ++i) {
      Json pts = Json::array();
      for (std::size_t k : c.faces[i]) pts.push_back(point_json(s.supports[i][k]));
      faces.push_back(std::move(pts));
    }
    const Rational vol = euclidean_volume(c.polytope);
    Json cell = {{"faces", std::move(faces)}, {"face_dims", c.face_dims}, {"volume", vol.str()}};
    if (auto i = c.mixed_index()) cell["mixed_index"] = *i;
    cells.push_back(std::move(cell));
  }
  return {{"dim", s.dim},
          {"lifting", {{"seed", s.lifting.seed}, {"range", s.lifting.range}, {"weights", s.lifting.weights}}},
          {"total_volume", euclidean_volume(s.total).str()},
          {"cells", std::move(cells)}};
}

}  // namespace sparseres
