#pragma once

// Sparse multivariate polynomials with big-integer coefficients in the
// coefficient variables U_{i,a} of a support family.

#include "sparseres/lattice_geom.hpp"
#include "sparseres/numeric.hpp"

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace sparseres {

inline constexpr std::size_t kMaxVars = 32;

/// Power product over at most kMaxVars variables. Ordering is graded
/// lexicographic with variable 0 the most significant.
class Monomial {
 public:
  using Exponent = std::uint8_t;

  Monomial() = default;

  static Monomial variable(std::size_t v, unsigned e = 1) {
    Monomial m;
    m.set(v, e);
    return m;
  }

  static Monomial from_exponents(const std::vector<unsigned>& exps) {
    if (exps.size() > kMaxVars) fail(ErrorKind::kInvalidInput, "too many variables for Monomial");
    Monomial m;
    for (std::size_t v = 0; v < exps.size(); ++v) m.set(v, exps[v]);
    return m;
  }

  unsigned operator[](std::size_t v) const { return exps_[v]; }
  unsigned degree() const noexcept { return degree_; }
  bool is_one() const noexcept { return degree_ == 0; }

  /// Variables with nonzero exponent, ascending.
  std::vector<std::pair<std::size_t, unsigned>> support() const {
    std::vector<std::pair<std::size_t, unsigned>> s;
    for (std::size_t v = 0; v < kMaxVars; ++v)
      if (exps_[v]) s.emplace_back(v, exps_[v]);
    return s;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial r;
    for (std::size_t v = 0; v < kMaxVars; ++v) {
      const unsigned e = unsigned{a.exps_[v]} + b.exps_[v];
      if (e > 255) fail(ErrorKind::kInvariant, "monomial exponent overflow");
      r.exps_[v] = static_cast<Exponent>(e);
    }
    r.degree_ = static_cast<std::uint16_t>(a.degree_ + b.degree_);
    return r;
  }

  bool divides(const Monomial& m) const {
    for (std::size_t v = 0; v < kMaxVars; ++v)
      if (exps_[v] > m.exps_[v]) return false;
    return true;
  }

  /// m / *this; caller guarantees divisibility.
  Monomial cofactor_in(const Monomial& m) const {
    Monomial r;
    for (std::size_t v = 0; v < kMaxVars; ++v) r.exps_[v] = static_cast<Exponent>(m.exps_[v] - exps_[v]);
    r.degree_ = static_cast<std::uint16_t>(m.degree_ - degree_);
    return r;
  }

  friend auto operator<=>(const Monomial&, const Monomial&) = default;
  friend bool operator==(const Monomial&, const Monomial&) = default;

  std::size_t hash() const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (Exponent e : exps_) h = (h ^ e) * 1099511628211ull;
    return h;
  }

 private:
  void set(std::size_t v, unsigned e) {
    if (v >= kMaxVars) fail(ErrorKind::kInvalidInput, "variable index out of range");
    if (e > 255) fail(ErrorKind::kInvariant, "monomial exponent overflow");
    degree_ = static_cast<std::uint16_t>(degree_ - exps_[v] + e);
    exps_[v] = static_cast<Exponent>(e);
  }

  // Member order matters: the defaulted <=> compares degree first.
  std::uint16_t degree_ = 0;
  std::array<Exponent, kMaxVars> exps_{};
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept { return m.hash(); }
};

struct Term {
  Monomial mono;
  Integer coef;
  friend bool operator==(const Term&, const Term&) = default;
};

class SparsePoly;
SparsePoly exact_div(const SparsePoly& p, const SparsePoly& d);

/// Terms sorted strictly descending in graded-lex order, no zero
/// coefficients. The zero polynomial has no terms.
class SparsePoly {
 public:
  SparsePoly() = default;

  static SparsePoly constant(const Integer& c) {
    SparsePoly p;
    if (c != 0) p.terms_.push_back({Monomial{}, c});
    return p;
  }
  static SparsePoly variable(std::size_t v, const Integer& c = 1) {
    SparsePoly p;
    if (c != 0) p.terms_.push_back({Monomial::variable(v), c});
    return p;
  }
  static SparsePoly monomial(const Monomial& m, const Integer& c) {
    SparsePoly p;
    if (c != 0) p.terms_.push_back({m, c});
    return p;
  }
  /// Arbitrary term list; like monomials are combined.
  static SparsePoly from_terms(std::vector<Term> terms) {
    std::unordered_map<Monomial, Integer, MonomialHash> acc;
    for (auto& t : terms) acc[t.mono] += t.coef;
    return from_accumulator(acc);
  }

  const std::vector<Term>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  const Term& leading() const {
    if (terms_.empty()) fail(ErrorKind::kInvariant, "leading term of zero polynomial");
    return terms_.front();
  }

  friend bool operator==(const SparsePoly&, const SparsePoly&) = default;

  SparsePoly operator-() const {
    SparsePoly r = *this;
    for (auto& t : r.terms_) t.coef = -t.coef;
    return r;
  }

  friend SparsePoly operator+(const SparsePoly& a, const SparsePoly& b) { return merge(a, b, false); }
  friend SparsePoly operator-(const SparsePoly& a, const SparsePoly& b) { return merge(a, b, true); }
  SparsePoly& operator+=(const SparsePoly& b) { return *this = merge(*this, b, false); }
  SparsePoly& operator-=(const SparsePoly& b) { return *this = merge(*this, b, true); }

  /// Product with a single term; order is preserved so no re-sort is needed.
  SparsePoly times_term(const Monomial& m, const Integer& c) const {
    SparsePoly r;
    if (c == 0) return r;
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.mono * m, t.coef * c});
    return r;
  }

  SparsePoly scaled(const Integer& c) const { return times_term(Monomial{}, c); }

  friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (a.size() == 1) return b.times_term(a.terms_[0].mono, a.terms_[0].coef);
    if (b.size() == 1) return a.times_term(b.terms_[0].mono, b.terms_[0].coef);
    std::unordered_map<Monomial, Integer, MonomialHash> acc;
    acc.reserve(a.size() * b.size());
    for (const auto& s : a.terms_)
      for (const auto& t : b.terms_) acc[s.mono * t.mono] += s.coef * t.coef;
    return from_accumulator(acc);
  }
  SparsePoly& operator*=(const SparsePoly& b) { return *this = *this * b; }

  SparsePoly pow(unsigned k) const {
    SparsePoly r = constant(1), b = *this;
    while (k) {
      if (k & 1u) r *= b;
      k >>= 1u;
      if (k) b *= b;
    }
    return r;
  }

  /// Highest variable index used, plus one.
  std::size_t num_vars() const {
    std::size_t n = 0;
    for (const auto& t : terms_)
      for (std::size_t v = kMaxVars; v > n; --v)
        if (t.mono[v - 1]) {
          n = v;
          break;
        }
    return n;
  }

  unsigned total_degree() const {
    unsigned d = 0;
    for (const auto& t : terms_) d = std::max(d, t.mono.degree());
    return d;
  }

  /// Coefficient of m (zero if absent).
  Integer coefficient(const Monomial& m) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const Term& t, const Monomial& x) { return t.mono > x; });
    if (it == terms_.end() || it->mono != m) return 0;
    return it->coef;
  }

 private:
  static SparsePoly from_accumulator(const std::unordered_map<Monomial, Integer, MonomialHash>& acc) {
    SparsePoly p;
    p.terms_.reserve(acc.size());
    for (const auto& [m, c] : acc)
      if (c != 0) p.terms_.push_back({m, c});
    std::sort(p.terms_.begin(), p.terms_.end(), [](const Term& x, const Term& y) { return x.mono > y.mono; });
    return p;
  }

  static SparsePoly merge(const SparsePoly& a, const SparsePoly& b, bool subtract) {
    SparsePoly r;
    r.terms_.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
      if (j == b.size() || (i < a.size() && a.terms_[i].mono > b.terms_[j].mono)) {
        r.terms_.push_back(a.terms_[i++]);
      } else if (i == a.size() || b.terms_[j].mono > a.terms_[i].mono) {
        r.terms_.push_back({b.terms_[j].mono, subtract ? Integer(-b.terms_[j].coef) : b.terms_[j].coef});
        ++j;
      } else {
        Integer c = subtract ? Integer(a.terms_[i].coef - b.terms_[j].coef)
                             : Integer(a.terms_[i].coef + b.terms_[j].coef);
        if (c != 0) r.terms_.push_back({a.terms_[i].mono, std::move(c)});
        ++i;
        ++j;
      }
    }
    return r;
  }

  std::vector<Term> terms_;
};

/// Raised when a division that was expected to be exact leaves a remainder.
class InexactDivision : public Error {
 public:
  InexactDivision(const Monomial& remainder_lead, const std::string& what)
      : Error(ErrorKind::kExtraction, what), remainder_lead_(remainder_lead) {}
  const Monomial& remainder_leading_monomial() const noexcept { return remainder_lead_; }

 private:
  Monomial remainder_lead_;
};

/// Exact quotient p / d by multivariate long division in graded-lex order.
/// Throws InexactDivision carrying the remainder's leading monomial.
inline SparsePoly exact_div(const SparsePoly& p, const SparsePoly& d) {
  if (d.is_zero()) fail(ErrorKind::kInvalidInput, "division by the zero polynomial");
  const Term& lead = d.leading();
  if (d.size() == 1) {
    std::vector<Term> q;
    q.reserve(p.size());
    for (const auto& t : p.terms()) {
      if (!lead.mono.divides(t.mono) || t.coef % lead.coef != 0)
        throw InexactDivision(t.mono, "inexact division by a monomial");
      q.push_back({lead.mono.cofactor_in(t.mono), t.coef / lead.coef});
    }
    return SparsePoly::from_terms(std::move(q));
  }
  std::map<Monomial, Integer, std::greater<>> rem;
  for (const auto& t : p.terms()) rem.emplace_hint(rem.end(), t.mono, t.coef);
  std::vector<Term> q;
  while (!rem.empty()) {
    auto it = rem.begin();
    if (!lead.mono.divides(it->first) || it->second % lead.coef != 0)
      throw InexactDivision(it->first, "inexact polynomial division");
    const Monomial qm = lead.mono.cofactor_in(it->first);
    const Integer qc = it->second / lead.coef;
    rem.erase(it);
    for (std::size_t k = 1; k < d.size(); ++k) {
      const Term& t = d.terms()[k];
      auto [pos, inserted] = rem.try_emplace(t.mono * qm, 0);
      pos->second -= qc * t.coef;
      if (pos->second == 0) rem.erase(pos);
    }
    q.push_back({qm, qc});
  }
  // Quotient terms are produced in strictly decreasing order.
  return SparsePoly::from_terms(std::move(q));
}

/// Absolute height: the largest coefficient magnitude.
inline Integer height_H(const SparsePoly& p) {
  Integer h = 0;
  for (const auto& t : p.terms()) h = std::max(h, Integer(abs(t.coef)));
  return h;
}

/// Logarithmic height log H.
inline double height_h(const SparsePoly& p) {
  if (p.is_zero()) fail(ErrorKind::kInvalidInput, "height of the zero polynomial");
  return log_integer(height_H(p));
}

/// gcd of all coefficients (0 for the zero polynomial).
inline Integer content(const SparsePoly& p) {
  Integer g = 0;
  for (const auto& t : p.terms()) g = gcd(g, Integer(abs(t.coef)));
  return g;
}

/// Sum of absolute values of a coefficient vector.
template <class T>
T l1_norm(const std::vector<T>& f) {
  T s = 0;
  for (const auto& x : f) s += abs(x);
  return s;
}

/// A coefficient variable U_{group, point}.
struct VarId {
  std::size_t group = 0;
  LatticePoint point;
  friend auto operator<=>(const VarId&, const VarId&) = default;
  friend bool operator==(const VarId&, const VarId&) = default;
};

/// Indexing of the variables of a family: by group, then canonical point order.
class VarSpace {
 public:
  VarSpace() = default;
  explicit VarSpace(const SupportFamily& family) {
    for (std::size_t i = 0; i < family.size(); ++i) {
      offsets_.push_back(vars_.size());
      for (const auto& a : family[i]) vars_.push_back({i, a});
    }
    offsets_.push_back(vars_.size());
    if (vars_.size() > kMaxVars)
      fail(ErrorKind::kInvalidInput, "family has " + std::to_string(vars_.size()) +
                                         " coefficient variables; at most " + std::to_string(kMaxVars) +
                                         " are supported");
  }

  std::size_t size() const noexcept { return vars_.size(); }
  std::size_t groups() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  const VarId& operator[](std::size_t v) const { return vars_[v]; }
  std::size_t group_of(std::size_t v) const { return vars_[v].group; }
  std::size_t group_begin(std::size_t i) const { return offsets_[i]; }
  std::size_t group_size(std::size_t i) const { return offsets_[i + 1] - offsets_[i]; }

  std::size_t index_of(const VarId& id) const {
    auto it = std::lower_bound(vars_.begin(), vars_.end(), id);
    if (it == vars_.end() || *it != id)
      fail(ErrorKind::kInvalidInput, "unknown variable U_{" + std::to_string(id.group) + "," +
                                         id.point.to_string() + "}");
    return static_cast<std::size_t>(it - vars_.begin());
  }

  std::string name(std::size_t v) const {
    return "U" + std::to_string(vars_[v].group) + vars_[v].point.to_string();
  }

  /// Flattens per-group coefficient vectors f_i (indexed like A_i) into a
  /// per-variable assignment.
  template <class T>
  std::vector<T> flatten(const std::vector<std::vector<T>>& per_group) const {
    if (per_group.size() != groups()) fail(ErrorKind::kInvalidInput, "wrong number of coefficient vectors");
    std::vector<T> out;
    for (std::size_t i = 0; i < groups(); ++i) {
      if (per_group[i].size() != group_size(i))
        fail(ErrorKind::kInvalidInput, "coefficient vector length does not match its support");
      out.insert(out.end(), per_group[i].begin(), per_group[i].end());
    }
    return out;
  }

  /// Assignment keyed by VarId, checked for completeness.
  template <class T>
  std::vector<T> assignment(const std::map<VarId, T>& values) const {
    std::vector<T> out;
    for (const auto& v : vars_) {
      auto it = values.find(v);
      if (it == values.end())
        fail(ErrorKind::kInvalidInput, "assignment misses U_{" + std::to_string(v.group) + "," +
                                           v.point.to_string() + "}");
      out.push_back(it->second);
    }
    return out;
  }

 private:
  std::vector<VarId> vars_;
  std::vector<std::size_t> offsets_;
};

/// Degree in each variable group (max over terms).
inline std::vector<unsigned> multidegree(const SparsePoly& p, const VarSpace& vars) {
  if (p.is_zero()) fail(ErrorKind::kInvalidInput, "multidegree of the zero polynomial");
  const std::size_t nv = p.num_vars();
  if (nv > vars.size()) fail(ErrorKind::kInvalidInput, "polynomial uses variables outside the family");
  std::vector<unsigned> deg(vars.groups(), 0);
  for (const auto& t : p.terms()) {
    std::vector<unsigned> d(vars.groups(), 0);
    for (std::size_t v = 0; v < nv; ++v) d[vars.group_of(v)] += t.mono[v];
    for (std::size_t i = 0; i < d.size(); ++i) deg[i] = std::max(deg[i], d[i]);
  }
  return deg;
}

/// True when every term has the same degree in every group.
inline bool is_multihomogeneous(const SparsePoly& p, const VarSpace& vars) {
  const std::size_t nv = p.num_vars();
  if (nv > vars.size()) fail(ErrorKind::kInvalidInput, "polynomial uses variables outside the family");
  std::optional<std::vector<unsigned>> first;
  for (const auto& t : p.terms()) {
    std::vector<unsigned> d(vars.groups(), 0);
    for (std::size_t v = 0; v < nv; ++v) d[vars.group_of(v)] += t.mono[v];
    if (!first) first = d;
    else if (*first != d) return false;
  }
  return true;
}

namespace detail {
template <class T>
T from_integer(const Integer& c) {
  if constexpr (std::is_same_v<T, std::complex<double>>) return {c.convert_to<double>(), 0.0};
  else if constexpr (std::is_same_v<T, double>) return c.convert_to<double>();
  else return T(c);
}
}  // namespace detail

/// Direct term-by-term evaluation at values[v] for each variable v. Exact
/// for Integer and Rational; double precision for std::complex<double>.
template <class T>
T evaluate(const SparsePoly& p, const std::vector<T>& values) {
  const std::size_t nv = p.num_vars();
  if (values.size() < nv)
    fail(ErrorKind::kInvalidInput, "assignment misses variable " + std::to_string(values.size()));
  std::vector<std::vector<T>> powers(nv);
  std::vector<unsigned> maxe(nv, 0);
  for (const auto& t : p.terms())
    for (std::size_t v = 0; v < nv; ++v) maxe[v] = std::max(maxe[v], t.mono[v]);
  for (std::size_t v = 0; v < nv; ++v) {
    powers[v].push_back(T(1));
    for (unsigned e = 1; e <= maxe[v]; ++e) powers[v].push_back(powers[v].back() * values[v]);
  }
  T sum(0), x;
  for (const auto& t : p.terms()) {
    x = detail::from_integer<T>(t.coef);
    for (std::size_t v = 0; v < nv; ++v)
      if (const unsigned e = t.mono[v]) x *= powers[v][e];
    sum += x;
  }
  return sum;
}

inline std::string to_string(const SparsePoly& p, const VarSpace* vars = nullptr) {
  if (p.is_zero()) return "0";
  std::string s;
  bool first = true;
  for (const auto& t : p.terms()) {
    std::string c = t.coef.str();
    if (!first) s += (t.coef < 0) ? " - " : " + ";
    else if (t.coef < 0) s += "-";
    if (t.coef < 0) c = c.substr(1);
    first = false;
    const auto sup = t.mono.support();
    if (c != "1" || sup.empty()) s += c + (sup.empty() ? "" : "*");
    for (std::size_t k = 0; k < sup.size(); ++k) {
      if (k) s += "*";
      s += vars ? vars->name(sup[k].first) : "x" + std::to_string(sup[k].first);
      if (sup[k].second > 1) s += "^" + std::to_string(sup[k].second);
    }
  }
  return s;
}

}  // namespace sparseres
