#pragma once

// Symbolic determinants of polynomial matrices.
//
// The main kernel expands along rows while memoizing minors by the set of
// columns already used (a bitmask). States whose unused columns can no longer
// be reached by any remaining row are pruned, which keeps banded sparse
// matrices (Sylvester, subdivision) far below the 2^N worst case. Larger
// matrices fall back to fraction-free (Bareiss) elimination.

#include "sparseres/multipoly.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <unordered_map>
#include <vector>

namespace sparseres {

/// Square matrix of polynomials with optional lattice-point labels on its
/// rows and columns.
class PolyMatrix {
 public:
  PolyMatrix() = default;
  explicit PolyMatrix(std::size_t n) : n_(n), entries_(n * n) {}

  std::size_t size() const noexcept { return n_; }
  const SparsePoly& at(std::size_t r, std::size_t c) const { return entries_[r * n_ + c]; }
  SparsePoly& at(std::size_t r, std::size_t c) { return entries_[r * n_ + c]; }

  std::vector<LatticePoint> row_labels;
  std::vector<LatticePoint> col_labels;

  std::size_t nonzeros_in_row(std::size_t r) const {
    std::size_t k = 0;
    for (std::size_t c = 0; c < n_; ++c) k += !at(r, c).is_zero();
    return k;
  }

  /// Principal submatrix on the given (sorted) indices.
  PolyMatrix principal_submatrix(const std::vector<std::size_t>& keep) const {
    PolyMatrix s(keep.size());
    for (std::size_t r = 0; r < keep.size(); ++r) {
      for (std::size_t c = 0; c < keep.size(); ++c) s.at(r, c) = at(keep[r], keep[c]);
      if (!row_labels.empty()) s.row_labels.push_back(row_labels[keep[r]]);
      if (!col_labels.empty()) s.col_labels.push_back(col_labels[keep[r]]);
    }
    return s;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    for (std::size_t c = 0; c < n_; ++c) std::swap(at(a, c), at(b, c));
    if (!row_labels.empty()) std::swap(row_labels[a], row_labels[b]);
  }

 private:
  std::size_t n_ = 0;
  std::vector<SparsePoly> entries_;
};

struct DeterminantOptions {
  /// Largest size routed through memoized minor expansion (bitmask width
  /// caps it at 64).
  std::size_t minor_expansion_limit = 64;
};

namespace detail {

inline int permutation_sign(const std::vector<std::size_t>& perm) {
  std::vector<bool> seen(perm.size(), false);
  int sign = 1;
  for (std::size_t s = 0; s < perm.size(); ++s) {
    if (seen[s]) continue;
    std::size_t len = 0;
    for (std::size_t t = s; !seen[t]; t = perm[t]) {
      seen[t] = true;
      ++len;
    }
    if (len % 2 == 0) sign = -sign;
  }
  return sign;
}

}  // namespace detail

/// Row-by-row expansion with minors memoized on the used-column bitmask.
inline SparsePoly determinant_minor_expansion(const PolyMatrix& m) {
  const std::size_t n = m.size();
  if (n == 0) return SparsePoly::constant(1);
  if (n > 64) fail(ErrorKind::kInvalidInput, "minor expansion supports at most 64 columns");

  std::vector<std::vector<std::size_t>> cols(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      if (!m.at(r, c).is_zero()) cols[r].push_back(c);
  for (const auto& row : cols)
    if (row.empty()) return {};

  // Banded processing order: by first, then last, nonzero column.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::pair(cols[a].front(), cols[a].back()) < std::pair(cols[b].front(), cols[b].back());
  });

  std::vector<std::size_t> last_use(n, n);
  for (std::size_t t = 0; t < n; ++t)
    for (std::size_t c : cols[order[t]]) last_use[c] = t;
  std::vector<std::uint64_t> required(n, 0);
  for (std::size_t c = 0; c < n; ++c) {
    if (last_use[c] == n) return {};  // empty column
    for (std::size_t t = last_use[c]; t < n; ++t) required[t] |= std::uint64_t{1} << c;
  }

  std::unordered_map<std::uint64_t, SparsePoly> states{{0, SparsePoly::constant(1)}};
  for (std::size_t t = 0; t < n; ++t) {
    const std::size_t r = order[t];
    std::unordered_map<std::uint64_t, SparsePoly> next;
    for (const auto& [mask, minor] : states) {
      for (std::size_t c : cols[r]) {
        const std::uint64_t bit = std::uint64_t{1} << c;
        if (mask & bit) continue;
        const std::uint64_t nm = mask | bit;
        if ((nm & required[t]) != required[t]) continue;
        const SparsePoly& e = m.at(r, c);
        SparsePoly contrib = e.size() == 1 ? minor.times_term(e.terms()[0].mono, e.terms()[0].coef)
                                           : minor * e;
        const bool odd = std::popcount(c + 1 < 64 ? mask >> (c + 1) : 0) % 2;
        auto [it, fresh] = next.try_emplace(nm);
        if (odd) it->second -= contrib;
        else it->second += contrib;
      }
    }
    states = std::move(next);
    if (states.empty()) return {};
  }
  SparsePoly det = states.begin()->second;
  return detail::permutation_sign(order) < 0 ? -det : det;
}

/// Fraction-free Gaussian elimination; every division is exact.
inline SparsePoly determinant_bareiss(PolyMatrix m) {
  const std::size_t n = m.size();
  if (n == 0) return SparsePoly::constant(1);
  int sign = 1;
  SparsePoly prev = SparsePoly::constant(1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m.at(k, k).is_zero()) {
      std::size_t p = k + 1;
      while (p < n && m.at(p, k).is_zero()) ++p;
      if (p == n) return {};
      m.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        SparsePoly num = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
        m.at(i, j) = exact_div(num, prev);
      }
      m.at(i, k) = SparsePoly{};
    }
    prev = m.at(k, k);
  }
  return sign < 0 ? -m.at(n - 1, n - 1) : m.at(n - 1, n - 1);
}

inline SparsePoly determinant(const PolyMatrix& m, const DeterminantOptions& opts = {}) {
  if (m.size() <= std::min<std::size_t>(opts.minor_expansion_limit, 64))
    return determinant_minor_expansion(m);
  return determinant_bareiss(m);
}

}  // namespace sparseres
