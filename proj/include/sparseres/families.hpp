#pragma once

// Support families used throughout the test and verification suites.

#include "sparseres/lattice_geom.hpp"
#include "sparseres/measures.hpp"
#include "sparseres/resultant.hpp"

namespace sparseres {

namespace detail {
inline Support support_of(std::vector<LatticePoint> pts) { return Support(std::move(pts)); }
}  // namespace detail

/// Three bivariate polynomials with four terms each (MV = 4, 3, 4).
inline SupportFamily four_term_family() {
  using detail::support_of;
  return SupportFamily(2,
                       {support_of({{0, 0}, {1, 1}, {2, 1}, {1, 0}}),
                        support_of({{0, 1}, {2, 2}, {2, 1}, {1, 0}}),
                        support_of({{0, 0}, {0, 1}, {1, 1}, {1, 0}})},
                       "four-term");
}

/// Two trinomials and a binomial in two variables (MV = 5, 7, 7).
inline SupportFamily trinomial_family() {
  using detail::support_of;
  return SupportFamily(2,
                       {support_of({{0, 0}, {2, 2}, {1, 3}}),
                        support_of({{0, 0}, {2, 0}, {1, 2}}),
                        support_of({{3, 0}, {1, 1}})},
                       "trinomial");
}

}  // namespace sparseres
