#include "sparseres/families.hpp"
#include "sparseres/resultant.hpp"

#include <gtest/gtest.h>

using namespace sparseres;
using P = LatticePoint;

namespace {

const MatrixSet& four_term_matrices() {
  static const MatrixSet ce = build_matrices(four_term_family(), 1);
  return ce;
}

const ResultantCertificate& four_term_res() {
  static const ResultantCertificate r = compute_resultant(four_term_family(), 1);
  return r;
}

const ResultantCertificate& trinomial_res() {
  static const ResultantCertificate r = compute_resultant(trinomial_family(), 1);
  return r;
}

Integer product_bound(const std::vector<std::size_t>& m, const std::vector<std::size_t>& n) {
  Integer b = 1;
  for (std::size_t i = 0; i < m.size(); ++i) b *= ipow(Integer(m[i]), static_cast<unsigned>(n[i]));
  return b;
}

}  // namespace

TEST(CEMatrices, RowsHoldOneGroupEach) {
  for (const auto& f : {four_term_family(), trinomial_family(), sylvester_family(2, 3)}) {
    const MatrixSet ce = build_matrices(f, 1);
    const std::size_t size = ce.points.size();
    for (const auto& m : ce.matrices) {
      ASSERT_EQ(m.matrix.size(), size);
      std::size_t total = 0;
      for (std::size_t i = 0; i < f.size(); ++i) total += m.counts[i];
      EXPECT_EQ(total, size);
      for (std::size_t r = 0; r < size; ++r) {
        const std::size_t g = m.contents[r].group;
        EXPECT_EQ(m.matrix.nonzeros_in_row(r), f[g].size());
        for (std::size_t c = 0; c < size; ++c) {
          const SparsePoly& e = m.matrix.at(r, c);
          if (e.is_zero()) continue;
          ASSERT_EQ(e.size(), 1u);
          EXPECT_EQ(e.leading().coef, 1);
          EXPECT_EQ(e.leading().mono.degree(), 1u);
          const auto var = e.leading().mono.support().front().first;
          EXPECT_EQ(ce.vars.group_of(var), g);
        }
      }
    }
  }
}

TEST(CEMatrices, LinearPairHasSylvesterShape) {
  const SupportFamily f(1, {Support({P{0}, P{1}}), Support({P{0}, P{1}})});
  const MatrixSet ce = build_matrices(f, 1);
  EXPECT_TRUE(ce.points.size() == 2 || ce.points.size() == 3);
  const SparsePoly sylvester = determinant(sylvester_matrix(1, 1));
  const auto r = compute_resultant(f, 1);
  EXPECT_TRUE(r.polynomial == sylvester || r.polynomial == -sylvester);
}

TEST(CEMatrices, Deterministic) {
  const MatrixSet a = build_matrices(trinomial_family(), 4), b = build_matrices(trinomial_family(), 4);
  EXPECT_EQ(a.points, b.points);
  for (std::size_t j = 0; j < a.matrices.size(); ++j) EXPECT_EQ(a.matrices[j].counts, b.matrices[j].counts);
}

TEST(CEMatrices, FourTermSeedOneMatchesReferencePartition) {
  const auto& ce = four_term_matrices();
  EXPECT_EQ(ce.points.size(), 15u);
  EXPECT_EQ(ce.matrices[0].counts, (std::vector<std::size_t>{4, 4, 7}));
}

TEST(CEDeterminants, DegreesAndHeights) {
  const auto& ce = four_term_matrices();
  const auto ds = dets(ce);
  const auto m = ce.family.cardinalities();
  for (std::size_t j = 0; j < ds.size(); ++j) {
    const auto deg = multidegree(ds[j], ce.vars);
    for (std::size_t i = 0; i < deg.size(); ++i) EXPECT_EQ(deg[i], ce.matrices[j].counts[i]);
    EXPECT_TRUE(is_multihomogeneous(ds[j], ce.vars));
    EXPECT_LE(height_H(ds[j]), product_bound(m, ce.matrices[j].counts));
  }
}

TEST(CEDeterminants, QuotientMatchesNumericOracle) {
  // D_0(f) = Res(f) * det(M_0')(f) at random integer points.
  const auto& ce = four_term_matrices();
  const auto ds = dets(ce);
  const SparsePoly denom = determinant(ce.matrices[0].matrix.principal_submatrix(ce.non_mixed_points()));
  const auto& res = four_term_res();
  Rng rng(3);
  for (int t = 0; t < 20; ++t) {
    std::vector<Integer> v;
    for (std::size_t k = 0; k < ce.vars.size(); ++k) v.push_back(Integer(rng.uniform_int(-20, 20)));
    const Integer lhs = evaluate(ds[0], v);
    const Integer rhs = evaluate(res.polynomial, v) * evaluate(denom, v);
    EXPECT_TRUE(lhs == rhs || lhs == -rhs);
  }
}

TEST(Resultant, FourTerm) {
  const auto& r = four_term_res();
  EXPECT_TRUE(r.all_passed());
  EXPECT_EQ(r.multidegree, (std::vector<unsigned>{4, 3, 4}));
  EXPECT_EQ(height_H(r.polynomial), 8);
  EXPECT_EQ(content(r.polynomial), 1);
  EXPECT_GT(r.polynomial.leading().coef, 0);
}

TEST(Resultant, Trinomial) {
  const auto& r = trinomial_res();
  EXPECT_TRUE(r.all_passed());
  EXPECT_EQ(r.multidegree, (std::vector<unsigned>{5, 7, 7}));
  EXPECT_EQ(height_H(r.polynomial), 14);
}

TEST(Resultant, SeedIndependent) {
  for (std::uint64_t seed : {2u, 7u, 19u}) EXPECT_EQ(compute_resultant(four_term_family(), seed).polynomial,
                                                     four_term_res().polynomial);
}

TEST(Resultant, SubdivisionMatricesAgreeWithSylvester) {
  for (std::size_t d0 = 1; d0 <= 3; ++d0)
    for (std::size_t d1 = 1; d1 <= 3; ++d1) {
      const SparsePoly ce = compute_resultant(sylvester_family(d0, d1), 1).polynomial;
      const SparsePoly sy = sylvester_resultant(d0, d1).polynomial;
      EXPECT_TRUE(ce == sy || ce == -sy) << d0 << "," << d1;
    }
}

TEST(Resultant, SylvesterHeights) {
  const std::vector<long> h{2, 3, 10, 23, 78};
  for (std::size_t d = 2; d <= 6; ++d) {
    const auto r = sylvester_resultant(d, d);
    EXPECT_EQ(height_H(r.polynomial), h[d - 2]);
    EXPECT_EQ(r.multidegree, (std::vector<unsigned>{static_cast<unsigned>(d), static_cast<unsigned>(d)}));
    EXPECT_TRUE(r.all_passed());
  }
  EXPECT_THROW(sylvester_resultant(0, 2), Error);
}

TEST(Resultant, RejectsUnsupportedFamilies) {
  const SupportFamily half(1, {Support({P{0}}), Support({P{0}, P{1}})});
  EXPECT_THROW(compute_resultant(half, 1), Error);
  const SupportFamily evens(1, {Support({P{0}, P{2}}), Support({P{0}, P{2}})});
  try {
    (void)compute_resultant(evens, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kInvalidInput);
  }
}

TEST(ExtremeCoefficients, AreUnits) {
  for (const auto* r : {&four_term_res(), &trinomial_res()}) {
    const auto ext = extreme_coefficients(r->polynomial, 5);
    EXPECT_GE(ext.size(), 3u);
    for (const auto& t : ext) EXPECT_EQ(abs(t.coef), 1);
  }
  // 2x + y has extreme coefficient 2.
  const SparsePoly p = SparsePoly::variable(0, 2) + SparsePoly::variable(1);
  bool found_two = false;
  for (const auto& t : extreme_coefficients(p, 1)) found_two = found_two || t.coef == 2;
  EXPECT_TRUE(found_two);
}

TEST(ForcedRoots, SystemsVanishAtTheRoot) {
  const auto f = four_term_family();
  Rng rng(2);
  const RationalPoint x{Rational(2, 3), Rational(-5, 2)};
  const CoefficientSystem sys = forced_root_system(f, x, rng);
  for (std::size_t i = 0; i < f.size(); ++i) {
    Rational v = 0;
    for (std::size_t k = 0; k < f[i].size(); ++k)
      v += Rational(sys[i][k]) * rpow(x[0], f[i][k][0]) * rpow(x[1], f[i][k][1]);
    EXPECT_EQ(v, 0);
  }
}

TEST(Vanishing, BundledFamilies) {
  for (const auto* r : {&four_term_res(), &trinomial_res()}) {
    const VanishingReport v = verify_vanishing(*r, 25, 9);
    EXPECT_EQ(v.forced_zero, 25u);
    EXPECT_GE(v.random_nonzero, 24u);
  }
}

TEST(Vanishing, EqualPolynomialsShareRoots) {
  const auto r = sylvester_resultant(3, 3);
  const std::vector<Integer> f{4, -1, 7, 2};
  EXPECT_EQ(evaluate_at(r, {f, f}), 0);
}

TEST(PowerIdentity, SmallDegrees) {
  for (std::size_t d = 1; d <= 2; ++d) {
    const auto rep = verify_power_identity(sylvester_family(d, d), 2, 10, 11);
    EXPECT_TRUE(rep.passed()) << "d = " << d;
    EXPECT_EQ(rep.trials, 10u);
  }
  const auto mixed = verify_power_identity(sylvester_family(1, 2), 2, 5, 13);
  EXPECT_TRUE(mixed.passed());
}
