#include "sparseres/families.hpp"
#include "sparseres/measures.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace sparseres;

namespace {

SparsePoly x(std::size_t v) { return SparsePoly::variable(v); }
SparsePoly c(long k) { return SparsePoly::constant(k); }

bool within3(const MahlerEstimate& e, double target) { return std::abs(e.estimate - target) <= 3 * e.std_error; }

}  // namespace

TEST(BoundE, ClosedForms) {
  for (std::size_t d = 2; d <= 7; ++d)
    EXPECT_EQ(bound_E(sylvester_family(d, d)), ipow(Integer(d + 1), static_cast<unsigned>(2 * d)));
  EXPECT_EQ(bound_E(four_term_family()), 4194304);
  EXPECT_EQ(bound_E(trinomial_family()), 68024448);
  EXPECT_NEAR(log_bound({4, 4, 4}, {4, 3, 4}), 11 * std::log(4.0), 1e-12);
}

TEST(Quotient, TruncatedDisplay) {
  EXPECT_EQ(format_q(6.3398), "6.33");
  EXPECT_EQ(format_q(7.5799), "7.57");
  EXPECT_EQ(format_q(5.18), "5.18");
  EXPECT_FALSE(quotient_q(81, 1).has_value());
  EXPECT_NEAR(*quotient_q(81, 3), 4.0, 1e-12);
  // Reference values for d = 2..7 are the truncations of log E / log H.
  const std::vector<long> h{2, 3, 10, 23, 78, 274};
  const std::vector<std::string> q{"6.33", "7.57", "5.59", "5.71", "5.35", "5.18"};
  for (std::size_t d = 2; d <= 7; ++d)
    EXPECT_EQ(format_q(*quotient_q(ipow(Integer(d + 1), static_cast<unsigned>(2 * d)), h[d - 2])), q[d - 2]);
}

TEST(HeightBound, HoldsOnBundledInstances) {
  for (const auto& f : {four_term_family(), trinomial_family()}) {
    const HeightCheck hc = height_bound_check(compute_resultant(f, 1));
    EXPECT_TRUE(hc.holds);
    EXPECT_GT(hc.margin, 0);
  }
  EXPECT_TRUE(height_bound_check(sylvester_resultant(5, 5)).holds);
}

TEST(MatrixBound, ReferencePartition) {
  const MatrixBound b = matrix_bound({4, 4, 7}, {4, 3, 4}, {4, 4, 4});
  ASSERT_TRUE(b.exponent.has_value());
  EXPECT_EQ(*b.exponent, 41u);
  EXPECT_EQ(*b.exact, Integer("4835703278458516698824704"));
  EXPECT_NEAR(b.log_value, 41 * std::log(4.0), 1e-9);
  EXPECT_FALSE(matrix_bound({1, 2}, {1, 1}, {2, 3}).exponent.has_value());
}

TEST(MatrixBound, RealizedBoundDominatesAndMatchesGridClosedForm) {
  for (const auto& f : {four_term_family(), trinomial_family()}) {
    BoundsReport r = basic_report(f);
    add_resultant(r, compute_resultant(f, 1));
    ASSERT_TRUE(r.ce.has_value());
    EXPECT_GE(r.ce->log_value, r.log_E);
  }
  for (auto [n, d] : {std::pair<std::size_t, std::size_t>{2, 1}, {1, 2}, {1, 4}}) {
    const auto g = grid_family(n, d);
    BoundsReport r = basic_report(g);
    add_resultant(r, compute_resultant(g, 1));
    EXPECT_NEAR(r.ce->log_value, matrix_bound_grid_log(n, d), 1e-9) << n << "," << d;
  }
  // (2((n+1)d)^n + (n+1)d^n) log(d+1) for n = 1.
  for (std::size_t d = 1; d <= 5; ++d)
    EXPECT_NEAR(matrix_bound_grid_log(1, d), (2.0 * 2 * d + 2.0 * d) * std::log(d + 1.0), 1e-9);
  EXPECT_NEAR(matrix_bound_grid_log(2, 1), 48 * std::log(2.0), 1e-12);
}

TEST(FactorialBound, SylvesterSeries) {
  EXPECT_EQ(factorial_bound(3, 5), 120);
  for (std::size_t d = 2; d <= 6; ++d) {
    BoundsReport r = basic_report(sylvester_family(d, d));
    add_resultant(r, sylvester_resultant(d, d));
    EXPECT_LE(*r.H, *r.factorial);
  }
}

TEST(EvaluationBound, RandomSystemsSatisfyBound) {
  for (const auto& f : {four_term_family(), trinomial_family()}) {
    const auto cert = compute_resultant(f, 1);
    Rng rng(1);
    const CoefficientSystem forced = forced_root_system(f, {Rational(1, 2), Rational(3)}, rng);
    const EvaluationBoundReport rep = evaluation_bound_check(cert, 100, 6, 9, {forced});
    EXPECT_EQ(rep.trials, 101u);
    EXPECT_TRUE(rep.ok());
  }
}

TEST(EvaluationBound, ViolationIsAnInvariantError) {
  auto cert = sylvester_resultant(2, 2);
  cert.polynomial = cert.polynomial.scaled(1000);
  try {
    (void)evaluation_bound_check(cert, 20, 1);
    FAIL() << "expected a violation";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kInvariant);
  }
}

TEST(Mahler, JensenOracle) {
  const std::size_t n = default_mahler_samples(1);
  EXPECT_TRUE(within3(mahler_mc(c(2) * x(0) + c(1), n, 1), std::log(2.0)));  // m(x + 1/2) = 0
  EXPECT_TRUE(within3(mahler_mc(x(0) + c(2), n, 2), std::log(2.0)));
  EXPECT_TRUE(within3(mahler_mc(x(0) + c(5), n, 3), std::log(5.0)));
}

TEST(Mahler, BivariateKnownValue) {
  // m(1 + x + y) = (3 sqrt 3 / 4 pi) L(chi_-3, 2) = 0.3230659472...
  const MahlerEstimate e = mahler_mc(c(1) + x(0) + x(1), 200000, 4);
  EXPECT_TRUE(within3(e, 0.3230659472194505));
}

TEST(Mahler, ConstantAndErrors) {
  const MahlerEstimate e = mahler_mc(c(-7), 1000, 1);
  EXPECT_NEAR(e.estimate, std::log(7.0), 1e-12);
  EXPECT_EQ(e.std_error, 0.0);
  EXPECT_THROW(mahler_mc(SparsePoly{}, 1000, 1), Error);
  EXPECT_THROW(mahler_mc(x(0), 10, 1), Error);
}

TEST(Mahler, SeedDeterministicAcrossThreads) {
  const SparsePoly p = sylvester_resultant(2, 2).polynomial;
  const auto a = mahler_mc(p, 30000, 9, 1), b = mahler_mc(p, 30000, 9, 3), c2 = mahler_mc(p, 30000, 10, 1);
  EXPECT_EQ(a.estimate, b.estimate);
  EXPECT_EQ(a.std_error, b.std_error);
  EXPECT_EQ(a.samples + a.discarded, 30000u);
  EXPECT_NE(a.estimate, c2.estimate);
}

TEST(Mahler, BoundAndSandwich) {
  for (const auto& cert : {sylvester_resultant(2, 2), compute_resultant(four_term_family(), 1)}) {
    BoundsReport r = basic_report(cert.family);
    add_resultant(r, cert);
    add_mahler(r, mahler_mc(cert.polynomial, default_mahler_samples(cert.vars.size()), 5));
    EXPECT_TRUE(*r.mahler_bound);
    EXPECT_TRUE(*r.mh_sandwich);
  }
}

TEST(Report, BasicFields) {
  const BoundsReport r = basic_report(trinomial_family());
  EXPECT_EQ(r.m, (std::vector<std::size_t>{3, 3, 2}));
  EXPECT_EQ(r.mv, (std::vector<Integer>{5, 7, 7}));
  EXPECT_EQ(r.index, 1);
  EXPECT_EQ(r.E, 68024448);
  EXPECT_FALSE(r.H.has_value());
}
