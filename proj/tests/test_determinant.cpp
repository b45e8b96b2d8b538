#include "oracles.hpp"
#include "sparseres/determinant.hpp"
#include "sparseres/resultant.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace sparseres;

namespace {

SparsePoly x(std::size_t v) { return SparsePoly::variable(v); }

PolyMatrix constant_matrix(const std::vector<std::vector<Integer>>& a) {
  PolyMatrix m(a.size());
  for (std::size_t r = 0; r < a.size(); ++r)
    for (std::size_t c = 0; c < a.size(); ++c) m.at(r, c) = SparsePoly::constant(a[r][c]);
  return m;
}

/// Sparse symbolic matrix: each entry is zero or a fresh variable.
PolyMatrix random_symbolic(std::mt19937_64& g, std::size_t n, double density) {
  std::bernoulli_distribution keep(density);
  PolyMatrix m(n);
  std::size_t v = 0;
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      if (keep(g) && v < kMaxVars) m.at(r, c) = x(v++);
  return m;
}

}  // namespace

TEST(Determinant, TwoByTwo) {
  PolyMatrix m(2);
  m.at(0, 0) = x(0), m.at(0, 1) = x(1), m.at(1, 0) = x(2), m.at(1, 1) = x(3);
  EXPECT_EQ(determinant(m), x(0) * x(3) - x(1) * x(2));
  EXPECT_EQ(determinant_bareiss(m), x(0) * x(3) - x(1) * x(2));
}

TEST(Determinant, LinearSylvester) {
  const SparsePoly d = determinant(sylvester_matrix(1, 1));
  EXPECT_EQ(height_H(d), 1);
  EXPECT_EQ(d.size(), 2u);
  EXPECT_EQ(abs(d.coefficient(Monomial::variable(0) * Monomial::variable(3))), 1);
}

TEST(Determinant, RandomIntegerMatricesMatchCofactorOracle) {
  std::mt19937_64 g(31);
  std::uniform_int_distribution<long> u(-9, 9);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::vector<Integer>> a(5, std::vector<Integer>(5));
    for (auto& row : a)
      for (auto& e : row) e = u(g);
    const Integer expected = oracle::cofactor_det(a);
    const SparsePoly dm = determinant_minor_expansion(constant_matrix(a));
    const SparsePoly db = determinant_bareiss(constant_matrix(a));
    EXPECT_EQ(dm, SparsePoly::constant(expected));
    EXPECT_EQ(db, SparsePoly::constant(expected));
  }
}

TEST(Determinant, KernelsAgreeOnSparseSymbolicMatrices) {
  std::mt19937_64 g(37);
  for (int trial = 0; trial < 20; ++trial) {
    const PolyMatrix m = random_symbolic(g, 6, 0.5);
    EXPECT_EQ(determinant_minor_expansion(m), determinant_bareiss(m));
  }
}

TEST(Determinant, RowSwapAlternatesSign) {
  std::mt19937_64 g(41);
  for (int trial = 0; trial < 10; ++trial) {
    PolyMatrix m = random_symbolic(g, 5, 0.7);
    const SparsePoly d = determinant(m);
    m.swap_rows(0, 3);
    EXPECT_EQ(determinant(m), -d);
  }
}

TEST(Determinant, SingularAndEmpty) {
  PolyMatrix m(3);
  m.at(0, 0) = x(0), m.at(1, 1) = x(1);
  EXPECT_TRUE(determinant(m).is_zero());  // zero row and column
  EXPECT_EQ(determinant(PolyMatrix(0)), SparsePoly::constant(1));
  PolyMatrix dup(2);
  dup.at(0, 0) = x(0), dup.at(0, 1) = x(1), dup.at(1, 0) = x(0), dup.at(1, 1) = x(1);
  EXPECT_TRUE(determinant(dup).is_zero());
  EXPECT_TRUE(determinant_bareiss(dup).is_zero());
}

TEST(Determinant, LargeMatricesUseElimination) {
  // Identity plus a variable in the corner; 70 columns exceed the bitmask.
  PolyMatrix m(70);
  for (std::size_t k = 0; k < 70; ++k) m.at(k, k) = SparsePoly::constant(1);
  m.at(0, 0) = x(0);
  m.at(69, 0) = SparsePoly::constant(2);
  EXPECT_EQ(determinant(m), x(0));
  EXPECT_THROW(determinant_minor_expansion(m), Error);
}

TEST(Determinant, ThresholdSelectsKernel) {
  std::mt19937_64 g(43);
  const PolyMatrix m = random_symbolic(g, 5, 0.6);
  EXPECT_EQ(determinant(m, {.minor_expansion_limit = 0}), determinant(m));
}

TEST(Determinant, SylvesterHeightsSmallDegrees) {
  EXPECT_EQ(height_H(determinant(sylvester_matrix(2, 2))), 2);
  EXPECT_EQ(height_H(determinant(sylvester_matrix(3, 3))), 3);
  EXPECT_EQ(height_H(determinant(sylvester_matrix(4, 4))), 10);
}
