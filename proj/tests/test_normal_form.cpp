#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "polykit/enumerate.hpp"
#include "polykit/error.hpp"
#include "polykit/normal_form.hpp"

using namespace polykit;
using fixtures::cell;

TEST(NormalForm, Associativity) {
  auto p = fixtures::loops2();
  EXPECT_EQ(normalize(cell(p, "(a *0 b) *0 a")), normalize(cell(p, "a *0 (b *0 a)")));
  EXPECT_EQ(cells_equal(cell(p, "a *0 b"), cell(p, "a *0 b")), EqVerdict::Equal);
  EXPECT_EQ(cells_equal(cell(p, "a *0 b"), cell(p, "b *0 a")), EqVerdict::Distinct);
}

TEST(NormalForm, Exchange) {
  auto p = fixtures::loops2();
  // phi : a => b, psi : b => a
  auto x = cell(p, "(phi *0 id(b)) *1 (id(b) *0 psi)");
  auto y = cell(p, "(id(a) *0 psi) *1 (phi *0 id(a))");
  auto z = cell(p, "phi *0 psi");
  EXPECT_EQ(normalize(x), normalize(y));
  EXPECT_EQ(normalize(x), normalize(z));
  EXPECT_EQ(oracle_equal_bounded(x, y, 100), EqVerdict::Equal);
}

TEST(NormalForm, UnitLaw) {
  auto p = fixtures::loops2();
  EXPECT_EQ(normalize(cell(p, "id(id(•)) *1 eps")).term(), cell(p, "eps"));
  EXPECT_EQ(normalize(cell(p, "id(a) *1 phi *1 id(b)")).term(), cell(p, "phi"));
}

TEST(NormalForm, EckmannHilton) {
  auto p = fixtures::loops2();
  auto x = cell(p, "eps *0 (eps *1 eps)");
  auto y = cell(p, "(eps *1 eps) *0 eps");
  EXPECT_EQ(cells_equal(x, y), EqVerdict::Equal);
  EXPECT_EQ(cells_equal(cell(p, "eps *0 id(a)"), cell(p, "id(a) *0 eps")), EqVerdict::Distinct);
}

TEST(NormalForm, Idempotent) {
  auto p = fixtures::loops2();
  for (const auto& t : enumerate_terms(p, 2, 4)) {
    auto n = normalize(t);
    EXPECT_EQ(normalize(n.term()), n) << t.key();
  }
}

TEST(NormalForm, GreedyMatchesExhaustive) {
  for (const auto& [p, k] : {std::pair{fixtures::loops2(), 4}, std::pair{fixtures::adjunction(), 5}}) {
    for (const auto& t : enumerate_terms(p, 2, k)) {
      ASSERT_EQ(normalize(t).term(), detail::normalize_dim2_exhaustive(t)) << t.key();
    }
  }
}

TEST(NormalForm, PreservesInvariants) {
  auto p = fixtures::globes3();
  for (Dim n = 1; n <= 3; ++n)
    for (const auto& t : enumerate_terms(p, n, n == 3 ? 3 : 4)) {
      auto nf = normalize(t).term();
      ASSERT_EQ(nf.dim(), t.dim());
      EXPECT_EQ(weight_vector(nf), weight_vector(t));
      EXPECT_EQ(thickness(nf), thickness(t));
      EXPECT_EQ(size(nf), size(t));
      EXPECT_EQ(normalize(source(nf)), normalize(source(t)));
      EXPECT_EQ(normalize(target(nf)), normalize(target(t)));
    }
}

TEST(NormalForm, DimensionMismatch) {
  auto p = fixtures::loops2();
  EXPECT_THROW(cells_equal(cell(p, "a"), cell(p, "phi")), Error);
}

TEST(Oracle, Basics) {
  auto p = fixtures::loops2();
  auto x = cell(p, "(a *0 b) *0 a");
  EXPECT_EQ(oracle_equal_bounded(x, cell(p, "a *0 (b *0 a)"), 10), EqVerdict::Equal);
  EXPECT_EQ(oracle_equal_bounded(x, x, 1), EqVerdict::Equal);
  EXPECT_EQ(oracle_equal_bounded(x, cell(p, "b *0 a *0 a"), 500), EqVerdict::Unknown);
}

TEST(Dim3, ExchangeOfThreeCells) {
  auto p = fixtures::globes3();
  // A : phi => psi and E : eps => 1(1(•)) sit side by side along *0.
  auto x = cell(p, "(A *0 id(eps)) *2 (id(psi) *0 E)");
  auto y = cell(p, "(id(phi) *0 E) *2 (A *0 id(id(id(•))))");
  auto z = cell(p, "A *0 E");
  EXPECT_EQ(cells_equal(x, z), EqVerdict::Equal);
  EXPECT_EQ(cells_equal(y, z), EqVerdict::Equal);
  EXPECT_EQ(cells_equal(cell(p, "A *2 B"), cell(p, "id(phi)")), EqVerdict::Distinct);
}

TEST(Dim3, BudgetGivesUnknown) {
  auto p = fixtures::globes3();
  // Same weights and boundaries; the two atoms are listed in opposite orders.
  auto x = cell(p, "(A *0 id(eps)) *2 (id(psi) *0 E)");
  auto y = cell(p, "(id(phi) *0 E) *2 (A *0 id(id(id(•))))");
  EXPECT_EQ(cells_equal(x, y, 1), EqVerdict::Unknown);
  EXPECT_EQ(cells_equal(x, y), EqVerdict::Equal);
}
