#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "polykit/error.hpp"
#include "polykit/lifting.hpp"
#include "polykit/normal_form.hpp"
#include "polykit/splitting.hpp"

using namespace polykit;
using fixtures::cell;
using fixtures::morph;
using fixtures::share;

namespace {

std::size_t count_dim(const Polygraph& p, Dim n) {
  return n <= p.max_dim() ? p.generators(n).size() : 0;
}

void expect_split_identities(const SplitResult& res) {
  ASSERT_TRUE(res.verified());
  for (const auto& t : res.T->all_generators())
    EXPECT_EQ(normalize(apply(res.r, res.u.image(t->id()))), normalize(cell(t))) << t->name;
  for (const auto& a : res.S->all_generators())
    EXPECT_EQ(normalize(apply(res.u, res.r.image(a->id()))), normalize(res.h.image(a->id())))
        << a->name;
}

}  // namespace

TEST(Partition, Bab) {
  auto S = share(fixtures::loops1());
  GeneratorPartition part = partition_generators(fixtures::bab(S), 1);
  EXPECT_EQ(part.s0, (std::vector<GeneratorId>{{"b", 1}}));
  EXPECT_EQ(part.s1, (std::vector<GeneratorId>{{"a", 1}}));
  EXPECT_TRUE(part.s2.empty());

  GeneratorPartition id = partition_generators(identity_morphism(S), 1);
  EXPECT_EQ(id.s1.size(), 2u);
  EXPECT_TRUE(id.s0.empty() && id.s2.empty());
}

TEST(Split, Bab) {
  auto S = share(fixtures::loops1());
  SplitResult res = split_idempotent(S, fixtures::bab(S));
  expect_split_identities(res);
  EXPECT_EQ(count_dim(*res.T, 0), 1u);
  ASSERT_EQ(count_dim(*res.T, 1), 1u);
  GeneratorPtr theta = res.T->generators(1).front();
  EXPECT_EQ(res.u.image(theta->id()), cell(*S, "b *0 a *0 b"));
  EXPECT_EQ(res.r.image({"a", 1}), cell(theta));
  EXPECT_EQ(res.r.image({"b", 1}), CellTerm::unit(cell(res.T->generators(0).front())));

  const LevelRecord& l1 = res.levels.at(1);
  EXPECT_EQ(l1.u_alphabet.size(), 2u);
  EXPECT_EQ(l1.k.at({"a", 1}), fixtures::bab(S).image({"a", 1}));
}

TEST(Split, IdentityGivesIsomorphicCopy) {
  for (Polygraph p : {fixtures::loops2(), fixtures::adjunction(), fixtures::globes3()}) {
    auto S = share(p);
    SplitResult res = split_idempotent(S, identity_morphism(S));
    expect_split_identities(res);
    for (Dim n = 0; n <= S->max_dim(); ++n) EXPECT_EQ(count_dim(*res.T, n), count_dim(*S, n));
  }
}

TEST(Split, SecondKindGeneratorLeavesTheAlphabet) {
  auto S = share(parse_polygraph("dim 0\n •\ndim 1\n a : • -> •\n b : • -> •\n c : • -> •\n"));
  Morphism h = morph("h", S, S, {{"•", "•"}, {"a", "a"}, {"b", "b"}, {"c", "a *0 b"}});
  SplitResult res = split_idempotent(S, h);
  expect_split_identities(res);
  const LevelRecord& l1 = res.levels.at(1);
  EXPECT_EQ(l1.partition.s2, (std::vector<GeneratorId>{{"c", 1}}));
  EXPECT_EQ(l1.u_alphabet, (std::vector<GeneratorId>{{"a", 1}, {"b", 1}}));
  EXPECT_EQ(count_dim(*res.T, 1), 2u);
}

TEST(Split, WhiskeredTwoCell) {
  auto S = share(parse_polygraph(
      "dim 0\n •\ndim 1\n a : • -> •\n b : • -> •\ndim 2\n phi : a -> a\n"));
  Morphism h = morph("h", S, S,
                     {{"•", "•"}, {"a", "b *0 a *0 b"}, {"b", "id(•)"},
                      {"phi", "id(b) *0 phi *0 id(b)"}});
  SplitResult res = split_idempotent(S, h);
  expect_split_identities(res);
  ASSERT_EQ(count_dim(*res.T, 2), 1u);
  GeneratorPtr theta = res.T->generators(2).front();
  CellTerm back = apply(res.r, res.u.image(theta->id()));
  EXPECT_EQ(oracle_equal_bounded(back, cell(theta), 5000), EqVerdict::Equal);
}

TEST(Split, ThreeDimensional) {
  auto S = share(fixtures::globes3());
  Morphism h = morph("h", S, S,
                     {{"•", "•"}, {"a", "a"}, {"phi", "phi"}, {"psi", "phi"}, {"eps", "eps"},
                      {"A", "id(phi)"}, {"B", "id(phi)"}, {"E", "E"}});
  SplitResult res = split_idempotent(S, h);
  expect_split_identities(res);
  EXPECT_EQ(count_dim(*res.T, 2), 2u);
  EXPECT_EQ(count_dim(*res.T, 3), 1u);
  EXPECT_EQ(res.levels.at(3).partition.s0.size(), 2u);
}

TEST(Split, RejectsNonIdempotent) {
  auto S = share(fixtures::loops1());
  Morphism d = morph("d", S, S, {{"•", "•"}, {"a", "a *0 a"}, {"b", "b"}});
  EXPECT_THROW(split_idempotent(S, d), Error);
}

// ---- lifting ----------------------------------------------------------------

TEST(Lift, ThroughIdentity) {
  auto S = share(fixtures::loops1());
  Morphism f = fixtures::bab(S);
  Morphism id = identity_morphism(S);
  PresentedComplex C = PresentedComplex::free(S);
  LiftResult res = lift_generators(S, f, section_oracle("id", id, id, C), 1000);
  for (const auto& c : res.checks) EXPECT_TRUE(c.ok) << c.subject;
  for (const auto& a : S->all_generators())
    EXPECT_EQ(normalize(res.g.image(a->id())), normalize(f.image(a->id())));
}

namespace {

struct Identified {
  PolygraphPtr D = share(fixtures::loops1());
  PresentedComplex C = PresentedComplex::identify("C", D, {{{"a", 1}, {"b", 1}}});
  Morphism p = identity_morphism(D);
  PolygraphPtr S = share(parse_polygraph("dim 0\n o\ndim 1\n c : o -> o\n"));
};

}  // namespace

TEST(Lift, ScriptedThroughIdentification) {
  Identified ex;
  EXPECT_TRUE(ex.C.check_reducer(3).empty());
  EXPECT_TRUE(ex.C.same(cell(*ex.D, "a *0 b"), cell(*ex.D, "b *0 b"), 100));

  Morphism f = morph("f", ex.S, ex.D, {{"o", "•"}, {"c", "a *0 b"}});
  CellTerm pt = cell(*ex.D, "•");
  std::vector<ScriptedFill> table = {
      {{}, pt, pt},
      {{pt, pt}, cell(*ex.D, "b *0 b"), cell(*ex.D, "a *0 a")},
  };
  LiftResult res = lift_generators(ex.S, f, scripted_oracle("script", ex.p, ex.C, table, 1000), 1000);
  for (const auto& c : res.checks) EXPECT_TRUE(c.ok) << c.subject;
  EXPECT_EQ(res.g.image({"c", 1}), cell(*ex.D, "a *0 a"));
}

TEST(Lift, BadFillerIsCaught) {
  Identified ex;
  Morphism f = morph("f", ex.S, ex.D, {{"o", "•"}, {"c", "a *0 b"}});
  CellTerm pt = cell(*ex.D, "•");
  std::vector<ScriptedFill> table = {
      {{}, pt, pt},
      {{pt, pt}, cell(*ex.D, "a *0 b"), cell(*ex.D, "a")},
  };
  try {
    lift_generators(ex.S, f, scripted_oracle("bad", ex.p, ex.C, table, 1000), 1000);
    FAIL() << "expected a contract violation";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ContractViolation);
  }
}

TEST(Fibration, BoundedCheck) {
  auto AB = share(fixtures::loops1());
  auto A = share(parse_polygraph("dim 0\n •\ndim 1\n a : • -> •\n"));

  EXPECT_TRUE(check_trivial_fibration_bounded(identity_morphism(AB), 3).ok());

  Morphism proj = morph("proj", AB, A, {{"•", "•"}, {"a", "a"}, {"b", "a"}});
  FibrationReport pr = check_trivial_fibration_bounded(proj, 3);
  EXPECT_TRUE(pr.ok());
  EXPECT_GT(pr.squares, 0u);

  Morphism incl = morph("incl", A, AB, {{"•", "•"}, {"a", "a"}});
  FibrationReport ir = check_trivial_fibration_bounded(incl, 3);
  EXPECT_FALSE(ir.ok());
  ASSERT_FALSE(ir.unfilled.empty());
  EXPECT_EQ(ir.unfilled.front().dim, 1);
}

TEST(RetractIso, Identity) {
  auto S = share(fixtures::loops2());
  Morphism id = identity_morphism(S);
  RetractIso iso = free_retract_iso(S, id, id, PresentedComplex::free(S), std::nullopt, 1000);
  EXPECT_TRUE(iso.verified());
  EXPECT_EQ(iso.split.T->size(), S->size());
}

TEST(RetractIso, FreeMonoidOnOneGenerator) {
  auto S = share(fixtures::loops1());
  auto Cp = share(parse_polygraph("dim 0\n o\ndim 1\n c : o -> o\n"));
  Morphism p = morph("p", S, Cp, {{"•", "o"}, {"a", "c"}, {"b", "id(o)"}});
  Morphism q = morph("q", Cp, S, {{"o", "•"}, {"c", "b *0 a *0 b"}});
  RetractIso iso = free_retract_iso(S, p, q, PresentedComplex::free(Cp), std::nullopt, 1000);
  ASSERT_TRUE(iso.verified());
  ASSERT_EQ(count_dim(*iso.split.T, 1), 1u);
  GeneratorPtr theta = iso.split.T->generators(1).front();
  EXPECT_EQ(iso.f.image(theta->id()), cell(*Cp, "c"));
  EXPECT_EQ(normalize(iso.h.image({"a", 1})), normalize(cell(*S, "b *0 a *0 b")));
}

TEST(RetractIso, RejectsNonSection) {
  auto S = share(fixtures::loops1());
  auto Cp = share(parse_polygraph("dim 0\n o\ndim 1\n c : o -> o\n"));
  Morphism p = morph("p", S, Cp, {{"•", "o"}, {"a", "c"}, {"b", "c"}});
  Morphism q = morph("q", Cp, S, {{"o", "•"}, {"c", "b *0 a"}});
  EXPECT_THROW(free_retract_iso(S, p, q, PresentedComplex::free(Cp), std::nullopt, 1000), Error);
}
