#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "stringtop/coderivation.hpp"
#include "oracles.hpp"
#include "structures.hpp"

using namespace testsupport;

namespace {

std::string describe(const RelationReport& r) {
  std::string s;
  for (const auto& rel : r.relations)
    if (rel.violation) s += to_string(*rel.violation) + "\n";
  return s;
}

}  // namespace

TEST(Coderivation, ShiftedParity) {
  EXPECT_EQ(shifted_parity(-2), 1);
  EXPECT_EQ(shifted_parity(-1), 0);
  EXPECT_EQ(shifted_parity(0), 1);
  EXPECT_EQ(shifted_parity(3), 0);
}

TEST(Coderivation, NormalizeWord) {
  const auto basis = three_letters();
  auto n = normalize_word(basis, {2, 1});  // c b: both odd
  ASSERT_TRUE(n);
  EXPECT_EQ(n->first, -1);
  EXPECT_EQ(n->second, (Word{1, 2}));
  n = normalize_word(basis, {1, 0});  // b a: a even
  EXPECT_EQ(n->first, 1);
  EXPECT_FALSE(normalize_word(basis, {1, 2, 1}));
  n = normalize_word(basis, {0, 2, 0});
  ASSERT_TRUE(n);
  EXPECT_EQ(n->second, (Word{0, 0, 2}));
}

TEST(Coderivation, CanonicalWordsSkipRepeatedOddLetters) {
  const auto basis = three_letters();
  const auto words = canonical_words(basis, 3);
  // length 1: 3; length 2: aa ab ac bc; length 3: aaa aab aac abc
  EXPECT_EQ(words.size(), 3u + 4u + 4u);
  EXPECT_TRUE(std::is_sorted(words.begin(), words.end(), WordLess{}));
}

TEST(Coderivation, ExtensionMatchesPermutationOracle) {
  std::mt19937_64 rng(11);
  const auto basis = three_letters();
  for (std::size_t k : {2u, 3u}) {
    const auto m = random_rep(rng, basis, k);
    for (const auto& w : canonical_words(basis, 4))
      EXPECT_EQ(extend_coderivation(m, w), extension_oracle(m, w)) << "k=" << k << " word " << to_string(basis, w);
  }
}

TEST(Coderivation, ExtensionSatisfiesCoderivationLaw) {
  std::mt19937_64 rng(12);
  const auto basis = five_letters();
  for (int trial = 0; trial < 3; ++trial)
    for (std::size_t k : {2u, 3u}) {
      const auto m = random_rep(rng, basis, k, true);
      ASSERT_FALSE(m.values.empty());
      const auto v = check_coderivation_law(m, 4);
      EXPECT_FALSE(v) << to_string(*v);
    }
}

TEST(Coderivation, CoproductCounts) {
  const auto basis = three_letters();
  const auto t = coproduct(basis, {0, 1, 2});
  EXPECT_EQ(t.size(), 8u);
  // (c) ⊗ (a b): moving c past the odd letter b costs a sign.
  EXPECT_EQ(t.at({Word{2}, Word{0, 1}}), -1);
}

TEST(StringBrackets, CircleBracketsVanish) {
  const auto sb = string_brackets(circle_table(), 3);
  ASSERT_FALSE(sb.precondition) << to_string(*sb.precondition);
  EXPECT_TRUE(sb.ok());
  EXPECT_TRUE(sb.table.bracket.empty());
  ASSERT_EQ(sb.mbar.size(), 2u);
  for (const auto& m : sb.mbar) EXPECT_TRUE(m.values.empty());
  const auto rel = coderivation_relations(sb.mbar, 3, {{2}, {2, 3}});
  EXPECT_TRUE(rel.ok()) << describe(rel);
}

TEST(StringBrackets, PreconditionsAreCheckedFirst) {
  auto t = circle_table();
  t.M[1] = Vec{{1, Rational(2)}};  // M(s1) = 2 c1, but Δ(p1) = c1
  auto sb = string_brackets(t, 2);
  ASSERT_TRUE(sb.precondition);
  EXPECT_EQ(sb.precondition->identity, "M o E = Delta");
  EXPECT_EQ(sb.precondition->witnesses.front(), "p1");
  EXPECT_TRUE(sb.table.bracket.empty());

  t = circle_table();
  t.E[1] = unit_vec(4);  // E(c1) = sigma0 keeps M∘E = Δ but E(M(s1)) ≠ 0
  sb = string_brackets(t, 2);
  ASSERT_TRUE(sb.precondition);
  EXPECT_EQ(sb.precondition->identity, "E o M = 0");
  EXPECT_EQ(sb.precondition->witnesses.front(), "s1");
}

TEST(StringBrackets, TorusKernelQuotient) {
  const auto t = with_kernel_quotient_string_space(torus_table(2));
  EXPECT_EQ(t.string.size(), 16u);
  const auto sb = string_brackets(t, 3);
  ASSERT_FALSE(sb.precondition) << to_string(*sb.precondition);
  EXPECT_TRUE(sb.ok()) << to_string(*sb.report.violation);
  EXPECT_FALSE(sb.table.bracket.empty());
  EXPECT_FALSE(sb.mbar[1].values.empty());
  const auto rel = coderivation_relations(sb.mbar, 3, {{2}, {2, 3}});
  EXPECT_TRUE(rel.ok()) << describe(rel);
}

TEST(JacobiEquivalence, Sl2) {
  const auto good = jacobi_coderivation_equiv(sl2(2), 4);
  EXPECT_TRUE(good.jacobi_holds());
  EXPECT_TRUE(good.square_zero());

  const auto bad = jacobi_coderivation_equiv(sl2(3), 4);
  EXPECT_FALSE(bad.jacobi_holds());
  EXPECT_FALSE(bad.square_zero());
  EXPECT_EQ(bad.square.violation->witnesses.size(), 3u);
  EXPECT_TRUE(bad.agree());
}

TEST(JacobiEquivalence, RandomAntisymmetricBrackets) {
  // Three letters of degree −2 and one of degree −1; brackets respect degree
  // and antisymmetry with small random constants.
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> coef(-1, 1);
  int jacobi = 0, broken = 0;
  for (int trial = 0; trial < 40; ++trial) {
    StringBracketTable t;
    for (const char* n : {"x", "y", "z"}) t.basis.add(n, -2);
    t.basis.add("w", -1);
    const std::size_t n = t.basis.size();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        const int target = t.basis.degree(i) + t.basis.degree(j) + 2;
        const Rational s = -((long(t.basis.degree(i)) * t.basis.degree(j)) % 2 == 0 ? 1 : -1);
        Vec v;
        for (std::size_t k = 0; k < n; ++k)
          if (t.basis.degree(k) == target)
            if (int c = coef(rng)) v[k] = c;
        if (i == j && s == -1) continue;  // forced to vanish
        if (v.empty()) continue;
        t.bracket[{i, j}] = v;
        if (i != j) t.bracket[{j, i}] = scaled(v, s);
      }
    const auto eq = jacobi_coderivation_equiv(t, 3);
    ASSERT_TRUE(eq.direct.ok() || eq.direct.violation->identity != "antisymmetry");
    EXPECT_TRUE(eq.agree()) << "trial " << trial;
    (eq.jacobi_holds() ? jacobi : broken)++;
  }
  EXPECT_GT(jacobi, 0);
  EXPECT_GT(broken, 0);
}

TEST(GoldmanTable, RejectAndProject) {
  const FatGraph torus({"a", "b"}, {"a", "b", "a^-", "b^-"});
  auto cls = [&](const char* s) { return cyclic_reduce(parse_word(torus, s)); };

  const auto closed = goldman_table(torus, {cls("a"), cls("a a")}, Truncation::Reject);
  EXPECT_TRUE(closed.bracket.empty());

  EXPECT_THROW(goldman_table(torus, {cls("a"), cls("b")}, Truncation::Reject), std::domain_error);

  const std::vector<CyclicWord> five{cls("a"), cls("b"), cls("a b"), cls("a^-"), cls("b^-")};
  const auto projected = goldman_table(torus, five, Truncation::Project);
  EXPECT_EQ(projected.basis.size(), 5u);
  const auto eq = jacobi_coderivation_equiv(projected, 3);
  EXPECT_TRUE(eq.agree());
}
