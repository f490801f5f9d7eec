#include <gtest/gtest.h>

#include <set>

#include "idstat/error.hpp"
#include "idstat/perm.hpp"

using namespace idstat;

TEST(Permutation, RejectsNonBijection) {
  EXPECT_THROW(Permutation({0, 0, 1}), InvalidInput);
  EXPECT_THROW(Permutation({0, 3}), InvalidInput);
  EXPECT_NO_THROW(Permutation({2, 0, 1}));
}

TEST(Permutation, SignByInversions) {
  EXPECT_EQ(Permutation::identity(4).sign(), 1);
  EXPECT_EQ(Permutation::transposition(4, 1, 3).sign(), -1);
  EXPECT_EQ(Permutation({1, 2, 0}).sign(), 1);
  // Sign is a homomorphism.
  for (const auto& p : PermutationRange(4)) {
    for (const auto& q : PermutationRange(4)) EXPECT_EQ((p * q).sign(), p.sign() * q.sign());
  }
}

TEST(Permutation, GroupLaws) {
  const auto perms = enumerate_permutations(4);
  for (const auto& p : perms) {
    EXPECT_TRUE((p * p.inverse()).is_identity());
    for (const auto& q : perms) {
      const auto r = perms[(static_cast<std::size_t>(p.image(0)) * 7 + static_cast<std::size_t>(q.image(1))) % perms.size()];
      EXPECT_EQ((p * q) * r, p * (q * r));
    }
  }
}

TEST(Permutation, CycleNotation) {
  EXPECT_EQ(Permutation::transposition(3, 1, 2).cycle_notation(), "(1 2)(3)");
  EXPECT_EQ(Permutation::from_one_based({2, 3, 1}).cycle_notation(), "(1 2 3)");
}

TEST(Apply, ActionIsCompatibleWithComposition) {
  const ProductState s{{0, 1, 2, 3}};
  for (const auto& p : PermutationRange(4)) {
    for (const auto& q : PermutationRange(4)) EXPECT_EQ(apply(p * q, s), apply(p, apply(q, s)));
  }
  EXPECT_THROW(apply(Permutation::identity(2), s), LengthMismatch);
}

TEST(Apply, RelabelsParticles) {
  // levels[p(i)] = s.levels[i]
  const auto p = Permutation::from_one_based({2, 3, 1});
  EXPECT_EQ(apply(p, ProductState{{7, 8, 9}}).levels, (std::vector<int>{9, 7, 8}));
}

TEST(PermutationRange, CountsAndRestarts) {
  std::uint64_t expected = 1;
  for (int n = 1; n <= 7; ++n) {
    expected *= static_cast<std::uint64_t>(n);
    PermutationRange range(n);
    std::set<Permutation> seen(range.begin(), range.end());
    EXPECT_EQ(seen.size(), expected);
    std::size_t again = 0;
    for (auto it = range.begin(); it != range.end(); ++it) ++again;
    EXPECT_EQ(again, expected);
    EXPECT_EQ(factorial(n), expected);
  }
  EXPECT_THROW(PermutationRange(kMaxPermutationSize + 1), CapacityExceeded);
  EXPECT_THROW(PermutationRange(0), InvalidInput);
}

TEST(PermutationRange, LexicographicOrder) {
  const auto perms = enumerate_permutations(3);
  for (std::size_t k = 1; k < perms.size(); ++k) EXPECT_LT(perms[k - 1].images(), perms[k].images());
}

TEST(Witness, TranspositionsDoNotCommute) {
  const auto [p, q] = noncommutation_witness(3);
  EXPECT_NE(p * q, q * p);
  EXPECT_EQ(p.sign(), -1);
  EXPECT_EQ(q.sign(), -1);
  EXPECT_THROW(noncommutation_witness(2), NoWitness);
}

TEST(Json, OneBasedImages) {
  EXPECT_EQ(to_json(Permutation({1, 2, 0})).dump(), "[2,3,1]");
}
