#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace quandle;
using namespace quandle::test;

namespace {

PermGroup s3() { return symmetric_group(3); }

} // namespace

TEST(CheckGeneration, Examples) {
  auto trivial = make_seed(symmetric_group(1), Permutation::identity(1));
  EXPECT_TRUE(check_generation(trivial));

  auto c4 = generate_group({cyc(4, {{0, 1, 2, 3}})}, 4);
  EXPECT_FALSE(check_generation(make_seed(c4, Permutation::identity(4))));

  auto seed = make_seed(s3(), cyc(3, {{1, 2}}));
  EXPECT_EQ(seed.h.order(), 2u);
  EXPECT_TRUE(check_generation(seed));
  // The conjugates are the three transpositions.
  std::set<std::vector<int>> conj;
  for (const auto& p : conjugate_generators(seed))
    conj.insert(p.to_vector());
  EXPECT_EQ(conj, (std::set<std::vector<int>>{{0, 2, 1}, {2, 1, 0}, {1, 0, 2}}));
}

TEST(MakeSeed, RejectsBadInput) {
  auto c2 = generate_group({cyc(3, {{0, 1}})}, 3);
  EXPECT_THROW(make_seed(c2, Permutation::identity(3)), InvalidSeed);
  EXPECT_THROW(make_seed(s3(), cyc(3, {{0, 1}})), InvalidSeed);
  // In A4 the stabilizer of 0 is cyclic of order 3; all of it is central.
  EXPECT_NO_THROW(make_seed(alternating_group(4), cyc(4, {{1, 2, 3}})));
  // In S4, Stab(0) ≅ S3 has trivial center.
  EXPECT_THROW(make_seed(symmetric_group(4), cyc(4, {{1, 2}})), InvalidSeed);
}

TEST(CosetQuandle, Examples) {
  EXPECT_EQ(coset_quandle(make_seed(symmetric_group(1), Permutation::identity(1))),
            trivial_quandle(1));
  auto q = coset_quandle(make_seed(s3(), cyc(3, {{1, 2}})));
  EXPECT_EQ(canonical_form(q), canonical_form(tait_quandle()));
  EXPECT_THROW(coset_quandle(make_seed(s3(), Permutation::identity(3))),
               GenerationFailure);
}

TEST(Realize, Examples) {
  auto one = realize(trivial_quandle(1));
  EXPECT_EQ(one.g.order(), 1u);
  EXPECT_TRUE(one.z.is_identity());

  auto t = realize(tait_quandle());
  EXPECT_EQ(t.g.order(), 6u);
  EXPECT_EQ(t.h.order(), 2u);
  EXPECT_EQ(t.z, cyc(3, {{1, 2}}));
  EXPECT_TRUE(t.reps[0].is_identity());

  EXPECT_THROW(realize(trivial_quandle(2)), NotConnected);
}

TEST(EnumerateConnected, SmallOrders) {
  EXPECT_EQ(enumerate_connected(1).size(), 1u);
  EXPECT_EQ(enumerate_connected(2).size(), 0u);
  auto three = enumerate_connected(3);
  ASSERT_EQ(three.size(), 1u);
  EXPECT_EQ(three[0].quandle, canonical_form(tait_quandle()));
  EXPECT_EQ(three[0].inner_order, 6u);
}

TEST(EnumerateConnected, BoundsChecked) {
  EXPECT_THROW(enumerate_connected(7), BoundExceeded);
  EXPECT_THROW(enumerate_connected(0), BoundExceeded);
}

TEST(EnumerateConnected, MatchesOracleCounts) {
  for (int n = 1; n <= 6; ++n) {
    auto entries = enumerate_connected(n);
    EXPECT_EQ(entries.size(), count_connected(census(n))) << "order " << n;
    std::set<Quandle> structure, brute;
    for (const auto& e : entries)
      structure.insert(e.quandle);
    for (std::size_t i = 0; i < census(n).size(); ++i)
      if (census(n).connected[i])
        brute.insert(census(n).tables[i]);
    EXPECT_EQ(structure, brute);
  }
}

// Properties.

TEST(EnumerateProperties, RoundTripOverCensus) {
  for (int n = 1; n <= 6; ++n)
    for (const auto& q : census(n).tables) {
      if (!is_connected(q))
        continue;
      auto seed = realize(q);
      for (const auto& h : seed.h.elements())
        EXPECT_TRUE(commute(seed.z, h));
      EXPECT_TRUE(find_isomorphism(coset_quandle(seed), q).has_value());
    }
}

TEST(EnumerateProperties, RepresentativeChoiceIsIrrelevant) {
  // Replace g_j by h·g_j for every h in H, one slot at a time.
  for (int n = 3; n <= 6; ++n)
    for (const auto& q : census(n).tables) {
      if (!is_connected(q))
        continue;
      auto seed = realize(q);
      auto base = coset_quandle(seed);
      for (int j = 0; j < n; ++j)
        for (const auto& h : seed.h.elements()) {
          auto alt = seed;
          alt.reps[j] = compose(h, seed.reps[j]);
          EXPECT_EQ(alt.reps[j](0), j);
          EXPECT_EQ(coset_quandle(alt), base);
        }
    }
}

TEST(EnumerateProperties, InnerGroupOfConstructionIsG) {
  for (int n = 1; n <= 6; ++n)
    for (const auto& e : enumerate_connected(n)) {
      EXPECT_EQ(e.inner_order % n, 0u);
      EXPECT_EQ(e.inner_order, e.seed.g.order());
      EXPECT_EQ(inner_group(coset_quandle(e.seed)), e.seed.g);
      EXPECT_TRUE(is_connected(e.quandle));
      EXPECT_EQ(canonical_form(e.quandle), e.quandle);
    }
}

TEST(EnumerateProperties, FiltersAreConservative) {
  for (int n = 1; n <= 6; ++n) {
    auto with = enumerate_connected(n);
    auto without = enumerate_connected(n, {.pruning_filters = false});
    ASSERT_EQ(with.size(), without.size());
    for (std::size_t i = 0; i < with.size(); ++i)
      EXPECT_EQ(with[i].quandle, without[i].quandle);
  }
}

TEST(EnumerateProperties, PrimeOrderAgreement) {
  for (int p : {2, 3, 5}) {
    std::set<Quandle> criterion;
    for (const auto& q : census(p).tables)
      if (inner_group(q).order() % p == 0)
        criterion.insert(q);
    std::set<Quandle> structure;
    for (const auto& e : enumerate_connected(p))
      structure.insert(e.quandle);
    EXPECT_EQ(structure, criterion);
  }
}

TEST(EnumerateProperties, ParallelMatchesSequential) {
  auto seq = enumerate_connected(6, {.threads = 1});
  auto par = enumerate_connected(6, {.threads = 4});
  ASSERT_EQ(seq.size(), par.size());
  for (std::size_t i = 0; i < seq.size(); ++i)
    EXPECT_EQ(seq[i].quandle, par[i].quandle);
}

TEST(PruningExclusion, Examples) {
  EXPECT_STREQ(pruning_exclusion(generate_group({cyc(3, {{0, 1, 2}})}, 3)),
               "abelian");
  EXPECT_EQ(pruning_exclusion(s3()), nullptr);
  EXPECT_STREQ(pruning_exclusion(symmetric_group(4)), "symmetric");
  EXPECT_EQ(pruning_exclusion(alternating_group(4)), nullptr);
  EXPECT_STREQ(pruning_exclusion(alternating_group(5)), "alternating");
}
