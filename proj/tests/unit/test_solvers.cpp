#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "tempnet/generators.hpp"
#include "tempnet/hytn_solver.hpp"
#include "tempnet/stn_solver.hpp"

namespace tempnet {
namespace {

Stn stn_of(std::vector<std::string> names, std::initializer_list<std::tuple<int, int, Weight>> arcs) {
  Stn g(std::move(names));
  for (const auto& [t, h, w] : arcs) g.add_arc(t, h, w);
  return g;
}

TEST(CheckStn, NeitherPropositionRestrictionHasFeasiblePotential) {
  // A, B, C, Op.
  Stn g = stn_of({"A", "B", "C", "Op"}, {{0, 2, 10}, {2, 0, -10}, {1, 0, 0}, {0, 3, 5}, {3, 0, 0}, {3, 2, 10}});
  StnVerdict v = check_stn(g);
  ASSERT_TRUE(v.consistent());
  EXPECT_TRUE(verify_stn_potential(g, v.potential()));
  // The schedule A=0, B=0, C=10, Op=0 is feasible too.
  EXPECT_TRUE(verify_stn_potential(g, {0, 0, 10, 0}));
}

TEST(CheckStn, ForcedNegativeLoop) {
  Stn g = stn_of({"u", "v"}, {{0, 1, 1}, {1, 0, -2}});
  StnVerdict v = check_stn(g);
  ASSERT_FALSE(v.consistent());
  EXPECT_EQ(v.cycle().total, -1);
  EXPECT_TRUE(verify_stn_cycle(g, v.cycle()));
}

TEST(CheckStn, TrivialNetworks) {
  Stn single({"v"});
  StnVerdict v = check_stn(single);
  ASSERT_TRUE(v.consistent());
  EXPECT_EQ(v.potential(), (StnPotential{0}));
  EXPECT_TRUE(check_stn(Stn()).consistent());
}

TEST(CheckStn, CycleVerifierRejectsWrongTotalsAndBrokenChains) {
  Stn g = stn_of({"u", "v", "x"}, {{0, 1, 1}, {1, 0, -2}, {1, 2, 0}});
  StnCycle c = check_stn(g).cycle();
  StnCycle wrong = c;
  wrong.total += 1;
  EXPECT_FALSE(verify_stn_cycle(g, wrong));
  StnCycle broken{{{0, 1, 1}, {1, 2, 0}}, 1};
  EXPECT_FALSE(verify_stn_cycle(g, broken));
}

TEST(CheckStn, AgreesWithBruteForce) {
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    std::mt19937_64 rng(seed);
    RandomStnParams p{seed, 2 + rng() % 5, 1 + rng() % 9, 3};
    Stn g = gen_random_stn(p);
    StnVerdict v = check_stn(g);
    ASSERT_EQ(v.consistent(), testing::brute_force_consistent(g)) << "seed " << seed;
    if (v.consistent())
      EXPECT_TRUE(verify_stn_potential(g, v.potential()));
    else
      EXPECT_TRUE(verify_stn_cycle(g, v.cycle()));
  }
}

Hytn min_head_instance() {
  // x3 >= min(x1, x2).
  Hytn h(std::vector<std::string>{"x1", "x2", "x3"});
  std::vector<HeadWeight<Weight>> heads = {{0, 0}, {1, 0}};
  h.add_hyperarc(2, heads);
  return h;
}

TEST(Satisfies, MinOverHeadsSchedules) {
  Hytn h = min_head_instance();
  EXPECT_TRUE(satisfies(h, IntSchedule{0, 2, 2}).all);
  EXPECT_TRUE(satisfies(h, IntSchedule{-2, 0, 2}).all);
  auto bad = satisfies(h, IntSchedule{1, 1, 0});
  EXPECT_FALSE(bad.all);
  EXPECT_FALSE(bad.per_hyperarc[0]);
  EXPECT_TRUE(satisfies(Hytn(std::vector<std::string>{"v"}), IntSchedule{5}).all);
  EXPECT_THROW(satisfies(h, IntSchedule{0, 0}), InputError);
}

TEST(ReducedSlack, MinOverHeadsArithmetic) {
  Hytn h = min_head_instance();
  EXPECT_EQ(reduced_slack(h, {0, 0, 0}, 0), 0);
  EXPECT_EQ(reduced_slack(h, {0, 2, 2}, 0), 2);
  EXPECT_EQ(reduced_slack(h, {1, 1, 0}, 0), -1);
}

TEST(CheckHytn, MinOverHeadsInstanceIsConsistent) {
  Hytn h = min_head_instance();
  HytnVerdict v = check_hytn(h);
  ASSERT_TRUE(v.consistent());
  EXPECT_TRUE(satisfies(h, v.schedule()).all);
}

TEST(CheckHytn, TwoNodeNegativeLoop) {
  Hytn h(std::vector<std::string>{"u", "v"});
  h.add_arc(0, 1, -1);
  h.add_arc(1, 0, -1);
  HytnVerdict v = check_hytn(h);
  ASSERT_FALSE(v.consistent());
  EXPECT_EQ(v.cycle().nodes, (std::vector<NodeId>{0, 1}));
  EXPECT_TRUE(verify_negative_cycle(h, v.cycle()).ok());
}

TEST(VerifyNegativeCycle, ZeroCycleIsNotNegative) {
  Hytn h(std::vector<std::string>{"u", "v"});
  h.add_arc(0, 1, 0);
  h.add_arc(1, 0, 0);
  EXPECT_EQ(verify_negative_cycle(h, {{0, 1}, {0, 1}}).status, CycleCheck::not_negative);
}

TEST(VerifyNegativeCycle, MalformedStructure) {
  Hytn h(std::vector<std::string>{"u", "v", "x"});
  h.add_arc(0, 1, -1);
  h.add_arc(1, 2, -1);
  // Head x is in the support but has no hyperarc in C.
  EXPECT_EQ(verify_negative_cycle(h, {{0, 1}, {0, 1}}).status, CycleCheck::malformed);
  // Hyperarc 1 is not tailed at u.
  EXPECT_EQ(verify_negative_cycle(h, {{0}, {1}}).status, CycleCheck::malformed);
}

// Seven nodes shaped like the multi-head cycle picture: a ring of two-head
// hyperarcs whose heads all carry weight -1.
TEST(VerifyNegativeCycle, SevenNodeFixtureAllNegative) {
  Hytn h(7);
  for (NodeId v = 0; v < 7; ++v) {
    std::vector<HeadWeight<Weight>> heads = {{(v + 1) % 7, -1}, {(v + 3) % 7, -1}};
    h.add_hyperarc(v, heads);
  }
  NegativeCycleCert cert{{0, 1, 2, 3, 4, 5, 6}, {0, 1, 2, 3, 4, 5, 6}};
  EXPECT_TRUE(verify_negative_cycle(h, cert).ok());
  HytnVerdict v = check_hytn(h);
  ASSERT_FALSE(v.consistent());
  EXPECT_TRUE(verify_negative_cycle(h, v.cycle()).ok());
  // Raising one head weight to +6 closes a cycle of weight 0 through it.
  Hytn zero(7);
  for (NodeId x = 0; x < 7; ++x) {
    std::vector<HeadWeight<Weight>> heads = {{(x + 1) % 7, x == 0 ? Weight(6) : Weight(-1)}, {(x + 3) % 7, -1}};
    zero.add_hyperarc(x, heads);
  }
  EXPECT_EQ(verify_negative_cycle(zero, cert).status, CycleCheck::not_negative);
}

TEST(CheckHytn, OneHeadInstancesMatchStnSolver) {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    Stn g = gen_random_stn({seed, 5, 8, 3});
    EXPECT_EQ(check_hytn(to_hytn(g)).consistent(), check_stn(g).consistent()) << "seed " << seed;
  }
}

TEST(CheckHytn, AgreesWithBruteForceAndCertificatesCheck) {
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    std::mt19937_64 rng(seed * 7919);
    RandomHytnParams p{seed, 2 + rng() % 3, 1 + rng() % 6, 1 + rng() % 3, 1 + static_cast<Weight>(rng() % 2)};
    p.max_heads = std::min(p.max_heads, p.nodes);
    Hytn h = gen_random_hytn(p);
    HytnVerdict v = check_hytn(h);
    ASSERT_EQ(v.consistent(), testing::brute_force_consistent(h)) << "seed " << seed;
    if (v.consistent()) {
      EXPECT_TRUE(satisfies(h, v.schedule()).all);
      for (std::size_t a = 0; a < h.hyperarc_count(); ++a) EXPECT_GE(reduced_slack(h, v.schedule(), a), 0);
      Weight bound = testing::total_abs_weight(testing::oracle_arcs(h));
      for (Weight x : v.schedule()) {
        EXPECT_GE(x, -bound);
        EXPECT_LE(x, bound);
      }
    } else {
      EXPECT_TRUE(verify_negative_cycle(h, v.cycle()).ok());
    }
  }
}

}  // namespace
}  // namespace tempnet
