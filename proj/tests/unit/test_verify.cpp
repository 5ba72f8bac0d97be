#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "tempnet/dc_checker.hpp"
#include "tempnet/generators.hpp"
#include "tempnet/io.hpp"
#include "tempnet/verify.hpp"

namespace tempnet {
namespace {

using testing::fixture_path;
using testing::read_text;

Chytn load(const std::string& name) { return require_multi_head(parse_network(read_text(fixture_path(name))).network); }

ExecutionStrategy load_strategy(const std::string& name, const Chytn& net) {
  return parse_strategy(read_text(fixture_path(name)), net);
}

std::size_t scenario_index(const ExecutionStrategy& sigma, const Chytn& net, const std::string& text) {
  for (std::size_t i = 0; i < sigma.scenario_count(); ++i)
    if (format_scenario(sigma.scenario(i), net.proposition_names()) == text) return i;
  return sigma.scenario_count();
}

TEST(Viable, ObservationStrategyOnGamma1) {
  Chytn net = load("gamma1.json");
  ExecutionStrategy sigma = load_strategy("gamma1_strategy.json", net);
  EXPECT_EQ(sigma.scenario_count(), 4U);
  EXPECT_TRUE(viable(sigma, net).ok);
  EXPECT_TRUE(viable(sigma, load("gamma0.json")).ok);
}

TEST(Viable, MovingCBreaksDeadline) {
  Chytn net = load("gamma1.json");
  ExecutionStrategy sigma = load_strategy("gamma1_strategy.json", net);
  sigma.set(scenario_index(sigma, net, "p & q"), *net.find_node("C"), Rational(11));
  ViabilityReport r = viable(sigma, net);
  ASSERT_FALSE(r.ok);
  ASSERT_FALSE(r.violations.empty());
  EXPECT_EQ(r.violations[0].scenario, scenario_index(sigma, net, "p & q"));
}

TEST(Viable, NoPropositions) {
  Chytn net = ChytnBuilder().node("a").node("b").arc("a", "b", 2).arc("b", "a", -1).build();
  ExecutionStrategy sigma = ExecutionStrategy::for_network(net);
  sigma.set(0, 0, Rational(0));
  sigma.set(0, 1, Rational(1));
  EXPECT_TRUE(viable(sigma, net).ok);
  EXPECT_TRUE(dynamic(sigma, net).ok);
}

TEST(Dynamic, ObservationStrategy) {
  Chytn net = load("gamma1.json");
  ExecutionStrategy sigma = load_strategy("gamma1_strategy.json", net);
  EXPECT_TRUE(dynamic(sigma, net).ok);
  EXPECT_TRUE(dynamic_by_history(sigma, net).ok);
}

TEST(Dynamic, PrematureBranchOnB) {
  // B differs between p & !q and p & q although it runs before Oq.
  Chytn net = load("gamma1.json");
  ExecutionStrategy sigma = load_strategy("gamma1_strategy.json", net);
  NodeId oq = *net.find_node("Oq");
  for (std::size_t i = 0; i < sigma.scenario_count(); ++i)
    if (sigma.at(i, oq)) sigma.set(i, oq, Rational(9));
  DynamicReport d = dynamic(sigma, net);
  ASSERT_FALSE(d.ok);
  ASSERT_TRUE(d.witness.has_value());
  EXPECT_EQ(d.witness->u, *net.find_node("B"));
  EXPECT_FALSE(dynamic_by_history(sigma, net).ok);
}

TEST(EpsDynamic, HalfStrategyWitnessAtThreeQuarters) {
  Chytn net = load("gamma_half.json");
  ExecutionStrategy sigma = load_strategy("gamma_half_strategy.json", net);
  EXPECT_TRUE(viable(sigma, net).ok);
  EXPECT_TRUE(eps_dynamic(sigma, net, Eps(1, 2)).ok);
  DynamicReport r = eps_dynamic(sigma, net, Eps(3, 4));
  ASSERT_FALSE(r.ok);
  EXPECT_EQ(r.witness->u, *net.find_node("Y1"));
}

TEST(EpsDynamic, JustBelowReactionMargin) {
  Chytn net = load("gamma_half.json");
  ExecutionStrategy sigma = load_strategy("gamma_half_strategy.json", net);
  ReactionMargin m = reaction_margin(sigma, net);
  ASSERT_TRUE(m.dynamic);
  ASSERT_TRUE(m.margin.has_value());
  EXPECT_EQ(*m.margin, Rational(1, 2));
  EXPECT_TRUE(eps_dynamic(sigma, net, Eps(*m.margin)).ok);
  EXPECT_TRUE(eps_dynamic(sigma, net, Eps(*m.margin - Rational(1, 1000))).ok);
  EXPECT_FALSE(eps_dynamic(sigma, net, Eps(*m.margin + Rational(1, 1000))).ok);
}

TEST(ScenarioHistory, Gamma1Histories) {
  Chytn net = load("gamma1.json");
  ExecutionStrategy sigma = load_strategy("gamma1_strategy.json", net);
  const auto& names = net.proposition_names();
  NodeId b = *net.find_node("B"), a = *net.find_node("A"), c = *net.find_node("C");
  EXPECT_EQ(format_label(scenario_history(sigma, scenario_index(sigma, net, "p & q"), b, net), names), "p & q");
  EXPECT_TRUE(scenario_history(sigma, scenario_index(sigma, net, "p & q"), a, net).empty());
  EXPECT_EQ(format_label(scenario_history(sigma, scenario_index(sigma, net, "!p & q"), c, net), names), "!p");
  EXPECT_THROW(scenario_history(sigma, scenario_index(sigma, net, "!p & q"), *net.find_node("Oq"), net), InputError);
}

// Random perturbations of the gamma1 and gamma_half strategies: both
// dynamicity checkers agree, and ε-dynamic implies dynamic.
TEST(Dynamic, CheckersAgreeOnPerturbedStrategies) {
  struct Case {
    const char* net;
    const char* strategy;
  };
  for (const Case& c : {Case{"gamma1.json", "gamma1_strategy.json"}, Case{"gamma_half.json", "gamma_half_strategy.json"}}) {
    Chytn net = load(c.net);
    ExecutionStrategy base = load_strategy(c.strategy, net);
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 400; ++trial) {
      ExecutionStrategy sigma = base;
      for (int k = 0; k < 3; ++k) {
        std::size_t s = rng() % sigma.scenario_count();
        NodeId v = static_cast<NodeId>(rng() % net.node_count());
        if (sigma.at(s, v)) sigma.set(s, v, Rational(static_cast<std::int64_t>(rng() % 13), 1 + rng() % 4));
      }
      bool by_observation = dynamic(sigma, net).ok;
      EXPECT_EQ(by_observation, dynamic_by_history(sigma, net).ok);
      for (const Eps& e : {Eps(1, 2), Eps(1, 12), Eps(1, 100)})
        if (eps_dynamic(sigma, net, e).ok) {
          EXPECT_TRUE(by_observation);
        }
      ReactionMargin m = reaction_margin(sigma, net);
      EXPECT_EQ(m.dynamic, by_observation);
      if (by_observation && m.margin) {
        EXPECT_TRUE(eps_dynamic(sigma, net, Eps(*m.margin)).ok);
      }
    }
  }
}

TEST(BruteForce, TqbfGadgetExamples) {
  EXPECT_TRUE(brute_force_dc(gen_tqbf_chytn(parse_qbf("A E", "1 -2, -1 2")), 4));
  EXPECT_FALSE(brute_force_dc(gen_tqbf_chytn(parse_qbf("A E", "2, -2")), 4));
  EXPECT_FALSE(brute_force_dc(gen_tqbf_chytn(parse_qbf("E", "1, -1")), 3));
}

TEST(BruteForce, AgreesWithCheckDcOnSatGadgets) {
  Chytn unsat = gen_sat_cstn(parse_cnf(1, "1, -1"));
  EXPECT_TRUE(brute_force_dc(unsat, 4));
  EXPECT_TRUE(check_dc(unsat).dc());
  Chytn sat = gen_sat_cstn(parse_cnf(1, "1"));
  EXPECT_FALSE(brute_force_dc(sat, 4));
  EXPECT_FALSE(check_dc(sat).dc());
}

TEST(BruteForce, CapsAreResourceErrors) {
  Chytn net = gen_gamma_n(2);  // six propositions
  EXPECT_THROW(brute_force_dc(net, 4), ResourceError);
  EXPECT_THROW(brute_force_dc(gen_sat_cstn(parse_cnf(1, "1")), 13), ResourceError);
}

}  // namespace
}  // namespace tempnet
