#include <gtest/gtest.h>

#include "oracles.hpp"
#include "tempnet/dc_checker.hpp"
#include "tempnet/generators.hpp"
#include "tempnet/io.hpp"
#include "tempnet/model.hpp"
#include "tempnet/verify.hpp"

namespace tempnet {
namespace {

std::size_t arc_count(const Chytn& net) {
  std::size_t total = 0;
  for (const auto& c : net.constraints()) total += c.heads.size();
  return total;
}

TEST(SatGadget, SingleClauseSizes) {
  Chytn net = gen_sat_cstn(parse_cnf(3, "1 2 3"));
  EXPECT_EQ(net.node_count(), 4U);
  EXPECT_EQ(arc_count(net), 15U);
  EXPECT_TRUE(net.all_one_head());
  EXPECT_TRUE(well_defined(net));
}

TEST(SatGadget, ArcCountFormula) {
  for (int n = 1; n <= 4; ++n)
    for (const auto& clauses : testing::all_clause_sets(testing::all_clauses(std::min(n, 2)), 2)) {
      Cnf phi{n, clauses};
      Chytn net = gen_sat_cstn(phi);
      std::size_t m = clauses.size();
      std::size_t literals = 0;
      for (const auto& c : clauses) literals += c.size();
      EXPECT_EQ(net.node_count(), static_cast<std::size_t>(n) + m);
      // n² simultaneity arcs, nm deadlines, one ring arc per literal.
      EXPECT_EQ(arc_count(net), static_cast<std::size_t>(n * n) + n * m + literals);
    }
  // Full-width clauses give n² + nm + 3m.
  Chytn three = gen_sat_cstn(parse_cnf(3, "1 2 3, -1 -2 -3"));
  EXPECT_EQ(arc_count(three), 9U + 6 + 6);
}

TEST(SatGadget, VerdictIsUnsatisfiability) {
  for (int n = 1; n <= 2; ++n)
    for (const auto& clauses : testing::all_clause_sets(testing::all_clauses(n), 2)) {
      Cnf phi{n, clauses};
      EXPECT_EQ(check_dc(gen_sat_cstn(phi)).dc(), !testing::truth_table_sat(n, clauses));
    }
}

TEST(SatGadget, RejectsWideClauses) { EXPECT_THROW(gen_sat_cstn(parse_cnf(4, "1 2 3 4")), InputError); }

std::size_t hypergraph_size(const GeneralChytn& g) {
  std::size_t size = 0;
  for (const auto& c : g.base.constraints()) size += c.heads.size() + 1;
  for (const auto& c : g.multi_tail) size += c.tails.size() + 1;
  return size;
}

TEST(TqbfGadget, SizesAndWellDefinedness) {
  GeneralChytn g = gen_tqbf_chytn(parse_qbf("A E", "1 -2, -1 2"));
  EXPECT_TRUE(validate_wd(g).empty());
  EXPECT_FALSE(g.multi_tail.empty());
  // One universal: nodes z, z', C1, C2, and t, l, ln per variable, p1.
  EXPECT_EQ(g.base.node_count(), 2U + 3 * 2 + 1 + 2);
  // Exact size of the construction: 12 for the universal quantifier, 4 for the
  // existential one, 4 for the z/z' pair, 18 per variable gadget and
  // 4 + (literals + 1) per clause gadget.
  EXPECT_EQ(hypergraph_size(g), 12U + 4 + 4 + 18 * 2 + (4 + 3) * 2);
  EXPECT_EQ(g.base.constraints().size() + g.multi_tail.size(), 6U + 2 + 2 + 8 * 2 + 3 * 2);
}

// The stated linear size bound for n = m = 2. The construction above
// exceeds it (size 70 against 42), so this check is expected to fail.
TEST(TqbfGadget, StatedSizeBoundForTwoVariablesTwoClauses) {
  GeneralChytn g = gen_tqbf_chytn(parse_qbf("A E", "1 -2, -1 2"));
  EXPECT_LE(g.base.node_count(), 1U + 4 * 2 + 2);
  EXPECT_LE(hypergraph_size(g), 16U * 2 + 5 * 2);
}

TEST(TqbfGadget, ExistentialOnlyMeetsNodeBound) {
  GeneralChytn g = gen_tqbf_chytn(parse_qbf("E E", "1 2, -1"));
  EXPECT_LE(g.base.node_count(), 1U + 4 * 2 + 2);
}

TEST(TqbfGadget, MatchesQbfTruthOnSmallFormulas) {
  for (const char* prefix : {"E", "A"})
    for (const auto& clauses : testing::all_clause_sets(testing::all_clauses(1), 2)) {
      Qbf phi{{prefix[0] == 'E' ? Quantifier::exists : Quantifier::forall}, clauses};
      EXPECT_EQ(brute_force_dc(gen_tqbf_chytn(phi), 3), testing::qbf_eval(phi.prefix, clauses));
    }
}

TEST(TqbfGadget, ParserErrors) {
  EXPECT_THROW(parse_qbf("E X", "1"), InputError);
  EXPECT_THROW(parse_qbf("E", "2"), InputError);
}

TEST(GammaN, StructureAndCounts) {
  for (int n = 1; n <= 3; ++n) {
    Chytn net = gen_gamma_n(n);
    EXPECT_EQ(net.node_count(), static_cast<std::size_t>(3 * n));
    EXPECT_EQ(net.proposition_count(), static_cast<std::size_t>(3 * n));
    for (NodeId v = 0; v < net.node_count(); ++v) EXPECT_TRUE(net.observed_by(v).has_value());
    EXPECT_TRUE(well_defined(net));
    // B: every node no earlier than X1, plus the labeled X1 -> Z1 arc.
    NodeId x1 = *net.find_node("X1");
    std::size_t b = 0;
    for (const auto& c : net.constraints())
      if (c.heads.size() == 1 && c.heads[0].node == x1 && c.heads[0].weight == 0 && c.heads[0].label.empty()) ++b;
    EXPECT_GE(b, static_cast<std::size_t>(3 * n - 1));
  }
  EXPECT_THROW(gen_gamma_n(0), InputError);
  EXPECT_THROW(gen_gamma_n(kGammaNMax + 1), ResourceError);
}

TEST(GammaN, OneMatchesGammaHalfLandscape) {
  Chytn net = gen_gamma_n(1);
  EXPECT_TRUE(check_eps_dc(net, Eps(1, 2)).dc());
  EXPECT_FALSE(check_eps_dc(net, Eps(1, 1)).dc());
}

TEST(GammaN, TwoLandscape) {
  Chytn net = gen_gamma_n(2);
  EXPECT_FALSE(check_eps_dc(net, Eps(1, 2)).dc());
  EXPECT_TRUE(check_eps_dc(net, Eps(1, 4)).dc());
  EXPECT_TRUE(check_dc(net).dc());
}

TEST(RandomChytn, DeterministicPerSeed) {
  RandomChytnParams p;
  p.seed = 1;
  EXPECT_EQ(emit_network(make_document(gen_random_chytn(p))), emit_network(make_document(gen_random_chytn(p))));
  RandomChytnParams q = p;
  q.seed = 2;
  EXPECT_NE(emit_network(make_document(gen_random_chytn(p))), emit_network(make_document(gen_random_chytn(q))));
}

TEST(RandomChytn, NoPropositionsIsUnlabeled) {
  RandomChytnParams p;
  p.propositions = 0;
  Chytn net = gen_random_chytn(p);
  EXPECT_EQ(net.proposition_count(), 0U);
  for (NodeId v = 0; v < net.node_count(); ++v) EXPECT_TRUE(net.node_label(v).empty());
  for (const auto& c : net.constraints())
    for (const auto& h : c.heads) EXPECT_TRUE(h.label.empty());
}

TEST(RandomChytn, AlwaysWellDefined) {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    RandomChytnParams p;
    p.seed = seed;
    p.nodes = 3 + seed % 5;
    p.propositions = seed % 4;
    p.max_heads = 1 + seed % 3;
    EXPECT_TRUE(well_defined(gen_random_chytn(p))) << "seed " << seed;
  }
}

TEST(RandomChytn, InfeasibleParametersRejected) {
  RandomChytnParams p;
  p.nodes = 1;
  p.propositions = 3;
  EXPECT_THROW(gen_random_chytn(p), InputError);
}

TEST(Oracles, LibraryTruthFunctionsAgreeWithTestOracles) {
  for (int n = 1; n <= 2; ++n)
    for (const auto& clauses : testing::all_clause_sets(testing::all_clauses(n), 2)) {
      EXPECT_EQ(cnf_satisfiable(Cnf{n, clauses}), testing::truth_table_sat(n, clauses));
      for (std::uint32_t q = 0; q < (1U << n); ++q) {
        std::vector<Quantifier> prefix;
        for (int j = 0; j < n; ++j) prefix.push_back((q >> j) & 1U ? Quantifier::forall : Quantifier::exists);
        EXPECT_EQ(qbf_true(Qbf{prefix, clauses}), testing::qbf_eval(prefix, clauses));
      }
    }
}

}  // namespace
}  // namespace tempnet
