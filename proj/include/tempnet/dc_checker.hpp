// ε-dynamic consistency by reduction to a multi-head HyTN over the expansion.
#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tempnet/hytn_solver.hpp"
#include "tempnet/model.hpp"
#include "tempnet/network.hpp"
#include "tempnet/rational.hpp"

namespace tempnet {

struct ExpandedNode {
  NodeId base;
  std::uint32_t scenario;  // index into the enumeration order
};

template <typename W>
struct ExpandedHytn {
  BasicHytn<W> graph;
  std::vector<Scenario> scenarios;
  std::vector<ExpandedNode> origin;   // by expanded id
  std::vector<std::int64_t> id_table; // scenario * |V| + base -> expanded id, or -1
  std::size_t base_node_count = 0;
  std::size_t expansion_hyperarcs = 0;  // hyperarcs [0, k) are restriction copies; the rest are α

  std::optional<NodeId> id(std::size_t scenario, NodeId base) const {
    std::int64_t v = id_table[scenario * base_node_count + base];
    if (v < 0) return std::nullopt;
    return static_cast<NodeId>(v);
  }
  std::size_t alpha_count() const { return graph.hyperarc_count() - expansion_hyperarcs; }
};

struct DcOptions {
  HytnOptions solver;
  // Refuse to build H_ε(Γ) with more head entries than this.
  std::size_t max_head_entries = 80'000'000;
};

// Disjoint union of restriction(Γ, s) over Σ_P, in scenario-major order.
ExpandedHytn<Weight> expand(const Chytn& net, const DcOptions& options = {});
// H_ε(Γ) with exact rational weights.
ExpandedHytn<Rational> construct_h(const Chytn& net, const Eps& eps, const DcOptions& options = {});
// H_ε(Γ) with every weight multiplied by D: w -> w·D and -ε -> -N.
ExpandedHytn<Weight> construct_h_scaled(const Chytn& net, const Eps& eps, const DcOptions& options = {});

// |V^Ex| ≤ |Σ_P|·|V| and every α has at most 1+|P| heads; InvariantError otherwise.
template <typename W>
void audit_size_bounds(const ExpandedHytn<W>& h, const Chytn& net);

struct DcSizes {
  std::size_t scenarios = 0;
  std::size_t nodes = 0;
  std::size_t hyperarcs = 0;
  std::size_t alpha_hyperarcs = 0;
  std::size_t head_entries = 0;
};

// Negative cycle of the scaled H_ε(Γ), materialized so it re-checks on its own.
struct DcRefutation {
  NegativeCycleCert cycle;        // ids of construct_h_scaled(Γ, ε)
  std::vector<ExpandedNode> nodes;
  Hytn subnetwork;                // the cycle's nodes and hyperarcs, names "v@{scenario}"
  NegativeCycleCert local;        // the same cycle over `subnetwork`
  Weight scale = 1;               // D
};

struct DcVerdict {
  Eps eps{1, 1};
  std::variant<ExecutionStrategy, DcRefutation> result;
  DcSizes sizes;
  HytnStats solver_stats;

  bool dc() const { return std::holds_alternative<ExecutionStrategy>(result); }
  const ExecutionStrategy& strategy() const { return std::get<ExecutionStrategy>(result); }
  const DcRefutation& refutation() const { return std::get<DcRefutation>(result); }
};

DcVerdict check_eps_dc(const Chytn& net, const Eps& eps, const DcOptions& options = {});
// ε = 1/(|Σ_P|·|V|).
Eps dc_epsilon(const Chytn& net);
DcVerdict check_dc(const Chytn& net, const DcOptions& options = {});

enum class BracketStatus { not_dc, bracketed, unbounded, partial };

struct EpsBracket {
  BracketStatus status = BracketStatus::partial;
  std::optional<Eps> lo;  // largest tested ε with a YES verdict
  std::optional<Eps> hi;  // smallest tested ε with a NO verdict
  std::size_t checks = 0;
  std::vector<std::pair<Eps, bool>> probes;  // in the order performed
};

struct BracketOptions {
  DcOptions dc;
  std::size_t max_checks = 64;
  // Upward probing stops at this ε; past it the bracket is reported partial.
  std::int64_t max_probe = 1 << 20;
};

EpsBracket eps_hat_bounds(const Chytn& net, std::int64_t max_denominator, const BracketOptions& options = {});

// Fractional parts replaced by rank/(|Σ_P|·|V|), integer parts kept.
Schedule normalize_schedule(const Schedule& phi, const Chytn& net);

// φ(v_s) = [σ(s)]_v over the ids of h.
template <typename W>
Schedule strategy_to_expanded(const ExecutionStrategy& sigma, const ExpandedHytn<W>& h);

std::string expanded_name(const ExpandedNode& node, const Chytn& net, const std::vector<Scenario>& scenarios);

}  // namespace tempnet
