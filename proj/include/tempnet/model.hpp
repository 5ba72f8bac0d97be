// Well-definedness, scenarios, restriction and difference sets.
#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "tempnet/label.hpp"
#include "tempnet/network.hpp"

namespace tempnet {

inline constexpr std::size_t kDefaultScenarioCap = 20;

// Reads TEMPNET_SCENARIO_CAP (clamped to kMaxPropositions), else the default.
std::size_t scenario_cap();

struct WdViolation {
  std::string rule;        // "WD1'", "WD2", "WD3'"
  std::string constraint;  // human-readable locator, e.g. "constraint 3 head 'C'"
  std::string proposition; // empty when not applicable
  std::string message;
};

std::vector<WdViolation> validate_wd(const Chytn& net);
// Also checks the multi-tail constraints with the same label rules.
std::vector<WdViolation> validate_wd(const GeneralChytn& net);

inline bool well_defined(const Chytn& net) { return validate_wd(net).empty(); }

// All 2^|P| scenarios in lexicographic order; throws ResourceError past cap.
std::vector<Scenario> enumerate_scenarios(std::size_t prop_count, std::size_t cap);
std::vector<Scenario> enumerate_scenarios(std::size_t prop_count);

// Restriction Γ⁺_s with compact node ids; base[i] is the Γ node of local i.
struct Restriction {
  Hytn network;
  std::vector<NodeId> base;
  std::vector<std::optional<NodeId>> local;  // by Γ node
  std::vector<std::size_t> source;           // Γ constraint index per hyperarc
};

// Requires a well-defined network (ContractError otherwise).
Restriction restriction(const Chytn& net, const Scenario& s);
// Skips the well-definedness check; callers that validated once use this.
Restriction restriction_unchecked(const Chytn& net, const Scenario& s);
// One-head view of a restriction; InputError if some hyperarc has two heads.
Stn restriction_stn(const Chytn& net, const Scenario& s);

// Node is present under s.
inline bool present(const Chytn& net, NodeId v, const Scenario& s) {
  return holds(s, net.node_label(v));
}

// Δ(s1;s2): observation nodes present under s1 whose proposition differs.
std::vector<NodeId> delta(const Scenario& s1, const Scenario& s2, const Chytn& net);

// One schedule per scenario, defined exactly on the nodes present under it.
// Scenarios are all of Σ_P in enumeration order.
class ExecutionStrategy {
 public:
  ExecutionStrategy() = default;
  ExecutionStrategy(std::vector<Scenario> scenarios, std::size_t node_count)
      : scenarios_(std::move(scenarios)), node_count_(node_count), times_(scenarios_.size() * node_count) {}

  // Empty strategy shaped for net: every scenario, no times yet.
  static ExecutionStrategy for_network(const Chytn& net);

  std::size_t scenario_count() const { return scenarios_.size(); }
  std::size_t node_count() const { return node_count_; }
  const Scenario& scenario(std::size_t i) const { return scenarios_[i]; }
  const std::vector<Scenario>& scenarios() const { return scenarios_; }

  const std::optional<Rational>& at(std::size_t scenario, NodeId v) const {
    return times_[scenario * node_count_ + v];
  }
  void set(std::size_t scenario, NodeId v, std::optional<Rational> t) {
    times_[scenario * node_count_ + v] = std::move(t);
  }

  friend bool operator==(const ExecutionStrategy&, const ExecutionStrategy&) = default;

 private:
  std::vector<Scenario> scenarios_;
  std::size_t node_count_ = 0;
  std::vector<std::optional<Rational>> times_;
};

// Throws InputError unless σ covers Σ_P and each σ(s) is defined exactly on V⁺_s.
void check_strategy_domain(const ExecutionStrategy& sigma, const Chytn& net);

}  // namespace tempnet
