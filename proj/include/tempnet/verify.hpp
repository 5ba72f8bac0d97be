// Solver-free checkers for execution strategies, plus a discrete-time
// game-tree oracle for tiny instances.
#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "tempnet/model.hpp"
#include "tempnet/network.hpp"
#include "tempnet/rational.hpp"

namespace tempnet {

struct StrategyViolation {
  std::size_t scenario;
  std::size_t constraint;  // index into Γ's constraint list
  std::string message;
};

struct ViabilityReport {
  bool ok = true;
  std::vector<StrategyViolation> violations;
};

ViabilityReport viable(const ExecutionStrategy& sigma, const Chytn& net);

struct DynamicWitness {
  std::size_t s1;
  std::size_t s2;
  NodeId u;
};

struct DynamicReport {
  bool ok = true;
  std::optional<DynamicWitness> witness;
};

// Implication form: if u is no later than every Δ(s1;s2) event under s1, then
// u is executed at the same time under s1 and s2.
DynamicReport dynamic(const ExecutionStrategy& sigma, const Chytn& net);
// History form: Con(scHst(u, s1, σ), s2) ⇒ [σ(s1)]_u = [σ(s2)]_u.
DynamicReport dynamic_by_history(const ExecutionStrategy& sigma, const Chytn& net);
// [σ(s1)]_u ≥ min({[σ(s2)]_u} ∪ {[σ(s1)]_v + ε : v ∈ Δ(s1;s2)}).
DynamicReport eps_dynamic(const ExecutionStrategy& sigma, const Chytn& net, const Eps& eps);

// Literals of the observations present under s that happen strictly before v.
Label scenario_history(const ExecutionStrategy& sigma, std::size_t scenario, NodeId v, const Chytn& net);

struct ReactionMargin {
  bool dynamic = false;
  // Largest ε accepted by every H_ε constraint; nullopt when none binds.
  std::optional<Rational> margin;
};

// min over (s1,s2,u) with [σ(s1)]_u ≠ [σ(s2)]_u of max_{v∈Δ} [σ(s1)]_u − [σ(s1)]_v.
ReactionMargin reaction_margin(const ExecutionStrategy& sigma, const Chytn& net);

struct BruteForceLimits {
  std::size_t max_propositions = 4;
  std::size_t max_nodes = 12;
  std::int64_t max_horizon = 12;
};

// Does a viable dynamic strategy with integer times in [0, horizon] exist?
bool brute_force_dc(const GeneralChytn& net, std::int64_t horizon, const BruteForceLimits& limits = {});
bool brute_force_dc(const Chytn& net, std::int64_t horizon, const BruteForceLimits& limits = {});

}  // namespace tempnet
