// Multi-head HyTN consistency by monotone lifting, with checkable
// certificates in both directions.
#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tempnet/errors.hpp"
#include "tempnet/network.hpp"

namespace tempnet {

using IntSchedule = std::vector<Weight>;
using Schedule = std::vector<Rational>;

// (S, C): nodes[i] is tailed by hyperarc arcs[i]; nodes sorted ascending.
struct NegativeCycleCert {
  std::vector<NodeId> nodes;
  std::vector<std::size_t> arcs;
};

struct HytnStats {
  std::size_t lifts = 0;
  std::size_t cycle_searches = 0;
  Weight bound = 0;
};

struct HytnVerdict {
  std::variant<IntSchedule, NegativeCycleCert> result;
  HytnStats stats;

  bool consistent() const { return std::holds_alternative<IntSchedule>(result); }
  const IntSchedule& schedule() const { return std::get<IntSchedule>(result); }
  const NegativeCycleCert& cycle() const { return std::get<NegativeCycleCert>(result); }
};

struct HytnOptions {
  // Cycle search runs after every `search_interval` lifts (0 means |V|).
  std::size_t search_interval = 0;
};

// Returns the least nonnegative feasible schedule, or a negative cycle.
HytnVerdict check_hytn(const Hytn& h, const HytnOptions& options = {});

struct SatisfactionReport {
  std::vector<bool> per_hyperarc;
  bool all = true;
  std::optional<std::size_t> first_violation;
};

// s(t) >= min_h s(h) - w(h), evaluated exactly.
template <typename W, typename T>
SatisfactionReport satisfies(const BasicHytn<W>& h, const std::vector<T>& s) {
  if (s.size() != h.node_count())
    throw InputError("schedule covers " + std::to_string(s.size()) + " nodes, network has " +
                     std::to_string(h.node_count()));
  SatisfactionReport report;
  report.per_hyperarc.resize(h.hyperarc_count(), true);
  for (std::size_t a = 0; a < h.hyperarc_count(); ++a) {
    const T& tail_time = s[h.tail(a)];
    bool ok = false;
    for (std::size_t k = h.head_begin(a); k < h.head_end(a) && !ok; ++k)
      ok = (s[h.head_at(k)] - T(h.weight_at(k)) <= tail_time);
    if (!ok) {
      report.per_hyperarc[a] = false;
      report.all = false;
      if (!report.first_violation) report.first_violation = a;
    }
  }
  return report;
}

// w^p_A = max over heads v of w(v) + p(t) − p(v).
Weight reduced_slack(const Hytn& h, const IntSchedule& p, std::size_t arc);

enum class CycleCheck { negative, not_negative, malformed };

struct CycleCheckResult {
  CycleCheck status;
  std::string message;
  bool ok() const { return status == CycleCheck::negative; }
};

// Structural check of (S, C) followed by "every cycle of the induced digraph is
// negative", decided exactly: all cycles have weight <= -1 iff the digraph
// scaled to |S|·w + 1 has no positive cycle (max cycle mean below zero).
CycleCheckResult verify_negative_cycle(const Hytn& h, const NegativeCycleCert& cert);

}  // namespace tempnet
