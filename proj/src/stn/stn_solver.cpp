#include "tempnet/stn_solver.hpp"

#include <algorithm>
#include <limits>

#include "tempnet/errors.hpp"

namespace tempnet {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

}  // namespace

StnVerdict check_stn(const Stn& g) {
  const std::size_t n = g.node_count();
  const auto& arcs = g.arcs();
  // Virtual source with 0-weight arcs to every node: start every distance at 0.
  std::vector<Weight> dist(n, 0);
  std::vector<std::size_t> pred(n, kNone);

  std::vector<NodeId> changed;
  for (std::size_t round = 0; round <= n; ++round) {
    changed.clear();
    for (std::size_t i = 0; i < arcs.size(); ++i) {
      const Arc& a = arcs[i];
      Weight candidate = checked_add(dist[a.tail], a.weight);
      if (candidate < dist[a.head]) {
        dist[a.head] = candidate;
        pred[a.head] = i;
        changed.push_back(a.head);
      }
    }
    if (changed.empty()) return {dist};
  }

  // Still relaxing after n rounds: some predecessor chain closes a negative cycle.
  NodeId start = *std::min_element(changed.begin(), changed.end());
  NodeId v = start;
  for (std::size_t i = 0; i < n; ++i) {
    if (pred[v] == kNone) throw InvariantError("Bellman-Ford predecessor walk left the graph");
    v = arcs[pred[v]].tail;
  }

  StnCycle cycle;
  NodeId cur = v;
  do {
    const Arc& a = arcs[pred[cur]];
    cycle.arcs.push_back(a);
    cycle.total = checked_add(cycle.total, a.weight);
    cur = a.tail;
  } while (cur != v);
  std::reverse(cycle.arcs.begin(), cycle.arcs.end());
  // Rotate so the cycle starts at its smallest node.
  auto first = std::min_element(cycle.arcs.begin(), cycle.arcs.end(),
                                [](const Arc& a, const Arc& b) { return a.tail < b.tail; });
  std::rotate(cycle.arcs.begin(), first, cycle.arcs.end());
  return {cycle};
}

bool verify_stn_cycle(const Stn& g, const StnCycle& cycle) {
  if (cycle.arcs.empty()) return false;
  Weight total = 0;
  for (std::size_t i = 0; i < cycle.arcs.size(); ++i) {
    const Arc& a = cycle.arcs[i];
    const Arc& next = cycle.arcs[(i + 1) % cycle.arcs.size()];
    if (a.head != next.tail) return false;
    bool found = std::any_of(g.arcs().begin(), g.arcs().end(), [&](const Arc& b) {
      return b.tail == a.tail && b.head == a.head && b.weight == a.weight;
    });
    if (!found) return false;
    total += a.weight;
  }
  return total < 0 && total == cycle.total;
}

bool verify_stn_potential(const Stn& g, const StnPotential& p) {
  if (p.size() != g.node_count()) return false;
  return std::all_of(g.arcs().begin(), g.arcs().end(),
                     [&](const Arc& a) { return a.weight + p[a.tail] - p[a.head] >= 0; });
}

}  // namespace tempnet
