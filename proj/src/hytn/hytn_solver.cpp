#include "tempnet/hytn_solver.hpp"

#include <algorithm>
#include <deque>
#include <limits>

namespace tempnet {

namespace {

constexpr std::size_t kUnlifted = std::numeric_limits<std::size_t>::max();

// For every node, the head slots (global indices into the head arrays) that
// name it.
struct HeadIncidence {
  std::vector<std::size_t> offsets;
  std::vector<std::size_t> slots;
  std::vector<std::uint32_t> arc_of_slot;

  explicit HeadIncidence(const Hytn& h) {
    const std::size_t n = h.node_count();
    const std::size_t k = h.head_entry_count();
    offsets.assign(n + 1, 0);
    arc_of_slot.resize(k);
    for (std::size_t a = 0; a < h.hyperarc_count(); ++a) {
      for (std::size_t s = h.head_begin(a); s < h.head_end(a); ++s) {
        arc_of_slot[s] = static_cast<std::uint32_t>(a);
        ++offsets[h.head_at(s) + 1];
      }
    }
    for (std::size_t v = 0; v < n; ++v) offsets[v + 1] += offsets[v];
    slots.resize(k);
    std::vector<std::size_t> fill(offsets.begin(), offsets.end() - 1);
    for (std::size_t s = 0; s < k; ++s) slots[fill[h.head_at(s)]++] = s;
  }
};

// Lifted nodes whose last-lift hyperarcs never lead back to an unlifted node
// form a negative cycle; return the closure of the smallest such node.
std::optional<NegativeCycleCert> find_closed_lift_set(const Hytn& h, const std::vector<std::size_t>& lifted_by) {
  const std::size_t n = h.node_count();
  std::vector<std::size_t> rev_offsets(n + 1, 0);
  for (NodeId v = 0; v < n; ++v) {
    if (lifted_by[v] == kUnlifted) continue;
    for (NodeId x : h.heads(lifted_by[v])) ++rev_offsets[x + 1];
  }
  for (std::size_t i = 0; i < n; ++i) rev_offsets[i + 1] += rev_offsets[i];
  std::vector<NodeId> rev(rev_offsets[n]);
  std::vector<std::size_t> fill(rev_offsets.begin(), rev_offsets.end() - 1);
  for (NodeId v = 0; v < n; ++v) {
    if (lifted_by[v] == kUnlifted) continue;
    for (NodeId x : h.heads(lifted_by[v])) rev[fill[x]++] = v;
  }

  std::vector<char> grounded(n, 0);
  std::vector<NodeId> stack;
  for (NodeId v = 0; v < n; ++v) {
    if (lifted_by[v] == kUnlifted) {
      grounded[v] = 1;
      stack.push_back(v);
    }
  }
  while (!stack.empty()) {
    NodeId x = stack.back();
    stack.pop_back();
    for (std::size_t i = rev_offsets[x]; i < rev_offsets[x + 1]; ++i) {
      NodeId v = rev[i];
      if (!grounded[v]) {
        grounded[v] = 1;
        stack.push_back(v);
      }
    }
  }

  NodeId root = 0;
  while (root < n && grounded[root]) ++root;
  if (root == n) return std::nullopt;

  std::vector<char> in_set(n, 0);
  in_set[root] = 1;
  stack.assign(1, root);
  while (!stack.empty()) {
    NodeId x = stack.back();
    stack.pop_back();
    for (NodeId y : h.heads(lifted_by[x])) {
      if (!in_set[y]) {
        in_set[y] = 1;
        stack.push_back(y);
      }
    }
  }
  NegativeCycleCert cert;
  for (NodeId v = 0; v < n; ++v) {
    if (!in_set[v]) continue;
    cert.nodes.push_back(v);
    cert.arcs.push_back(lifted_by[v]);
  }
  return cert;
}

}  // namespace

HytnVerdict check_hytn(const Hytn& h, const HytnOptions& options) {
  const std::size_t n = h.node_count();
  const std::size_t m = h.hyperarc_count();
  HytnVerdict verdict;

  // Finite least energies never exceed the sum, over nodes, of the largest
  // negated weight leaving them.
  Weight bound = 0;
  {
    std::vector<Weight> worst(n, 0);
    for (std::size_t a = 0; a < m; ++a)
      for (Weight w : h.weights(a)) worst[h.tail(a)] = std::max(worst[h.tail(a)], checked_mul(w, -1));
    for (Weight w : worst) bound = checked_add(bound, w);
  }
  verdict.stats.bound = bound;

  HeadIncidence inc(h);
  IntSchedule f(n, 0);
  std::vector<std::size_t> lifted_by(n, kUnlifted);
  std::vector<Weight> value(m);
  auto recompute = [&](std::size_t a) {
    Weight best = std::numeric_limits<Weight>::max();
    for (std::size_t s = h.head_begin(a); s < h.head_end(a); ++s)
      best = std::min(best, checked_add(f[h.head_at(s)], -h.weight_at(s)));
    value[a] = best;
  };

  std::deque<std::size_t> queue;
  std::vector<char> queued(m, 0);
  for (std::size_t a = 0; a < m; ++a) {
    recompute(a);
    if (value[a] > f[h.tail(a)]) {
      queue.push_back(a);
      queued[a] = 1;
    }
  }

  const std::size_t interval = options.search_interval != 0 ? options.search_interval : std::max<std::size_t>(n, 1);
  std::size_t next_search = interval;
  bool crossed_bound = false;

  while (!queue.empty()) {
    std::size_t a = queue.front();
    queue.pop_front();
    queued[a] = 0;
    NodeId t = h.tail(a);
    if (value[a] <= f[t]) continue;

    Weight old = f[t];
    f[t] = value[a];
    lifted_by[t] = a;
    ++verdict.stats.lifts;
    // The first lift past the bound proves inconsistency; look for the
    // certificate right away, then fall back to the regular cadence.
    bool search_now = verdict.stats.lifts >= next_search;
    if (!crossed_bound && f[t] > bound) crossed_bound = search_now = true;

    for (std::size_t i = inc.offsets[t]; i < inc.offsets[t + 1]; ++i) {
      std::size_t slot = inc.slots[i];
      std::size_t b = inc.arc_of_slot[slot];
      // Only a head that attained the minimum can raise it.
      if (old - h.weight_at(slot) != value[b]) continue;
      recompute(b);
      if (!queued[b] && value[b] > f[h.tail(b)]) {
        queue.push_back(b);
        queued[b] = 1;
      }
    }

    if (search_now) {
      ++verdict.stats.cycle_searches;
      if (auto cert = find_closed_lift_set(h, lifted_by)) {
        verdict.result = std::move(*cert);
        return verdict;
      }
      next_search = verdict.stats.lifts + interval;
    }
  }
  verdict.result = std::move(f);
  for (Weight v : std::get<IntSchedule>(verdict.result))
    if (v > bound) throw InvariantError("lifting reached a fixpoint above the energy bound");
  return verdict;
}

Weight reduced_slack(const Hytn& h, const IntSchedule& p, std::size_t arc) {
  if (p.size() != h.node_count()) throw InputError("potential does not cover the network");
  Weight best = std::numeric_limits<Weight>::min();
  NodeId t = h.tail(arc);
  for (std::size_t s = h.head_begin(arc); s < h.head_end(arc); ++s)
    best = std::max(best, h.weight_at(s) + p[t] - p[h.head_at(s)]);
  return best;
}

CycleCheckResult verify_negative_cycle(const Hytn& h, const NegativeCycleCert& cert) {
  using R = CycleCheckResult;
  if (cert.nodes.empty()) return {CycleCheck::malformed, "empty node set"};
  if (cert.nodes.size() != cert.arcs.size()) return {CycleCheck::malformed, "node and hyperarc lists differ in length"};
  const std::size_t n = h.node_count();
  std::vector<std::int64_t> local(n, -1);
  for (std::size_t i = 0; i < cert.nodes.size(); ++i) {
    NodeId v = cert.nodes[i];
    if (v >= n) return {CycleCheck::malformed, "node out of range"};
    if (local[v] >= 0) return {CycleCheck::malformed, "node " + h.name(v) + " listed twice"};
    local[v] = static_cast<std::int64_t>(i);
  }
  for (std::size_t i = 0; i < cert.nodes.size(); ++i) {
    std::size_t a = cert.arcs[i];
    if (a >= h.hyperarc_count()) return {CycleCheck::malformed, "hyperarc out of range"};
    if (h.tail(a) != cert.nodes[i])
      return {CycleCheck::malformed, "hyperarc " + std::to_string(a) + " is not tailed at " + h.name(cert.nodes[i])};
    for (NodeId x : h.heads(a))
      if (local[x] < 0) return {CycleCheck::malformed, "head " + h.name(x) + " lies outside S"};
  }
  // Every node of S is a tail, and every head lies in S, so S is exactly the
  // union of the supports.

  // Longest-path relaxation on weights L·w + 1: a cycle with Σw >= 0 scores at
  // least its length (> 0), a cycle with Σw <= -1 scores at most 0.
  const std::size_t k = cert.nodes.size();
  const Weight scale = static_cast<Weight>(k);
  struct Edge {
    std::size_t from, to;
    Weight w;
  };
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < k; ++i) {
    std::size_t a = cert.arcs[i];
    for (std::size_t s = h.head_begin(a); s < h.head_end(a); ++s)
      edges.push_back({i, static_cast<std::size_t>(local[h.head_at(s)]), checked_add(checked_mul(scale, h.weight_at(s)), 1)});
  }
  std::vector<Weight> best(k, 0);
  for (std::size_t round = 0; round <= k; ++round) {
    bool changed = false;
    for (const Edge& e : edges) {
      Weight cand = checked_add(best[e.from], e.w);
      if (cand > best[e.to]) {
        best[e.to] = cand;
        changed = true;
      }
    }
    if (!changed) return R{CycleCheck::negative, ""};
  }
  return {CycleCheck::not_negative, "the induced digraph has a cycle of nonnegative weight"};
}

}  // namespace tempnet
