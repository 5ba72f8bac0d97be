// Discrete-time game-tree search. At every instant the planner commits a set
// of pending nodes; observations made at instant t are revealed from t+1 on.
#include <array>
#include <string>
#include <unordered_map>

#include "tempnet/errors.hpp"
#include "tempnet/verify.hpp"

namespace tempnet {

namespace {

struct SimpleArc {
  NodeId tail;
  NodeId head;
  Weight weight;
  Label label;  // constraint label conjoined with both node labels
};

class GameSearch {
 public:
  GameSearch(const GeneralChytn& g, std::int64_t horizon) : net_(g.base), general_(g), horizon_(horizon) {
    n_ = net_.node_count();
    for (const auto& c : net_.constraints()) {
      if (c.heads.size() != 1) continue;
      const auto& h = c.heads.front();
      auto l = h.label.conjoin(net_.node_label(c.tail));
      if (l) l = l->conjoin(net_.node_label(h.node));
      if (l) arcs_.push_back({c.tail, h.node, h.weight, *l});
    }
    times_.assign(n_, -1);
  }

  bool solve() { return planner(0); }

 private:
  // Known literals as a label; consistent() tells whether Nature can still
  // make a label true, subsumes() whether it already is.
  bool possible(const Label& l) const { return known_.consistent_with(l); }
  bool certain(const Label& l) const { return known_.subsumes(l); }

  bool planner(std::int64_t t) {
    if (t > horizon_) return final_check();
    std::string key = memo_key(t);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    pending_.clear();
    for (NodeId v = 0; v < n_; ++v)
      if (times_[v] < 0 && possible(net_.node_label(v))) pending_.push_back(v);
    std::vector<NodeId> pending = pending_;
    bool result = choose(t, pending, 0);
    memo_.emplace(std::move(key), result);
    return result;
  }

  // Decide pending[i..] for instant t.
  bool choose(std::int64_t t, const std::vector<NodeId>& pending, std::size_t i) {
    if (i == pending.size()) return after_commit(t);
    NodeId v = pending[i];

    times_[v] = t;
    if (pairwise_ok(v) && choose(t, pending, i + 1)) {
      times_[v] = -1;
      return true;
    }
    times_[v] = -1;

    if (can_postpone(v, t) && choose(t, pending, i + 1)) return true;
    return false;
  }

  // Constraints between v (just placed) and other executed nodes.
  bool pairwise_ok(NodeId v) const {
    for (const auto& a : arcs_) {
      if (a.tail != v && a.head != v) continue;
      if (times_[a.tail] < 0 || times_[a.head] < 0) continue;
      if (!possible(a.label)) continue;
      if (times_[a.head] - times_[a.tail] > a.weight) return false;
    }
    return true;
  }

  bool can_postpone(NodeId v, std::int64_t t) const {
    if (t == horizon_) return false;  // possible(L(v)) held when v became pending
    for (const auto& a : arcs_) {
      if (a.head != v || times_[a.tail] < 0 || !possible(a.label)) continue;
      if (times_[a.tail] + a.weight < t + 1) return false;
    }
    return true;
  }

  // Bellman-Ford over the constraints that hold in every completion: executed
  // nodes pinned, certain-but-pending nodes confined to [t+1, horizon].
  bool still_feasible(std::int64_t t) const {
    const std::size_t ref = n_;
    std::vector<std::array<Weight, 3>> edges;  // from, to, w  meaning to - from <= w
    std::vector<char> used(n_, 0);
    for (NodeId v = 0; v < n_; ++v) {
      if (times_[v] >= 0) {
        used[v] = 1;
        edges.push_back({static_cast<Weight>(ref), v, times_[v]});
        edges.push_back({v, static_cast<Weight>(ref), -times_[v]});
      } else if (certain(net_.node_label(v))) {
        used[v] = 1;
        edges.push_back({static_cast<Weight>(ref), v, horizon_});
        edges.push_back({v, static_cast<Weight>(ref), -(t + 1)});
      }
    }
    for (const auto& a : arcs_)
      if (used[a.tail] && used[a.head] && certain(a.label)) edges.push_back({a.tail, a.head, a.weight});
    std::vector<Weight> dist(n_ + 1, 0);
    for (std::size_t round = 0; round <= n_ + 1; ++round) {
      bool changed = false;
      for (const auto& e : edges) {
        if (dist[e[0]] + e[2] < dist[e[1]]) {
          dist[e[1]] = dist[e[0]] + e[2];
          changed = true;
        }
      }
      if (!changed) return true;
    }
    return false;
  }

  bool after_commit(std::int64_t t) {
    if (!still_feasible(t)) return false;
    // Propositions observed at t, still unknown to the planner.
    std::vector<PropId> revealed;
    for (PropId p = 0; p < net_.proposition_count(); ++p)
      if (times_[net_.observation(p)] == t && !known_.mentions(p)) revealed.push_back(p);
    const Label saved = known_;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << revealed.size()); ++bits) {
      known_ = saved;
      for (std::size_t i = 0; i < revealed.size(); ++i) known_.add(revealed[i], (bits >> i) & 1U);
      bool ok = planner(t + 1);
      if (!ok) {
        known_ = saved;
        return false;
      }
    }
    known_ = saved;
    return true;
  }

  bool final_check() const {
    std::vector<PropId> unknown;
    for (PropId p = 0; p < net_.proposition_count(); ++p)
      if (!known_.mentions(p)) unknown.push_back(p);
    std::uint64_t base = known_.positive_mask();
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << unknown.size()); ++bits) {
      std::uint64_t truth = base;
      for (std::size_t i = 0; i < unknown.size(); ++i)
        if ((bits >> i) & 1U) truth |= std::uint64_t{1} << unknown[i];
      if (!scenario_ok(Scenario(truth, net_.proposition_count()))) return false;
    }
    return true;
  }

  bool scenario_ok(const Scenario& s) const {
    auto here = [&](NodeId v) { return holds(s, net_.node_label(v)); };
    for (NodeId v = 0; v < n_; ++v)
      if (here(v) && times_[v] < 0) return false;
    for (const auto& c : net_.constraints()) {
      if (!here(c.tail)) continue;
      bool active = false;
      bool ok = false;
      for (const auto& h : c.heads) {
        if (!holds(s, h.label) || !here(h.node)) continue;
        active = true;
        ok = ok || (times_[h.node] - h.weight <= times_[c.tail]);
      }
      if (active && !ok) return false;
    }
    for (const auto& mt : general_.multi_tail) {
      if (!here(mt.head)) continue;
      bool active = false;
      bool ok = false;
      for (const auto& tl : mt.tails) {
        if (!holds(s, tl.label) || !here(tl.node)) continue;
        active = true;
        ok = ok || (times_[mt.head] <= times_[tl.node] + tl.weight);
      }
      if (active && !ok) return false;
    }
    return true;
  }

  std::string memo_key(std::int64_t t) const {
    std::string key;
    key.reserve(n_ + 17);
    key.push_back(static_cast<char>(t));
    for (std::int64_t x : times_) key.push_back(static_cast<char>(x + 1));
    std::uint64_t masks[2] = {known_.positive_mask(), known_.negative_mask()};
    key.append(reinterpret_cast<const char*>(masks), sizeof masks);
    return key;
  }

  const Chytn& net_;
  const GeneralChytn& general_;
  std::int64_t horizon_;
  std::size_t n_ = 0;
  std::vector<SimpleArc> arcs_;
  std::vector<std::int64_t> times_;
  std::vector<NodeId> pending_;
  Label known_;
  std::unordered_map<std::string, bool> memo_;
};

}  // namespace

bool brute_force_dc(const GeneralChytn& net, std::int64_t horizon, const BruteForceLimits& limits) {
  const Chytn& base = net.base;
  if (base.proposition_count() > limits.max_propositions)
    throw ResourceError("brute-force oracle handles at most " + std::to_string(limits.max_propositions) +
                        " propositions");
  if (base.node_count() > limits.max_nodes)
    throw ResourceError("brute-force oracle handles at most " + std::to_string(limits.max_nodes) + " nodes");
  if (horizon < 0 || horizon > limits.max_horizon)
    throw ResourceError("brute-force horizon must lie in [0, " + std::to_string(limits.max_horizon) + "]");
  GameSearch search(net, horizon);
  return search.solve();
}

bool brute_force_dc(const Chytn& net, std::int64_t horizon, const BruteForceLimits& limits) {
  return brute_force_dc(GeneralChytn{net, {}}, horizon, limits);
}

}  // namespace tempnet
