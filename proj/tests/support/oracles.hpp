// Independent oracles for the test suites. Nothing here calls the solvers:
// each decides its question by exhaustive enumeration.
#pragma once

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "tempnet/generators.hpp"
#include "tempnet/network.hpp"

namespace tempnet::testing {

inline std::string fixture_path(const std::string& name) { return std::string(TEMPNET_FIXTURE_DIR) + "/" + name; }

inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// A hyperarc in oracle form: tail >= min over heads of s(head) - w.
struct OracleArc {
  NodeId tail;
  std::vector<std::pair<NodeId, Weight>> heads;
};

inline std::vector<OracleArc> oracle_arcs(const Hytn& h) {
  std::vector<OracleArc> out;
  for (std::size_t a = 0; a < h.hyperarc_count(); ++a) {
    OracleArc arc{h.tail(a), {}};
    for (std::size_t k = h.head_begin(a); k < h.head_end(a); ++k) arc.heads.emplace_back(h.head_at(k), h.weight_at(k));
    out.push_back(std::move(arc));
  }
  return out;
}

inline std::vector<OracleArc> oracle_arcs(const Stn& g) {
  std::vector<OracleArc> out;
  for (const Arc& a : g.arcs()) out.push_back({a.tail, {{a.head, a.weight}}});
  return out;
}

// Exhaustive search over integer schedules in [-bound, bound]^n, node by node,
// pruning as soon as a hyperarc over assigned nodes is violated. Nodes are
// processed one weakly connected component at a time; components share no
// constraint, so the search stays exhaustive.
inline bool integer_schedule_exists(std::size_t node_count, const std::vector<OracleArc>& arcs, Weight bound) {
  std::vector<std::size_t> parent(node_count);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  for (const auto& a : arcs)
    for (const auto& [h, w] : a.heads) parent[find(a.tail)] = find(h);

  std::vector<std::vector<NodeId>> components(node_count);
  for (NodeId v = 0; v < node_count; ++v) components[find(v)].push_back(v);

  for (const auto& comp : components) {
    if (comp.empty()) continue;
    std::vector<std::size_t> position(node_count, static_cast<std::size_t>(-1));
    for (std::size_t i = 0; i < comp.size(); ++i) position[comp[i]] = i;
    // Each arc is checked once its last node (in component order) is set.
    std::vector<std::vector<const OracleArc*>> due(comp.size());
    for (const auto& a : arcs) {
      if (position[a.tail] == static_cast<std::size_t>(-1)) continue;
      std::size_t last = position[a.tail];
      for (const auto& [h, w] : a.heads) last = std::max(last, position[h]);
      due[last].push_back(&a);
    }
    std::vector<Weight> s(node_count, 0);
    std::function<bool(std::size_t)> assign = [&](std::size_t i) {
      if (i == comp.size()) return true;
      for (Weight t = -bound; t <= bound; ++t) {
        s[comp[i]] = t;
        bool ok = true;
        for (const OracleArc* a : due[i]) {
          bool any = false;
          for (const auto& [h, w] : a->heads) any = any || (s[h] - w <= s[a->tail]);
          if (!any) {
            ok = false;
            break;
          }
        }
        if (ok && assign(i + 1)) return true;
      }
      return false;
    };
    if (!assign(0)) return false;
  }
  return true;
}

inline Weight total_abs_weight(const std::vector<OracleArc>& arcs) {
  Weight t = 0;
  for (const auto& a : arcs)
    for (const auto& [h, w] : a.heads) t += std::llabs(w);
  return t;
}

inline bool brute_force_consistent(const Hytn& h) {
  auto arcs = oracle_arcs(h);
  return integer_schedule_exists(h.node_count(), arcs, total_abs_weight(arcs));
}

inline bool brute_force_consistent(const Stn& g) {
  auto arcs = oracle_arcs(g);
  return integer_schedule_exists(g.node_count(), arcs, total_abs_weight(arcs));
}

// Truth-table satisfiability.
inline bool truth_table_sat(int variables, const std::vector<Clause>& clauses) {
  for (std::uint32_t bits = 0; bits < (1U << variables); ++bits) {
    bool all = true;
    for (const auto& c : clauses) {
      bool any = false;
      for (int lit : c) {
        bool value = (bits >> (std::abs(lit) - 1)) & 1U;
        any = any || (lit > 0 ? value : !value);
      }
      all = all && any;
    }
    if (all) return true;
  }
  return false;
}

// Prenex QBF truth by recursive expansion of the prefix.
inline bool qbf_eval(const std::vector<Quantifier>& prefix, const std::vector<Clause>& matrix) {
  std::vector<bool> value(prefix.size() + 1, false);
  std::function<bool(std::size_t)> go = [&](std::size_t j) {
    if (j == prefix.size()) {
      for (const auto& c : matrix) {
        bool any = false;
        for (int lit : c) any = any || (lit > 0 ? value[lit] : !value[-lit]);
        if (!any) return false;
      }
      return true;
    }
    value[j + 1] = false;
    bool f = go(j + 1);
    value[j + 1] = true;
    bool t = go(j + 1);
    return prefix[j] == Quantifier::exists ? (f || t) : (f && t);
  };
  return go(0);
}

// Every clause over distinct variables 1..n with 1..3 literals.
inline std::vector<Clause> all_clauses(int n) {
  std::vector<Clause> out;
  for (std::uint32_t vars = 1; vars < (1U << n); ++vars) {
    std::vector<int> chosen;
    for (int k = 0; k < n; ++k)
      if ((vars >> k) & 1U) chosen.push_back(k + 1);
    if (chosen.size() > 3) continue;
    for (std::uint32_t signs = 0; signs < (1U << chosen.size()); ++signs) {
      Clause c;
      for (std::size_t i = 0; i < chosen.size(); ++i) c.push_back((signs >> i) & 1U ? -chosen[i] : chosen[i]);
      out.push_back(c);
    }
  }
  return out;
}

// All sets of 1..max_clauses distinct clauses drawn from the pool.
inline std::vector<std::vector<Clause>> all_clause_sets(const std::vector<Clause>& pool, std::size_t max_clauses) {
  std::vector<std::vector<Clause>> out;
  std::vector<Clause> current;
  std::function<void(std::size_t)> go = [&](std::size_t start) {
    if (!current.empty()) out.push_back(current);
    if (current.size() == max_clauses) return;
    for (std::size_t i = start; i < pool.size(); ++i) {
      current.push_back(pool[i]);
      go(i + 1);
      current.pop_back();
    }
  };
  go(0);
  return out;
}

}  // namespace tempnet::testing
