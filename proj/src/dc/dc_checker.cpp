#include "tempnet/dc_checker.hpp"

#include <algorithm>
#include <map>

#include "tempnet/errors.hpp"

namespace tempnet {

namespace {

struct PairShape {
  std::vector<NodeId> delta;
  std::size_t common = 0;
};

template <typename W, typename MapWeight>
ExpandedHytn<W> build_expansion(const Chytn& net, const DcOptions& options, bool with_alpha, MapWeight map_weight,
                                const W& minus_eps) {
  ExpandedHytn<W> out;
  out.scenarios = enumerate_scenarios(net.proposition_count());
  const std::size_t n = net.node_count();
  const std::size_t scenario_count = out.scenarios.size();
  out.base_node_count = n;
  out.id_table.assign(scenario_count * n, -1);

  std::vector<std::string> names;
  for (std::size_t si = 0; si < scenario_count; ++si) {
    for (NodeId v = 0; v < n; ++v) {
      if (!present(net, v, out.scenarios[si])) continue;
      out.id_table[si * n + v] = static_cast<std::int64_t>(out.origin.size());
      out.origin.push_back({v, static_cast<std::uint32_t>(si)});
      names.push_back(expanded_name(out.origin.back(), net, out.scenarios));
    }
  }

  // Count before allocating so oversized instances fail fast.
  std::size_t arcs = 0;
  std::size_t entries = 0;
  const auto& cs = net.constraints();
  for (std::size_t si = 0; si < scenario_count; ++si) {
    const Scenario& s = out.scenarios[si];
    for (const auto& c : cs) {
      if (!present(net, c.tail, s)) continue;
      std::size_t k = 0;
      for (const auto& h : c.heads) k += (holds(s, h.label) && present(net, h.node, s)) ? 1 : 0;
      if (k > 0) {
        ++arcs;
        entries += k;
      }
    }
  }
  if (with_alpha) {
    for (std::size_t s1 = 0; s1 < scenario_count; ++s1) {
      for (std::size_t s2 = 0; s2 < scenario_count; ++s2) {
        if (s1 == s2) continue;
        std::vector<NodeId> d = delta(out.scenarios[s1], out.scenarios[s2], net);
        for (NodeId u = 0; u < n; ++u) {
          if (out.id_table[s1 * n + u] < 0 || out.id_table[s2 * n + u] < 0) continue;
          ++arcs;
          entries += 1 + d.size() - (std::binary_search(d.begin(), d.end(), u) ? 1 : 0);
        }
        if (entries > options.max_head_entries) break;
      }
      if (entries > options.max_head_entries) break;
    }
  }
  if (entries > options.max_head_entries)
    throw ResourceError("H_eps would need more than " + std::to_string(options.max_head_entries) +
                        " head entries (" + std::to_string(scenario_count) + " scenarios)");

  out.graph = BasicHytn<W>(std::move(names));
  out.graph.reserve(arcs, entries);
  std::vector<HeadWeight<W>> heads;
  for (std::size_t si = 0; si < scenario_count; ++si) {
    const Scenario& s = out.scenarios[si];
    for (const auto& c : cs) {
      auto tail = out.id(si, c.tail);
      if (!tail) continue;
      heads.clear();
      for (const auto& h : c.heads) {
        if (!holds(s, h.label)) continue;
        if (auto hid = out.id(si, h.node)) heads.push_back({*hid, map_weight(h.weight)});
      }
      if (!heads.empty()) out.graph.add_hyperarc(*tail, heads);
    }
  }
  out.expansion_hyperarcs = out.graph.hyperarc_count();

  if (with_alpha) {
    const W zero = map_weight(0);
    for (std::size_t s1 = 0; s1 < scenario_count; ++s1) {
      for (std::size_t s2 = 0; s2 < scenario_count; ++s2) {
        if (s1 == s2) continue;
        std::vector<NodeId> d = delta(out.scenarios[s1], out.scenarios[s2], net);
        for (NodeId u = 0; u < n; ++u) {
          auto tail = out.id(s1, u);
          auto other = out.id(s2, u);
          if (!tail || !other) continue;
          heads.clear();
          heads.push_back({*other, zero});
          // u_{s1} as its own −ε head can never hold; it is left out.
          for (NodeId v : d)
            if (v != u) heads.push_back({*out.id(s1, v), minus_eps});
          out.graph.add_hyperarc(*tail, heads);
        }
      }
    }
  }
  audit_size_bounds(out, net);
  return out;
}

void require_well_defined(const Chytn& net) {
  auto violations = validate_wd(net);
  if (!violations.empty())
    throw ContractError("network is not well-defined: " + violations.front().rule + " at " +
                        violations.front().constraint + ": " + violations.front().message);
}

}  // namespace

std::string expanded_name(const ExpandedNode& node, const Chytn& net, const std::vector<Scenario>& scenarios) {
  return net.node_name(node.base) + "@{" + format_scenario(scenarios[node.scenario], net.proposition_names()) + "}";
}

template <typename W>
void audit_size_bounds(const ExpandedHytn<W>& h, const Chytn& net) {
  const std::size_t limit_nodes = h.scenarios.size() * net.node_count();
  if (h.graph.node_count() > limit_nodes)
    throw InvariantError("H_eps has " + std::to_string(h.graph.node_count()) + " nodes, above |Sigma_P|*|V| = " +
                         std::to_string(limit_nodes));
  const std::size_t limit_heads = 1 + net.proposition_count();
  for (std::size_t a = h.expansion_hyperarcs; a < h.graph.hyperarc_count(); ++a) {
    if (h.graph.heads(a).size() > limit_heads)
      throw InvariantError("H_eps hyperarc " + std::to_string(a) + " has " + std::to_string(h.graph.heads(a).size()) +
                           " heads, above 1+|P| = " + std::to_string(limit_heads));
  }
}

template void audit_size_bounds<Weight>(const ExpandedHytn<Weight>&, const Chytn&);
template void audit_size_bounds<Rational>(const ExpandedHytn<Rational>&, const Chytn&);

ExpandedHytn<Weight> expand(const Chytn& net, const DcOptions& options) {
  require_well_defined(net);
  return build_expansion<Weight>(net, options, false, [](Weight w) { return w; }, Weight{0});
}

ExpandedHytn<Rational> construct_h(const Chytn& net, const Eps& eps, const DcOptions& options) {
  require_well_defined(net);
  return build_expansion<Rational>(net, options, true, [](Weight w) { return Rational(w); }, -eps.value());
}

ExpandedHytn<Weight> construct_h_scaled(const Chytn& net, const Eps& eps, const DcOptions& options) {
  require_well_defined(net);
  const Weight den = eps.denominator();
  return build_expansion<Weight>(net, options, true, [den](Weight w) { return checked_mul(w, den); },
                                 -eps.numerator());
}

Eps dc_epsilon(const Chytn& net) {
  const std::size_t props = net.proposition_count();
  if (props > scenario_cap()) enumerate_scenarios(props);  // raises the cap error
  std::int64_t k = static_cast<std::int64_t>((std::uint64_t{1} << props) * std::max<std::size_t>(net.node_count(), 1));
  return Eps(1, k);
}

DcVerdict check_eps_dc(const Chytn& net, const Eps& eps, const DcOptions& options) {
  ExpandedHytn<Weight> h = construct_h_scaled(net, eps, options);
  DcVerdict verdict;
  verdict.eps = eps;
  verdict.sizes = {h.scenarios.size(), h.graph.node_count(), h.graph.hyperarc_count(), h.alpha_count(),
                   h.graph.head_entry_count()};

  HytnVerdict solved = check_hytn(h.graph, options.solver);
  verdict.solver_stats = solved.stats;
  const Weight scale = eps.denominator();

  if (solved.consistent()) {
    ExecutionStrategy sigma(h.scenarios, net.node_count());
    const IntSchedule& f = solved.schedule();
    for (NodeId x = 0; x < h.graph.node_count(); ++x)
      sigma.set(h.origin[x].scenario, h.origin[x].base, Rational(f[x], scale));
    verdict.result = std::move(sigma);
    return verdict;
  }

  DcRefutation ref;
  ref.cycle = solved.cycle();
  ref.scale = scale;
  std::map<NodeId, NodeId> local;
  std::vector<std::string> names;
  for (NodeId x : ref.cycle.nodes) {
    local.emplace(x, static_cast<NodeId>(names.size()));
    names.push_back(h.graph.name(x));
    ref.nodes.push_back(h.origin[x]);
  }
  ref.subnetwork = Hytn(std::move(names));
  std::vector<HeadWeight<Weight>> heads;
  for (std::size_t i = 0; i < ref.cycle.nodes.size(); ++i) {
    std::size_t a = ref.cycle.arcs[i];
    heads.clear();
    for (std::size_t s = h.graph.head_begin(a); s < h.graph.head_end(a); ++s)
      heads.push_back({local.at(h.graph.head_at(s)), h.graph.weight_at(s)});
    ref.local.nodes.push_back(static_cast<NodeId>(i));
    ref.local.arcs.push_back(ref.subnetwork.add_hyperarc(static_cast<NodeId>(i), heads));
  }
  verdict.result = std::move(ref);
  return verdict;
}

DcVerdict check_dc(const Chytn& net, const DcOptions& options) { return check_eps_dc(net, dc_epsilon(net), options); }

namespace {

// True if some α hyperarc carries a −ε head, i.e. ε can matter at all.
bool has_reaction_constraint(const Chytn& net) {
  auto scenarios = enumerate_scenarios(net.proposition_count());
  for (std::size_t s1 = 0; s1 < scenarios.size(); ++s1) {
    for (std::size_t s2 = 0; s2 < scenarios.size(); ++s2) {
      if (s1 == s2) continue;
      auto d = delta(scenarios[s1], scenarios[s2], net);
      if (d.empty()) continue;
      for (NodeId u = 0; u < net.node_count(); ++u) {
        if (!present(net, u, scenarios[s1]) || !present(net, u, scenarios[s2])) continue;
        if (d.size() > 1 || d.front() != u) return true;
      }
    }
  }
  return false;
}

}  // namespace

EpsBracket eps_hat_bounds(const Chytn& net, std::int64_t max_denominator, const BracketOptions& options) {
  if (max_denominator < 1) throw InputError("max denominator must be positive");
  require_well_defined(net);
  EpsBracket out;
  const Eps floor_eps = dc_epsilon(net);

  auto probe = [&](const Eps& e) -> std::optional<bool> {
    if (out.checks >= options.max_checks) return std::nullopt;
    ++out.checks;
    bool yes = check_eps_dc(net, e, options.dc).dc();
    out.probes.emplace_back(e, yes);
    return yes;
  };
  auto record = [&](const Eps& e, bool yes) {
    if (yes) {
      if (!out.lo || *out.lo < e) out.lo = e;
    } else {
      if (!out.hi || e < *out.hi) out.hi = e;
    }
  };

  if (!has_reaction_constraint(net)) {
    auto yes = probe(floor_eps);
    if (!yes) return out;
    out.status = *yes ? BracketStatus::unbounded : BracketStatus::not_dc;
    if (*yes) out.lo = floor_eps;
    return out;
  }

  // Powers of two: find 2^k YES with 2^(k+1) NO.
  auto first = probe(Eps(1, 1));
  if (!first) return out;
  record(Eps(1, 1), *first);
  if (*first) {
    for (std::int64_t e = 2; e <= options.max_probe; e *= 2) {
      auto yes = probe(Eps(e, 1));
      if (!yes) return out;
      record(Eps(e, 1), *yes);
      if (!*yes) break;
    }
    if (!out.hi) return out;  // partial: every probe up to the cap was YES
  } else {
    for (std::int64_t d = 2; d <= max_denominator; d *= 2) {
      Eps e(1, d);
      if (!(floor_eps < e)) break;
      auto yes = probe(e);
      if (!yes) return out;
      record(e, *yes);
      if (*yes) break;
    }
    if (!out.lo) {
      // Every dyadic probe failed; the floor itself decides DC.
      auto yes = probe(floor_eps);
      if (!yes) return out;
      if (!*yes) {
        out.status = BracketStatus::not_dc;
        return out;
      }
      record(floor_eps, true);
    }
  }

  // Bisection on the grid of denominators up to max_denominator.
  while (true) {
    Rational mid = (out.lo->value() + out.hi->value()) / 2;
    if (mid.denominator() > max_denominator) break;
    auto yes = probe(Eps(mid));
    if (!yes) return out;
    record(Eps(mid), *yes);
  }
  if (*out.lo < floor_eps) throw InvariantError("bracket fell below the reaction-time floor");
  out.status = BracketStatus::bracketed;
  return out;
}

Schedule normalize_schedule(const Schedule& phi, const Chytn& net) {
  const std::int64_t k = dc_epsilon(net).denominator();
  std::vector<Rational> fractions;
  fractions.reserve(phi.size());
  for (const Rational& x : phi) fractions.push_back(x - floor_of(x));
  std::vector<Rational> distinct = fractions;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  if (static_cast<std::int64_t>(distinct.size()) > k)
    throw InputError("schedule has more distinct fractional parts than |Sigma_P|*|V|");
  Schedule out;
  out.reserve(phi.size());
  for (std::size_t i = 0; i < phi.size(); ++i) {
    auto rank = std::lower_bound(distinct.begin(), distinct.end(), fractions[i]) - distinct.begin();
    out.push_back(floor_of(phi[i]) + Rational(static_cast<std::int64_t>(rank), k));
  }
  return out;
}

template <typename W>
Schedule strategy_to_expanded(const ExecutionStrategy& sigma, const ExpandedHytn<W>& h) {
  Schedule out;
  out.reserve(h.origin.size());
  for (const ExpandedNode& x : h.origin) {
    const auto& t = sigma.at(x.scenario, x.base);
    if (!t) throw InputError("strategy misses an expanded node");
    out.push_back(*t);
  }
  return out;
}

template Schedule strategy_to_expanded<Weight>(const ExecutionStrategy&, const ExpandedHytn<Weight>&);
template Schedule strategy_to_expanded<Rational>(const ExecutionStrategy&, const ExpandedHytn<Rational>&);

}  // namespace tempnet
