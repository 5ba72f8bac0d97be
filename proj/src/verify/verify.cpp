#include "tempnet/verify.hpp"

#include <numeric>

#include "tempnet/errors.hpp"

namespace tempnet {

namespace {

void require_well_defined(const Chytn& net) {
  auto violations = validate_wd(net);
  if (!violations.empty())
    throw ContractError("network is not well-defined: " + violations.front().rule + ": " + violations.front().message);
}

// Times of σ laid out flat ([scenario * |V| + node]); absent nodes hold 0 and
// are never read because presence is tested against the labels.
template <typename T>
struct TimeTable {
  std::size_t nodes = 0;
  std::vector<T> times;
  const T& at(std::size_t s, NodeId v) const { return times[s * nodes + v]; }
};

// Exact integer images of the times and of ε under a common denominator, if
// one fits comfortably in 64 bits.
struct ScaledTimes {
  TimeTable<Weight> table;
  Weight eps = 0;
  Weight unit = 1;  // the common denominator
};

std::optional<ScaledTimes> scaled_table(const ExecutionStrategy& sigma, const std::optional<Eps>& eps) {
  constexpr Weight kLimit = Weight{1} << 60;
  Weight lcm = eps ? eps->denominator() : 1;
  auto fold = [&](Weight d) -> bool {
    Weight g = std::gcd(lcm, d);
    Weight out;
    if (__builtin_mul_overflow(lcm / g, d, &out) || out > kLimit) return false;
    lcm = out;
    return true;
  };
  const std::size_t n = sigma.node_count();
  for (std::size_t s = 0; s < sigma.scenario_count(); ++s)
    for (NodeId v = 0; v < n; ++v)
      if (const auto& t = sigma.at(s, v); t && !fold(t->denominator())) return std::nullopt;
  TimeTable<Weight> table{n, std::vector<Weight>(sigma.scenario_count() * n, 0)};
  auto lift = [&](const Rational& r, Weight& out) -> bool {
    return !__builtin_mul_overflow(r.numerator(), lcm / r.denominator(), &out) && out < kLimit && out > -kLimit;
  };
  for (std::size_t s = 0; s < sigma.scenario_count(); ++s)
    for (NodeId v = 0; v < n; ++v)
      if (const auto& t = sigma.at(s, v); t && !lift(*t, table.times[s * n + v])) return std::nullopt;
  Weight e = 0;
  if (eps && !lift(eps->value(), e)) return std::nullopt;
  return ScaledTimes{std::move(table), e, lcm};
}

TimeTable<Rational> rational_table(const ExecutionStrategy& sigma) {
  const std::size_t n = sigma.node_count();
  TimeTable<Rational> table{n, std::vector<Rational>(sigma.scenario_count() * n)};
  for (std::size_t s = 0; s < sigma.scenario_count(); ++s)
    for (NodeId v = 0; v < n; ++v)
      if (const auto& t = sigma.at(s, v)) table.times[s * n + v] = *t;
  return table;
}

template <typename T, typename Visit>
void for_each_pair(const Chytn& net, const ExecutionStrategy& sigma, Visit visit) {
  const auto& scenarios = sigma.scenarios();
  for (std::size_t s1 = 0; s1 < scenarios.size(); ++s1) {
    for (std::size_t s2 = 0; s2 < scenarios.size(); ++s2) {
      if (s1 == s2) continue;
      if (!visit(s1, s2, delta(scenarios[s1], scenarios[s2], net))) return;
    }
  }
}

template <typename T>
DynamicReport observation_check(const ExecutionStrategy& sigma, const Chytn& net, const TimeTable<T>& t) {
  DynamicReport report;
  const auto& scenarios = sigma.scenarios();
  for_each_pair<T>(net, sigma, [&](std::size_t s1, std::size_t s2, const std::vector<NodeId>& d) {
    for (NodeId u = 0; u < net.node_count(); ++u) {
      if (!present(net, u, scenarios[s1]) || !present(net, u, scenarios[s2])) continue;
      bool premise = true;
      for (NodeId v : d) premise = premise && (t.at(s1, u) <= t.at(s1, v));
      if (premise && t.at(s1, u) != t.at(s2, u)) {
        report = {false, DynamicWitness{s1, s2, u}};
        return false;
      }
    }
    return true;
  });
  return report;
}

template <typename T>
DynamicReport eps_check(const ExecutionStrategy& sigma, const Chytn& net, const TimeTable<T>& t, const T& eps) {
  DynamicReport report;
  const auto& scenarios = sigma.scenarios();
  for_each_pair<T>(net, sigma, [&](std::size_t s1, std::size_t s2, const std::vector<NodeId>& d) {
    for (NodeId u = 0; u < net.node_count(); ++u) {
      if (!present(net, u, scenarios[s1]) || !present(net, u, scenarios[s2])) continue;
      const T& mine = t.at(s1, u);
      bool ok = t.at(s2, u) <= mine;
      for (std::size_t i = 0; i < d.size() && !ok; ++i) ok = (t.at(s1, d[i]) + eps <= mine);
      if (!ok) {
        report = {false, DynamicWitness{s1, s2, u}};
        return false;
      }
    }
    return true;
  });
  return report;
}

// Constraint weights are multiplied by `unit` to match the table.
template <typename T>
ViabilityReport viable_check(const ExecutionStrategy& sigma, const Chytn& net, const TimeTable<T>& t, const T& unit) {
  ViabilityReport report;
  const auto& cs = net.constraints();
  for (std::size_t si = 0; si < sigma.scenario_count(); ++si) {
    const Scenario& s = sigma.scenario(si);
    for (std::size_t ci = 0; ci < cs.size(); ++ci) {
      const Constraint& c = cs[ci];
      if (!present(net, c.tail, s)) continue;
      bool active = false;
      bool ok = false;
      for (const auto& h : c.heads) {
        if (!holds(s, h.label) || !present(net, h.node, s)) continue;
        active = true;
        if (t.at(si, h.node) - T(h.weight) * unit <= t.at(si, c.tail)) ok = true;
      }
      if (active && !ok) {
        report.ok = false;
        report.violations.push_back({si, ci,
                                     "scenario '" + format_scenario(s, net.proposition_names()) + "': constraint " +
                                         std::to_string(ci) + " tailed at '" + net.node_name(c.tail) +
                                         "' is violated"});
      }
    }
  }
  return report;
}

}  // namespace

ViabilityReport viable(const ExecutionStrategy& sigma, const Chytn& net) {
  require_well_defined(net);
  check_strategy_domain(sigma, net);
  if (auto scaled = scaled_table(sigma, std::nullopt)) {
    Weight reach;
    if (!__builtin_mul_overflow(static_cast<Weight>(net.max_abs_weight()), scaled->unit, &reach) &&
        reach < (Weight{1} << 60))
      return viable_check(sigma, net, scaled->table, scaled->unit);
  }
  return viable_check(sigma, net, rational_table(sigma), Rational(1));
}

DynamicReport dynamic(const ExecutionStrategy& sigma, const Chytn& net) {
  require_well_defined(net);
  check_strategy_domain(sigma, net);
  if (auto scaled = scaled_table(sigma, std::nullopt)) return observation_check(sigma, net, scaled->table);
  return observation_check(sigma, net, rational_table(sigma));
}

DynamicReport eps_dynamic(const ExecutionStrategy& sigma, const Chytn& net, const Eps& eps) {
  require_well_defined(net);
  check_strategy_domain(sigma, net);
  if (auto scaled = scaled_table(sigma, eps)) return eps_check(sigma, net, scaled->table, scaled->eps);
  return eps_check(sigma, net, rational_table(sigma), eps.value());
}

namespace {

Label history_of(const ExecutionStrategy& sigma, std::size_t scenario, NodeId v, const Chytn& net) {
  const Scenario& s = sigma.scenario(scenario);
  const auto& tv = sigma.at(scenario, v);
  if (!tv) throw InputError("node '" + net.node_name(v) + "' is not present under the scenario");
  Label out;
  for (PropId p = 0; p < net.proposition_count(); ++p) {
    const auto& tobs = sigma.at(scenario, net.observation(p));
    if (tobs && *tobs < *tv) out.add(p, s.value(p));
  }
  return out;
}

}  // namespace

Label scenario_history(const ExecutionStrategy& sigma, std::size_t scenario, NodeId v, const Chytn& net) {
  check_strategy_domain(sigma, net);
  return history_of(sigma, scenario, v, net);
}

DynamicReport dynamic_by_history(const ExecutionStrategy& sigma, const Chytn& net) {
  require_well_defined(net);
  check_strategy_domain(sigma, net);
  const auto& scenarios = sigma.scenarios();
  for (std::size_t s1 = 0; s1 < scenarios.size(); ++s1) {
    for (NodeId u = 0; u < net.node_count(); ++u) {
      if (!sigma.at(s1, u)) continue;
      Label history = history_of(sigma, s1, u, net);
      for (std::size_t s2 = 0; s2 < scenarios.size(); ++s2) {
        if (s2 == s1 || !sigma.at(s2, u)) continue;
        if (holds(scenarios[s2], history) && *sigma.at(s1, u) != *sigma.at(s2, u))
          return {false, DynamicWitness{s1, s2, u}};
      }
    }
  }
  return {};
}

ReactionMargin reaction_margin(const ExecutionStrategy& sigma, const Chytn& net) {
  require_well_defined(net);
  check_strategy_domain(sigma, net);
  ReactionMargin out;
  out.dynamic = true;
  const auto& scenarios = sigma.scenarios();
  for (std::size_t s1 = 0; s1 < scenarios.size() && out.dynamic; ++s1) {
    for (std::size_t s2 = 0; s2 < scenarios.size() && out.dynamic; ++s2) {
      if (s1 == s2) continue;
      auto d = delta(scenarios[s1], scenarios[s2], net);
      for (NodeId u = 0; u < net.node_count(); ++u) {
        const auto& a = sigma.at(s1, u);
        const auto& b = sigma.at(s2, u);
        if (!a || !b || *a == *b) continue;
        std::optional<Rational> earliest;
        for (NodeId v : d) {
          const Rational& tv = *sigma.at(s1, v);
          if (tv < *a && (!earliest || tv < *earliest)) earliest = tv;
        }
        if (!earliest) {
          out.dynamic = false;
          out.margin.reset();
          break;
        }
        if (*a < *b) {
          Rational gap = *a - *earliest;
          if (!out.margin || gap < *out.margin) out.margin = gap;
        }
      }
    }
  }
  return out;
}

}  // namespace tempnet
