#include "tempnet/model.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include "tempnet/errors.hpp"

namespace tempnet {

std::size_t scenario_cap() {
  const char* env = std::getenv("TEMPNET_SCENARIO_CAP");
  if (env == nullptr || *env == '\0') return kDefaultScenarioCap;
  char* end = nullptr;
  long v = std::strtol(env, &end, 10);
  if (end == env || *end != '\0' || v < 0)
    throw InputError("TEMPNET_SCENARIO_CAP must be a nonnegative integer");
  return std::min<std::size_t>(static_cast<std::size_t>(v), kMaxPropositions);
}

namespace {

std::string locate(const Chytn& net, std::size_t index, const Constraint& c, const LabeledEnd& h) {
  return "constraint " + std::to_string(index) + " ('" + net.node_name(c.tail) + "' -> '" +
         net.node_name(h.node) + "')";
}

void check_end_label(const Chytn& net, const Label& label, NodeId a, NodeId b, const std::string& where,
                     std::vector<WdViolation>& out) {
  const auto& props = net.proposition_names();
  for (NodeId v : {a, b}) {
    if (!label.subsumes(net.node_label(v))) {
      out.push_back({"WD1'", where, "",
                     "label '" + format_label(label, props) + "' does not subsume L(" + net.node_name(v) +
                         ") = '" + format_label(net.node_label(v), props) + "'"});
    }
  }
  for (PropId p = 0; p < net.proposition_count(); ++p) {
    if (!label.mentions(p)) continue;
    NodeId obs = net.observation(p);
    if (!label.subsumes(net.node_label(obs))) {
      out.push_back({"WD3'", where, props[p],
                     "label '" + format_label(label, props) + "' does not subsume L(" + net.node_name(obs) +
                         ") = '" + format_label(net.node_label(obs), props) + "'"});
    }
  }
}

void check_node_labels(const Chytn& net, std::vector<WdViolation>& out) {
  const auto& props = net.proposition_names();
  for (NodeId u = 0; u < net.node_count(); ++u) {
    const Label& lu = net.node_label(u);
    for (PropId p = 0; p < net.proposition_count(); ++p) {
      if (!lu.mentions(p)) continue;
      NodeId obs = net.observation(p);
      std::string where = "node '" + net.node_name(u) + "'";
      if (!lu.subsumes(net.node_label(obs))) {
        out.push_back({"WD2", where, props[p],
                       "L(" + net.node_name(u) + ") does not subsume L(" + net.node_name(obs) + ")"});
      }
      bool witnessed = false;
      for (const auto& c : net.constraints()) {
        if (c.tail != u || c.heads.size() != 1) continue;
        const auto& h = c.heads.front();
        if (h.node == obs && h.weight < 0 && h.label == lu) {
          witnessed = true;
          break;
        }
      }
      if (!witnessed) {
        out.push_back({"WD2", where, props[p],
                       "missing constraint <" + net.node_name(obs) + " - " + net.node_name(u) + " <= w, '" +
                           format_label(lu, props) + "'> with w <= -1"});
      }
    }
  }
}

}  // namespace

std::vector<WdViolation> validate_wd(const Chytn& net) {
  std::vector<WdViolation> out;
  const auto& cs = net.constraints();
  for (std::size_t i = 0; i < cs.size(); ++i)
    for (const auto& h : cs[i].heads) check_end_label(net, h.label, cs[i].tail, h.node, locate(net, i, cs[i], h), out);
  check_node_labels(net, out);
  return out;
}

std::vector<WdViolation> validate_wd(const GeneralChytn& g) {
  std::vector<WdViolation> out = validate_wd(g.base);
  for (std::size_t i = 0; i < g.multi_tail.size(); ++i) {
    const auto& mt = g.multi_tail[i];
    for (const auto& t : mt.tails) {
      std::string where = "multi-tail constraint " + std::to_string(i) + " ('" + g.base.node_name(t.node) +
                          "' -> '" + g.base.node_name(mt.head) + "')";
      check_end_label(g.base, t.label, t.node, mt.head, where, out);
    }
  }
  return out;
}

std::vector<Scenario> enumerate_scenarios(std::size_t prop_count, std::size_t cap) {
  if (prop_count > cap)
    throw ResourceError("scenario cap exceeded: " + std::to_string(prop_count) + " propositions > cap " +
                        std::to_string(cap) + " (set TEMPNET_SCENARIO_CAP to raise it)");
  std::uint64_t total = std::uint64_t{1} << prop_count;
  std::vector<Scenario> out;
  out.reserve(total);
  for (std::uint64_t k = 0; k < total; ++k) out.push_back(Scenario::from_index(k, prop_count));
  return out;
}

std::vector<Scenario> enumerate_scenarios(std::size_t prop_count) {
  return enumerate_scenarios(prop_count, scenario_cap());
}

Restriction restriction_unchecked(const Chytn& net, const Scenario& s) {
  if (s.size() != net.proposition_count())
    throw InputError("scenario size does not match the network's propositions");
  Restriction r;
  r.local.assign(net.node_count(), std::nullopt);
  std::vector<std::string> names;
  for (NodeId v = 0; v < net.node_count(); ++v) {
    if (!present(net, v, s)) continue;
    r.local[v] = static_cast<NodeId>(r.base.size());
    r.base.push_back(v);
    names.push_back(net.node_name(v));
  }
  r.network = Hytn(std::move(names));
  std::vector<HeadWeight<Weight>> heads;
  const auto& cs = net.constraints();
  for (std::size_t i = 0; i < cs.size(); ++i) {
    const auto& c = cs[i];
    if (!r.local[c.tail]) continue;
    heads.clear();
    for (const auto& h : c.heads) {
      if (!holds(s, h.label) || !r.local[h.node]) continue;
      heads.push_back({*r.local[h.node], h.weight});
    }
    if (heads.empty()) continue;
    r.network.add_hyperarc(*r.local[c.tail], heads);
    r.source.push_back(i);
  }
  return r;
}

Restriction restriction(const Chytn& net, const Scenario& s) {
  auto violations = validate_wd(net);
  if (!violations.empty())
    throw ContractError("restriction requires a well-defined network (" + violations.front().rule + ": " +
                        violations.front().message + ")");
  return restriction_unchecked(net, s);
}

Stn restriction_stn(const Chytn& net, const Scenario& s) {
  Restriction r = restriction(net, s);
  Stn out(r.network.names());
  for (std::size_t a = 0; a < r.network.hyperarc_count(); ++a) {
    auto hs = r.network.heads(a);
    if (hs.size() != 1) throw InputError("restriction has a multi-head hyperarc; it is not an STN");
    out.add_arc(r.network.tail(a), hs[0], r.network.weights(a)[0]);
  }
  return out;
}

std::vector<NodeId> delta(const Scenario& s1, const Scenario& s2, const Chytn& net) {
  std::vector<NodeId> out;
  std::uint64_t differ = s1.truth_mask() ^ s2.truth_mask();
  for (PropId p = 0; p < net.proposition_count(); ++p) {
    if (!((differ >> p) & 1U)) continue;
    NodeId obs = net.observation(p);
    if (present(net, obs, s1)) out.push_back(obs);
  }
  std::sort(out.begin(), out.end());
  return out;
}

ExecutionStrategy ExecutionStrategy::for_network(const Chytn& net) {
  return ExecutionStrategy(enumerate_scenarios(net.proposition_count()), net.node_count());
}

void check_strategy_domain(const ExecutionStrategy& sigma, const Chytn& net) {
  const std::size_t props = net.proposition_count();
  if (props >= 63 || sigma.scenario_count() != (std::uint64_t{1} << props))
    throw InputError("strategy must give one schedule per scenario (" + std::to_string(sigma.scenario_count()) +
                     " given)");
  if (sigma.node_count() != net.node_count()) throw InputError("strategy node set does not match the network");
  for (std::size_t i = 0; i < sigma.scenario_count(); ++i) {
    const Scenario& s = sigma.scenario(i);
    if (s.size() != props || s.index() != i) throw InputError("strategy scenarios are not in enumeration order");
    for (NodeId v = 0; v < net.node_count(); ++v) {
      bool want = present(net, v, s);
      bool have = sigma.at(i, v).has_value();
      if (want != have) {
        throw InputError("strategy for scenario '" + format_scenario(s, net.proposition_names()) + "' " +
                         (want ? "misses node '" : "schedules absent node '") + net.node_name(v) + "'");
      }
    }
  }
}

}  // namespace tempnet
