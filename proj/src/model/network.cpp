#include "tempnet/network.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>
#include <tuple>

namespace tempnet {

NodeId Stn::add_node(std::string name) {
  names_.push_back(std::move(name));
  return static_cast<NodeId>(names_.size() - 1);
}

void Stn::add_arc(NodeId tail, NodeId head, Weight weight) {
  if (tail >= names_.size() || head >= names_.size())
    throw InputError("arc references an unknown node");
  std::uint64_t key = (std::uint64_t{tail} << 32) | head;
  auto it = arc_index_.find(key);
  if (it == arc_index_.end()) {
    arc_index_.emplace(key, arcs_.size());
    arcs_.push_back({tail, head, weight});
    return;
  }
  Arc& kept = arcs_[it->second];
  notes_.push_back("merged parallel arc " + names_[tail] + " -> " + names_[head] + " (kept weight " +
                   std::to_string(std::min(kept.weight, weight)) + ")");
  kept.weight = std::min(kept.weight, weight);
}

Hytn to_hytn(const Stn& stn) {
  Hytn out(stn.names());
  out.reserve(stn.arcs().size(), stn.arcs().size());
  for (const Arc& a : stn.arcs()) out.add_arc(a.tail, a.head, a.weight);
  return out;
}

std::optional<NodeId> Chytn::find_node(std::string_view name) const {
  auto it = node_index_.find(std::string(name));
  if (it == node_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<PropId> Chytn::observed_by(NodeId v) const {
  std::int32_t p = observed_prop_.at(v);
  if (p < 0) return std::nullopt;
  return static_cast<PropId>(p);
}

bool Chytn::all_one_head() const {
  return std::all_of(constraints_.begin(), constraints_.end(),
                     [](const Constraint& c) { return c.heads.size() == 1; });
}

std::size_t Chytn::max_abs_weight() const {
  std::size_t w = 0;
  for (const auto& c : constraints_)
    for (const auto& h : c.heads) w = std::max<std::size_t>(w, static_cast<std::size_t>(std::llabs(h.weight)));
  return w;
}

ChytnBuilder& ChytnBuilder::node(std::string name, std::string label) {
  nodes_.push_back({std::move(name), std::move(label)});
  return *this;
}

ChytnBuilder& ChytnBuilder::proposition(std::string name, std::string observation_node) {
  props_.emplace_back(std::move(name), std::move(observation_node));
  return *this;
}

ChytnBuilder& ChytnBuilder::arc(std::string from, std::string to, Weight weight, std::string label) {
  constraints_.push_back({std::move(from), {End{std::move(to), weight, std::move(label)}}});
  return *this;
}

ChytnBuilder& ChytnBuilder::hyperarc(std::string tail, std::vector<End> heads) {
  constraints_.push_back({std::move(tail), std::move(heads)});
  return *this;
}

ChytnBuilder& ChytnBuilder::multi_tail(std::vector<End> tails, std::string head) {
  multi_tail_.push_back({std::move(tails), std::move(head)});
  return *this;
}

namespace {

std::vector<LabeledEnd> resolve_ends(const std::vector<ChytnBuilder::End>& ends, const Chytn& net,
                                     std::span<const std::string> props, const std::string& where) {
  if (ends.empty()) throw InputError(where + ": needs at least one endpoint");
  std::vector<LabeledEnd> out;
  out.reserve(ends.size());
  std::set<NodeId> seen;
  for (const auto& e : ends) {
    auto id = net.find_node(e.node);
    if (!id) throw InputError(where + ": unknown node '" + e.node + "'");
    if (!seen.insert(*id).second) throw InputError(where + ": node '" + e.node + "' listed twice");
    out.push_back({*id, e.weight, parse_label(e.label, props)});
  }
  return out;
}

}  // namespace

GeneralChytn ChytnBuilder::build_general() const {
  GeneralChytn g;
  Chytn& net = g.base;

  auto sorted_props = props_;
  std::sort(sorted_props.begin(), sorted_props.end());
  if (sorted_props.size() > kMaxPropositions)
    throw InputError("at most " + std::to_string(kMaxPropositions) + " propositions are supported");
  for (std::size_t i = 0; i < sorted_props.size(); ++i) {
    if (sorted_props[i].first.empty()) throw InputError("empty proposition name");
    if (i > 0 && sorted_props[i].first == sorted_props[i - 1].first)
      throw InputError("duplicate proposition '" + sorted_props[i].first + "'");
    net.prop_names_.push_back(sorted_props[i].first);
  }

  for (const auto& n : nodes_) {
    if (n.name.empty()) throw InputError("empty node id");
    if (!net.node_index_.emplace(n.name, static_cast<NodeId>(net.node_names_.size())).second)
      throw InputError("duplicate node id '" + n.name + "'");
    net.node_names_.push_back(n.name);
  }
  for (const auto& n : nodes_) {
    try {
      net.node_labels_.push_back(parse_label(n.label, net.prop_names_));
    } catch (const InputError& e) {
      throw InputError("node '" + n.name + "': " + e.what());
    }
  }

  net.observed_prop_.assign(net.node_names_.size(), -1);
  for (std::size_t p = 0; p < sorted_props.size(); ++p) {
    auto obs = net.find_node(sorted_props[p].second);
    if (!obs)
      throw InputError("proposition '" + sorted_props[p].first + "' observed by unknown node '" +
                       sorted_props[p].second + "'");
    if (net.observed_prop_[*obs] >= 0)
      throw InputError("node '" + sorted_props[p].second + "' observes two propositions");
    net.observed_prop_[*obs] = static_cast<std::int32_t>(p);
    net.obs_mask_ |= std::uint64_t{1} << p;
    net.propositions_.push_back({sorted_props[p].first, *obs});
  }

  // One-head constraints with equal (tail, head, label) keep the tightest weight.
  std::map<std::tuple<NodeId, NodeId, std::uint64_t, std::uint64_t>, std::size_t> one_head;
  for (std::size_t i = 0; i < constraints_.size(); ++i) {
    const auto& pc = constraints_[i];
    std::string where = "constraint " + std::to_string(i);
    auto tail = net.find_node(pc.tail);
    if (!tail) throw InputError(where + ": unknown tail '" + pc.tail + "'");
    Constraint c{*tail, resolve_ends(pc.heads, net, net.prop_names_, where)};
    if (c.heads.size() == 1) {
      const auto& h = c.heads.front();
      auto key = std::make_tuple(c.tail, h.node, h.label.positive_mask(), h.label.negative_mask());
      auto [it, fresh] = one_head.emplace(key, net.constraints_.size());
      if (!fresh) {
        auto& kept = net.constraints_[it->second].heads.front();
        kept.weight = std::min(kept.weight, h.weight);
        net.notes_.push_back("merged parallel constraint " + pc.tail + " -> " + pc.heads.front().node +
                             " (kept weight " + std::to_string(kept.weight) + ")");
        continue;
      }
    }
    net.constraints_.push_back(std::move(c));
  }

  for (std::size_t i = 0; i < multi_tail_.size(); ++i) {
    const auto& pm = multi_tail_[i];
    std::string where = "multi-tail constraint " + std::to_string(i);
    auto head = net.find_node(pm.head);
    if (!head) throw InputError(where + ": unknown head '" + pm.head + "'");
    g.multi_tail.push_back({resolve_ends(pm.tails, net, net.prop_names_, where), *head});
  }
  return g;
}

Chytn ChytnBuilder::build() const {
  if (!multi_tail_.empty())
    throw UnsupportedFeatureError("multi-tail constraints are only supported by the brute-force oracle");
  return build_general().base;
}

const Chytn& require_multi_head(const GeneralChytn& g) {
  if (!g.multi_tail.empty())
    throw UnsupportedFeatureError(
        "network has multi-tail constraints; the DC pipeline handles multi-head constraints only");
  return g.base;
}

}  // namespace tempnet
