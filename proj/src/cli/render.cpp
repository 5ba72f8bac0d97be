#include <algorithm>
#include <map>
#include <sstream>

#include "tempnet/cli.hpp"

namespace tempnet {

namespace {

std::string show_time(const Rational& t) {
  if (t.denominator() == 1) return to_string(t);
  return to_string(t) + " (approx " + approx_string(t) + ")";
}

class TreeRenderer {
 public:
  TreeRenderer(const ExecutionStrategy& sigma, const Chytn& net) : sigma_(sigma), net_(net) {}

  std::string render() {
    std::vector<std::size_t> all(sigma_.scenario_count());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    std::vector<char> done(net_.node_count(), 0);
    walk(all, done, 0);
    return out_.str();
  }

 private:
  // Earliest pending event time over the group, if any.
  std::optional<Rational> next_time(const std::vector<std::size_t>& group, const std::vector<char>& done) const {
    std::optional<Rational> best;
    for (std::size_t s : group)
      for (NodeId v = 0; v < net_.node_count(); ++v)
        if (!done[v] && sigma_.at(s, v) && (!best || *sigma_.at(s, v) < *best)) best = *sigma_.at(s, v);
    return best;
  }

  void walk(const std::vector<std::size_t>& group, std::vector<char> done, int depth) {
    const std::string indent(static_cast<std::size_t>(2 * depth), ' ');
    while (auto t = next_time(group, done)) {
      // Nodes the first scenario runs at t; every scenario must agree exactly.
      std::vector<NodeId> batch;
      bool agree = true;
      for (NodeId v = 0; v < net_.node_count(); ++v) {
        if (done[v]) continue;
        bool first = sigma_.at(group.front(), v) && *sigma_.at(group.front(), v) == *t;
        for (std::size_t s : group) {
          bool here = sigma_.at(s, v) && *sigma_.at(s, v) == *t;
          if (here != first) agree = false;
        }
        if (first) batch.push_back(v);
      }
      if (!agree || batch.empty()) {
        split(group, done, depth);
        return;
      }
      for (NodeId v : batch) {
        out_ << indent << net_.node_name(v) << " = " << show_time(*t);
        if (auto p = net_.observed_by(v)) out_ << "  observes " << net_.proposition_names()[*p];
        out_ << "\n";
        done[v] = 1;
      }
    }
  }

  void split(const std::vector<std::size_t>& group, const std::vector<char>& done, int depth) {
    const std::string indent(static_cast<std::size_t>(2 * depth), ' ');
    // Prefer a proposition already observed on this branch, earliest first.
    std::optional<PropId> chosen;
    std::optional<Rational> when;
    for (PropId p = 0; p < net_.proposition_count(); ++p) {
      if (!varies(group, p)) continue;
      NodeId obs = net_.observation(p);
      const auto& t = sigma_.at(group.front(), obs);
      if (done[obs] && t && (!when || *t < *when)) {
        chosen = p;
        when = *t;
      }
    }
    for (PropId p = 0; p < net_.proposition_count() && !chosen; ++p)
      if (varies(group, p)) chosen = p;
    if (!chosen) return;  // identical scenario sets cannot disagree
    const std::string& name = net_.proposition_names()[*chosen];
    for (bool value : {true, false}) {
      std::vector<std::size_t> part;
      for (std::size_t s : group)
        if (sigma_.scenario(s).value(*chosen) == value) part.push_back(s);
      out_ << indent << "if " << (value ? "" : "!") << name << ":\n";
      walk(part, done, depth + 1);
    }
  }

  bool varies(const std::vector<std::size_t>& group, PropId p) const {
    bool first = sigma_.scenario(group.front()).value(p);
    return std::any_of(group.begin(), group.end(), [&](std::size_t s) { return sigma_.scenario(s).value(p) != first; });
  }

  const ExecutionStrategy& sigma_;
  const Chytn& net_;
  std::ostringstream out_;
};

}  // namespace

std::string render_strategy_table(const ExecutionStrategy& sigma, const Chytn& net) {
  std::ostringstream out;
  const auto& names = net.proposition_names();
  for (std::size_t i = 0; i < sigma.scenario_count(); ++i) {
    std::string label = format_scenario(sigma.scenario(i), names);
    out << (label.empty() ? "(no propositions)" : label) << " |";
    std::vector<std::pair<Rational, NodeId>> events;
    for (NodeId v = 0; v < net.node_count(); ++v)
      if (const auto& t = sigma.at(i, v)) events.emplace_back(*t, v);
    std::stable_sort(events.begin(), events.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [t, v] : events) out << " " << net.node_name(v) << "=" << to_string(t);
    out << "\n";
  }
  return out.str();
}

std::string render_decision_tree(const ExecutionStrategy& sigma, const Chytn& net) {
  if (sigma.scenario_count() == 0) return "";
  return TreeRenderer(sigma, net).render();
}

}  // namespace tempnet
