// Network types: STN, multi-head HyTN (compressed storage), and the labeled
// conditional variants.
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "tempnet/errors.hpp"
#include "tempnet/label.hpp"
#include "tempnet/rational.hpp"

namespace tempnet {

using NodeId = std::uint32_t;

// Arc tail -> head with weight w: s(head) - s(tail) <= w.
struct Arc {
  NodeId tail;
  NodeId head;
  Weight weight;
};

class Stn {
 public:
  Stn() = default;
  explicit Stn(std::vector<std::string> names) : names_(std::move(names)) {}

  NodeId add_node(std::string name);
  // Parallel arcs collapse to the tightest weight; a note records the merge.
  void add_arc(NodeId tail, NodeId head, Weight weight);

  std::size_t node_count() const { return names_.size(); }
  const std::vector<Arc>& arcs() const { return arcs_; }
  const std::string& name(NodeId v) const { return names_.at(v); }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<std::string>& notes() const { return notes_; }

 private:
  std::vector<std::string> names_;
  std::vector<Arc> arcs_;
  std::unordered_map<std::uint64_t, std::size_t> arc_index_;
  std::vector<std::string> notes_;
};

template <typename W>
struct HeadWeight {
  NodeId node;
  W weight;
};

// Multi-head hyperarc A = (t, H, w) in compressed row storage. The
// constraint is s(t) >= min over h in H of s(h) - w(h).
template <typename W>
class BasicHytn {
 public:
  BasicHytn() = default;
  explicit BasicHytn(std::size_t node_count) : node_count_(node_count) {}
  explicit BasicHytn(std::vector<std::string> names)
      : node_count_(names.size()), names_(std::move(names)) {}

  std::size_t add_hyperarc(NodeId tail, std::span<const HeadWeight<W>> heads) {
    if (heads.empty()) throw InputError("hyperarc must have at least one head");
    check_node(tail);
    for (std::size_t i = 0; i < heads.size(); ++i) {
      check_node(heads[i].node);
      for (std::size_t j = 0; j < i; ++j) {
        if (heads[j].node == heads[i].node)
          throw InputError("hyperarc lists head '" + name(heads[i].node) + "' twice");
      }
    }
    tails_.push_back(tail);
    for (const auto& h : heads) {
      head_nodes_.push_back(h.node);
      head_weights_.push_back(h.weight);
    }
    offsets_.push_back(head_nodes_.size());
    return tails_.size() - 1;
  }

  std::size_t add_arc(NodeId tail, NodeId head, W weight) {
    HeadWeight<W> h{head, weight};
    return add_hyperarc(tail, std::span<const HeadWeight<W>>(&h, 1));
  }

  void reserve(std::size_t hyperarcs, std::size_t head_entries) {
    tails_.reserve(hyperarcs);
    offsets_.reserve(hyperarcs + 1);
    head_nodes_.reserve(head_entries);
    head_weights_.reserve(head_entries);
  }

  std::size_t node_count() const { return node_count_; }
  std::size_t hyperarc_count() const { return tails_.size(); }
  std::size_t head_entry_count() const { return head_nodes_.size(); }

  NodeId tail(std::size_t a) const { return tails_[a]; }
  std::span<const NodeId> heads(std::size_t a) const {
    return {head_nodes_.data() + offsets_[a], offsets_[a + 1] - offsets_[a]};
  }
  std::span<const W> weights(std::size_t a) const {
    return {head_weights_.data() + offsets_[a], offsets_[a + 1] - offsets_[a]};
  }
  std::size_t head_begin(std::size_t a) const { return offsets_[a]; }
  std::size_t head_end(std::size_t a) const { return offsets_[a + 1]; }
  NodeId head_at(std::size_t k) const { return head_nodes_[k]; }
  const W& weight_at(std::size_t k) const { return head_weights_[k]; }

  // m_A = Σ |H_A ∪ {t_A}|.
  std::size_t size_measure() const {
    std::size_t total = 0;
    for (std::size_t a = 0; a < hyperarc_count(); ++a) {
      auto hs = heads(a);
      bool tail_in_heads = false;
      for (NodeId h : hs) tail_in_heads |= (h == tails_[a]);
      total += hs.size() + (tail_in_heads ? 0 : 1);
    }
    return total;
  }

  bool all_one_head() const {
    for (std::size_t a = 0; a < hyperarc_count(); ++a)
      if (offsets_[a + 1] - offsets_[a] != 1) return false;
    return true;
  }

  bool has_names() const { return !names_.empty(); }
  std::string name(NodeId v) const {
    if (v < names_.size()) return names_[v];
    return "v" + std::to_string(v);
  }
  const std::vector<std::string>& names() const { return names_; }

 private:
  void check_node(NodeId v) const {
    if (v >= node_count_) throw InputError("hyperarc references unknown node " + std::to_string(v));
  }

  std::size_t node_count_ = 0;
  std::vector<std::string> names_;
  std::vector<NodeId> tails_;
  std::vector<std::size_t> offsets_ = {0};
  std::vector<NodeId> head_nodes_;
  std::vector<W> head_weights_;
};

using Hytn = BasicHytn<Weight>;
using RationalHytn = BasicHytn<Rational>;

Hytn to_hytn(const Stn& stn);

struct LabeledEnd {
  NodeId node;
  Weight weight;
  Label label;
};

// Multi-head constraint: for heads h with weight w and label l,
// s(tail) >= min over active heads of s(h) - w.
// A one-head constraint is the labeled arc ⟨h − tail ≤ w, l⟩.
struct Constraint {
  NodeId tail;
  std::vector<LabeledEnd> heads;
};

// Multi-tail constraint: s(head) <= max over active tails of s(t) + w.
struct MultiTailConstraint {
  std::vector<LabeledEnd> tails;
  NodeId head;
};

struct Proposition {
  std::string name;
  NodeId observation;
};

class ChytnBuilder;

// Conditional multi-head HyTN. Propositions are sorted by name; PropId is the
// index into that order. Immutable after construction.
class Chytn {
 public:
  std::size_t node_count() const { return node_names_.size(); }
  const std::string& node_name(NodeId v) const { return node_names_.at(v); }
  const std::vector<std::string>& node_names() const { return node_names_; }
  const Label& node_label(NodeId v) const { return node_labels_.at(v); }
  std::optional<NodeId> find_node(std::string_view name) const;

  std::size_t proposition_count() const { return propositions_.size(); }
  const std::vector<Proposition>& propositions() const { return propositions_; }
  const std::vector<std::string>& proposition_names() const { return prop_names_; }
  NodeId observation(PropId p) const { return propositions_.at(p).observation; }
  // The proposition observed at v, if v is an observation node.
  std::optional<PropId> observed_by(NodeId v) const;
  // Bitmask of propositions observed by some node v.
  std::uint64_t observation_mask() const { return obs_mask_; }

  const std::vector<Constraint>& constraints() const { return constraints_; }
  bool all_one_head() const;
  std::size_t max_abs_weight() const;

  const std::vector<std::string>& notes() const { return notes_; }

 private:
  friend class ChytnBuilder;
  std::vector<std::string> node_names_;
  std::vector<Label> node_labels_;
  std::unordered_map<std::string, NodeId> node_index_;
  std::vector<Proposition> propositions_;
  std::vector<std::string> prop_names_;
  std::vector<std::int32_t> observed_prop_;  // per node, -1 if none
  std::uint64_t obs_mask_ = 0;
  std::vector<Constraint> constraints_;
  std::vector<std::string> notes_;
};

struct GeneralChytn {
  Chytn base;
  std::vector<MultiTailConstraint> multi_tail;
};

// Builds a Chytn from names and label strings. Everything is validated at
// build(): unknown names, duplicate ids, a non-bijective observation map,
// contradictory labels, empty head sets and duplicate heads raise InputError.
class ChytnBuilder {
 public:
  struct End {
    std::string node;
    Weight weight;
    std::string label;
  };

  ChytnBuilder& node(std::string name, std::string label = "");
  ChytnBuilder& proposition(std::string name, std::string observation_node);
  // ⟨to − from ≤ weight, label⟩.
  ChytnBuilder& arc(std::string from, std::string to, Weight weight, std::string label = "");
  ChytnBuilder& hyperarc(std::string tail, std::vector<End> heads);
  ChytnBuilder& multi_tail(std::vector<End> tails, std::string head);

  Chytn build() const;
  GeneralChytn build_general() const;

 private:
  struct PendingNode {
    std::string name;
    std::string label;
  };
  struct PendingConstraint {
    std::string tail;
    std::vector<End> heads;
  };
  struct PendingMultiTail {
    std::vector<End> tails;
    std::string head;
  };
  std::vector<PendingNode> nodes_;
  std::vector<std::pair<std::string, std::string>> props_;
  std::vector<PendingConstraint> constraints_;
  std::vector<PendingMultiTail> multi_tail_;
};

// Throws UnsupportedFeatureError if g carries multi-tail constraints.
const Chytn& require_multi_head(const GeneralChytn& g);

}  // namespace tempnet
