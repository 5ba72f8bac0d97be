// Conjunctive labels and scenarios over a small, ordered proposition set.
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tempnet {

using PropId = std::uint32_t;

inline constexpr std::size_t kMaxPropositions = 62;

class Scenario;

// Conjunction of literals. The empty label is λ. A label never holds a
// proposition with both polarities; constructing one is rejected.
class Label {
 public:
  Label() = default;

  static Label literal(PropId prop, bool polarity);

  // Returns false (leaving the label unchanged) if the literal contradicts it.
  bool add(PropId prop, bool polarity);

  bool empty() const { return pos_ == 0 && neg_ == 0; }
  bool mentions(PropId prop) const { return ((pos_ | neg_) >> prop) & 1U; }
  bool polarity(PropId prop) const { return (pos_ >> prop) & 1U; }
  std::uint64_t positive_mask() const { return pos_; }
  std::uint64_t negative_mask() const { return neg_; }
  std::uint64_t support() const { return pos_ | neg_; }
  std::size_t literal_count() const;

  // literals(other) ⊆ literals(*this), i.e. *this ⇒ other.
  bool subsumes(const Label& other) const {
    return (other.pos_ & ~pos_) == 0 && (other.neg_ & ~neg_) == 0;
  }
  bool consistent_with(const Label& other) const {
    return (pos_ & other.neg_) == 0 && (neg_ & other.pos_) == 0;
  }
  // Conjunction; nullopt when the result would be contradictory.
  std::optional<Label> conjoin(const Label& other) const;

  friend bool operator==(const Label&, const Label&) = default;
  friend auto operator<=>(const Label&, const Label&) = default;

 private:
  Label(std::uint64_t pos, std::uint64_t neg) : pos_(pos), neg_(neg) {}
  std::uint64_t pos_ = 0;
  std::uint64_t neg_ = 0;
};

bool subsumes(const Label& stronger, const Label& weaker);
bool consistent(const Label& a, const Label& b);

// Total assignment over propositions 0..size-1.
class Scenario {
 public:
  Scenario() = default;
  Scenario(std::uint64_t truth, std::size_t size);

  // Lexicographic rank over sorted propositions with ⊥ < ⊤: proposition 0 is
  // the most significant digit.
  static Scenario from_index(std::uint64_t index, std::size_t size);
  std::uint64_t index() const;

  std::size_t size() const { return size_; }
  bool value(PropId prop) const { return (truth_ >> prop) & 1U; }
  std::uint64_t truth_mask() const { return truth_; }

  // The full conjunction describing this scenario.
  Label as_label() const;

  friend bool operator==(const Scenario&, const Scenario&) = default;

 private:
  std::uint64_t truth_ = 0;
  std::size_t size_ = 0;
};

// Throws InputError if the label mentions a proposition outside the scenario.
bool eval_label(const Scenario& s, const Label& label);

// Fast path when the caller already guarantees the domains match.
inline bool holds(const Scenario& s, const Label& label) {
  std::uint64_t t = s.truth_mask();
  return (label.positive_mask() & ~t) == 0 && (label.negative_mask() & t) == 0;
}

// Label text: literals separated by '&' (or whitespace), negation '!' or '¬',
// λ written as the empty string (also accepts "λ" / "true").
Label parse_label(std::string_view text, std::span<const std::string> prop_names);
std::string format_label(const Label& label, std::span<const std::string> prop_names);
std::string format_scenario(const Scenario& s, std::span<const std::string> prop_names);

}  // namespace tempnet
