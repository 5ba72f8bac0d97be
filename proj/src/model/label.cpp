#include "tempnet/label.hpp"

#include <bit>
#include <cctype>

#include "tempnet/errors.hpp"

namespace tempnet {

Label Label::literal(PropId prop, bool polarity) {
  if (prop >= kMaxPropositions) throw InputError("proposition index out of range");
  std::uint64_t bit = std::uint64_t{1} << prop;
  return polarity ? Label(bit, 0) : Label(0, bit);
}

bool Label::add(PropId prop, bool polarity) {
  std::uint64_t bit = std::uint64_t{1} << prop;
  if (polarity) {
    if (neg_ & bit) return false;
    pos_ |= bit;
  } else {
    if (pos_ & bit) return false;
    neg_ |= bit;
  }
  return true;
}

std::size_t Label::literal_count() const { return std::popcount(pos_ | neg_); }

std::optional<Label> Label::conjoin(const Label& other) const {
  if (!consistent_with(other)) return std::nullopt;
  return Label(pos_ | other.pos_, neg_ | other.neg_);
}

bool subsumes(const Label& stronger, const Label& weaker) { return stronger.subsumes(weaker); }
bool consistent(const Label& a, const Label& b) { return a.consistent_with(b); }

Scenario::Scenario(std::uint64_t truth, std::size_t size) : truth_(truth), size_(size) {
  if (size > kMaxPropositions) throw InputError("too many propositions for a scenario");
  if (size < 64) truth_ &= (std::uint64_t{1} << size) - 1;
}

Scenario Scenario::from_index(std::uint64_t index, std::size_t size) {
  std::uint64_t truth = 0;
  for (std::size_t i = 0; i < size; ++i)
    if ((index >> (size - 1 - i)) & 1U) truth |= std::uint64_t{1} << i;
  return Scenario(truth, size);
}

std::uint64_t Scenario::index() const {
  std::uint64_t k = 0;
  for (std::size_t i = 0; i < size_; ++i)
    if (value(static_cast<PropId>(i))) k |= std::uint64_t{1} << (size_ - 1 - i);
  return k;
}

Label Scenario::as_label() const {
  Label out;
  for (std::size_t i = 0; i < size_; ++i) out.add(static_cast<PropId>(i), value(static_cast<PropId>(i)));
  return out;
}

bool eval_label(const Scenario& s, const Label& label) {
  std::uint64_t domain = s.size() >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << s.size()) - 1;
  if (label.support() & ~domain) throw InputError("label mentions a proposition outside the scenario");
  return holds(s, label);
}

namespace {

bool is_separator(char c) { return std::isspace(static_cast<unsigned char>(c)) || c == '&' || c == ','; }

}  // namespace

Label parse_label(std::string_view text, std::span<const std::string> prop_names) {
  Label out;
  std::size_t i = 0;
  auto fail = [&](const std::string& why) -> void {
    throw InputError("label '" + std::string(text) + "': " + why);
  };
  while (i < text.size()) {
    if (is_separator(text[i])) {
      ++i;
      continue;
    }
    bool polarity = true;
    while (i < text.size()) {
      if (text[i] == '!' || text[i] == '~') {
        polarity = !polarity;
        ++i;
      } else if (text.substr(i).starts_with("¬")) {
        polarity = !polarity;
        i += std::string_view("¬").size();
      } else {
        break;
      }
    }
    std::size_t start = i;
    while (i < text.size() && !is_separator(text[i]) && text[i] != '!' && text[i] != '~') ++i;
    std::string_view name = text.substr(start, i - start);
    if (name.empty()) fail("dangling negation");
    if (name == "λ" || name == "true") {
      if (!polarity) fail("negated empty label");
      continue;
    }
    std::optional<PropId> id;
    for (std::size_t k = 0; k < prop_names.size(); ++k)
      if (prop_names[k] == name) id = static_cast<PropId>(k);
    if (!id) fail("unknown proposition '" + std::string(name) + "'");
    if (!out.add(*id, polarity)) fail("unsatisfiable (both polarities of '" + std::string(name) + "')");
  }
  return out;
}

std::string format_label(const Label& label, std::span<const std::string> prop_names) {
  std::string out;
  for (std::size_t p = 0; p < prop_names.size(); ++p) {
    if (!label.mentions(static_cast<PropId>(p))) continue;
    if (!out.empty()) out += " & ";
    if (!label.polarity(static_cast<PropId>(p))) out += '!';
    out += prop_names[p];
  }
  return out;
}

std::string format_scenario(const Scenario& s, std::span<const std::string> prop_names) {
  return format_label(s.as_label(), prop_names);
}

}  // namespace tempnet
