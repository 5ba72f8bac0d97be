#include "tempnet/generators.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <random>
#include <set>
#include <sstream>

#include "tempnet/errors.hpp"
#include "tempnet/label.hpp"
#include "tempnet/model.hpp"

namespace tempnet {

namespace {

// Portable draws on top of mt19937_64; the standard distributions are not
// specified bit-for-bit across library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [0, bound).
  std::uint64_t below(std::uint64_t bound) {
    if (bound <= 1) return 0;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % bound;
  }
  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  bool chance(double p) { return unit() < p; }

 private:
  std::mt19937_64 engine_;
};

void check_clause(const Clause& c, int variables, const char* what) {
  if (c.empty()) throw InputError(std::string(what) + ": empty clause");
  if (c.size() > 3) throw InputError(std::string(what) + ": clause with more than 3 literals");
  for (int lit : c)
    if (lit == 0 || std::abs(lit) > variables)
      throw InputError(std::string(what) + ": literal " + std::to_string(lit) + " is out of range");
}

std::string var_name(int k) { return "x" + std::to_string(k); }

std::string literal_label(int lit) { return (lit > 0 ? "" : "!") + var_name(std::abs(lit)); }

std::vector<Clause> parse_clauses(const std::string& text) {
  std::vector<Clause> out;
  std::string chunk;
  std::string normalized = text;
  std::replace(normalized.begin(), normalized.end(), ';', ',');
  std::istringstream parts(normalized);
  while (std::getline(parts, chunk, ',')) {
    std::istringstream lits(chunk);
    Clause c;
    std::string tok;
    while (lits >> tok) {
      try {
        std::size_t used = 0;
        int v = std::stoi(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        c.push_back(v);
      } catch (const std::exception&) {
        throw InputError("bad literal '" + tok + "'");
      }
    }
    if (!c.empty()) out.push_back(std::move(c));
  }
  return out;
}

}  // namespace

Cnf parse_cnf(int variables, const std::string& text) {
  Cnf phi{variables, parse_clauses(text)};
  for (const auto& c : phi.clauses) check_clause(c, variables, "cnf");
  return phi;
}

Qbf parse_qbf(const std::string& prefix, const std::string& matrix) {
  Qbf phi;
  std::istringstream words(prefix);
  std::string w;
  while (words >> w) {
    if (w == "E" || w == "e" || w == "exists")
      phi.prefix.push_back(Quantifier::exists);
    else if (w == "A" || w == "a" || w == "forall")
      phi.prefix.push_back(Quantifier::forall);
    else
      throw InputError("bad quantifier '" + w + "' (expected E or A)");
  }
  phi.matrix = parse_clauses(matrix);
  for (const auto& c : phi.matrix) check_clause(c, static_cast<int>(phi.prefix.size()), "quantified formula");
  return phi;
}

Chytn gen_sat_cstn(const Cnf& phi) {
  if (phi.variables < 1) throw InputError("sat gadget needs at least one variable");
  if (phi.clauses.empty()) throw InputError("sat gadget needs at least one clause");
  for (const auto& c : phi.clauses) check_clause(c, phi.variables, "sat gadget");
  const int n = phi.variables;
  const int m = static_cast<int>(phi.clauses.size());
  auto clause_name = [](int j) { return "C" + std::to_string(j); };

  ChytnBuilder b;
  for (int k = 1; k <= n; ++k) b.node(var_name(k)).proposition(var_name(k), var_name(k));
  for (int j = 0; j < m; ++j) b.node(clause_name(j));
  // All observations happen together.
  for (int u = 1; u <= n; ++u)
    for (int v = 1; v <= n; ++v) b.arc(var_name(v), var_name(u), 0);
  // Every observation precedes every clause node by at least one unit.
  for (int k = 1; k <= n; ++k)
    for (int j = 0; j < m; ++j) b.arc(clause_name(j), var_name(k), -1);
  // The labeled ring over the clauses.
  for (int j = 0; j < m; ++j)
    for (int lit : phi.clauses[j]) b.arc(clause_name((j + 1) % m), clause_name(j), -1, literal_label(lit));
  return b.build();
}

GeneralChytn gen_tqbf_chytn(const Qbf& phi) {
  const int n = static_cast<int>(phi.prefix.size());
  if (n < 1) throw InputError("quantified formula needs at least one variable");
  if (phi.matrix.empty()) throw InputError("quantified formula needs at least one clause");
  for (const auto& c : phi.matrix) check_clause(c, n, "quantified formula");

  auto t = [](int j) { return "t" + std::to_string(j); };
  auto p = [](int j) { return "p" + std::to_string(j); };
  auto pos = [](int j) { return "l" + std::to_string(j); };
  auto neg = [](int j) { return "ln" + std::to_string(j); };
  auto clause_name = [](int i) { return "C" + std::to_string(i); };
  const std::string z = "z";
  const std::string z_end = "z'";

  ChytnBuilder b;
  b.node(z).node(z_end);
  for (int j = 1; j <= n; ++j) {
    b.node(t(j));
    if (phi.prefix[j - 1] == Quantifier::forall) b.node(p(j)).proposition(var_name(j), p(j));
    b.node(pos(j)).node(neg(j));
  }
  for (int i = 1; i <= static_cast<int>(phi.matrix.size()); ++i) b.node(clause_name(i));

  for (int j = 1; j <= n; ++j) {
    if (phi.prefix[j - 1] == Quantifier::exists) {
      b.arc(z, t(j), j + 1).arc(t(j), z, -j);
    } else {
      const std::string x = var_name(j);
      b.arc(z, p(j), j - 1).arc(p(j), z, -j + 1);
      b.arc(z, t(j), j + 1, x).arc(t(j), z, -j - 1, x);
      b.arc(z, t(j), j, "!" + x).arc(t(j), z, -j, "!" + x);
    }
  }
  b.arc(z, z_end, n + 1).arc(z_end, z, -n - 1);
  for (int j = 1; j <= n; ++j) {
    b.arc(z_end, pos(j), 1).arc(pos(j), z_end, 0);
    b.arc(z_end, neg(j), 1).arc(neg(j), z_end, 0);
    b.multi_tail({{pos(j), -1, ""}, {neg(j), -1, ""}}, z_end);
    b.hyperarc(z_end, {{pos(j), 0, ""}, {neg(j), 0, ""}});
    b.arc(t(j), pos(j), n + 1 - j).arc(pos(j), t(j), -n - 1 + j);
  }
  for (int i = 1; i <= static_cast<int>(phi.matrix.size()); ++i) {
    b.arc(z_end, clause_name(i), 1).arc(clause_name(i), z_end, -1);
    std::vector<ChytnBuilder::End> tails;
    std::set<int> seen;
    for (int lit : phi.matrix[i - 1]) {
      if (!seen.insert(lit).second) continue;
      tails.push_back({lit > 0 ? pos(lit) : neg(-lit), 0, ""});
    }
    b.multi_tail(std::move(tails), clause_name(i));
  }
  return b.build_general();
}

Chytn gen_gamma_n(int n) {
  if (n < 1) throw InputError("gamma-n needs n >= 1");
  if (n > kGammaNMax)
    throw ResourceError("gamma-n supports n <= " + std::to_string(kGammaNMax) + " (it has 3n propositions)");
  auto X = [](int i) { return "X" + std::to_string(i); };
  auto Y = [](int i) { return "Y" + std::to_string(i); };
  auto Z = [](int i) { return "Z" + std::to_string(i); };

  ChytnBuilder b;
  for (int i = 1; i <= n; ++i)
    for (const auto& v : {X(i), Y(i), Z(i)}) b.node(v).proposition(v, v);
  // B: X1 goes first; Z1 follows X1 within one unit when X1 and Y1 hold.
  for (int i = 1; i <= n; ++i)
    for (const auto& v : {X(i), Y(i), Z(i)}) b.arc(v, X(1), 0);
  b.arc(X(1), Z(1), 1, X(1) + " & " + Y(1));
  for (int i = 1; i <= n; ++i) {
    b.arc(X(i), Y(i), 2, "!" + X(i)).arc(Y(i), X(i), -2, "!" + X(i));
    b.arc(Y(i), Z(i), 2, "!" + Y(i)).arc(Z(i), Y(i), -2, "!" + Y(i));
  }
  for (int i = 1; i < n; ++i) {
    const std::string next = X(i + 1) + " & " + Y(i + 1);
    b.arc(X(i), X(i + 1), 5, Z(i)).arc(X(i + 1), X(i), -5, Z(i));
    b.arc(Y(i), X(i + 1), 5, "!" + Z(i)).arc(X(i + 1), Y(i), -5, "!" + Z(i));
    b.arc(Y(i), Z(i + 1), 5, Z(i) + " & " + next).arc(Z(i + 1), Y(i), -5, Z(i) + " & " + next);
    b.arc(Z(i), Z(i + 1), 5, "!" + Z(i) + " & " + next).arc(Z(i + 1), Z(i), -5, "!" + Z(i) + " & " + next);
  }
  return b.build();
}

Chytn gen_random_chytn(const RandomChytnParams& params) {
  const std::size_t n = params.nodes;
  const std::size_t k = params.propositions;
  if (n == 0) throw InputError("random network needs at least one node");
  if (k > n) throw InputError("random network needs a distinct observation node per proposition");
  if (k > kMaxPropositions) throw InputError("too many propositions");
  if (params.density < 0 || params.density > 1) throw InputError("density must lie in [0, 1]");
  if (params.max_weight < 0) throw InputError("max weight must be nonnegative");
  if (params.max_heads < 1 || params.max_heads > n) throw InputError("max heads must lie in [1, nodes]");

  Rng rng(params.seed);
  std::vector<std::string> names(n);
  std::vector<std::string> props(k);
  for (std::size_t v = 0; v < n; ++v) names[v] = "v" + std::to_string(v);
  for (std::size_t p = 0; p < k; ++p) props[p] = "p" + std::to_string(p);

  // Labels are kept closed under "p in L implies L(O_p) in L", which gives
  // WD3' and the subsumption half of WD2. Observation node v_p only mentions
  // propositions below p, so the observation order is acyclic.
  std::vector<Label> labels(n);
  auto extend = [&](Label& l, PropId p, bool polarity) {
    auto merged = l.conjoin(labels[p]);
    if (!merged || !merged->add(p, polarity)) return;
    l = *merged;
  };
  for (std::size_t v = 0; v < n; ++v) {
    const std::size_t limit = v < k ? v : k;
    for (std::size_t p = 0; p < limit; ++p)
      if (rng.chance(params.literal_probability)) extend(labels[v], static_cast<PropId>(p), rng.chance(0.5));
  }

  ChytnBuilder b;
  for (std::size_t v = 0; v < n; ++v) b.node(names[v], format_label(labels[v], props));
  for (std::size_t p = 0; p < k; ++p) b.proposition(props[p], names[p]);

  // WD2 witnesses: every proposition in L(u) is observed strictly before u.
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t p = 0; p < k; ++p)
      if (labels[u].mentions(static_cast<PropId>(p)))
        b.arc(names[u], names[p], -1, format_label(labels[u], props));

  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      if (!rng.chance(params.density)) continue;
      std::size_t head_count = static_cast<std::size_t>(rng.between(1, static_cast<std::int64_t>(params.max_heads)));
      std::vector<std::size_t> heads = {v};
      for (std::size_t tries = 0; heads.size() < head_count && tries < 4 * n; ++tries) {
        std::size_t h = rng.below(n);
        if (std::find(heads.begin(), heads.end(), h) == heads.end()) heads.push_back(h);
      }
      std::vector<ChytnBuilder::End> ends;
      for (std::size_t h : heads) {
        auto base = labels[u].conjoin(labels[h]);
        Weight w = rng.between(-params.max_weight, params.max_weight);
        if (!base) continue;
        Label l = *base;
        if (k > 0 && rng.chance(params.literal_probability))
          extend(l, static_cast<PropId>(rng.below(k)), rng.chance(0.5));
        ends.push_back({names[h], w, format_label(l, props)});
      }
      if (ends.empty()) continue;
      if (ends.size() == 1)
        b.arc(names[u], ends.front().node, ends.front().weight, ends.front().label);
      else
        b.hyperarc(names[u], std::move(ends));
    }
  }
  Chytn net = b.build();
  if (!well_defined(net)) throw InvariantError("random generator produced a network that is not well-defined");
  return net;
}

Hytn gen_random_hytn(const RandomHytnParams& params) {
  if (params.nodes == 0) throw InputError("random hypergraph needs at least one node");
  if (params.max_heads < 1 || params.max_heads > params.nodes) throw InputError("max heads must lie in [1, nodes]");
  Rng rng(params.seed);
  std::vector<std::string> names;
  for (std::size_t v = 0; v < params.nodes; ++v) names.push_back("v" + std::to_string(v));
  Hytn h(std::move(names));
  std::vector<HeadWeight<Weight>> heads;
  for (std::size_t a = 0; a < params.hyperarcs; ++a) {
    NodeId tail = static_cast<NodeId>(rng.below(params.nodes));
    std::size_t count = static_cast<std::size_t>(rng.between(1, static_cast<std::int64_t>(params.max_heads)));
    heads.clear();
    while (heads.size() < count) {
      NodeId v = static_cast<NodeId>(rng.below(params.nodes));
      bool dup = std::any_of(heads.begin(), heads.end(), [&](const auto& hw) { return hw.node == v; });
      if (!dup) heads.push_back({v, rng.between(-params.max_weight, params.max_weight)});
    }
    h.add_hyperarc(tail, heads);
  }
  return h;
}

Stn gen_random_stn(const RandomStnParams& params) {
  if (params.nodes == 0) throw InputError("random STN needs at least one node");
  Rng rng(params.seed);
  Stn g;
  for (std::size_t v = 0; v < params.nodes; ++v) g.add_node("v" + std::to_string(v));
  if (params.nodes < 2) return g;  // every arc would be a self-loop
  for (std::size_t a = 0; a < params.arcs; ++a) {
    NodeId u = static_cast<NodeId>(rng.below(params.nodes));
    NodeId v = static_cast<NodeId>(rng.below(params.nodes - 1));
    if (v >= u) ++v;
    g.add_arc(u, v, rng.between(-params.max_weight, params.max_weight));
  }
  return g;
}

namespace {

bool clause_holds(const Clause& c, std::uint64_t assignment) {
  for (int lit : c) {
    bool value = (assignment >> (std::abs(lit) - 1)) & 1U;
    if ((lit > 0) == value) return true;
  }
  return false;
}

bool matrix_holds(const std::vector<Clause>& matrix, std::uint64_t assignment) {
  return std::all_of(matrix.begin(), matrix.end(), [&](const Clause& c) { return clause_holds(c, assignment); });
}

bool qbf_from(const Qbf& phi, std::size_t j, std::uint64_t assignment) {
  if (j == phi.prefix.size()) return matrix_holds(phi.matrix, assignment);
  bool f = qbf_from(phi, j + 1, assignment);
  bool t = qbf_from(phi, j + 1, assignment | (std::uint64_t{1} << j));
  return phi.prefix[j] == Quantifier::exists ? (f || t) : (f && t);
}

}  // namespace

bool qbf_true(const Qbf& phi) {
  if (phi.prefix.size() > 30) throw ResourceError("quantified formula too large for exhaustive evaluation");
  return qbf_from(phi, 0, 0);
}

bool cnf_satisfiable(const Cnf& phi) {
  if (phi.variables > 30) throw ResourceError("formula too large for a truth table");
  for (std::uint64_t a = 0; a < (std::uint64_t{1} << phi.variables); ++a)
    if (matrix_holds(phi.clauses, a)) return true;
  return false;
}

}  // namespace tempnet
