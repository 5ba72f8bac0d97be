// Instance families: the 3-SAT gadget N^φ, the TQBF gadget Γ_φ, the
// reaction-time family Γⁿ, and seeded random networks.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tempnet/network.hpp"

namespace tempnet {

// Literal k > 0 is x_k, k < 0 is ¬x_{-k}; variables are numbered from 1.
using Clause = std::vector<int>;

struct Cnf {
  int variables = 0;
  std::vector<Clause> clauses;
};

enum class Quantifier { exists, forall };

// Prenex form: prefix[j-1] binds x_j.
struct Qbf {
  std::vector<Quantifier> prefix;
  std::vector<Clause> matrix;
};

// Parses "1 -2 3, -1 2" style clause lists (clauses split by ',' or ';').
Cnf parse_cnf(int variables, const std::string& text);
// Prefix words "E"/"A" (or "exists"/"forall"), e.g. "A E".
Qbf parse_qbf(const std::string& prefix, const std::string& matrix);

Chytn gen_sat_cstn(const Cnf& phi);
GeneralChytn gen_tqbf_chytn(const Qbf& phi);

inline constexpr int kGammaNMax = 6;
Chytn gen_gamma_n(int n);

struct RandomChytnParams {
  std::uint64_t seed = 1;
  std::size_t nodes = 6;
  std::size_t propositions = 2;
  double density = 0.3;          // probability of a constraint tailed at u toward v
  std::int64_t max_weight = 5;   // weights drawn from [-W, W]
  std::size_t max_heads = 2;     // heads per constraint, drawn from [1, max_heads]
  double literal_probability = 0.3;
};

Chytn gen_random_chytn(const RandomChytnParams& params);

struct RandomHytnParams {
  std::uint64_t seed = 1;
  std::size_t nodes = 4;
  std::size_t hyperarcs = 6;
  std::size_t max_heads = 2;
  std::int64_t max_weight = 2;
};

Hytn gen_random_hytn(const RandomHytnParams& params);

struct RandomStnParams {
  std::uint64_t seed = 1;
  std::size_t nodes = 5;
  std::size_t arcs = 8;
  std::int64_t max_weight = 3;
};

Stn gen_random_stn(const RandomStnParams& params);

// Truth of the quantified formula by exhaustive evaluation.
bool qbf_true(const Qbf& phi);
bool cnf_satisfiable(const Cnf& phi);

}  // namespace tempnet
