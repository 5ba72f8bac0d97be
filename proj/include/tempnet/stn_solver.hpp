#pragma once

#include <variant>
#include <vector>

#include "tempnet/network.hpp"

namespace tempnet {

struct StnCycle {
  std::vector<Arc> arcs;  // consecutive: arcs[i].head == arcs[i+1].tail, cyclically
  Weight total = 0;
};

// Feasible potential p with w + p(tail) - p(head) >= 0 on every arc; it is
// also a feasible schedule. Values are shortest distances from a virtual
// source, so they lie in [-Σ|negative w|, 0].
using StnPotential = std::vector<Weight>;

struct StnVerdict {
  std::variant<StnPotential, StnCycle> result;

  bool consistent() const { return std::holds_alternative<StnPotential>(result); }
  const StnPotential& potential() const { return std::get<StnPotential>(result); }
  const StnCycle& cycle() const { return std::get<StnCycle>(result); }
};

StnVerdict check_stn(const Stn& g);

// Independent re-check of a cycle certificate against g.
bool verify_stn_cycle(const Stn& g, const StnCycle& cycle);
// Every arc has nonnegative reduced weight.
bool verify_stn_potential(const Stn& g, const StnPotential& p);

}  // namespace tempnet
