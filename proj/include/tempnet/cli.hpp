// Command-line frontend. Exit codes: 0 consistent / DC / verified,
// 1 inconsistent / not DC / refuted, 2 invalid input, 3 resource cap,
// 4 internal invariant failure.
#pragma once

#include <exception>
#include <iosfwd>
#include <string>
#include <vector>

#include "tempnet/model.hpp"
#include "tempnet/network.hpp"

namespace tempnet {

enum ExitCode : int { kExitOk = 0, kExitRefuted = 1, kExitInput = 2, kExitResource = 3, kExitInvariant = 4 };

struct ErrorClass {
  const char* name;
  int exit_code;
};

// Maps an exception escaping a command to its report class and exit code.
ErrorClass classify_error(const std::exception& e);

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// One line per scenario: "scenario | node=time ...".
std::string render_strategy_table(const ExecutionStrategy& sigma, const Chytn& net);
// Events in time order, branching on a proposition once scenarios diverge.
std::string render_decision_tree(const ExecutionStrategy& sigma, const Chytn& net);

}  // namespace tempnet
