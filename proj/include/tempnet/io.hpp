// JSON documents for networks, strategies and certificates. Emission is
// canonical (fixed field order, two-space indent, trailing newline), so
// parse followed by emit reproduces a canonical document byte for byte.
#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "tempnet/dc_checker.hpp"
#include "tempnet/hytn_solver.hpp"
#include "tempnet/model.hpp"
#include "tempnet/network.hpp"
#include "tempnet/stn_solver.hpp"

namespace tempnet {

using Json = nlohmann::ordered_json;

inline constexpr int kFormatVersion = 1;

enum class NetworkKind { stn, hytn, cstn, chytn, general_chytn };

std::string to_string(NetworkKind kind);
NetworkKind parse_kind(std::string_view text);

struct NetworkDocument {
  NetworkKind kind = NetworkKind::chytn;
  GeneralChytn network;
  Json metadata;  // null when absent
};

// Throws InputError naming the offending field path.
NetworkDocument parse_network(std::string_view text);
NetworkDocument network_from_json(const Json& doc);
Json network_to_json(const NetworkDocument& doc);
std::string emit_network(const NetworkDocument& doc);

// The narrowest kind describing the network.
NetworkKind infer_kind(const GeneralChytn& net);
NetworkDocument make_document(GeneralChytn net, Json metadata = nullptr);
NetworkDocument make_document(const Chytn& net, Json metadata = nullptr);

// Plain graphs as label-free networks.
GeneralChytn from_stn(const Stn& g);
GeneralChytn from_hytn(const Hytn& h);
// Inverse views; InputError if the network carries labels or propositions.
Stn as_stn(const GeneralChytn& net);
Hytn as_hytn(const GeneralChytn& net);

ExecutionStrategy parse_strategy(std::string_view text, const Chytn& net);
ExecutionStrategy strategy_from_json(const Json& doc, const Chytn& net);
Json strategy_to_json(const ExecutionStrategy& sigma, const Chytn& net, const std::optional<Eps>& eps = std::nullopt);
std::string emit_strategy(const ExecutionStrategy& sigma, const Chytn& net,
                          const std::optional<Eps>& eps = std::nullopt);

Json stn_cycle_to_json(const StnCycle& cycle, const Stn& g);
Json hytn_cycle_to_json(const NegativeCycleCert& cert, const Hytn& h);
Json dc_refutation_to_json(const DcRefutation& ref, const Eps& eps);

std::string dump(const Json& doc);

}  // namespace tempnet
