#include "tempnet/io.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "tempnet/errors.hpp"

namespace tempnet {

namespace {

constexpr Weight kMaxInputWeight = Weight{1} << 40;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw InputError(path + ": " + what);
}

const Json& field(const Json& obj, const std::string& key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(path, "missing field '" + key + "'");
  return *it;
}

void only_fields(const Json& obj, std::initializer_list<std::string_view> allowed, const std::string& path) {
  if (!obj.is_object()) fail(path, "expected an object");
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end())
      fail(path, "unknown field '" + it.key() + "'");
}

std::string text_field(const Json& obj, const std::string& key, const std::string& path) {
  const Json& v = field(obj, key, path);
  if (!v.is_string()) fail(path + "." + key, "expected a string");
  return v.get<std::string>();
}

// Labels may be omitted; they default to λ.
std::string label_field(const Json& obj, const std::string& path) {
  auto it = obj.find("label");
  if (it == obj.end()) return "";
  if (!it->is_string()) fail(path + ".label", "expected a string");
  return it->get<std::string>();
}

Weight weight_field(const Json& obj, const std::string& path) {
  const Json& v = field(obj, "weight", path);
  if (!v.is_number_integer()) fail(path + ".weight", "expected an integer");
  Weight w = v.get<Weight>();
  if (w > kMaxInputWeight || w < -kMaxInputWeight) fail(path + ".weight", "magnitude above 2^40");
  return w;
}

const Json& array_field(const Json& obj, const std::string& key, const std::string& path) {
  const Json& v = field(obj, key, path);
  if (!v.is_array()) fail(path + "." + key, "expected an array");
  return v;
}

std::vector<ChytnBuilder::End> ends_from(const Json& arr, const std::string& path) {
  std::vector<ChytnBuilder::End> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    std::string p = path + "[" + std::to_string(i) + "]";
    only_fields(arr[i], {"node", "weight", "label"}, p);
    out.push_back({text_field(arr[i], "node", p), weight_field(arr[i], p), label_field(arr[i], p)});
  }
  return out;
}

void enforce_kind(NetworkKind kind, const GeneralChytn& g) {
  const Chytn& net = g.base;
  const std::string k = to_string(kind);
  bool unlabeled = kind == NetworkKind::stn || kind == NetworkKind::hytn;
  bool one_head = kind == NetworkKind::stn || kind == NetworkKind::cstn;
  if (kind != NetworkKind::general_chytn && !g.multi_tail.empty())
    fail("multi_tail", "multi-tail constraints need kind general-chytn, not " + k);
  if (one_head && !net.all_one_head()) fail("constraints", "kind " + k + " allows one head per constraint");
  if (!unlabeled) return;
  if (net.proposition_count() != 0) fail("propositions", "kind " + k + " has no propositions");
  for (NodeId v = 0; v < net.node_count(); ++v)
    if (!net.node_label(v).empty()) fail("nodes", "kind " + k + " has no labels");
  for (const auto& c : net.constraints())
    for (const auto& h : c.heads)
      if (!h.label.empty()) fail("constraints", "kind " + k + " has no labels");
}

Json ends_to_json(const std::vector<LabeledEnd>& ends, const Chytn& net) {
  Json arr = Json::array();
  for (const auto& e : ends)
    arr.push_back({{"node", net.node_name(e.node)},
                   {"weight", e.weight},
                   {"label", format_label(e.label, net.proposition_names())}});
  return arr;
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

void check_header(const Json& doc, const std::string& kind_expected) {
  if (!doc.is_object()) fail("$", "expected an object");
  const Json& version = field(doc, "format_version", "$");
  if (!version.is_number_integer() || version.get<int>() != kFormatVersion)
    fail("$.format_version", "expected " + std::to_string(kFormatVersion));
  if (!kind_expected.empty() && text_field(doc, "kind", "$") != kind_expected)
    fail("$.kind", "expected '" + kind_expected + "'");
}

}  // namespace

std::string to_string(NetworkKind kind) {
  switch (kind) {
    case NetworkKind::stn: return "stn";
    case NetworkKind::hytn: return "hytn";
    case NetworkKind::cstn: return "cstn";
    case NetworkKind::chytn: return "chytn";
    case NetworkKind::general_chytn: return "general-chytn";
  }
  return "chytn";
}

NetworkKind parse_kind(std::string_view text) {
  for (auto k : {NetworkKind::stn, NetworkKind::hytn, NetworkKind::cstn, NetworkKind::chytn,
                 NetworkKind::general_chytn})
    if (to_string(k) == text) return k;
  throw InputError("unknown network kind '" + std::string(text) + "'");
}

NetworkDocument network_from_json(const Json& doc) {
  check_header(doc, "");
  only_fields(doc, {"format_version", "kind", "nodes", "propositions", "constraints", "multi_tail", "metadata"}, "$");
  NetworkDocument out;
  try {
    out.kind = parse_kind(text_field(doc, "kind", "$"));
  } catch (const InputError& e) {
    fail("$.kind", e.what());
  }

  ChytnBuilder b;
  const Json& nodes = array_field(doc, "nodes", "$");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    std::string p = "$.nodes[" + std::to_string(i) + "]";
    only_fields(nodes[i], {"id", "label"}, p);
    b.node(text_field(nodes[i], "id", p), label_field(nodes[i], p));
  }
  if (doc.contains("propositions")) {
    const Json& props = array_field(doc, "propositions", "$");
    for (std::size_t i = 0; i < props.size(); ++i) {
      std::string p = "$.propositions[" + std::to_string(i) + "]";
      only_fields(props[i], {"name", "observation"}, p);
      b.proposition(text_field(props[i], "name", p), text_field(props[i], "observation", p));
    }
  }
  if (doc.contains("constraints")) {
    const Json& cs = array_field(doc, "constraints", "$");
    for (std::size_t i = 0; i < cs.size(); ++i) {
      std::string p = "$.constraints[" + std::to_string(i) + "]";
      only_fields(cs[i], {"tail", "heads"}, p);
      b.hyperarc(text_field(cs[i], "tail", p), ends_from(array_field(cs[i], "heads", p), p + ".heads"));
    }
  }
  if (doc.contains("multi_tail")) {
    const Json& ms = array_field(doc, "multi_tail", "$");
    for (std::size_t i = 0; i < ms.size(); ++i) {
      std::string p = "$.multi_tail[" + std::to_string(i) + "]";
      only_fields(ms[i], {"tails", "head"}, p);
      b.multi_tail(ends_from(array_field(ms[i], "tails", p), p + ".tails"), text_field(ms[i], "head", p));
    }
  }
  if (doc.contains("metadata")) {
    if (!doc["metadata"].is_object()) fail("$.metadata", "expected an object");
    out.metadata = doc["metadata"];
  }
  out.network = b.build_general();
  enforce_kind(out.kind, out.network);
  return out;
}

NetworkDocument parse_network(std::string_view text) { return network_from_json(parse_json(text)); }

Json network_to_json(const NetworkDocument& doc) {
  const Chytn& net = doc.network.base;
  const auto& props = net.proposition_names();
  Json out;
  out["format_version"] = kFormatVersion;
  out["kind"] = to_string(doc.kind);
  Json nodes = Json::array();
  for (NodeId v = 0; v < net.node_count(); ++v)
    nodes.push_back({{"id", net.node_name(v)}, {"label", format_label(net.node_label(v), props)}});
  out["nodes"] = std::move(nodes);
  Json ps = Json::array();
  for (const auto& p : net.propositions()) ps.push_back({{"name", p.name}, {"observation", net.node_name(p.observation)}});
  out["propositions"] = std::move(ps);
  Json cs = Json::array();
  for (const auto& c : net.constraints())
    cs.push_back({{"tail", net.node_name(c.tail)}, {"heads", ends_to_json(c.heads, net)}});
  out["constraints"] = std::move(cs);
  if (doc.kind == NetworkKind::general_chytn) {
    Json ms = Json::array();
    for (const auto& m : doc.network.multi_tail)
      ms.push_back({{"tails", ends_to_json(m.tails, net)}, {"head", net.node_name(m.head)}});
    out["multi_tail"] = std::move(ms);
  }
  if (!doc.metadata.is_null()) out["metadata"] = doc.metadata;
  return out;
}

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

std::string emit_network(const NetworkDocument& doc) { return dump(network_to_json(doc)); }

NetworkKind infer_kind(const GeneralChytn& g) {
  if (!g.multi_tail.empty()) return NetworkKind::general_chytn;
  const Chytn& net = g.base;
  bool labeled = net.proposition_count() != 0;
  for (NodeId v = 0; v < net.node_count() && !labeled; ++v) labeled = !net.node_label(v).empty();
  for (const auto& c : net.constraints())
    for (const auto& h : c.heads) labeled = labeled || !h.label.empty();
  bool one_head = net.all_one_head();
  if (labeled) return one_head ? NetworkKind::cstn : NetworkKind::chytn;
  return one_head ? NetworkKind::stn : NetworkKind::hytn;
}

NetworkDocument make_document(GeneralChytn net, Json metadata) {
  NetworkKind kind = infer_kind(net);
  return NetworkDocument{kind, std::move(net), std::move(metadata)};
}

NetworkDocument make_document(const Chytn& net, Json metadata) {
  return make_document(GeneralChytn{net, {}}, std::move(metadata));
}

GeneralChytn from_stn(const Stn& g) { return from_hytn(to_hytn(g)); }

GeneralChytn from_hytn(const Hytn& h) {
  ChytnBuilder b;
  for (NodeId v = 0; v < h.node_count(); ++v) b.node(h.name(v));
  for (std::size_t a = 0; a < h.hyperarc_count(); ++a) {
    std::vector<ChytnBuilder::End> ends;
    for (std::size_t k = h.head_begin(a); k < h.head_end(a); ++k)
      ends.push_back({h.name(h.head_at(k)), h.weight_at(k), ""});
    b.hyperarc(h.name(h.tail(a)), std::move(ends));
  }
  return b.build_general();
}

Hytn as_hytn(const GeneralChytn& g) {
  NetworkKind kind = infer_kind(g);
  if (kind != NetworkKind::stn && kind != NetworkKind::hytn)
    throw InputError("network has labels, propositions or multi-tail constraints; it is not a plain hypergraph");
  const Chytn& net = g.base;
  Hytn h(net.node_names());
  std::vector<HeadWeight<Weight>> heads;
  for (const auto& c : net.constraints()) {
    heads.clear();
    for (const auto& e : c.heads) heads.push_back({e.node, e.weight});
    h.add_hyperarc(c.tail, heads);
  }
  return h;
}

Stn as_stn(const GeneralChytn& g) {
  if (infer_kind(g) != NetworkKind::stn) throw InputError("network is not an STN (labels or multi-head constraints)");
  const Chytn& net = g.base;
  Stn out(net.node_names());
  for (const auto& c : net.constraints()) out.add_arc(c.tail, c.heads.front().node, c.heads.front().weight);
  return out;
}

ExecutionStrategy strategy_from_json(const Json& doc, const Chytn& net) {
  check_header(doc, "strategy");
  only_fields(doc, {"format_version", "kind", "epsilon", "propositions", "scenarios"}, "$");
  const auto& names = net.proposition_names();
  const Json& props = array_field(doc, "propositions", "$");
  std::vector<std::string> given;
  for (std::size_t i = 0; i < props.size(); ++i) {
    if (!props[i].is_string()) fail("$.propositions[" + std::to_string(i) + "]", "expected a string");
    given.push_back(props[i].get<std::string>());
  }
  if (given != names) fail("$.propositions", "must list the network's propositions in sorted order");

  ExecutionStrategy sigma = ExecutionStrategy::for_network(net);
  std::vector<char> seen(sigma.scenario_count(), 0);
  const Json& scenarios = array_field(doc, "scenarios", "$");
  for (std::size_t i = 0; i < scenarios.size(); ++i) {
    std::string p = "$.scenarios[" + std::to_string(i) + "]";
    only_fields(scenarios[i], {"scenario", "schedule"}, p);
    Label l;
    try {
      l = parse_label(text_field(scenarios[i], "scenario", p), names);
    } catch (const InputError& e) {
      fail(p + ".scenario", e.what());
    }
    if (l.literal_count() != names.size()) fail(p + ".scenario", "must assign every proposition");
    std::size_t index = Scenario(l.positive_mask(), names.size()).index();
    if (seen[index]) fail(p + ".scenario", "scenario listed twice");
    seen[index] = 1;
    const Json& schedule = field(scenarios[i], "schedule", p);
    if (!schedule.is_object()) fail(p + ".schedule", "expected an object");
    for (auto it = schedule.begin(); it != schedule.end(); ++it) {
      std::string q = p + ".schedule." + it.key();
      auto v = net.find_node(it.key());
      if (!v) fail(q, "unknown node");
      Rational t;
      if (it->is_number_integer()) {
        t = Rational(it->get<std::int64_t>());
      } else if (it->is_string()) {
        try {
          t = parse_rational(it->get<std::string>());
        } catch (const InputError& e) {
          fail(q, e.what());
        }
      } else {
        fail(q, "expected \"N/D\" text or an integer");
      }
      sigma.set(index, *v, t);
    }
  }
  for (std::size_t k = 0; k < seen.size(); ++k)
    if (!seen[k]) fail("$.scenarios", "missing scenario '" + format_scenario(sigma.scenario(k), names) + "'");
  check_strategy_domain(sigma, net);
  return sigma;
}

ExecutionStrategy parse_strategy(std::string_view text, const Chytn& net) {
  return strategy_from_json(parse_json(text), net);
}

Json strategy_to_json(const ExecutionStrategy& sigma, const Chytn& net, const std::optional<Eps>& eps) {
  const auto& names = net.proposition_names();
  Json out;
  out["format_version"] = kFormatVersion;
  out["kind"] = "strategy";
  if (eps) out["epsilon"] = eps->str();
  out["propositions"] = names;
  Json scenarios = Json::array();
  for (std::size_t i = 0; i < sigma.scenario_count(); ++i) {
    Json schedule = Json::object();
    for (NodeId v = 0; v < sigma.node_count(); ++v)
      if (const auto& t = sigma.at(i, v)) schedule[net.node_name(v)] = to_string(*t);
    scenarios.push_back({{"scenario", format_scenario(sigma.scenario(i), names)}, {"schedule", std::move(schedule)}});
  }
  out["scenarios"] = std::move(scenarios);
  return out;
}

std::string emit_strategy(const ExecutionStrategy& sigma, const Chytn& net, const std::optional<Eps>& eps) {
  return dump(strategy_to_json(sigma, net, eps));
}

Json stn_cycle_to_json(const StnCycle& cycle, const Stn& g) {
  Json arcs = Json::array();
  for (const auto& a : cycle.arcs) arcs.push_back({{"tail", g.name(a.tail)}, {"head", g.name(a.head)}, {"weight", a.weight}});
  return {{"format_version", kFormatVersion}, {"kind", "stn-negative-cycle"}, {"total", cycle.total}, {"arcs", arcs}};
}

namespace {

Json hyperarcs_json(const NegativeCycleCert& cert, const Hytn& h) {
  Json arcs = Json::array();
  for (std::size_t a : cert.arcs) {
    Json heads = Json::array();
    for (std::size_t k = h.head_begin(a); k < h.head_end(a); ++k)
      heads.push_back({{"node", h.name(h.head_at(k))}, {"weight", h.weight_at(k)}});
    arcs.push_back({{"index", a}, {"tail", h.name(h.tail(a))}, {"heads", std::move(heads)}});
  }
  return arcs;
}

}  // namespace

Json hytn_cycle_to_json(const NegativeCycleCert& cert, const Hytn& h) {
  Json nodes = Json::array();
  for (NodeId v : cert.nodes) nodes.push_back(h.name(v));
  return {{"format_version", kFormatVersion},
          {"kind", "hytn-negative-cycle"},
          {"nodes", std::move(nodes)},
          {"hyperarcs", hyperarcs_json(cert, h)}};
}

Json dc_refutation_to_json(const DcRefutation& ref, const Eps& eps) {
  Json nodes = Json::array();
  for (NodeId v : ref.local.nodes) nodes.push_back(ref.subnetwork.name(v));
  Json local = hyperarcs_json(ref.local, ref.subnetwork);
  // Indices inside the full H_eps are more useful than subnetwork positions.
  for (std::size_t i = 0; i < local.size(); ++i) local[i]["index"] = ref.cycle.arcs[i];
  return {{"format_version", kFormatVersion},
          {"kind", "dc-negative-cycle"},
          {"epsilon", eps.str()},
          {"scale", ref.scale},
          {"nodes", std::move(nodes)},
          {"hyperarcs", std::move(local)}};
}

}  // namespace tempnet
