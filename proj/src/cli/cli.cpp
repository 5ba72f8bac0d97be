#include "tempnet/cli.hpp"

#include <chrono>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "tempnet/dc_checker.hpp"
#include "tempnet/errors.hpp"
#include "tempnet/generators.hpp"
#include "tempnet/hytn_solver.hpp"
#include "tempnet/io.hpp"
#include "tempnet/stn_solver.hpp"
#include "tempnet/verify.hpp"

namespace tempnet {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << text;
  if (!out) throw InputError("write to '" + path + "' failed");
}

// Options shared across subcommands; CLI11 binds into these.
struct Settings {
  std::string input;
  std::string out_path;
  bool json = false;
  std::string eps_text;
  std::int64_t max_denominator = 64;
  std::string strategy_path;

  // generators
  int variables = 0;
  std::string clauses;
  std::string prefix;
  int gamma = 1;
  RandomChytnParams random;
  std::string random_kind = "chytn";
  std::size_t hyperarcs = 8;
};

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

std::string elapsed_line(const Timer& t) {
  std::ostringstream s;
  s << "elapsed: " << std::fixed << std::setprecision(3) << t.seconds() << " s\n";
  return s.str();
}

Json report_header(const std::string& command) {
  Json r;
  r["format_version"] = kFormatVersion;
  r["command"] = command;
  return r;
}

Json sizes_json(const DcSizes& s) {
  return {{"scenarios", s.scenarios},
          {"nodes", s.nodes},
          {"hyperarcs", s.hyperarcs},
          {"alpha_hyperarcs", s.alpha_hyperarcs},
          {"head_entries", s.head_entries}};
}

Json stats_json(const HytnStats& s) {
  return {{"lifts", s.lifts}, {"cycle_searches", s.cycle_searches}, {"bound", s.bound}};
}

class Runner {
 public:
  Runner(const Settings& settings, std::ostream& out) : s_(settings), out_(out) {}

  int check_stn() {
    Timer timer;
    Stn g = as_stn(load().network);
    StnVerdict v = tempnet::check_stn(g);
    Json r = report_header("check-stn");
    r["verdict"] = v.consistent() ? "consistent" : "inconsistent";
    r["sizes"] = {{"nodes", g.node_count()}, {"arcs", g.arcs().size()}};
    std::ostringstream human;
    human << "STN with " << g.node_count() << " nodes and " << g.arcs().size() << " arcs: ";
    if (v.consistent()) {
      Json sched = Json::object();
      human << "consistent\nfeasible potential (a schedule):\n";
      for (NodeId x = 0; x < g.node_count(); ++x) {
        sched[g.name(x)] = v.potential()[x];
        human << "  " << g.name(x) << " = " << v.potential()[x] << "\n";
      }
      r["schedule"] = std::move(sched);
    } else {
      r["certificate"] = stn_cycle_to_json(v.cycle(), g);
      human << "inconsistent\nnegative cycle of total weight " << v.cycle().total << ":\n";
      for (const auto& a : v.cycle().arcs)
        human << "  " << g.name(a.tail) << " -> " << g.name(a.head) << "  (" << a.weight << ")\n";
    }
    emit(r, human.str(), timer);
    return v.consistent() ? kExitOk : kExitRefuted;
  }

  int check_hytn() {
    Timer timer;
    Hytn h = as_hytn(load().network);
    HytnVerdict v = tempnet::check_hytn(h);
    Json r = report_header("check-hytn");
    r["verdict"] = v.consistent() ? "consistent" : "inconsistent";
    r["sizes"] = {{"nodes", h.node_count()}, {"hyperarcs", h.hyperarc_count()}, {"head_entries", h.head_entry_count()}};
    r["solver"] = stats_json(v.stats);
    std::ostringstream human;
    human << "HyTN with " << h.node_count() << " nodes and " << h.hyperarc_count() << " hyperarcs: ";
    if (v.consistent()) {
      Json sched = Json::object();
      human << "consistent\nleast nonnegative schedule:\n";
      for (NodeId x = 0; x < h.node_count(); ++x) {
        sched[h.name(x)] = v.schedule()[x];
        human << "  " << h.name(x) << " = " << v.schedule()[x] << "\n";
      }
      r["schedule"] = std::move(sched);
    } else {
      r["certificate"] = hytn_cycle_to_json(v.cycle(), h);
      human << "inconsistent\nnegative cycle over {";
      for (std::size_t i = 0; i < v.cycle().nodes.size(); ++i)
        human << (i ? ", " : "") << h.name(v.cycle().nodes[i]);
      human << "}\n";
      describe_hyperarcs(human, h, v.cycle().arcs);
    }
    emit(r, human.str(), timer);
    return v.consistent() ? kExitOk : kExitRefuted;
  }

  int check_dc(bool with_eps) {
    Timer timer;
    NetworkDocument doc = load();
    require_multi_head(doc.network);
    const Chytn& net = doc.network.base;
    DcVerdict v = with_eps ? tempnet::check_eps_dc(net, Eps::parse(s_.eps_text)) : tempnet::check_dc(net);
    Json r = report_header(with_eps ? "check-eps-dc" : "check-dc");
    r["epsilon"] = v.eps.str();
    r["verdict"] = v.dc() ? "dc" : "not-dc";
    r["sizes"] = sizes_json(v.sizes);
    r["solver"] = stats_json(v.solver_stats);
    std::ostringstream human;
    human << (with_eps ? "eps-dynamic consistency" : "dynamic consistency") << " at eps = " << v.eps.str() << ": "
          << (v.dc() ? "yes" : "no") << "\n";
    human << "H_eps: " << v.sizes.scenarios << " scenarios, " << v.sizes.nodes << " nodes, " << v.sizes.hyperarcs
          << " hyperarcs (" << v.sizes.alpha_hyperarcs << " reaction-time)\n";
    if (v.dc()) {
      Json strategy = strategy_to_json(v.strategy(), net, v.eps);
      if (!s_.out_path.empty()) {
        write_file(s_.out_path, dump(strategy));
        human << "strategy written to " << s_.out_path << "\n";
      }
      r["strategy"] = std::move(strategy);
      human << "strategy by scenario:\n" << render_strategy_table(v.strategy(), net);
      human << "decision tree:\n" << render_decision_tree(v.strategy(), net);
    } else {
      Json cert = dc_refutation_to_json(v.refutation(), v.eps);
      if (!s_.out_path.empty()) {
        write_file(s_.out_path, dump(cert));
        human << "certificate written to " << s_.out_path << "\n";
      }
      r["certificate"] = std::move(cert);
      const auto& ref = v.refutation();
      human << "negative cycle in H_eps (weights scaled by " << ref.scale << "), " << ref.local.nodes.size()
            << " nodes:\n";
      describe_hyperarcs(human, ref.subnetwork, ref.local.arcs);
    }
    emit(r, human.str(), timer);
    return v.dc() ? kExitOk : kExitRefuted;
  }

  int eps_bracket() {
    Timer timer;
    NetworkDocument doc = load();
    require_multi_head(doc.network);
    if (s_.max_denominator < 1) throw InputError("--max-denominator must be positive");
    EpsBracket b = eps_hat_bounds(doc.network.base, s_.max_denominator);
    Json r = report_header("eps-bracket");
    const char* status = b.status == BracketStatus::not_dc      ? "not-dc"
                         : b.status == BracketStatus::bracketed ? "bracketed"
                         : b.status == BracketStatus::unbounded ? "unbounded"
                                                                : "partial";
    r["status"] = status;
    r["max_denominator"] = s_.max_denominator;
    r["lo"] = b.lo ? Json(b.lo->str()) : Json(nullptr);
    r["hi"] = b.hi ? Json(b.hi->str()) : Json(nullptr);
    r["checks"] = b.checks;
    Json probes = Json::array();
    for (const auto& [e, yes] : b.probes) probes.push_back({{"epsilon", e.str()}, {"dc", yes}});
    r["probes"] = std::move(probes);
    std::ostringstream human;
    human << "reaction-time bracket (" << status << "): ";
    human << "lo = " << (b.lo ? b.lo->str() : "none") << ", hi = " << (b.hi ? b.hi->str() : "none") << " after "
          << b.checks << " checks\n";
    for (const auto& [e, yes] : b.probes) human << "  eps = " << e.str() << ": " << (yes ? "yes" : "no") << "\n";
    emit(r, human.str(), timer);
    return b.status == BracketStatus::not_dc ? kExitRefuted : kExitOk;
  }

  int verify_strategy() {
    Timer timer;
    NetworkDocument doc = load();
    require_multi_head(doc.network);
    const Chytn& net = doc.network.base;
    ExecutionStrategy sigma = parse_strategy(read_file(s_.strategy_path), net);
    ViabilityReport via = viable(sigma, net);
    DynamicReport dyn = dynamic(sigma, net);
    std::optional<DynamicReport> eps_dyn;
    if (!s_.eps_text.empty()) eps_dyn = eps_dynamic(sigma, net, Eps::parse(s_.eps_text));
    bool ok = via.ok && dyn.ok && (!eps_dyn || eps_dyn->ok);

    Json r = report_header("verify-strategy");
    r["verdict"] = ok ? "verified" : "refuted";
    r["viable"] = via.ok;
    r["dynamic"] = dyn.ok;
    if (eps_dyn) {
      r["epsilon"] = Eps::parse(s_.eps_text).str();
      r["eps_dynamic"] = eps_dyn->ok;
    }
    Json violations = Json::array();
    for (const auto& x : via.violations) violations.push_back({{"rule", "viability"}, {"message", x.message}});
    std::ostringstream human;
    human << "viable: " << (via.ok ? "yes" : "no") << "\n";
    for (const auto& x : via.violations) human << "  " << x.message << "\n";
    auto witness = [&](const char* rule, const DynamicReport& d) {
      human << rule << ": " << (d.ok ? "yes" : "no") << "\n";
      if (d.ok || !d.witness) return;
      const auto& names = net.proposition_names();
      std::string msg = "node '" + net.node_name(d.witness->u) + "' under '" +
                        format_scenario(sigma.scenario(d.witness->s1), names) + "' against '" +
                        format_scenario(sigma.scenario(d.witness->s2), names) + "'";
      human << "  witness: " << msg << "\n";
      violations.push_back({{"rule", rule},
                            {"node", net.node_name(d.witness->u)},
                            {"s1", format_scenario(sigma.scenario(d.witness->s1), names)},
                            {"s2", format_scenario(sigma.scenario(d.witness->s2), names)},
                            {"message", msg}});
    };
    witness("dynamic", dyn);
    if (eps_dyn) witness("eps-dynamic", *eps_dyn);
    r["violations"] = std::move(violations);
    emit(r, human.str(), timer);
    return ok ? kExitOk : kExitRefuted;
  }

  int validate() {
    Timer timer;
    NetworkDocument doc = load();
    auto violations = validate_wd(doc.network);
    Json r = report_header("validate");
    r["kind"] = to_string(doc.kind);
    r["verdict"] = violations.empty() ? "valid" : "invalid";
    Json vs = Json::array();
    std::ostringstream human;
    human << to_string(doc.kind) << " with " << doc.network.base.node_count() << " nodes: "
          << (violations.empty() ? "well-defined" : "not well-defined") << "\n";
    for (const auto& v : violations) {
      vs.push_back({{"rule", v.rule}, {"where", v.constraint}, {"proposition", v.proposition}, {"message", v.message}});
      human << "  " << v.rule << " at " << v.constraint << ": " << v.message << "\n";
    }
    for (const auto& note : doc.network.base.notes()) human << "  note: " << note << "\n";
    r["violations"] = std::move(vs);
    emit(r, human.str(), timer);
    return violations.empty() ? kExitOk : kExitInput;
  }

  int generate(const std::string& family) {
    NetworkDocument doc;
    if (family == "sat") {
      Cnf phi = parse_cnf(s_.variables, s_.clauses);
      doc = make_document(gen_sat_cstn(phi), {{"generator", "sat"}, {"variables", s_.variables}, {"clauses", s_.clauses}});
    } else if (family == "tqbf") {
      Qbf phi = parse_qbf(s_.prefix, s_.clauses);
      doc = make_document(gen_tqbf_chytn(phi), {{"generator", "tqbf"}, {"prefix", s_.prefix}, {"clauses", s_.clauses}});
      doc.kind = NetworkKind::general_chytn;
    } else if (family == "gamma-n") {
      doc = make_document(gen_gamma_n(s_.gamma), {{"generator", "gamma-n"}, {"n", s_.gamma}});
    } else {
      const auto& p = s_.random;
      Json meta = {{"generator", "random"}, {"kind", s_.random_kind}, {"seed", p.seed}, {"nodes", p.nodes}};
      if (s_.random_kind == "chytn") {
        meta["propositions"] = p.propositions;
        meta["density"] = p.density;
        meta["max_weight"] = p.max_weight;
        meta["max_heads"] = p.max_heads;
        doc = make_document(gen_random_chytn(p), std::move(meta));
      } else if (s_.random_kind == "hytn") {
        meta["hyperarcs"] = s_.hyperarcs;
        meta["max_weight"] = p.max_weight;
        meta["max_heads"] = p.max_heads;
        doc = make_document(from_hytn(gen_random_hytn({p.seed, p.nodes, s_.hyperarcs, p.max_heads, p.max_weight})),
                            std::move(meta));
        doc.kind = NetworkKind::hytn;
      } else if (s_.random_kind == "stn") {
        meta["arcs"] = s_.hyperarcs;
        meta["max_weight"] = p.max_weight;
        doc = make_document(from_stn(gen_random_stn({p.seed, p.nodes, s_.hyperarcs, p.max_weight})), std::move(meta));
        doc.kind = NetworkKind::stn;
      } else {
        throw InputError("--kind must be chytn, hytn or stn");
      }
    }
    std::string text = emit_network(doc);
    if (!s_.out_path.empty())
      write_file(s_.out_path, text);
    else
      out_ << text;
    return kExitOk;
  }

 private:
  NetworkDocument load() { return parse_network(read_file(s_.input)); }

  template <typename Arcs>
  void describe_hyperarcs(std::ostream& human, const Hytn& h, const Arcs& arcs) {
    for (std::size_t a : arcs) {
      human << "  " << h.name(h.tail(a)) << " >= min(";
      for (std::size_t k = h.head_begin(a); k < h.head_end(a); ++k)
        human << (k > h.head_begin(a) ? ", " : "") << h.name(h.head_at(k)) << " - (" << h.weight_at(k) << ")";
      human << ")\n";
    }
  }

  void emit(const Json& report, const std::string& human, const Timer& timer) {
    if (s_.json)
      out_ << dump(report);
    else
      out_ << human << elapsed_line(timer);
  }

  const Settings& s_;
  std::ostream& out_;
};

int report_error(const std::string& command, bool json, const char* cls, const std::string& message, int code,
                 std::ostream& out, std::ostream& err) {
  err << "error (" << cls << "): " << message << "\n";
  if (json) {
    Json r = report_header(command);
    r["verdict"] = "error";
    r["error"] = {{"class", cls}, {"message", message}, {"exit_code", code}};
    out << dump(r);
  }
  return code;
}

}  // namespace

ErrorClass classify_error(const std::exception& e) {
  if (dynamic_cast<const InputError*>(&e)) return {"input", kExitInput};
  if (dynamic_cast<const ResourceError*>(&e)) return {"resource", kExitResource};
  if (dynamic_cast<const InvariantError*>(&e)) return {"invariant", kExitInvariant};
  if (dynamic_cast<const Json::exception*>(&e)) return {"input", kExitInput};
  if (dynamic_cast<const std::bad_alloc*>(&e)) return {"resource", kExitResource};
  return {"invariant", kExitInvariant};
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Settings s;
  CLI::App app{"Consistency checking for temporal networks: STN, HyTN and conditional HyTN", "tempnet"};
  app.require_subcommand(1);

  auto with_input = [&](CLI::App* sub) {
    sub->add_option("network", s.input, "network document (JSON)")->required();
    sub->add_flag("--json", s.json, "print the machine-readable report");
  };
  auto* stn = app.add_subcommand("check-stn", "STN consistency with a potential or negative-cycle certificate");
  with_input(stn);
  auto* hytn = app.add_subcommand("check-hytn", "multi-head HyTN consistency");
  with_input(hytn);
  auto* dc = app.add_subcommand("check-dc", "dynamic consistency of a conditional network");
  with_input(dc);
  dc->add_option("--out", s.out_path, "write the strategy or certificate document here");
  auto* edc = app.add_subcommand("check-eps-dc", "eps-dynamic consistency for a given reaction time");
  with_input(edc);
  edc->add_option("--eps", s.eps_text, "reaction time N/D")->required();
  edc->add_option("--out", s.out_path, "write the strategy or certificate document here");
  auto* bracket = app.add_subcommand("eps-bracket", "bracket the largest reaction time");
  with_input(bracket);
  bracket->add_option("--max-denominator", s.max_denominator, "largest denominator probed")->required();
  auto* verify = app.add_subcommand("verify-strategy", "check a strategy for viability and dynamicity");
  with_input(verify);
  verify->add_option("--strategy", s.strategy_path, "strategy document")->required();
  verify->add_option("--eps", s.eps_text, "also check eps-dynamicity");
  auto* validate = app.add_subcommand("validate", "parse and check well-definedness");
  with_input(validate);

  auto* gen = app.add_subcommand("gen", "generate an instance family");
  gen->require_subcommand(1);
  auto gen_common = [&](CLI::App* sub) { sub->add_option("--out", s.out_path, "output file (default stdout)"); };
  auto* sat = gen->add_subcommand("sat", "3-SAT gadget");
  sat->add_option("--vars", s.variables, "number of variables")->required();
  sat->add_option("--clauses", s.clauses, "clauses, e.g. \"1 -2 3, -1 2\"")->required();
  gen_common(sat);
  auto* tqbf = gen->add_subcommand("tqbf", "TQBF gadget (multi-tail)");
  tqbf->add_option("--prefix", s.prefix, "quantifiers, e.g. \"A E\"")->required();
  tqbf->add_option("--clauses", s.clauses, "clauses, e.g. \"1 -2, -1 2\"")->required();
  gen_common(tqbf);
  auto* gamma = gen->add_subcommand("gamma-n", "reaction-time family with 3n propositions");
  gamma->add_option("--n", s.gamma, "family index")->required();
  gen_common(gamma);
  auto* random = gen->add_subcommand("random", "seeded random network");
  random->add_option("--kind", s.random_kind, "chytn, hytn or stn");
  random->add_option("--seed", s.random.seed, "seed");
  random->add_option("--nodes", s.random.nodes, "node count");
  random->add_option("--props", s.random.propositions, "proposition count (chytn)");
  random->add_option("--density", s.random.density, "constraint probability per ordered pair (chytn)");
  random->add_option("--max-weight", s.random.max_weight, "weights drawn from [-W, W]");
  random->add_option("--max-heads", s.random.max_heads, "heads per constraint");
  random->add_option("--arcs", s.hyperarcs, "arc or hyperarc count (stn, hytn)");
  gen_common(random);

  std::string command = args.empty() ? "" : args.front();
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  Runner runner(s, out);
  try {
    if (*stn) return runner.check_stn();
    if (*hytn) return runner.check_hytn();
    if (*dc) return runner.check_dc(false);
    if (*edc) return runner.check_dc(true);
    if (*bracket) return runner.eps_bracket();
    if (*verify) return runner.verify_strategy();
    if (*validate) return runner.validate();
    for (auto* sub : {sat, tqbf, gamma, random})
      if (*sub) return runner.generate(sub->get_name());
  } catch (const std::exception& e) {
    ErrorClass c = classify_error(e);
    return report_error(command, s.json, c.name, e.what(), c.exit_code, out, err);
  }
  return kExitInput;
}

}  // namespace tempnet
