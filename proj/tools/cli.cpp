#include "cli.hpp"

#include <algorithm>
#include <sstream>
#include <utility>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ddpp/error.hpp"
#include "ddpp/flow.hpp"
#include "ddpp/gadget.hpp"
#include "ddpp/io.hpp"
#include "ddpp/linker.hpp"
#include "ddpp/oracle.hpp"
#include "ddpp/weave.hpp"

namespace ddpp::cli {

using nlohmann::json;

StructuralOutcome solve_structural(const LinkageInstance& inst, const std::optional<Bramble>& bramble,
                                   const StructuralOptions& options) {
  StructuralOutcome out;
  const Digraph& g = inst.graph;
  Bramble b;
  if (bramble) {
    b = *bramble;
    out.notes += "bramble: sidecar, " + std::to_string(b.size()) + " bags\n";
  } else {
    const int side = options.grid_side.value_or(std::max(2, 2 * inst.k()));
    const Path p = greedy_long_path(g, options.seed);
    out.notes += "long path: " + std::to_string(p.size()) + " vertices\n";
    WeaveConfig wc;
    wc.relaxed = options.relaxed;
    wc.grid_side = side;
    VertexSet x = make_set(p);
    if (options.relaxed) {
      const std::size_t need = 4 * static_cast<std::size_t>(side) * static_cast<std::size_t>(side);
      if (p.size() < need) {
        out.stage = "long-path";
        out.reason = "a bramble of size " + std::to_string(side) + " needs a path on " + std::to_string(need) +
                     " vertices, found " + std::to_string(p.size());
        return out;
      }
      // Too large for the exhaustive well-linkedness check; the bramble
      // built from it is validated instead.
      x = make_set(Path(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(need)));
      out.notes += "well-linked set: first " + std::to_string(need) + " path vertices (unchecked)\n";
    }
    auto built = bramble_from_well_linked(g, p, x, side, wc);
    if (const auto* f = std::get_if<WeaveFailure>(&built)) {
      out.stage = f->stage;
      out.reason = f->reason;
      return out;
    }
    b = std::get<Bramble>(std::move(built));
    out.notes += "bramble: built, " + std::to_string(b.size()) + " bags\n";
  }
  LinkerConfig lc;
  lc.relaxed = options.relaxed;
  SolveReport report = solve_with_bramble(inst, b, lc);
  if (!report.solved()) {
    out.stage = report.failure ? report.failure->stage : "solve";
    out.reason = report.failure ? report.failure->reason : "no solution";
    return out;
  }
  out.solution = std::move(report.solution);
  return out;
}

namespace {

int code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse:
    case ErrorKind::InvalidInput:
      return kUsage;
    case ErrorKind::SizeLimit:
      return kLimit;
    default:
      return kFailed;
  }
}

// Plain mode prints status lines as they come; --json collects them into
// one object printed at the end.
class Reporter {
 public:
  Reporter(std::string command, bool json_mode, std::ostream& out, std::ostream& status)
      : json_(json_mode), out_(out), status_(status) {
    doc_["command"] = std::move(command);
  }

  void note(const std::string& key, json value, const std::string& text) {
    if (json_) {
      doc_[key] = std::move(value);
    } else {
      status_ << text << "\n";
    }
  }

  // Artifacts go to `path` when given, else to stdout (or into the JSON).
  void artifact(const std::string& key, const std::string& text, const std::string& path) {
    if (!path.empty()) {
      write_file(path, text);
      if (json_) doc_[key + "_file"] = path;
    } else if (json_) {
      doc_[key] = text;
    } else {
      out_ << text;
    }
  }

  int finish(int code, const std::string& verdict, const std::string& stage = {}, const std::string& message = {}) {
    if (json_) {
      doc_["verdict"] = verdict;
      doc_["exit_code"] = code;
      if (!stage.empty()) doc_["stage"] = stage;
      if (!message.empty()) doc_["message"] = message;
      out_ << doc_.dump(2) << "\n";
    } else {
      status_ << "verdict: " << verdict;
      if (!stage.empty()) status_ << " (stage " << stage << ")";
      if (!message.empty()) status_ << ": " << message;
      status_ << "\n";
    }
    return code;
  }

 private:
  bool json_;
  std::ostream& out_;
  std::ostream& status_;
  json doc_;
};

std::vector<bool> parse_bits(const std::string& bits, int n) {
  require(static_cast<int>(bits.size()) == n, ErrorKind::InvalidInput,
          "--assign needs " + std::to_string(n) + " bits, got " + std::to_string(bits.size()));
  std::vector<bool> out;
  for (char c : bits) {
    require(c == '0' || c == '1', ErrorKind::InvalidInput, "--assign takes a string of 0 and 1");
    out.push_back(c == '1');
  }
  return out;
}

VertexSet parse_vertex_list(const std::string& text) {
  std::vector<Vertex> out;
  std::stringstream in(text);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    if (tok.empty()) continue;
    try {
      out.push_back(static_cast<Vertex>(std::stol(tok)));
    } catch (const std::exception&) {
      fail(ErrorKind::InvalidInput, "bad vertex '" + tok + "' in list");
    }
  }
  return make_set(std::move(out));
}

std::string to_dot(const LinkageInstance& inst) {
  std::ostringstream out;
  out << "digraph instance {\n";
  for (int i = 0; i < inst.k(); ++i) {
    out << "  " << inst.sources[i] << " [shape=box, xlabel=\"s" << i + 1 << "\"];\n";
    out << "  " << inst.sinks[i] << " [shape=box, xlabel=\"t" << i + 1 << "\"];\n";
  }
  for (const auto& [u, v] : inst.graph.edges()) out << "  " << u << " -> " << v << ";\n";
  out << "}\n";
  return out.str();
}

std::string describe_size(int k) {
  try {
    return std::to_string(required_bramble_size(k));
  } catch (const Error&) {
    return "beyond 64 bits";
  }
}

// ---- subcommands --------------------------------------------------------------------

struct SolveArgs {
  std::string instance;
  std::string mode = "auto";
  int congestion = 2;
  bool relaxed = false;
  std::uint64_t budget = kDefaultBudget;
  std::uint64_t seed = 0;
  std::string bramble;
  std::optional<int> grid_side;
  int size_cap = 40;
  std::string output;
};

int cmd_solve(const SolveArgs& a, Reporter& rep) {
  const LinkageInstance inst = parse_instance(read_file(a.instance));
  std::optional<Bramble> sidecar;
  if (!a.bramble.empty()) sidecar = parse_bramble(read_file(a.bramble));
  rep.note("vertices", inst.graph.vertex_count(), "vertices: " + std::to_string(inst.graph.vertex_count()));
  rep.note("pairs", inst.k(), "pairs: " + std::to_string(inst.k()));

  auto emit = [&](const PathSystem& sol, const std::string& via) {
    const auto check = verify_solution(inst, sol, a.congestion);
    if (!check.ok()) return rep.finish(kFailed, "failed", via, "solution did not verify: " + check.message);
    rep.note("method", via, "method: " + via);
    rep.artifact("solution", format_solution(sol), a.output);
    return rep.finish(kOk, "solved");
  };
  auto oracle = [&]() {
    const OracleResult r = brute_force_linkage(inst, a.congestion, a.budget);
    rep.note("oracle_nodes", r.nodes, "oracle nodes: " + std::to_string(r.nodes));
    switch (r.verdict) {
      case Verdict::Feasible:
        return emit(r.solution, "oracle");
      case Verdict::Infeasible:
        return rep.finish(kFailed, "infeasible", "oracle", "exhaustive search found no linkage at congestion " +
                                                              std::to_string(a.congestion));
      default:
        return rep.finish(kLimit, "budget-exceeded", "oracle",
                          "search budget of " + std::to_string(a.budget) + " nodes exhausted");
    }
  };
  auto structural = [&]() {
    StructuralOptions opt;
    opt.relaxed = a.relaxed;
    opt.seed = a.seed;
    opt.grid_side = a.grid_side;
    StructuralOutcome r = solve_structural(inst, sidecar, opt);
    rep.note("structural_notes", r.notes, r.notes.empty() ? "" : r.notes.substr(0, r.notes.size() - 1));
    return r;
  };

  if (a.mode == "oracle") return oracle();
  if (a.congestion != 2 && a.mode == "structural") {
    return rep.finish(kUsage, "usage", "structural", "structural mode only builds congestion-2 solutions");
  }
  if (a.mode == "structural") {
    const StructuralOutcome r = structural();
    if (r.solution) return emit(*r.solution, "structural");
    return rep.finish(kFailed, "failed", r.stage, r.reason);
  }
  // auto
  std::string stage = "structural";
  std::string reason = "skipped at congestion 1";
  if (a.congestion == 2) {
    try {
      const StructuralOutcome r = structural();
      if (r.solution) return emit(*r.solution, "structural");
      stage = r.stage;
      reason = r.reason;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::SizeLimit && e.kind() != ErrorKind::PreconditionViolation) throw;
      reason = e.what();
    }
    rep.note("structural_failure", json{{"stage", stage}, {"reason", reason}},
             "structural: failed at " + stage + ": " + reason);
  }
  if (inst.graph.vertex_count() <= a.size_cap) return oracle();
  return rep.finish(kFailed, "failed", stage,
                    reason + "; instance exceeds the oracle size cap of " + std::to_string(a.size_cap));
}

int cmd_verify(const std::string& instance, const std::string& solution, int congestion, Reporter& rep) {
  const LinkageInstance inst = parse_instance(read_file(instance));
  const PathSystem sol = parse_solution(read_file(solution));
  const VerifyResult r = verify_solution(inst, sol, congestion);
  if (r.ok()) return rep.finish(kOk, "verified");
  json witness{{"path", r.path_index + 1}};
  if (r.vertex >= 0) witness["vertex"] = r.vertex;
  if (r.edge.first >= 0) witness["edge"] = {r.edge.first, r.edge.second};
  rep.note("witness", witness, "witness: path " + std::to_string(r.path_index + 1));
  return rep.finish(kFailed, "rejected", "verify", r.message);
}

struct AnalyzeArgs {
  std::string instance;
  std::string bramble;
  bool order = false;
  int order_cap = kEnumerationCap;
  std::string well_linked;
  std::vector<int> thresholds;
  std::string dot;
};

int cmd_analyze(const AnalyzeArgs& a, Reporter& rep) {
  if (!a.thresholds.empty()) {
    const int k = a.thresholds[0];
    const int t = a.thresholds[1];
    require(k >= 1 && t >= 1, ErrorKind::InvalidInput, "--thresholds needs k >= 1 and t >= 1");
    const long long conn = 36LL * k * k * k + 2LL * k;
    rep.note("connectivity", conn, "strong connectivity for k = " + std::to_string(k) + ": " + std::to_string(conn));
    const std::string size = describe_size(k);
    rep.note("bramble_size", size, "bramble size for k = " + std::to_string(k) + ": " + size);
    const auto add = [&](const std::string& key, const std::string& label, const Magnitude& m) {
      rep.note(key, m.describe(), label + ": " + m.describe());
    };
    add("uncross_pair", "single-linkage uncrossing, k = " + std::to_string(k) + ", t = " + std::to_string(t),
        uncross_pair_threshold(k, t));
    add("uncross_two", "two-linkage uncrossing, k = " + std::to_string(k) + ", t = " + std::to_string(t),
        uncross_two_threshold(k, t));
    add("grid_side", "block grid side, t = " + std::to_string(t), grid_side_threshold(t));
    add("well_linked", "well-linked set, t = " + std::to_string(t), well_linked_threshold(t));
    if (a.instance.empty()) return rep.finish(kOk, "reported");
  }
  require(!a.instance.empty(), ErrorKind::InvalidInput, "analyze needs an instance file");
  const LinkageInstance inst = parse_instance(read_file(a.instance));
  const Digraph& g = inst.graph;
  rep.note("vertices", g.vertex_count(), "vertices: " + std::to_string(g.vertex_count()));
  rep.note("edges", g.edge_count(), "edges: " + std::to_string(g.edge_count()));
  rep.note("pairs", inst.k(), "pairs: " + std::to_string(inst.k()));
  const int conn = strong_connectivity(g);
  rep.note("strong_connectivity", conn, "strong connectivity: " + std::to_string(conn));
  if (!a.bramble.empty()) {
    const Bramble b = parse_bramble(read_file(a.bramble));
    const BrambleCheck check = validate_bramble(g, b);
    json info{{"valid", check.ok}, {"size", b.size()}, {"depth", depth(b)}};
    std::string text = check.ok ? "valid" : "invalid (" + check.message + ")";
    text += ", size " + std::to_string(b.size()) + ", depth " + std::to_string(depth(b));
    if (a.order && check.ok) {
      const int order = bramble_order(g, b, a.order_cap);
      info["order"] = order;
      text += ", order " + std::to_string(order);
    }
    rep.note("bramble", info, "bramble: " + text);
  }
  if (!a.well_linked.empty()) {
    const VertexSet x = parse_vertex_list(a.well_linked);
    for (Vertex v : x) require(g.valid(v), ErrorKind::InvalidInput, "vertex out of range in --well-linked");
    const bool ok = is_well_linked(g, x);
    rep.note("well_linked", ok, std::string("well-linked: ") + (ok ? "yes" : "no"));
  }
  if (!a.dot.empty()) write_file(a.dot, to_dot(inst));
  return rep.finish(kOk, "reported");
}

int cmd_gen_grid(int r, const std::string& output, const std::string& bramble_out, Reporter& rep) {
  require(r >= 2, ErrorKind::InvalidInput, "--order must be at least 2");
  require(r <= 1000, ErrorKind::SizeLimit, "--order above 1000");
  const Grid grid = gen_grid(r);
  std::vector<std::string> comments;
  for (int i = 1; i <= 2 * r; ++i) {
    for (int j = 1; j <= r; ++j) {
      comments.push_back("label " + std::to_string(i) + " " + std::to_string(j) + " -> " +
                         std::to_string(grid.labels.vertex(i, j)));
    }
  }
  rep.artifact("instance", format_instance(LinkageInstance(grid.graph, {}, {}), comments), output);
  if (!bramble_out.empty()) write_file(bramble_out, format_bramble(grid_bramble(grid.graph, grid.labels)));
  return rep.finish(kOk, "generated");
}

CnfFormula load_cnf(const std::string& path, bool pad) { return parse_dimacs(read_file(path), pad); }

int cmd_gen_gadget(const std::string& cnf, const std::string& epsilon, bool pad, const std::string& output,
                   Reporter& rep) {
  const CnfFormula f = load_cnf(cnf, pad);
  const Gadget gadget = build_gadget(f, parse_rational(epsilon));
  const GadgetLayout& L = gadget.layout;
  std::vector<std::string> comments{"gadget n " + std::to_string(L.n) + " m " + std::to_string(L.m) + " k' " +
                                    std::to_string(L.k_prime) + " M " + std::to_string(L.w_count)};
  for (const auto& [name, v] : L.roles()) comments.push_back("role " + name + " -> " + std::to_string(v));
  rep.note("k", L.k, "pairs: " + std::to_string(L.k) + " (k' = " + std::to_string(L.k_prime) +
                         ", M = " + std::to_string(L.w_count) + ")");
  rep.artifact("instance", format_instance(gadget.instance, comments), output);
  return rep.finish(kOk, "generated");
}

int cmd_encode(const std::string& cnf, const std::string& bits, const std::string& epsilon, bool pad,
               const std::string& output, Reporter& rep) {
  const CnfFormula f = load_cnf(cnf, pad);
  const Gadget gadget = build_gadget(f, parse_rational(epsilon));
  const PathSystem sol = encode_assignment(gadget, f, parse_bits(bits, f.variable_count));
  rep.artifact("solution", format_solution(sol), output);
  return rep.finish(kOk, "encoded");
}

int cmd_reduce_double(const std::string& instance, const std::string& output, Reporter& rep) {
  const LinkageInstance inst = parse_instance(read_file(instance));
  const DoubledInstance d = reduce_half_to_integral(inst);
  const int n = inst.graph.vertex_count();
  rep.artifact("instance",
               format_instance(d.instance, {"doubled: vertex v has copy v + " + std::to_string(n) +
                                            "; sinks moved to their copies"}),
               output);
  return rep.finish(kOk, "reduced");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Half-integral directed disjoint paths toolkit"};
  app.require_subcommand(1);
  bool json_mode = false;
  app.add_flag("--json", json_mode, "Machine-readable verdict on stdout");

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Find a linkage for an instance");
  solve_cmd->add_option("instance", solve.instance, "Instance file")->required();
  solve_cmd->add_option("--mode", solve.mode, "oracle, structural or auto")
      ->check(CLI::IsMember({"oracle", "structural", "auto"}));
  solve_cmd->add_option("--congestion", solve.congestion, "Paths allowed per vertex")->check(CLI::Range(1, 2));
  solve_cmd->add_flag("--relaxed", solve.relaxed, "Run the structural stages below their thresholds");
  solve_cmd->add_option("--budget", solve.budget, "Oracle search-node budget");
  solve_cmd->add_option("--seed", solve.seed, "Seed for the long-path restarts");
  solve_cmd->add_option("--bramble", solve.bramble, "Bramble sidecar file");
  solve_cmd->add_option("--grid-side", solve.grid_side, "Bramble size to build")->check(CLI::Range(2, 1000));
  solve_cmd->add_option("--size-cap", solve.size_cap, "Largest vertex count for the oracle fallback");
  solve_cmd->add_option("-o,--output", solve.output, "Write the solution here");

  std::string v_instance, v_solution;
  int v_congestion = 2;
  auto* verify_cmd = app.add_subcommand("verify", "Check a solution file");
  verify_cmd->add_option("instance", v_instance, "Instance file")->required();
  verify_cmd->add_option("solution", v_solution, "Solution file")->required();
  verify_cmd->add_option("--congestion", v_congestion, "Paths allowed per vertex")->check(CLI::Range(1, 2));

  AnalyzeArgs analyze;
  auto* analyze_cmd = app.add_subcommand("analyze", "Report connectivity, bramble and well-linkedness facts");
  analyze_cmd->add_option("instance", analyze.instance, "Instance file");
  analyze_cmd->add_option("--bramble", analyze.bramble, "Bramble sidecar to validate");
  analyze_cmd->add_flag("--order", analyze.order, "Also compute the bramble order exactly");
  analyze_cmd->add_option("--order-cap", analyze.order_cap, "Largest cover size to search");
  analyze_cmd->add_option("--well-linked", analyze.well_linked, "Comma-separated vertices to test");
  analyze_cmd->add_option("--thresholds", analyze.thresholds, "Print strict thresholds for k and t")
      ->expected(2);
  analyze_cmd->add_option("--dot", analyze.dot, "Write a Graphviz rendering of the instance");

  auto* gen_cmd = app.add_subcommand("gen", "Generate instances");
  gen_cmd->require_subcommand(1);
  int grid_order = 0;
  std::string grid_out, grid_bramble_out;
  auto* grid_cmd = gen_cmd->add_subcommand("grid", "Directed grid J_r with label comments");
  grid_cmd->add_option("--order", grid_order, "r")->required();
  grid_cmd->add_option("-o,--output", grid_out, "Instance file");
  grid_cmd->add_option("--bramble-out", grid_bramble_out, "Write the grid bramble sidecar here");

  std::string cnf, epsilon = "1/2", gadget_out;
  bool pad = false;
  auto* gadget_cmd = gen_cmd->add_subcommand("gadget", "Hardness gadget of a 3-CNF formula");
  gadget_cmd->add_option("--cnf", cnf, "DIMACS file")->required();
  gadget_cmd->add_option("--epsilon", epsilon, "p/q in (0, 1)");
  gadget_cmd->add_flag("--pad", pad, "Accept short clauses by repeating their last literal");
  gadget_cmd->add_option("-o,--output", gadget_out, "Instance file");

  std::string e_cnf, e_bits, e_epsilon = "1/2", e_out;
  bool e_pad = false;
  auto* encode_cmd = app.add_subcommand("encode-assignment", "Linkage of the gadget from an assignment");
  encode_cmd->add_option("--cnf", e_cnf, "DIMACS file")->required();
  encode_cmd->add_option("--assign", e_bits, "Bit string, variable 1 first")->required();
  encode_cmd->add_option("--epsilon", e_epsilon, "p/q in (0, 1)");
  encode_cmd->add_flag("--pad", e_pad, "Accept short clauses by repeating their last literal");
  encode_cmd->add_option("-o,--output", e_out, "Solution file");

  auto* reduce_cmd = app.add_subcommand("reduce", "Instance transformations");
  reduce_cmd->require_subcommand(1);
  std::string r_instance, r_out;
  auto* double_cmd = reduce_cmd->add_subcommand("double", "Half-integral to integral by vertex doubling");
  double_cmd->add_option("instance", r_instance, "Instance file")->required();
  double_cmd->add_option("-o,--output", r_out, "Instance file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  std::string name = "unknown";
  for (auto* sub : {solve_cmd, verify_cmd, analyze_cmd, grid_cmd, gadget_cmd, encode_cmd, double_cmd}) {
    if (sub->parsed()) name = sub->get_name();
  }
  // Artifacts own stdout in plain mode, so status lines go to stderr there.
  const bool artifact_cmd = name != "verify" && name != "analyze";
  Reporter rep(name, json_mode, out, json_mode || !artifact_cmd ? out : err);
  try {
    if (solve_cmd->parsed()) return cmd_solve(solve, rep);
    if (verify_cmd->parsed()) return cmd_verify(v_instance, v_solution, v_congestion, rep);
    if (analyze_cmd->parsed()) return cmd_analyze(analyze, rep);
    if (grid_cmd->parsed()) return cmd_gen_grid(grid_order, grid_out, grid_bramble_out, rep);
    if (gadget_cmd->parsed()) return cmd_gen_gadget(cnf, epsilon, pad, gadget_out, rep);
    if (encode_cmd->parsed()) return cmd_encode(e_cnf, e_bits, e_epsilon, e_pad, e_out, rep);
    if (double_cmd->parsed()) return cmd_reduce_double(r_instance, r_out, rep);
  } catch (const ParseError& e) {
    return rep.finish(kUsage, "parse-error", {}, e.what());
  } catch (const Error& e) {
    const int code = code_for(e.kind());
    const char* verdict = code == kLimit ? "size-limit" : code == kUsage ? "usage" : "failed";
    return rep.finish(code, verdict, {}, e.what());
  }
  return kUsage;
}

}  // namespace ddpp::cli
