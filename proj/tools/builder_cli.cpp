#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "builder/config.hpp"
#include "builder/harness.hpp"
#include "builder/oracles.hpp"

using namespace builder;

namespace {

enum Exit : int {
  kOk = 0,
  kUsage = 2,
  kConfig = 3,
  kEdgeList = 4,
  kParameter = 5,
  kInvalidWitness = 6,
  kSizeLimit = 7,
  kInternal = 8,
};

const char* kExitCodes =
    "Exit codes:\n"
    "  0  success\n"
    "  2  usage error (unknown verb, unknown or missing flag)\n"
    "  3  unreadable or malformed config file\n"
    "  4  malformed or unreadable edge list or witness file\n"
    "  5  invalid parameter value\n"
    "  6  witness failed validation\n"
    "  7  input exceeds an exact oracle's size limit\n"
    "  8  internal error\n"
    "Worker count: --jobs, else the BUILDER_JOBS environment variable, else all cores.";

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string config;
  std::string out;
  std::string seeds;
  unsigned jobs = 0;
  std::int64_t n = 0;
  std::string strategy;
  std::string t;
  std::string b;
  std::vector<std::string> params;
  std::string cross_check;
  double timeout = 0.0;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--config", c.config, "experiment config file (INI)");
  cmd->add_option("--out", c.out, "output CSV path (default: stdout)");
  cmd->add_option("--seeds", c.seeds, "seeds as base:count or a comma list");
  cmd->add_option("--jobs", c.jobs, "worker threads");
  cmd->add_option("--n", c.n, "number of vertices");
  cmd->add_option("--strategy", c.strategy, "strategy name");
  cmd->add_option("--t", c.t, "time cap: integer, n:c, nlogn:c, pow:x, hitting:mindeg:k, hitting:connected");
  cmd->add_option("--b", c.b, "budget: integer, n:c, nlogn:c, pow:x, or t");
  cmd->add_option("--param", c.params, "strategy parameter key=value (repeatable)");
  cmd->add_option("--cross-check", c.cross_check, "off or small_n");
  cmd->add_option("--timeout", c.timeout, "per-trial wall-time cap in seconds");
}

ConfigFile load_with_overrides(const Common& c) {
  ConfigFile file = c.config.empty() ? ConfigFile{} : load_config(c.config);
  auto& e = file.experiment;
  try {
    if (!c.strategy.empty()) {
      if (e.strategy.name != c.strategy) e.strategy.params.clear();
      e.strategy.name = c.strategy;
    }
    if (c.n > 0) e.n = c.n;
    if (!c.t.empty()) e.t = parse_quantity(c.t);
    if (!c.b.empty()) e.b = parse_quantity(c.b);
    if (!c.seeds.empty()) e.seeds = parse_seeds(c.seeds);
    if (!c.cross_check.empty()) e.cross_check = parse_cross_check(c.cross_check);
    if (c.timeout > 0.0) e.timeout_seconds = c.timeout;
    for (const auto& kv : c.params) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos || eq == 0) throw InvalidParameter("--param expects key=value, got '" + kv + "'");
      e.strategy.params[kv.substr(0, eq)] = kv.substr(eq + 1);
    }
  } catch (const InvalidParameter& err) {
    throw ConfigError(err.what());
  }
  return file;
}

template <typename Writer>
void emit(const std::string& path, Writer&& write) {
  if (path.empty()) {
    write(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  write(out);
}

PurchasedGraph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw EdgeListError("cannot read edge list '" + path + "'");
  return read_edge_list(in);
}

std::vector<Vertex> parse_vertex_list(const std::string& s) {
  std::vector<Vertex> out;
  if (s.empty()) return out;
  for (const auto& x : parse_seeds(s)) out.push_back(static_cast<Vertex>(x));
  return out;
}

std::string edge_text(Edge e) { return "(" + std::to_string(e.u) + "," + std::to_string(e.v) + ")"; }

std::string vertex_text(const std::vector<Vertex>& vs) {
  std::string s;
  for (Vertex v : vs) s += (s.empty() ? "" : " ") + std::to_string(v);
  return s;
}

int cmd_run(const Common& c, const std::string& dump) {
  const auto file = load_with_overrides(c);
  const auto records = run_experiment(file.experiment, resolve_jobs(c.jobs), {!dump.empty()});
  emit(c.out, [&](std::ostream& os) { write_trial_csv(os, records); });
  if (!dump.empty()) {
    std::filesystem::create_directories(dump);
    for (const auto& r : records) {
      const auto base = dump + "/seed_" + std::to_string(r.seed);
      std::ofstream g(base + ".edges");
      write_edge_list(g, *r.graph);
      if (r.success) {
        std::ofstream w(base + ".witness");
        write_witness(w, r.witness);
      }
    }
  }
  const auto s = summarize(records);
  std::cerr << file.experiment.strategy.name << ": " << s.successes << "/" << s.trials << " successes, 95% interval ["
            << detail::fixed(s.ci.lo, 3) << ", " << detail::fixed(s.ci.hi, 3) << "]\n";
  return kOk;
}

int cmd_sweep(const Common& c) {
  const auto file = load_with_overrides(c);
  const auto rows = sweep(file.experiment, file.grid, resolve_jobs(c.jobs));
  emit(c.out, [&](std::ostream& os) { write_sweep_csv(os, rows); });
  for (const auto& f : monotonicity_flags(rows)) {
    const auto& a = rows[f.lower];
    const auto& z = rows[f.higher];
    std::cerr << (f.serious ? "warning" : "note") << ": success drops along " << f.axis << " at n=" << a.n
              << " (t_coeff " << format_param(a.t_coeff) << ", b_coeff " << format_param(a.b_coeff) << ") -> (t_coeff "
              << format_param(z.t_coeff) << ", b_coeff " << format_param(z.b_coeff) << ")\n";
  }
  return kOk;
}

struct OracleArgs {
  std::string graph;
  std::string target = "C3";
  std::int64_t length = 2;
  std::int64_t radius = 1;
  std::string path;
};

int cmd_oracle(const std::string& name, const OracleArgs& a) {
  const auto g = load_graph(a.graph);
  if (name == "hamiltonian") {
    const auto r = hamiltonian_exact(g);
    std::cout << (r.hamiltonian ? "hamiltonian: " + vertex_text(r.cycle) : std::string("not hamiltonian")) << "\n";
  } else if (name == "boosters") {
    const auto bs = exact_boosters(g);
    std::cout << bs.size() << (bs.size() == 1 ? " booster" : " boosters") << (bs.empty() ? "" : ":");
    for (const auto& e : bs) std::cout << ' ' << edge_text(e);
    std::cout << "\n";
  } else if (name == "traps") {
    const auto ts = enumerate_traps(g, parse_target(a.target));
    std::cout << ts.traps.size() << (ts.traps.size() == 1 ? " trap" : " traps") << (ts.traps.empty() ? "" : ":");
    for (const auto& e : ts.traps) std::cout << ' ' << edge_text(e);
    std::cout << "\n";
  } else if (name == "paths") {
    std::cout << count_paths(g, a.length) << " paths of length " << a.length << " (bound "
              << detail::fixed(path_count_bound(g, a.length), 1) << ")\n";
  } else if (name == "expander") {
    const auto r = is_r_expander(g, a.radius);
    std::cout << (r.expander ? "expander" : "not an expander; violating set: " + vertex_text(r.witness)) << "\n";
  } else if (name == "degeneracy") {
    std::cout << degeneracy(g) << "\n";
  } else if (name == "closure") {
    const auto path = parse_vertex_list(a.path);
    if (path.empty()) throw InvalidParameter("closure needs --path");
    if (static_cast<std::int64_t>(path.size()) > kExactLimits.closure_vertices)
      throw SizeLimitError("exact closure limited to paths of 14 vertices");
    for (std::size_t i = 0; i < path.size(); ++i) {
      if (path[i] < 0 || path[i] >= g.vertex_count()) throw InvalidParameter("path vertex out of range");
      if (i + 1 < path.size() && !g.has_edge(path[i], path[i + 1])) throw InvalidParameter("path uses a missing edge");
    }
    const auto ends = exact_rotation_closure(g, path);
    if (!ends) throw SizeLimitError("rotation closure state cap exceeded");
    std::cout << ends->size() << " endpoints: " << vertex_text(*ends) << "\n";
  } else {
    throw InvalidParameter("unknown oracle '" + name + "'");
  }
  return kOk;
}

int cmd_validate(const std::string& graph, const std::string& witness_path, const std::string& target,
                 const std::string& k, const std::string& length) {
  const auto g = load_graph(graph);
  std::ifstream in(witness_path);
  if (!in) throw InputError("cannot read witness '" + witness_path + "'");
  Witness w;
  try {
    w = read_witness(in);
  } catch (const InvalidParameter& e) {
    throw InputError(e.what());
  }
  StrategySpec spec{"validate", {}};
  if (!target.empty()) spec.params["target"] = target;
  if (!k.empty()) spec.params["k"] = k;
  if (!length.empty()) spec.params["length"] = length;
  if (w.kind == WitnessKind::Cycle && length.empty())
    spec.params["length"] = std::to_string(std::max<std::int64_t>(0, static_cast<std::int64_t>(w.vertices.size()) - 1));
  const auto why = check_witness(g, w, spec);
  if (!why.empty()) {
    std::cout << "invalid " << witness_kind_name(w.kind) << ": " << why << "\n";
    return kInvalidWitness;
  }
  std::cout << "valid " << witness_kind_name(w.kind) << "\n";
  return kOk;
}

int cmd_hitting(std::int64_t n, std::uint64_t seed, const std::string& property) {
  HittingProperty p = HittingProperty::connected();
  if (property.rfind("mindeg", 0) == 0) {
    p = HittingProperty::min_degree(detail::parse_count(std::string_view(property).substr(6), "mindeg"));
  } else if (property != "connected") {
    throw InvalidParameter("property must be mindeg<k> or connected");
  }
  std::cout << hitting_time(n, seed, p) << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Budget-constrained Builder on the random graph process: trials, sweeps, oracles, validation."};
  app.footer(kExitCodes);
  app.require_subcommand(1, 1);

  Common run_c, sweep_c;
  std::string dump;
  auto* run = app.add_subcommand("run", "run one experiment and write the trial CSV");
  add_common(run, run_c);
  run->add_option("--dump", dump, "directory for per-trial edge lists and witnesses");
  run->footer(kExitCodes);

  auto* sw = app.add_subcommand("sweep", "run a grid of experiments and write the sweep CSV");
  add_common(sw, sweep_c);
  sw->footer(kExitCodes);

  std::string oracle_name;
  OracleArgs oa;
  auto* oracle = app.add_subcommand("oracle", "run an exact oracle on an edge-list dump");
  oracle->add_option("name", oracle_name, "hamiltonian | boosters | traps | paths | expander | degeneracy | closure")
      ->required()
      ->check(CLI::IsMember({"hamiltonian", "boosters", "traps", "paths", "expander", "degeneracy", "closure"}));
  oracle->add_option("--graph", oa.graph, "edge list: header 'n m' then 'u v' lines")->required();
  oracle->add_option("--target", oa.target, "traps: target graph (Cl, Pk, Sk or T:u-v,...)");
  oracle->add_option("--length", oa.length, "paths: number of edges");
  oracle->add_option("--radius", oa.radius, "expander: largest set size checked");
  oracle->add_option("--path", oa.path, "closure: comma-separated path vertices");
  oracle->footer(kExitCodes);

  std::string vgraph, vwitness, vtarget, vk, vlength;
  auto* validate = app.add_subcommand("validate", "re-check a stored witness against an edge list");
  validate->add_option("--graph", vgraph, "edge list of Builder's graph")->required();
  validate->add_option("--witness", vwitness, "witness file written by run --dump")->required();
  validate->add_option("--target", vtarget, "embedding witnesses: target tree");
  validate->add_option("--k", vk, "min_degree witnesses: k");
  validate->add_option("--length", vlength, "cycle witnesses: cycle length");
  validate->footer(kExitCodes);

  std::int64_t hn = 0;
  std::uint64_t hseed = 0;
  std::string hprop = "connected";
  auto* hitting = app.add_subcommand("hitting", "print the hitting time of a property for (n, seed)");
  hitting->add_option("--n", hn, "number of vertices")->required();
  hitting->add_option("--seed", hseed, "stream seed");
  hitting->add_option("--property", hprop, "mindeg<k> or connected");
  hitting->footer(kExitCodes);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (*run) return cmd_run(run_c, dump);
    if (*sw) return cmd_sweep(sweep_c);
    if (*oracle) return cmd_oracle(oracle_name, oa);
    if (*validate) return cmd_validate(vgraph, vwitness, vtarget, vk, vlength);
    if (*hitting) return cmd_hitting(hn, hseed, hprop);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfig;
  } catch (const EdgeListError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kEdgeList;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kEdgeList;
  } catch (const SizeLimitError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kSizeLimit;
  } catch (const InvalidParameter& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParameter;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kUsage;
}
