#pragma once

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "builder/edge_stream.hpp"
#include "builder/errors.hpp"
#include "builder/oracles.hpp"
#include "builder/strategies/factory.hpp"
#include "builder/target.hpp"

namespace builder {

// A time or budget given absolutely or as a formula in n. Formulas use the
// natural log and round up.
//   1234               absolute
//   n:c                c*n
//   nlogn:c            c*n*ln n
//   pow:x              n^x
//   hitting:mindeg:k   first time G_s has minimum degree k (time only)
//   hitting:connected  first time G_s is connected (time only)
//   t                  equal to the resolved time (budget only)
struct Quantity {
  enum class Kind { Absolute, Linear, NLogN, Power, HittingMinDegree, HittingConnected, SameAsTime };
  Kind kind = Kind::Absolute;
  double coeff = 0.0;
  std::int32_t k = 1;

  bool is_hitting() const { return kind == Kind::HittingMinDegree || kind == Kind::HittingConnected; }
  bool is_formula() const { return kind != Kind::Absolute; }

  // The numeric knob swept over: the coefficient, exponent, k, or absolute value.
  double coefficient() const {
    if (kind == Kind::HittingMinDegree) return k;
    if (kind == Kind::HittingConnected || kind == Kind::SameAsTime) return 0.0;
    return coeff;
  }

  Quantity with_coefficient(double c) const {
    Quantity q = *this;
    if (kind == Kind::HittingMinDegree) {
      q.k = static_cast<std::int32_t>(c);
    } else if (kind != Kind::HittingConnected && kind != Kind::SameAsTime) {
      q.coeff = c;
    }
    return q;
  }

  // Resolves everything except hitting times, which need the seed.
  std::int64_t resolve(std::int64_t n) const {
    const double nn = static_cast<double>(n);
    double x = 0.0;
    switch (kind) {
      case Kind::Absolute: x = coeff; break;
      case Kind::Linear: x = coeff * nn; break;
      case Kind::NLogN: x = coeff * nn * std::log(nn); break;
      case Kind::Power: x = std::pow(nn, coeff); break;
      default: throw ContractViolation("quantity needs the stream to resolve");
    }
    if (!std::isfinite(x) || x < 0.0 || x > 9.0e18) throw InvalidParameter("quantity out of range: " + to_string());
    return static_cast<std::int64_t>(std::ceil(x - 1e-9));
  }

  std::string to_string() const {
    std::ostringstream os;
    switch (kind) {
      case Kind::Absolute: os << static_cast<std::int64_t>(coeff); break;
      case Kind::Linear: os << "n:" << format_param(coeff); break;
      case Kind::NLogN: os << "nlogn:" << format_param(coeff); break;
      case Kind::Power: os << "pow:" << format_param(coeff); break;
      case Kind::HittingMinDegree: os << "hitting:mindeg:" << k; break;
      case Kind::HittingConnected: os << "hitting:connected"; break;
      case Kind::SameAsTime: os << "t"; break;
    }
    return os.str();
  }
};

namespace detail {
inline double parse_real(std::string_view s, std::string_view what) {
  double x = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
    throw InvalidParameter("bad number '" + std::string(s) + "' in " + std::string(what));
  return x;
}
}  // namespace detail

inline Quantity parse_quantity(std::string_view s) {
  const std::string text(s);
  Quantity q;
  auto tail = [&](std::string_view prefix) { return s.substr(prefix.size()); };
  if (s == "t") {
    q.kind = Quantity::Kind::SameAsTime;
  } else if (s == "hitting:connected") {
    q.kind = Quantity::Kind::HittingConnected;
  } else if (s.starts_with("hitting:mindeg:")) {
    q.kind = Quantity::Kind::HittingMinDegree;
    q.k = detail::parse_count(tail("hitting:mindeg:"), "hitting:mindeg");
  } else if (s.starts_with("nlogn:")) {
    q.kind = Quantity::Kind::NLogN;
    q.coeff = detail::parse_real(tail("nlogn:"), text);
  } else if (s.starts_with("n:")) {
    q.kind = Quantity::Kind::Linear;
    q.coeff = detail::parse_real(tail("n:"), text);
  } else if (s.starts_with("pow:")) {
    q.kind = Quantity::Kind::Power;
    q.coeff = detail::parse_real(tail("pow:"), text);
  } else {
    q.coeff = detail::parse_real(s, text);
    if (q.coeff != std::floor(q.coeff)) throw InvalidParameter("absolute quantity must be an integer: " + text);
  }
  if (q.coeff < 0.0) throw InvalidParameter("quantity must be nonnegative: " + text);
  return q;
}

enum class CrossCheck { Off, SmallN };

struct ExperimentConfig {
  StrategySpec strategy{"connectivity", {}};
  std::int64_t n = 100;
  Quantity t = parse_quantity("hitting:connected");
  Quantity b = parse_quantity("t");
  std::vector<std::uint64_t> seeds{0};
  CrossCheck cross_check = CrossCheck::Off;
  double timeout_seconds = 120.0;
};

inline std::vector<std::uint64_t> seed_range(std::uint64_t base, std::uint64_t count) {
  std::vector<std::uint64_t> out(count);
  for (std::uint64_t i = 0; i < count; ++i) out[i] = base + i;
  return out;
}

// "base:count" or a comma-separated list.
inline std::vector<std::uint64_t> parse_seeds(std::string_view s) {
  auto number = [](std::string_view x) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(x.data(), x.data() + x.size(), v);
    if (x.empty() || ec != std::errc{} || ptr != x.data() + x.size())
      throw InvalidParameter("bad seed '" + std::string(x) + "'");
    return v;
  };
  if (const auto colon = s.find(':'); colon != std::string_view::npos)
    return seed_range(number(s.substr(0, colon)), number(s.substr(colon + 1)));
  std::vector<std::uint64_t> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const auto comma = s.find(',', start);
    const auto piece = s.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    out.push_back(number(piece));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

inline std::int64_t max_time(std::int64_t n) { return n * (n - 1) / 2; }

// Resolved caps for one seed. Formula budgets above t are lowered to t, since
// Builder cannot purchase more edges than he observes.
struct ResolvedCaps {
  std::int64_t t = 0;
  std::int64_t b = 0;
};

inline ResolvedCaps resolve_caps(const ExperimentConfig& cfg, std::uint64_t seed) {
  if (cfg.n < 2) throw InvalidParameter("n must be at least 2");
  if (cfg.b.is_hitting()) throw InvalidParameter("hitting times are only valid for t");
  if (cfg.t.kind == Quantity::Kind::SameAsTime) throw InvalidParameter("t cannot refer to itself");
  ResolvedCaps caps;
  if (cfg.t.kind == Quantity::Kind::HittingMinDegree) {
    caps.t = static_cast<std::int64_t>(hitting_time(cfg.n, seed, HittingProperty::min_degree(cfg.t.k)));
  } else if (cfg.t.kind == Quantity::Kind::HittingConnected) {
    caps.t = static_cast<std::int64_t>(hitting_time(cfg.n, seed, HittingProperty::connected()));
  } else {
    caps.t = cfg.t.resolve(cfg.n);
  }
  if (caps.t > max_time(cfg.n)) throw InvalidParameter("t exceeds C(n,2) = " + std::to_string(max_time(cfg.n)));
  caps.b = cfg.b.kind == Quantity::Kind::SameAsTime ? caps.t : cfg.b.resolve(cfg.n);
  if (caps.b > caps.t) {
    if (!cfg.b.is_formula()) throw InvalidParameter("b exceeds t");
    caps.b = caps.t;
  }
  return caps;
}

inline void validate_config(const ExperimentConfig& cfg) {
  if (cfg.seeds.empty()) throw InvalidParameter("an experiment needs at least one trial");
  if (!(cfg.timeout_seconds > 0.0)) throw InvalidParameter("timeout must be positive");
  std::vector<std::uint64_t> sorted = cfg.seeds;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) throw InvalidParameter("seeds must be distinct");
  ResolvedCaps caps{max_time(cfg.n), max_time(cfg.n)};
  if (!cfg.t.is_hitting()) caps = resolve_caps(cfg, cfg.seeds.front());
  make_run(cfg.strategy, cfg.n, caps.t, caps.b);
}

struct TrialRecord {
  std::uint64_t seed = 0;
  std::int64_t t = 0;
  std::int64_t b = 0;
  bool success = false;
  bool timeout = false;
  std::int64_t observed = 0;
  std::int64_t purchased = 0;
  std::string stage;
  std::map<std::string, std::int64_t> counters;
  std::string witness_hash;
  std::string cross_check = "off";
  std::string failure;
  double wall_seconds = 0.0;
  // Kept only when asked for, e.g. for dumps or degeneracy checks.
  std::optional<PurchasedGraph> graph;
  Witness witness;
};

inline std::string witness_hash(const Witness& w) {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&](std::uint64_t x) {
    for (int i = 0; i < 8; ++i) {
      h ^= (x >> (8 * i)) & 0xffu;
      h *= 1099511628211ull;
    }
  };
  mix(static_cast<std::uint64_t>(w.kind));
  for (Vertex v : w.vertices) mix(static_cast<std::uint64_t>(v));
  for (const auto& e : w.edges) mix(e.key());
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

// Exact validation of a success witness; empty when valid. The strategy
// parameters supply k, the cycle length or the tree target.
inline std::string check_witness(const PurchasedGraph& g, const Witness& w, const StrategySpec& spec) {
  const auto n = g.vertex_count();
  switch (w.kind) {
    case WitnessKind::SpanningTree:
      return g.component_count() == 1 ? "" : "Builder's graph is not connected";
    case WitnessKind::MinDegree: {
      std::int64_t k = 1;
      if (const auto it = spec.params.find("k"); it != spec.params.end()) k = std::stoll(it->second);
      for (Vertex v = 0; v < n; ++v)
        if (g.degree(v) < k) return "vertex below the minimum degree";
      return {};
    }
    case WitnessKind::HamiltonCycle: return check_hamilton_cycle(g, w.vertices);
    case WitnessKind::PerfectMatching: return check_perfect_matching(g, w.edges);
    case WitnessKind::Cycle: {
      std::int64_t length = 3;
      if (const auto it = spec.params.find("length"); it != spec.params.end()) length = std::stoll(it->second);
      return check_cycle(g, w.vertices, length);
    }
    case WitnessKind::Embedding: {
      const auto it = spec.params.find("target");
      return check_embedding(g, parse_target(it == spec.params.end() ? "P4" : it->second), w.vertices);
    }
    case WitnessKind::None: return "success without a witness";
  }
  return "unknown witness";
}

inline const char* witness_kind_name(WitnessKind k) {
  switch (k) {
    case WitnessKind::None: return "none";
    case WitnessKind::SpanningTree: return "spanning_tree";
    case WitnessKind::MinDegree: return "min_degree";
    case WitnessKind::HamiltonCycle: return "hamilton_cycle";
    case WitnessKind::PerfectMatching: return "perfect_matching";
    case WitnessKind::Embedding: return "embedding";
    case WitnessKind::Cycle: return "cycle";
  }
  return "none";
}

// Witness file: "kind <name>", optionally "vertices v0 v1 ...", then "edge u v" lines.
inline void write_witness(std::ostream& os, const Witness& w) {
  os << "kind " << witness_kind_name(w.kind) << "\n";
  if (!w.vertices.empty()) {
    os << "vertices";
    for (Vertex v : w.vertices) os << ' ' << v;
    os << "\n";
  }
  for (const auto& e : w.edges) os << "edge " << e.u << ' ' << e.v << "\n";
}

inline Witness read_witness(std::istream& is) {
  Witness w;
  bool has_kind = false;
  std::string line;
  while (std::getline(is, line)) {
    std::istringstream row(line);
    std::string word;
    if (!(row >> word) || word[0] == '#') continue;
    if (word == "kind") {
      std::string name;
      row >> name;
      bool found = false;
      for (auto k : {WitnessKind::None, WitnessKind::SpanningTree, WitnessKind::MinDegree, WitnessKind::HamiltonCycle,
                     WitnessKind::PerfectMatching, WitnessKind::Embedding, WitnessKind::Cycle})
        if (name == witness_kind_name(k)) {
          w.kind = k;
          found = true;
        }
      if (!found) throw InvalidParameter("witness: unknown kind '" + name + "'");
      has_kind = true;
    } else if (word == "vertices") {
      Vertex v = 0;
      while (row >> v) w.vertices.push_back(v);
      if (!row.eof()) throw InvalidParameter("witness: bad vertex list");
    } else if (word == "edge") {
      Vertex u = 0, v = 0;
      std::string extra;
      if (!(row >> u >> v) || (row >> extra) || u == v || u < 0 || v < 0)
        throw InvalidParameter("witness: bad edge line '" + line + "'");
      w.edges.emplace_back(u, v);
    } else {
      throw InvalidParameter("witness: unexpected line '" + line + "'");
    }
  }
  if (!has_kind) throw InvalidParameter("witness: missing kind line");
  return w;
}

// Independent structural check of the verdict on small hosts.
inline std::string cross_check_verdict(const BuilderRun& run, const StrategySpec& spec) {
  const auto& g = run.graph();
  const auto kind = run.witness().kind;
  if (kind == WitnessKind::HamiltonCycle || kind == WitnessKind::PerfectMatching) {
    if (g.vertex_count() > kExactLimits.hamiltonian_vertices) return "skipped";
    if (kind == WitnessKind::HamiltonCycle) return hamiltonian_exact(g).hamiltonian ? "ok" : "mismatch";
    return "ok";
  }
  if (kind == WitnessKind::Cycle || kind == WitnessKind::Embedding) {
    if (g.vertex_count() > 200) return "skipped";
    Target target = Target::path(4);
    if (kind == WitnessKind::Cycle) {
      const auto it = spec.params.find("length");
      target = Target::cycle(it == spec.params.end() ? 3 : static_cast<std::int32_t>(std::stol(it->second)));
    } else if (const auto it = spec.params.find("target"); it != spec.params.end()) {
      target = parse_target(it->second);
    }
    return contains_subgraph(g, target) ? "ok" : "mismatch";
  }
  return "skipped";
}

struct TrialOptions {
  // Keep Builder's final graph and witness in the record.
  bool keep_graph = false;
};

inline TrialRecord run_trial(const ExperimentConfig& cfg, std::uint64_t seed, TrialOptions opts = {}) {
  const auto caps = resolve_caps(cfg, seed);
  TrialRecord rec;
  rec.seed = seed;
  rec.t = caps.t;
  rec.b = caps.b;
  auto run = make_run(cfg.strategy, cfg.n, caps.t, caps.b);
  EdgeStream stream(cfg.n, seed);
  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(); };
  std::uint64_t ticks = 0;
  while (!run->finished()) {
    if ((++ticks & 0xfffu) == 0 && elapsed() > cfg.timeout_seconds) {
      rec.timeout = true;
      break;
    }
    const auto e = stream.next();
    if (!e) {
      run->finish();
      break;
    }
    run->observe(*e);
  }
  rec.wall_seconds = elapsed();
  const auto& ledger = run->ledger();
  if (!ledger.consistent() || static_cast<std::int64_t>(ledger.purchased) > caps.b ||
      static_cast<std::int64_t>(ledger.observed) > caps.t)
    throw ContractViolation("ledger caps violated");
  rec.observed = static_cast<std::int64_t>(ledger.observed);
  rec.purchased = static_cast<std::int64_t>(ledger.purchased);
  rec.stage = run->stage_name();
  rec.counters = run->counters();
  if (rec.timeout) {
    rec.failure = "timeout";
  } else if (run->succeeded()) {
    rec.witness_hash = witness_hash(run->witness());
    rec.failure = check_witness(run->graph(), run->witness(), cfg.strategy);
    if (rec.failure.empty() && cfg.cross_check == CrossCheck::SmallN) {
      rec.cross_check = cross_check_verdict(*run, cfg.strategy);
      if (rec.cross_check == "mismatch") rec.failure = "exact oracle disagrees with the witness";
    }
    rec.success = rec.failure.empty();
    if (!rec.success) rec.failure = "invalid witness: " + rec.failure;
  } else {
    rec.failure = run->failure_reason();
  }
  if (opts.keep_graph) {
    rec.graph = run->graph();
    rec.witness = run->witness();
  }
  return rec;
}

// Worker count: explicit value, else BUILDER_JOBS, else the hardware count.
inline unsigned resolve_jobs(unsigned requested = 0) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("BUILDER_JOBS")) {
    unsigned v = 0;
    const std::string_view s(env);
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec == std::errc{} && ptr == s.data() + s.size() && v > 0) return v;
    throw InvalidParameter("BUILDER_JOBS must be a positive integer");
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

// Records come back in seed-list order whatever the worker count.
inline std::vector<TrialRecord> run_experiment(const ExperimentConfig& cfg, unsigned jobs, TrialOptions opts = {}) {
  validate_config(cfg);
  const auto count = cfg.seeds.size();
  std::vector<TrialRecord> out(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < count;) {
      try {
        out[i] = run_trial(cfg, cfg.seeds[i], opts);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const auto workers = std::min<std::size_t>(std::max(1u, jobs), count);
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
};

inline constexpr double kWilsonZ = 1.96;

inline Interval wilson_interval(std::int64_t successes, std::int64_t trials, double z = kWilsonZ) {
  if (trials <= 0) throw InvalidParameter("interval needs at least one trial");
  if (successes < 0 || successes > trials) throw InvalidParameter("successes out of range");
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double centre = (p + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

struct SummaryStats {
  std::int64_t trials = 0;
  std::int64_t successes = 0;
  double rate = 0.0;
  Interval ci;
  double mean_purchased = 0.0;
  std::int64_t max_purchased = 0;
  double mean_observed = 0.0;
  std::int64_t timeouts = 0;
};

inline SummaryStats summarize(const std::vector<TrialRecord>& records) {
  if (records.empty()) throw InvalidParameter("cannot summarize zero trials");
  SummaryStats s;
  s.trials = static_cast<std::int64_t>(records.size());
  double purchased = 0.0, observed = 0.0;
  for (const auto& r : records) {
    s.successes += r.success;
    s.timeouts += r.timeout;
    purchased += static_cast<double>(r.purchased);
    observed += static_cast<double>(r.observed);
    s.max_purchased = std::max(s.max_purchased, r.purchased);
  }
  s.rate = static_cast<double>(s.successes) / static_cast<double>(s.trials);
  s.ci = wilson_interval(s.successes, s.trials);
  s.mean_purchased = purchased / static_cast<double>(s.trials);
  s.mean_observed = observed / static_cast<double>(s.trials);
  return s;
}

namespace detail {
inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

inline std::string fixed(double x, int digits = 6) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << x;
  return os.str();
}
}  // namespace detail

inline const char* kTrialCsvHeader =
    "seed,t,b,success,timeout,observed,purchased,stage,counters,witness_hash,cross_check,failure";

inline void write_trial_csv(std::ostream& os, const std::vector<TrialRecord>& records) {
  os << kTrialCsvHeader << "\n";
  for (const auto& r : records) {
    std::string counters;
    for (const auto& [k, v] : r.counters) counters += (counters.empty() ? "" : ";") + k + "=" + std::to_string(v);
    os << r.seed << ',' << r.t << ',' << r.b << ',' << (r.success ? 1 : 0) << ',' << (r.timeout ? 1 : 0) << ','
       << r.observed << ',' << r.purchased << ',' << detail::csv_field(r.stage) << ',' << detail::csv_field(counters)
       << ',' << r.witness_hash << ',' << r.cross_check << ',' << detail::csv_field(r.failure) << "\n";
  }
}

struct SweepGrid {
  std::vector<std::int64_t> n;
  std::vector<double> t_coeffs;
  std::vector<double> b_coeffs;
};

struct SweepRow {
  std::string strategy;
  std::int64_t n = 0;
  double t_coeff = 0.0;
  double b_coeff = 0.0;
  std::int64_t t_resolved = 0;
  std::int64_t b_resolved = 0;
  SummaryStats stats;
};

inline const char* kSweepCsvHeader =
    "strategy,n,t_coeff,b_coeff,t_resolved,b_resolved,trials,successes,rate,ci_lo,ci_hi,mean_purchased,"
    "max_purchased,mean_observed,timeouts";

// Cells whose b exceeds t after resolution are still run with b lowered to t.
inline std::vector<SweepRow> sweep(const ExperimentConfig& tmpl, const SweepGrid& grid, unsigned jobs) {
  const auto ns = grid.n.empty() ? std::vector<std::int64_t>{tmpl.n} : grid.n;
  const auto ts = grid.t_coeffs.empty() ? std::vector<double>{tmpl.t.coefficient()} : grid.t_coeffs;
  const auto bs = grid.b_coeffs.empty() ? std::vector<double>{tmpl.b.coefficient()} : grid.b_coeffs;
  std::vector<SweepRow> rows;
  for (auto n : ns)
    for (auto tc : ts)
      for (auto bc : bs) {
        ExperimentConfig cfg = tmpl;
        cfg.n = n;
        cfg.t = tmpl.t.with_coefficient(tc);
        cfg.b = tmpl.b.with_coefficient(bc);
        const auto records = run_experiment(cfg, jobs);
        SweepRow row{tmpl.strategy.name, n, tc, bc, records.front().t, records.front().b, summarize(records)};
        rows.push_back(row);
      }
  return rows;
}

inline void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << "# interval: wilson score, z=1.96\n" << kSweepCsvHeader << "\n";
  for (const auto& r : rows) {
    const auto& s = r.stats;
    os << detail::csv_field(r.strategy) << ',' << r.n << ',' << format_param(r.t_coeff) << ','
       << format_param(r.b_coeff) << ',' << r.t_resolved << ',' << r.b_resolved << ',' << s.trials << ','
       << s.successes << ',' << detail::fixed(s.rate) << ',' << detail::fixed(s.ci.lo) << ','
       << detail::fixed(s.ci.hi) << ',' << detail::fixed(s.mean_purchased, 3) << ',' << s.max_purchased << ','
       << detail::fixed(s.mean_observed, 3) << ',' << s.timeouts << "\n";
  }
}

// Adjacent grid cells where success drops as t or b grows. Drops within two
// interval widths are noise; larger ones are marked serious. Neither fails.
struct MonotonicityFlag {
  std::size_t lower = 0;
  std::size_t higher = 0;
  char axis = 'b';
  bool serious = false;
};

inline std::vector<MonotonicityFlag> monotonicity_flags(const std::vector<SweepRow>& rows) {
  std::vector<MonotonicityFlag> flags;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (char axis : {'t', 'b'}) {
      std::optional<std::size_t> next;
      for (std::size_t j = 0; j < rows.size(); ++j) {
        const auto& a = rows[i];
        const auto& c = rows[j];
        if (a.strategy != c.strategy || a.n != c.n) continue;
        const bool same_other = axis == 't' ? a.b_coeff == c.b_coeff : a.t_coeff == c.t_coeff;
        const double av = axis == 't' ? a.t_coeff : a.b_coeff;
        const double cv = axis == 't' ? c.t_coeff : c.b_coeff;
        if (!same_other || cv <= av) continue;
        const double nv = next ? (axis == 't' ? rows[*next].t_coeff : rows[*next].b_coeff) : 0.0;
        if (!next || cv < nv) next = j;
      }
      if (!next) continue;
      const auto& lo = rows[i].stats;
      const auto& hi = rows[*next].stats;
      if (hi.rate >= lo.rate) continue;
      const double width = std::max(lo.ci.hi - lo.ci.lo, hi.ci.hi - hi.ci.lo);
      flags.push_back({i, *next, axis, lo.rate - hi.rate >= 2.0 * width});
    }
  }
  return flags;
}

}  // namespace builder
