#pragma once

#include <charconv>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "builder/edge_stream.hpp"
#include "builder/strategies/basic.hpp"
#include "builder/strategies/cycle.hpp"
#include "builder/strategies/ham_budget.hpp"
#include "builder/strategies/ham_time.hpp"
#include "builder/strategies/matching.hpp"
#include "builder/strategies/tree.hpp"
#include "builder/target.hpp"

namespace builder {

struct StrategySpec {
  std::string name;
  std::map<std::string, std::string> params;
};

inline const std::vector<std::string>& strategy_names() {
  static const std::vector<std::string> names{"connectivity", "nn_emulation", "two_stage_mindeg", "ham_time",
                                              "ham_budget",   "perfect_matching", "tree",           "cycle"};
  return names;
}

// Typed access to string parameters; rejects keys nobody asked for.
class ParamReader {
 public:
  explicit ParamReader(const StrategySpec& spec) : spec_(spec) {}

  std::string text(const std::string& key, const std::string& fallback) {
    used_.insert(key);
    const auto it = spec_.params.find(key);
    return it == spec_.params.end() ? fallback : it->second;
  }

  double real(const std::string& key, double fallback) {
    const auto s = text(key, "");
    if (s.empty()) return fallback;
    double x = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
    if (ec != std::errc{} || ptr != s.data() + s.size()) bad(key, s);
    return x;
  }

  std::int64_t integer(const std::string& key, std::int64_t fallback) {
    const auto s = text(key, "");
    if (s.empty()) return fallback;
    std::int64_t x = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
    if (ec != std::errc{} || ptr != s.data() + s.size()) bad(key, s);
    return x;
  }

  bool flag(const std::string& key, bool fallback) {
    const auto s = text(key, "");
    if (s.empty()) return fallback;
    if (s == "1" || s == "true" || s == "yes" || s == "on") return true;
    if (s == "0" || s == "false" || s == "no" || s == "off") return false;
    bad(key, s);
    return false;
  }

  void finish() const {
    for (const auto& [key, value] : spec_.params)
      if (!used_.count(key)) throw InvalidParameter("strategy " + spec_.name + " has no parameter '" + key + "'");
  }

 private:
  [[noreturn]] void bad(const std::string& key, const std::string& value) const {
    throw InvalidParameter("bad value '" + value + "' for " + spec_.name + "." + key);
  }

  const StrategySpec& spec_;
  std::set<std::string> used_;
};

namespace detail {
inline RotationConfig read_rotation(ParamReader& in) {
  RotationConfig r;
  r.incremental = in.flag("incremental", r.incremental);
  r.double_rotation_sources = in.integer("rotation_sources", r.double_rotation_sources);
  return r;
}
}  // namespace detail

inline std::unique_ptr<BuilderRun> make_run(const StrategySpec& spec, std::int64_t n, std::int64_t t, std::int64_t b) {
  ParamReader in(spec);
  if (spec.name == "connectivity") {
    in.finish();
    return std::make_unique<ConnectivityRun>(n, t, b);
  }
  if (spec.name == "nn_emulation") {
    const auto k = static_cast<std::int32_t>(in.integer("k", 1));
    in.finish();
    return std::make_unique<NearestNeighbourRun>(n, t, b, k);
  }
  if (spec.name == "two_stage_mindeg") {
    MinDegreeParams p;
    p.k = static_cast<std::int32_t>(in.integer("k", p.k));
    p.epsilon = in.real("epsilon", p.epsilon);
    const auto scope = in.text("stage2", "incident");
    if (scope != "incident" && scope != "inside") throw InvalidParameter("stage2 must be incident or inside");
    p.stage2_inside = scope == "inside";
    p.stage1_time_fraction = in.real("stage1_time_fraction", p.stage1_time_fraction);
    in.finish();
    return std::make_unique<MinDegreeTwoStageRun>(n, t, b, p);
  }
  if (spec.name == "ham_time") {
    HamTimeParams p;
    p.epsilon = in.real("epsilon", p.epsilon);
    p.expander_degree = static_cast<std::int32_t>(in.integer("expander_degree", p.expander_degree));
    p.keep_degree = static_cast<std::int32_t>(in.integer("keep_degree", p.keep_degree));
    p.rotation = detail::read_rotation(in);
    in.finish();
    return std::make_unique<HamTimeRun>(n, t, b, p);
  }
  if (spec.name == "ham_budget") {
    HamBudgetParams p;
    p.epsilon = in.real("epsilon", p.epsilon);
    p.sigma = in.real("sigma", p.sigma);
    p.eta = in.real("eta", p.eta);
    p.expander_degree = static_cast<std::int32_t>(in.integer("expander_degree", p.expander_degree));
    p.min_block = static_cast<std::int32_t>(in.integer("min_block", p.min_block));
    p.rotation = detail::read_rotation(in);
    in.finish();
    return std::make_unique<HamBudgetRun>(n, t, b, p);
  }
  if (spec.name == "perfect_matching") {
    MatchingParams p;
    p.epsilon = in.real("epsilon", p.epsilon);
    p.leftover_fraction = in.real("leftover_fraction", p.leftover_fraction);
    p.expander_degree = static_cast<std::int32_t>(in.integer("expander_degree", p.expander_degree));
    p.concurrent_boosters = in.flag("concurrent_boosters", p.concurrent_boosters);
    p.accept_path = in.flag("accept_path", p.accept_path);
    p.expander_until_complete = in.flag("expander_until_complete", p.expander_until_complete);
    p.rotation = detail::read_rotation(in);
    in.finish();
    return std::make_unique<MatchingRun>(n, t, b, p);
  }
  if (spec.name == "tree") {
    TreeParams p;
    p.target = parse_target(in.text("target", "P4"));
    p.branch_factor = in.real("branch_factor", p.branch_factor);
    p.quota_scale = in.real("quota_scale", p.quota_scale);
    p.open_last_stage = in.flag("open_last_stage", p.open_last_stage);
    in.finish();
    return std::make_unique<TreeRun>(n, t, b, p);
  }
  if (spec.name == "cycle") {
    CycleParams p;
    p.length = static_cast<std::int32_t>(in.integer("length", p.length));
    const auto sizing = in.text("sizing", "literal");
    if (sizing != "literal" && sizing != "greedy") throw InvalidParameter("sizing must be literal or greedy");
    p.sizing = sizing == "literal" ? TreeSizing::Literal : TreeSizing::Greedy;
    p.c = in.real("c", p.c);
    p.d_override = in.integer("d", p.d_override);
    p.r_override = in.integer("r", p.r_override);
    in.finish();
    return std::make_unique<CycleRun>(n, t, b, p);
  }
  throw InvalidParameter("unknown strategy '" + spec.name + "'");
}

// Feeds the stream to the run until it succeeds, fails or hits its time cap.
inline void drive(BuilderRun& run, EdgeStream& stream) {
  while (!run.finished()) {
    const auto e = stream.next();
    if (!e) {
      run.finish();
      break;
    }
    run.observe(*e);
  }
}

}  // namespace builder
