#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <vector>

#include "builder/edge_stream.hpp"
#include "builder/oracles.hpp"
#include "builder/strategies/factory.hpp"
#include "support.hpp"

using namespace builder;
using namespace testsupport;

namespace {

std::unique_ptr<BuilderRun> make(const std::string& name, std::int64_t n, std::int64_t t, std::int64_t b,
                                 std::map<std::string, std::string> params = {}) {
  return make_run({name, std::move(params)}, n, t, b);
}

std::vector<Decision> feed(BuilderRun& run, const std::vector<Edge>& edges) {
  std::vector<Decision> out;
  for (const auto& e : edges) {
    if (run.finished()) break;
    out.push_back(run.observe(e));
  }
  return out;
}

std::vector<Edge> stream_prefix(std::int64_t n, std::uint64_t seed, std::int64_t count) {
  EdgeStream s(n, seed);
  std::vector<Edge> out;
  while (static_cast<std::int64_t>(out.size()) < count) {
    const auto e = s.next();
    if (!e) break;
    out.push_back(*e);
  }
  return out;
}

struct Outcome {
  bool ok = false;
  std::string why;
};

// Validates the witness against Builder's graph with the independent checkers.
Outcome validate(const BuilderRun& run, const Target* target = nullptr) {
  if (!run.succeeded()) return {false, run.failure_reason()};
  const auto& g = run.graph();
  const auto& w = run.witness();
  std::string bad;
  switch (w.kind) {
    case WitnessKind::HamiltonCycle: bad = check_hamilton_cycle(g, w.vertices); break;
    case WitnessKind::PerfectMatching: bad = check_perfect_matching(g, w.edges); break;
    case WitnessKind::Cycle: bad = check_cycle(g, w.vertices, target ? target->vertices : 0); break;
    case WitnessKind::Embedding: bad = target ? check_embedding(g, *target, w.vertices) : "no target"; break;
    case WitnessKind::MinDegree:
      for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (g.degree(v) < 1) bad = "isolated vertex";
      break;
    case WitnessKind::SpanningTree:
      if (g.component_count() != 1) bad = "not connected";
      break;
    case WitnessKind::None: bad = "no witness"; break;
  }
  return {bad.empty(), bad};
}

int successes(const std::string& name, std::int64_t n, std::int64_t t, std::int64_t b,
              std::map<std::string, std::string> params, int seeds, const Target* target = nullptr) {
  int ok = 0;
  for (int s = 0; s < seeds; ++s) {
    auto run = make(name, n, t, b, params);
    EdgeStream stream(n, static_cast<std::uint64_t>(s));
    drive(*run, stream);
    ok += validate(*run, target).ok;
  }
  return ok;
}

void expect_ledger_sane(const BuilderRun& run, std::int64_t t, std::int64_t b) {
  EXPECT_TRUE(run.ledger().consistent());
  EXPECT_LE(static_cast<std::int64_t>(run.ledger().observed), t);
  EXPECT_LE(static_cast<std::int64_t>(run.ledger().purchased), b);
  EXPECT_EQ(run.graph().edge_count(), run.ledger().purchased);
}

}  // namespace

// Connectivity.

TEST(Connectivity, HandTrace) {
  auto run = make("connectivity", 4, 6, 6);
  const auto d = feed(*run, {Edge(0, 1), Edge(1, 2), Edge(0, 2), Edge(2, 3)});
  EXPECT_EQ(d, (std::vector<Decision>{Decision::Purchase, Decision::Purchase, Decision::Skip, Decision::Purchase}));
  EXPECT_TRUE(run->succeeded());
  EXPECT_EQ(run->witness().edges.size(), 3u);
}

TEST(Connectivity, BuysSpanningTreeAtConnectivityHittingTime) {
  const std::int64_t n = 300;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto tau = static_cast<std::int64_t>(hitting_time(n, seed, HittingProperty::connected()));
    auto run = make("connectivity", n, tau, n - 1);
    EdgeStream stream(n, seed);
    std::int64_t forest_edges = 0;
    while (!run->finished()) {
      const auto e = *stream.next();
      run->observe(e);
      forest_edges = static_cast<std::int64_t>(run->graph().edge_count());
      EXPECT_EQ(run->graph().component_count() + forest_edges, n);
    }
    EXPECT_TRUE(run->succeeded());
    EXPECT_EQ(static_cast<std::int64_t>(run->ledger().observed), tau);
    EXPECT_EQ(forest_edges, n - 1);
    EXPECT_TRUE(validate(*run).ok);
  }
}

// Nearest-neighbour emulation.

TEST(NearestNeighbour, HandTraceK1) {
  auto run = make("nn_emulation", 4, 6, 6, {{"k", "1"}});
  const auto d = feed(*run, {Edge(0, 1), Edge(0, 2), Edge(1, 2), Edge(2, 3)});
  EXPECT_EQ(d, (std::vector<Decision>{Decision::Purchase, Decision::Purchase, Decision::Skip, Decision::Purchase}));
  EXPECT_TRUE(run->succeeded());
}

TEST(NearestNeighbour, K2PurchasesFirstTwoEdges) {
  auto run = make("nn_emulation", 10, 45, 45, {{"k", "2"}});
  const auto d = feed(*run, {Edge(0, 1), Edge(2, 3)});
  EXPECT_EQ(d, (std::vector<Decision>{Decision::Purchase, Decision::Purchase}));
}

TEST(NearestNeighbour, MatchesFirstKEdgesPerVertexAtHittingTime) {
  const std::int64_t n = 400;
  for (std::int32_t k : {1, 2, 3}) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const auto tau = static_cast<std::int64_t>(hitting_time(n, seed, HittingProperty::min_degree(k)));
      std::vector<std::int32_t> seen(static_cast<std::size_t>(n), 0);
      std::set<std::pair<Vertex, Vertex>> oracle;
      for (const auto& e : stream_prefix(n, seed, tau)) {
        const bool keep = seen[static_cast<std::size_t>(e.u)] < k || seen[static_cast<std::size_t>(e.v)] < k;
        ++seen[static_cast<std::size_t>(e.u)];
        ++seen[static_cast<std::size_t>(e.v)];
        if (keep) oracle.insert({e.u, e.v});
      }
      auto run = make("nn_emulation", n, tau, tau, {{"k", std::to_string(k)}});
      EdgeStream stream(n, seed);
      drive(*run, stream);
      ASSERT_TRUE(run->succeeded());
      EXPECT_EQ(static_cast<std::int64_t>(run->ledger().observed), tau);
      std::set<std::pair<Vertex, Vertex>> bought;
      for (const auto& e : run->graph().edges()) bought.insert({e.u, e.v});
      EXPECT_EQ(bought, oracle) << "k=" << k << " seed=" << seed;
    }
  }
}

// Decisions depend only on the edges seen so far.
TEST(OnlineCausality, DecisionsIgnoreTheFuture) {
  const std::int64_t n = 200, prefix = 600;
  const std::vector<std::pair<std::string, std::map<std::string, std::string>>> cases{
      {"nn_emulation", {{"k", "2"}}},
      {"two_stage_mindeg", {{"k", "2"}}},
      {"ham_time", {}},
      {"perfect_matching", {}},
      {"cycle", {{"length", "3"}}}};
  for (const auto& [name, params] : cases) {
    const auto a = stream_prefix(n, 3, 2000);
    auto b = a;
    const auto tail = stream_prefix(n, 4, 3000);
    std::set<std::pair<Vertex, Vertex>> used;
    for (std::int64_t i = 0; i < prefix; ++i) used.insert({a[static_cast<std::size_t>(i)].u, a[static_cast<std::size_t>(i)].v});
    b.resize(prefix);
    for (const auto& e : tail)
      if (!used.count({e.u, e.v}) && b.size() < a.size()) b.push_back(e);
    auto ra = make(name, n, 20000, 20000, params);
    auto rb = make(name, n, 20000, 20000, params);
    auto da = feed(*ra, a);
    auto db = feed(*rb, b);
    const auto common = std::min<std::size_t>({da.size(), db.size(), static_cast<std::size_t>(prefix)});
    da.resize(common);
    db.resize(common);
    EXPECT_EQ(da, db) << name;
  }
}

// Two-stage minimum degree.

TEST(TwoStageMinDegree, GreedyRuleInStageOne) {
  auto run = make("two_stage_mindeg", 6, 15, 15, {{"k", "1"}, {"epsilon", "0.2"}});
  const auto d = feed(*run, {Edge(0, 1), Edge(0, 2), Edge(2, 3)});
  EXPECT_EQ(d, (std::vector<Decision>{Decision::Purchase, Decision::Skip, Decision::Purchase}));
  EXPECT_EQ(run->stage(), 0);
}

TEST(TwoStageMinDegree, StageOnePurchasesStayWithinItsBudget) {
  const std::int64_t n = 2000;
  const double eps1 = 0.1;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto run = make("two_stage_mindeg", n, 30000, 2400, {{"k", "2"}, {"epsilon", "0.2"}});
    EdgeStream stream(n, seed);
    drive(*run, stream);
    ASSERT_TRUE(run->counters().count("stage1_purchased"));
    EXPECT_LE(run->counters().at("stage1_purchased"), static_cast<std::int64_t>(std::floor((2 - eps1) * n / 2.0)));
    expect_ledger_sane(*run, 30000, 2400);
  }
}

TEST(TwoStageMinDegree, SucceedsOnMostSeeds) {
  EXPECT_GE(successes("two_stage_mindeg", 2000, 30000, 2400, {{"k", "2"}, {"epsilon", "0.2"}}, 30), 27);
}

TEST(TwoStageMinDegree, StageOneTimeFractionEndsStageOne) {
  auto run = make("two_stage_mindeg", 2000, 12000, 2400, {{"k", "2"}, {"stage1_time_fraction", "0.3"}});
  EdgeStream stream(2000, 1);
  drive(*run, stream);
  EXPECT_EQ(run->counters().at("stage1_start"), 3601);
}

// Hamiltonicity with a time bound.

TEST(HamTime, StageOneIsSmallAndWitnessesAreValid) {
  const std::int64_t n = 1000, t = 5181, b = 9000;
  int small = 0, ok = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto run = make("ham_time", n, t, b, {{"keep_degree", "2"}});
    EdgeStream stream(n, seed);
    drive(*run, stream);
    small += run->counters().at("stage1_purchased") < 8 * n;
    const auto v = validate(*run);
    if (run->succeeded()) {
      EXPECT_TRUE(v.ok) << v.why;
    }
    ok += v.ok;
    expect_ledger_sane(*run, t, b);
  }
  EXPECT_GE(small, 19);
  EXPECT_GE(ok, 12);
}

TEST(HamTime, SmallGraphsWithAmpleTime) { EXPECT_GE(successes("ham_time", 200, 20000, 20000, {}, 10), 9); }

// Hamiltonicity with a budget bound.

TEST(HamBudget, StageOneAndConnectorRules) {
  // n = 20, eps = 0.3: ten single-vertex paths at 0..9, cover goal 14.
  auto run = make("ham_budget", 20, 10000, 10000, {{"epsilon", "0.3"}});
  EXPECT_EQ(run->counters().at("paths"), 10);
  const auto d = feed(*run, {Edge(0, 15), Edge(0, 16), Edge(15, 16), Edge(10, 11), Edge(1, 2), Edge(2, 17)});
  EXPECT_EQ(d, (std::vector<Decision>{Decision::Purchase, Decision::Skip, Decision::Purchase, Decision::Skip,
                                      Decision::Skip, Decision::Purchase}));
  EXPECT_EQ(run->stage(), 0);
  feed(*run, {Edge(3, 18)});
  EXPECT_EQ(run->stage(), 1);
  // Paths: 0-15-16, 1, 2-17, 3-18, 4..9.
  const auto c = feed(*run, {Edge(2, 16), Edge(15, 3), Edge(2, 17), Edge(1, 4), Edge(10, 11)});
  EXPECT_EQ(c, (std::vector<Decision>{Decision::Purchase, Decision::Skip, Decision::Skip, Decision::Purchase,
                                      Decision::Skip}));
  EXPECT_EQ(run->counters().at("arcs"), 2);
}

TEST(HamBudget, ClosesValidHamiltonCycles) {
  EXPECT_EQ(successes("ham_budget", 300, 51000, 3000, {}, 10), 10);
}

TEST(HamBudget, RejectsParametersOutsideTheirRanges) {
  EXPECT_THROW(make("ham_budget", 100, 1000, 100, {{"epsilon", "0.4"}}), InvalidParameter);
  EXPECT_THROW(make("ham_budget", 100, 1000, 100, {{"sigma", "0.3"}, {"eta", "0.7"}}), InvalidParameter);
  EXPECT_THROW(make("ham_budget", 5, 10, 10), InvalidParameter);
}

TEST(DfsLongPath, ReturnsDirectedPaths) {
  Rng rng(9, 1);
  for (int trial = 0; trial < 200; ++trial) {
    const auto s = 1 + rng.below(12);
    std::vector<std::vector<std::int32_t>> out(s);
    for (std::size_t i = 0; i < s; ++i)
      for (std::size_t j = 0; j < s; ++j)
        if (i != j && rng.below(4) == 0) out[i].push_back(static_cast<std::int32_t>(j));
    const auto p = dfs_long_path(out);
    ASSERT_FALSE(p.empty());
    EXPECT_EQ(std::set<std::int32_t>(p.begin(), p.end()).size(), p.size());
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
      const auto& arcs = out[static_cast<std::size_t>(p[i])];
      EXPECT_NE(std::find(arcs.begin(), arcs.end(), p[i + 1]), arcs.end());
    }
  }
  std::vector<std::vector<std::int32_t>> chain(6);
  for (std::int32_t i = 0; i + 1 < 6; ++i) chain[static_cast<std::size_t>(i)].push_back(i + 1);
  EXPECT_EQ(dfs_long_path(chain), (std::vector<std::int32_t>{0, 1, 2, 3, 4, 5}));
}

// Perfect matching.

TEST(PerfectMatching, WitnessesAreValidAndLeftoverIsEven) {
  const std::int64_t n = 400;
  const std::map<std::string, std::string> params{
      {"leftover_fraction", "0.1"}, {"concurrent_boosters", "1"}, {"expander_until_complete", "1"}};
  int ok = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto run = make("perfect_matching", n, 24000, 400, params);
    EdgeStream stream(n, seed);
    drive(*run, stream);
    if (run->counters().count("v0_size")) {
      EXPECT_EQ(run->counters().at("v0_size") % 2, 0);
    }
    ok += validate(*run).ok;
    expect_ledger_sane(*run, 24000, 400);
  }
  EXPECT_EQ(ok, 10);
}

TEST(PerfectMatching, GreedyStageAndOddOrder) {
  auto run = make("perfect_matching", 6, 15, 15);
  const auto d = feed(*run, {Edge(0, 1), Edge(1, 2), Edge(2, 3)});
  EXPECT_EQ(d, (std::vector<Decision>{Decision::Purchase, Decision::Skip, Decision::Purchase}));
  EXPECT_THROW(make("perfect_matching", 7, 21, 21), InvalidParameter);
}

// Trees.

TEST(Tree, SingleCopyBranchUsesExactlyKMinusOnePurchases) {
  for (const char* name : {"P4", "S4", "P5", "T:0-1,1-2,0-3,3-4,0-5"}) {
    const auto target = parse_target(name);
    int ok = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      auto run = make("tree", 200, 2000, 100, {{"target", name}});
      EXPECT_EQ(run->counters().at("single_copy"), 1);
      EdgeStream stream(200, seed);
      drive(*run, stream);
      if (!run->succeeded()) continue;
      EXPECT_EQ(static_cast<std::int64_t>(run->ledger().purchased), target.vertices - 1);
      const auto v = validate(*run, &target);
      EXPECT_TRUE(v.ok) << v.why;
      ok += v.ok;
    }
    EXPECT_GE(ok, 18) << name;
  }
}

TEST(Tree, SeedExtensionRule) {
  // t < 5n: staged quotas; seeds are the lowest vertices.
  auto run = make("tree", 100, 50, 20, {{"target", "P3"}});
  EXPECT_EQ(run->counters().at("single_copy"), 0);
  const auto seeds = run->counters().at("quota_1");
  ASSERT_GE(seeds, 2);
  const auto d = feed(*run, {Edge(90, 91), Edge(0, 1), Edge(0, 95), Edge(0, 96)});
  // Both ends of (0, 1) are seeds, so neither is a fresh vertex.
  EXPECT_EQ(d[0], Decision::Skip);
  EXPECT_EQ(d[1], Decision::Skip);
  EXPECT_EQ(d[2], Decision::Purchase);
}

TEST(Tree, StagedQuotasBuildValidEmbeddings) {
  for (const char* name : {"P4", "S4", "P6", "T:0-1,1-2,0-3,3-4,0-5"}) {
    const auto target = parse_target(name);
    EXPECT_EQ(successes("tree", 1000, 4000, 1000, {{"target", name}}, 20, &target), 20) << name;
  }
}

TEST(Tree, QuotasDecrease) {
  auto run = make("tree", 100000, 10000, 317, {{"target", "P4"}});
  const auto& c = run->counters();
  EXPECT_EQ(c.at("quota_2"), 106);
  EXPECT_EQ(c.at("quota_3"), 4);
  EXPECT_EQ(c.at("quota_4"), 1);
  EXPECT_GE(c.at("quota_1"), c.at("quota_2"));
}

// Cycles.

TEST(Cycle, TriangleTrapRule) {
  auto run = make("cycle", 10, 1000, 10, {{"length", "3"}, {"d", "2"}, {"r", "1"}});
  const auto d = feed(*run, {Edge(0, 5), Edge(1, 2), Edge(0, 6), Edge(5, 7), Edge(5, 6)});
  EXPECT_EQ(d, (std::vector<Decision>{Decision::Purchase, Decision::Skip, Decision::Purchase, Decision::Skip,
                                      Decision::Purchase}));
  const auto target = Target::cycle(3);
  const auto v = validate(*run, &target);
  EXPECT_TRUE(v.ok) << v.why;
  EXPECT_EQ(run->witness().vertices, (std::vector<Vertex>{5, 0, 6, 5}));
}

TEST(Cycle, FourCycleUsesTheMateTree) {
  auto run = make("cycle", 12, 1000, 20, {{"length", "4"}, {"d", "2"}, {"r", "1"}});
  // Stage 0 finds the mate of root 0; then both trees grow two leaves each.
  const auto d = feed(*run, {Edge(0, 5), Edge(0, 6), Edge(6, 10), Edge(5, 7), Edge(0, 8), Edge(5, 9), Edge(6, 8),
                             Edge(6, 7), Edge(8, 9)});
  EXPECT_EQ(d, (std::vector<Decision>{Decision::Purchase, Decision::Purchase, Decision::Skip, Decision::Purchase,
                                      Decision::Purchase, Decision::Purchase, Decision::Skip, Decision::Purchase}));
  EXPECT_EQ(run->witness().vertices, (std::vector<Vertex>{6, 0, 5, 7, 6}));
  const auto target = Target::cycle(4);
  const auto v = validate(*run, &target);
  EXPECT_TRUE(v.ok) << v.why;
}

TEST(Cycle, PlanValuesAreFrozen) {
  CycleParams p;
  const auto c3 = plan_cycle(10000, 1000000, 100, p);
  EXPECT_EQ(c3.t_prime, static_cast<std::int64_t>(std::ceil(1e6 / std::log(std::log(1e4)))));
  EXPECT_EQ(c3.t_prime, 450385);
  EXPECT_EQ(c3.d, 5);
  EXPECT_EQ(c3.r, 4);
  p.sizing = TreeSizing::Greedy;
  const auto g3 = plan_cycle(10000, 1000000, 100, p);
  EXPECT_EQ(g3.d, 45);
  EXPECT_EQ(g3.r, 1);
  p.length = 5;
  const auto g5 = plan_cycle(10000, 398108, 159, p);
  EXPECT_EQ(g5.t_prime, 184207);
  EXPECT_EQ(g5.d, 8);
  EXPECT_EQ(g5.r, 1);
  EXPECT_LE(tree_cost(g5.d, g5.k, g5.even), 159 / 2);
}

TEST(Cycle, GreedySizingClosesShortCycles) {
  for (std::int32_t length = 3; length <= 6; ++length) {
    const auto target = Target::cycle(length);
    EXPECT_GE(successes("cycle", 2000, 200000, 400, {{"length", std::to_string(length)}, {"sizing", "greedy"}}, 10,
                        &target),
              9)
        << length;
  }
}

// Shared contracts.

TEST(Ledger, CapsAreRespectedEverywhere) {
  const std::int64_t n = 200, t = 3000, b = 50;
  for (const auto& name : strategy_names()) {
    std::map<std::string, std::string> params;
    if (name == "tree") params["target"] = "P4";
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      auto run = make(name, n, t, b, params);
      EdgeStream stream(n, seed);
      drive(*run, stream);
      EXPECT_TRUE(run->finished()) << name;
      expect_ledger_sane(*run, t, b);
      EXPECT_THROW(run->observe(Edge(0, 1)), ContractViolation);
    }
  }
}

TEST(Factory, RejectsUnknownNamesParametersAndValues) {
  EXPECT_THROW(make("nope", 10, 10, 10), InvalidParameter);
  EXPECT_THROW(make("connectivity", 10, 10, 10, {{"k", "1"}}), InvalidParameter);
  EXPECT_THROW(make("nn_emulation", 10, 10, 10, {{"k", "two"}}), InvalidParameter);
  EXPECT_THROW(make("perfect_matching", 10, 10, 10, {{"accept_path", "maybe"}}), InvalidParameter);
  EXPECT_THROW(make("cycle", 10, 10, 10, {{"sizing", "huge"}}), InvalidParameter);
  EXPECT_THROW(make("two_stage_mindeg", 10, 10, 10, {{"stage2", "outside"}}), InvalidParameter);
  EXPECT_EQ(strategy_names().size(), 8u);
  for (const auto& name : strategy_names()) {
    std::map<std::string, std::string> params;
    if (name == "tree") params["target"] = "P3";
    EXPECT_EQ(make(name, 20, 100, 10, params)->descriptor().name, name);
  }
}

TEST(Stages, AreMonotoneAndNamed) {
  auto run = make("ham_budget", 300, 51000, 3000);
  EdgeStream stream(300, 0);
  int last = 0;
  while (!run->finished()) {
    run->observe(*stream.next());
    EXPECT_GE(run->stage(), last);
    last = run->stage();
  }
  EXPECT_EQ(run->stage_name(), "closing");
}
