#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "builder/edge.hpp"
#include "builder/errors.hpp"
#include "builder/graph.hpp"

namespace builder {

enum class Decision { Skip, Purchase };

enum class RunStatus { Running, Succeeded, Failed };

inline const char* to_string(RunStatus s) {
  switch (s) {
    case RunStatus::Running: return "running";
    case RunStatus::Succeeded: return "success";
    case RunStatus::Failed: return "failure";
  }
  return "?";
}

struct StrategyDescriptor {
  std::string name;
  std::vector<std::pair<std::string, std::string>> params;
  std::vector<std::string> stages;
};

enum class WitnessKind { None, SpanningTree, MinDegree, HamiltonCycle, PerfectMatching, Embedding, Cycle };

// What a successful run exhibits. Cycles repeat their first vertex at the end;
// embeddings map target vertex i to vertices[i].
struct Witness {
  WitnessKind kind = WitnessKind::None;
  std::vector<Vertex> vertices;
  std::vector<Edge> edges;
};

// Builder's side of one trial: the purchased graph, the ledgers and the
// strategy state machine. Subclasses implement decide(); observe() enforces the
// observation and purchase caps.
class BuilderRun {
 public:
  BuilderRun(std::int64_t n, std::int64_t max_observations, std::int64_t max_purchases)
      : graph_(n) {
    if (max_observations < 0 || max_purchases < 0) throw InvalidParameter("caps must be nonnegative");
    ledger_.max_purchases = static_cast<std::uint64_t>(max_purchases);
    ledger_.max_observations = static_cast<std::uint64_t>(max_observations);
  }
  BuilderRun(const BuilderRun&) = delete;
  BuilderRun& operator=(const BuilderRun&) = delete;
  virtual ~BuilderRun() = default;

  Decision observe(Edge e) {
    if (status_ != RunStatus::Running) throw ContractViolation("observe after the run finished");
    if (!ledger_.can_observe()) throw ContractViolation("observation cap exceeded");
    ++ledger_.observed;
    Decision d = decide(e);
    if (d == Decision::Purchase) {
      if (!ledger_.can_purchase()) {
        budget_refusals_ += 1;
        d = Decision::Skip;
      } else {
        graph_.add_edge(e);
        ++ledger_.purchased;
        on_purchased(e);
      }
    }
    if (status_ == RunStatus::Running && !ledger_.can_observe()) finish();
    return d;
  }

  // Called by the driver when no more edges will be observed.
  void finish() {
    if (status_ != RunStatus::Running) return;
    on_finish();
    if (status_ == RunStatus::Running) fail("time cap reached");
  }

  bool finished() const { return status_ != RunStatus::Running; }
  bool succeeded() const { return status_ == RunStatus::Succeeded; }
  RunStatus status() const { return status_; }
  const std::string& failure_reason() const { return failure_reason_; }
  const PurchasedGraph& graph() const { return graph_; }
  const BudgetLedger& ledger() const { return ledger_; }
  std::int64_t budget_refusals() const { return budget_refusals_; }
  int stage() const { return stage_; }
  std::string stage_name() const {
    const auto d = descriptor();
    return stage_ < static_cast<int>(d.stages.size()) ? d.stages[static_cast<std::size_t>(stage_)] : "?";
  }
  const std::map<std::string, std::int64_t>& counters() const { return counters_; }
  const Witness& witness() const { return witness_; }

  virtual StrategyDescriptor descriptor() const = 0;

 protected:
  virtual Decision decide(Edge e) = 0;
  virtual void on_purchased(Edge) {}
  virtual void on_finish() {}

  std::int64_t now() const { return static_cast<std::int64_t>(ledger_.observed); }
  std::int64_t purchases_left() const { return static_cast<std::int64_t>(ledger_.max_purchases - ledger_.purchased); }
  std::int64_t observations_left() const {
    return static_cast<std::int64_t>(ledger_.max_observations - ledger_.observed);
  }

  void succeed(Witness w) {
    witness_ = std::move(w);
    status_ = RunStatus::Succeeded;
  }
  void fail(std::string reason) {
    failure_reason_ = std::move(reason);
    status_ = RunStatus::Failed;
  }
  void fail_stage(const std::string& what) { fail(stage_name() + ": " + what); }
  void set_stage(int s) {
    if (s < stage_) throw ContractViolation("stage transitions are irreversible");
    stage_ = s;
    counters_["stage" + std::to_string(s) + "_start"] = now();
  }
  void set_counter(const std::string& key, std::int64_t value) { counters_[key] = value; }
  void bump(const std::string& key, std::int64_t by = 1) { counters_[key] += by; }

 private:
  PurchasedGraph graph_;
  BudgetLedger ledger_;
  RunStatus status_ = RunStatus::Running;
  std::string failure_reason_;
  std::int64_t budget_refusals_ = 0;
  int stage_ = 0;
  std::map<std::string, std::int64_t> counters_;
  Witness witness_;
};

inline std::string format_param(double x) {
  std::string s = std::to_string(x);
  s.erase(s.find_last_not_of('0') + 1);
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

}  // namespace builder
