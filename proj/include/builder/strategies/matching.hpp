#pragma once

#include <cmath>
#include <cstdint>
#include <memory>
#include <vector>

#include "builder/rotation.hpp"
#include "builder/strategies/block.hpp"
#include "builder/strategy.hpp"

namespace builder {

struct MatchingParams {
  double epsilon = 0.5;
  // Fraction of vertices left for the Hamiltonian block; 0 selects epsilon/20.
  double leftover_fraction = 0.0;
  std::int32_t expander_degree = 8;
  // Purchase boosters while the block expander is still being built.
  bool concurrent_boosters = false;
  // Finish on a Hamilton path of the (even) block instead of a cycle.
  bool accept_path = false;
  // Keep the O_8 stage running until complete instead of (1 + eps') n ln n.
  bool expander_until_complete = false;
  RotationConfig rotation{};
};

// Greedy matching until few vertices stay uncovered, O_8 emulation on the
// uncovered set V0 for (1 + eps') n ln n observations or until complete,
// boosters inside V0 until B[V0] is Hamiltonian; the
// matching is completed with alternate edges of the Hamilton cycle.
class MatchingRun final : public BuilderRun {
 public:
  MatchingRun(std::int64_t n, std::int64_t t, std::int64_t b, MatchingParams p)
      : BuilderRun(n, t, b), p_(p), matched_(static_cast<std::size_t>(n), 0) {
    if (n < 2 || n % 2 != 0) throw InvalidParameter("perfect_matching needs an even n >= 2");
    if (!(p.epsilon > 0.0)) throw InvalidParameter("perfect_matching needs epsilon > 0");
    if (p.leftover_fraction < 0.0 || p.leftover_fraction >= 1.0)
      throw InvalidParameter("leftover_fraction must lie in [0, 1)");
    fraction_ = p.leftover_fraction > 0.0 ? p.leftover_fraction : p.epsilon / 20.0;
    const double nn = static_cast<double>(n);
    uncovered_goal_ = static_cast<std::int64_t>(std::floor(fraction_ * nn));
    matching_cap_ = static_cast<std::int64_t>(std::ceil(nn / (fraction_ * fraction_)));
    expander_time_ = static_cast<std::int64_t>(std::ceil((1.0 + fraction_) * nn * std::log(nn)));
    uncovered_ = n;
  }

  StrategyDescriptor descriptor() const override {
    return {"perfect_matching",
            {{"epsilon", format_param(p_.epsilon)},
             {"leftover_fraction", format_param(fraction_)},
             {"expander_degree", std::to_string(p_.expander_degree)},
             {"concurrent_boosters", p_.concurrent_boosters ? "1" : "0"},
             {"accept_path", p_.accept_path ? "1" : "0"},
             {"expander_until_complete", p_.expander_until_complete ? "1" : "0"}},
            {"matching", "expander", "boosters"}};
  }

 protected:
  Decision decide(Edge e) override {
    if (stage() == 0) {
      if (now() > matching_cap_) {
        fail_stage("observation cap");
        return Decision::Skip;
      }
      return !matched_[static_cast<std::size_t>(e.u)] && !matched_[static_cast<std::size_t>(e.v)] ? Decision::Purchase
                                                                                                    : Decision::Skip;
    }
    if (stage() == 1 && !p_.expander_until_complete && now() - expander_start_ > expander_time_) enter_boosters();
    if (!block_->inside(e)) return Decision::Skip;
    if (stage() == 1 && (block_->below_goal(e.u) || block_->below_goal(e.v))) return Decision::Purchase;
    if (engine_ && engine_->is_operational_booster(block_->to_local(e))) return Decision::Purchase;
    return Decision::Skip;
  }

  void on_purchased(Edge e) override {
    if (stage() == 0) {
      matched_[static_cast<std::size_t>(e.u)] = matched_[static_cast<std::size_t>(e.v)] = 1;
      matching_.push_back(e);
      uncovered_ -= 2;
      if (uncovered_ <= uncovered_goal_) enter_expander();
      return;
    }
    block_->add(e);
    if (engine_) {
      engine_->absorb_edge(block_->to_local(e));
      if (check_done()) return;
    }
    if (stage() == 1 && block_->below_goal_count() == 0) enter_boosters();
  }

 private:
  void enter_expander() {
    set_stage(1);
    expander_start_ = now();
    std::vector<Vertex> rest;
    for (Vertex v = 0; v < graph().vertex_count(); ++v)
      if (!matched_[static_cast<std::size_t>(v)]) rest.push_back(v);
    if (rest.size() % 2 != 0) throw ContractViolation("uncovered set has odd size");
    set_counter("v0_size", static_cast<std::int64_t>(rest.size()));
    set_counter("matching_purchased", static_cast<std::int64_t>(matching_.size()));
    block_ = std::make_unique<Block>(graph().vertex_count(), std::move(rest));
    if (block_->size() == 0) {
      succeed({WitnessKind::PerfectMatching, {}, matching_});
      return;
    }
    block_->track_degree(p_.expander_degree);
    if (p_.concurrent_boosters) start_engine();
    if (!finished() && block_->below_goal_count() == 0) enter_boosters();
  }

  void enter_boosters() {
    set_stage(2);
    set_counter("block_below_degree", block_->below_goal_count());
    if (!engine_) start_engine();
  }

  void start_engine() {
    engine_ = std::make_unique<PathSystem>(block_->graph(), p_.rotation);
    engine_->seed(0);
    check_done();
  }

  bool check_done() {
    std::vector<Vertex> walk;
    if (engine_->has_hamilton_cycle()) {
      walk = engine_->hamilton_cycle();
    } else if (p_.accept_path && engine_->spanning()) {
      walk = engine_->path();
    } else if (block_->size() == 2 && engine_->spanning()) {
      walk = engine_->path();
    } else {
      return false;
    }
    auto matching = matching_;
    for (std::size_t i = 0; i + 1 < walk.size() && matching.size() * 2 < static_cast<std::size_t>(graph().vertex_count());
         i += 2)
      matching.emplace_back(block_->global(walk[i]), block_->global(walk[i + 1]));
    succeed({WitnessKind::PerfectMatching, {}, std::move(matching)});
    return true;
  }

  MatchingParams p_;
  double fraction_ = 0.0;
  std::int64_t uncovered_goal_ = 0;
  std::int64_t matching_cap_ = 0;
  std::int64_t expander_time_ = 0;
  std::int64_t expander_start_ = 0;
  std::int64_t uncovered_ = 0;
  std::vector<char> matched_;
  std::vector<Edge> matching_;
  std::unique_ptr<Block> block_;
  std::unique_ptr<PathSystem> engine_;
};

}  // namespace builder
