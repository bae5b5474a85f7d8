#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "builder/rotation.hpp"
#include "builder/strategies/block.hpp"
#include "builder/strategy.hpp"

namespace builder {

struct HamBudgetParams {
  double epsilon = 0.1;
  double sigma = 0.4;
  double eta = 0.6;
  std::int32_t expander_degree = 8;
  // Q is shortened until each leftover block has at least this many vertices.
  std::int32_t min_block = 3;
  RotationConfig rotation{};
};

// Longest stack reached by a depth-first search of a digraph: every stack is a
// directed path.
inline std::vector<std::int32_t> dfs_long_path(const std::vector<std::vector<std::int32_t>>& out) {
  const auto s = out.size();
  std::vector<char> seen(s, 0);
  std::vector<std::size_t> next(s, 0);
  std::vector<std::int32_t> stack, best;
  for (std::size_t root = 0; root < s; ++root) {
    if (seen[root]) continue;
    seen[root] = 1;
    stack.assign(1, static_cast<std::int32_t>(root));
    if (best.empty()) best = stack;
    while (!stack.empty()) {
      const auto top = static_cast<std::size_t>(stack.back());
      if (next[top] < out[top].size()) {
        const auto w = out[top][next[top]++];
        if (seen[static_cast<std::size_t>(w)]) continue;
        seen[static_cast<std::size_t>(w)] = 1;
        stack.push_back(w);
        if (stack.size() > best.size()) best = stack;
      } else {
        stack.pop_back();
      }
    }
  }
  return best;
}

// Five stages: disjoint paths, connectors and a depth-first path Q through
// them, two leftover blocks prepared with O_8, boosters inside each block with
// a fixed end, and one edge joining the two endpoint sets.
class HamBudgetRun final : public BuilderRun {
 public:
  HamBudgetRun(std::int64_t n, std::int64_t t, std::int64_t b, HamBudgetParams p)
      : BuilderRun(n, t, b), p_(p), path_of_(static_cast<std::size_t>(n), -1),
        last_of_(static_cast<std::size_t>(n), -1), first_of_(static_cast<std::size_t>(n), -1) {
    if (n < 8) throw InvalidParameter("ham_budget needs n >= 8");
    if (!(p.epsilon > 0.0 && p.epsilon < 1.0 / 3.0)) throw InvalidParameter("ham_budget needs 0 < epsilon < 1/3");
    if (!(p.sigma > 0.0 && p.sigma < 0.5)) throw InvalidParameter("ham_budget needs 0 < sigma < 1/2");
    if (!(p.eta > p.sigma && p.eta < 2.0 * p.sigma)) throw InvalidParameter("ham_budget needs sigma < eta < 2 sigma");
    if (p.min_block < 1) throw InvalidParameter("min_block must be positive");
    const double nn = static_cast<double>(n);
    const double ln = std::log(nn);
    const auto s = std::min<std::int64_t>(n / 2, static_cast<std::int64_t>(std::ceil(nn / std::pow(ln, p.sigma))));
    cover_goal_ = static_cast<std::int64_t>(std::ceil((1.0 - p.epsilon) * nn));
    paths_cap_ = static_cast<std::int64_t>(std::ceil(3.0 / p.epsilon * nn * ln));
    connect_time_ = static_cast<std::int64_t>(std::ceil(nn * std::pow(ln, p.eta)));
    blocks_cap_ = paths_cap_;
    boosters_cap_ = static_cast<std::int64_t>(std::ceil(nn * ln));
    paths_.resize(static_cast<std::size_t>(s));
    for (std::int64_t j = 0; j < s; ++j) {
      paths_[static_cast<std::size_t>(j)].push_back(static_cast<Vertex>(j));
      path_of_[static_cast<std::size_t>(j)] = static_cast<std::int32_t>(j);
      last_of_[static_cast<std::size_t>(j)] = static_cast<std::int32_t>(j);
      first_of_[static_cast<std::size_t>(j)] = static_cast<std::int32_t>(j);
    }
    covered_ = s;
    set_counter("paths", s);
  }

  StrategyDescriptor descriptor() const override {
    return {"ham_budget",
            {{"epsilon", format_param(p_.epsilon)},
             {"sigma", format_param(p_.sigma)},
             {"eta", format_param(p_.eta)},
             {"expander_degree", std::to_string(p_.expander_degree)}},
            {"paths", "connectors", "blocks", "boosters", "closing"}};
  }

 protected:
  Decision decide(Edge e) override {
    const auto since = now() - began_;
    switch (stage()) {
      case 0:
        if (since > paths_cap_) return starve("observation cap");
        return path_extension(e) ? Decision::Purchase : Decision::Skip;
      case 1:
        if (since > connect_time_) {
          enter_blocks();
          return decide(e);
        }
        return connector(e) ? Decision::Purchase : Decision::Skip;
      case 2:
        if (since > blocks_cap_) return starve("observation cap");
        return block_rule(e) ? Decision::Purchase : Decision::Skip;
      case 3:
        if (since > boosters_cap_) return starve("observation cap");
        for (int i = 0; i < 2; ++i) {
          auto& blk = *blocks_[i];
          if (!engines_[i]->spanning() && blk.inside(e) && engines_[i]->is_operational_booster(blk.to_local(e)))
            return Decision::Purchase;
        }
        return Decision::Skip;
      default:
        return joins_ends(e) ? Decision::Purchase : Decision::Skip;
    }
  }

  void on_purchased(Edge e) override {
    switch (stage()) {
      case 0: {
        const Vertex head = last_of_[static_cast<std::size_t>(e.u)] >= 0 && path_of_[static_cast<std::size_t>(e.v)] < 0 ? e.u : e.v;
        const Vertex fresh = e.other(head);
        const auto j = last_of_[static_cast<std::size_t>(head)];
        auto& path = paths_[static_cast<std::size_t>(j)];
        path.push_back(fresh);
        last_of_[static_cast<std::size_t>(head)] = -1;
        last_of_[static_cast<std::size_t>(fresh)] = j;
        path_of_[static_cast<std::size_t>(fresh)] = j;
        if (++covered_ >= cover_goal_) {
          set_counter("stage0_purchased", static_cast<std::int64_t>(ledger().purchased));
          begin(1);
          digraph_.assign(paths_.size(), {});
        }
        return;
      }
      case 1:
        add_arc(e.u, e.v);
        add_arc(e.v, e.u);
        bump("arcs");
        return;
      case 2:
        for (int i = 0; i < 2; ++i) {
          if (w_[i] < 0 && (e.u == q_[i] || e.v == q_[i]) && blocks_[i]->contains(e.other(q_[i]))) w_[i] = e.other(q_[i]);
          blocks_[i]->add(e);
        }
        if (w_[0] >= 0 && w_[1] >= 0 && blocks_[0]->below_goal_count() == 0 && blocks_[1]->below_goal_count() == 0)
          enter_boosters();
        return;
      case 3:
        for (int i = 0; i < 2; ++i)
          if (blocks_[i]->add(e)) engines_[i]->absorb_edge(blocks_[i]->to_local(e));
        if (engines_[0]->spanning() && engines_[1]->spanning()) enter_closing();
        return;
      default:
        close(e);
    }
  }

 private:
  void begin(int s) {
    set_stage(s);
    began_ = now();
  }

  bool joins_ends(Edge e) const {
    const auto u = static_cast<std::size_t>(e.u), v = static_cast<std::size_t>(e.v);
    return (in_y_[0][u] && in_y_[1][v]) || (in_y_[1][u] && in_y_[0][v]);
  }

  Decision starve(const std::string& what) {
    fail_stage(what);
    return Decision::Skip;
  }

  bool path_extension(Edge e) const {
    const auto u = static_cast<std::size_t>(e.u), v = static_cast<std::size_t>(e.v);
    return (last_of_[u] >= 0 && path_of_[v] < 0) || (last_of_[v] >= 0 && path_of_[u] < 0);
  }

  bool connector(Edge e) const {
    const auto u = static_cast<std::size_t>(e.u), v = static_cast<std::size_t>(e.v);
    return (last_of_[u] >= 0 && first_of_[v] >= 0 && last_of_[u] != first_of_[v]) ||
           (last_of_[v] >= 0 && first_of_[u] >= 0 && last_of_[v] != first_of_[u]);
  }

  void add_arc(Vertex tail_end, Vertex head_start) {
    const auto i = last_of_[static_cast<std::size_t>(tail_end)];
    const auto j = first_of_[static_cast<std::size_t>(head_start)];
    if (i >= 0 && j >= 0 && i != j) digraph_[static_cast<std::size_t>(i)].push_back(j);
  }

  bool block_rule(Edge e) const {
    for (int i = 0; i < 2; ++i) {
      const auto& blk = *blocks_[i];
      if (w_[i] < 0 && ((e.u == q_[i] && blk.contains(e.v)) || (e.v == q_[i] && blk.contains(e.u)))) return true;
      if (blk.inside(e) && (blk.below_goal(e.u) || blk.below_goal(e.v))) return true;
    }
    return false;
  }

  void enter_blocks() {
    const auto order = dfs_long_path(digraph_);
    const auto n = graph().vertex_count();
    std::vector<char> in_q(static_cast<std::size_t>(n), 0);
    for (auto j : order)
      for (Vertex v : paths_[static_cast<std::size_t>(j)]) {
        q_path_.push_back(v);
        in_q[static_cast<std::size_t>(v)] = 1;
      }
    set_counter("q_dfs_paths", static_cast<std::int64_t>(order.size()));
    set_counter("q_vertices", static_cast<std::int64_t>(q_path_.size()));
    const auto need = 2 * static_cast<std::int64_t>(p_.min_block);
    while (n - static_cast<std::int64_t>(q_path_.size()) < need && q_path_.size() > 1) {
      in_q[static_cast<std::size_t>(q_path_.back())] = 0;
      q_path_.pop_back();
    }
    std::vector<Vertex> rest;
    for (Vertex v = 0; v < n; ++v)
      if (!in_q[static_cast<std::size_t>(v)]) rest.push_back(v);
    const auto half = rest.size() / 2;
    blocks_[0] = std::make_unique<Block>(n, std::vector<Vertex>(rest.begin(), rest.begin() + static_cast<std::ptrdiff_t>(half)));
    blocks_[1] = std::make_unique<Block>(n, std::vector<Vertex>(rest.begin() + static_cast<std::ptrdiff_t>(half), rest.end()));
    q_[0] = q_path_.front();
    q_[1] = q_path_.back();
    begin(2);
    for (auto& blk : blocks_) {
      blk->add_all(graph());
      blk->track_degree(p_.expander_degree);
    }
    set_counter("v1_size", blocks_[0]->size());
    set_counter("v2_size", blocks_[1]->size());
    set_counter("stage1_purchased", static_cast<std::int64_t>(ledger().purchased) - counters().at("stage0_purchased"));
    if (q_path_.size() == 1 && q_[0] == q_[1]) fail_stage("path Q degenerated to one vertex");
  }

  void enter_boosters() {
    begin(3);
    for (int i = 0; i < 2; ++i) {
      engines_[i] = std::make_unique<PathSystem>(blocks_[i]->graph(), p_.rotation);
      engines_[i]->seed(blocks_[i]->local(w_[i]), true);
    }
    if (engines_[0]->spanning() && engines_[1]->spanning()) enter_closing();
  }

  void enter_closing() {
    begin(4);
    const auto n = static_cast<std::size_t>(graph().vertex_count());
    for (int i = 0; i < 2; ++i) {
      in_y_[i].assign(n, 0);
      const auto ends = blocks_[i]->to_global(engines_[i]->endpoint_set());
      for (Vertex y : ends) in_y_[i][static_cast<std::size_t>(y)] = 1;
      set_counter("y" + std::to_string(i + 1) + "_size", static_cast<std::int64_t>(ends.size()));
    }
  }

  void close(Edge e) {
    const Vertex y1 = in_y_[0][static_cast<std::size_t>(e.u)] ? e.u : e.v;
    const Vertex y2 = e.other(y1);
    auto h1 = blocks_[0]->to_global(engines_[0]->path_to(blocks_[0]->local(y1)));
    auto h2 = blocks_[1]->to_global(engines_[1]->path_to(blocks_[1]->local(y2)));
    std::vector<Vertex> cycle = q_path_;
    cycle.insert(cycle.end(), h2.begin(), h2.end());
    cycle.insert(cycle.end(), h1.rbegin(), h1.rend());
    cycle.push_back(cycle.front());
    succeed({WitnessKind::HamiltonCycle, std::move(cycle), {}});
  }

  HamBudgetParams p_;
  std::int64_t cover_goal_ = 0;
  std::int64_t paths_cap_ = 0;
  std::int64_t connect_time_ = 0;
  std::int64_t blocks_cap_ = 0;
  std::int64_t boosters_cap_ = 0;
  std::int64_t covered_ = 0;
  std::int64_t began_ = 0;
  std::vector<std::vector<Vertex>> paths_;
  std::vector<std::int32_t> path_of_;
  std::vector<std::int32_t> last_of_;
  std::vector<std::int32_t> first_of_;
  std::vector<std::vector<std::int32_t>> digraph_;
  std::vector<Vertex> q_path_;
  Vertex q_[2] = {-1, -1};
  Vertex w_[2] = {-1, -1};
  std::unique_ptr<Block> blocks_[2];
  std::unique_ptr<PathSystem> engines_[2];
  std::vector<char> in_y_[2];
};

}  // namespace builder
