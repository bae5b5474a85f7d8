#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "builder/strategy.hpp"

namespace builder {

// Purchases exactly the edges that merge two components of Builder's graph.
class ConnectivityRun final : public BuilderRun {
 public:
  ConnectivityRun(std::int64_t n, std::int64_t t, std::int64_t b) : BuilderRun(n, t, b) {
    if (n == 1) succeed({WitnessKind::SpanningTree, {}, {}});
  }

  StrategyDescriptor descriptor() const override { return {"connectivity", {}, {"spanning forest"}}; }

 protected:
  Decision decide(Edge e) override {
    return graph().same_component(e.u, e.v) ? Decision::Skip : Decision::Purchase;
  }
  void on_purchased(Edge) override {
    if (graph().component_count() == 1) succeed({WitnessKind::SpanningTree, {}, graph().edges()});
  }
};

// Tracks how many vertices of Builder's graph have degree below a threshold.
class LowDegreeCounter {
 public:
  LowDegreeCounter(std::int64_t n, std::int32_t k) : k_(k), low_(k > 0 ? n : 0) {}
  void on_edge(const PurchasedGraph& g, Edge e) {
    if (g.degree(e.u) == k_) --low_;
    if (g.degree(e.v) == k_) --low_;
  }
  std::int64_t low() const { return low_; }

 private:
  std::int32_t k_;
  std::int64_t low_;
};

// k-nearest-neighbour emulation: keep every edge touching a vertex of degree
// below k. At the hitting time of minimum degree k the result is exactly O_k.
class NearestNeighbourRun final : public BuilderRun {
 public:
  NearestNeighbourRun(std::int64_t n, std::int64_t t, std::int64_t b, std::int32_t k)
      : BuilderRun(n, t, b), k_(k), low_(n, k) {
    if (k < 1) throw InvalidParameter("nn_emulation needs k >= 1");
  }

  StrategyDescriptor descriptor() const override {
    return {"nn_emulation", {{"k", std::to_string(k_)}}, {"emulate O_k"}};
  }

 protected:
  Decision decide(Edge e) override {
    return graph().degree(e.u) < k_ || graph().degree(e.v) < k_ ? Decision::Purchase : Decision::Skip;
  }
  void on_purchased(Edge e) override {
    low_.on_edge(graph(), e);
    if (low_.low() == 0) succeed({WitnessKind::MinDegree, {}, {}});
  }

 private:
  std::int32_t k_;
  LowDegreeCounter low_;
};

struct MinDegreeParams {
  std::int32_t k = 1;
  double epsilon = 0.2;
  // Stage II scope: incident keeps any edge touching a deficient vertex of V0;
  // inside keeps only edges with both ends in V0.
  bool stage2_inside = false;
  // Stage I also ends after this fraction of t observations.
  double stage1_time_fraction = 1.0;
};

// Greedy k-matching followed by nearest-neighbour emulation on the vertices
// the matching left deficient.
class MinDegreeTwoStageRun final : public BuilderRun {
 public:
  MinDegreeTwoStageRun(std::int64_t n, std::int64_t t, std::int64_t b, MinDegreeParams p)
      : BuilderRun(n, t, b), p_(p), low_(n, p.k) {
    if (p.k < 1) throw InvalidParameter("two_stage_mindeg needs k >= 1");
    if (!(p.epsilon > 0.0 && p.epsilon < 2.0)) throw InvalidParameter("two_stage_mindeg needs 0 < epsilon < 2");
    const double eps1 = p.epsilon / 2.0;
    const double nn = static_cast<double>(n);
    if (!(p.stage1_time_fraction > 0.0 && p.stage1_time_fraction <= 1.0))
      throw InvalidParameter("stage1_time_fraction must lie in (0, 1]");
    stage1_time_ = std::min(static_cast<std::int64_t>(std::ceil(p.k / (eps1 * eps1) * nn)),
                            static_cast<std::int64_t>(std::ceil(p.stage1_time_fraction * static_cast<double>(t))));
    stage1_budget_ = static_cast<std::int64_t>(std::floor((p.k - eps1) * nn / 2.0));
    stage1_target_ = static_cast<std::int64_t>(std::floor(eps1 * nn));
  }

  StrategyDescriptor descriptor() const override {
    return {"two_stage_mindeg",
            {{"k", std::to_string(p_.k)},
             {"epsilon", format_param(p_.epsilon)},
             {"stage2", p_.stage2_inside ? "inside" : "incident"},
             {"stage1_time_fraction", format_param(p_.stage1_time_fraction)}},
            {"k-matching", "low-degree vertices"}};
  }

 protected:
  Decision decide(Edge e) override {
    const auto& g = graph();
    if (stage() == 0) {
      if (now() > stage1_time_ || low_.low() <= stage1_target_ || purchased_stage1_ >= stage1_budget_) enter_stage2();
    }
    if (stage() == 0) return g.degree(e.u) < p_.k && g.degree(e.v) < p_.k ? Decision::Purchase : Decision::Skip;
    const bool u_low = in_v0_[static_cast<std::size_t>(e.u)] && g.degree(e.u) < p_.k;
    const bool v_low = in_v0_[static_cast<std::size_t>(e.v)] && g.degree(e.v) < p_.k;
    if (p_.stage2_inside && !(in_v0_[static_cast<std::size_t>(e.u)] && in_v0_[static_cast<std::size_t>(e.v)]))
      return Decision::Skip;
    return u_low || v_low ? Decision::Purchase : Decision::Skip;
  }

  void on_purchased(Edge e) override {
    if (stage() == 0) ++purchased_stage1_;
    low_.on_edge(graph(), e);
    if (low_.low() == 0) succeed({WitnessKind::MinDegree, {}, {}});
  }

 private:
  void enter_stage2() {
    set_stage(1);
    in_v0_.assign(static_cast<std::size_t>(graph().vertex_count()), 0);
    std::int64_t size = 0;
    for (Vertex v = 0; v < graph().vertex_count(); ++v)
      if (graph().degree(v) < p_.k) {
        in_v0_[static_cast<std::size_t>(v)] = 1;
        ++size;
      }
    set_counter("v0_size", size);
    set_counter("stage1_purchased", purchased_stage1_);
  }

  MinDegreeParams p_;
  LowDegreeCounter low_;
  std::int64_t stage1_time_ = 0;
  std::int64_t stage1_budget_ = 0;
  std::int64_t stage1_target_ = 0;
  std::int64_t purchased_stage1_ = 0;
  std::vector<char> in_v0_;
};

}  // namespace builder
