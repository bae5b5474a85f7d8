#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "builder/strategy.hpp"

namespace builder {

enum class TreeSizing { Literal, Greedy };

inline const char* to_string(TreeSizing s) { return s == TreeSizing::Literal ? "literal" : "greedy"; }

struct CycleParams {
  std::int32_t length = 3;
  // Literal: d = ceil(c s^(1/k)), r = ceil(b/(2s)). Greedy: the largest d whose
  // trees fit both half the budget and t'/(k n) per level, r = budget / tree size.
  TreeSizing sizing = TreeSizing::Literal;
  double c = 0.0;  // 0 selects 1/(k+2)
  std::int64_t d_override = 0;
  std::int64_t r_override = 0;
};

struct CyclePlan {
  std::int32_t k = 0;
  bool even = false;
  std::int64_t t_prime = 0;
  double b_prime = 0.0;
  double s = 0.0;
  std::int64_t d = 0;
  std::int64_t r = 0;
};

// Vertices bought per root: a d-ary tree of depth k (two of them plus the mate
// edge in the even case).
inline std::int64_t tree_cost(std::int64_t d, std::int32_t k, bool even) {
  std::int64_t level = 1, total = 0;
  for (std::int32_t i = 0; i < k; ++i) {
    level *= d;
    total += level;
  }
  return even ? 2 * total + 1 : total;
}

inline CyclePlan plan_cycle(std::int64_t n, std::int64_t t, std::int64_t b, const CycleParams& p) {
  if (p.length < 3) throw InvalidParameter("cycle length must be at least 3");
  CyclePlan plan;
  plan.even = p.length % 2 == 0;
  plan.k = plan.even ? (p.length - 2) / 2 : (p.length - 1) / 2;
  if (plan.k < 1) throw InvalidParameter("even cycles need length >= 4");
  const double nn = static_cast<double>(n);
  const double ln = std::log(nn);
  const double lo = 2.0 * nn * ln;
  const double hi = static_cast<double>(t) / 2.0;
  double tp = static_cast<double>(t) / std::log(ln);
  tp = std::min(std::max(tp, lo), hi);
  plan.t_prime = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(tp)));
  const double k = plan.k;
  plan.b_prime = std::max(std::pow(nn, k + 2) / std::pow(tp, k + 1), nn / std::sqrt(tp));
  plan.s = nn * nn / (plan.b_prime * tp);
  const double c = p.c > 0.0 ? p.c : 1.0 / (k + 2.0);
  if (p.sizing == TreeSizing::Literal) {
    plan.d = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(c * std::pow(plan.s, 1.0 / k) - 1e-9)));
    plan.r = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(static_cast<double>(b) / (2.0 * plan.s) - 1e-9)));
  } else {
    const auto half = std::max<std::int64_t>(1, b / 2);
    const auto by_time = std::max<std::int64_t>(2, static_cast<std::int64_t>(tp / (k * nn)));
    std::int64_t d = 1;
    while (d < by_time && tree_cost(d + 1, plan.k, plan.even) <= half) ++d;
    plan.d = d;
    plan.r = std::max<std::int64_t>(1, half / tree_cost(d, plan.k, plan.even));
  }
  if (p.d_override > 0) plan.d = p.d_override;
  if (p.r_override > 0) plan.r = p.r_override;
  plan.r = std::min<std::int64_t>(plan.r, n / 2);
  return plan;
}

// Grows r vertex-disjoint d-ary trees of depth k (two per root in the even
// case, rooted at the root and its mate) and buys the first edge that closes
// a cycle of the target length through two leaves.
class CycleRun final : public BuilderRun {
 public:
  CycleRun(std::int64_t n, std::int64_t t, std::int64_t b, CycleParams p)
      : BuilderRun(n, t, b), p_(p), plan_(plan_cycle(n, t, b, p)), tree_of_(static_cast<std::size_t>(n), -1),
        depth_(static_cast<std::size_t>(n), -1), parent_(static_cast<std::size_t>(n), -1),
        branch_(static_cast<std::size_t>(n), -1), need_(static_cast<std::size_t>(n), 0),
        mated_(static_cast<std::size_t>(n), 0) {
    if (p.length > n) throw InvalidParameter("cycle longer than the host");
    set_counter("k", plan_.k);
    set_counter("t_prime", plan_.t_prime);
    set_counter("b_prime_ceil", static_cast<std::int64_t>(std::ceil(plan_.b_prime)));
    set_counter("s_ceil", static_cast<std::int64_t>(std::ceil(plan_.s)));
    set_counter("d", plan_.d);
    set_counter("r", plan_.r);
    for (Vertex v = 0; v < plan_.r; ++v) add_root(v, plan_.even ? static_cast<std::int32_t>(2 * v) : v);
    if (plan_.even) {
      mates_missing_ = plan_.r;
    } else {
      start_growth();
    }
  }

  const CyclePlan& plan() const { return plan_; }

  StrategyDescriptor descriptor() const override {
    return {"cycle",
            {{"length", std::to_string(p_.length)},
             {"sizing", to_string(p_.sizing)},
             {"c", format_param(p_.c > 0.0 ? p_.c : 1.0 / (plan_.k + 2.0))},
             {"d", std::to_string(plan_.d)},
             {"r", std::to_string(plan_.r)},
             {"t_prime", std::to_string(plan_.t_prime)}},
            {"mates", "trees", "traps"}};
  }

 protected:
  Decision decide(Edge e) override {
    switch (stage()) {
      case 0:
        if (now() > plan_.t_prime / 2) return starve("mates missing");
        return mate_end(e) >= 0 ? Decision::Purchase : Decision::Skip;
      case 1:
        if (now() - began_ > plan_.t_prime) return starve("level quota unmet");
        return child_end(e) >= 0 ? Decision::Purchase : Decision::Skip;
      default:
        return is_trap(e) ? Decision::Purchase : Decision::Skip;
    }
  }

  void on_purchased(Edge e) override {
    switch (stage()) {
      case 0: {
        const Vertex root = mate_end(e);
        const Vertex mate = e.other(root);
        add_root(mate, tree_of_[static_cast<std::size_t>(root)] + 1);
        mated_[static_cast<std::size_t>(root)] = 1;
        if (--mates_missing_ == 0) start_growth();
        return;
      }
      case 1: {
        const Vertex x = child_end(e);
        const Vertex w = e.other(x);
        if (tree_of_[static_cast<std::size_t>(w)] >= 0) throw ContractViolation("trees must stay vertex-disjoint");
        const auto xi = static_cast<std::size_t>(x), wi = static_cast<std::size_t>(w);
        tree_of_[wi] = tree_of_[xi];
        depth_[wi] = depth_[xi] + 1;
        parent_[wi] = x;
        branch_[wi] = depth_[xi] == 0 ? w : branch_[xi];
        level_members_next_.push_back(w);
        if (--need_[xi] == 0 && --pending_ == 0) next_level();
        return;
      }
      default:
        close(e);
    }
  }

 private:
  Decision starve(const std::string& what) {
    fail_stage(what);
    return Decision::Skip;
  }

  void add_root(Vertex v, std::int32_t tree) {
    const auto i = static_cast<std::size_t>(v);
    tree_of_[i] = tree;
    depth_[i] = 0;
    level_members_next_.push_back(v);
  }

  bool unused(Vertex v) const { return tree_of_[static_cast<std::size_t>(v)] < 0; }

  Vertex mate_end(Edge e) const {
    for (int flip = 0; flip < 2; ++flip) {
      const Vertex x = flip ? e.v : e.u;
      const auto tr = tree_of_[static_cast<std::size_t>(x)];
      if (tr >= 0 && tr % 2 == 0 && !has_mate(x) && unused(e.other(x))) return x;
    }
    return -1;
  }
  bool has_mate(Vertex root) const { return mated_[static_cast<std::size_t>(root)] != 0; }

  Vertex child_end(Edge e) const {
    for (int flip = 0; flip < 2; ++flip) {
      const Vertex x = flip ? e.v : e.u;
      if (need_[static_cast<std::size_t>(x)] > 0 && unused(e.other(x))) return x;
    }
    return -1;
  }

  bool is_trap(Edge e) const {
    const auto u = static_cast<std::size_t>(e.u), v = static_cast<std::size_t>(e.v);
    if (depth_[u] != plan_.k || depth_[v] != plan_.k) return false;
    if (plan_.even) return tree_of_[u] / 2 == tree_of_[v] / 2 && tree_of_[u] != tree_of_[v];
    return tree_of_[u] == tree_of_[v] && branch_[u] != branch_[v];
  }

  void start_growth() {
    set_stage(1);
    began_ = now();
    level_ = -1;
    next_level();
  }

  void next_level() {
    ++level_;
    if (level_ == plan_.k) {
      set_counter("leaves", static_cast<std::int64_t>(level_members_next_.size()));
      set_stage(2);
      return;
    }
    pending_ = 0;
    for (Vertex v : level_members_next_) {
      need_[static_cast<std::size_t>(v)] = plan_.d;
      ++pending_;
    }
    level_members_next_.clear();
  }

  std::vector<Vertex> up(Vertex x) const {
    std::vector<Vertex> path{x};
    while (depth_[static_cast<std::size_t>(path.back())] > 0) path.push_back(parent_[static_cast<std::size_t>(path.back())]);
    return path;
  }

  void close(Edge e) {
    auto cycle = up(e.u);
    auto other = up(e.v);
    if (plan_.even) {
      const auto root_side = tree_of_[static_cast<std::size_t>(e.u)] % 2 == 0;
      if (!root_side) std::swap(cycle, other);
      cycle.insert(cycle.end(), other.rbegin(), other.rend());
    } else {
      cycle.insert(cycle.end(), other.rbegin() + 1, other.rend());
    }
    cycle.push_back(cycle.front());
    succeed({WitnessKind::Cycle, std::move(cycle), {}});
  }

  CycleParams p_;
  CyclePlan plan_;
  std::vector<std::int32_t> tree_of_;
  std::vector<std::int32_t> depth_;
  std::vector<Vertex> parent_;
  std::vector<Vertex> branch_;
  std::vector<std::int64_t> need_;
  std::vector<char> mated_;
  std::vector<Vertex> level_members_next_;
  std::int64_t mates_missing_ = 0;
  std::int64_t pending_ = 0;
  std::int64_t began_ = 0;
  std::int32_t level_ = 0;
};

}  // namespace builder
