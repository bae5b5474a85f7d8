#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "builder/oracles.hpp"
#include "builder/strategy.hpp"
#include "builder/target.hpp"

namespace builder {

struct TreeParams {
  Target target = Target::path(4);
  // Single-copy branch when t >= branch_factor * n.
  double branch_factor = 5.0;
  double quota_scale = 1.0;
  // The final stage may run until the time cap instead of t/(k-1).
  bool open_last_stage = false;
};

// Grows vertex-disjoint copies of T_1 ⊂ T_2 ⊂ ... ⊂ T_k = T along a
// leaf-removal chain. Stage i keeps ceil(s_i) copies of T_i with
// s_i = (b/(k-1)) (t/((k-1)n))^(i-2), capped at half the previous quota;
// with t >= 5n a single copy is extended.
class TreeRun final : public BuilderRun {
 public:
  TreeRun(std::int64_t n, std::int64_t t, std::int64_t b, TreeParams p)
      : BuilderRun(n, t, b), p_(std::move(p)), copy_of_(static_cast<std::size_t>(n), -1),
        pos_of_(static_cast<std::size_t>(n), -1) {
    if (p_.target.is_cycle()) throw InvalidParameter("tree strategy needs a tree target");
    k_ = p_.target.vertices;
    if (k_ < 3) throw InvalidParameter("tree strategy needs k >= 3");
    if (k_ > kExactLimits.target_vertices) throw SizeLimitError("tree targets limited to 10 vertices");
    if (k_ > n) throw InvalidParameter("target larger than the host");
    if (!(p_.quota_scale > 0.0)) throw InvalidParameter("quota_scale must be positive");
    chain_ = tree_chain(p_.target);
    prepare_attachments();
    const double kk = static_cast<double>(k_ - 1);
    const double nn = static_cast<double>(n);
    single_copy_ = static_cast<double>(t) >= p_.branch_factor * nn;
    stage_cap_ = std::max<std::int64_t>(1, t / (k_ - 1));
    quota_.assign(static_cast<std::size_t>(k_) + 1, 1);
    std::int64_t seeds = 1;
    if (!single_copy_) {
      const double ratio = static_cast<double>(t) / (kk * nn);
      const double base = p_.quota_scale * static_cast<double>(b) / kk;
      seeds = std::clamp<std::int64_t>(static_cast<std::int64_t>(std::ceil(base / ratio - 1e-9)), 1, n);
      quota_[1] = seeds;
      for (std::int32_t i = 2; i <= k_; ++i) {
        const auto s = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(base * std::pow(ratio, i - 2) - 1e-9)));
        const auto half = (quota_[static_cast<std::size_t>(i - 1)] + 1) / 2;
        quota_[static_cast<std::size_t>(i)] = std::min(s, half);
      }
    }
    for (Vertex v = 0; v < seeds; ++v) {
      copy_of_[static_cast<std::size_t>(v)] = static_cast<std::int32_t>(copies_.size());
      pos_of_[static_cast<std::size_t>(v)] = 0;
      copies_.push_back({v});
    }
    level_.assign(copies_.size(), 1);
    set_counter("single_copy", single_copy_ ? 1 : 0);
    set_counter("quota_1", seeds);
    for (std::int32_t i = 2; i <= k_; ++i)
      set_counter("quota_" + std::to_string(i), quota_[static_cast<std::size_t>(i)]);
  }

  StrategyDescriptor descriptor() const override {
    StrategyDescriptor d{"tree",
                         {{"target", p_.target.name},
                          {"branch_factor", format_param(p_.branch_factor)},
                          {"quota_scale", format_param(p_.quota_scale)},
                          {"open_last_stage", p_.open_last_stage ? "1" : "0"}},
                         {}};
    for (std::int32_t i = 2; i <= k_; ++i) d.stages.push_back("T" + std::to_string(i));
    return d;
  }

 protected:
  Decision decide(Edge e) override {
    const auto target = stage() + 2;
    if (now() - began_ > stage_cap_ && !(p_.open_last_stage && target == k_)) {
      fail_stage("quota unmet");
      return Decision::Skip;
    }
    return extension(e).copy >= 0 ? Decision::Purchase : Decision::Skip;
  }

  void on_purchased(Edge e) override {
    const auto ext = extension(e);
    if (ext.copy < 0 || copy_of_[static_cast<std::size_t>(ext.fresh)] >= 0)
      throw ContractViolation("tree copies must stay vertex-disjoint");
    const auto target = stage() + 2;
    auto& img = copies_[static_cast<std::size_t>(ext.copy)];
    img.push_back(ext.fresh);
    const auto& perm = perm_[static_cast<std::size_t>(target)][static_cast<std::size_t>(ext.position)];
    std::vector<Vertex> next(img.size());
    for (std::size_t q = 0; q < img.size(); ++q) next[q] = img[static_cast<std::size_t>(perm[q])];
    img = std::move(next);
    for (std::size_t q = 0; q < img.size(); ++q) {
      copy_of_[static_cast<std::size_t>(img[q])] = ext.copy;
      pos_of_[static_cast<std::size_t>(img[q])] = static_cast<std::int32_t>(q);
    }
    level_[static_cast<std::size_t>(ext.copy)] = target;
    if (target == k_) {
      std::vector<Vertex> embedding(static_cast<std::size_t>(k_));
      for (std::size_t q = 0; q < img.size(); ++q) embedding[static_cast<std::size_t>(chain_.order[q])] = img[q];
      succeed({WitnessKind::Embedding, std::move(embedding), {}});
      return;
    }
    if (++extended_ >= quota_[static_cast<std::size_t>(target)]) advance(target);
  }

 private:
  struct Extension {
    std::int32_t copy = -1;
    std::int32_t position = -1;
    Vertex fresh = -1;
  };

  Extension extension(Edge e) const {
    const auto target = stage() + 2;
    for (int flip = 0; flip < 2; ++flip) {
      const Vertex x = flip ? e.v : e.u;
      const Vertex w = flip ? e.u : e.v;
      const auto c = copy_of_[static_cast<std::size_t>(x)];
      if (c < 0 || level_[static_cast<std::size_t>(c)] != target - 1 || copy_of_[static_cast<std::size_t>(w)] >= 0) continue;
      const auto p = pos_of_[static_cast<std::size_t>(x)];
      if (!perm_[static_cast<std::size_t>(target)][static_cast<std::size_t>(p)].empty()) return {c, p, w};
    }
    return {};
  }

  void advance(std::int32_t reached) {
    for (std::size_t c = 0; c < copies_.size(); ++c)
      if (level_[c] < reached) {
        for (Vertex v : copies_[c]) copy_of_[static_cast<std::size_t>(v)] = -1;
        copies_[c].clear();
        level_[c] = 0;
      }
    set_counter("copies_T" + std::to_string(reached), extended_);
    extended_ = 0;
    set_stage(stage() + 1);
    began_ = now();
  }

  // perm_[i][p] is non-empty when attaching a leaf at chain position p of
  // T_{i-1} yields T_i; it maps chain positions of T_i to positions of the
  // extended copy (the new leaf sits at position i-1).
  void prepare_attachments() {
    std::vector<Vertex> position(static_cast<std::size_t>(k_));
    for (std::size_t q = 0; q < chain_.order.size(); ++q) position[static_cast<std::size_t>(chain_.order[q])] = static_cast<Vertex>(q);
    auto prefix_edges = [&](std::int32_t size) {
      std::vector<Edge> edges;
      for (std::int32_t q = 1; q < size; ++q)
        edges.emplace_back(position[static_cast<std::size_t>(chain_.parent[static_cast<std::size_t>(q)])], q);
      return edges;
    };
    perm_.assign(static_cast<std::size_t>(k_) + 1, {});
    for (std::int32_t i = 2; i <= k_; ++i) {
      const auto want = Target::tree(i, prefix_edges(i));
      perm_[static_cast<std::size_t>(i)].assign(static_cast<std::size_t>(i - 1), {});
      for (std::int32_t p = 0; p < i - 1; ++p) {
        PurchasedGraph ext(i);
        for (const auto& e : prefix_edges(i - 1)) ext.add_edge(e);
        ext.add_edge(Edge(p, i - 1));
        if (auto map = contains_subgraph(ext, want)) perm_[static_cast<std::size_t>(i)][static_cast<std::size_t>(p)] = *map;
      }
    }
  }

  TreeParams p_;
  std::int32_t k_ = 0;
  TreeChain chain_;
  bool single_copy_ = false;
  std::int64_t stage_cap_ = 0;
  std::int64_t began_ = 0;
  std::int64_t extended_ = 0;
  std::vector<std::int64_t> quota_;
  std::vector<std::vector<Vertex>> copies_;
  std::vector<std::int32_t> level_;
  std::vector<std::int32_t> copy_of_;
  std::vector<std::int32_t> pos_of_;
  std::vector<std::vector<std::vector<Vertex>>> perm_;
};

}  // namespace builder
