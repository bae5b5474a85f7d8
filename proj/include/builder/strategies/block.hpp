#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "builder/graph.hpp"

namespace builder {

// Induced copy of Builder's graph on a vertex subset, relabelled 0..size-1 so
// that a rotation engine can run on the block alone.
class Block {
 public:
  Block(std::int64_t n, std::vector<Vertex> members) : members_(std::move(members)), local_(static_cast<std::size_t>(n), -1) {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    for (std::size_t i = 0; i < members_.size(); ++i) local_[static_cast<std::size_t>(members_[i])] = static_cast<Vertex>(i);
    graph_ = PurchasedGraph(static_cast<std::int64_t>(members_.size()));
  }
  Block(const Block&) = delete;
  Block& operator=(const Block&) = delete;

  std::int64_t size() const { return static_cast<std::int64_t>(members_.size()); }
  const std::vector<Vertex>& members() const { return members_; }
  bool contains(Vertex v) const { return local_[static_cast<std::size_t>(v)] >= 0; }
  bool inside(Edge e) const { return contains(e.u) && contains(e.v); }
  Vertex local(Vertex v) const { return local_[static_cast<std::size_t>(v)]; }
  Vertex global(Vertex v) const { return members_[static_cast<std::size_t>(v)]; }
  Edge to_local(Edge e) const { return Edge(local(e.u), local(e.v)); }
  const PurchasedGraph& graph() const { return graph_; }

  // Mirrors a purchased edge; returns false when it leaves the block.
  bool add(Edge e) {
    if (!inside(e)) return false;
    const Edge f = to_local(e);
    graph_.add_edge(f);
    if (graph_.degree(f.u) == goal_) --low_;
    if (graph_.degree(f.v) == goal_) --low_;
    return true;
  }

  void add_all(const PurchasedGraph& g) {
    for (const auto& e : g.edges()) add(e);
  }

  std::vector<Vertex> to_global(const std::vector<Vertex>& local_vertices) const {
    std::vector<Vertex> out;
    out.reserve(local_vertices.size());
    for (Vertex v : local_vertices) out.push_back(global(v));
    return out;
  }

  // Nearest-neighbour emulation target inside the block, capped by its size.
  void track_degree(std::int32_t k) {
    goal_ = static_cast<std::int32_t>(std::min<std::int64_t>(k, size() - 1));
    low_ = 0;
    for (Vertex v = 0; v < size(); ++v) low_ += graph_.degree(v) < goal_;
  }
  bool below_goal(Vertex global_vertex) const { return graph_.degree(local(global_vertex)) < goal_; }
  std::int64_t below_goal_count() const { return low_; }

 private:
  std::vector<Vertex> members_;
  std::vector<Vertex> local_;
  PurchasedGraph graph_;
  std::int32_t goal_ = 0;
  std::int64_t low_ = 0;
};

}  // namespace builder
