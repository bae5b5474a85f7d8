#pragma once

#include <vector>

#include "builder/graph.hpp"
#include "builder/rng.hpp"

namespace testsupport {

using builder::Edge;
using builder::PurchasedGraph;
using builder::Vertex;

inline PurchasedGraph cycle_graph(std::int64_t n) {
  PurchasedGraph g(n);
  for (Vertex v = 0; v < n; ++v) g.add_edge(Edge(v, static_cast<Vertex>((v + 1) % n)));
  return g;
}

inline PurchasedGraph path_graph(std::int64_t n) {
  PurchasedGraph g(n);
  for (Vertex v = 0; v + 1 < n; ++v) g.add_edge(Edge(v, v + 1));
  return g;
}

inline PurchasedGraph complete_graph(std::int64_t n) {
  PurchasedGraph g(n);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) g.add_edge(Edge(u, v));
  return g;
}

inline PurchasedGraph star_graph(std::int64_t leaves) {
  PurchasedGraph g(leaves + 1);
  for (Vertex v = 1; v <= leaves; ++v) g.add_edge(Edge(0, v));
  return g;
}

inline PurchasedGraph complete_bipartite(std::int64_t a, std::int64_t b) {
  PurchasedGraph g(a + b);
  for (Vertex u = 0; u < a; ++u)
    for (Vertex v = static_cast<Vertex>(a); v < a + b; ++v) g.add_edge(Edge(u, v));
  return g;
}

// Uniform graph with exactly m edges.
inline PurchasedGraph random_graph(std::int64_t n, std::int64_t m, std::uint64_t seed) {
  builder::Rng rng(seed, 77);
  std::vector<Edge> all;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) all.emplace_back(u, v);
  rng.shuffle(all.begin(), all.end());
  PurchasedGraph g(n);
  for (std::int64_t i = 0; i < m && i < static_cast<std::int64_t>(all.size()); ++i) g.add_edge(all[static_cast<std::size_t>(i)]);
  return g;
}

// Random connected graph: a random spanning tree plus extra random edges.
inline PurchasedGraph random_connected_graph(std::int64_t n, std::int64_t extra, std::uint64_t seed) {
  builder::Rng rng(seed, 78);
  std::vector<Vertex> order(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<Vertex>(i);
  rng.shuffle(order.begin(), order.end());
  PurchasedGraph g(n);
  for (std::size_t i = 1; i < order.size(); ++i)
    g.add_edge(Edge(order[i], order[rng.below(i)]));
  std::int64_t added = 0;
  const auto total = static_cast<std::int64_t>(n * (n - 1) / 2);
  while (added < extra && static_cast<std::int64_t>(g.edge_count()) < total) {
    const auto a = static_cast<Vertex>(rng.below(static_cast<std::uint64_t>(n)));
    const auto b = static_cast<Vertex>(rng.below(static_cast<std::uint64_t>(n)));
    if (a == b || g.has_edge(a, b)) continue;
    g.add_edge(Edge(a, b));
    ++added;
  }
  return g;
}

inline PurchasedGraph with_edge(const PurchasedGraph& g, Edge e) {
  PurchasedGraph h(g.vertex_count());
  for (const auto& f : g.edges()) h.add_edge(f);
  h.add_edge(e);
  return h;
}

inline std::vector<Edge> non_edges(const PurchasedGraph& g) {
  std::vector<Edge> out;
  for (Vertex u = 0; u < g.vertex_count(); ++u)
    for (Vertex v = u + 1; v < g.vertex_count(); ++v)
      if (!g.has_edge(u, v)) out.emplace_back(u, v);
  return out;
}

}  // namespace testsupport
