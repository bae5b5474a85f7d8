#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "builder/disjoint_set.hpp"
#include "builder/edge.hpp"
#include "builder/errors.hpp"

namespace builder {

// A small fixed target graph H: a tree or a cycle on vertices 0..k-1.
struct Target {
  enum class Kind { Tree, Cycle };
  Kind kind = Kind::Tree;
  std::int32_t vertices = 0;
  std::vector<Edge> edges;
  std::string name;

  bool is_cycle() const { return kind == Kind::Cycle; }

  static Target cycle(std::int32_t length) {
    if (length < 3) throw InvalidParameter("cycle length must be at least 3");
    Target t{Kind::Cycle, length, {}, "C" + std::to_string(length)};
    for (Vertex v = 0; v < length; ++v) t.edges.emplace_back(v, (v + 1) % length);
    return t;
  }

  static Target path(std::int32_t vertex_count) {
    if (vertex_count < 2) throw InvalidParameter("path needs at least 2 vertices");
    Target t{Kind::Tree, vertex_count, {}, "P" + std::to_string(vertex_count)};
    for (Vertex v = 0; v + 1 < vertex_count; ++v) t.edges.emplace_back(v, v + 1);
    return t;
  }

  static Target star(std::int32_t vertex_count) {
    if (vertex_count < 2) throw InvalidParameter("star needs at least 2 vertices");
    Target t{Kind::Tree, vertex_count, {}, "S" + std::to_string(vertex_count)};
    for (Vertex v = 1; v < vertex_count; ++v) t.edges.emplace_back(0, v);
    return t;
  }

  // Edges must form a spanning tree of 0..k-1.
  static Target tree(std::int32_t vertex_count, std::vector<Edge> edges, std::string name = {}) {
    if (vertex_count < 2) throw InvalidParameter("tree needs at least 2 vertices");
    if (static_cast<std::int32_t>(edges.size()) != vertex_count - 1)
      throw InvalidParameter("a tree on k vertices has k-1 edges");
    DisjointSet ds(static_cast<std::size_t>(vertex_count));
    for (const auto& e : edges) {
      if (e.v >= vertex_count) throw InvalidParameter("tree edge out of range");
      if (!ds.unite(e.u, e.v)) throw InvalidParameter("tree edges contain a cycle");
    }
    if (name.empty()) {
      name = "T:";
      for (std::size_t i = 0; i < edges.size(); ++i)
        name += (i ? "," : "") + std::to_string(edges[i].u) + "-" + std::to_string(edges[i].v);
    }
    return Target{Kind::Tree, vertex_count, std::move(edges), std::move(name)};
  }
};

namespace detail {
inline std::int32_t parse_count(std::string_view s, std::string_view what) {
  std::int32_t value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
    throw InvalidParameter("bad " + std::string(what) + " '" + std::string(s) + "'");
  return value;
}
}  // namespace detail

// "C5" cycle, "P4" path on 4 vertices, "S4" star on 4 vertices,
// "T:0-1,1-2,1-3" tree by edge list.
inline Target parse_target(std::string_view spec) {
  if (spec.size() >= 2 && (spec[0] == 'C' || spec[0] == 'c'))
    return Target::cycle(detail::parse_count(spec.substr(1), "cycle length"));
  if (spec.size() >= 2 && (spec[0] == 'P' || spec[0] == 'p'))
    return Target::path(detail::parse_count(spec.substr(1), "path size"));
  if (spec.size() >= 2 && (spec[0] == 'S' || spec[0] == 's'))
    return Target::star(detail::parse_count(spec.substr(1), "star size"));
  if (spec.size() > 2 && (spec[0] == 'T' || spec[0] == 't') && spec[1] == ':') {
    std::vector<Edge> edges;
    std::int32_t max_vertex = 0;
    std::string_view rest = spec.substr(2);
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      const auto item = rest.substr(0, comma);
      const auto dash = item.find('-');
      if (dash == std::string_view::npos) throw InvalidParameter("bad tree edge '" + std::string(item) + "'");
      const auto a = detail::parse_count(item.substr(0, dash), "tree vertex");
      const auto b = detail::parse_count(item.substr(dash + 1), "tree vertex");
      edges.emplace_back(a, b);
      max_vertex = std::max({max_vertex, a, b});
      rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    }
    return Target::tree(max_vertex + 1, std::move(edges), std::string(spec));
  }
  throw InvalidParameter("unknown target '" + std::string(spec) + "' (expected Cl, Pk, Sk or T:edges)");
}

// Leaf-removal chain: order[i] is the vertex added at step i, parent[i] its
// neighbour among order[0..i-1] (parent[0] = -1). Prefix i+1 spans a subtree.
struct TreeChain {
  std::vector<Vertex> order;
  std::vector<Vertex> parent;
};

inline TreeChain tree_chain(const Target& t) {
  if (t.is_cycle()) throw InvalidParameter("tree chain needs a tree target");
  std::vector<std::vector<Vertex>> adj(static_cast<std::size_t>(t.vertices));
  for (const auto& e : t.edges) {
    adj[static_cast<std::size_t>(e.u)].push_back(e.v);
    adj[static_cast<std::size_t>(e.v)].push_back(e.u);
  }
  TreeChain chain;
  std::vector<char> seen(static_cast<std::size_t>(t.vertices), 0);
  chain.order.push_back(0);
  chain.parent.push_back(-1);
  seen[0] = 1;
  for (std::size_t head = 0; head < chain.order.size(); ++head)
    for (Vertex w : adj[static_cast<std::size_t>(chain.order[head])])
      if (!seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = 1;
        chain.order.push_back(w);
        chain.parent.push_back(chain.order[head]);
      }
  return chain;
}

}  // namespace builder
