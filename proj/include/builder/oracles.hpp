#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <iterator>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "builder/edge.hpp"
#include "builder/errors.hpp"
#include "builder/graph.hpp"
#include "builder/limits.hpp"
#include "builder/rng.hpp"
#include "builder/target.hpp"

namespace builder {

struct HamiltonResult {
  bool hamiltonian = false;
  std::vector<Vertex> cycle;  // first vertex repeated at the end
  explicit operator bool() const { return hamiltonian; }
};

namespace detail {

inline std::vector<std::uint32_t> adjacency_masks(const PurchasedGraph& g, std::int64_t limit, const char* what) {
  if (g.vertex_count() > limit) throw SizeLimitError(std::string(what) + " limited to n <= " + std::to_string(limit));
  return neighbor_masks(g);
}

// reach[mask] = set of v such that some path with vertex set `mask` ends at v
// and starts at `start` (or anywhere when start < 0).
inline std::vector<std::uint32_t> path_reach(const std::vector<std::uint32_t>& adj, std::int64_t n, Vertex start) {
  std::vector<std::uint32_t> reach(std::size_t{1} << n, 0);
  if (start >= 0) {
    reach[std::size_t{1} << start] = 1u << start;
  } else {
    for (std::int64_t v = 0; v < n; ++v) reach[std::size_t{1} << v] = 1u << v;
  }
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    const std::uint32_t ends = reach[mask];
    if (ends == 0) continue;
    for (std::uint32_t rest = ends; rest != 0; rest &= rest - 1) {
      const auto v = static_cast<std::size_t>(std::countr_zero(rest));
      for (std::uint32_t nb = adj[v] & ~mask; nb != 0; nb &= nb - 1) {
        const auto w = std::countr_zero(nb);
        reach[mask | (1u << w)] |= 1u << w;
      }
    }
  }
  return reach;
}

// Walks reach[] backwards from (mask, end) to recover the path (start first).
inline std::vector<Vertex> unwind_path(const std::vector<std::uint32_t>& reach, const std::vector<std::uint32_t>& adj,
                                       std::uint32_t mask, Vertex end) {
  std::vector<Vertex> rev{end};
  while (std::popcount(mask) > 1) {
    const std::uint32_t prev_mask = mask & ~(1u << end);
    const std::uint32_t options = reach[prev_mask] & adj[static_cast<std::size_t>(end)];
    end = static_cast<Vertex>(std::countr_zero(options));
    rev.push_back(end);
    mask = prev_mask;
  }
  return {rev.rbegin(), rev.rend()};
}

}  // namespace detail

// Exact Hamiltonicity by subset dynamic programming over (vertex set, endpoint).
inline HamiltonResult hamiltonian_exact(const PurchasedGraph& g) {
  const std::int64_t n = g.vertex_count();
  const auto adj = detail::adjacency_masks(g, kExactLimits.hamiltonian_vertices, "hamiltonian_exact");
  HamiltonResult result;
  if (n < 3) return result;
  const auto reach = detail::path_reach(adj, n, 0);
  const std::uint32_t full = (1u << n) - 1;
  const std::uint32_t closing = reach[full] & adj[0];
  if (closing == 0) return result;
  result.hamiltonian = true;
  result.cycle = detail::unwind_path(reach, adj, full, static_cast<Vertex>(std::countr_zero(closing)));
  result.cycle.push_back(result.cycle.front());
  return result;
}

// A longest path (vertex sequence) by exact subset DP.
inline std::vector<Vertex> longest_path_exact(const PurchasedGraph& g) {
  const std::int64_t n = g.vertex_count();
  const auto adj = detail::adjacency_masks(g, kExactLimits.hamiltonian_vertices, "longest_path_exact");
  if (n == 0) return {};
  const auto reach = detail::path_reach(adj, n, -1);
  std::uint32_t best_mask = 1;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask)
    if (reach[mask] != 0 && std::popcount(mask) > std::popcount(best_mask)) best_mask = mask;
  return detail::unwind_path(reach, adj, best_mask, static_cast<Vertex>(std::countr_zero(reach[best_mask])));
}

inline std::int64_t longest_path_length(const PurchasedGraph& g) {
  return static_cast<std::int64_t>(longest_path_exact(g).size()) - 1;
}

// Non-edges whose addition makes g Hamiltonian or lengthens its longest path.
// Empty when g is already Hamiltonian.
inline std::vector<Edge> exact_boosters(const PurchasedGraph& g) {
  const std::int64_t n = g.vertex_count();
  if (n > kExactLimits.booster_vertices) throw SizeLimitError("exact_boosters limited to n <= 14");
  std::vector<Edge> boosters;
  if (hamiltonian_exact(g)) return boosters;
  const auto base = longest_path_length(g);
  auto adj = detail::neighbor_masks(g);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) {
      if (adj[static_cast<std::size_t>(u)] >> v & 1u) continue;
      adj[static_cast<std::size_t>(u)] |= 1u << v;
      adj[static_cast<std::size_t>(v)] |= 1u << u;
      const auto reach = detail::path_reach(adj, n, -1);
      bool booster = false;
      const std::uint32_t full = (1u << n) - 1;
      if (n >= 3) {
        // Hamilton cycle: a spanning path from the lowest vertex back to a neighbour of it.
        const auto from0 = detail::path_reach(adj, n, 0);
        booster = (from0[full] & adj[0]) != 0;
      }
      for (std::uint32_t mask = 1; !booster && mask < (1u << n); ++mask)
        if (reach[mask] != 0 && std::popcount(mask) - 1 > base) booster = true;
      if (booster) boosters.emplace_back(u, v);
      adj[static_cast<std::size_t>(u)] &= ~(1u << v);
      adj[static_cast<std::size_t>(v)] &= ~(1u << u);
    }
  return boosters;
}

// Exact rotation closure by breadth-first search over whole path states
// (first vertex fixed). Returns nullopt when more than `state_cap` distinct
// paths are reachable.
inline std::optional<std::vector<Vertex>> exact_rotation_closure(const PurchasedGraph& g, const std::vector<Vertex>& path,
                                                                 std::size_t state_cap = 200000) {
  if (path.empty()) throw InvalidParameter("rotation closure needs a nonempty path");
  std::set<std::vector<Vertex>> seen{path};
  std::vector<std::vector<Vertex>> queue{path};
  std::set<Vertex> ends;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const auto q = queue[head];
    ends.insert(q.back());
    const std::size_t last = q.size() - 1;
    for (std::size_t i = 0; i + 1 < last; ++i) {
      if (!g.has_edge(q.back(), q[i])) continue;
      std::vector<Vertex> rotated(q.begin(), q.begin() + static_cast<std::ptrdiff_t>(i) + 1);
      rotated.insert(rotated.end(), q.rbegin(), q.rbegin() + static_cast<std::ptrdiff_t>(last - i));
      if (seen.insert(rotated).second) {
        if (seen.size() > state_cap) return std::nullopt;
        queue.push_back(std::move(rotated));
      }
    }
  }
  return std::vector<Vertex>(ends.begin(), ends.end());
}

// External neighbourhood N(S) \ S.
inline std::vector<Vertex> external_neighbors(const PurchasedGraph& g, const std::vector<Vertex>& set) {
  std::vector<char> in(static_cast<std::size_t>(g.vertex_count()), 0);
  for (Vertex v : set) in[static_cast<std::size_t>(v)] = 1;
  std::vector<Vertex> out;
  for (Vertex v : set)
    for (Vertex w : g.neighbors(v))
      if (!in[static_cast<std::size_t>(w)]) {
        in[static_cast<std::size_t>(w)] = 2;
        out.push_back(w);
      }
  std::sort(out.begin(), out.end());
  return out;
}

namespace detail {

// Backtracking subgraph search for a connected target. Host adjacency is g
// plus an optional extra edge; when `through` is set the embedding must use it.
class Embedder {
 public:
  Embedder(const PurchasedGraph& g, const Target& h, std::optional<Edge> extra)
      : g_(g), h_(h), extra_(extra), map_(static_cast<std::size_t>(h.vertices), -1),
        used_(static_cast<std::size_t>(g.vertex_count()), 0), hadj_(static_cast<std::size_t>(h.vertices)) {
    for (const auto& e : h.edges) {
      hadj_[static_cast<std::size_t>(e.u)].push_back(e.v);
      hadj_[static_cast<std::size_t>(e.v)].push_back(e.u);
    }
  }

  std::optional<std::vector<Vertex>> search_anywhere() {
    if (h_.vertices > g_.vertex_count()) return std::nullopt;
    order_from({0});
    for (Vertex x = 0; x < g_.vertex_count(); ++x) {
      if (h_.vertices > 1 && degree(x) == 0) continue;
      if (place(0, x) && extend(1)) return map_;
      unplace(0, x);
    }
    return std::nullopt;
  }

  // Embeddings that map some target edge onto the extra edge.
  std::optional<std::vector<Vertex>> search_through() {
    const Edge e = *extra_;
    for (const auto& he : h_.edges)
      for (int flip = 0; flip < 2; ++flip) {
        const Vertex a = flip ? he.v : he.u;
        const Vertex b = flip ? he.u : he.v;
        order_from({a, b});
        if (place(a, e.u) && place(b, e.v) && extend(2)) return map_;
        clear();
      }
    return std::nullopt;
  }

 private:
  std::int32_t degree(Vertex x) const {
    return g_.degree(x) + (extra_ && extra_->touches(x) ? 1 : 0);
  }
  bool adjacent(Vertex x, Vertex y) const { return g_.has_edge(x, y) || (extra_ && *extra_ == Edge(x, y)); }

  void order_from(std::vector<Vertex> seeds) {
    order_ = std::move(seeds);
    std::vector<char> seen(static_cast<std::size_t>(h_.vertices), 0);
    for (Vertex v : order_) seen[static_cast<std::size_t>(v)] = 1;
    for (std::size_t head = 0; head < order_.size(); ++head)
      for (Vertex w : hadj_[static_cast<std::size_t>(order_[head])])
        if (!seen[static_cast<std::size_t>(w)]) {
          seen[static_cast<std::size_t>(w)] = 1;
          order_.push_back(w);
        }
    if (static_cast<std::int32_t>(order_.size()) != h_.vertices) throw InvalidParameter("target must be connected");
  }

  bool place(Vertex hv, Vertex x) {
    if (used_[static_cast<std::size_t>(x)]) return false;
    for (Vertex hw : hadj_[static_cast<std::size_t>(hv)]) {
      const Vertex y = map_[static_cast<std::size_t>(hw)];
      if (y >= 0 && !adjacent(x, y)) return false;
    }
    map_[static_cast<std::size_t>(hv)] = x;
    used_[static_cast<std::size_t>(x)] = 1;
    return true;
  }
  void unplace(Vertex hv, Vertex x) {
    if (map_[static_cast<std::size_t>(hv)] == x) {
      map_[static_cast<std::size_t>(hv)] = -1;
      used_[static_cast<std::size_t>(x)] = 0;
    }
  }
  void clear() {
    for (auto& x : map_)
      if (x >= 0) {
        used_[static_cast<std::size_t>(x)] = 0;
        x = -1;
      }
  }

  bool extend(std::size_t idx) {
    if (idx == order_.size()) return true;
    const Vertex hv = order_[idx];
    Vertex anchor = -1;
    for (Vertex hw : hadj_[static_cast<std::size_t>(hv)])
      if (map_[static_cast<std::size_t>(hw)] >= 0) {
        anchor = map_[static_cast<std::size_t>(hw)];
        break;
      }
    std::vector<Vertex> candidates(g_.neighbors(anchor).begin(), g_.neighbors(anchor).end());
    if (extra_ && extra_->touches(anchor)) candidates.push_back(extra_->other(anchor));
    for (Vertex x : candidates) {
      if (place(hv, x)) {
        if (extend(idx + 1)) return true;
        unplace(hv, x);
      }
    }
    return false;
  }

  const PurchasedGraph& g_;
  const Target& h_;
  std::optional<Edge> extra_;
  std::vector<Vertex> map_;
  std::vector<char> used_;
  std::vector<std::vector<Vertex>> hadj_;
  std::vector<Vertex> order_;
};

}  // namespace detail

// Exact containment of a tree or cycle target; the embedding maps target
// vertex i to embedding[i].
inline std::optional<std::vector<Vertex>> contains_subgraph(const PurchasedGraph& g, const Target& h) {
  if (h.vertices > kExactLimits.target_vertices) throw SizeLimitError("targets limited to 10 vertices");
  return detail::Embedder(g, h, std::nullopt).search_anywhere();
}

// Exact containment in g + e of a copy of h that uses e.
inline std::optional<std::vector<Vertex>> contains_subgraph_through(const PurchasedGraph& g, const Target& h, Edge e) {
  if (h.vertices > kExactLimits.target_vertices) throw SizeLimitError("targets limited to 10 vertices");
  if (g.has_edge(e)) throw InvalidParameter("edge is already present");
  return detail::Embedder(g, h, e).search_through();
}

struct TrapSet {
  Target target;
  std::vector<Edge> traps;
};

// Every non-edge whose addition completes a copy of h. For cycles only pairs
// of positive-degree vertices can be traps; for trees, edges to isolated
// vertices are candidates as well.
inline TrapSet enumerate_traps(const PurchasedGraph& g, const Target& h) {
  if (contains_subgraph(g, h)) throw ContractViolation("host already contains the target");
  std::vector<Vertex> active;
  std::vector<Vertex> isolated;
  for (Vertex v = 0; v < g.vertex_count(); ++v) (g.degree(v) > 0 ? active : isolated).push_back(v);
  if (h.is_cycle() && static_cast<std::int64_t>(active.size()) > kExactLimits.cycle_trap_active_vertices)
    throw SizeLimitError("cycle trap enumeration limited to 500 non-isolated vertices");
  TrapSet out{h, {}};
  auto test = [&](Vertex a, Vertex b) {
    const Edge e(a, b);
    if (!g.has_edge(e) && contains_subgraph_through(g, h, e)) out.traps.push_back(e);
  };
  for (std::size_t i = 0; i < active.size(); ++i)
    for (std::size_t j = i + 1; j < active.size(); ++j) test(active[i], active[j]);
  if (!h.is_cycle()) {
    for (Vertex a : active)
      for (Vertex b : isolated) test(a, b);
    if (h.vertices == 2)
      for (std::size_t i = 0; i < isolated.size(); ++i)
        for (std::size_t j = i + 1; j < isolated.size(); ++j) test(isolated[i], isolated[j]);
  }
  std::sort(out.traps.begin(), out.traps.end());
  return out;
}

// Number of (undirected) paths with `length` edges.
inline std::uint64_t count_paths(const PurchasedGraph& g, std::int64_t length) {
  if (length < 0 || length > kExactLimits.path_length) throw SizeLimitError("count_paths limited to length <= 8");
  if (static_cast<std::int64_t>(g.edge_count()) > kExactLimits.path_host_edges)
    throw SizeLimitError("count_paths limited to hosts with <= 10000 edges");
  const std::int64_t n = g.vertex_count();
  if (length == 0) return static_cast<std::uint64_t>(n);
  std::vector<char> on(static_cast<std::size_t>(n), 0);
  std::uint64_t directed = 0;
  auto dfs = [&](auto&& self, Vertex v, std::int64_t left) -> void {
    if (left == 0) {
      ++directed;
      return;
    }
    for (Vertex w : g.neighbors(v)) {
      if (on[static_cast<std::size_t>(w)]) continue;
      on[static_cast<std::size_t>(w)] = 1;
      self(self, w, left - 1);
      on[static_cast<std::size_t>(w)] = 0;
    }
  };
  for (Vertex v = 0; v < n; ++v) {
    on[static_cast<std::size_t>(v)] = 1;
    dfs(dfs, v, length);
    on[static_cast<std::size_t>(v)] = 0;
  }
  return directed / 2;
}

// q * 2^l * z^ceil(l/2) * D^floor(l/2) with q non-isolated vertices,
// z the degeneracy and D the maximum degree.
inline double path_count_bound(const PurchasedGraph& g, std::int64_t length) {
  const double q = static_cast<double>(g.non_isolated_count());
  const double z = degeneracy(g);
  const double delta = g.max_degree();
  return q * std::pow(2.0, static_cast<double>(length)) * std::pow(z, static_cast<double>((length + 1) / 2)) *
         std::pow(delta, static_cast<double>(length / 2));
}

struct CoupledGraphs {
  std::vector<Edge> nearest;  // O_k
  std::vector<Edge> out;      // k-out graph G_k
};

// Shared-weight coupling: w(u,v) uniform per ordered pair; G_k keeps {u,v} when
// w(u,v) is among the k smallest out-weights of u (or symmetrically of v); O_k
// keeps {u,v} when min(w(u,v), w(v,u)) is among the k smallest such values at u
// or at v. One pass over the pairs with per-vertex top-k lists.
// `weights(u, v)` is called once per pair u < v and returns {w(u,v), w(v,u)}.
template <typename PairWeights>
CoupledGraphs coupled_from_weights(std::int64_t n, std::int32_t k, PairWeights&& weights) {
  if (k < 1) throw InvalidParameter("coupling needs k >= 1");
  if (n <= k) throw InvalidParameter("coupling needs n > k");
  const auto nk = static_cast<std::size_t>(n) * static_cast<std::size_t>(k);
  using Slot = std::pair<double, Vertex>;
  std::vector<Slot> best_out(nk, {2.0, -1});
  std::vector<Slot> best_min(nk, {2.0, -1});
  auto offer = [k](Slot* list, double w, Vertex v) {
    if (w >= list[k - 1].first) return;
    std::int32_t i = k - 1;
    while (i > 0 && list[i - 1].first > w) {
      list[i] = list[i - 1];
      --i;
    }
    list[i] = {w, v};
  };
  const auto kk = static_cast<std::size_t>(k);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) {
      const auto [wuv, wvu] = weights(u, v);
      const double x = std::min(wuv, wvu);
      offer(&best_out[static_cast<std::size_t>(u) * kk], wuv, v);
      offer(&best_out[static_cast<std::size_t>(v) * kk], wvu, u);
      offer(&best_min[static_cast<std::size_t>(u) * kk], x, v);
      offer(&best_min[static_cast<std::size_t>(v) * kk], x, u);
    }
  auto collect = [&](const std::vector<Slot>& lists) {
    std::vector<Edge> edges;
    edges.reserve(nk);
    for (std::size_t i = 0; i < nk; ++i) edges.emplace_back(static_cast<Vertex>(i / kk), lists[i].second);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return edges;
  };
  return {collect(best_min), collect(best_out)};
}

inline CoupledGraphs coupled_ok_kout(std::int64_t n, std::int32_t k, std::uint64_t seed) {
  Rng rng(seed, 0xc0);
  return coupled_from_weights(n, k, [&rng](Vertex, Vertex) {
    const double wuv = rng.uniform01();
    const double wvu = rng.uniform01();
    return std::pair{wuv, wvu};
  });
}

// Edges of `inner` missing from `outer` (both sorted).
inline std::vector<Edge> edges_missing(const std::vector<Edge>& inner, const std::vector<Edge>& outer) {
  std::vector<Edge> missing;
  std::set_difference(inner.begin(), inner.end(), outer.begin(), outer.end(), std::back_inserter(missing));
  return missing;
}

// Witness checks. Each returns an empty string when valid, else the reason.
inline std::string check_hamilton_cycle(const PurchasedGraph& g, const std::vector<Vertex>& cycle) {
  const auto n = g.vertex_count();
  if (n < 3) return "graph too small for a Hamilton cycle";
  if (static_cast<std::int64_t>(cycle.size()) != n + 1) return "cycle must list n vertices plus the repeated first";
  if (cycle.front() != cycle.back()) return "cycle does not return to its first vertex";
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (std::size_t i = 0; i + 1 < cycle.size(); ++i) {
    const Vertex v = cycle[i];
    if (v < 0 || v >= n) return "vertex out of range";
    if (seen[static_cast<std::size_t>(v)]) return "vertex repeated";
    seen[static_cast<std::size_t>(v)] = 1;
    if (!g.has_edge(cycle[i], cycle[i + 1])) return "missing edge";
  }
  return {};
}

inline std::string check_cycle(const PurchasedGraph& g, const std::vector<Vertex>& cycle, std::int64_t length) {
  if (static_cast<std::int64_t>(cycle.size()) != length + 1) return "wrong cycle length";
  if (length < 3 || cycle.front() != cycle.back()) return "not a closed cycle";
  std::set<Vertex> seen;
  for (std::size_t i = 0; i + 1 < cycle.size(); ++i) {
    if (cycle[i] < 0 || cycle[i] >= g.vertex_count()) return "vertex out of range";
    if (!seen.insert(cycle[i]).second) return "vertex repeated";
    if (!g.has_edge(cycle[i], cycle[i + 1])) return "missing edge";
  }
  return {};
}

inline std::string check_perfect_matching(const PurchasedGraph& g, const std::vector<Edge>& matching) {
  const auto n = g.vertex_count();
  if (n % 2 != 0) return "odd vertex count";
  if (static_cast<std::int64_t>(matching.size()) * 2 != n) return "matching must have n/2 edges";
  std::vector<char> covered(static_cast<std::size_t>(n), 0);
  for (const auto& e : matching) {
    if (e.v >= n) return "vertex out of range";
    if (!g.has_edge(e)) return "missing edge";
    if (covered[static_cast<std::size_t>(e.u)] || covered[static_cast<std::size_t>(e.v)]) return "vertex covered twice";
    covered[static_cast<std::size_t>(e.u)] = covered[static_cast<std::size_t>(e.v)] = 1;
  }
  return {};
}

inline std::string check_embedding(const PurchasedGraph& g, const Target& h, const std::vector<Vertex>& map) {
  if (static_cast<std::int32_t>(map.size()) != h.vertices) return "embedding size mismatch";
  std::set<Vertex> image;
  for (Vertex x : map) {
    if (x < 0 || x >= g.vertex_count()) return "vertex out of range";
    if (!image.insert(x).second) return "embedding not injective";
  }
  for (const auto& e : h.edges)
    if (!g.has_edge(map[static_cast<std::size_t>(e.u)], map[static_cast<std::size_t>(e.v)])) return "missing edge";
  return {};
}

}  // namespace builder
