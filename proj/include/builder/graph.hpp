#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <istream>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "builder/disjoint_set.hpp"
#include "builder/edge.hpp"
#include "builder/errors.hpp"
#include "builder/limits.hpp"
#include "builder/rng.hpp"

namespace builder {

// Builder's graph of purchased edges. Simple, undirected, vertices 0..n-1.
class PurchasedGraph {
 public:
  explicit PurchasedGraph(std::int64_t n = 0)
      : adjacency_(static_cast<std::size_t>(n)), components_(static_cast<std::size_t>(n)) {}

  std::int64_t vertex_count() const { return static_cast<std::int64_t>(adjacency_.size()); }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }

  std::span<const Vertex> neighbors(Vertex v) const { return adjacency_[index(v)]; }
  std::int32_t degree(Vertex v) const { return static_cast<std::int32_t>(adjacency_[index(v)].size()); }

  bool has_edge(Vertex a, Vertex b) const {
    if (a == b) return false;
    const auto& la = adjacency_[index(a)];
    const auto& lb = adjacency_[index(b)];
    const auto& shorter = la.size() <= lb.size() ? la : lb;
    const Vertex target = la.size() <= lb.size() ? b : a;
    return std::find(shorter.begin(), shorter.end(), target) != shorter.end();
  }
  bool has_edge(Edge e) const { return has_edge(e.u, e.v); }

  void add_edge(Edge e) {
    if (e.v >= vertex_count() || e.u < 0) throw InvalidParameter("edge endpoint out of range");
    if (has_edge(e)) {
      std::ostringstream os;
      os << "duplicate edge " << e;
      throw ContractViolation(os.str());
    }
    adjacency_[index(e.u)].push_back(e.v);
    adjacency_[index(e.v)].push_back(e.u);
    edges_.push_back(e);
    components_.unite(e.u, e.v);
  }

  std::size_t component_count() const { return components_.components(); }
  bool same_component(Vertex a, Vertex b) const { return components_.same(a, b); }
  std::int32_t component_size(Vertex v) const { return components_.component_size(v); }

  std::int32_t max_degree() const {
    std::size_t d = 0;
    for (const auto& list : adjacency_) d = std::max(d, list.size());
    return static_cast<std::int32_t>(d);
  }
  std::int32_t min_degree() const {
    if (adjacency_.empty()) return 0;
    std::size_t d = adjacency_.front().size();
    for (const auto& list : adjacency_) d = std::min(d, list.size());
    return static_cast<std::int32_t>(d);
  }
  std::int64_t non_isolated_count() const {
    return std::count_if(adjacency_.begin(), adjacency_.end(),
                         [](const auto& l) { return !l.empty(); });
  }

 private:
  static std::size_t index(Vertex v) { return static_cast<std::size_t>(v); }

  std::vector<std::vector<Vertex>> adjacency_;
  std::vector<Edge> edges_;
  mutable DisjointSet components_;
};

inline PurchasedGraph make_graph(std::int64_t n, std::span<const Edge> edges) {
  PurchasedGraph g(n);
  for (const auto& e : edges) g.add_edge(e);
  return g;
}
inline PurchasedGraph make_graph(std::int64_t n, std::initializer_list<Edge> edges) {
  return make_graph(n, std::span<const Edge>(edges.begin(), edges.size()));
}

// Observation and purchase caps of a (t, b)-strategy.
struct BudgetLedger {
  std::uint64_t max_purchases = 0;     // b
  std::uint64_t max_observations = 0;  // t
  std::uint64_t purchased = 0;
  std::uint64_t observed = 0;

  bool can_observe() const { return observed < max_observations; }
  bool can_purchase() const { return purchased < max_purchases; }
  bool consistent() const {
    return purchased <= max_purchases && observed <= max_observations && purchased <= observed;
  }
};

// Exact degeneracy by repeated removal of a minimum-degree vertex (bucket queue).
inline std::int32_t degeneracy(const PurchasedGraph& g) {
  const auto n = static_cast<std::size_t>(g.vertex_count());
  if (n == 0) return 0;
  std::vector<std::int32_t> deg(n);
  std::int32_t max_deg = 0;
  for (std::size_t v = 0; v < n; ++v) {
    deg[v] = g.degree(static_cast<Vertex>(v));
    max_deg = std::max(max_deg, deg[v]);
  }
  std::vector<std::vector<Vertex>> buckets(static_cast<std::size_t>(max_deg) + 1);
  for (std::size_t v = 0; v < n; ++v) buckets[static_cast<std::size_t>(deg[v])].push_back(static_cast<Vertex>(v));
  std::vector<char> removed(n, 0);
  std::int32_t result = 0;
  std::size_t done = 0;
  std::int32_t d = 0;
  while (done < n) {
    d = std::max(d - 1, 0);
    while (buckets[static_cast<std::size_t>(d)].empty()) ++d;
    const Vertex v = buckets[static_cast<std::size_t>(d)].back();
    buckets[static_cast<std::size_t>(d)].pop_back();
    const auto vi = static_cast<std::size_t>(v);
    if (removed[vi] || deg[vi] != d) continue;  // stale bucket entry
    removed[vi] = 1;
    ++done;
    result = std::max(result, d);
    for (Vertex w : g.neighbors(v)) {
      const auto wi = static_cast<std::size_t>(w);
      if (removed[wi]) continue;
      --deg[wi];
      buckets[static_cast<std::size_t>(deg[wi])].push_back(w);
    }
  }
  return result;
}

namespace detail {

inline std::vector<std::uint32_t> neighbor_masks(const PurchasedGraph& g) {
  std::vector<std::uint32_t> masks(static_cast<std::size_t>(g.vertex_count()), 0);
  for (const auto& e : g.edges()) {
    masks[static_cast<std::size_t>(e.u)] |= 1u << e.v;
    masks[static_cast<std::size_t>(e.v)] |= 1u << e.u;
  }
  return masks;
}

inline std::uint32_t external_neighborhood(std::span<const std::uint32_t> masks, std::uint32_t set) {
  std::uint32_t nb = 0;
  for (std::uint32_t rest = set; rest != 0; rest &= rest - 1) nb |= masks[static_cast<std::size_t>(std::countr_zero(rest))];
  return nb & ~set;
}

// Next subset of the same popcount (Gosper's hack).
inline std::uint32_t next_combination(std::uint32_t x) {
  const std::uint32_t c = x & (0u - x);
  const std::uint32_t r = x + c;
  return (((r ^ x) >> 2) / c) | r;
}

inline std::vector<Vertex> mask_vertices(std::uint32_t set) {
  std::vector<Vertex> out;
  for (; set != 0; set &= set - 1) out.push_back(static_cast<Vertex>(std::countr_zero(set)));
  return out;
}

}  // namespace detail

struct ExpansionCheck {
  enum class Mode { Exact, Sampled };
  Mode mode = Mode::Exact;
  std::int64_t samples_per_size = 200;  // Sampled mode only
  std::uint64_t seed = 0;               // Sampled mode only
};

struct ExpansionResult {
  bool expander = true;
  std::vector<Vertex> witness;  // a violating set when !expander
  explicit operator bool() const { return expander; }
};

// R-expander: every U with |U| <= R has |N(U) \ U| >= 2|U|.
// Exact mode enumerates all small sets; Sampled mode is one-sided (a false
// answer carries a violating witness, a true answer only means none was found).
inline ExpansionResult is_r_expander(const PurchasedGraph& g, std::int64_t radius,
                                     ExpansionCheck check = {}) {
  const std::int64_t n = g.vertex_count();
  ExpansionResult result;
  const std::int64_t max_size = std::min(radius, n);
  if (check.mode == ExpansionCheck::Mode::Exact) {
    if (n > kExactLimits.expander_vertices)
      throw SizeLimitError("exact expansion check limited to n <= 24");
    const auto masks = detail::neighbor_masks(g);
    for (std::int64_t size = 1; size <= max_size; ++size) {
      const std::uint32_t last = ((1u << size) - 1) << (n - size);
      for (std::uint32_t set = (1u << size) - 1;; set = detail::next_combination(set)) {
        const auto nb = detail::external_neighborhood(masks, set);
        if (std::popcount(nb) < 2 * size) {
          result.expander = false;
          result.witness = detail::mask_vertices(set);
          return result;
        }
        if (set == last) break;
      }
    }
    return result;
  }

  Rng rng(check.seed, 0xe8a);
  std::vector<Vertex> pool(static_cast<std::size_t>(n));
  std::vector<char> in_set(static_cast<std::size_t>(n), 0);
  for (std::int64_t size = 1; size <= max_size; ++size) {
    for (std::int64_t sample = 0; sample < check.samples_per_size; ++sample) {
      for (std::size_t i = 0; i < pool.size(); ++i) pool[i] = static_cast<Vertex>(i);
      // Partial Fisher-Yates: first `size` entries are a uniform subset.
      for (std::int64_t i = 0; i < size; ++i) {
        const auto j = static_cast<std::size_t>(i) + rng.below(static_cast<std::uint64_t>(n - i));
        std::swap(pool[static_cast<std::size_t>(i)], pool[j]);
      }
      for (std::int64_t i = 0; i < size; ++i) in_set[static_cast<std::size_t>(pool[static_cast<std::size_t>(i)])] = 1;
      std::vector<Vertex> nb;
      for (std::int64_t i = 0; i < size; ++i)
        for (Vertex w : g.neighbors(pool[static_cast<std::size_t>(i)]))
          if (!in_set[static_cast<std::size_t>(w)]) {
            in_set[static_cast<std::size_t>(w)] = 2;
            nb.push_back(w);
          }
      for (Vertex w : nb) in_set[static_cast<std::size_t>(w)] = 0;
      for (std::int64_t i = 0; i < size; ++i) in_set[static_cast<std::size_t>(pool[static_cast<std::size_t>(i)])] = 0;
      if (static_cast<std::int64_t>(nb.size()) < 2 * size) {
        result.expander = false;
        result.witness.assign(pool.begin(), pool.begin() + size);
        std::sort(result.witness.begin(), result.witness.end());
        return result;
      }
    }
  }
  return result;
}

// Maximum number of edges spanned by a q-vertex subset (exact, n <= 24).
inline std::int64_t max_edges_spanned(const PurchasedGraph& g, std::int64_t q) {
  const std::int64_t n = g.vertex_count();
  if (n > kExactLimits.spanned_vertices) throw SizeLimitError("max_edges_spanned limited to n <= 24");
  if (q < 0 || q > n) throw InvalidParameter("subset size out of range");
  if (q == 0) return 0;
  const auto masks = detail::neighbor_masks(g);
  const std::uint32_t last = ((1u << q) - 1) << (n - q);
  std::int64_t best = 0;
  for (std::uint32_t set = (1u << q) - 1;; set = detail::next_combination(set)) {
    std::int64_t twice = 0;
    for (std::uint32_t rest = set; rest != 0; rest &= rest - 1)
      twice += std::popcount(masks[static_cast<std::size_t>(std::countr_zero(rest))] & set);
    best = std::max(best, twice / 2);
    if (set == last) break;
  }
  return best;
}

class EdgeListError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Edge-list dump: header "n m", then m lines "u v".
inline void write_edge_list(std::ostream& os, std::int64_t n, std::span<const Edge> edges) {
  os << n << ' ' << edges.size() << '\n';
  for (const auto& e : edges) os << e.u << ' ' << e.v << '\n';
}
inline void write_edge_list(std::ostream& os, const PurchasedGraph& g) {
  write_edge_list(os, g.vertex_count(), g.edges());
}

inline PurchasedGraph read_edge_list(std::istream& is) {
  std::string line;
  auto next_line = [&]() -> bool {
    while (std::getline(is, line)) {
      const auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos || line[first] == '#') continue;
      return true;
    }
    return false;
  };
  if (!next_line()) throw EdgeListError("edge list: missing header");
  std::istringstream header(line);
  std::int64_t n = -1;
  std::int64_t m = -1;
  if (!(header >> n >> m) || n < 0 || m < 0) throw EdgeListError("edge list: bad header '" + line + "'");
  PurchasedGraph g(n);
  for (std::int64_t i = 0; i < m; ++i) {
    if (!next_line()) throw EdgeListError("edge list: expected " + std::to_string(m) + " edges");
    std::istringstream row(line);
    std::int64_t u = -1;
    std::int64_t v = -1;
    if (!(row >> u >> v) || u < 0 || v < 0 || u >= n || v >= n || u == v)
      throw EdgeListError("edge list: bad edge line '" + line + "'");
    const Edge e(static_cast<Vertex>(u), static_cast<Vertex>(v));
    if (g.has_edge(e)) throw EdgeListError("edge list: repeated edge '" + line + "'");
    g.add_edge(e);
  }
  return g;
}

}  // namespace builder
