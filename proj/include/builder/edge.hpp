#pragma once

#include <cstdint>
#include <functional>
#include <ostream>
#include <utility>

#include "builder/errors.hpp"

namespace builder {

using Vertex = std::int32_t;

// Unordered vertex pair, always stored with u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 1;

  Edge() = default;
  Edge(Vertex a, Vertex b) : u(a < b ? a : b), v(a < b ? b : a) {
    if (a == b) throw InvalidParameter("edge endpoints must differ");
  }

  Vertex other(Vertex x) const { return x == u ? v : u; }
  bool touches(Vertex x) const { return x == u || x == v; }

  std::uint64_t key() const {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) |
           static_cast<std::uint32_t>(v);
  }
  static Edge from_key(std::uint64_t k) {
    Edge e;
    e.u = static_cast<Vertex>(k >> 32);
    e.v = static_cast<Vertex>(k & 0xffffffffULL);
    return e;
  }

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
  friend std::ostream& operator<<(std::ostream& os, const Edge& e) {
    return os << '(' << e.u << ',' << e.v << ')';
  }
};

inline std::uint64_t pair_count(std::uint64_t n) { return n * (n - 1) / 2; }

}  // namespace builder

template <>
struct std::hash<builder::Edge> {
  std::size_t operator()(const builder::Edge& e) const noexcept {
    std::uint64_t x = e.key();
    x ^= x >> 33;
    x *= 0xff51afd7ed558ccdULL;
    x ^= x >> 33;
    return static_cast<std::size_t>(x);
  }
};
