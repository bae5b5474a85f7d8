#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "builder/disjoint_set.hpp"
#include "builder/edge.hpp"
#include "builder/errors.hpp"
#include "builder/key_set.hpp"
#include "builder/rng.hpp"

namespace builder {


// The random graph process: a uniformly random ordering of the edges of K_n,
// revealed one at a time. Edges are sampled lazily by rejection against the
// set already revealed; once more than half of K_n has been revealed the
// remaining edges are materialized and shuffled.
class EdgeStream {
 public:
  EdgeStream(std::int64_t n, std::uint64_t seed) : n_(n), seed_(seed), rng_(seed, 0x5eed) {
    if (n < 2) throw InvalidParameter("edge stream needs n >= 2");
    total_ = pair_count(static_cast<std::uint64_t>(n));
  }

  std::optional<Edge> next() {
    if (drawn_ == total_) return std::nullopt;
    ++drawn_;
    if (!tail_.empty() || 2 * (drawn_ - 1) >= total_) {
      if (tail_.empty()) build_tail();
      const Edge e = tail_.back();
      tail_.pop_back();
      return e;
    }
    const auto n = static_cast<std::uint64_t>(n_);
    for (;;) {
      const auto a = static_cast<Vertex>(rng_.below(n));
      auto b = static_cast<Vertex>(rng_.below(n - 1));
      if (b >= a) ++b;
      const Edge e(a, b);
      if (revealed_.insert(e.key())) return e;
    }
  }

  std::int64_t n() const { return n_; }
  std::uint64_t seed() const { return seed_; }
  std::uint64_t drawn() const { return drawn_; }
  std::uint64_t total() const { return total_; }
  bool exhausted() const { return drawn_ == total_; }

 private:
  void build_tail() {
    tail_.reserve(total_ - (drawn_ - 1));
    for (Vertex u = 0; u < n_; ++u)
      for (Vertex v = u + 1; v < n_; ++v) {
        const Edge e(u, v);
        if (!revealed_.contains(e.key())) tail_.push_back(e);
      }
    rng_.shuffle(tail_.begin(), tail_.end());
    revealed_ = detail::KeySet{};
  }

  std::int64_t n_;
  std::uint64_t seed_;
  Rng rng_;
  std::uint64_t total_ = 0;
  std::uint64_t drawn_ = 0;
  detail::KeySet revealed_;
  std::vector<Edge> tail_;
};

// State of the underlying graph G_time.
class ProcessClock {
 public:
  explicit ProcessClock(std::int64_t n)
      : degree_(static_cast<std::size_t>(n), 0), components_(static_cast<std::size_t>(n)),
        degree_histogram_(1, static_cast<std::uint64_t>(n)) {}

  void observe(Edge e) {
    ++time_;
    bump(e.u);
    bump(e.v);
    components_.unite(e.u, e.v);
  }

  std::uint64_t time() const { return time_; }
  std::int32_t degree(Vertex v) const { return degree_[static_cast<std::size_t>(v)]; }
  const std::vector<std::int32_t>& degrees() const { return degree_; }
  std::size_t component_count() const { return components_.components(); }
  bool connected() const { return components_.components() == 1; }

  std::uint64_t count_below(std::int32_t k) const {
    std::uint64_t c = 0;
    for (std::int32_t d = 0; d < k && d < static_cast<std::int32_t>(degree_histogram_.size()); ++d)
      c += degree_histogram_[static_cast<std::size_t>(d)];
    return c;
  }
  std::int32_t min_degree() const {
    for (std::size_t d = 0; d < degree_histogram_.size(); ++d)
      if (degree_histogram_[d] != 0) return static_cast<std::int32_t>(d);
    return 0;
  }

 private:
  void bump(Vertex v) {
    auto& d = degree_[static_cast<std::size_t>(v)];
    --degree_histogram_[static_cast<std::size_t>(d)];
    ++d;
    if (static_cast<std::size_t>(d) >= degree_histogram_.size()) degree_histogram_.push_back(0);
    ++degree_histogram_[static_cast<std::size_t>(d)];
  }

  std::uint64_t time_ = 0;
  std::vector<std::int32_t> degree_;
  DisjointSet components_;
  std::vector<std::uint64_t> degree_histogram_;
};

struct HittingProperty {
  enum class Kind { MinDegree, Connected };
  Kind kind = Kind::Connected;
  std::int32_t k = 1;

  static HittingProperty min_degree(std::int32_t k) { return {Kind::MinDegree, k}; }
  static HittingProperty connected() { return {Kind::Connected, 1}; }

  bool holds(const ProcessClock& clock) const {
    return kind == Kind::Connected ? clock.connected() : clock.count_below(k) == 0;
  }
};

// First time s at which G_s has the property, found by replaying the stream.
inline std::uint64_t hitting_time(std::int64_t n, std::uint64_t seed, HittingProperty property) {
  if (property.kind == HittingProperty::Kind::MinDegree && property.k < 1)
    throw InvalidParameter("min-degree hitting time needs k >= 1");
  if (property.kind == HittingProperty::Kind::MinDegree && property.k > n - 1)
    throw InvalidParameter("min degree k exceeds n - 1");
  EdgeStream stream(n, seed);
  ProcessClock clock(n);
  while (!property.holds(clock)) {
    const auto e = stream.next();
    if (!e) break;
    clock.observe(*e);
  }
  return clock.time();
}

}  // namespace builder
