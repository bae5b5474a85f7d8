#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <map>
#include <set>

#include "builder/edge_stream.hpp"

using namespace builder;

namespace {

std::vector<Edge> drain(std::int64_t n, std::uint64_t seed) {
  EdgeStream s(n, seed);
  std::vector<Edge> out;
  while (auto e = s.next()) out.push_back(*e);
  return out;
}

// Chi-square critical value approximation (Wilson-Hilferty) at upper tail p.
double chi_square_critical(double dof, double z) {
  const double a = 2.0 / (9.0 * dof);
  return dof * std::pow(1.0 - a + z * std::sqrt(a), 3.0);
}

}  // namespace

TEST(Edge, CanonicalAndHashable) {
  const Edge e(5, 2);
  EXPECT_EQ(e.u, 2);
  EXPECT_EQ(e.v, 5);
  EXPECT_EQ(e, Edge(2, 5));
  EXPECT_THROW(Edge(3, 3), InvalidParameter);
  EXPECT_EQ(Edge::from_key(e.key()), e);
  EXPECT_EQ(std::hash<Edge>{}(e), std::hash<Edge>{}(Edge(2, 5)));
  EXPECT_LT(Edge(0, 9), Edge(1, 2));
}

TEST(EdgeStream, RejectsTinyN) {
  EXPECT_THROW(EdgeStream(1, 0), InvalidParameter);
  EXPECT_THROW(EdgeStream(0, 0), InvalidParameter);
}

TEST(EdgeStream, TriangleIsPermutation) {
  const auto edges = drain(3, 11);
  ASSERT_EQ(edges.size(), 3u);
  std::set<Edge> seen(edges.begin(), edges.end());
  EXPECT_EQ(seen, (std::set<Edge>{Edge(0, 1), Edge(0, 2), Edge(1, 2)}));
}

TEST(EdgeStream, FiveVerticesGiveTenDistinctEdges) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto edges = drain(5, seed);
    ASSERT_EQ(edges.size(), 10u);
    EXPECT_EQ(std::set<Edge>(edges.begin(), edges.end()).size(), 10u);
  }
}

TEST(EdgeStream, Deterministic) {
  EXPECT_EQ(drain(3, 7), drain(3, 7));
  EXPECT_EQ(drain(40, 99), drain(40, 99));
}

TEST(EdgeStream, SeedsDiffer) { EXPECT_NE(drain(40, 1), drain(40, 2)); }

TEST(EdgeStream, LastDrawIsRemainingEdgeThenExhausted) {
  EdgeStream s(4, 123);
  std::set<Edge> seen;
  for (int i = 0; i < 5; ++i) seen.insert(*s.next());
  std::set<Edge> all;
  for (Vertex u = 0; u < 4; ++u)
    for (Vertex v = u + 1; v < 4; ++v) all.insert(Edge(u, v));
  Edge missing(0, 1);
  for (const auto& e : all)
    if (!seen.count(e)) missing = e;
  EXPECT_EQ(*s.next(), missing);
  EXPECT_TRUE(s.exhausted());
  EXPECT_FALSE(s.next().has_value());
}

TEST(EdgeStream, NeverRepeatsAcrossTailSwitch) {
  for (std::int64_t n : {2, 3, 7, 30, 64}) {
    const auto edges = drain(n, static_cast<std::uint64_t>(n) * 31);
    EXPECT_EQ(edges.size(), pair_count(static_cast<std::uint64_t>(n)));
    EXPECT_EQ(std::set<Edge>(edges.begin(), edges.end()).size(), edges.size());
  }
}

TEST(EdgeStream, FirstDrawUniformOnFourVertices) {
  std::map<Edge, int> freq;
  const int seeds = 100000;
  for (int seed = 0; seed < seeds; ++seed) {
    EdgeStream s(4, static_cast<std::uint64_t>(seed));
    ++freq[*s.next()];
  }
  ASSERT_EQ(freq.size(), 6u);
  for (const auto& [e, c] : freq) EXPECT_NEAR(static_cast<double>(c) / seeds, 1.0 / 6.0, 0.01) << e;
}

TEST(EdgeStream, OrderedTriplesUniformOnFourVertices) {
  std::map<std::array<Edge, 3>, int> freq;
  const int seeds = 100000;
  for (int seed = 0; seed < seeds; ++seed) {
    EdgeStream s(4, static_cast<std::uint64_t>(seed) + 1000000);
    freq[{*s.next(), *s.next(), *s.next()}]++;
  }
  // 6 * 5 * 4 ordered triples of distinct edges.
  ASSERT_EQ(freq.size(), 120u);
  const double expected = static_cast<double>(seeds) / 120.0;
  double chi = 0.0;
  for (const auto& [k, c] : freq) chi += (c - expected) * (c - expected) / expected;
  EXPECT_LT(chi, chi_square_critical(119.0, 3.09));  // upper 0.1% tail
}

TEST(ProcessClock, DegreeSumIsTwiceTime) {
  EdgeStream s(50, 5);
  ProcessClock clock(50);
  for (int i = 0; i < 300; ++i) {
    clock.observe(*s.next());
    std::int64_t sum = 0;
    for (auto d : clock.degrees()) sum += d;
    ASSERT_EQ(sum, 2 * static_cast<std::int64_t>(clock.time()));
  }
}

TEST(HittingTime, SmallCases) {
  EXPECT_EQ(hitting_time(2, 0, HittingProperty::connected()), 1u);
  for (std::uint64_t seed = 0; seed < 20; ++seed)
    EXPECT_EQ(hitting_time(3, seed, HittingProperty::min_degree(1)), 2u);
  EXPECT_THROW(hitting_time(5, 0, HittingProperty::min_degree(0)), InvalidParameter);
  EXPECT_THROW(hitting_time(5, 0, HittingProperty::min_degree(5)), InvalidParameter);
}

TEST(HittingTime, MonotoneInK) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    std::uint64_t prev = 0;
    for (int k = 1; k <= 4; ++k) {
      const auto t = hitting_time(200, seed, HittingProperty::min_degree(k));
      EXPECT_GE(t, prev);
      prev = t;
    }
    EXPECT_GE(hitting_time(200, seed, HittingProperty::connected()),
              hitting_time(200, seed, HittingProperty::min_degree(1)));
  }
}

TEST(HittingTime, TauOneNearHalfNLogN) {
  const std::int64_t n = 100000;
  int inside = 0;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const double tau = static_cast<double>(hitting_time(n, seed, HittingProperty::min_degree(1)));
    const double ratio = 2.0 * tau / (static_cast<double>(n) * std::log(static_cast<double>(n)));
    if (ratio >= 0.85 && ratio <= 1.25) ++inside;
  }
  EXPECT_GE(inside, 29) << inside << " of 30 seeds inside [0.85, 1.25]";
}
