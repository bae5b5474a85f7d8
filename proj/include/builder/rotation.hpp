#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "builder/edge.hpp"
#include "builder/errors.hpp"
#include "builder/graph.hpp"

namespace builder {

enum class AbsorbKind { NoChange, PathExtended, CycleMergedIntoPath, HamiltonCycleClosed };

inline const char* to_string(AbsorbKind kind) {
  switch (kind) {
    case AbsorbKind::NoChange: return "NoChange";
    case AbsorbKind::PathExtended: return "PathExtended";
    case AbsorbKind::CycleMergedIntoPath: return "CycleMergedIntoPath";
    case AbsorbKind::HamiltonCycleClosed: return "HamiltonCycleClosed";
  }
  return "?";
}

struct AbsorbOutcome {
  AbsorbKind kind = AbsorbKind::NoChange;
  // The current path, or the Hamilton cycle with its first vertex repeated last.
  std::vector<Vertex> witness;
};

struct RotationConfig {
  // After an edge that leaves the path unchanged, continue the closure search
  // from the affected endpoints instead of recomputing it from scratch.
  bool incremental = true;
  // Endpoints of the closure that get a rotation closure of their own (double
  // rotation) to enlarge the set of closing pairs. Zero disables it.
  std::int64_t double_rotation_sources = 64;
};

namespace detail {

// Breadth-first search over elementary rotations of a path whose first vertex
// stays fixed. One representative path is kept per discovered endpoint.
struct RotationScan {
  std::vector<std::vector<Vertex>> paths;
  std::vector<std::int32_t> queue;
  std::size_t head = 0;
  std::int32_t extension_path = -1;
  Vertex extension_vertex = -1;
  std::int32_t closing_path = -1;

  void start(std::vector<Vertex> path, std::vector<std::int32_t>& index_of) {
    clear(index_of);
    index_of[static_cast<std::size_t>(path.back())] = 0;
    paths.push_back(std::move(path));
    queue.push_back(0);
  }

  void clear(std::vector<std::int32_t>& index_of) {
    for (const auto& p : paths) index_of[static_cast<std::size_t>(p.back())] = -1;
    paths.clear();
    queue.clear();
    head = 0;
    extension_path = -1;
    extension_vertex = -1;
    closing_path = -1;
  }

  void requeue(std::int32_t idx) { queue.push_back(idx); }

  // Runs until the queue drains or a requested stop condition is met.
  void run(const PurchasedGraph& host, std::span<const char> on_path,
           std::vector<std::int32_t>& index_of, std::vector<std::int32_t>& pos,
           bool stop_on_extension, bool stop_on_closing) {
    std::vector<std::vector<Vertex>> staged;
    while (head < queue.size()) {
      const std::int32_t idx = queue[head];
      const auto& q = paths[static_cast<std::size_t>(idx)];
      const auto last = static_cast<std::int32_t>(q.size()) - 1;
      const Vertex end = q.back();
      for (std::int32_t i = 0; i <= last; ++i) pos[static_cast<std::size_t>(q[static_cast<std::size_t>(i)])] = i;
      bool stop = false;
      for (Vertex v : host.neighbors(end)) {
        if (!on_path[static_cast<std::size_t>(v)]) {
          if (extension_path < 0) {
            extension_path = idx;
            extension_vertex = v;
          }
          if (stop_on_extension) {
            stop = true;
            break;
          }
          continue;
        }
        const std::int32_t i = pos[static_cast<std::size_t>(v)];
        if (i == last - 1) continue;
        if (i == 0 && closing_path < 0) {
          closing_path = idx;
          if (stop_on_closing) stop = true;
        }
        const Vertex fresh = q[static_cast<std::size_t>(i) + 1];
        if (index_of[static_cast<std::size_t>(fresh)] == -1) {
          std::vector<Vertex> rotated(q.begin(), q.begin() + i + 1);
          rotated.insert(rotated.end(), q.rbegin(), q.rbegin() + (last - i));
          index_of[static_cast<std::size_t>(fresh)] = static_cast<std::int32_t>(paths.size() + staged.size());
          staged.push_back(std::move(rotated));
        }
        if (stop) break;
      }
      for (auto& p : staged) {
        queue.push_back(static_cast<std::int32_t>(paths.size()));
        paths.push_back(std::move(p));
      }
      staged.clear();
      if (stop) return;  // this path is revisited if the scan resumes
      ++head;
    }
  }
};

}  // namespace detail

// Pósa rotation-extension engine over a host graph. Keeps a longest known path,
// the rotation closure of its free end (first vertex fixed) and, when the first
// vertex is not pinned, closures of a few closure endpoints (double rotation)
// whose pairs close a cycle through all path vertices.
//
// Every edge inserted into the host must be reported through absorb_edge.
class PathSystem {
 public:
  explicit PathSystem(const PurchasedGraph& host, RotationConfig config = {})
      : host_(&host), config_(config) {
    const auto n = static_cast<std::size_t>(host.vertex_count());
    on_path_.assign(n, 0);
    front_index_.assign(n, -1);
    scratch_index_.assign(n, -1);
    pos_.assign(n, 0);
    source_end_.assign(n, 0);
  }

  // Replaces the path. With pin_front the first vertex is an endpoint forever.
  void reset(std::vector<Vertex> path, bool pin_front = false) {
    if (path.empty()) throw ContractViolation("path system needs a nonempty path");
    std::vector<char> seen(on_path_.size(), 0);
    for (std::size_t i = 0; i < path.size(); ++i) {
      const auto v = static_cast<std::size_t>(path[i]);
      if (v >= seen.size() || seen[v]) throw ContractViolation("path vertices must be distinct and in range");
      seen[v] = 1;
      if (i > 0 && !host_->has_edge(path[i - 1], path[i])) throw ContractViolation("path uses a non-edge");
    }
    on_path_ = std::move(seen);
    path_ = std::move(path);
    pinned_ = pin_front;
    cycle_.clear();
    cycle_recorded_ = false;
    invalidate();
  }

  // Starts from a single vertex and grows as far as rotations allow.
  AbsorbOutcome seed(Vertex start, bool pin_front = false) {
    reset({start}, pin_front);
    return grow();
  }

  const std::vector<Vertex>& path() const { return path_; }
  std::int64_t path_length() const { return static_cast<std::int64_t>(path_.size()) - 1; }
  Vertex fixed_end() const { return path_.front(); }
  bool pinned() const { return pinned_; }
  bool spanning() const { return static_cast<std::int64_t>(path_.size()) == host_->vertex_count(); }
  bool has_hamilton_cycle() const { return !cycle_.empty(); }
  const std::vector<Vertex>& hamilton_cycle() const { return cycle_; }
  bool cycle_recorded() const { return cycle_recorded_; }
  const PurchasedGraph& host() const { return *host_; }

  // Rotation closure of the free end, first vertex fixed (sorted).
  std::vector<Vertex> endpoint_set() const {
    ensure_fresh();
    std::vector<Vertex> ends;
    ends.reserve(front_scan_.paths.size());
    for (const auto& p : front_scan_.paths) ends.push_back(p.back());
    std::sort(ends.begin(), ends.end());
    return ends;
  }

  // A path with the same vertex set from fixed_end() to `endpoint`.
  std::vector<Vertex> path_to(Vertex endpoint) const {
    ensure_fresh();
    const auto idx = front_index_[static_cast<std::size_t>(endpoint)];
    if (idx < 0) throw InvalidParameter("vertex is not an achievable endpoint");
    return front_scan_.paths[static_cast<std::size_t>(idx)];
  }

  void recompute_closure() { refresh(); }

  // One-hop certificate: adding e extends the path from an achievable endpoint
  // or closes a cycle through all path vertices (Hamiltonian when spanning,
  // otherwise reopened through an exit edge). Sound whenever the current path
  // is a longest path of the host.
  bool is_operational_booster(Edge e) const {
    if (host_->has_edge(e) || !cycle_.empty()) return false;
    ensure_fresh();
    return certified(e);
  }

  AbsorbOutcome absorb_edge(Edge e) {
    if (!host_->has_edge(e)) throw ContractViolation("absorb_edge: edge must already be in the host");
    if (!cycle_.empty()) return {AbsorbKind::NoChange, cycle_};
    const Snapshot before = snapshot();
    const bool was_fresh = fresh_ && host_->edge_count() == fresh_edges_ + 1;
    if (!was_fresh) {
      grow_internal();
      return outcome(before);
    }
    if (!pinned_ && !sources_fresh_) refresh_sources();
    if (apply_certified(e)) {
      grow_internal();
      return outcome(before);
    }
    if (!config_.incremental) {
      invalidate();
      return outcome(before);
    }
    update_incrementally(e);
    return outcome(before);
  }

  // Extends the path as far as rotations, extensions and cycle reopening allow.
  AbsorbOutcome grow() {
    const Snapshot before = snapshot();
    grow_internal();
    return outcome(before);
  }

 private:
  struct Snapshot {
    std::size_t size;
    bool cycle_recorded;
    bool hamiltonian;
  };

  Snapshot snapshot() const { return {path_.size(), cycle_recorded_, !cycle_.empty()}; }

  AbsorbOutcome outcome(const Snapshot& before) const {
    if (!cycle_.empty() && !before.hamiltonian) return {AbsorbKind::HamiltonCycleClosed, cycle_};
    if (path_.size() > before.size) {
      const bool merged = before.cycle_recorded || reopened_;
      return {merged ? AbsorbKind::CycleMergedIntoPath : AbsorbKind::PathExtended, path_};
    }
    return {AbsorbKind::NoChange, path_};
  }

  void invalidate() const {
    fresh_ = false;
    sources_fresh_ = false;
  }

  void ensure_fresh() const {
    if (!fresh_ || host_->edge_count() != fresh_edges_) refresh();
    if (!pinned_ && !sources_fresh_) refresh_sources();
  }

  bool exit_exists() const {
    for (Vertex v : path_)
      for (Vertex w : host_->neighbors(v))
        if (!on_path_[static_cast<std::size_t>(w)]) return true;
    return false;
  }

  bool is_extension_end(Vertex x) const {
    const auto xi = static_cast<std::size_t>(x);
    return front_index_[xi] >= 0 || source_end_[xi] || (!pinned_ && x == path_.front());
  }

  bool certified(Edge e) const {
    const auto ui = static_cast<std::size_t>(e.u);
    const auto vi = static_cast<std::size_t>(e.v);
    if (!on_path_[vi] && on_path_[ui] && is_extension_end(e.u)) return true;
    if (!on_path_[ui] && on_path_[vi] && is_extension_end(e.v)) return true;
    if (!pinned_ && on_path_[ui] && on_path_[vi] && closing_pairs_.count(e.key()) != 0)
      return spanning() || has_exit_;
    return false;
  }

  void refresh() const {
    front_scan_.start(path_, front_index_);
    front_scan_.run(*host_, on_path_, front_index_, pos_, false, false);
    if (front_scan_.closing_path >= 0) cycle_recorded_ = true;
    has_exit_ = exit_exists();
    closing_pairs_.clear();
    if (!pinned_) {
      const Vertex front = path_.front();
      for (const auto& p : front_scan_.paths)
        if (p.size() >= 3 && !host_->has_edge(front, p.back())) closing_pairs_.emplace(Edge(front, p.back()).key(), -1);
    }
    fresh_ = true;
    fresh_edges_ = host_->edge_count();
    sources_fresh_ = false;
    if (!pinned_) refresh_sources();
  }

  std::size_t source_count() const {
    return std::min<std::size_t>(static_cast<std::size_t>(std::max<std::int64_t>(config_.double_rotation_sources, 0)),
                                 front_scan_.paths.size());
  }

  void scan_source(std::size_t j, bool stop_on_extension, bool stop_on_closing) const {
    std::vector<Vertex> reversed(front_scan_.paths[j].rbegin(), front_scan_.paths[j].rend());
    source_scan_.start(std::move(reversed), scratch_index_);
    source_scan_.run(*host_, on_path_, scratch_index_, pos_, stop_on_extension, stop_on_closing);
  }

  void refresh_sources() const {
    for (Vertex v : source_end_list_) source_end_[static_cast<std::size_t>(v)] = 0;
    source_end_list_.clear();
    for (auto it = closing_pairs_.begin(); it != closing_pairs_.end();)
      it = it->second >= 0 ? closing_pairs_.erase(it) : std::next(it);
    const std::size_t sources = source_count();
    for (std::size_t j = 0; j < sources; ++j) {
      scan_source(j, false, false);
      const Vertex s = front_scan_.paths[j].back();
      for (const auto& p : source_scan_.paths) {
        const Vertex z = p.back();
        if (!source_end_[static_cast<std::size_t>(z)]) {
          source_end_[static_cast<std::size_t>(z)] = 1;
          source_end_list_.push_back(z);
        }
        if (p.size() >= 3 && !host_->has_edge(s, z))
          closing_pairs_.emplace(Edge(s, z).key(), static_cast<std::int32_t>(j));
      }
      source_scan_.clear(scratch_index_);
    }
    sources_fresh_ = true;
  }

  // A path ending at x with the current vertex set, from any closure.
  std::vector<Vertex> materialize_end(Vertex x) {
    const auto xi = static_cast<std::size_t>(x);
    if (front_index_[xi] >= 0) return front_scan_.paths[static_cast<std::size_t>(front_index_[xi])];
    if (!pinned_ && x == path_.front()) return {path_.rbegin(), path_.rend()};
    const std::size_t sources = source_count();
    for (std::size_t j = 0; j < sources; ++j) {
      scan_source(j, false, false);
      const auto idx = scratch_index_[xi];
      std::vector<Vertex> found;
      if (idx >= 0) found = source_scan_.paths[static_cast<std::size_t>(idx)];
      source_scan_.clear(scratch_index_);
      if (!found.empty()) return found;
    }
    throw ContractViolation("rotation engine lost an endpoint witness");
  }

  bool apply_certified(Edge e) {
    const auto ui = static_cast<std::size_t>(e.u);
    const auto vi = static_cast<std::size_t>(e.v);
    for (int flip = 0; flip < 2; ++flip) {
      const Vertex x = flip ? e.v : e.u;
      const Vertex y = flip ? e.u : e.v;
      if (on_path_[static_cast<std::size_t>(x)] && !on_path_[static_cast<std::size_t>(y)] && is_extension_end(x)) {
        auto p = materialize_end(x);
        p.push_back(y);
        set_path(std::move(p));
        return true;
      }
    }
    if (pinned_ || !on_path_[ui] || !on_path_[vi]) return false;
    const auto it = closing_pairs_.find(e.key());
    if (it == closing_pairs_.end() || !(spanning() || has_exit_)) return false;
    std::vector<Vertex> cycle;
    if (it->second < 0) {
      const Vertex x = e.u == path_.front() ? e.v : e.u;
      cycle = front_scan_.paths[static_cast<std::size_t>(front_index_[static_cast<std::size_t>(x)])];
    } else {
      const auto j = static_cast<std::size_t>(it->second);
      const Vertex s = front_scan_.paths[j].back();
      const Vertex z = e.other(s);
      scan_source(j, false, false);
      cycle = source_scan_.paths[static_cast<std::size_t>(scratch_index_[static_cast<std::size_t>(z)])];
      source_scan_.clear(scratch_index_);
    }
    close_cycle(std::move(cycle));
    return true;
  }

  // `cycle` is a path whose last vertex is adjacent to its first.
  void close_cycle(std::vector<Vertex> cycle) {
    if (spanning()) {
      cycle.push_back(cycle.front());
      cycle_ = std::move(cycle);
      invalidate();
      return;
    }
    for (std::size_t j = 0; j < cycle.size(); ++j)
      for (Vertex w : host_->neighbors(cycle[j])) {
        if (on_path_[static_cast<std::size_t>(w)]) continue;
        std::vector<Vertex> reopened(cycle.begin() + static_cast<std::ptrdiff_t>(j) + 1, cycle.end());
        reopened.insert(reopened.end(), cycle.begin(), cycle.begin() + static_cast<std::ptrdiff_t>(j) + 1);
        reopened.push_back(w);
        reopened_ = true;
        set_path(std::move(reopened));
        return;
      }
    cycle_recorded_ = true;
  }

  void set_path(std::vector<Vertex> p) {
    if (p.size() > path_.size()) cycle_recorded_ = false;
    path_ = std::move(p);
    for (Vertex v : path_) on_path_[static_cast<std::size_t>(v)] = 1;
    invalidate();
  }

  bool try_direct_extension() {
    for (Vertex w : host_->neighbors(path_.back()))
      if (!on_path_[static_cast<std::size_t>(w)]) {
        auto p = path_;
        p.push_back(w);
        set_path(std::move(p));
        return true;
      }
    if (pinned_) return false;
    for (Vertex w : host_->neighbors(path_.front()))
      if (!on_path_[static_cast<std::size_t>(w)]) {
        std::vector<Vertex> p(path_.rbegin(), path_.rend());
        p.push_back(w);
        set_path(std::move(p));
        return true;
      }
    return false;
  }

  // Handles the first extension or closing found by `scan`; false when none.
  bool take(detail::RotationScan& scan, bool exits) {
    if (scan.extension_path >= 0) {
      auto p = scan.paths[static_cast<std::size_t>(scan.extension_path)];
      p.push_back(scan.extension_vertex);
      set_path(std::move(p));
      return true;
    }
    if (scan.closing_path >= 0) {
      if (pinned_ || (!spanning() && !exits)) {
        cycle_recorded_ = true;
        return false;
      }
      close_cycle(scan.paths[static_cast<std::size_t>(scan.closing_path)]);
      return true;
    }
    return false;
  }

  void grow_internal() {
    reopened_ = false;
    while (cycle_.empty()) {
      if (try_direct_extension()) continue;
      const bool exits = !spanning() && exit_exists();
      const bool stop_on_closing = !pinned_ && (spanning() || exits);
      front_scan_.start(path_, front_index_);
      front_scan_.run(*host_, on_path_, front_index_, pos_, true, stop_on_closing);
      if (take(front_scan_, exits)) continue;
      bool progressed = false;
      if (!pinned_) {
        const std::size_t sources = source_count();
        for (std::size_t j = 0; j < sources && !progressed; ++j) {
          scan_source(j, true, stop_on_closing);
          if (source_scan_.extension_path >= 0 || (source_scan_.closing_path >= 0 && stop_on_closing)) {
            detail::RotationScan found = std::move(source_scan_);
            source_scan_ = {};
            for (const auto& p : found.paths) scratch_index_[static_cast<std::size_t>(p.back())] = -1;
            progressed = take(found, exits);
          } else {
            source_scan_.clear(scratch_index_);
          }
        }
      }
      if (progressed) continue;
      refresh();
      return;
    }
  }

  void update_incrementally(Edge e) {
    const std::size_t known = front_scan_.paths.size();
    const std::size_t sources = source_count();
    bool touched = false;
    for (Vertex x : {e.u, e.v}) {
      const auto idx = front_index_[static_cast<std::size_t>(x)];
      if (idx >= 0) {
        front_scan_.requeue(idx);
        touched = true;
      }
    }
    if (touched) {
      front_scan_.run(*host_, on_path_, front_index_, pos_, false, false);
      if (front_scan_.closing_path >= 0) cycle_recorded_ = true;
      if (!pinned_) {
        const Vertex front = path_.front();
        for (std::size_t i = known; i < front_scan_.paths.size(); ++i) {
          const Vertex x = front_scan_.paths[i].back();
          if (front_scan_.paths[i].size() >= 3 && !host_->has_edge(front, x))
            closing_pairs_.emplace(Edge(front, x).key(), -1);
        }
      }
    }
    if (!has_exit_ && on_path_[static_cast<std::size_t>(e.u)] != on_path_[static_cast<std::size_t>(e.v)]) has_exit_ = true;
    closing_pairs_.erase(e.key());
    const bool sources_changed = source_count() != sources || source_end_[static_cast<std::size_t>(e.u)] ||
                                 source_end_[static_cast<std::size_t>(e.v)];
    if (sources_changed) sources_fresh_ = false;
    fresh_edges_ = host_->edge_count();
  }

  const PurchasedGraph* host_;
  RotationConfig config_;
  std::vector<Vertex> path_;
  std::vector<char> on_path_;
  bool pinned_ = false;
  std::vector<Vertex> cycle_;
  bool reopened_ = false;

  mutable bool cycle_recorded_ = false;
  mutable bool fresh_ = false;
  mutable bool sources_fresh_ = false;
  mutable std::size_t fresh_edges_ = 0;
  mutable bool has_exit_ = false;
  mutable detail::RotationScan front_scan_;
  mutable detail::RotationScan source_scan_;
  mutable std::vector<std::int32_t> front_index_;
  mutable std::vector<std::int32_t> scratch_index_;
  mutable std::vector<std::int32_t> pos_;
  mutable std::vector<char> source_end_;
  mutable std::vector<Vertex> source_end_list_;
  mutable std::unordered_map<std::uint64_t, std::int32_t> closing_pairs_;
};

}  // namespace builder
