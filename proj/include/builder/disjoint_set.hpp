#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

namespace builder {

// Union by size with path compression.
class DisjointSet {
 public:
  explicit DisjointSet(std::size_t n = 0) { reset(n); }

  void reset(std::size_t n) {
    parent_.resize(n);
    std::iota(parent_.begin(), parent_.end(), 0);
    size_.assign(n, 1);
    components_ = n;
  }

  std::int32_t find(std::int32_t x) {
    std::int32_t root = x;
    while (parent_[root] != root) root = parent_[root];
    while (parent_[x] != root) {
      const std::int32_t next = parent_[x];
      parent_[x] = root;
      x = next;
    }
    return root;
  }

  // Returns false when x and y were already joined.
  bool unite(std::int32_t x, std::int32_t y) {
    x = find(x);
    y = find(y);
    if (x == y) return false;
    if (size_[x] < size_[y]) std::swap(x, y);
    parent_[y] = x;
    size_[x] += size_[y];
    --components_;
    return true;
  }

  bool same(std::int32_t x, std::int32_t y) { return find(x) == find(y); }
  std::int32_t component_size(std::int32_t x) { return size_[find(x)]; }
  std::size_t components() const { return components_; }
  std::size_t size() const { return parent_.size(); }

 private:
  std::vector<std::int32_t> parent_;
  std::vector<std::int32_t> size_;
  std::size_t components_ = 0;
};

}  // namespace builder
