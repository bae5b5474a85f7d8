#pragma once

#include <cstdint>
#include <vector>

#include "builder/rng.hpp"

namespace builder {

namespace detail {

// Open-addressing set of non-zero 64-bit keys (edge keys are never zero).
class KeySet {
 public:
  bool contains(std::uint64_t key) const {
    if (slots_.empty()) return false;
    for (std::size_t i = slot(key);; i = (i + 1) & mask_) {
      if (slots_[i] == key) return true;
      if (slots_[i] == 0) return false;
    }
  }

  bool insert(std::uint64_t key) {
    if ((count_ + 1) * 2 > slots_.size()) grow();
    for (std::size_t i = slot(key);; i = (i + 1) & mask_) {
      if (slots_[i] == key) return false;
      if (slots_[i] == 0) {
        slots_[i] = key;
        ++count_;
        return true;
      }
    }
  }

  std::size_t size() const { return count_; }
  void clear() {
    slots_.clear();
    mask_ = 0;
    count_ = 0;
  }

 private:
  std::size_t slot(std::uint64_t key) const {
    return static_cast<std::size_t>(splitmix64(key)) & mask_;
  }

  void grow() {
    std::vector<std::uint64_t> old = std::move(slots_);
    slots_.assign(old.empty() ? 64 : old.size() * 2, 0);
    mask_ = slots_.size() - 1;
    count_ = 0;
    for (auto k : old)
      if (k != 0) insert(k);
  }

  std::vector<std::uint64_t> slots_;
  std::size_t mask_ = 0;
  std::size_t count_ = 0;
};

}  // namespace detail

}  // namespace builder
