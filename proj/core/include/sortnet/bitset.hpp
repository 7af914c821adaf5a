#pragma once

#include <cstdint>
#include <cstddef>
#include <vector>

namespace sortnet {

// Fixed-size dynamic bitset used for adjacency rows and vertex sets.
// Vertex counts stay desk-scale, so a plain word vector is enough.
class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(int n) : size_(n), words_((n + 63) / 64, 0) {}

  int size() const { return size_; }

  bool test(int i) const { return (words_[i >> 6] >> (i & 63)) & 1; }
  void set(int i) { words_[i >> 6] |= uint64_t{1} << (i & 63); }
  void reset(int i) { words_[i >> 6] &= ~(uint64_t{1} << (i & 63)); }
  void clear() { words_.assign(words_.size(), 0); }

  bool any() const {
    for (uint64_t w : words_)
      if (w) return true;
    return false;
  }
  bool none() const { return !any(); }

  int count() const {
    int c = 0;
    for (uint64_t w : words_) c += __builtin_popcountll(w);
    return c;
  }

  Bitset& operator|=(const Bitset& o) {
    for (size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  Bitset& operator&=(const Bitset& o) {
    for (size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }

  bool operator==(const Bitset& o) const = default;

  // Smallest set index >= from, or -1.
  int next_set(int from) const {
    if (from >= size_) return -1;
    int wi = from >> 6;
    uint64_t w = words_[wi] & (~uint64_t{0} << (from & 63));
    while (true) {
      if (w) return wi * 64 + __builtin_ctzll(w);
      if (++wi >= static_cast<int>(words_.size())) return -1;
      w = words_[wi];
    }
  }

  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (int v = next_set(0); v >= 0; v = next_set(v + 1)) fn(v);
  }

  std::vector<int> to_vector() const {
    std::vector<int> out;
    for_each([&](int v) { out.push_back(v); });
    return out;
  }

 private:
  int size_ = 0;
  std::vector<uint64_t> words_;
};

}  // namespace sortnet
