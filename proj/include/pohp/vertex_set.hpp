#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include <boost/container/small_vector.hpp>

namespace pohp {

/// Fixed-capacity bitset over dense vertex indices 0..n-1.
///
/// Sets of the same capacity combine with the usual operators. Capacity is
/// fixed at construction; all sets used inside one solve share it.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}

  std::size_t capacity() const { return n_; }

  void set(int v) { words_[static_cast<std::size_t>(v) >> 6] |= bit(v); }
  void reset(int v) { words_[static_cast<std::size_t>(v) >> 6] &= ~bit(v); }
  bool test(int v) const {
    return (words_[static_cast<std::size_t>(v) >> 6] & bit(v)) != 0;
  }

  bool none() const {
    for (auto w : words_)
      if (w) return false;
    return true;
  }
  bool any() const { return !none(); }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  bool intersects(const VertexSet& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & o.words_[i]) return true;
    return false;
  }

  bool subset_of(const VertexSet& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~o.words_[i]) return false;
    return true;
  }

  /// a ⊆ (b ∪ c) without materializing the union.
  bool subset_of_union(const VertexSet& b, const VertexSet& c) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~(b.words_[i] | c.words_[i])) return false;
    return true;
  }

  /// (a ∩ b) ⊆ c.
  bool meet_subset_of(const VertexSet& b, const VertexSet& c) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & b.words_[i] & ~c.words_[i]) return false;
    return true;
  }

  VertexSet& operator|=(const VertexSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  VertexSet& operator&=(const VertexSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  VertexSet& operator-=(const VertexSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
  }

  friend VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }
  friend VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }
  friend VertexSet operator-(VertexSet a, const VertexSet& b) { return a -= b; }

  friend bool operator==(const VertexSet& a, const VertexSet& b) {
    return a.words_ == b.words_;
  }
  friend bool operator<(const VertexSet& a, const VertexSet& b) {
    return std::lexicographical_compare(a.words_.begin(), a.words_.end(), b.words_.begin(), b.words_.end());
  }

  std::size_t word_count() const { return words_.size(); }
  std::uint64_t word(std::size_t i) const { return words_[i]; }

  /// Lowest member, or -1 when empty.
  int first() const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i])
        return static_cast<int>(i * 64 + static_cast<std::size_t>(std::countr_zero(words_[i])));
    return -1;
  }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      std::uint64_t w = words_[i];
      while (w) {
        int b = std::countr_zero(w);
        f(static_cast<int>(i * 64 + static_cast<std::size_t>(b)));
        w &= w - 1;
      }
    }
  }

  std::vector<int> members() const {
    std::vector<int> out;
    for_each([&](int v) { out.push_back(v); });
    return out;
  }

  std::size_t hash() const {
    std::uint64_t h = 1469598103934665603ULL;
    for (auto w : words_) {
      h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
  }

 private:
  static std::uint64_t bit(int v) { return std::uint64_t{1} << (static_cast<unsigned>(v) & 63U); }

  std::size_t n_ = 0;
  boost::container::small_vector<std::uint64_t, 8> words_;  // inline up to 512 vertices
};

}  // namespace pohp

template <>
struct std::hash<pohp::VertexSet> {
  std::size_t operator()(const pohp::VertexSet& s) const { return s.hash(); }
};
