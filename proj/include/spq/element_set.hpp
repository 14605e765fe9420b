#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace spq {

using Element = std::uint32_t;

/// Fixed-universe bitset over the element indices of a finite group.
class ElementSet {
 public:
  ElementSet() = default;
  explicit ElementSet(std::size_t universe) : universe_(universe), words_((universe + 63) / 64, 0) {}

  static ElementSet full(std::size_t universe) {
    ElementSet s(universe);
    for (std::size_t i = 0; i < universe; ++i) s.insert(static_cast<Element>(i));
    return s;
  }

  std::size_t universe() const { return universe_; }

  bool contains(Element e) const { return (words_[e >> 6] >> (e & 63)) & 1u; }
  void insert(Element e) { words_[e >> 6] |= std::uint64_t{1} << (e & 63); }
  void erase(Element e) { words_[e >> 6] &= ~(std::uint64_t{1} << (e & 63)); }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  bool empty() const {
    for (auto w : words_)
      if (w) return false;
    return true;
  }

  bool is_subset_of(const ElementSet& other) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~other.words_[i]) return false;
    return true;
  }

  ElementSet& operator&=(const ElementSet& other) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
    return *this;
  }

  ElementSet& operator|=(const ElementSet& other) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
    return *this;
  }

  /// Members in increasing index order.
  std::vector<Element> elements() const {
    std::vector<Element> out;
    out.reserve(count());
    for (std::size_t w = 0; w < words_.size(); ++w) {
      auto bits = words_[w];
      while (bits) {
        int b = std::countr_zero(bits);
        out.push_back(static_cast<Element>(w * 64 + static_cast<std::size_t>(b)));
        bits &= bits - 1;
      }
    }
    return out;
  }

  friend bool operator==(const ElementSet&, const ElementSet&) = default;

  /// Lexicographic order on the sorted member lists (for equal sizes this
  /// is: the set owning the lowest differing element comes first).
  friend bool lex_less(const ElementSet& a, const ElementSet& b) {
    for (std::size_t w = 0; w < a.words_.size(); ++w) {
      auto diff = a.words_[w] ^ b.words_[w];
      if (diff) {
        auto low = diff & (~diff + 1);
        return (a.words_[w] & low) != 0;
      }
    }
    return false;
  }

  std::size_t hash() const {
    std::size_t h = 0xcbf29ce484222325ull;
    for (auto w : words_) {
      h ^= std::hash<std::uint64_t>{}(w) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }

 private:
  std::size_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Canonical subgroup key: order first, then lexicographic member list.
inline bool canonical_less(const ElementSet& a, const ElementSet& b) {
  auto ca = a.count(), cb = b.count();
  if (ca != cb) return ca < cb;
  return lex_less(a, b);
}

struct ElementSetHash {
  std::size_t operator()(const ElementSet& s) const { return s.hash(); }
};

}  // namespace spq
