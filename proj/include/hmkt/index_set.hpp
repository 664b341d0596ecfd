// Copyright 2026 The hmkt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HMKT_INDEX_SET_HPP
#define HMKT_INDEX_SET_HPP

#include <bit>
#include <compare>
#include <cstdint>
#include <iterator>
#include <vector>

namespace hmkt {

// Maximum number of agents (and objects) a market may have. Sets are stored
// as 32-bit masks.
inline constexpr int kMaxIndices = 32;

// A set of dense indices in [0, kMaxIndices), stored as a bit mask. The tag
// keeps agent sets and object sets from being mixed up.
template <class Tag>
class IndexSet {
 public:
  class Iterator {
   public:
    using iterator_category = std::forward_iterator_tag;
    using value_type = int;
    using difference_type = std::ptrdiff_t;
    using pointer = const int*;
    using reference = int;

    constexpr Iterator() = default;
    constexpr explicit Iterator(std::uint32_t rest) : rest_(rest) {}
    constexpr int operator*() const { return std::countr_zero(rest_); }
    constexpr Iterator& operator++() {
      rest_ &= rest_ - 1;
      return *this;
    }
    constexpr Iterator operator++(int) {
      Iterator copy = *this;
      ++*this;
      return copy;
    }
    constexpr bool operator==(const Iterator&) const = default;

   private:
    std::uint32_t rest_ = 0;
  };

  constexpr IndexSet() = default;

  static constexpr IndexSet from_bits(std::uint32_t bits) {
    IndexSet s;
    s.bits_ = bits;
    return s;
  }
  static constexpr IndexSet singleton(int i) { return from_bits(1u << i); }
  // {0, ..., n-1}.
  static constexpr IndexSet first_n(int n) {
    return from_bits(n >= kMaxIndices ? ~0u : ((1u << n) - 1u));
  }
  template <class Range>
  static IndexSet of(const Range& indices) {
    IndexSet s;
    for (int i : indices) s.insert(i);
    return s;
  }

  constexpr std::uint32_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool contains(int i) const { return (bits_ >> i) & 1u; }
  // Smallest member; undefined on the empty set.
  constexpr int first() const { return std::countr_zero(bits_); }

  constexpr void insert(int i) { bits_ |= 1u << i; }
  constexpr void erase(int i) { bits_ &= ~(1u << i); }

  constexpr bool subset_of(IndexSet other) const {
    return (bits_ & ~other.bits_) == 0;
  }
  constexpr bool intersects(IndexSet other) const {
    return (bits_ & other.bits_) != 0;
  }

  constexpr IndexSet operator|(IndexSet o) const { return from_bits(bits_ | o.bits_); }
  constexpr IndexSet operator&(IndexSet o) const { return from_bits(bits_ & o.bits_); }
  // Set difference.
  constexpr IndexSet operator-(IndexSet o) const { return from_bits(bits_ & ~o.bits_); }
  constexpr IndexSet& operator|=(IndexSet o) { bits_ |= o.bits_; return *this; }
  constexpr IndexSet& operator&=(IndexSet o) { bits_ &= o.bits_; return *this; }
  constexpr IndexSet& operator-=(IndexSet o) { bits_ &= ~o.bits_; return *this; }

  constexpr bool operator==(const IndexSet&) const = default;

  constexpr Iterator begin() const { return Iterator(bits_); }
  constexpr Iterator end() const { return Iterator(0); }

  std::vector<int> to_vector() const { return std::vector<int>(begin(), end()); }

 private:
  std::uint32_t bits_ = 0;
};

// Lexicographic order on sorted member lists. Used for deterministic output.
template <class Tag>
bool lex_less(IndexSet<Tag> a, IndexSet<Tag> b) {
  auto ia = a.begin(), ib = b.begin();
  for (; ia != a.end() && ib != b.end(); ++ia, ++ib) {
    if (*ia != *ib) return *ia < *ib;
  }
  return ia == a.end() && ib != b.end();
}

struct AgentTag {};
struct ObjectTag {};

using AgentSet = IndexSet<AgentTag>;
using ObjectSet = IndexSet<ObjectTag>;
// A blocking coalition. Coalitions are non-empty wherever the library
// produces them; AgentSet is used for sets that may be empty.
using Coalition = AgentSet;

}  // namespace hmkt

#endif  // HMKT_INDEX_SET_HPP
