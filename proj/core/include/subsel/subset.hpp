// Copyright 2026 The Authors.
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

#ifndef SUBSEL_SUBSET_HPP_
#define SUBSEL_SUBSET_HPP_

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "subsel/error.hpp"

namespace subsel {

/// Hard ceiling on features addressable by a 64-bit subset key.
inline constexpr int kMaxSubsetFeatures = 63;

/// Default refusal threshold for operations that enumerate 2^m subsets.
inline constexpr int kDefaultMaxEnum = 24;

/// A set of feature indices stored as a 64-bit mask. Bit i set means
/// feature i is a member. Ordering is by raw mask value, which is the
/// lexicographic enumeration order used for tie-breaking everywhere.
class Subset {
 public:
  constexpr Subset() = default;
  constexpr explicit Subset(std::uint64_t bits) : bits_(bits) {}
  Subset(std::initializer_list<int> members) {
    for (int i : members) bits_ |= bit(i);
  }

  static Subset of(std::span<const int> members) {
    Subset s;
    for (int i : members) s.bits_ |= bit(i);
    return s;
  }
  static constexpr Subset single(int i) { return Subset(bit(i)); }
  /// {0, ..., m-1}.
  static constexpr Subset full(int m) {
    return Subset(m >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << m) - 1);
  }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool contains(int i) const { return (bits_ & bit(i)) != 0; }
  constexpr bool is_subset_of(Subset other) const {
    return (bits_ & ~other.bits_) == 0;
  }
  constexpr bool intersects(Subset other) const {
    return (bits_ & other.bits_) != 0;
  }

  constexpr Subset with(int i) const { return Subset(bits_ | bit(i)); }
  constexpr Subset without(int i) const { return Subset(bits_ & ~bit(i)); }

  /// Members in ascending index order.
  std::vector<int> members() const {
    std::vector<int> out;
    out.reserve(static_cast<size_t>(size()));
    for (std::uint64_t b = bits_; b != 0; b &= b - 1) {
      out.push_back(std::countr_zero(b));
    }
    return out;
  }

  friend constexpr Subset operator|(Subset a, Subset b) {
    return Subset(a.bits_ | b.bits_);
  }
  friend constexpr Subset operator&(Subset a, Subset b) {
    return Subset(a.bits_ & b.bits_);
  }
  /// Set difference a \ b.
  friend constexpr Subset operator-(Subset a, Subset b) {
    return Subset(a.bits_ & ~b.bits_);
  }
  friend constexpr bool operator==(Subset, Subset) = default;
  friend constexpr auto operator<=>(Subset a, Subset b) {
    return a.bits_ <=> b.bits_;
  }

 private:
  static constexpr std::uint64_t bit(int i) { return std::uint64_t{1} << i; }

  std::uint64_t bits_ = 0;
};

/// Throws TooManyFeatures when an exhaustive pass over 2^m subsets is refused.
inline void require_enumerable(int m, int max_enum = kDefaultMaxEnum) {
  const int cap = max_enum < kMaxSubsetFeatures ? max_enum : kMaxSubsetFeatures;
  if (m > cap) {
    throw Error(ErrorKind::kTooManyFeatures,
                "m = " + std::to_string(m) + " exceeds enumeration cap " +
                    std::to_string(cap));
  }
}

}  // namespace subsel

#endif  // SUBSEL_SUBSET_HPP_
