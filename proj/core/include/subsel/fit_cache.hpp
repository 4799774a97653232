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

#ifndef SUBSEL_FIT_CACHE_HPP_
#define SUBSEL_FIT_CACHE_HPP_

#include <cstdint>
#include <optional>
#include <shared_mutex>
#include <unordered_map>

#include "subsel/subset.hpp"

namespace subsel {

struct FitEntry {
  double r_squared = 0.0;
  int rank = 0;
};

// Memoized R^2 per subset for one design. Safe for concurrent use: readers
// share a lock and writers insert only if the key is absent, so a racing
// duplicate computation never overwrites a stored value.
class FitCache {
 public:
  FitCache() = default;
  FitCache(const FitCache&) = delete;
  FitCache& operator=(const FitCache&) = delete;

  std::optional<FitEntry> find(Subset s) const;
  /// Returns the stored entry, which is `entry` unless another writer won.
  FitEntry insert(Subset s, FitEntry entry);

  size_t size() const;
  void clear();

 private:
  mutable std::shared_mutex mutex_;
  std::unordered_map<std::uint64_t, FitEntry> entries_;
};

}  // namespace subsel

#endif  // SUBSEL_FIT_CACHE_HPP_
