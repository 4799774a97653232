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

#include "subsel/fit_cache.hpp"

#include <mutex>

namespace subsel {

std::optional<FitEntry> FitCache::find(Subset s) const {
  std::shared_lock lock(mutex_);
  auto it = entries_.find(s.bits());
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

FitEntry FitCache::insert(Subset s, FitEntry entry) {
  std::unique_lock lock(mutex_);
  auto [it, inserted] = entries_.try_emplace(s.bits(), entry);
  return it->second;
}

size_t FitCache::size() const {
  std::shared_lock lock(mutex_);
  return entries_.size();
}

void FitCache::clear() {
  std::unique_lock lock(mutex_);
  entries_.clear();
}

}  // namespace subsel
