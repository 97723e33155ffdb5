/*
 * Copyright 2026 The Burstflow Authors. All Rights Reserved.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "burstflow/runtime/grouping.hpp"

namespace burstflow::runtime {

const char* to_string(GroupingKind kind) {
  switch (kind) {
    case GroupingKind::Shuffle: return "shuffle";
    case GroupingKind::Fields: return "fields";
    case GroupingKind::All: return "all";
    case GroupingKind::Global: return "global";
    case GroupingKind::Direct: return "direct";
  }
  return "?";
}

std::uint64_t stable_hash(std::string_view key, std::uint64_t seed) {
  std::uint64_t h = 0xcbf29ce484222325ULL ^ seed;
  for (unsigned char c : key) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  h ^= h >> 33;
  h *= 0xff51afd7ed558ccdULL;
  h ^= h >> 33;
  h *= 0xc4ceb9fe1a85ec53ULL;
  h ^= h >> 33;
  return h;
}

std::string_view term_key(const Tuple& t) {
  if (const auto* w = std::get_if<Word>(&t.payload)) return w->term;
  if (const auto* c = std::get_if<Candidate>(&t.payload)) return c->term;
  return {};
}

Router::Router(Grouping grouping, std::size_t task_count, std::uint64_t rng_seed,
               std::uint64_t hash_seed)
    : grouping_(std::move(grouping)),
      task_count_(task_count == 0 ? 1 : task_count),
      hash_seed_(hash_seed),
      rng_(rng_seed),
      pick_(0, task_count_ - 1) {}

void Router::route(const Tuple& t, std::vector<TaskIndex>& out) {
  out.clear();
  switch (grouping_.kind()) {
    case GroupingKind::Shuffle:
      out.push_back(static_cast<TaskIndex>(pick_(rng_)));
      break;
    case GroupingKind::Fields: {
      const std::string_view key = grouping_.key() ? grouping_.key()(t) : std::string_view{};
      out.push_back(static_cast<TaskIndex>(stable_hash(key, hash_seed_) % task_count_));
      break;
    }
    case GroupingKind::All:
      for (std::size_t i = 0; i < task_count_; ++i) out.push_back(static_cast<TaskIndex>(i));
      break;
    case GroupingKind::Global:
      out.push_back(0);
      break;
    case GroupingKind::Direct:
      out.push_back(static_cast<TaskIndex>(next_));
      next_ = (next_ + 1) % task_count_;
      break;
  }
}

std::vector<TaskIndex> Router::route(const Tuple& t) {
  std::vector<TaskIndex> out;
  route(t, out);
  return out;
}

}  // namespace burstflow::runtime
