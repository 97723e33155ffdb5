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

#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string_view>
#include <vector>

#include "burstflow/runtime/tuple.hpp"

namespace burstflow::runtime {

enum class GroupingKind { Shuffle, Fields, All, Global, Direct };

const char* to_string(GroupingKind kind);

using KeyExtractor = std::function<std::string_view(const Tuple&)>;

/// How tuples on one edge are spread over the consumer's tasks.
class Grouping {
 public:
  static Grouping shuffle() { return Grouping(GroupingKind::Shuffle); }
  static Grouping fields(KeyExtractor key) { return Grouping(GroupingKind::Fields, std::move(key)); }
  static Grouping all() { return Grouping(GroupingKind::All); }
  static Grouping global() { return Grouping(GroupingKind::Global); }
  static Grouping direct() { return Grouping(GroupingKind::Direct); }

  GroupingKind kind() const { return kind_; }
  const KeyExtractor& key() const { return key_; }

 private:
  explicit Grouping(GroupingKind kind, KeyExtractor key = {}) : kind_(kind), key_(std::move(key)) {}

  GroupingKind kind_;
  KeyExtractor key_;
};

/// Seeded 64-bit FNV-1a with a murmur-style finalizer. Stable across runs
/// and platforms.
std::uint64_t stable_hash(std::string_view key, std::uint64_t seed = 0);

/// Key extractor for Word and Candidate tuples.
std::string_view term_key(const Tuple& t);

/**
 * Routing state for one producer task on one edge.
 *
 * Shuffle draws from a seeded RNG, Fields hashes the key with `hash_seed`,
 * All returns every index, Global returns task 0 and Direct cycles through
 * the tasks in emission order.
 */
class Router {
 public:
  Router(Grouping grouping, std::size_t task_count, std::uint64_t rng_seed = 0,
         std::uint64_t hash_seed = 0);

  void route(const Tuple& t, std::vector<TaskIndex>& out);
  std::vector<TaskIndex> route(const Tuple& t);

  std::size_t task_count() const { return task_count_; }
  const Grouping& grouping() const { return grouping_; }

 private:
  Grouping grouping_;
  std::size_t task_count_;
  std::uint64_t hash_seed_;
  std::mt19937_64 rng_;
  std::uniform_int_distribution<std::size_t> pick_;
  std::size_t next_ = 0;
};

}  // namespace burstflow::runtime
