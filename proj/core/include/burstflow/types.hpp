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

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace burstflow {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Index of a fixed-width time window ("document") in the replayed stream.
struct DocumentId {
  std::uint64_t value = 0;

  constexpr DocumentId() = default;
  constexpr explicit DocumentId(std::uint64_t v) : value(v) {}

  constexpr DocumentId next() const { return DocumentId{value + 1}; }
  constexpr auto operator<=>(const DocumentId&) const = default;
};

inline std::ostream& operator<<(std::ostream& os, DocumentId d) {
  return os << "doc#" << d.value;
}

using ClusterId = std::uint64_t;
using TaskIndex = std::uint32_t;

/**
 * Sparse term -> weight map stored as a vector sorted by term.
 *
 * All weights are strictly positive. The Euclidean norm is cached and kept
 * current by every mutating member.
 */
class TermWeights {
 public:
  using Entry = std::pair<std::string, double>;

  TermWeights() = default;
  /// Entries may arrive in any order; duplicate terms are summed and
  /// non-positive weights dropped.
  explicit TermWeights(std::vector<Entry> entries);

  /// Trusts that `entries` is sorted by term, unique and strictly positive.
  static TermWeights from_sorted(std::vector<Entry> entries);

  std::span<const Entry> entries() const { return entries_; }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  /// 0 when the term is absent.
  double weight(std::string_view term) const;
  bool contains(std::string_view term) const { return weight(term) > 0.0; }

  double sum() const;
  double norm() const { return norm_; }

  /// Scales the weights so that they sum to 1. No-op on an empty map.
  void normalize();

  /// Removes entries for which `drop(term, weight)` is true.
  void erase_if(const std::function<bool(const std::string&, double)>& drop);

  /// Up to `k` entries ordered by descending weight, ties by term.
  std::vector<Entry> top(std::size_t k) const;

  bool operator==(const TermWeights& other) const { return entries_ == other.entries_; }

 private:
  void refresh_norm();

  std::vector<Entry> entries_;
  double norm_ = 0.0;
};

/// Normalized bag-of-words representation of one tweet.
struct TweetVector {
  std::string id;
  DocumentId doc;
  TermWeights weights;
};

/// A group of similar tweets, either task-local within a document or global.
struct Cluster {
  ClusterId id = 0;
  TermWeights weights;
  std::uint64_t total_tweets = 0;
  std::uint64_t tweets_added_this_block = 0;
  DocumentId last_active_doc;
  DocumentId created_doc;

  bool operator==(const Cluster&) const = default;
};

struct HistoryPoint {
  DocumentId doc;
  double tfidf = 0.0;

  bool operator==(const HistoryPoint&) const = default;
};

/// A bursting word detected by the keybased method.
struct WordEvent {
  std::string term;
  DocumentId doc;
  double increment_rate = 0.0;  // may be +infinity
  std::vector<HistoryPoint> history;

  bool operator==(const WordEvent&) const = default;
};

/// A fast-growing global cluster detected by the clustering method.
struct ClusterEvent {
  ClusterId cluster_id = 0;
  DocumentId doc;
  double growth_rate = 0.0;
  std::vector<TermWeights::Entry> top_terms;

  bool operator==(const ClusterEvent&) const = default;
};

/// Per-term counts a word-count task forwards to the event detector.
struct CandidateStats {
  std::uint64_t count = 0;                   // occurrences in the document so far
  std::uint64_t doc_frequency = 0;           // documents containing the term, this one included
  std::uint64_t previous_count = 0;          // occurrences in the preceding document
  std::uint64_t previous_doc_frequency = 0;  // doc_frequency as of the preceding document
  std::uint64_t partition_tokens = 0;        // tokens the sending task has seen in the document

  bool operator==(const CandidateStats&) const = default;
};

}  // namespace burstflow

template <>
struct std::hash<burstflow::DocumentId> {
  std::size_t operator()(burstflow::DocumentId d) const noexcept {
    return std::hash<std::uint64_t>{}(d.value);
  }
};
