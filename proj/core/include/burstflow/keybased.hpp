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
#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "burstflow/ingest.hpp"
#include "burstflow/preprocess.hpp"
#include "burstflow/runtime/topology.hpp"
#include "burstflow/store.hpp"
#include "burstflow/types.hpp"

// Burst detection over per-document word counts ("uncommonly common" words).
namespace burstflow::keybased {

class ParamError : public Error {
 public:
  using Error::Error;
};

/// tf of a document with no tokens.
class UndefinedDocument : public Error {
 public:
  using Error::Error;
};

struct KeyParams {
  std::uint64_t common_word_threshold = 10;
  double tfidf_event_rate = 2.0;
  double absolute_floor = 1e-4;  // minimum current tf-idf of an event

  /// Throws ParamError unless threshold >= 1 and event rate > 1.
  void validate() const;
};

inline constexpr std::size_t kHistoryCapacity = 10;

double tf(std::uint64_t term_count, std::uint64_t doc_total_terms);

/// ln(N / (1 + df)). Negative once the term is in nearly every document.
double idf(std::uint64_t docs_processed, std::uint64_t doc_frequency);

inline double tfidf(std::uint64_t count, std::uint64_t total, std::uint64_t docs_processed,
                    std::uint64_t doc_frequency) {
  return tf(count, total) * idf(docs_processed, doc_frequency);
}

/// current / previous; +inf for a word with no positive previous score, 0
/// when the current score is not positive.
double increment_rate(double current, double previous);

bool is_event(double rate, double current, const KeyParams& params);

/// Bounded tf-idf history with strictly increasing documents.
class TfidfHistory {
 public:
  explicit TfidfHistory(std::size_t capacity = kHistoryCapacity) : capacity_(capacity) {}

  /// Appends, overwrites the point of the same document, or inserts an older
  /// point in order. The oldest point is dropped beyond capacity.
  void record(DocumentId doc, double value);

  std::vector<HistoryPoint> points() const { return {points_.begin(), points_.end()}; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  std::optional<DocumentId> last_doc() const;

 private:
  std::size_t capacity_;
  std::deque<HistoryPoint> points_;
};

/**
 * Per-partition word counter run by each counting task.
 *
 * add() returns the term's statistics exactly once per document, at the
 * occurrence that brings its count up to the common-word threshold.
 */
class WordCounter {
 public:
  explicit WordCounter(std::uint64_t threshold) : threshold_(threshold) {}

  std::optional<CandidateStats> add(const std::string& term, DocumentId doc);

  /// Statistics of every term of `doc` at or above the threshold, by term.
  std::vector<std::pair<std::string, CandidateStats>> common_terms(DocumentId doc) const;

  /// Tokens counted for `doc` (0 for any other document).
  std::uint64_t tokens(DocumentId doc) const { return doc == doc_ ? tokens_ : 0; }

  std::size_t vocabulary() const { return entries_.size(); }

 private:
  struct Entry {
    std::uint64_t count = 0;
    std::optional<DocumentId> doc;
    std::uint64_t df = 0;
    std::uint64_t prev_count = 0;
    std::uint64_t prev_df = 0;
  };

  CandidateStats stats_of(const Entry& e) const;

  std::uint64_t threshold_;
  std::unordered_map<std::string, Entry> entries_;
  DocumentId doc_;
  std::uint64_t tokens_ = 0;
  std::vector<std::string> common_;  // terms of doc_ that reached the threshold
};

/// Per-term state held by the detector.
struct TermStats {
  std::uint64_t count_current = 0;
  std::uint64_t doc_frequency = 0;
  TfidfHistory history;
};

/// Scores of one candidate in one document.
struct Evaluation {
  double current = 0.0;
  double previous = 0.0;
  double rate = 0.0;
  bool event = false;
};

/**
 * Scores a candidate. `total` and `previous_total` are the token counts of
 * `doc` and of the document before it; the document count N is doc + 1.
 */
Evaluation evaluate(const CandidateStats& stats, DocumentId doc, std::uint64_t total,
                    std::uint64_t previous_total, const KeyParams& params);

/**
 * Single-task event detector.
 *
 * In direct mode candidates are scored when the document ends, using the
 * exact document total. In sleep mode every threshold crossing is scored on
 * arrival against the partial totals seen so far, as the counting tasks
 * report them; this mode does not wait for the document and can misjudge.
 */
class EventDetector {
 public:
  enum class Mode { AtDocumentEnd, OnArrival };

  EventDetector(KeyParams params, Mode mode);

  void on_candidate(const std::string& term, DocumentId doc, const CandidateStats& stats,
                    TaskIndex task, bool final_counts);
  void on_partition_total(DocumentId doc, TaskIndex task, std::uint64_t tokens);

  /// Closes `doc` and returns the events to commit for it, by term. In
  /// OnArrival mode these are the events found since the previous call.
  std::vector<WordEvent> finish_document(DocumentId doc);

  const TermStats* stats(const std::string& term) const;
  std::uint64_t document_total(DocumentId doc) const;

 private:
  void score(const std::string& term, DocumentId doc, const CandidateStats& stats,
             std::uint64_t total, std::uint64_t previous_total);
  std::uint64_t partial_total(DocumentId doc) const;

  KeyParams params_;
  Mode mode_;
  std::unordered_map<std::string, TermStats> terms_;
  std::map<DocumentId, std::map<TaskIndex, std::uint64_t>> partials_;  // running token counts
  std::map<DocumentId, std::uint64_t> totals_;                         // closed documents
  std::map<DocumentId, std::map<std::string, CandidateStats>> finals_;
  std::map<std::pair<DocumentId, std::string>, bool> scored_;  // OnArrival dedup
  std::vector<WordEvent> pending_;
};

/// Shared by the detector task and the caller of run_keybased.
struct KeybasedSink {
  std::vector<WordEvent> events;
  std::uint64_t documents = 0;
};

struct KeybasedConfig {
  KeyParams params;
  runtime::RunOptions run;
  std::size_t count_tasks = 4;
  ingest::WindowConfig window;
  text::Preprocessor preprocessor;
  /// Defaults to a fresh MemoryStore.
  std::shared_ptr<store::Store> store;
};

struct KeybasedResult {
  std::vector<WordEvent> events;  // in commit order
  runtime::RunReport report;
  std::uint64_t tweets = 0;
  std::uint64_t tokens = 0;
  std::int64_t stream_start = 0;
  std::shared_ptr<store::Store> store;
};

inline constexpr const char* kSpoutName = "replay";
inline constexpr const char* kCountBolt = "count";
inline constexpr const char* kDetectorBolt = "detector";

/// replay --fields(term)--> count x N --global--> detector x 1
runtime::Topology build_topology(std::unique_ptr<runtime::Spout> spout, const KeybasedConfig& config,
                                 std::shared_ptr<store::Store> store,
                                 std::shared_ptr<KeybasedSink> sink);

KeybasedResult run_keybased(std::vector<ingest::RawTweet> corpus, KeybasedConfig config);

}  // namespace burstflow::keybased
