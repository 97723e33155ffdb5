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
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "burstflow/clustering.hpp"
#include "burstflow/ingest.hpp"
#include "burstflow/keybased.hpp"
#include "burstflow/runtime/topology.hpp"
#include "burstflow/types.hpp"

// Experiment bookkeeping: run reports, overlap statistics, chart data and
// synthetic corpora with planted events.
namespace burstflow::eval {

enum class Method { KeybasedSleep, KeybasedDirect, Clustering };

const char* to_string(Method m);
Method method_from_string(const std::string& s);

struct RunReport {
  Method method = Method::KeybasedDirect;
  double wall_time = 0.0;  // seconds
  std::uint64_t documents = 0;
  std::uint64_t event_count = 0;
  std::uint64_t store_commits = 0;
  std::string corpus;  // fingerprint
  std::uint64_t tweets = 0;
  std::uint64_t skipped = 0;
  std::uint64_t tuples = 0;
  std::uint64_t interleavings = 0;
  std::vector<runtime::DocumentStats> per_document;

  bool operator==(const RunReport&) const = default;
};

RunReport make_report(Method method, const keybased::KeybasedResult& r, std::string corpus);
RunReport make_report(const clustering::ClusteringResult& r, std::string corpus);

std::string to_json(const RunReport& report);
RunReport run_report_from_json(const std::string& text);
void write_report(const std::filesystem::path& path, const RunReport& report);
RunReport read_report(const std::filesystem::path& path);

/// Two event files come from different corpora.
class FingerprintMismatch : public Error {
 public:
  using Error::Error;
};

struct OverlapReport {
  std::uint64_t clusters_containing_keywords = 0;
  std::uint64_t total_clusters = 0;
  std::uint64_t keywords_in_clusters = 0;
  std::uint64_t total_keywords = 0;
  double cluster_rate = 0.0;  // clusters_containing_keywords / total_clusters
  double keyword_rate = 0.0;  // keywords_in_clusters / total_keywords
};

/**
 * A cluster event includes a keyword when the keyword is one of its top
 * terms. Every cluster event counts once; keywords are the distinct terms of
 * the word events. Empty sides give a rate of 0.
 */
OverlapReport compare(std::span<const WordEvent> words, std::span<const ClusterEvent> clusters);

std::string to_json(const OverlapReport& report);

/// Writes one event per line, each tagged with the corpus fingerprint.
void write_word_events(const std::filesystem::path& path, std::span<const WordEvent> events,
                       const std::string& corpus);
void write_cluster_events(const std::filesystem::path& path,
                          std::span<const ClusterEvent> events, const std::string& corpus);

/// Reads an event file. When `corpus` is non-empty every line must carry
/// that fingerprint, else FingerprintMismatch is thrown.
std::vector<WordEvent> read_word_events(const std::filesystem::path& path,
                                        const std::string& corpus = {});
std::vector<ClusterEvent> read_cluster_events(const std::filesystem::path& path,
                                              const std::string& corpus = {});

/// "docId,tfidf" header followed by one row per history point.
std::string chart_csv(const WordEvent& e);
/// Writes `<dir>/<term>-<doc>.csv` for every event; returns the paths.
std::vector<std::filesystem::path> export_charts(const std::filesystem::path& dir,
                                                 std::span<const WordEvent> events);

struct BackgroundSpec {
  std::uint64_t tweets_per_document = 0;
  std::uint64_t vocabulary = 2000;
  std::uint64_t min_words = 4;
  std::uint64_t max_words = 10;
  double zipf = 0.0;  // 0 draws words uniformly
};

/// Words present exactly `occurrences_per_document` times in every document.
struct ConstantWordsSpec {
  std::uint64_t count = 0;
  std::uint64_t occurrences_per_document = 0;
};

/// `occurrences` tweets mentioning `term` in one document.
struct BurstSpec {
  std::string term;
  std::uint64_t document = 0;
  std::uint64_t occurrences = 0;
};

/// Near-duplicate tweets: every topic term plus `noise_words` background words.
struct TopicSpec {
  std::vector<std::string> terms;
  std::map<std::uint64_t, std::uint64_t> schedule;  // document -> tweets
  std::uint64_t noise_words = 1;
};

struct SyntheticSpec {
  std::uint64_t documents = 10;
  std::int64_t window_seconds = ingest::kDefaultWindowSeconds;
  std::int64_t start = 1464652800;
  BackgroundSpec background;
  ConstantWordsSpec constant_words;
  std::vector<BurstSpec> bursts;
  std::vector<TopicSpec> topics;
};

SyntheticSpec parse_synthetic_spec(const std::string& json_text);
SyntheticSpec load_synthetic_spec(const std::filesystem::path& path);

/// A planted event: `token` is `term` after preprocessing.
struct TruthEntry {
  std::string term;
  std::string token;
  std::uint64_t doc = 0;
  std::string kind;  // "burst" or "topic"

  bool operator==(const TruthEntry&) const = default;
};

struct SyntheticCorpus {
  std::vector<ingest::RawTweet> tweets;  // sorted by timestamp
  std::vector<TruthEntry> truth;
  std::vector<std::string> constant_words;
};

/**
 * Generates a corpus from a spec. The output depends only on the spec and
 * the seed. Generated words are pseudo-words (consonant-vowel syllables
 * ending in 'k') that preprocessing leaves unchanged.
 */
SyntheticCorpus generate_synthetic(const SyntheticSpec& spec, std::uint64_t seed);

/// The i-th generated pseudo-word; distinct indices give distinct words.
std::string pseudo_word(std::uint64_t index);

std::string corpus_to_jsonl(std::span<const ingest::RawTweet> tweets);
std::string truth_to_jsonl(std::span<const TruthEntry> truth);
void write_text(const std::filesystem::path& path, const std::string& content);

}  // namespace burstflow::eval
