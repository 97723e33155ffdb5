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
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "burstflow/types.hpp"

namespace burstflow::ingest {

/// One corpus record.
struct RawTweet {
  std::string id;
  std::int64_t timestamp = 0;  // epoch seconds, UTC
  std::string text;
  std::optional<std::string> country;

  bool operator==(const RawTweet&) const = default;
};

/// Malformed corpus input. Carries the 1-based line number of the record.
class CorpusError : public Error {
 public:
  CorpusError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// A required field is missing or has the wrong type.
class FieldError : public CorpusError {
 public:
  FieldError(std::size_t line, std::string field, const std::string& what);
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

/// A timestamp precedes the configured stream start.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// The replayed corpus is not sorted by timestamp.
class OrderingError : public Error {
 public:
  OrderingError(std::size_t index, const std::string& what);
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

inline constexpr std::int64_t kDefaultWindowSeconds = 360;

/// Parses one line of the line-delimited JSON corpus format:
/// `{"id": "...", "ts": <epoch seconds>, "text": "...", "country": "XX"}`.
/// `country` is optional; `text` is whitespace-trimmed.
RawTweet parse_corpus_line(std::string_view line, std::size_t line_number = 1);

/// floor((timestamp - stream_start) / window_seconds).
DocumentId assign_document(std::int64_t timestamp, std::int64_t stream_start,
                           std::int64_t window_seconds = kDefaultWindowSeconds);

inline DocumentId assign_document(const RawTweet& t, std::int64_t stream_start,
                                  std::int64_t window_seconds = kDefaultWindowSeconds) {
  return assign_document(t.timestamp, stream_start, window_seconds);
}

/// First timestamp truncated down to a whole window.
std::int64_t align_stream_start(std::int64_t first_timestamp, std::int64_t window_seconds);

struct CorpusFilter {
  std::optional<std::string> country;
};

/// Reads every record of a corpus stream. Blank lines are skipped; duplicate
/// ids are rejected.
std::vector<RawTweet> read_corpus(std::istream& in, const CorpusFilter& filter = {});
std::vector<RawTweet> load_corpus(const std::filesystem::path& path,
                                  const CorpusFilter& filter = {});

/// Hex SHA-256 of the raw corpus bytes.
std::string corpus_fingerprint(std::string_view content);
std::string corpus_fingerprint_file(const std::filesystem::path& path);

struct WindowConfig {
  std::int64_t window_seconds = kDefaultWindowSeconds;
  std::optional<std::int64_t> stream_start;  // defaults to the aligned first timestamp
};

struct ReplayedTweet {
  RawTweet tweet;
  DocumentId doc;
};

struct EndOfDocument {
  DocumentId doc;
};

using ReplayItem = std::variant<ReplayedTweet, EndOfDocument>;

/**
 * Replays a corpus in timestamp order, cutting it into documents.
 *
 * An EndOfDocument marker follows the last tweet of every document,
 * including documents that received no tweets at all, so the number of
 * markers is always 1 + the highest document id. Throws OrderingError as
 * soon as a timestamp goes backwards.
 */
class Replayer {
 public:
  Replayer(std::vector<RawTweet> corpus, WindowConfig config = {});

  std::optional<ReplayItem> next();

  std::int64_t stream_start() const { return stream_start_; }
  std::int64_t window_seconds() const { return config_.window_seconds; }
  std::size_t tweets_replayed() const { return index_; }

 private:
  std::vector<RawTweet> corpus_;
  WindowConfig config_;
  std::int64_t stream_start_ = 0;
  std::size_t index_ = 0;
  std::int64_t last_timestamp_ = 0;
  std::optional<DocumentId> open_doc_;
  bool finished_ = false;
};

/// Drains a Replayer into a vector. Mostly useful in tests.
std::vector<ReplayItem> replay_all(std::vector<RawTweet> corpus, WindowConfig config = {});

}  // namespace burstflow::ingest
