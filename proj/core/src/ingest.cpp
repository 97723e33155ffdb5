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

#include "burstflow/ingest.hpp"

#include <openssl/evp.h>

#include <array>
#include <fstream>
#include <iomanip>
#include <istream>
#include <memory>
#include <sstream>
#include <unordered_set>

#include "json.hpp"

namespace burstflow::ingest {

using nlohmann::json;

CorpusError::CorpusError(std::size_t line, const std::string& what)
    : Error("corpus line " + std::to_string(line) + ": " + what), line_(line) {}

FieldError::FieldError(std::size_t line, std::string field, const std::string& what)
    : CorpusError(line, "field `" + field + "`: " + what), field_(std::move(field)) {}

OrderingError::OrderingError(std::size_t index, const std::string& what)
    : Error("replay record " + std::to_string(index) + ": " + what), index_(index) {}

namespace {

std::string_view trim(std::string_view s) {
  constexpr std::string_view kSpace = " \t\r\n\f\v";
  const auto b = s.find_first_not_of(kSpace);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(kSpace);
  return s.substr(b, e - b + 1);
}

const json& require(const json& rec, const char* field, std::size_t line) {
  auto it = rec.find(field);
  if (it == rec.end()) throw FieldError(line, field, "missing");
  return *it;
}

}  // namespace

RawTweet parse_corpus_line(std::string_view line, std::size_t line_number) {
  json rec;
  try {
    rec = json::parse(line);
  } catch (const json::parse_error& e) {
    throw CorpusError(line_number, std::string("malformed record: ") + e.what());
  }
  if (!rec.is_object()) throw CorpusError(line_number, "record is not an object");

  RawTweet t;
  const json& id = require(rec, "id", line_number);
  if (!id.is_string()) throw FieldError(line_number, "id", "expected string");
  t.id = id.get<std::string>();
  if (t.id.empty()) throw FieldError(line_number, "id", "must be non-empty");

  const json& ts = require(rec, "ts", line_number);
  if (!ts.is_number_integer()) throw FieldError(line_number, "ts", "expected integer");
  t.timestamp = ts.get<std::int64_t>();

  const json& text = require(rec, "text", line_number);
  if (!text.is_string()) throw FieldError(line_number, "text", "expected string");
  t.text = std::string(trim(text.get_ref<const std::string&>()));

  if (auto it = rec.find("country"); it != rec.end() && !it->is_null()) {
    if (!it->is_string()) throw FieldError(line_number, "country", "expected string");
    t.country = it->get<std::string>();
  }
  return t;
}

DocumentId assign_document(std::int64_t timestamp, std::int64_t stream_start,
                           std::int64_t window_seconds) {
  if (window_seconds <= 0) throw RangeError("window_seconds must be positive");
  if (timestamp < stream_start) {
    throw RangeError("timestamp " + std::to_string(timestamp) + " precedes stream start " +
                     std::to_string(stream_start));
  }
  return DocumentId{static_cast<std::uint64_t>((timestamp - stream_start) / window_seconds)};
}

std::int64_t align_stream_start(std::int64_t first_timestamp, std::int64_t window_seconds) {
  if (window_seconds <= 0) throw RangeError("window_seconds must be positive");
  std::int64_t q = first_timestamp / window_seconds;
  if (first_timestamp % window_seconds != 0 && first_timestamp < 0) --q;
  return q * window_seconds;
}

std::vector<RawTweet> read_corpus(std::istream& in, const CorpusFilter& filter) {
  std::vector<RawTweet> out;
  std::unordered_set<std::string> seen;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (trim(line).empty()) continue;
    RawTweet t = parse_corpus_line(line, line_number);
    if (!seen.insert(t.id).second) {
      throw FieldError(line_number, "id", "duplicate id " + t.id);
    }
    if (filter.country && t.country != filter.country) continue;
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<RawTweet> load_corpus(const std::filesystem::path& path, const CorpusFilter& filter) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open corpus " + path.string());
  return read_corpus(in, filter);
}

std::string corpus_fingerprint(std::string_view content) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (EVP_Digest(content.data(), content.size(), digest.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw Error("sha256 digest failed");
  }
  std::ostringstream hex;
  hex << std::hex << std::setfill('0');
  for (unsigned int i = 0; i < len; ++i) hex << std::setw(2) << static_cast<int>(digest[i]);
  return hex.str();
}

std::string corpus_fingerprint_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open corpus " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return corpus_fingerprint(buf.str());
}

Replayer::Replayer(std::vector<RawTweet> corpus, WindowConfig config)
    : corpus_(std::move(corpus)), config_(config) {
  if (config_.window_seconds <= 0) throw RangeError("window_seconds must be positive");
  if (config_.stream_start) {
    stream_start_ = *config_.stream_start;
  } else if (!corpus_.empty()) {
    stream_start_ = align_stream_start(corpus_.front().timestamp, config_.window_seconds);
  }
}

std::optional<ReplayItem> Replayer::next() {
  if (finished_) return std::nullopt;

  if (index_ < corpus_.size()) {
    RawTweet& t = corpus_[index_];
    if (index_ > 0 && t.timestamp < last_timestamp_) {
      throw OrderingError(index_, "timestamp " + std::to_string(t.timestamp) +
                                      " precedes previous " + std::to_string(last_timestamp_));
    }
    const DocumentId doc = assign_document(t, stream_start_, config_.window_seconds);
    if (!open_doc_) open_doc_ = DocumentId{0};
    if (*open_doc_ < doc) {
      EndOfDocument eod{*open_doc_};
      open_doc_ = open_doc_->next();
      return eod;
    }
    ++index_;
    last_timestamp_ = t.timestamp;
    return ReplayedTweet{std::move(t), doc};
  }

  finished_ = true;
  if (open_doc_) return EndOfDocument{*open_doc_};
  return std::nullopt;
}

std::vector<ReplayItem> replay_all(std::vector<RawTweet> corpus, WindowConfig config) {
  Replayer r(std::move(corpus), config);
  std::vector<ReplayItem> out;
  while (auto item = r.next()) out.push_back(std::move(*item));
  return out;
}

}  // namespace burstflow::ingest
