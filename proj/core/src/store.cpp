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

#include "burstflow/store.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include "json_codec.hpp"

namespace burstflow::store {

using codec::json;

namespace {

constexpr const char* kFormat = "burstflow-snapshot";
constexpr int kVersion = 1;

}  // namespace

CorruptSnapshot::CorruptSnapshot(std::size_t record, const std::string& what)
    : StoreError("snapshot record " + std::to_string(record) + ": " + what), record_(record) {}

void write_snapshot(std::ostream& out, const StoreSnapshot& s) {
  const std::size_t records = s.clusters.size() + s.word_histories.size() +
                              s.word_events.size() + s.cluster_events.size();
  json header{{"format", kFormat},
              {"version", kVersion},
              {"last_doc", s.last_doc ? json(s.last_doc->value) : json(nullptr)},
              {"next_cluster_id", s.next_cluster_id},
              {"records", records}};
  out << header.dump() << '\n';

  for (const auto& c : s.clusters) {
    json j = codec::cluster_to_json(c);
    j["kind"] = "cluster";
    out << j.dump() << '\n';
  }
  for (const auto& [term, history] : s.word_histories) {
    json j{{"kind", "history"}, {"term", term}, {"points", codec::history_to_json(history)}};
    out << j.dump() << '\n';
  }
  for (const auto& e : s.word_events) {
    json j = codec::word_event_to_json(e);
    j["kind"] = "word_event";
    out << j.dump() << '\n';
  }
  for (const auto& e : s.cluster_events) {
    json j = codec::cluster_event_to_json(e);
    j["kind"] = "cluster_event";
    out << j.dump() << '\n';
  }
  out << json{{"kind", "end"}, {"records", records}}.dump() << '\n';
}

StoreSnapshot read_snapshot(std::istream& in) {
  StoreSnapshot s;
  std::string line;
  std::size_t index = 0;
  std::size_t expected = 0;
  bool ended = false;
  std::unordered_set<ClusterId> ids;

  while (std::getline(in, line)) {
    if (ended) throw CorruptSnapshot(index, "data after end record");
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw CorruptSnapshot(index, e.what());
    }
    try {
      if (index == 0) {
        if (j.value("format", "") != kFormat) throw CorruptSnapshot(0, "not a snapshot header");
        const int version = j.at("version").get<int>();
        if (version != kVersion) {
          throw CorruptSnapshot(0, "unsupported version " + std::to_string(version));
        }
        if (!j.at("last_doc").is_null()) s.last_doc = DocumentId{j["last_doc"].get<std::uint64_t>()};
        s.next_cluster_id = j.at("next_cluster_id").get<ClusterId>();
        expected = j.at("records").get<std::size_t>();
      } else {
        const auto kind = j.at("kind").get<std::string>();
        if (kind == "cluster") {
          Cluster c = codec::cluster_from_json(j);
          if (!ids.insert(c.id).second) {
            throw CorruptSnapshot(index, "duplicate cluster id " + std::to_string(c.id));
          }
          s.clusters.push_back(std::move(c));
        } else if (kind == "history") {
          s.word_histories[j.at("term").get<std::string>()] = codec::history_from_json(j.at("points"));
        } else if (kind == "word_event") {
          s.word_events.push_back(codec::word_event_from_json(j));
        } else if (kind == "cluster_event") {
          s.cluster_events.push_back(codec::cluster_event_from_json(j));
        } else if (kind == "end") {
          if (j.at("records").get<std::size_t>() != expected || index != expected + 1) {
            throw CorruptSnapshot(index, "record count mismatch");
          }
          ended = true;
        } else {
          throw CorruptSnapshot(index, "unknown record kind " + kind);
        }
      }
    } catch (const json::exception& e) {
      throw CorruptSnapshot(index, e.what());
    }
    ++index;
  }
  if (index == 0) throw CorruptSnapshot(0, "empty snapshot");
  if (!ended) throw CorruptSnapshot(index, "truncated snapshot");
  return s;
}

std::string to_string(const StoreSnapshot& snapshot) {
  std::ostringstream out;
  write_snapshot(out, snapshot);
  return out.str();
}

StoreSnapshot snapshot_from_string(const std::string& text) {
  std::istringstream in(text);
  return read_snapshot(in);
}

StoreSnapshot read_snapshot_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw StoreError("cannot open snapshot " + path.string());
  return read_snapshot(in);
}

void write_snapshot_file(const std::filesystem::path& path, const StoreSnapshot& snapshot) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw StoreError("cannot write snapshot " + tmp.string());
    write_snapshot(out, snapshot);
    out.flush();
    if (!out) throw StoreError("short write to " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw StoreError("cannot replace " + path.string() + ": " + ec.message());
}

std::vector<Cluster> Store::load_clusters() const {
  std::lock_guard lock(mu_);
  ++loads_;
  return state_.clusters;
}

void Store::commit_document(DocumentId doc, const DocumentChanges& changes) {
  std::lock_guard lock(mu_);
  if (state_.last_doc && doc <= *state_.last_doc) {
    throw CommitOrderError("document " + std::to_string(doc.value) +
                           " already committed (last " + std::to_string(state_.last_doc->value) +
                           ")");
  }
  StoreSnapshot next = state_;
  for (const auto& c : changes.upserts) {
    auto it = std::find_if(next.clusters.begin(), next.clusters.end(),
                           [&](const Cluster& x) { return x.id == c.id; });
    if (it != next.clusters.end()) {
      *it = c;
    } else {
      next.clusters.push_back(c);
    }
    next.next_cluster_id = std::max(next.next_cluster_id, c.id + 1);
  }
  if (!changes.deletes.empty()) {
    std::erase_if(next.clusters, [&](const Cluster& c) {
      return std::find(changes.deletes.begin(), changes.deletes.end(), c.id) != changes.deletes.end();
    });
  }
  for (const auto& [term, history] : changes.histories) next.word_histories[term] = history;
  next.word_events.insert(next.word_events.end(), changes.word_events.begin(),
                          changes.word_events.end());
  next.cluster_events.insert(next.cluster_events.end(), changes.cluster_events.begin(),
                             changes.cluster_events.end());
  next.last_doc = doc;

  persist(next);
  state_ = std::move(next);
  ++commits_;
}

StoreSnapshot Store::snapshot() const {
  std::lock_guard lock(mu_);
  return state_;
}

std::optional<DocumentId> Store::last_committed() const {
  std::lock_guard lock(mu_);
  return state_.last_doc;
}

ClusterId Store::next_cluster_id() const {
  std::lock_guard lock(mu_);
  return state_.next_cluster_id;
}

namespace {

StoreSnapshot load_if_present(const std::filesystem::path& path) {
  if (std::filesystem::exists(path)) return read_snapshot_file(path);
  return {};
}

}  // namespace

FileStore::FileStore(std::filesystem::path path)
    : Store(load_if_present(path)), path_(std::move(path)) {}

void FileStore::persist(const StoreSnapshot& next) { write_snapshot_file(path_, next); }

std::unique_ptr<Store> open_store(const std::string& uri) {
  if (uri == "memory") return std::make_unique<MemoryStore>();
  constexpr std::string_view prefix = "file:";
  if (uri.starts_with(prefix) && uri.size() > prefix.size()) {
    return std::make_unique<FileStore>(uri.substr(prefix.size()));
  }
  throw StoreError("unknown store '" + uri + "' (expected memory or file:PATH)");
}

}  // namespace burstflow::store
