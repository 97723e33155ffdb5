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

#include <atomic>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "burstflow/types.hpp"

namespace burstflow::store {

class StoreError : public Error {
 public:
  using Error::Error;
};

/// A snapshot record could not be decoded. `record()` is the zero-based
/// index of the offending record (the header is record 0).
class CorruptSnapshot : public StoreError {
 public:
  CorruptSnapshot(std::size_t record, const std::string& what);
  std::size_t record() const { return record_; }

 private:
  std::size_t record_;
};

/// A second commit for an already committed document.
class CommitOrderError : public StoreError {
 public:
  using StoreError::StoreError;
};

using WordHistories = std::map<std::string, std::vector<HistoryPoint>>;

struct StoreSnapshot {
  std::optional<DocumentId> last_doc;
  ClusterId next_cluster_id = 1;
  std::vector<Cluster> clusters;  // insertion order
  WordHistories word_histories;
  std::vector<WordEvent> word_events;
  std::vector<ClusterEvent> cluster_events;

  bool operator==(const StoreSnapshot&) const = default;
};

/// Everything one document changes. Applied atomically by commit_document.
struct DocumentChanges {
  std::vector<Cluster> upserts;  // replaced in place when the id exists, else appended
  std::vector<ClusterId> deletes;
  WordHistories histories;  // replaces the stored history of each listed term
  std::vector<WordEvent> word_events;
  std::vector<ClusterEvent> cluster_events;
};

/**
 * Line-delimited snapshot encoding.
 *
 * A header object carries the format name, version, last committed document
 * and next cluster id; one record follows per cluster, word history and
 * event; an end record repeats the record count so truncation is detected.
 */
void write_snapshot(std::ostream& out, const StoreSnapshot& snapshot);
StoreSnapshot read_snapshot(std::istream& in);

std::string to_string(const StoreSnapshot& snapshot);
StoreSnapshot snapshot_from_string(const std::string& text);

/// Persistent state of the detectors. Single writer, loads from any thread.
class Store {
 public:
  virtual ~Store() = default;

  std::vector<Cluster> load_clusters() const;

  /// Throws CommitOrderError unless `doc` is after the last committed one.
  /// When persisting fails the in-memory state is left untouched.
  void commit_document(DocumentId doc, const DocumentChanges& changes);

  StoreSnapshot snapshot() const;
  std::optional<DocumentId> last_committed() const;
  ClusterId next_cluster_id() const;

  std::uint64_t commits() const { return commits_.load(); }
  std::uint64_t loads() const { return loads_.load(); }

 protected:
  Store() = default;
  explicit Store(StoreSnapshot initial) : state_(std::move(initial)) {}

  virtual void persist(const StoreSnapshot& next) = 0;

 private:
  mutable std::mutex mu_;
  StoreSnapshot state_;
  std::atomic<std::uint64_t> commits_{0};
  mutable std::atomic<std::uint64_t> loads_{0};
};

class MemoryStore final : public Store {
 public:
  MemoryStore() = default;
  explicit MemoryStore(StoreSnapshot initial) : Store(std::move(initial)) {}

 protected:
  void persist(const StoreSnapshot&) override {}
};

/// Keeps the snapshot file current after every commit (write to a temporary
/// sibling, then rename over the target).
class FileStore final : public Store {
 public:
  /// Loads `path` when it exists, otherwise starts empty.
  explicit FileStore(std::filesystem::path path);

  const std::filesystem::path& path() const { return path_; }

 protected:
  void persist(const StoreSnapshot& next) override;

 private:
  std::filesystem::path path_;
};

StoreSnapshot read_snapshot_file(const std::filesystem::path& path);
void write_snapshot_file(const std::filesystem::path& path, const StoreSnapshot& snapshot);

/// "memory" or "file:PATH".
std::unique_ptr<Store> open_store(const std::string& uri);

}  // namespace burstflow::store
