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

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "burstflow/runtime/barrier.hpp"
#include "burstflow/runtime/grouping.hpp"
#include "burstflow/runtime/tuple.hpp"

namespace burstflow::runtime {

/// Invalid topology definition (unknown component, cycle, unreachable bolt).
class TopologyError : public Error {
 public:
  using Error::Error;
};

/// A bolt task threw while processing; the run was aborted.
class BoltFailure : public Error {
 public:
  BoltFailure(std::string bolt, DocumentId doc, const std::string& what);
  const std::string& bolt() const { return bolt_; }
  DocumentId doc() const { return doc_; }

 private:
  std::string bolt_;
  DocumentId doc_;
};

struct TaskInfo {
  std::string component;
  TaskIndex index = 0;
  std::size_t count = 1;
};

/// Output side of a bolt task; emit() routes along every outgoing edge.
class Collector {
 public:
  virtual ~Collector() = default;
  virtual void emit(Payload payload) = 0;
};

class Bolt {
 public:
  virtual ~Bolt() = default;
  virtual void execute(const Tuple& tuple, Collector& out) = 0;
  /// Called once per document after EOD(doc) arrived from every upstream
  /// task, and before EOD(doc) is forwarded downstream.
  virtual void finish_document(DocumentId /*doc*/, Collector& /*out*/) {}
};

using BoltFactory = std::function<std::unique_ptr<Bolt>(const TaskInfo&)>;

class SpoutCollector {
 public:
  virtual ~SpoutCollector() = default;
  virtual void emit(Payload payload) = 0;
  /// Broadcasts EOD(doc) to every task downstream and applies the barrier
  /// mode (waits for acknowledgements, or sleeps).
  virtual void end_document(DocumentId doc) = 0;
};

class Spout {
 public:
  virtual ~Spout() = default;
  /// Emits the next unit of work; false once the source is exhausted.
  virtual bool next(SpoutCollector& out) = 0;
};

struct BarrierMode {
  enum class Kind { Direct, Sleep };

  Kind kind = Kind::Direct;
  std::chrono::milliseconds sleep{0};

  static BarrierMode direct() { return {}; }
  static BarrierMode sleeping(std::chrono::milliseconds ms) { return {Kind::Sleep, ms}; }
};

/// Recorded just before a bolt task executes a data tuple.
struct ProcessStamp {
  std::string bolt;
  TaskIndex task = 0;
  DocumentId doc;
  std::uint64_t seq = 0;  // global, strictly increasing across all tasks
};

struct RunOptions {
  BarrierMode barrier;
  std::size_t queue_bound = 10000;
  /// Seeds shuffle routing and fields hashing. Without a seed shuffle routing
  /// draws from std::random_device and fields hashing uses seed 0.
  std::optional<std::uint64_t> seed = 0;
  /// Optional instrumentation; called concurrently from every task.
  std::function<void(const ProcessStamp&)> on_process;
};

struct DocumentStats {
  DocumentId doc;
  std::uint64_t tuples = 0;
  double seconds = 0.0;
  bool operator==(const DocumentStats&) const = default;
};

struct RunReport {
  std::uint64_t documents = 0;
  std::uint64_t tuples_emitted = 0;
  std::vector<DocumentStats> per_document;
  std::map<std::string, std::uint64_t> processed;  // data tuples per bolt
  /// Data tuples that started after a tuple of a later document had started.
  std::uint64_t interleavings = 0;
  double wall_seconds = 0.0;
};

class Topology;

class TopologyBuilder {
 public:
  TopologyBuilder& set_spout(std::string name, std::unique_ptr<Spout> spout);
  TopologyBuilder& add_bolt(std::string name, std::size_t tasks, BoltFactory factory);
  TopologyBuilder& connect(const std::string& from, const std::string& to, Grouping grouping);

  /// Validates the graph: one spout, unique names, task counts >= 1, acyclic,
  /// every bolt reachable from the spout.
  Topology build();

 private:
  struct BoltDef {
    std::string name;
    std::size_t tasks;
    BoltFactory factory;
  };
  struct EdgeDef {
    std::string from;
    std::string to;
    Grouping grouping;
  };

  std::string spout_name_;
  std::unique_ptr<Spout> spout_;
  std::vector<BoltDef> bolts_;
  std::vector<EdgeDef> edges_;
  friend class Topology;
};

/// A validated spout/bolt graph. Runs once: the spout is consumed.
class Topology {
 public:
  struct Edge {
    std::size_t from;  // component index; 0 is the spout
    std::size_t to;
    Grouping grouping;
  };
  struct Component {
    std::string name;
    std::size_t tasks = 1;
    BoltFactory factory;  // empty for the spout
  };

  Topology(Topology&&) noexcept;
  Topology& operator=(Topology&&) noexcept;
  ~Topology();

  const std::vector<Component>& components() const { return components_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t bolt_task_count() const;

  /// Throws BoltFailure if a bolt task throws, and rethrows spout errors.
  RunReport run(const RunOptions& options = {});

 private:
  Topology() = default;
  friend class TopologyBuilder;

  std::unique_ptr<Spout> spout_;
  std::vector<Component> components_;
  std::vector<Edge> edges_;
  bool consumed_ = false;
};

}  // namespace burstflow::runtime
