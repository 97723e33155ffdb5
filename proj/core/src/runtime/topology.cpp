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

#include "burstflow/runtime/topology.hpp"

#include <atomic>
#include <map>
#include <mutex>
#include <random>
#include <set>
#include <thread>
#include <unordered_map>

#include "burstflow/runtime/bounded_queue.hpp"

namespace burstflow::runtime {

BoltFailure::BoltFailure(std::string bolt, DocumentId doc, const std::string& what)
    : Error("bolt `" + bolt + "` failed on document " + std::to_string(doc.value) + ": " + what),
      bolt_(std::move(bolt)),
      doc_(doc) {}

// ---------------------------------------------------------------------------
// Builder

TopologyBuilder& TopologyBuilder::set_spout(std::string name, std::unique_ptr<Spout> spout) {
  spout_name_ = std::move(name);
  spout_ = std::move(spout);
  return *this;
}

TopologyBuilder& TopologyBuilder::add_bolt(std::string name, std::size_t tasks,
                                           BoltFactory factory) {
  bolts_.push_back({std::move(name), tasks, std::move(factory)});
  return *this;
}

TopologyBuilder& TopologyBuilder::connect(const std::string& from, const std::string& to,
                                          Grouping grouping) {
  edges_.push_back({from, to, std::move(grouping)});
  return *this;
}

Topology TopologyBuilder::build() {
  if (!spout_) throw TopologyError("topology has no spout");

  Topology topo;
  std::unordered_map<std::string, std::size_t> index;
  topo.components_.push_back({spout_name_, 1, {}});
  index[spout_name_] = 0;
  for (auto& b : bolts_) {
    if (b.tasks == 0) throw TopologyError("bolt `" + b.name + "` needs at least one task");
    if (!b.factory) throw TopologyError("bolt `" + b.name + "` has no factory");
    if (!index.emplace(b.name, topo.components_.size()).second) {
      throw TopologyError("duplicate component name `" + b.name + "`");
    }
    topo.components_.push_back({b.name, b.tasks, std::move(b.factory)});
  }

  const std::size_t n = topo.components_.size();
  std::vector<std::vector<std::size_t>> out(n);
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (auto& e : edges_) {
    auto f = index.find(e.from);
    auto t = index.find(e.to);
    if (f == index.end()) throw TopologyError("edge from unknown component `" + e.from + "`");
    if (t == index.end()) throw TopologyError("edge to unknown component `" + e.to + "`");
    if (t->second == 0) throw TopologyError("the spout cannot consume tuples");
    if (!seen.emplace(f->second, t->second).second) {
      throw TopologyError("duplicate edge " + e.from + " -> " + e.to);
    }
    if (e.grouping.kind() == GroupingKind::Fields && !e.grouping.key()) {
      throw TopologyError("fields grouping " + e.from + " -> " + e.to + " has no key");
    }
    out[f->second].push_back(t->second);
    topo.edges_.push_back({f->second, t->second, std::move(e.grouping)});
  }

  // Cycle check by DFS colouring.
  std::vector<int> colour(n, 0);
  std::function<void(std::size_t)> visit = [&](std::size_t u) {
    colour[u] = 1;
    for (std::size_t v : out[u]) {
      if (colour[v] == 1) {
        throw TopologyError("cycle through `" + topo.components_[v].name + "`");
      }
      if (colour[v] == 0) visit(v);
    }
    colour[u] = 2;
  };
  for (std::size_t u = 0; u < n; ++u) {
    if (colour[u] == 0) visit(u);
  }

  std::vector<bool> reached(n, false);
  std::vector<std::size_t> stack{0};
  reached[0] = true;
  while (!stack.empty()) {
    const std::size_t u = stack.back();
    stack.pop_back();
    for (std::size_t v : out[u]) {
      if (!reached[v]) {
        reached[v] = true;
        stack.push_back(v);
      }
    }
  }
  for (std::size_t u = 1; u < n; ++u) {
    if (!reached[u]) {
      throw TopologyError("bolt `" + topo.components_[u].name + "` is unreachable from the spout");
    }
  }

  topo.spout_ = std::move(spout_);
  bolts_.clear();
  edges_.clear();
  return topo;
}

Topology::Topology(Topology&&) noexcept = default;
Topology& Topology::operator=(Topology&&) noexcept = default;
Topology::~Topology() = default;

std::size_t Topology::bolt_task_count() const {
  std::size_t n = 0;
  for (std::size_t c = 1; c < components_.size(); ++c) n += components_[c].tasks;
  return n;
}

// ---------------------------------------------------------------------------
// Execution

namespace {

struct Envelope {
  Tuple tuple;
  bool shutdown = false;
};

using Queue = BoundedQueue<Envelope>;

// Unwinds a task once the run has been aborted.
struct Aborted {};

std::uint64_t mix_seed(std::uint64_t seed, std::size_t component, std::size_t task,
                       std::size_t edge) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (component * 1000003ULL + task * 7919ULL + edge + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class Engine;

class Emitter {
 public:
  Emitter(Engine& engine, std::size_t component, TaskIndex task);

  void emit(Payload payload);
  void broadcast(const Envelope& env);

 private:
  struct OutEdge {
    std::size_t to;
    Router router;
  };

  Engine& engine_;
  TaskIndex task_;
  std::vector<OutEdge> edges_;
  std::vector<TaskIndex> targets_;
};

class Engine {
 public:
  Engine(const Topology& topo, Spout& spout, const RunOptions& options)
      : topo_(topo), spout_(spout), options_(options), barrier_(topo.bolt_task_count()) {
    const auto& comps = topo_.components();
    queues_.resize(comps.size());
    upstream_.assign(comps.size(), 0);
    participant_base_.assign(comps.size(), 0);
    std::size_t base = 0;
    for (std::size_t c = 1; c < comps.size(); ++c) {
      participant_base_[c] = base;
      base += comps[c].tasks;
      for (std::size_t t = 0; t < comps[c].tasks; ++t) {
        queues_[c].push_back(std::make_unique<Queue>(options_.queue_bound));
      }
    }
    for (const auto& e : topo_.edges()) upstream_[e.to] += comps[e.from].tasks;
    processed_.resize(comps.size());
    for (std::size_t c = 1; c < comps.size(); ++c) processed_[c].assign(comps[c].tasks, 0);
    if (!options_.seed) random_seed_ = std::random_device{}();
  }

  const Topology& topology() const { return topo_; }
  const RunOptions& options() const { return options_; }
  Queue& queue(std::size_t component, TaskIndex task) { return *queues_[component][task]; }
  DocumentBarrier& barrier() { return barrier_; }
  bool aborted() const { return aborted_.load(); }

  std::uint64_t rng_seed(std::size_t component, std::size_t task, std::size_t edge) const {
    return mix_seed(options_.seed.value_or(random_seed_), component, task, edge);
  }
  std::uint64_t hash_seed() const { return options_.seed.value_or(0); }

  void abort() {
    if (aborted_.exchange(true)) return;
    barrier_.cancel();
    for (auto& per_component : queues_) {
      for (auto& q : per_component) q->close();
    }
  }

  void fail(const std::string& bolt, DocumentId doc, const std::string& what) {
    {
      std::lock_guard lock(failure_mu_);
      if (!failure_) failure_.emplace(bolt, doc, what);
    }
    abort();
  }

  void stamp(std::size_t component, TaskIndex task, DocumentId doc) {
    const auto d = static_cast<std::int64_t>(doc.value);
    std::int64_t prev = max_doc_started_.load();
    for (;;) {
      if (d < prev) {
        interleavings_.fetch_add(1);
        break;
      }
      if (d == prev || max_doc_started_.compare_exchange_weak(prev, d)) break;
    }
    const std::uint64_t seq = seq_.fetch_add(1);
    if (options_.on_process) {
      options_.on_process({topo_.components()[component].name, task, doc, seq});
    }
  }

  void run_task(std::size_t component, TaskIndex task) {
    const auto& comp = topo_.components()[component];
    DocumentId current;
    try {
      TaskInfo info{comp.name, task, comp.tasks};
      std::unique_ptr<Bolt> bolt = comp.factory(info);
      if (!bolt) throw Error("factory returned no bolt");
      Emitter emitter(*this, component, task);
      struct BoltCollector final : Collector {
        explicit BoltCollector(Emitter& e) : emitter(e) {}
        void emit(Payload payload) override { emitter.emit(std::move(payload)); }
        Emitter& emitter;
      } collector(emitter);

      const std::size_t upstream = upstream_[component];
      const bool direct = options_.barrier.kind == BarrierMode::Kind::Direct;
      std::map<std::uint64_t, std::size_t> eod_counts;
      std::size_t shutdowns = 0;
      std::vector<Envelope> batch;
      Queue& in = queue(component, task);
      bool done = false;
      while (!done && !aborted()) {
        batch.clear();
        if (in.pop_batch(batch, 256) == 0) break;
        for (auto& env : batch) {
          if (aborted()) break;
          if (env.shutdown) {
            if (++shutdowns == upstream) {
              emitter.broadcast(env);
              done = true;
            }
            continue;
          }
          current = document_of(env.tuple);
          if (std::holds_alternative<Eod>(env.tuple.payload)) {
            auto& seen = eod_counts[current.value];
            if (++seen == upstream) {
              eod_counts.erase(current.value);
              bolt->finish_document(current, collector);
              emitter.broadcast(Envelope{Tuple{Eod{current}, task}, false});
              if (direct) barrier_.ack(participant_base_[component] + task, current);
            }
            continue;
          }
          stamp(component, task, current);
          bolt->execute(env.tuple, collector);
          ++processed_[component][task];
        }
      }
    } catch (const Aborted&) {
    } catch (const std::exception& e) {
      fail(comp.name, current, e.what());
    } catch (...) {
      fail(comp.name, current, "unknown exception");
    }
  }

  RunReport run() {
    RunReport report;
    const auto started = std::chrono::steady_clock::now();

    std::vector<std::thread> workers;
    const auto& comps = topo_.components();
    for (std::size_t c = 1; c < comps.size(); ++c) {
      for (std::size_t t = 0; t < comps[c].tasks; ++t) {
        workers.emplace_back([this, c, t] { run_task(c, static_cast<TaskIndex>(t)); });
      }
    }

    std::exception_ptr spout_error;
    try {
      run_spout(report);
    } catch (const Aborted&) {
    } catch (...) {
      spout_error = std::current_exception();
      abort();
    }

    for (auto& w : workers) w.join();

    if (failure_) throw *failure_;
    if (spout_error) std::rethrow_exception(spout_error);

    report.interleavings = interleavings_.load();
    for (std::size_t c = 1; c < comps.size(); ++c) {
      std::uint64_t total = 0;
      for (auto n : processed_[c]) total += n;
      report.processed[comps[c].name] = total;
    }
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return report;
  }

 private:
  void run_spout(RunReport& report) {
    Emitter emitter(*this, 0, 0);
    struct Sink final : SpoutCollector {
      Sink(Engine& eng, Emitter& em, RunReport& rep)
          : engine(eng), emitter(em), report(rep), doc_started(std::chrono::steady_clock::now()) {}

      void emit(Payload payload) override {
        ++tuples;
        ++report.tuples_emitted;
        emitter.emit(std::move(payload));
      }

      void end_document(DocumentId doc) override {
        const bool direct = engine.options().barrier.kind == BarrierMode::Kind::Direct;
        if (direct) engine.barrier().open(doc);
        emitter.broadcast(Envelope{Tuple{Eod{doc}, 0}, false});
        if (direct) {
          if (!engine.barrier().wait()) throw Aborted{};
        } else if (engine.options().barrier.sleep.count() > 0) {
          std::this_thread::sleep_for(engine.options().barrier.sleep);
        }
        const auto now = std::chrono::steady_clock::now();
        report.per_document.push_back(
            {doc, tuples, std::chrono::duration<double>(now - doc_started).count()});
        ++report.documents;
        tuples = 0;
        doc_started = now;
      }

      Engine& engine;
      Emitter& emitter;
      RunReport& report;
      std::uint64_t tuples = 0;
      std::chrono::steady_clock::time_point doc_started;
    } collector(*this, emitter, report);

    while (!aborted() && spout_.next(collector)) {
    }
    if (aborted()) throw Aborted{};
    emitter.broadcast(Envelope{Tuple{Eod{}, 0}, true});
  }

  const Topology& topo_;
  Spout& spout_;
  RunOptions options_;
  DocumentBarrier barrier_;
  std::vector<std::vector<std::unique_ptr<Queue>>> queues_;
  std::vector<std::size_t> upstream_;
  std::vector<std::size_t> participant_base_;
  std::vector<std::vector<std::uint64_t>> processed_;
  std::uint64_t random_seed_ = 0;

  std::atomic<bool> aborted_{false};
  std::atomic<std::int64_t> max_doc_started_{-1};
  std::atomic<std::uint64_t> interleavings_{0};
  std::atomic<std::uint64_t> seq_{0};

  std::mutex failure_mu_;
  std::optional<BoltFailure> failure_;
};

Emitter::Emitter(Engine& engine, std::size_t component, TaskIndex task)
    : engine_(engine), task_(task) {
  const auto& edges = engine.topology().edges();
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (edges[e].from != component) continue;
    edges_.push_back({edges[e].to,
                      Router(edges[e].grouping, engine.topology().components()[edges[e].to].tasks,
                             engine.rng_seed(component, task, e), engine.hash_seed())});
  }
}

void Emitter::emit(Payload payload) {
  Tuple t{std::move(payload), task_};
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    edges_[e].router.route(t, targets_);
    for (std::size_t i = 0; i < targets_.size(); ++i) {
      const bool last = e + 1 == edges_.size() && i + 1 == targets_.size();
      Envelope env{last ? std::move(t) : t, false};
      if (!engine_.queue(edges_[e].to, targets_[i]).push(std::move(env))) throw Aborted{};
    }
  }
}

void Emitter::broadcast(const Envelope& env) {
  for (const auto& edge : edges_) {
    for (std::size_t t = 0; t < edge.router.task_count(); ++t) {
      Envelope copy{Tuple{env.tuple.payload, task_}, env.shutdown};
      if (!engine_.queue(edge.to, static_cast<TaskIndex>(t)).push(std::move(copy))) {
        throw Aborted{};
      }
    }
  }
}

}  // namespace

RunReport Topology::run(const RunOptions& options) {
  if (consumed_) throw TopologyError("topology already ran");
  consumed_ = true;
  Engine engine(*this, *spout_, options);
  return engine.run();
}

}  // namespace burstflow::runtime
