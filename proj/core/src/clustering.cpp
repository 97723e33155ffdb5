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

#include "burstflow/clustering.hpp"

#include <algorithm>
#include <map>
#include <optional>

#include "burstflow/sources.hpp"

namespace burstflow::clustering {

void ClusterParams::validate() const {
  if (!(similarity_threshold > 0.0 && similarity_threshold <= 1.0)) {
    throw ParamError("similarity threshold must be in (0, 1]");
  }
  if (!(growth_threshold > 0.0)) throw ParamError("growth threshold must be positive");
  if (num_tweet_threshold < 1) throw ParamError("minimum cluster size must be at least 1");
  if (!(prune_weight_established > 0.0) || !(prune_weight_new > 0.0)) {
    throw ParamError("prune weights must be positive");
  }
  if (established_size < 1) throw ParamError("established size must be at least 1");
  if (inactivity_blocks < 1) throw ParamError("inactivity must be at least 1 document");
}

double cosine(const TermWeights& a, const TermWeights& b) {
  if (!(a.norm() > 0.0) || !(b.norm() > 0.0)) {
    throw UndefinedSimilarity("cosine of an empty weight map");
  }
  double dot = 0.0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    const int c = ia->first.compare(ib->first);
    if (c < 0) {
      ++ia;
    } else if (c > 0) {
      ++ib;
    } else {
      dot += ia->second * ib->second;
      ++ia;
      ++ib;
    }
  }
  return std::clamp(dot / (a.norm() * b.norm()), 0.0, 1.0);
}

TermWeights merge_weights(const TermWeights& a, std::uint64_t na, const TermWeights& b,
                          std::uint64_t nb) {
  const double n = static_cast<double>(na + nb);
  const double fa = n > 0 ? static_cast<double>(na) / n : 0.5;
  const double fb = n > 0 ? static_cast<double>(nb) / n : 0.5;

  std::vector<TermWeights::Entry> out;
  out.reserve(a.size() + b.size());
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() || ib != b.end()) {
    if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
      out.emplace_back(ia->first, fa * ia->second);
      ++ia;
    } else if (ia == a.end() || ib->first < ia->first) {
      out.emplace_back(ib->first, fb * ib->second);
      ++ib;
    } else {
      out.emplace_back(ia->first, fa * ia->second + fb * ib->second);
      ++ia;
      ++ib;
    }
  }
  std::erase_if(out, [](const TermWeights::Entry& e) { return !(e.second > 0.0); });
  auto merged = TermWeights::from_sorted(std::move(out));
  merged.normalize();
  return merged;
}

void prune_weights(Cluster& c, const ClusterParams& params, PruneRule rule) {
  double cutoff = params.prune_weight_new;
  if (rule == PruneRule::Established) {
    if (c.total_tweets <= params.established_size) return;
    cutoff = params.prune_weight_established;
  }
  if (c.weights.empty()) return;
  bool any_kept = false;
  for (const auto& [term, w] : c.weights) any_kept = any_kept || w >= cutoff;
  if (any_kept) {
    c.weights.erase_if([cutoff](const std::string&, double w) { return w < cutoff; });
  } else {
    c.weights = TermWeights(c.weights.top(1));
  }
  c.weights.normalize();
}

double growth_rate(std::uint64_t added, std::uint64_t total) {
  if (total == 0) throw Error("growth rate of an empty cluster");
  return static_cast<double>(added) / static_cast<double>(total);
}

void absorb(Cluster& into, const Cluster& from) {
  into.weights = merge_weights(into.weights, into.total_tweets, from.weights, from.total_tweets);
  into.total_tweets += from.total_tweets;
  into.tweets_added_this_block += from.tweets_added_this_block;
  if (into.id == 0 || (from.id != 0 && from.id < into.id)) into.id = from.id;
  into.created_doc = std::min(into.created_doc, from.created_doc);
  into.last_active_doc = std::max(into.last_active_doc, from.last_active_doc);
}

namespace {

Cluster singleton(const TweetVector& v) {
  Cluster c;
  c.weights = v.weights;
  c.total_tweets = 1;
  c.tweets_added_this_block = 1;
  c.created_doc = v.doc;
  c.last_active_doc = v.doc;
  return c;
}

void require_nonempty(const TweetVector& v) {
  if (v.weights.empty()) throw UndefinedSimilarity("tweet " + v.id + " has an empty vector");
}

// Picks among `order` (ascending cluster indices) per first/best fit.
template <typename Range>
std::optional<std::size_t> pick(const Range& order, const std::vector<Cluster>& clusters,
                                const TermWeights& w, const ClusterParams& params) {
  std::optional<std::size_t> best;
  double best_sim = -1.0;
  for (std::size_t i : order) {
    const double sim = cosine(clusters[i].weights, w);
    if (sim < params.similarity_threshold) continue;
    if (!params.best_fit) return i;
    if (sim > best_sim) {
      best_sim = sim;
      best = i;
    }
  }
  return best;
}

// Inverted term -> cluster index. Entries may go stale after pruning; that
// only costs an extra similarity check.
class TermIndex {
 public:
  void add_new_terms(std::size_t cluster, const TermWeights& existing, const TermWeights& incoming) {
    for (const auto& [term, w] : incoming) {
      if (!existing.contains(term)) index_[term].push_back(cluster);
    }
  }
  void add(std::size_t cluster, const TermWeights& w) {
    for (const auto& [term, weight] : w) index_[term].push_back(cluster);
  }
  const std::vector<std::size_t>& candidates(const TermWeights& w) {
    out_.clear();
    for (const auto& [term, weight] : w) {
      if (auto it = index_.find(term); it != index_.end()) {
        out_.insert(out_.end(), it->second.begin(), it->second.end());
      }
    }
    std::sort(out_.begin(), out_.end());
    out_.erase(std::unique(out_.begin(), out_.end()), out_.end());
    return out_;
  }
 private:
  std::unordered_map<std::string, std::vector<std::size_t>> index_;
  std::vector<std::size_t> out_;
};

}  // namespace

std::size_t assign_tweet(const TweetVector& v, std::vector<Cluster>& local,
                         const ClusterParams& params) {
  require_nonempty(v);
  std::vector<std::size_t> all(local.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  if (auto i = pick(all, local, v.weights, params)) {
    absorb(local[*i], singleton(v));
    return *i;
  }
  local.push_back(singleton(v));
  return local.size() - 1;
}

std::size_t LocalClusterer::assign(const TweetVector& v) {
  require_nonempty(v);
  candidates_.clear();
  for (const auto& [term, w] : v.weights) {
    if (auto it = index_.find(term); it != index_.end()) {
      candidates_.insert(candidates_.end(), it->second.begin(), it->second.end());
    }
  }
  std::sort(candidates_.begin(), candidates_.end());
  candidates_.erase(std::unique(candidates_.begin(), candidates_.end()), candidates_.end());

  if (auto i = pick(candidates_, clusters_, v.weights, params_)) {
    for (const auto& [term, w] : v.weights) {
      if (!clusters_[*i].weights.contains(term)) index_[term].push_back(*i);
    }
    absorb(clusters_[*i], singleton(v));
    return *i;
  }
  const std::size_t i = clusters_.size();
  for (const auto& [term, w] : v.weights) index_[term].push_back(i);
  clusters_.push_back(singleton(v));
  return i;
}

std::vector<Cluster> LocalClusterer::take() {
  index_.clear();
  return std::exchange(clusters_, {});
}

std::vector<Cluster> local_merge(const std::vector<std::vector<Cluster>>& per_task,
                                 const ClusterParams& params, LocalMergeStats* stats) {
  std::vector<Cluster> accepted;
  TermIndex index;
  LocalMergeStats s;
  ClusterParams first_fit = params;
  first_fit.best_fit = false;
  for (const auto& clusters : per_task) {
    for (const auto& c : clusters) {
      s.input_tweets += c.total_tweets;
      const auto& cands = index.candidates(c.weights);
      if (auto i = pick(cands, accepted, c.weights, first_fit)) {
        index.add_new_terms(*i, accepted[*i].weights, c.weights);
        absorb(accepted[*i], c);
      } else {
        index.add(accepted.size(), c.weights);
        accepted.push_back(c);
      }
    }
  }
  for (auto& c : accepted) prune_weights(c, params, PruneRule::Established);
  std::erase_if(accepted, [&](const Cluster& c) {
    if (c.total_tweets >= params.num_tweet_threshold) return false;
    s.deleted_tweets += c.total_tweets;
    ++s.deleted_clusters;
    return true;
  });
  if (stats) *stats = s;
  return accepted;
}

GlobalMergeResult global_merge(std::vector<Cluster> globals, std::vector<Cluster> locals,
                               DocumentId doc, ClusterId next_id, const ClusterParams& params) {
  GlobalMergeResult result;
  std::vector<bool> taken(locals.size(), false);

  auto report = [&](const Cluster& c) {
    const double growth = growth_rate(c.tweets_added_this_block, c.total_tweets);
    if (growth > params.growth_threshold) {
      result.events.push_back(ClusterEvent{c.id, doc, growth, c.weights.top(kTopTerms)});
    }
  };

  for (auto& g : globals) {
    bool absorbed = false;
    for (std::size_t i = 0; i < locals.size(); ++i) {
      if (taken[i] || cosine(g.weights, locals[i].weights) < params.similarity_threshold) continue;
      absorb(g, locals[i]);
      taken[i] = true;
      absorbed = true;
    }
    if (!absorbed) continue;
    prune_weights(g, params, PruneRule::Established);
    g.last_active_doc = doc;
    report(g);
  }

  for (std::size_t i = 0; i < locals.size(); ++i) {
    if (taken[i]) continue;
    Cluster c = std::move(locals[i]);
    prune_weights(c, params, PruneRule::New);
    c.id = next_id++;
    c.created_doc = doc;
    c.last_active_doc = doc;
    c.tweets_added_this_block = c.total_tweets;
    result.inserted.push_back(c.id);
    if (params.event_on_new_clusters) report(c);
    globals.push_back(std::move(c));
  }

  for (auto& g : globals) {
    if (g.last_active_doc.value + params.inactivity_blocks <= doc.value) {
      result.evicted.push_back(g.id);
      continue;
    }
    g.tweets_added_this_block = 0;
    result.clusters.push_back(std::move(g));
  }
  result.next_id = next_id;
  return result;
}

namespace {

class ClusterBolt final : public runtime::Bolt {
 public:
  ClusterBolt(ClusterParams params, TaskIndex task) : clusterer_(params), task_(task) {}

  void execute(const runtime::Tuple& tuple, runtime::Collector&) override {
    const auto& v = std::get<runtime::Vector>(tuple.payload).vector;
    if (!v.weights.empty()) clusterer_.assign(v);
  }

  void finish_document(DocumentId doc, runtime::Collector& out) override {
    auto clusters = clusterer_.take();
    for (auto& c : clusters) {
      c.created_doc = doc;
      c.last_active_doc = doc;
    }
    out.emit(runtime::LocalClusters{task_, std::move(clusters), doc});
  }

 private:
  LocalClusterer clusterer_;
  TaskIndex task_;
};

class DetectorBolt final : public runtime::Bolt {
 public:
  DetectorBolt(ClusterParams params, std::shared_ptr<store::Store> store,
               std::shared_ptr<ClusteringSink> sink)
      : params_(params), store_(std::move(store)), sink_(std::move(sink)) {}

  void execute(const runtime::Tuple& tuple, runtime::Collector&) override {
    auto& lc = std::get<runtime::LocalClusters>(tuple.payload);
    auto& slot = pending_[lc.doc][lc.task];
    slot.insert(slot.end(), lc.clusters.begin(), lc.clusters.end());
  }

  void finish_document(DocumentId doc, runtime::Collector&) override {
    std::vector<std::vector<Cluster>> per_task;
    if (auto it = pending_.find(doc); it != pending_.end()) {
      for (auto& [task, clusters] : it->second) {
        sink_->local_clusters += clusters.size();
        per_task.push_back(std::move(clusters));
      }
    }
    std::erase_if(pending_, [&](const auto& kv) { return kv.first <= doc; });

    auto merged = local_merge(per_task, params_);
    sink_->merged_clusters += merged.size();
    auto result = global_merge(store_->load_clusters(), std::move(merged), doc,
                               store_->next_cluster_id(), params_);

    store::DocumentChanges changes;
    changes.upserts = std::move(result.clusters);
    changes.deletes = std::move(result.evicted);
    changes.cluster_events = result.events;
    store_->commit_document(doc, changes);

    sink_->events.insert(sink_->events.end(), result.events.begin(), result.events.end());
    ++sink_->documents;
  }

 private:
  ClusterParams params_;
  std::shared_ptr<store::Store> store_;
  std::shared_ptr<ClusteringSink> sink_;
  std::map<DocumentId, std::map<TaskIndex, std::vector<Cluster>>> pending_;
};

}  // namespace

runtime::Topology build_topology(std::unique_ptr<runtime::Spout> spout,
                                 const ClusteringConfig& config,
                                 std::shared_ptr<store::Store> store,
                                 std::shared_ptr<ClusteringSink> sink) {
  config.params.validate();
  const ClusterParams params = config.params;

  runtime::TopologyBuilder builder;
  builder.set_spout(kSpoutName, std::move(spout))
      .add_bolt(kClusterBolt, config.cluster_tasks,
                [params](const runtime::TaskInfo& info) {
                  return std::make_unique<ClusterBolt>(params, info.index);
                })
      .add_bolt(kDetectorBolt, 1,
                [=](const runtime::TaskInfo&) {
                  return std::make_unique<DetectorBolt>(params, store, sink);
                })
      .connect(kSpoutName, kClusterBolt, runtime::Grouping::direct())
      .connect(kClusterBolt, kDetectorBolt, runtime::Grouping::global());
  return builder.build();
}

ClusteringResult run_clustering(std::vector<ingest::RawTweet> corpus, ClusteringConfig config) {
  ClusteringResult result;
  result.store = config.store ? config.store : std::make_shared<store::MemoryStore>();
  auto sink = std::make_shared<ClusteringSink>();
  auto source = std::make_shared<sources::SourceStats>();
  auto spout = std::make_unique<sources::VectorSpout>(
      ingest::Replayer(std::move(corpus), config.window), config.preprocessor, source);

  auto topology = build_topology(std::move(spout), config, result.store, sink);
  result.report = topology.run(config.run);
  result.events = std::move(sink->events);
  result.tweets = source->tweets;
  result.skipped = source->skipped;
  result.stream_start = source->stream_start;
  return result;
}

}  // namespace burstflow::clustering
