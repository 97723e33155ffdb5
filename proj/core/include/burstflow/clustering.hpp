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
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "burstflow/ingest.hpp"
#include "burstflow/preprocess.hpp"
#include "burstflow/runtime/topology.hpp"
#include "burstflow/store.hpp"
#include "burstflow/types.hpp"

// Two-phase incremental clustering: per-task local clusters within a
// document, merged at the document boundary into persistent global clusters.
namespace burstflow::clustering {

class ParamError : public Error {
 public:
  using Error::Error;
};

class UndefinedSimilarity : public Error {
 public:
  using Error::Error;
};

struct ClusterParams {
  double similarity_threshold = 0.5;  // tweet assignment and cluster merges
  double growth_threshold = 0.5;
  std::uint64_t num_tweet_threshold = 30;  // smaller merged local clusters are dropped
  double prune_weight_established = 0.01;
  double prune_weight_new = 0.05;
  std::uint64_t established_size = 50;
  std::uint64_t inactivity_blocks = 3;
  /// Assign a tweet to the most similar cluster instead of the first
  /// cluster above the threshold.
  bool best_fit = false;
  /// Also report clusters inserted into the store for the first time.
  bool event_on_new_clusters = false;

  void validate() const;
};

/// Cosine similarity clamped to [0, 1]. Throws UndefinedSimilarity when
/// either side has no positive weight.
double cosine(const TermWeights& a, const TermWeights& b);

/// Tweet-count weighted average of two weight maps, normalized to sum 1.
TermWeights merge_weights(const TermWeights& a, std::uint64_t na, const TermWeights& b,
                          std::uint64_t nb);

enum class PruneRule {
  Established,  // clusters above established_size drop weights below prune_weight_established
  New,          // drop weights below prune_weight_new
};

/// Drops light terms and renormalizes; keeps the heaviest term when every
/// term would go.
void prune_weights(Cluster& c, const ClusterParams& params, PruneRule rule);

/// added / total. Throws Error when total is 0.
double growth_rate(std::uint64_t added, std::uint64_t total);

/// Folds `from` into `into`: weights, total and added counts. The lower
/// non-zero id wins.
void absorb(Cluster& into, const Cluster& from);

/**
 * Places a tweet into the task-local cluster list and returns the index of
 * the cluster that took it. First fit scans clusters in creation order;
 * best fit picks the highest similarity, earliest on ties. A new cluster is
 * appended when nothing reaches the threshold.
 */
std::size_t assign_tweet(const TweetVector& v, std::vector<Cluster>& local,
                         const ClusterParams& params);

/// assign_tweet over an inverted term index, for long cluster lists. Gives
/// the same assignments as the free function.
class LocalClusterer {
 public:
  explicit LocalClusterer(ClusterParams params) : params_(params) {}

  std::size_t assign(const TweetVector& v);
  const std::vector<Cluster>& clusters() const { return clusters_; }
  std::vector<Cluster> take();

 private:
  ClusterParams params_;
  std::vector<Cluster> clusters_;
  std::unordered_map<std::string, std::vector<std::size_t>> index_;
  std::vector<std::size_t> candidates_;
};

struct LocalMergeStats {
  std::uint64_t input_tweets = 0;
  std::uint64_t deleted_tweets = 0;
  std::size_t deleted_clusters = 0;
};

/**
 * Greedy merge of every task's clusters in (task, creation) order: each
 * cluster joins the earliest accepted cluster at or above the similarity
 * threshold, else it is accepted. Accepted clusters are pruned and those
 * below num_tweet_threshold dropped.
 */
std::vector<Cluster> local_merge(const std::vector<std::vector<Cluster>>& per_task,
                                 const ClusterParams& params, LocalMergeStats* stats = nullptr);

struct GlobalMergeResult {
  std::vector<Cluster> clusters;  // surviving globals, store order, then new ones
  std::vector<ClusterEvent> events;
  std::vector<ClusterId> evicted;
  std::vector<ClusterId> inserted;
  ClusterId next_id = 1;
};

/**
 * Merges the document's local clusters into the global clusters.
 *
 * Each global cluster, in store order, absorbs every remaining local cluster
 * it is similar to. Globals that absorbed anything are pruned and become
 * events when their growth rate exceeds the threshold. Leftover locals are
 * pruned with the new-cluster rule and inserted under fresh ids. Globals
 * inactive for inactivity_blocks documents are evicted and every survivor's
 * added count is reset.
 */
GlobalMergeResult global_merge(std::vector<Cluster> globals, std::vector<Cluster> locals,
                               DocumentId doc, ClusterId next_id, const ClusterParams& params);

inline constexpr std::size_t kTopTerms = 10;

struct ClusteringSink {
  std::vector<ClusterEvent> events;
  std::uint64_t documents = 0;
  std::uint64_t local_clusters = 0;
  std::uint64_t merged_clusters = 0;
};

struct ClusteringConfig {
  ClusterParams params;
  runtime::RunOptions run;
  std::size_t cluster_tasks = 4;
  ingest::WindowConfig window;
  text::Preprocessor preprocessor;
  std::shared_ptr<store::Store> store;  // defaults to a fresh MemoryStore
};

struct ClusteringResult {
  std::vector<ClusterEvent> events;
  runtime::RunReport report;
  std::uint64_t tweets = 0;
  std::uint64_t skipped = 0;
  std::int64_t stream_start = 0;
  std::shared_ptr<store::Store> store;
};

inline constexpr const char* kSpoutName = "replay";
inline constexpr const char* kClusterBolt = "cluster";
inline constexpr const char* kDetectorBolt = "detector";

/// replay --direct--> cluster x N --global--> detector x 1
runtime::Topology build_topology(std::unique_ptr<runtime::Spout> spout,
                                 const ClusteringConfig& config,
                                 std::shared_ptr<store::Store> store,
                                 std::shared_ptr<ClusteringSink> sink);

ClusteringResult run_clustering(std::vector<ingest::RawTweet> corpus, ClusteringConfig config);

}  // namespace burstflow::clustering
