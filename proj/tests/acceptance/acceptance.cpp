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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <mutex>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "burstflow/clustering.hpp"
#include "burstflow/eval.hpp"
#include "burstflow/keybased.hpp"
#include "burstflow/preprocess.hpp"
#include "burstflow/runtime/grouping.hpp"
#include "burstflow/runtime/topology.hpp"
#include "burstflow/store.hpp"
#include "oracle.hpp"

namespace {

using namespace burstflow;
using namespace std::chrono_literals;
using Clock = std::chrono::steady_clock;

// Pinned tolerances.
constexpr double kCosineTol = 1e-6;
constexpr double kIdfTol = 1e-9;
constexpr double kVectorTol = 1e-12;
constexpr double kGrowthTol = 1e-12;
constexpr double kWeightSumTol = 1e-9;
constexpr double kOracleSeconds = 30.0;
constexpr double kShuffleTolerance = 0.03;
constexpr int kSleepRunsRequired = 90;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string token_of(const std::string& word) {
  const auto toks = text::Preprocessor{}.tokens(word);
  return toks.empty() ? std::string{} : toks.front();
}

// 1. Streaming keybased detector equals the batch scan.
void oracle_equivalence(Outcome& o) {
  double slowest = 0.0;
  std::size_t events = 0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    eval::SyntheticSpec spec;
    spec.documents = 20;
    spec.background.tweets_per_document = 490;
    spec.background.vocabulary = 3000;
    spec.background.zipf = 1.0;
    // Repeated bursts give finite increment rates as well as first sightings.
    spec.bursts = {{"earthquake", 6, 20}, {"earthquake", 7, 60}, {"earthquake", 12, 15},
                   {"flooding", 15, 50}, {"flooding", 16, 25}, {"protest", 3, 12},
                   {"protest", 4, 18}};
    auto corpus = eval::generate_synthetic(spec, seed).tweets;
    o.require(corpus.size() == 10000, "corpus size for seed " + std::to_string(seed));

    const auto expected = testing::batch_keybased(testing::tokenize_documents(corpus), {});
    const auto t0 = Clock::now();
    auto r = keybased::run_keybased(corpus, keybased::KeybasedConfig{});
    const double took = seconds_since(t0);
    slowest = std::max(slowest, took);

    testing::EventSet got;
    for (const auto& e : r.events) got.emplace(e.term, e.doc.value);
    o.require(got == expected, "event sets differ for seed " + std::to_string(seed));
    o.require(!expected.empty(), "oracle found no events for seed " + std::to_string(seed));
    o.require(took < kOracleSeconds, "seed " + std::to_string(seed) + " too slow");
    events += got.size();
  }
  o.detail << "5 corpora, " << events << " events matched, slowest " << slowest << " s";
}

// 2. Planted burst words are found, constant words never event.
void keybased_plant_and_detect(Outcome& o) {
  eval::SyntheticSpec spec;
  spec.documents = 10;
  spec.background.tweets_per_document = 400;
  spec.background.vocabulary = 3000;
  spec.background.zipf = 1.0;
  spec.constant_words = {100, 12};
  const std::vector<std::string> planted = {"earthquake", "wildfire", "tornado", "blackout", "eruption"};
  for (const auto& w : planted) spec.bursts.push_back({w, 9, 55});
  const auto corpus = eval::generate_synthetic(spec, 11);

  keybased::KeybasedConfig cfg;
  cfg.params.common_word_threshold = 10;
  cfg.params.tfidf_event_rate = 2.0;
  auto r = keybased::run_keybased(corpus.tweets, cfg);

  std::set<std::string> hit;
  for (const auto& e : r.events) {
    if (e.doc.value == 9) hit.insert(e.term);
  }
  std::size_t found = 0;
  for (const auto& w : planted) found += hit.contains(token_of(w)) ? 1 : 0;

  std::set<std::string> constant;
  for (const auto& w : corpus.constant_words) constant.insert(token_of(w));
  std::size_t constant_events = 0;
  for (const auto& e : r.events) constant_events += constant.contains(e.term) ? 1 : 0;

  o.require(corpus.constant_words.size() == 100, "100 constant words generated");
  o.require(found == planted.size(), "every planted word detected");
  o.require(constant_events == 0, "no constant-word events");
  o.detail << found << "/" << planted.size() << " planted detected, " << constant_events
           << " constant-word events";
}

bool mentions_all(const ClusterEvent& e, const std::vector<std::string>& words) {
  for (const auto& w : words) {
    const auto tok = token_of(w);
    const bool present = std::any_of(e.top_terms.begin(), e.top_terms.end(),
                                     [&](const auto& t) { return t.first == tok; });
    if (!present) return false;
  }
  return true;
}

// 3. A planted topic produces exactly one cluster event.
void clustering_plant_and_detect(Outcome& o) {
  const std::vector<std::string> topic = {"wildfire", "canyon", "evacuation"};
  std::size_t background_events = 0;
  for (std::uint64_t seed : {7u, 8u, 9u}) {
    eval::SyntheticSpec base;
    base.documents = 8;
    base.background.tweets_per_document = 100;
    base.background.vocabulary = 2000;

    // (a) default parameters: established at 35 tweets, then 60 more.
    auto established = base;
    established.topics.push_back({topic, {{3, 35}, {5, 60}}, 1});
    auto a = clustering::run_clustering(eval::generate_synthetic(established, seed).tweets, {});
    o.require(a.events.size() == 1, "default params give one event (seed " + std::to_string(seed) + ")");
    if (a.events.size() == 1) {
      o.require(a.events[0].doc == DocumentId{5}, "event at the burst document");
      o.require(std::abs(a.events[0].growth_rate - 60.0 / 95.0) < kGrowthTol, "growth 60/95");
      o.require(mentions_all(a.events[0], topic), "top terms carry the topic");
    }

    // (b) new clusters event: a pure 60-tweet planting.
    auto fresh = base;
    fresh.topics.push_back({topic, {{5, 60}}, 1});
    clustering::ClusteringConfig cfg;
    cfg.params.event_on_new_clusters = true;
    auto b = clustering::run_clustering(eval::generate_synthetic(fresh, seed).tweets, cfg);
    o.require(b.events.size() == 1, "new-cluster eventing gives one event (seed " + std::to_string(seed) + ")");
    if (b.events.size() == 1) {
      o.require(b.events[0].doc == DocumentId{5}, "event at the planted document");
      o.require(b.events[0].growth_rate > 0.5, "growth above 0.5");
      o.require(mentions_all(b.events[0], topic), "top terms carry the topic");
    }

    auto none = clustering::run_clustering(eval::generate_synthetic(base, seed).tweets, cfg);
    background_events += none.events.size();
  }
  o.require(background_events == 0, "uniform background gives no events");
  o.detail << "3 seeds x {established burst, new-cluster eventing}, " << background_events
           << " background events";
}

// Emits `per_doc` Word tuples for each of `docs` documents.
class WordSpout : public runtime::Spout {
 public:
  WordSpout(std::uint64_t docs, int per_doc) : docs_(docs), per_doc_(per_doc) {}
  bool next(runtime::SpoutCollector& out) override {
    if (doc_ >= docs_) return false;
    for (int i = 0; i < per_doc_; ++i) out.emit(runtime::Word{"w" + std::to_string(i), DocumentId{doc_}});
    out.end_document(DocumentId{doc_});
    ++doc_;
    return true;
  }

 private:
  std::uint64_t docs_;
  int per_doc_;
  std::uint64_t doc_ = 0;
};

// Forwards every tuple after a delay drawn from [lo, hi] milliseconds.
class DelayBolt : public runtime::Bolt {
 public:
  DelayBolt(std::uint64_t seed, int lo, int hi) : rng_(seed), pick_(lo, hi) {}
  void execute(const runtime::Tuple& t, runtime::Collector& out) override {
    std::this_thread::sleep_for(std::chrono::milliseconds(pick_(rng_)));
    out.emit(t.payload);
  }

 private:
  std::mt19937_64 rng_;
  std::uniform_int_distribution<int> pick_;
};

runtime::BoltFactory delaying(std::uint64_t seed, int lo, int hi) {
  return [=](const runtime::TaskInfo& info) {
    return std::make_unique<DelayBolt>(seed * 131 + info.index * 7 + info.component.size(), lo, hi);
  };
}

runtime::Topology delay_chain(std::uint64_t seed, int lo_a, int hi_a, int lo_b, int hi_b, std::size_t tasks) {
  runtime::TopologyBuilder b;
  b.set_spout("s", std::make_unique<WordSpout>(3, 2));
  b.add_bolt("a", tasks, delaying(seed, lo_a, hi_a));
  b.add_bolt("b", tasks, delaying(seed + 1, lo_b, hi_b));
  b.connect("s", "a", runtime::Grouping::shuffle());
  b.connect("a", "b", runtime::Grouping::shuffle());
  return b.build();
}

// 4. Direct barrier never interleaves documents; sleep(0) does.
void barrier_correctness(Outcome& o) {
  std::uint64_t direct_interleavings = 0;
  std::uint64_t unordered_stamps = 0;
  for (std::uint64_t run = 0; run < 100; ++run) {
    std::mutex mu;
    std::vector<runtime::ProcessStamp> stamps;
    runtime::RunOptions opts;
    opts.seed = run;
    opts.on_process = [&](const runtime::ProcessStamp& s) {
      std::lock_guard lock(mu);
      stamps.push_back(s);
    };
    auto report = delay_chain(run, 0, 50, 0, 50, 2).run(opts);
    direct_interleavings += report.interleavings;
    std::sort(stamps.begin(), stamps.end(), [](const auto& a, const auto& b) { return a.seq < b.seq; });
    for (std::size_t i = 1; i < stamps.size(); ++i) unordered_stamps += stamps[i - 1].doc > stamps[i].doc ? 1 : 0;
  }

  int sleep_runs_interleaved = 0;
  for (std::uint64_t run = 0; run < 100; ++run) {
    runtime::RunOptions opts;
    opts.seed = run;
    opts.barrier = runtime::BarrierMode::sleeping(0ms);
    auto report = delay_chain(run, 0, 0, 50, 50, 1).run(opts);
    sleep_runs_interleaved += report.interleavings > 0 ? 1 : 0;
  }
  o.require(direct_interleavings == 0 && unordered_stamps == 0, "direct barrier interleaved");
  o.require(sleep_runs_interleaved >= kSleepRunsRequired, "sleep(0) interleaved too rarely");
  o.detail << "direct: " << direct_interleavings << " interleavings over 100 runs; sleep(0): "
           << sleep_runs_interleaved << "/100 runs interleaved";
}

// Counts data tuples per task.
class TallyBolt : public runtime::Bolt {
 public:
  TallyBolt(std::vector<std::uint64_t>& tally, std::mutex& mu, TaskIndex task)
      : tally_(tally), mu_(mu), task_(task) {}
  void execute(const runtime::Tuple&, runtime::Collector&) override {
    std::lock_guard lock(mu_);
    ++tally_[task_];
  }

 private:
  std::vector<std::uint64_t>& tally_;
  std::mutex& mu_;
  TaskIndex task_;
};

// 5. Routing semantics of every grouping.
void grouping_semantics(Outcome& o) {
  using runtime::Grouping;
  using runtime::Router;
  constexpr std::size_t kTasks = 5;
  auto tuple = [](std::string key) { return runtime::Tuple{runtime::Word{std::move(key), DocumentId{0}}}; };

  Router fields_a(Grouping::fields(runtime::term_key), kTasks, 1);
  Router fields_b(Grouping::fields(runtime::term_key), kTasks, 2);
  std::map<std::string, TaskIndex> first;
  bool fields_ok = true;
  std::vector<TaskIndex> out;
  for (std::uint64_t i = 0; i < 1'000'000; ++i) {
    const auto t = tuple("k" + std::to_string(i % 997));
    fields_a.route(t, out);
    const auto task = out.at(0);
    fields_ok = fields_ok && out.size() == 1 && fields_b.route(t).at(0) == task;
    const auto [it, fresh] = first.emplace(std::get<runtime::Word>(t.payload).term, task);
    fields_ok = fields_ok && it->second == task;
  }
  o.require(fields_ok, "fields routing not deterministic");

  Router all(Grouping::all(), kTasks);
  Router global(Grouping::global(), kTasks);
  Router direct(Grouping::direct(), kTasks);
  bool all_ok = true, global_ok = true, direct_ok = true;
  for (std::uint64_t i = 0; i < 100'000; ++i) {
    const auto t = tuple("x");
    auto a = all.route(t);
    std::sort(a.begin(), a.end());
    all_ok = all_ok && a == std::vector<TaskIndex>{0, 1, 2, 3, 4};
    global_ok = global_ok && global.route(t) == std::vector<TaskIndex>{0};
    direct_ok = direct_ok && direct.route(t) == std::vector<TaskIndex>{static_cast<TaskIndex>(i % kTasks)};
  }

  // All grouping through a running topology: each task sees each tuple once.
  std::vector<std::uint64_t> tally(kTasks, 0);
  std::mutex mu;
  runtime::TopologyBuilder b;
  b.set_spout("s", std::make_unique<WordSpout>(4, 250));
  b.add_bolt("t", kTasks, [&](const runtime::TaskInfo& info) {
    return std::make_unique<TallyBolt>(tally, mu, info.index);
  });
  b.connect("s", "t", Grouping::all());
  b.build().run();
  all_ok = all_ok && std::all_of(tally.begin(), tally.end(), [](std::uint64_t n) { return n == 1000; });
  o.require(all_ok, "all grouping");
  o.require(global_ok, "global grouping");
  o.require(direct_ok, "direct grouping");

  Router shuffle(Grouping::shuffle(), kTasks, 12345);
  std::vector<std::uint64_t> counts(kTasks, 0);
  for (int i = 0; i < 100'000; ++i) ++counts[shuffle.route(tuple("x")).at(0)];
  double worst = 0.0;
  for (auto c : counts) worst = std::max(worst, std::abs(static_cast<double>(c) / 20'000.0 - 1.0));
  o.require(worst <= kShuffleTolerance, "shuffle deviates from uniform");
  o.detail << "fields 10^6 routings stable, all/global/direct exact, shuffle max deviation "
           << worst * 100.0 << "%";
}

eval::SyntheticSpec mixed_spec(std::uint64_t documents, std::uint64_t per_doc) {
  eval::SyntheticSpec spec;
  spec.documents = documents;
  spec.background.tweets_per_document = per_doc;
  spec.background.vocabulary = 5000;
  spec.background.zipf = 1.0;
  spec.bursts = {{"earthquake", documents / 2, 80}, {"flooding", documents - 3, 60}};
  spec.topics.push_back({{"final", "goal", "striker"}, {{2, 40}, {documents / 2 + 1, 90}}, 2});
  return spec;
}

// 6. Seeded direct keybased runs agree; clustering variance is observed.
void determinism(Outcome& o) {
  const auto corpus = eval::generate_synthetic(mixed_spec(15, 400), 21).tweets;
  std::vector<std::size_t> counts;
  std::vector<std::vector<WordEvent>> all;
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    keybased::KeybasedConfig cfg;
    cfg.run.seed = seed;
    auto r = keybased::run_keybased(corpus, cfg);
    counts.push_back(r.events.size());
    all.push_back(r.events);
  }
  o.require(counts[0] == counts[1] && counts[1] == counts[2], "event counts differ");
  o.require(all[0] == all[1] && all[1] == all[2], "event lists differ");
  o.require(counts[0] > 0, "no events");

  std::vector<std::size_t> cluster_counts;
  for (int i = 0; i < 3; ++i) {
    clustering::ClusteringConfig cfg;
    cfg.run.seed = std::nullopt;
    cfg.run.barrier = runtime::BarrierMode::sleeping(0ms);
    cluster_counts.push_back(clustering::run_clustering(corpus, cfg).events.size());
  }
  o.detail << "keybased-direct " << counts[0] << "/" << counts[1] << "/" << counts[2]
           << "; clustering sleep(0) unseeded (observed) " << cluster_counts[0] << "/"
           << cluster_counts[1] << "/" << cluster_counts[2];
}

// 7. On a 100k-tweet corpus clustering is slower than keybased and commits
// once per document.
void timing_order(Outcome& o) {
  const auto corpus = eval::generate_synthetic(mixed_spec(20, 5000), 5).tweets;
  auto t0 = Clock::now();
  auto k = keybased::run_keybased(corpus, {});
  const double key_wall = seconds_since(t0);
  t0 = Clock::now();
  auto c = clustering::run_clustering(corpus, {});
  const double cluster_wall = seconds_since(t0);
  o.require(corpus.size() >= 100'000, "corpus has 100k tweets");
  o.require(cluster_wall > key_wall, "clustering not slower than keybased");
  o.require(c.store->commits() == c.report.documents, "commits != documents");
  o.detail << corpus.size() << " tweets: keybased " << key_wall << " s, clustering " << cluster_wall
           << " s; commits " << c.store->commits() << " for " << c.report.documents << " documents ("
           << k.report.documents << " keybased)";
}

// Checks eviction on every persisted snapshot.
class AuditingStore final : public store::Store {
 public:
  explicit AuditingStore(std::uint64_t inactivity) : inactivity_(inactivity) {}
  std::uint64_t violations = 0;
  std::uint64_t audited = 0;

 protected:
  void persist(const store::StoreSnapshot& next) override {
    ++audited;
    for (const auto& c : next.clusters) {
      if (c.last_active_doc.value + inactivity_ <= next.last_doc->value) ++violations;
    }
  }

 private:
  std::uint64_t inactivity_;
};

std::string random_text(std::mt19937_64& rng) {
  static const std::vector<std::string> pieces = {"a", "aa", "aaa", "b", "bbbb", "\xC3\xA9", "\xC3\xA9\xC3\xA9\xC3\xA9",
                                                   "x", "zz", "1", "11", "!", " "};
  std::string s;
  for (std::uint64_t i = 0; i < rng() % 12; ++i) s += pieces[rng() % pieces.size()];
  return s;
}

TermWeights random_weights(std::mt19937_64& rng) {
  std::vector<TermWeights::Entry> e;
  for (std::uint64_t i = 0; i < 1 + rng() % 6; ++i) e.emplace_back("t" + std::to_string(rng() % 40), 1.0);
  std::map<std::string, double> m;
  for (auto& [t, v] : e) m[t] += v;
  TermWeights w(std::vector<TermWeights::Entry>(m.begin(), m.end()));
  w.normalize();
  return w;
}

// 8. Invariant suites.
void invariants(Outcome& o) {
  std::mt19937_64 rng(2026);
  clustering::ClusterParams p;

  std::vector<Cluster> local;
  std::uint64_t weight_violations = 0;
  for (int op = 0; op < 100'000; ++op) {
    const auto kind = rng() % 10;
    if (kind < 7 || local.size() < 2) {
      clustering::assign_tweet(TweetVector{"t", DocumentId{0}, random_weights(rng)}, local, p);
    } else if (kind < 9) {
      auto& c = local[rng() % local.size()];
      clustering::prune_weights(c, p, rng() % 2 ? clustering::PruneRule::New : clustering::PruneRule::Established);
    } else {
      const std::size_t i = rng() % local.size();
      const std::size_t j = rng() % local.size();
      if (i == j) continue;
      clustering::absorb(local[i], local[j]);
      local.erase(local.begin() + static_cast<std::ptrdiff_t>(j));
    }
    for (const auto& c : local) weight_violations += std::abs(c.weights.sum() - 1.0) > kWeightSumTol ? 1 : 0;
    if (local.size() > 200) local.clear();
  }
  o.require(weight_violations == 0, "cluster weights not normalized");

  std::uint64_t collapse_violations = 0;
  for (int i = 0; i < 100'000; ++i) {
    const auto s = random_text(rng);
    const auto once = text::collapse_repeats(s);
    collapse_violations += text::collapse_repeats(once) == once ? 0 : 1;
  }
  o.require(collapse_violations == 0, "collapse_repeats not idempotent");

  std::uint64_t vector_violations = 0;
  const auto words = eval::generate_synthetic(mixed_spec(3, 300), 4).tweets;
  for (const auto& t : words) {
    const auto v = text::Preprocessor{}.vector(t.text);
    if (!v.empty()) vector_violations += std::abs(v.sum() - 1.0) > kWeightSumTol ? 1 : 0;
  }
  o.require(vector_violations == 0, "tweet vectors do not sum to 1");

  auto audit = std::make_shared<AuditingStore>(p.inactivity_blocks);
  clustering::ClusteringConfig cfg;
  cfg.store = audit;
  eval::SyntheticSpec churn = mixed_spec(16, 120);
  churn.topics.push_back({{"storm", "coast", "surge"}, {{1, 40}, {9, 40}}, 1});
  churn.topics.push_back({{"concert", "stage", "crowd"}, {{4, 45}}, 1});
  auto r = clustering::run_clustering(eval::generate_synthetic(churn, 3).tweets, cfg);
  o.require(audit->violations == 0, "stale cluster survived eviction");
  o.require(audit->audited == r.report.documents, "not every document audited");

  std::uint64_t snapshot_violations = 0;
  for (int i = 0; i < 500; ++i) {
    store::StoreSnapshot s;
    s.last_doc = DocumentId{rng() % 1000};
    for (std::uint64_t k = 0; k < rng() % 5; ++k) {
      Cluster c;
      c.id = k + 1;
      c.weights = random_weights(rng);
      c.total_tweets = 1 + rng() % 400;
      c.last_active_doc = DocumentId{rng() % 1000};
      s.clusters.push_back(c);
    }
    s.next_cluster_id = s.clusters.size() + 1;
    s.word_histories["w" + std::to_string(i)] = {{DocumentId{1}, 1.0 / 3.0}};
    s.word_events.push_back({"quak", DocumentId{2}, std::numeric_limits<double>::infinity(), {}});
    const auto text = store::to_string(s);
    const auto back = store::snapshot_from_string(text);
    snapshot_violations += (back == s && store::to_string(back) == text) ? 0 : 1;
  }
  o.require(snapshot_violations == 0, "snapshot round trip not byte-identical");
  o.detail << "10^5 cluster ops, 10^5 collapse strings, " << words.size() << " vectors, "
           << audit->audited << " audited commits, 500 snapshots";
}

// 9. Worked values.
void worked_values(Outcome& o) {
  const double cos = clustering::cosine(TermWeights({{"a", 1.0}}), TermWeights({{"a", 0.5}, {"b", 0.5}}));
  o.require(std::abs(cos - 0.707107) <= kCosineTol, "cosine");
  const double idf = keybased::idf(10, 4);
  o.require(std::abs(idf - std::log(2.0)) <= kIdfTol, "idf");
  const auto rip = text::Preprocessor{}.vector("RIP Muhammed Ali RIP");
  const auto muhammed = token_of("Muhammed");
  o.require(rip.size() == 3, "RIP vector size");
  o.require(std::abs(rip.weight("rip") - 0.5) <= kVectorTol, "rip weight");
  o.require(std::abs(rip.weight(muhammed) - 0.25) <= kVectorTol, "muhammed weight");
  o.require(std::abs(rip.weight("ali") - 0.25) <= kVectorTol, "ali weight");
  o.detail << "cosine " << cos << ", idf(10,4) " << idf << ", rip " << rip.weight("rip") << " "
           << muhammed << " " << rip.weight(muhammed) << " ali " << rip.weight("ali");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria = {
      {"oracle equivalence (keybased)", oracle_equivalence},
      {"plant-and-detect (keybased)", keybased_plant_and_detect},
      {"plant-and-detect (clustering)", clustering_plant_and_detect},
      {"barrier correctness", barrier_correctness},
      {"grouping semantics", grouping_semantics},
      {"determinism", determinism},
      {"timing ordering", timing_order},
      {"invariant suites", invariants},
      {"worked values", worked_values},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    const auto t0 = Clock::now();
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    std::printf("%s %zu %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.str().c_str(), seconds_since(t0));
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
