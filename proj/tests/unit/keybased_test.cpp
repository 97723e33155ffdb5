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

#include "burstflow/keybased.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "burstflow/eval.hpp"
#include "oracle.hpp"

namespace burstflow::keybased {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::int64_t kStart = 1464652800;

TEST(Formulas, TermFrequency) {
  EXPECT_DOUBLE_EQ(tf(2, 4), 0.5);
  EXPECT_DOUBLE_EQ(tf(0, 4), 0.0);
  EXPECT_DOUBLE_EQ(tf(4, 4), 1.0);
  EXPECT_THROW(tf(0, 0), UndefinedDocument);
}

TEST(Formulas, InverseDocumentFrequency) {
  EXPECT_NEAR(idf(10, 4), 0.6931471805599453, 1e-12);
  EXPECT_DOUBLE_EQ(idf(1, 0), 0.0);
  EXPECT_DOUBLE_EQ(idf(10, 9), 0.0);
  EXPECT_LT(idf(5, 5), 0.0);
}

TEST(Formulas, TfidfProduct) {
  EXPECT_NEAR(tfidf(2, 4, 10, 4), 0.5 * std::log(2.0), 1e-12);
  EXPECT_NEAR(tfidf(2, 4, 10, 4), 0.346574, 1e-6);
  EXPECT_DOUBLE_EQ(tfidf(0, 4, 10, 4), 0.0);
}

// A word present in every one of N documents has df = N after the current
// document is counted, so its idf is ln(N / (N + 1)) < 0.
TEST(Formulas, UbiquitousWordNeverScoresPositive) {
  for (std::uint64_t n = 1; n < 500; ++n) EXPECT_LE(tfidf(3, 10, n, n), 0.0);
}

TEST(Formulas, IncrementRate) {
  EXPECT_DOUBLE_EQ(increment_rate(0.4, 0.2), 2.0);
  EXPECT_EQ(increment_rate(0.4, 0.0), kInf);
  EXPECT_EQ(increment_rate(0.4, -0.1), kInf);
  EXPECT_DOUBLE_EQ(increment_rate(0.0, 0.3), 0.0);
  EXPECT_DOUBLE_EQ(increment_rate(-0.1, 0.3), 0.0);
}

TEST(Formulas, EventNeedsRateAndFloor) {
  KeyParams p;
  EXPECT_TRUE(is_event(2.0, 0.01, p));
  EXPECT_FALSE(is_event(1.99, 0.01, p));
  EXPECT_TRUE(is_event(kInf, 0.01, p));
  EXPECT_FALSE(is_event(kInf, 1e-4, p));
  EXPECT_FALSE(is_event(kInf, 0.0, p));
}

TEST(KeyParams, Validation) {
  EXPECT_NO_THROW(KeyParams{}.validate());
  EXPECT_THROW((KeyParams{0, 2.0, 1e-4}.validate()), ParamError);
  EXPECT_THROW((KeyParams{10, 1.0, 1e-4}.validate()), ParamError);
  EXPECT_THROW((KeyParams{10, 2.0, -1.0}.validate()), ParamError);
}

TEST(TfidfHistory, BoundedAndOrdered) {
  TfidfHistory h;
  for (std::uint64_t d = 0; d < 25; ++d) h.record(DocumentId{d}, static_cast<double>(d));
  const auto pts = h.points();
  ASSERT_EQ(pts.size(), kHistoryCapacity);
  EXPECT_EQ(pts.front().doc, DocumentId{15});
  EXPECT_EQ(pts.back().doc, DocumentId{24});
}

TEST(TfidfHistory, RandomRecordsKeepInvariants) {
  std::mt19937_64 rng(17);
  for (int round = 0; round < 200; ++round) {
    TfidfHistory h;
    for (int i = 0; i < 60; ++i) {
      h.record(DocumentId{rng() % 40}, static_cast<double>(rng() % 100));
      const auto pts = h.points();
      EXPECT_LE(pts.size(), kHistoryCapacity);
      for (std::size_t k = 1; k < pts.size(); ++k) EXPECT_LT(pts[k - 1].doc, pts[k].doc);
    }
  }
}

TEST(TfidfHistory, SameDocumentOverwrites) {
  TfidfHistory h;
  h.record(DocumentId{3}, 1.0);
  h.record(DocumentId{3}, 2.0);
  ASSERT_EQ(h.size(), 1u);
  EXPECT_DOUBLE_EQ(h.points()[0].tfidf, 2.0);
}

TEST(WordCounter, EmitsExactlyAtThreshold) {
  WordCounter c(3);
  const DocumentId d{0};
  EXPECT_FALSE(c.add("fire", d));
  EXPECT_FALSE(c.add("fire", d));
  auto s = c.add("fire", d);
  ASSERT_TRUE(s.has_value());
  EXPECT_EQ(s->count, 3u);
  EXPECT_EQ(s->doc_frequency, 1u);
  EXPECT_EQ(s->partition_tokens, 3u);
  EXPECT_FALSE(c.add("fire", d));
  EXPECT_FALSE(c.add("fire", d));
}

TEST(WordCounter, BelowThresholdNeverEmits) {
  WordCounter c(3);
  EXPECT_FALSE(c.add("ash", DocumentId{0}));
  EXPECT_FALSE(c.add("ash", DocumentId{0}));
  EXPECT_TRUE(c.common_terms(DocumentId{0}).empty());
}

TEST(WordCounter, TracksPreviousDocument) {
  WordCounter c(1);
  for (int i = 0; i < 4; ++i) c.add("fire", DocumentId{0});
  c.add("smoke", DocumentId{0});
  c.add("fire", DocumentId{1});
  auto common = c.common_terms(DocumentId{1});
  ASSERT_EQ(common.size(), 1u);
  EXPECT_EQ(common[0].second.count, 1u);
  EXPECT_EQ(common[0].second.previous_count, 4u);
  EXPECT_EQ(common[0].second.doc_frequency, 2u);
  EXPECT_EQ(common[0].second.previous_doc_frequency, 1u);
  EXPECT_EQ(c.tokens(DocumentId{1}), 1u);
  EXPECT_EQ(c.tokens(DocumentId{0}), 0u);

  // A gap document resets the previous count.
  c.add("fire", DocumentId{3});
  auto later = c.common_terms(DocumentId{3});
  ASSERT_EQ(later.size(), 1u);
  EXPECT_EQ(later[0].second.previous_count, 0u);
  EXPECT_EQ(later[0].second.doc_frequency, 3u);
}

TEST(Evaluate, MatchesHandComputation) {
  KeyParams p;
  CandidateStats s{10, 2, 1, 1, 0};
  // doc 4: N = 5, df = 2; doc 3: N = 4, df = 1.
  const auto ev = evaluate(s, DocumentId{4}, 100, 50, p);
  EXPECT_NEAR(ev.current, 0.1 * std::log(5.0 / 3.0), 1e-12);
  EXPECT_NEAR(ev.previous, (1.0 / 50.0) * std::log(4.0 / 2.0), 1e-12);
  EXPECT_NEAR(ev.rate, ev.current / ev.previous, 1e-12);
  EXPECT_TRUE(ev.event);
}

TEST(Evaluate, NewWordIsInfiniteRate) {
  const auto ev = evaluate(CandidateStats{12, 1, 0, 0, 0}, DocumentId{9}, 200, 150, KeyParams{});
  EXPECT_EQ(ev.rate, kInf);
  EXPECT_TRUE(ev.event);
}

TEST(EventDetector, AtDocumentEndUsesExactTotals) {
  EventDetector det(KeyParams{2, 2.0, 1e-4}, EventDetector::Mode::AtDocumentEnd);
  // doc 0: everything new but idf(1, 1) < 0.
  det.on_candidate("quake", DocumentId{0}, {3, 1, 0, 0, 3}, 0, true);
  det.on_partition_total(DocumentId{0}, 0, 5);
  det.on_partition_total(DocumentId{0}, 1, 7);
  EXPECT_TRUE(det.finish_document(DocumentId{0}).empty());
  EXPECT_EQ(det.document_total(DocumentId{0}), 12u);

  det.on_partition_total(DocumentId{1}, 0, 4);
  det.on_partition_total(DocumentId{1}, 1, 6);
  EXPECT_TRUE(det.finish_document(DocumentId{1}).empty());

  det.on_candidate("storm", DocumentId{2}, {5, 1, 0, 0, 5}, 1, true);
  det.on_partition_total(DocumentId{2}, 0, 3);
  det.on_partition_total(DocumentId{2}, 1, 7);
  auto events = det.finish_document(DocumentId{2});
  ASSERT_EQ(events.size(), 1u);
  EXPECT_EQ(events[0].term, "storm");
  EXPECT_EQ(events[0].doc, DocumentId{2});
  EXPECT_EQ(events[0].increment_rate, kInf);
  ASSERT_EQ(events[0].history.size(), 2u);
  EXPECT_EQ(events[0].history[0], (HistoryPoint{DocumentId{1}, 0.0}));
  EXPECT_NEAR(events[0].history[1].tfidf, 0.5 * std::log(3.0 / 2.0), 1e-12);
  ASSERT_NE(det.stats("storm"), nullptr);
  EXPECT_EQ(det.stats("storm")->count_current, 5u);
}

TEST(EventDetector, OnArrivalScoresThresholdCrossingsOnce) {
  EventDetector det(KeyParams{2, 2.0, 1e-4}, EventDetector::Mode::OnArrival);
  det.on_partition_total(DocumentId{0}, 0, 10);
  det.finish_document(DocumentId{0});
  det.finish_document(DocumentId{1});
  det.on_candidate("quake", DocumentId{2}, {2, 1, 0, 0, 4}, 0, false);
  det.on_candidate("quake", DocumentId{2}, {2, 1, 0, 0, 4}, 0, false);
  det.on_candidate("quake", DocumentId{2}, {9, 1, 0, 0, 20}, 0, true);
  auto events = det.finish_document(DocumentId{2});
  ASSERT_EQ(events.size(), 1u);
  // Scored against the partial total at arrival time.
  EXPECT_NEAR(events[0].history.back().tfidf, 0.5 * std::log(3.0 / 2.0), 1e-12);
}

ingest::RawTweet tweet(int id, std::int64_t ts, std::string text) {
  return {std::to_string(id), ts, std::move(text), std::nullopt};
}

testing::EventSet as_set(const std::vector<WordEvent>& events) {
  testing::EventSet out;
  for (const auto& e : events) out.emplace(e.term, e.doc.value);
  return out;
}

eval::SyntheticSpec small_spec(std::uint64_t docs, std::uint64_t per_doc) {
  eval::SyntheticSpec spec;
  spec.documents = docs;
  spec.background.tweets_per_document = per_doc;
  spec.background.vocabulary = 300;
  spec.background.zipf = 1.0;
  spec.bursts.push_back({"quake", docs - 2, 40});
  spec.bursts.push_back({"flood", docs / 2, 25});
  return spec;
}

TEST(RunKeybased, PlantedBurstIsDetected) {
  std::vector<ingest::RawTweet> corpus;
  int id = 0;
  for (int d = 0; d < 10; ++d) {
    const std::int64_t base = kStart + d * 360;
    for (int i = 0; i < 30; ++i) corpus.push_back(tweet(++id, base + i, "coffee morning traffic"));
    if (d == 9) {
      for (int i = 0; i < 50; ++i) corpus.push_back(tweet(++id, base + 100 + i, "quake"));
    }
  }
  KeybasedConfig cfg;
  cfg.count_tasks = 3;
  auto r = run_keybased(corpus, cfg);
  EXPECT_EQ(as_set(r.events), (testing::EventSet{{"quak", 9}}));
  EXPECT_EQ(r.report.documents, 10u);
  EXPECT_EQ(r.store->commits(), 10u);
  EXPECT_EQ(r.tweets, corpus.size());
  EXPECT_EQ(r.stream_start, kStart);
}

TEST(RunKeybased, EmptyCorpus) {
  auto r = run_keybased({}, KeybasedConfig{});
  EXPECT_TRUE(r.events.empty());
  EXPECT_EQ(r.report.documents, 0u);
  EXPECT_EQ(r.store->commits(), 0u);
}

TEST(RunKeybased, EmptyDocumentProducesNoEvents) {
  std::vector<ingest::RawTweet> corpus;
  for (int i = 0; i < 12; ++i) corpus.push_back(tweet(i, kStart + i, "storm"));
  for (int i = 0; i < 12; ++i) corpus.push_back(tweet(100 + i, kStart + 2 * 360 + i, "storm"));
  auto r = run_keybased(corpus, KeybasedConfig{});
  for (const auto& e : r.events) EXPECT_NE(e.doc, DocumentId{1});
  EXPECT_EQ(r.store->commits(), 3u);
}

// Streaming result equals the offline scan for several task counts, queue
// bounds, thresholds and seeds.
TEST(RunKeybased, MatchesBatchOracle) {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    auto spec = small_spec(8, 60);
    auto corpus = eval::generate_synthetic(spec, seed).tweets;
    for (std::size_t tasks : {1u, 3u, 5u}) {
      KeybasedConfig cfg;
      cfg.count_tasks = tasks;
      cfg.params.common_word_threshold = 2 + seed % 4;
      cfg.run.queue_bound = tasks == 5 ? 2 : 10000;
      cfg.run.seed = seed;
      const auto streamed = as_set(run_keybased(corpus, cfg).events);
      const auto docs = testing::tokenize_documents(corpus);
      const auto expected =
          testing::batch_keybased(docs, {cfg.params.common_word_threshold, 2.0, 1e-4});
      EXPECT_EQ(streamed, expected) << "seed " << seed << " tasks " << tasks;
      EXPECT_TRUE(expected.contains({"quak", 6})) << seed;
    }
  }
}

TEST(RunKeybased, HistoriesAreStoredForEventWords) {
  auto corpus = eval::generate_synthetic(small_spec(8, 60), 3).tweets;
  auto r = run_keybased(corpus, KeybasedConfig{});
  const auto snap = r.store->snapshot();
  EXPECT_EQ(snap.word_events, r.events);
  for (const auto& e : r.events) {
    ASSERT_TRUE(snap.word_histories.contains(e.term));
    EXPECT_LE(e.history.size(), kHistoryCapacity);
    EXPECT_EQ(e.history.back().doc, e.doc);
    EXPECT_TRUE(e.increment_rate >= 2.0);
  }
}

TEST(RunKeybased, DirectRunsAreDeterministic) {
  auto corpus = eval::generate_synthetic(small_spec(8, 60), 8).tweets;
  KeybasedConfig cfg;
  cfg.run.seed = 4;
  const auto a = run_keybased(corpus, cfg).events;
  const auto b = run_keybased(corpus, cfg).events;
  EXPECT_EQ(a, b);
}

TEST(RunKeybased, SleepModeCommitsOncePerDocument) {
  auto corpus = eval::generate_synthetic(small_spec(6, 40), 2).tweets;
  KeybasedConfig cfg;
  cfg.run.barrier = runtime::BarrierMode::sleeping(std::chrono::milliseconds(1));
  auto r = run_keybased(corpus, cfg);
  EXPECT_EQ(r.store->commits(), r.report.documents);
  EXPECT_EQ(r.report.documents, 6u);
}

// Fields grouping partitions terms, so per-task token totals add up to the
// number of tokens the spout emitted.
TEST(RunKeybased, TermCountConservation) {
  auto corpus = eval::generate_synthetic(small_spec(5, 80), 5).tweets;
  const auto docs = testing::tokenize_documents(corpus);
  std::uint64_t tokens = 0;
  for (const auto& d : docs) tokens += d.size();
  KeybasedConfig cfg;
  cfg.count_tasks = 4;
  auto r = run_keybased(corpus, cfg);
  EXPECT_EQ(r.tokens, tokens);
  EXPECT_EQ(r.report.processed.at(kCountBolt), tokens);
}

TEST(RunKeybased, InvalidParamsRejected) {
  KeybasedConfig cfg;
  cfg.params.tfidf_event_rate = 0.5;
  EXPECT_THROW(run_keybased({}, cfg), ParamError);
}

}  // namespace
}  // namespace burstflow::keybased
