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

#include <algorithm>
#include <cmath>
#include <limits>

#include "burstflow/sources.hpp"

namespace burstflow::keybased {

void KeyParams::validate() const {
  if (common_word_threshold < 1) throw ParamError("common word threshold must be at least 1");
  if (!(tfidf_event_rate > 1.0)) throw ParamError("tf-idf event rate must be greater than 1");
  if (!(absolute_floor >= 0.0)) throw ParamError("absolute floor must be non-negative");
}

double tf(std::uint64_t term_count, std::uint64_t doc_total_terms) {
  if (doc_total_terms == 0) throw UndefinedDocument("tf of an empty document");
  return static_cast<double>(term_count) / static_cast<double>(doc_total_terms);
}

double idf(std::uint64_t docs_processed, std::uint64_t doc_frequency) {
  return std::log(static_cast<double>(docs_processed) / static_cast<double>(1 + doc_frequency));
}

double increment_rate(double current, double previous) {
  if (current <= 0.0) return 0.0;
  if (previous <= 0.0) return std::numeric_limits<double>::infinity();
  return current / previous;
}

bool is_event(double rate, double current, const KeyParams& params) {
  return rate >= params.tfidf_event_rate && current > params.absolute_floor;
}

void TfidfHistory::record(DocumentId doc, double value) {
  auto it = std::lower_bound(points_.begin(), points_.end(), doc,
                             [](const HistoryPoint& p, DocumentId d) { return p.doc < d; });
  if (it != points_.end() && it->doc == doc) {
    it->tfidf = value;
    return;
  }
  if (it == points_.begin() && points_.size() >= capacity_) return;  // older than everything kept
  points_.insert(it, HistoryPoint{doc, value});
  while (points_.size() > capacity_) points_.pop_front();
}

std::optional<DocumentId> TfidfHistory::last_doc() const {
  if (points_.empty()) return std::nullopt;
  return points_.back().doc;
}

std::optional<CandidateStats> WordCounter::add(const std::string& term, DocumentId doc) {
  if (doc != doc_) {
    doc_ = doc;
    tokens_ = 0;
    common_.clear();
  }
  auto& e = entries_[term];
  if (e.doc != doc) {
    e.prev_count = (e.doc && e.doc->next() == doc) ? e.count : 0;
    e.prev_df = e.df;
    e.count = 0;
    ++e.df;
    e.doc = doc;
  }
  ++e.count;
  ++tokens_;
  if (e.count != threshold_) return std::nullopt;
  common_.push_back(term);
  return stats_of(e);
}

CandidateStats WordCounter::stats_of(const Entry& e) const {
  return CandidateStats{e.count, e.df, e.prev_count, e.prev_df, tokens_};
}

std::vector<std::pair<std::string, CandidateStats>> WordCounter::common_terms(DocumentId doc) const {
  std::vector<std::pair<std::string, CandidateStats>> out;
  if (doc != doc_) return out;
  out.reserve(common_.size());
  for (const auto& term : common_) out.emplace_back(term, stats_of(entries_.at(term)));
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

Evaluation evaluate(const CandidateStats& stats, DocumentId doc, std::uint64_t total,
                    std::uint64_t previous_total, const KeyParams& params) {
  Evaluation ev;
  if (total > 0) ev.current = tfidf(stats.count, total, doc.value + 1, stats.doc_frequency);
  if (doc.value > 0 && previous_total > 0 && stats.previous_count > 0) {
    ev.previous =
        tfidf(stats.previous_count, previous_total, doc.value, stats.previous_doc_frequency);
  }
  ev.rate = increment_rate(ev.current, ev.previous);
  ev.event = is_event(ev.rate, ev.current, params);
  return ev;
}

EventDetector::EventDetector(KeyParams params, Mode mode) : params_(params), mode_(mode) {
  params_.validate();
}

void EventDetector::on_candidate(const std::string& term, DocumentId doc,
                                 const CandidateStats& stats, TaskIndex task, bool final_counts) {
  auto& partial = partials_[doc][task];
  partial = std::max(partial, stats.partition_tokens);

  if (mode_ == Mode::AtDocumentEnd) {
    if (final_counts) finals_[doc][term] = stats;
    return;
  }
  if (final_counts) return;
  if (!scored_.emplace(std::pair{doc, term}, true).second) return;
  const auto prev = totals_.find(DocumentId{doc.value - 1});
  const std::uint64_t previous_total =
      doc.value == 0 ? 0 : (prev != totals_.end() ? prev->second : partial_total(DocumentId{doc.value - 1}));
  score(term, doc, stats, partial_total(doc), previous_total);
}

void EventDetector::on_partition_total(DocumentId doc, TaskIndex task, std::uint64_t tokens) {
  partials_[doc][task] = tokens;
}

std::uint64_t EventDetector::partial_total(DocumentId doc) const {
  auto it = partials_.find(doc);
  if (it == partials_.end()) return 0;
  std::uint64_t sum = 0;
  for (const auto& [task, n] : it->second) sum += n;
  return sum;
}

std::uint64_t EventDetector::document_total(DocumentId doc) const {
  auto it = totals_.find(doc);
  return it == totals_.end() ? 0 : it->second;
}

const TermStats* EventDetector::stats(const std::string& term) const {
  auto it = terms_.find(term);
  return it == terms_.end() ? nullptr : &it->second;
}

void EventDetector::score(const std::string& term, DocumentId doc, const CandidateStats& stats,
                          std::uint64_t total, std::uint64_t previous_total) {
  const Evaluation ev = evaluate(stats, doc, total, previous_total, params_);
  auto& ts = terms_[term];
  ts.count_current = stats.count;
  ts.doc_frequency = stats.doc_frequency;
  if (doc.value > 0) {
    const DocumentId before{doc.value - 1};
    const auto last = ts.history.last_doc();
    if (!last || *last < before) ts.history.record(before, ev.previous);
  }
  ts.history.record(doc, ev.current);
  if (ev.event) pending_.push_back(WordEvent{term, doc, ev.rate, ts.history.points()});
}

std::vector<WordEvent> EventDetector::finish_document(DocumentId doc) {
  const std::uint64_t total = partial_total(doc);
  totals_[doc] = total;

  if (mode_ == Mode::AtDocumentEnd) {
    const std::uint64_t previous_total = doc.value == 0 ? 0 : document_total(DocumentId{doc.value - 1});
    if (auto it = finals_.find(doc); it != finals_.end()) {
      for (const auto& [term, stats] : it->second) score(term, doc, stats, total, previous_total);
    }
  }

  // Keep the closed document and its predecessor; later documents may
  // already be in flight in sleep mode.
  const auto keep_from = DocumentId{doc.value == 0 ? 0 : doc.value - 1};
  std::erase_if(finals_, [&](const auto& kv) { return kv.first <= doc; });
  std::erase_if(partials_, [&](const auto& kv) { return kv.first < keep_from; });
  std::erase_if(totals_, [&](const auto& kv) { return kv.first < keep_from; });
  std::erase_if(scored_, [&](const auto& kv) { return kv.first.first < keep_from; });

  return std::exchange(pending_, {});
}

namespace {

class CountBolt final : public runtime::Bolt {
 public:
  explicit CountBolt(std::uint64_t threshold) : counter_(threshold) {}

  void execute(const runtime::Tuple& tuple, runtime::Collector& out) override {
    const auto& word = std::get<runtime::Word>(tuple.payload);
    if (auto stats = counter_.add(word.term, word.doc)) {
      out.emit(runtime::Candidate{word.term, word.doc, *stats, runtime::CandidatePhase::Threshold});
    }
  }

  void finish_document(DocumentId doc, runtime::Collector& out) override {
    for (auto& [term, stats] : counter_.common_terms(doc)) {
      out.emit(runtime::Candidate{std::move(term), doc, stats, runtime::CandidatePhase::Final});
    }
    out.emit(runtime::PartitionTotal{doc, counter_.tokens(doc)});
  }

 private:
  WordCounter counter_;
};

class DetectorBolt final : public runtime::Bolt {
 public:
  DetectorBolt(KeyParams params, EventDetector::Mode mode, std::shared_ptr<store::Store> store,
               std::shared_ptr<KeybasedSink> sink)
      : detector_(params, mode), store_(std::move(store)), sink_(std::move(sink)) {}

  void execute(const runtime::Tuple& tuple, runtime::Collector&) override {
    if (const auto* c = std::get_if<runtime::Candidate>(&tuple.payload)) {
      detector_.on_candidate(c->term, c->doc, c->stats, tuple.source_task,
                             c->phase == runtime::CandidatePhase::Final);
    } else if (const auto* p = std::get_if<runtime::PartitionTotal>(&tuple.payload)) {
      detector_.on_partition_total(p->doc, tuple.source_task, p->tokens);
    }
  }

  void finish_document(DocumentId doc, runtime::Collector&) override {
    store::DocumentChanges changes;
    changes.word_events = detector_.finish_document(doc);
    for (const auto& e : changes.word_events) changes.histories[e.term] = e.history;
    store_->commit_document(doc, changes);
    sink_->events.insert(sink_->events.end(), changes.word_events.begin(),
                         changes.word_events.end());
    ++sink_->documents;
  }

 private:
  EventDetector detector_;
  std::shared_ptr<store::Store> store_;
  std::shared_ptr<KeybasedSink> sink_;
};

}  // namespace

runtime::Topology build_topology(std::unique_ptr<runtime::Spout> spout, const KeybasedConfig& config,
                                 std::shared_ptr<store::Store> store,
                                 std::shared_ptr<KeybasedSink> sink) {
  config.params.validate();
  const auto mode = config.run.barrier.kind == runtime::BarrierMode::Kind::Sleep
                        ? EventDetector::Mode::OnArrival
                        : EventDetector::Mode::AtDocumentEnd;
  const KeyParams params = config.params;

  runtime::TopologyBuilder builder;
  builder.set_spout(kSpoutName, std::move(spout))
      .add_bolt(kCountBolt, config.count_tasks,
                [threshold = params.common_word_threshold](const runtime::TaskInfo&) {
                  return std::make_unique<CountBolt>(threshold);
                })
      .add_bolt(kDetectorBolt, 1,
                [=](const runtime::TaskInfo&) {
                  return std::make_unique<DetectorBolt>(params, mode, store, sink);
                })
      .connect(kSpoutName, kCountBolt, runtime::Grouping::fields(runtime::term_key))
      .connect(kCountBolt, kDetectorBolt, runtime::Grouping::global());
  return builder.build();
}

KeybasedResult run_keybased(std::vector<ingest::RawTweet> corpus, KeybasedConfig config) {
  KeybasedResult result;
  result.store = config.store ? config.store : std::make_shared<store::MemoryStore>();
  auto sink = std::make_shared<KeybasedSink>();
  auto source = std::make_shared<sources::SourceStats>();
  auto spout = std::make_unique<sources::WordSpout>(
      ingest::Replayer(std::move(corpus), config.window), config.preprocessor, source);

  auto topology = build_topology(std::move(spout), config, result.store, sink);
  result.report = topology.run(config.run);
  result.events = std::move(sink->events);
  result.tweets = source->tweets;
  result.tokens = source->tokens;
  result.stream_start = source->stream_start;
  return result;
}

}  // namespace burstflow::keybased
