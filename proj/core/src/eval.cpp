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

#include "burstflow/eval.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <unordered_set>

#include "burstflow/preprocess.hpp"
#include "burstflow/serialize.hpp"
#include "json_codec.hpp"

namespace burstflow::eval {

using codec::json;

const char* to_string(Method m) {
  switch (m) {
    case Method::KeybasedSleep:
      return "keybased-sleep";
    case Method::KeybasedDirect:
      return "keybased-direct";
    case Method::Clustering:
      return "clustering";
  }
  return "?";
}

Method method_from_string(const std::string& s) {
  if (s == "keybased-sleep") return Method::KeybasedSleep;
  if (s == "keybased-direct") return Method::KeybasedDirect;
  if (s == "clustering") return Method::Clustering;
  throw Error("unknown method '" + s + "'");
}

RunReport make_report(Method method, const keybased::KeybasedResult& r, std::string corpus) {
  RunReport rep;
  rep.method = method;
  rep.wall_time = r.report.wall_seconds;
  rep.documents = r.report.documents;
  rep.event_count = r.events.size();
  rep.store_commits = r.store ? r.store->commits() : 0;
  rep.corpus = std::move(corpus);
  rep.tweets = r.tweets;
  rep.tuples = r.report.tuples_emitted;
  rep.interleavings = r.report.interleavings;
  rep.per_document = r.report.per_document;
  return rep;
}

RunReport make_report(const clustering::ClusteringResult& r, std::string corpus) {
  RunReport rep;
  rep.method = Method::Clustering;
  rep.wall_time = r.report.wall_seconds;
  rep.documents = r.report.documents;
  rep.event_count = r.events.size();
  rep.store_commits = r.store ? r.store->commits() : 0;
  rep.corpus = std::move(corpus);
  rep.tweets = r.tweets;
  rep.skipped = r.skipped;
  rep.tuples = r.report.tuples_emitted;
  rep.interleavings = r.report.interleavings;
  rep.per_document = r.report.per_document;
  return rep;
}

std::string to_json(const RunReport& r) {
  json docs = json::array();
  for (const auto& d : r.per_document) {
    docs.push_back({{"doc", d.doc.value}, {"tuples", d.tuples}, {"seconds", d.seconds}});
  }
  json j{{"method", to_string(r.method)},
         {"wall_time", r.wall_time},
         {"documents", r.documents},
         {"event_count", r.event_count},
         {"store_commits", r.store_commits},
         {"corpus", r.corpus},
         {"tweets", r.tweets},
         {"skipped", r.skipped},
         {"tuples", r.tuples},
         {"interleavings", r.interleavings},
         {"per_document", docs}};
  return j.dump(2);
}

RunReport run_report_from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    RunReport r;
    r.method = method_from_string(j.at("method").get<std::string>());
    r.wall_time = j.at("wall_time").get<double>();
    r.documents = j.at("documents").get<std::uint64_t>();
    r.event_count = j.at("event_count").get<std::uint64_t>();
    r.store_commits = j.at("store_commits").get<std::uint64_t>();
    r.corpus = j.at("corpus").get<std::string>();
    r.tweets = j.value("tweets", std::uint64_t{0});
    r.skipped = j.value("skipped", std::uint64_t{0});
    r.tuples = j.value("tuples", std::uint64_t{0});
    r.interleavings = j.value("interleavings", std::uint64_t{0});
    for (const auto& d : j.value("per_document", json::array())) {
      r.per_document.push_back({DocumentId{d.at("doc").get<std::uint64_t>()},
                                d.at("tuples").get<std::uint64_t>(), d.at("seconds").get<double>()});
    }
    return r;
  } catch (const json::exception& e) {
    throw Error(std::string("bad run report: ") + e.what());
  }
}

namespace {

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

template <typename Event, typename Parse>
std::vector<Event> read_events(const std::filesystem::path& path, const std::string& corpus,
                               Parse parse) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  std::vector<Event> out;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.empty()) continue;
    if (!corpus.empty()) {
      const auto tag = serialize::corpus_of(line);
      if (tag != corpus) {
        throw FingerprintMismatch(path.string() + ":" + std::to_string(n) + ": corpus " +
                                  (tag.empty() ? "<none>" : tag) + " differs from " + corpus);
      }
    }
    out.push_back(parse(line));
  }
  return out;
}

}  // namespace

void write_text(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out << content;
  if (!out) throw Error("short write to " + path.string());
}

void write_report(const std::filesystem::path& path, const RunReport& report) {
  write_text(path, to_json(report) + "\n");
}

RunReport read_report(const std::filesystem::path& path) {
  return run_report_from_json(read_text(path));
}

OverlapReport compare(std::span<const WordEvent> words, std::span<const ClusterEvent> clusters) {
  std::set<std::string> keywords;
  for (const auto& w : words) keywords.insert(w.term);

  OverlapReport r;
  r.total_clusters = clusters.size();
  r.total_keywords = keywords.size();
  std::set<std::string> covered;
  for (const auto& c : clusters) {
    bool hit = false;
    for (const auto& [term, weight] : c.top_terms) {
      if (keywords.contains(term)) {
        hit = true;
        covered.insert(term);
      }
    }
    if (hit) ++r.clusters_containing_keywords;
  }
  r.keywords_in_clusters = covered.size();
  if (r.total_clusters > 0) {
    r.cluster_rate = static_cast<double>(r.clusters_containing_keywords) / r.total_clusters;
  }
  if (r.total_keywords > 0) {
    r.keyword_rate = static_cast<double>(r.keywords_in_clusters) / r.total_keywords;
  }
  return r;
}

std::string to_json(const OverlapReport& r) {
  return json{{"clusters_containing_keywords", r.clusters_containing_keywords},
              {"total_clusters", r.total_clusters},
              {"keywords_in_clusters", r.keywords_in_clusters},
              {"total_keywords", r.total_keywords},
              {"cluster_rate", r.cluster_rate},
              {"keyword_rate", r.keyword_rate}}
      .dump(2);
}

void write_word_events(const std::filesystem::path& path, std::span<const WordEvent> events,
                       const std::string& corpus) {
  std::string out;
  for (const auto& e : events) out += serialize::to_line(e, corpus) + "\n";
  write_text(path, out);
}

void write_cluster_events(const std::filesystem::path& path,
                          std::span<const ClusterEvent> events, const std::string& corpus) {
  std::string out;
  for (const auto& e : events) out += serialize::to_line(e, corpus) + "\n";
  write_text(path, out);
}

std::vector<WordEvent> read_word_events(const std::filesystem::path& path,
                                        const std::string& corpus) {
  return read_events<WordEvent>(path, corpus, serialize::parse_word_event);
}

std::vector<ClusterEvent> read_cluster_events(const std::filesystem::path& path,
                                              const std::string& corpus) {
  return read_events<ClusterEvent>(path, corpus, serialize::parse_cluster_event);
}

std::string chart_csv(const WordEvent& e) {
  std::ostringstream out;
  out.precision(17);
  out << "docId,tfidf\n";
  for (const auto& p : e.history) out << p.doc.value << ',' << p.tfidf << '\n';
  return out.str();
}

std::vector<std::filesystem::path> export_charts(const std::filesystem::path& dir,
                                                 std::span<const WordEvent> events) {
  std::vector<std::filesystem::path> paths;
  std::filesystem::create_directories(dir);
  for (const auto& e : events) {
    auto path = dir / (e.term + "-" + std::to_string(e.doc.value) + ".csv");
    write_text(path, chart_csv(e));
    paths.push_back(std::move(path));
  }
  return paths;
}

SyntheticSpec parse_synthetic_spec(const std::string& json_text) {
  try {
    const json j = json::parse(json_text);
    SyntheticSpec s;
    s.documents = j.value("documents", s.documents);
    s.window_seconds = j.value("window_seconds", s.window_seconds);
    s.start = j.value("start", s.start);
    if (j.contains("background")) {
      const auto& b = j["background"];
      s.background.tweets_per_document = b.value("tweets_per_document", std::uint64_t{0});
      s.background.vocabulary = b.value("vocabulary", s.background.vocabulary);
      if (b.contains("words_per_tweet")) {
        s.background.min_words = b["words_per_tweet"].at(0).get<std::uint64_t>();
        s.background.max_words = b["words_per_tweet"].at(1).get<std::uint64_t>();
      }
      s.background.zipf = b.value("zipf", 0.0);
    }
    if (j.contains("constant_words")) {
      s.constant_words.count = j["constant_words"].value("count", std::uint64_t{0});
      s.constant_words.occurrences_per_document =
          j["constant_words"].value("occurrences_per_document", std::uint64_t{0});
    }
    for (const auto& b : j.value("bursts", json::array())) {
      s.bursts.push_back({b.at("term").get<std::string>(), b.at("document").get<std::uint64_t>(),
                          b.at("occurrences").get<std::uint64_t>()});
    }
    for (const auto& t : j.value("topics", json::array())) {
      TopicSpec topic;
      topic.terms = t.at("terms").get<std::vector<std::string>>();
      for (const auto& [doc, n] : t.at("schedule").items()) {
        topic.schedule[std::stoull(doc)] = n.get<std::uint64_t>();
      }
      topic.noise_words = t.value("noise_words", topic.noise_words);
      s.topics.push_back(std::move(topic));
    }
    if (s.window_seconds <= 0) throw Error("window_seconds must be positive");
    if (s.background.min_words > s.background.max_words) throw Error("words_per_tweet min > max");
    if (s.background.vocabulary == 0) throw Error("vocabulary must be positive");
    return s;
  } catch (const json::exception& e) {
    throw Error(std::string("bad synthetic spec: ") + e.what());
  } catch (const std::invalid_argument&) {
    throw Error("bad synthetic spec: schedule keys must be document numbers");
  }
}

SyntheticSpec load_synthetic_spec(const std::filesystem::path& path) {
  return parse_synthetic_spec(read_text(path));
}

std::string pseudo_word(std::uint64_t index) {
  static constexpr std::string_view kConsonants = "bdfgkmnprtvz";
  static constexpr std::string_view kVowels = "aou";
  constexpr std::uint64_t kSyllables = 36;
  std::string w;
  std::uint64_t v = index;
  for (int i = 0; i < 3 || v > 0; ++i) {
    const auto s = v % kSyllables;
    v /= kSyllables;
    w += kConsonants[s / kVowels.size()];
    w += kVowels[s % kVowels.size()];
  }
  w += 'k';
  return w;
}

SyntheticCorpus generate_synthetic(const SyntheticSpec& spec, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const auto& bg = spec.background;

  // Planted words must not double as background words.
  std::unordered_set<std::string> reserved;
  for (const auto& b : spec.bursts) reserved.insert(b.term);
  for (const auto& t : spec.topics) reserved.insert(t.terms.begin(), t.terms.end());

  std::vector<std::string> vocab;
  vocab.reserve(bg.vocabulary);
  for (std::uint64_t i = 0; vocab.size() < bg.vocabulary; ++i) {
    auto w = pseudo_word(i);
    if (!reserved.contains(w)) vocab.push_back(std::move(w));
  }
  SyntheticCorpus out;
  for (std::uint64_t i = 0; out.constant_words.size() < spec.constant_words.count; ++i) {
    auto w = pseudo_word(bg.vocabulary + 1000003 + i);
    if (!reserved.contains(w)) out.constant_words.push_back(std::move(w));
  }

  std::vector<double> zipf_weights(vocab.size());
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    zipf_weights[i] = 1.0 / std::pow(static_cast<double>(i + 1), bg.zipf);
  }
  std::discrete_distribution<std::size_t> pick_word(zipf_weights.begin(), zipf_weights.end());
  std::uniform_int_distribution<std::uint64_t> word_count(bg.min_words, bg.max_words);

  auto background_words = [&](std::uint64_t n) {
    std::string s;
    for (std::uint64_t i = 0; i < n; ++i) {
      if (!s.empty()) s += ' ';
      s += vocab[pick_word(rng)];
    }
    return s;
  };
  auto join = [](const std::string& a, const std::string& b) {
    if (a.empty()) return b;
    if (b.empty()) return a;
    return a + " " + b;
  };
  auto token_of = [](const std::string& term) {
    auto tokens = text::preprocess(term, text::default_stopwords());
    return tokens.empty() ? std::string() : tokens.front();
  };

  struct Pending {
    std::int64_t ts;
    std::string text;
  };
  std::vector<Pending> pending;

  for (std::uint64_t d = 0; d < spec.documents; ++d) {
    std::vector<std::string> texts;
    for (std::uint64_t i = 0; i < bg.tweets_per_document; ++i) {
      texts.push_back(background_words(word_count(rng)));
    }
    for (const auto& cw : out.constant_words) {
      for (std::uint64_t i = 0; i < spec.constant_words.occurrences_per_document; ++i) {
        texts.push_back(join(cw, background_words(2)));
      }
    }
    for (const auto& b : spec.bursts) {
      if (b.document != d || b.occurrences == 0) continue;
      for (std::uint64_t i = 0; i < b.occurrences; ++i) {
        texts.push_back(join(b.term, background_words(2)));
      }
      out.truth.push_back({b.term, token_of(b.term), d, "burst"});
    }
    for (const auto& t : spec.topics) {
      auto it = t.schedule.find(d);
      if (it == t.schedule.end() || it->second == 0) continue;
      std::string core;
      for (const auto& term : t.terms) core = join(core, term);
      for (std::uint64_t i = 0; i < it->second; ++i) {
        texts.push_back(join(core, background_words(t.noise_words)));
      }
      for (const auto& term : t.terms) out.truth.push_back({term, token_of(term), d, "topic"});
    }

    const std::int64_t lo = spec.start + static_cast<std::int64_t>(d) * spec.window_seconds;
    std::uniform_int_distribution<std::int64_t> when(lo, lo + spec.window_seconds - 1);
    std::shuffle(texts.begin(), texts.end(), rng);
    for (auto& t : texts) pending.push_back({when(rng), std::move(t)});
  }

  std::stable_sort(pending.begin(), pending.end(),
                   [](const Pending& a, const Pending& b) { return a.ts < b.ts; });
  out.tweets.reserve(pending.size());
  for (std::size_t i = 0; i < pending.size(); ++i) {
    out.tweets.push_back({std::to_string(i + 1), pending[i].ts, std::move(pending[i].text), {}});
  }
  return out;
}

std::string corpus_to_jsonl(std::span<const ingest::RawTweet> tweets) {
  std::string out;
  for (const auto& t : tweets) {
    json j{{"id", t.id}, {"ts", t.timestamp}, {"text", t.text}};
    if (t.country) j["country"] = *t.country;
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::string truth_to_jsonl(std::span<const TruthEntry> truth) {
  std::string out;
  for (const auto& t : truth) {
    out += json{{"term", t.term}, {"token", t.token}, {"doc", t.doc}, {"kind", t.kind}}.dump();
    out += '\n';
  }
  return out;
}

}  // namespace burstflow::eval
