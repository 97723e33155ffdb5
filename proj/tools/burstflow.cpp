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

// burstflow: run the event detectors over a corpus file, compare their
// outputs and generate synthetic corpora.
//
// Exit codes: 0 success, 1 run or usage error, 2 corpus fingerprint mismatch.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "burstflow/clustering.hpp"
#include "burstflow/eval.hpp"
#include "burstflow/ingest.hpp"
#include "burstflow/keybased.hpp"
#include "burstflow/preprocess.hpp"
#include "burstflow/store.hpp"

namespace fs = std::filesystem;
using namespace burstflow;

namespace {

constexpr int kExitRunError = 1;
constexpr int kExitMismatch = 2;

struct CommonOptions {
  std::string corpus;
  std::int64_t window_seconds = ingest::kDefaultWindowSeconds;
  std::optional<std::int64_t> stream_start;
  std::string stopwords;
  bool no_stemming = false;
  std::string country;
  std::string barrier = "direct";
  std::uint64_t sleep_ms = 0;
  std::vector<std::string> tasks;
  std::size_t queue_bound = 10000;
  std::uint64_t seed = 0;
  std::string store;
  std::string out = "out";
};

void add_common(CLI::App& cmd, CommonOptions& o) {
  cmd.add_option("--corpus", o.corpus, "Line-delimited JSON corpus")->required()->check(CLI::ExistingFile);
  cmd.add_option("--window-seconds", o.window_seconds, "Document width in seconds")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd.add_option("--stream-start", o.stream_start,
                 "Epoch second of document 0 (default: first tweet, window aligned)");
  cmd.add_option("--stopwords", o.stopwords, "Stop-word file (default: bundled list)")
      ->check(CLI::ExistingFile);
  cmd.add_flag("--no-stemming", o.no_stemming, "Disable the Porter stemmer");
  cmd.add_option("--country", o.country, "Only replay tweets from this country code");
  cmd.add_option("--barrier", o.barrier, "End-of-document protocol")
      ->capture_default_str()
      ->check(CLI::IsMember({"direct", "sleep"}));
  cmd.add_option("--sleep-ms", o.sleep_ms, "Spout pause after each document in sleep mode")
      ->capture_default_str();
  cmd.add_option("--tasks", o.tasks, "Parallelism per bolt, BOLT=N (repeatable)");
  cmd.add_option("--queue-bound", o.queue_bound, "Capacity of every task queue")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd.add_option("--seed", o.seed, "Seed for routing and hashing")->capture_default_str();
  cmd.add_option("--store", o.store, "memory or file:PATH (default: file:OUT/store.snapshot)");
  cmd.add_option("--out", o.out, "Output directory")->capture_default_str();
}

std::map<std::string, std::size_t> parse_tasks(const std::vector<std::string>& specs) {
  std::map<std::string, std::size_t> out;
  for (const auto& s : specs) {
    const auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0) throw Error("--tasks expects BOLT=N, got '" + s + "'");
    std::size_t n = 0;
    try {
      n = std::stoul(s.substr(eq + 1));
    } catch (const std::exception&) {
      throw Error("--tasks expects BOLT=N, got '" + s + "'");
    }
    if (n == 0) throw Error("task count must be at least 1 in '" + s + "'");
    out[s.substr(0, eq)] = n;
  }
  return out;
}

// Parallelism of `bolt`, rejecting unknown names and a detector other than 1.
std::size_t task_count(const std::map<std::string, std::size_t>& tasks, const std::string& bolt,
                       std::size_t fallback) {
  for (const auto& [name, n] : tasks) {
    if (name == bolt) continue;
    if (name == "detector") {
      if (n != 1) throw Error("the detector bolt runs as a single task");
      continue;
    }
    throw Error("unknown bolt '" + name + "' (expected " + bolt + " or detector)");
  }
  auto it = tasks.find(bolt);
  return it == tasks.end() ? fallback : it->second;
}

struct Loaded {
  std::vector<ingest::RawTweet> tweets;
  std::string fingerprint;
};

Loaded load(const CommonOptions& o) {
  Loaded l;
  ingest::CorpusFilter filter;
  if (!o.country.empty()) filter.country = o.country;
  l.tweets = ingest::load_corpus(o.corpus, filter);
  l.fingerprint = ingest::corpus_fingerprint_file(o.corpus);
  if (!o.country.empty()) {
    l.fingerprint = ingest::corpus_fingerprint(l.fingerprint + "\ncountry=" + o.country);
  }
  return l;
}

text::Preprocessor make_preprocessor(const CommonOptions& o) {
  text::StopWords stopwords =
      o.stopwords.empty() ? text::default_stopwords() : text::load_stopwords(o.stopwords);
  return text::Preprocessor(std::move(stopwords), !o.no_stemming);
}

runtime::RunOptions make_run_options(const CommonOptions& o) {
  runtime::RunOptions run;
  run.barrier = o.barrier == "sleep"
                    ? runtime::BarrierMode::sleeping(std::chrono::milliseconds(o.sleep_ms))
                    : runtime::BarrierMode::direct();
  run.queue_bound = o.queue_bound;
  run.seed = o.seed;
  return run;
}

std::shared_ptr<store::Store> make_store(const CommonOptions& o) {
  if (!o.store.empty()) return store::open_store(o.store);
  // The default snapshot lives in the output directory and is rewritten by every run.
  const fs::path path = fs::path(o.out) / "store.snapshot";
  fs::create_directories(o.out);
  fs::remove(path);
  return std::make_shared<store::FileStore>(path);
}

ingest::WindowConfig make_window(const CommonOptions& o) {
  return ingest::WindowConfig{o.window_seconds, o.stream_start};
}

void print_summary(const eval::RunReport& r, const fs::path& out) {
  std::printf("%s: %llu documents, %llu tweets, %llu events, %llu store commits, %.3f s -> %s\n",
              eval::to_string(r.method), static_cast<unsigned long long>(r.documents),
              static_cast<unsigned long long>(r.tweets),
              static_cast<unsigned long long>(r.event_count),
              static_cast<unsigned long long>(r.store_commits), r.wall_time, out.string().c_str());
}

int run_keybased(const CommonOptions& o, const keybased::KeyParams& params) {
  Loaded corpus = load(o);
  keybased::KeybasedConfig config;
  config.params = params;
  config.run = make_run_options(o);
  config.count_tasks = task_count(parse_tasks(o.tasks), keybased::kCountBolt, config.count_tasks);
  config.window = make_window(o);
  config.preprocessor = make_preprocessor(o);
  config.store = make_store(o);

  auto result = keybased::run_keybased(std::move(corpus.tweets), std::move(config));
  const auto method = o.barrier == "sleep" ? eval::Method::KeybasedSleep : eval::Method::KeybasedDirect;
  auto report = eval::make_report(method, result, corpus.fingerprint);

  const fs::path out(o.out);
  eval::write_word_events(out / "events.jsonl", result.events, corpus.fingerprint);
  eval::export_charts(out / "charts", result.events);
  eval::write_report(out / "report.json", report);
  print_summary(report, out);
  return 0;
}

int run_clustering(const CommonOptions& o, const clustering::ClusterParams& params) {
  Loaded corpus = load(o);
  clustering::ClusteringConfig config;
  config.params = params;
  config.run = make_run_options(o);
  config.cluster_tasks =
      task_count(parse_tasks(o.tasks), clustering::kClusterBolt, config.cluster_tasks);
  config.window = make_window(o);
  config.preprocessor = make_preprocessor(o);
  config.store = make_store(o);

  auto result = clustering::run_clustering(std::move(corpus.tweets), std::move(config));
  auto report = eval::make_report(result, corpus.fingerprint);

  const fs::path out(o.out);
  eval::write_cluster_events(out / "cluster-events.jsonl", result.events, corpus.fingerprint);
  eval::write_report(out / "report.json", report);
  print_summary(report, out);
  return 0;
}

int compare(const std::string& keybased_dir, const std::string& clustering_dir,
            const std::string& out) {
  const auto kr = eval::read_report(fs::path(keybased_dir) / "report.json");
  const auto cr = eval::read_report(fs::path(clustering_dir) / "report.json");
  if (kr.corpus != cr.corpus) {
    throw eval::FingerprintMismatch("runs are over different corpora (" + kr.corpus + " vs " +
                                    cr.corpus + ")");
  }
  const auto words = eval::read_word_events(fs::path(keybased_dir) / "events.jsonl", kr.corpus);
  const auto clusters =
      eval::read_cluster_events(fs::path(clustering_dir) / "cluster-events.jsonl", cr.corpus);
  const auto overlap = eval::compare(words, clusters);
  const auto text = eval::to_json(overlap);
  if (!out.empty()) eval::write_text(out, text + "\n");
  std::cout << text << '\n';
  return 0;
}

int gen_synthetic(const std::string& spec_path, std::uint64_t seed, const std::string& out,
                  std::string truth) {
  const auto spec = eval::load_synthetic_spec(spec_path);
  const auto corpus = eval::generate_synthetic(spec, seed);
  if (truth.empty()) truth = out + ".truth.jsonl";
  eval::write_text(out, eval::corpus_to_jsonl(corpus.tweets));
  eval::write_text(truth, eval::truth_to_jsonl(corpus.truth));
  std::printf("%zu tweets over %llu documents -> %s (truth: %s)\n", corpus.tweets.size(),
              static_cast<unsigned long long>(spec.documents), out.c_str(), truth.c_str());
  return 0;
}

int report(const std::vector<std::string>& inputs) {
  std::printf("%-16s %10s %9s %7s %8s %9s %13s  %s\n", "method", "wall_s", "documents", "events",
              "commits", "tweets", "interleavings", "corpus");
  for (const auto& in : inputs) {
    fs::path p(in);
    if (fs::is_directory(p)) p /= "report.json";
    const auto r = eval::read_report(p);
    std::printf("%-16s %10.3f %9llu %7llu %8llu %9llu %13llu  %.12s\n", eval::to_string(r.method),
                r.wall_time, static_cast<unsigned long long>(r.documents),
                static_cast<unsigned long long>(r.event_count),
                static_cast<unsigned long long>(r.store_commits),
                static_cast<unsigned long long>(r.tweets),
                static_cast<unsigned long long>(r.interleavings), r.corpus.c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Event detection over a replayed tweet corpus"};
  app.require_subcommand(1);

  CommonOptions kopts;
  keybased::KeyParams kparams;
  auto* kb = app.add_subcommand("run-keybased", "Detect bursting words");
  add_common(*kb, kopts);
  kb->add_option("--common-threshold", kparams.common_word_threshold,
                 "Occurrences per document before a word is scored")
      ->capture_default_str();
  kb->add_option("--event-rate", kparams.tfidf_event_rate, "Minimum tf-idf increment rate")
      ->capture_default_str();
  kb->add_option("--floor", kparams.absolute_floor, "Minimum current tf-idf of an event")
      ->capture_default_str();

  CommonOptions copts;
  clustering::ClusterParams cparams;
  auto* cl = app.add_subcommand("run-clustering", "Detect fast-growing tweet clusters");
  add_common(*cl, copts);
  cl->add_option("--similarity", cparams.similarity_threshold, "Cosine threshold")
      ->capture_default_str();
  cl->add_option("--growth", cparams.growth_threshold, "Growth-rate threshold")
      ->capture_default_str();
  cl->add_option("--min-cluster", cparams.num_tweet_threshold,
                 "Smallest merged local cluster kept")
      ->capture_default_str();
  cl->add_option("--inactivity", cparams.inactivity_blocks,
                 "Documents without updates before a cluster is evicted")
      ->capture_default_str();
  cl->add_flag("--best-fit", cparams.best_fit, "Assign tweets to the most similar cluster");
  cl->add_flag("--event-new-clusters", cparams.event_on_new_clusters,
               "Also report clusters on their first insertion");

  std::string cmp_keybased, cmp_clustering, cmp_out;
  auto* cmp = app.add_subcommand("compare", "Overlap between word and cluster events");
  cmp->add_option("--keybased", cmp_keybased, "Output directory of run-keybased")
      ->required()
      ->check(CLI::ExistingDirectory);
  cmp->add_option("--clustering", cmp_clustering, "Output directory of run-clustering")
      ->required()
      ->check(CLI::ExistingDirectory);
  cmp->add_option("--out", cmp_out, "Also write the overlap report here");

  std::string gen_spec, gen_out, gen_truth;
  std::uint64_t gen_seed = 0;
  auto* gen = app.add_subcommand("gen-synthetic", "Generate a corpus with planted events");
  gen->add_option("--spec", gen_spec, "JSON generator spec")->required()->check(CLI::ExistingFile);
  gen->add_option("--seed", gen_seed, "Generator seed")->capture_default_str();
  gen->add_option("--out", gen_out, "Corpus file to write")->required();
  gen->add_option("--truth", gen_truth, "Ground-truth sidecar (default: OUT.truth.jsonl)");

  std::vector<std::string> report_inputs;
  auto* rep = app.add_subcommand("report", "Tabulate run reports");
  rep->add_option("runs", report_inputs, "Run directories or report.json files")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitRunError;
  }

  try {
    if (*kb) return run_keybased(kopts, kparams);
    if (*cl) return run_clustering(copts, cparams);
    if (*cmp) return compare(cmp_keybased, cmp_clustering, cmp_out);
    if (*gen) return gen_synthetic(gen_spec, gen_seed, gen_out, gen_truth);
    if (*rep) return report(report_inputs);
  } catch (const eval::FingerprintMismatch& e) {
    std::cerr << "burstflow: " << e.what() << '\n';
    return kExitMismatch;
  } catch (const runtime::BoltFailure& e) {
    std::cerr << "burstflow: bolt '" << e.bolt() << "' failed at document " << e.doc().value
              << ": " << e.what() << '\n';
    return kExitRunError;
  } catch (const std::exception& e) {
    std::cerr << "burstflow: " << e.what() << '\n';
    return kExitRunError;
  }
  return kExitRunError;
}
