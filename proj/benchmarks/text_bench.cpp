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

#include <benchmark/benchmark.h>

#include "burstflow/eval.hpp"
#include "burstflow/preprocess.hpp"

namespace {

using namespace burstflow;

std::vector<ingest::RawTweet> sample(std::size_t n) {
  eval::SyntheticSpec spec;
  spec.documents = 1;
  spec.background.tweets_per_document = n;
  spec.background.zipf = 1.0;
  return eval::generate_synthetic(spec, 1).tweets;
}

void BM_Preprocess(benchmark::State& state) {
  const auto tweets = sample(1000);
  const text::Preprocessor pre;
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(pre.tokens(tweets[i++ % tweets.size()].text));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Preprocess);

void BM_PreprocessNoisy(benchmark::State& state) {
  const std::string text =
      "Sooooo much SMOKE over the canyon!!! #wildfire @firewatch http://t.co/abc123 stay safe everyone";
  const text::Preprocessor pre;
  for (auto _ : state) benchmark::DoNotOptimize(pre.vector(text));
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_PreprocessNoisy);

void BM_CollapseRepeats(benchmark::State& state) {
  const std::string word = "gooooooaaaaaallllllll";
  for (auto _ : state) benchmark::DoNotOptimize(text::collapse_repeats(word));
}
BENCHMARK(BM_CollapseRepeats);

}  // namespace
