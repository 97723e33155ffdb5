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

#include "burstflow/sources.hpp"

namespace burstflow::sources {

namespace {

template <typename OnTweet>
bool pump(ingest::Replayer& replayer, runtime::SpoutCollector& out, SourceStats& stats,
          OnTweet&& on_tweet) {
  auto item = replayer.next();
  if (!item) return false;
  stats.stream_start = replayer.stream_start();
  if (auto* eod = std::get_if<ingest::EndOfDocument>(&*item)) {
    out.end_document(eod->doc);
  } else {
    ++stats.tweets;
    on_tweet(std::get<ingest::ReplayedTweet>(*item));
  }
  return true;
}

}  // namespace

WordSpout::WordSpout(ingest::Replayer replayer, text::Preprocessor preprocessor,
                     std::shared_ptr<SourceStats> stats)
    : replayer_(std::move(replayer)),
      preprocessor_(std::move(preprocessor)),
      stats_(stats ? std::move(stats) : std::make_shared<SourceStats>()) {}

bool WordSpout::next(runtime::SpoutCollector& out) {
  return pump(replayer_, out, *stats_, [&](const ingest::ReplayedTweet& t) {
    for (auto& token : preprocessor_.tokens(t.tweet.text)) {
      ++stats_->tokens;
      out.emit(runtime::Word{std::move(token), t.doc});
    }
  });
}

VectorSpout::VectorSpout(ingest::Replayer replayer, text::Preprocessor preprocessor,
                         std::shared_ptr<SourceStats> stats)
    : replayer_(std::move(replayer)),
      preprocessor_(std::move(preprocessor)),
      stats_(stats ? std::move(stats) : std::make_shared<SourceStats>()) {}

bool VectorSpout::next(runtime::SpoutCollector& out) {
  return pump(replayer_, out, *stats_, [&](ingest::ReplayedTweet& t) {
    TermWeights w = preprocessor_.vector(t.tweet.text);
    if (w.empty()) {
      ++stats_->skipped;
      return;
    }
    out.emit(runtime::Vector{TweetVector{std::move(t.tweet.id), t.doc, std::move(w)}});
  });
}

}  // namespace burstflow::sources
