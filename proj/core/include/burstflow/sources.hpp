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

#include "burstflow/ingest.hpp"
#include "burstflow/preprocess.hpp"
#include "burstflow/runtime/topology.hpp"

// Spouts that replay a corpus into a topology, preprocessing on the way.
namespace burstflow::sources {

/// Filled in by the spout while it runs; read it after Topology::run returns.
struct SourceStats {
  std::uint64_t tweets = 0;
  std::uint64_t tokens = 0;   // Word tuples emitted
  std::uint64_t skipped = 0;  // tweets whose vector was empty
  std::int64_t stream_start = 0;
};

/// Emits one Word tuple per token.
class WordSpout final : public runtime::Spout {
 public:
  WordSpout(ingest::Replayer replayer, text::Preprocessor preprocessor,
            std::shared_ptr<SourceStats> stats = nullptr);

  bool next(runtime::SpoutCollector& out) override;

 private:
  ingest::Replayer replayer_;
  text::Preprocessor preprocessor_;
  std::shared_ptr<SourceStats> stats_;
};

/// Emits one Vector tuple per tweet; tweets that preprocess to nothing are
/// counted as skipped.
class VectorSpout final : public runtime::Spout {
 public:
  VectorSpout(ingest::Replayer replayer, text::Preprocessor preprocessor,
              std::shared_ptr<SourceStats> stats = nullptr);

  bool next(runtime::SpoutCollector& out) override;

 private:
  ingest::Replayer replayer_;
  text::Preprocessor preprocessor_;
  std::shared_ptr<SourceStats> stats_;
};

}  // namespace burstflow::sources
