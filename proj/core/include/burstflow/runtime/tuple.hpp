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
#include <string>
#include <variant>
#include <vector>

#include "burstflow/types.hpp"

namespace burstflow::runtime {

struct Word {
  std::string term;
  DocumentId doc;
};

struct Vector {
  TweetVector vector;
};

/// Emitted after the last tuple of `doc`.
struct Eod {
  DocumentId doc;
};

enum class CandidatePhase {
  Threshold,  // the word just reached the common-word threshold
  Final,      // end-of-document counts
};

struct Candidate {
  std::string term;
  DocumentId doc;
  CandidateStats stats;
  CandidatePhase phase = CandidatePhase::Threshold;
};

/// Number of tokens one counting task saw in `doc`.
struct PartitionTotal {
  DocumentId doc;
  std::uint64_t tokens = 0;
};

struct LocalClusters {
  TaskIndex task = 0;
  std::vector<Cluster> clusters;
  DocumentId doc;
};

using Payload = std::variant<Word, Vector, Eod, Candidate, PartitionTotal, LocalClusters>;

struct Tuple {
  Payload payload;
  TaskIndex source_task = 0;
};

DocumentId document_of(const Payload& p);
inline DocumentId document_of(const Tuple& t) { return document_of(t.payload); }

}  // namespace burstflow::runtime
