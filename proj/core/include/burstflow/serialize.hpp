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

#include <string>
#include <string_view>

#include "burstflow/types.hpp"

// Single-line JSON encodings of the event records. An infinite increment
// rate is written as the string "inf".
namespace burstflow::serialize {

class FormatError : public Error {
 public:
  using Error::Error;
};

std::string to_line(const WordEvent& e, std::string_view corpus = {});
std::string to_line(const ClusterEvent& e, std::string_view corpus = {});
std::string to_line(const Cluster& c);

WordEvent parse_word_event(std::string_view line);
ClusterEvent parse_cluster_event(std::string_view line);
Cluster parse_cluster(std::string_view line);

/// The `corpus` field of an event line, or "" when absent.
std::string corpus_of(std::string_view line);

}  // namespace burstflow::serialize
