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

#include "burstflow/serialize.hpp"

#include "json_codec.hpp"

namespace burstflow::serialize {

using codec::json;

namespace {

json parse(std::string_view line) {
  try {
    return json::parse(line);
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed record: ") + e.what());
  }
}

template <typename F>
auto decode(std::string_view line, F&& f) {
  const json j = parse(line);
  try {
    return f(j);
  } catch (const json::exception& e) {
    throw FormatError(std::string("bad record: ") + e.what());
  }
}

}  // namespace

std::string to_line(const WordEvent& e, std::string_view corpus) {
  json j = codec::word_event_to_json(e);
  if (!corpus.empty()) j["corpus"] = corpus;
  return j.dump();
}

std::string to_line(const ClusterEvent& e, std::string_view corpus) {
  json j = codec::cluster_event_to_json(e);
  if (!corpus.empty()) j["corpus"] = corpus;
  return j.dump();
}

std::string to_line(const Cluster& c) { return codec::cluster_to_json(c).dump(); }

WordEvent parse_word_event(std::string_view line) {
  return decode(line, codec::word_event_from_json);
}

ClusterEvent parse_cluster_event(std::string_view line) {
  return decode(line, codec::cluster_event_from_json);
}

Cluster parse_cluster(std::string_view line) { return decode(line, codec::cluster_from_json); }

std::string corpus_of(std::string_view line) {
  const json j = parse(line);
  if (auto it = j.find("corpus"); it != j.end() && it->is_string()) return it->get<std::string>();
  return {};
}

}  // namespace burstflow::serialize
