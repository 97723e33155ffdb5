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

// Private nlohmann::json bindings shared by the store, serializer and eval code.
#pragma once

#include <cmath>
#include <limits>

#include "burstflow/types.hpp"
#include "json.hpp"

namespace burstflow::codec {

using nlohmann::json;

inline json rate_to_json(double r) {
  if (std::isinf(r)) return r > 0 ? "inf" : "-inf";
  return r;
}

inline double rate_from_json(const json& j) {
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    throw json::type_error::create(302, "bad rate string " + s, &j);
  }
  return j.get<double>();
}

inline json weights_to_json(const TermWeights& w) {
  json arr = json::array();
  for (const auto& [term, weight] : w) arr.push_back(json::array({term, weight}));
  return arr;
}

inline TermWeights weights_from_json(const json& j) {
  std::vector<TermWeights::Entry> entries;
  entries.reserve(j.size());
  for (const auto& e : j) entries.emplace_back(e.at(0).get<std::string>(), e.at(1).get<double>());
  return TermWeights(std::move(entries));
}

inline json cluster_to_json(const Cluster& c) {
  return json{{"id", c.id},
              {"total", c.total_tweets},
              {"added", c.tweets_added_this_block},
              {"last_active", c.last_active_doc.value},
              {"created", c.created_doc.value},
              {"weights", weights_to_json(c.weights)}};
}

inline Cluster cluster_from_json(const json& j) {
  Cluster c;
  c.id = j.at("id").get<ClusterId>();
  c.total_tweets = j.at("total").get<std::uint64_t>();
  c.tweets_added_this_block = j.at("added").get<std::uint64_t>();
  c.last_active_doc = DocumentId{j.at("last_active").get<std::uint64_t>()};
  c.created_doc = DocumentId{j.at("created").get<std::uint64_t>()};
  c.weights = weights_from_json(j.at("weights"));
  return c;
}

inline json history_to_json(const std::vector<HistoryPoint>& h) {
  json arr = json::array();
  for (const auto& p : h) arr.push_back(json::array({p.doc.value, p.tfidf}));
  return arr;
}

inline std::vector<HistoryPoint> history_from_json(const json& j) {
  std::vector<HistoryPoint> h;
  for (const auto& p : j) h.push_back({DocumentId{p.at(0).get<std::uint64_t>()}, p.at(1).get<double>()});
  return h;
}

inline json word_event_to_json(const WordEvent& e) {
  return json{{"term", e.term},
              {"doc", e.doc.value},
              {"increment_rate", rate_to_json(e.increment_rate)},
              {"history", history_to_json(e.history)}};
}

inline WordEvent word_event_from_json(const json& j) {
  WordEvent e;
  e.term = j.at("term").get<std::string>();
  e.doc = DocumentId{j.at("doc").get<std::uint64_t>()};
  e.increment_rate = rate_from_json(j.at("increment_rate"));
  e.history = history_from_json(j.at("history"));
  return e;
}

inline json cluster_event_to_json(const ClusterEvent& e) {
  json terms = json::array();
  for (const auto& [term, weight] : e.top_terms) terms.push_back(json::array({term, weight}));
  return json{{"cluster_id", e.cluster_id},
              {"doc", e.doc.value},
              {"growth_rate", e.growth_rate},
              {"top_terms", terms}};
}

inline ClusterEvent cluster_event_from_json(const json& j) {
  ClusterEvent e;
  e.cluster_id = j.at("cluster_id").get<ClusterId>();
  e.doc = DocumentId{j.at("doc").get<std::uint64_t>()};
  e.growth_rate = j.at("growth_rate").get<double>();
  for (const auto& t : j.at("top_terms")) {
    e.top_terms.emplace_back(t.at(0).get<std::string>(), t.at(1).get<double>());
  }
  return e;
}

}  // namespace burstflow::codec
