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

#include "burstflow/types.hpp"

#include <algorithm>
#include <cmath>

namespace burstflow {

TermWeights::TermWeights(std::vector<Entry> entries) : entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end(),
            [](const Entry& a, const Entry& b) { return a.first < b.first; });
  std::vector<Entry> merged;
  merged.reserve(entries_.size());
  for (auto& e : entries_) {
    if (!merged.empty() && merged.back().first == e.first) {
      merged.back().second += e.second;
    } else {
      merged.push_back(std::move(e));
    }
  }
  std::erase_if(merged, [](const Entry& e) { return !(e.second > 0.0); });
  entries_ = std::move(merged);
  refresh_norm();
}

TermWeights TermWeights::from_sorted(std::vector<Entry> entries) {
  TermWeights w;
  w.entries_ = std::move(entries);
  w.refresh_norm();
  return w;
}

double TermWeights::weight(std::string_view term) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), term,
                             [](const Entry& e, std::string_view t) { return e.first < t; });
  if (it != entries_.end() && it->first == term) return it->second;
  return 0.0;
}

double TermWeights::sum() const {
  double s = 0.0;
  for (const auto& e : entries_) s += e.second;
  return s;
}

void TermWeights::normalize() {
  const double s = sum();
  if (s <= 0.0) return;
  for (auto& e : entries_) e.second /= s;
  refresh_norm();
}

void TermWeights::erase_if(const std::function<bool(const std::string&, double)>& drop) {
  std::erase_if(entries_, [&](const Entry& e) { return drop(e.first, e.second); });
  refresh_norm();
}

std::vector<TermWeights::Entry> TermWeights::top(std::size_t k) const {
  std::vector<Entry> out(entries_.begin(), entries_.end());
  std::sort(out.begin(), out.end(), [](const Entry& a, const Entry& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  if (out.size() > k) out.resize(k);
  return out;
}

void TermWeights::refresh_norm() {
  double sq = 0.0;
  for (const auto& e : entries_) sq += e.second * e.second;
  norm_ = std::sqrt(sq);
}

}  // namespace burstflow
