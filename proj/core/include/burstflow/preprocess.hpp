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

#include <filesystem>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "burstflow/stemmer.hpp"
#include "burstflow/types.hpp"

namespace burstflow::text {

using StopWords = std::unordered_set<std::string>;

/// Replaces every run of three or more identical characters (UTF-8 code
/// points) with a single occurrence: "noooo" -> "no", "coffee" unchanged.
std::string collapse_repeats(std::string_view word);

/// Drops URLs (http://, https://, www.) and returns "" for check-in
/// messages that start with "I am at".
std::string strip_noise(std::string_view text);

/// ASCII lowercasing; other bytes pass through.
std::string to_lower(std::string_view text);

/// Splits on whitespace and punctuation. A leading '#' or '@' stays attached
/// to its token.
std::vector<std::string> tokenize(std::string_view text);

/// The bundled English stop-word list.
const StopWords& default_stopwords();
/// One lowercase word per line; blank lines and lines starting with '#' are ignored.
StopWords load_stopwords(const std::filesystem::path& path);
StopWords parse_stopwords(std::string_view content);

/// Full pipeline: strip_noise, lowercase, tokenize, collapse_repeats,
/// stop-word removal, stemming. Hashtags and mentions are not stemmed.
std::vector<std::string> preprocess(std::string_view text, const StopWords& stopwords,
                                    const Stemmer& stemmer);
std::vector<std::string> preprocess(std::string_view text, const StopWords& stopwords);

/// Term frequency weights normalized by token count; empty for no tokens.
TermWeights vectorize(std::span<const std::string> tokens);

/// Bundles the stop-word list and stemmer chosen on the command line.
class Preprocessor {
 public:
  Preprocessor();
  Preprocessor(StopWords stopwords, bool stemming);

  std::vector<std::string> tokens(std::string_view text) const;
  TermWeights vector(std::string_view text) const;

 private:
  std::shared_ptr<const StopWords> stopwords_;
  std::shared_ptr<const Stemmer> stemmer_;
};

}  // namespace burstflow::text
