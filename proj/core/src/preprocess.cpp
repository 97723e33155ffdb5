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

#include "burstflow/preprocess.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

namespace burstflow::text {

// Generated from core/data/stopwords.txt at configure time.
extern const char* const kBundledStopwords;

namespace {

std::size_t code_point_length(std::string_view s, std::size_t pos) {
  const auto lead = static_cast<unsigned char>(s[pos]);
  std::size_t len = 1;
  if (lead >= 0xF0 && lead <= 0xF7) {
    len = 4;
  } else if (lead >= 0xE0) {
    len = 3;
  } else if (lead >= 0xC0) {
    len = 2;
  }
  return std::min(len, s.size() - pos);
}

char32_t decode(std::string_view cp) {
  const auto b0 = static_cast<unsigned char>(cp[0]);
  switch (cp.size()) {
    case 2:
      return ((b0 & 0x1Fu) << 6) | (static_cast<unsigned char>(cp[1]) & 0x3Fu);
    case 3:
      return ((b0 & 0x0Fu) << 12) | ((static_cast<unsigned char>(cp[1]) & 0x3Fu) << 6) |
             (static_cast<unsigned char>(cp[2]) & 0x3Fu);
    case 4:
      return ((b0 & 0x07u) << 18) | ((static_cast<unsigned char>(cp[1]) & 0x3Fu) << 12) |
             ((static_cast<unsigned char>(cp[2]) & 0x3Fu) << 6) |
             (static_cast<unsigned char>(cp[3]) & 0x3Fu);
    default:
      return b0;
  }
}

// Unicode whitespace and the common punctuation blocks.
bool is_unicode_separator(char32_t c) {
  return c == 0x85 || (c >= 0xA0 && c <= 0xBF) || c == 0xD7 || c == 0xF7 || c == 0x1680 ||
         (c >= 0x2000 && c <= 0x206F) || (c >= 0x3000 && c <= 0x303F) ||
         (c >= 0xFE10 && c <= 0xFE1F) || (c >= 0xFE30 && c <= 0xFE4F) ||
         (c >= 0xFF01 && c <= 0xFF0F) || c == 0xFEFF;
}

bool is_ascii_word(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
}

bool starts_with_icase(std::string_view s, std::size_t pos, std::string_view prefix) {
  if (s.size() - pos < prefix.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(s[pos + i])) != prefix[i]) return false;
  }
  return true;
}

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

bool is_check_in(std::string_view text) {
  std::size_t b = 0;
  while (b < text.size() && is_space(text[b])) ++b;
  if (!starts_with_icase(text, b, "i am at")) return false;
  const std::size_t after = b + 7;
  return after == text.size() || !is_ascii_word(text[after]);
}

bool is_tag(std::string_view token) {
  return !token.empty() && (token.front() == '#' || token.front() == '@');
}

}  // namespace

std::string collapse_repeats(std::string_view word) {
  std::string out;
  out.reserve(word.size());
  std::size_t pos = 0;
  while (pos < word.size()) {
    const std::size_t len = code_point_length(word, pos);
    const std::string_view cp = word.substr(pos, len);
    std::size_t run = 1;
    std::size_t next = pos + len;
    while (next < word.size() && word.compare(next, len, cp) == 0 &&
           code_point_length(word, next) == len) {
      ++run;
      next += len;
    }
    if (run >= 3) {
      out.append(cp);
    } else {
      for (std::size_t i = 0; i < run; ++i) out.append(cp);
    }
    pos = next;
  }
  return out;
}

std::string strip_noise(std::string_view text) {
  if (is_check_in(text)) return {};
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    const bool boundary = i == 0 || !is_ascii_word(text[i - 1]);
    const bool url = starts_with_icase(text, i, "http://") || starts_with_icase(text, i, "https://") ||
                     (boundary && starts_with_icase(text, i, "www."));
    if (url) {
      while (i < text.size() && !is_space(text[i])) ++i;
      continue;
    }
    out.push_back(text[i]);
    ++i;
  }
  return out;
}

std::string to_lower(std::string_view text) {
  std::string out(text);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    if (!current.empty() && current != "#" && current != "@") tokens.push_back(current);
    current.clear();
  };
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t len = code_point_length(text, pos);
    const std::string_view cp = text.substr(pos, len);
    pos += len;
    if (len == 1) {
      const char c = cp[0];
      if (is_ascii_word(c)) {
        current.push_back(c);
      } else if (c == '#' || c == '@') {
        flush();
        current.push_back(c);
      } else {
        flush();
      }
    } else if (is_unicode_separator(decode(cp))) {
      flush();
    } else {
      current.append(cp);
    }
  }
  flush();
  return tokens;
}

StopWords parse_stopwords(std::string_view content) {
  StopWords words;
  std::istringstream in{std::string(content)};
  std::string line;
  while (std::getline(in, line)) {
    std::string w;
    for (char c : line) {
      if (!is_space(c)) w.push_back(c);
    }
    if (w.empty() || w.front() == '#') continue;
    words.insert(to_lower(w));
  }
  return words;
}

const StopWords& default_stopwords() {
  static const StopWords words = parse_stopwords(kBundledStopwords);
  return words;
}

StopWords load_stopwords(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open stop-word file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_stopwords(buf.str());
}

std::vector<std::string> preprocess(std::string_view text, const StopWords& stopwords,
                                    const Stemmer& stemmer) {
  std::vector<std::string> out;
  const std::string cleaned = to_lower(strip_noise(text));
  for (const std::string& raw : tokenize(cleaned)) {
    std::string token = collapse_repeats(raw);
    if (stopwords.contains(token)) continue;
    if (!is_tag(token)) {
      // Stemming can expose a new run or a stop word ("ares" -> "are").
      token = collapse_repeats(stemmer.stem(token));
      if (stopwords.contains(token)) continue;
    }
    if (token.empty()) continue;
    out.push_back(std::move(token));
  }
  return out;
}

std::vector<std::string> preprocess(std::string_view text, const StopWords& stopwords) {
  static const PorterStemmer porter;
  return preprocess(text, stopwords, porter);
}

TermWeights vectorize(std::span<const std::string> tokens) {
  if (tokens.empty()) return {};
  std::map<std::string_view, std::size_t> counts;
  for (const auto& t : tokens) ++counts[t];
  const double n = static_cast<double>(tokens.size());
  std::vector<TermWeights::Entry> entries;
  entries.reserve(counts.size());
  for (const auto& [term, count] : counts) {
    entries.emplace_back(std::string(term), static_cast<double>(count) / n);
  }
  return TermWeights(std::move(entries));
}

Preprocessor::Preprocessor()
    : stopwords_(std::make_shared<StopWords>(default_stopwords())),
      stemmer_(std::make_shared<PorterStemmer>()) {}

Preprocessor::Preprocessor(StopWords stopwords, bool stemming)
    : stopwords_(std::make_shared<StopWords>(std::move(stopwords))) {
  if (stemming) {
    stemmer_ = std::make_shared<PorterStemmer>();
  } else {
    stemmer_ = std::make_shared<IdentityStemmer>();
  }
}

std::vector<std::string> Preprocessor::tokens(std::string_view text) const {
  return preprocess(text, *stopwords_, *stemmer_);
}

TermWeights Preprocessor::vector(std::string_view text) const {
  const auto toks = tokens(text);
  return vectorize(toks);
}

}  // namespace burstflow::text
