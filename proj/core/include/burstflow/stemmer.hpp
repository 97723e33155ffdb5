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

namespace burstflow::text {

class Stemmer {
 public:
  virtual ~Stemmer() = default;
  virtual std::string stem(std::string_view word) const = 0;
};

/// Returns its input unchanged.
class IdentityStemmer final : public Stemmer {
 public:
  std::string stem(std::string_view word) const override { return std::string(word); }
};

/**
 * The original Porter (1980) suffix-stripping algorithm.
 *
 * Only words made entirely of lowercase ASCII letters are stemmed; anything
 * else (digits, non-ASCII, hashtags) is returned unchanged, as are words of
 * two letters or fewer.
 */
class PorterStemmer final : public Stemmer {
 public:
  std::string stem(std::string_view word) const override;
};

}  // namespace burstflow::text
