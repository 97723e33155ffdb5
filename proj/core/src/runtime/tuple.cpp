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

#include "burstflow/runtime/tuple.hpp"

namespace burstflow::runtime {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

}  // namespace

DocumentId document_of(const Payload& p) {
  return std::visit(overloaded{
                        [](const Word& w) { return w.doc; },
                        [](const Vector& v) { return v.vector.doc; },
                        [](const Eod& e) { return e.doc; },
                        [](const Candidate& c) { return c.doc; },
                        [](const PartitionTotal& t) { return t.doc; },
                        [](const LocalClusters& l) { return l.doc; },
                    },
                    p);
}

}  // namespace burstflow::runtime
