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

#include <condition_variable>
#include <cstddef>
#include <mutex>
#include <optional>
#include <vector>

#include "burstflow/types.hpp"

namespace burstflow::runtime {

/// Violation of the end-of-document acknowledgement protocol.
class ProtocolError : public Error {
 public:
  using Error::Error;
};

/**
 * End-of-document acknowledgement barrier.
 *
 * The spout opens the barrier for document d before broadcasting EOD(d) and
 * then waits. Every bolt task acknowledges once it has finished d; the last
 * acknowledgement releases the spout so it may start d+1.
 */
class DocumentBarrier {
 public:
  explicit DocumentBarrier(std::size_t participants);

  void open(DocumentId doc);

  /// Returns true when this acknowledgement completed the barrier. Throws
  /// ProtocolError for a duplicate, an unknown participant, or a document
  /// other than the open one.
  bool ack(std::size_t participant, DocumentId doc);

  /// Blocks until every participant acknowledged the open document. Returns
  /// false if the barrier was cancelled instead.
  bool wait();

  void cancel();

  bool released() const;
  std::size_t pending() const;
  std::size_t participants() const { return acked_.size(); }

 private:
  mutable std::mutex mu_;
  std::condition_variable cv_;
  std::optional<DocumentId> open_doc_;
  std::vector<bool> acked_;
  std::size_t remaining_ = 0;
  bool cancelled_ = false;
};

}  // namespace burstflow::runtime
