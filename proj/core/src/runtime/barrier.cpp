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

#include "burstflow/runtime/barrier.hpp"

#include <algorithm>
#include <string>

namespace burstflow::runtime {

DocumentBarrier::DocumentBarrier(std::size_t participants) : acked_(participants, false) {}

void DocumentBarrier::open(DocumentId doc) {
  std::lock_guard lock(mu_);
  if (open_doc_ && remaining_ > 0) {
    throw ProtocolError("barrier for document " + std::to_string(open_doc_->value) +
                        " still has " + std::to_string(remaining_) + " pending acks");
  }
  if (open_doc_ && doc <= *open_doc_) {
    throw ProtocolError("barrier reopened for non-increasing document " +
                        std::to_string(doc.value));
  }
  open_doc_ = doc;
  std::fill(acked_.begin(), acked_.end(), false);
  remaining_ = acked_.size();
}

bool DocumentBarrier::ack(std::size_t participant, DocumentId doc) {
  bool done = false;
  {
    std::lock_guard lock(mu_);
    if (participant >= acked_.size()) {
      throw ProtocolError("ack from unknown task " + std::to_string(participant));
    }
    if (!open_doc_) throw ProtocolError("ack with no open document");
    if (doc != *open_doc_) {
      throw ProtocolError("ack for document " + std::to_string(doc.value) + " while document " +
                          std::to_string(open_doc_->value) + " is open");
    }
    if (acked_[participant]) {
      throw ProtocolError("duplicate ack from task " + std::to_string(participant) +
                          " for document " + std::to_string(doc.value));
    }
    acked_[participant] = true;
    --remaining_;
    done = remaining_ == 0;
  }
  if (done) cv_.notify_all();
  return done;
}

bool DocumentBarrier::wait() {
  std::unique_lock lock(mu_);
  cv_.wait(lock, [&] { return cancelled_ || (open_doc_ && remaining_ == 0); });
  return !cancelled_;
}

void DocumentBarrier::cancel() {
  {
    std::lock_guard lock(mu_);
    cancelled_ = true;
  }
  cv_.notify_all();
}

bool DocumentBarrier::released() const {
  std::lock_guard lock(mu_);
  return open_doc_.has_value() && remaining_ == 0;
}

std::size_t DocumentBarrier::pending() const {
  std::lock_guard lock(mu_);
  return remaining_;
}

}  // namespace burstflow::runtime
