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
#include <deque>
#include <mutex>
#include <optional>
#include <vector>

namespace burstflow::runtime {

/// Multi-producer multi-consumer FIFO with a fixed capacity. Producers block
/// while the queue is full; close() wakes everybody and makes push() fail.
template <typename T>
class BoundedQueue {
 public:
  explicit BoundedQueue(std::size_t capacity) : capacity_(capacity == 0 ? 1 : capacity) {}

  BoundedQueue(const BoundedQueue&) = delete;
  BoundedQueue& operator=(const BoundedQueue&) = delete;

  bool push(T value) {
    std::unique_lock lock(mu_);
    if (items_.size() >= capacity_ && !closed_) {
      ++waiting_producers_;
      not_full_.wait(lock, [&] { return items_.size() < capacity_ || closed_; });
      --waiting_producers_;
    }
    if (closed_) return false;
    items_.push_back(std::move(value));
    if (items_.size() > high_water_) high_water_ = items_.size();
    if (waiting_consumers_ > 0) not_empty_.notify_one();
    return true;
  }

  /// Blocks until an item is available. Empty once closed and drained.
  std::optional<T> pop() {
    std::unique_lock lock(mu_);
    wait_not_empty(lock);
    if (items_.empty()) return std::nullopt;
    T value = std::move(items_.front());
    items_.pop_front();
    if (waiting_producers_ > 0) not_full_.notify_one();
    return value;
  }

  /// Moves up to `max` items into `out`; returns how many. Zero means the
  /// queue is closed and drained.
  std::size_t pop_batch(std::vector<T>& out, std::size_t max) {
    std::unique_lock lock(mu_);
    wait_not_empty(lock);
    std::size_t n = 0;
    while (n < max && !items_.empty()) {
      out.push_back(std::move(items_.front()));
      items_.pop_front();
      ++n;
    }
    if (n > 0 && waiting_producers_ > 0) not_full_.notify_all();
    return n;
  }

  void close() {
    {
      std::lock_guard lock(mu_);
      closed_ = true;
    }
    not_full_.notify_all();
    not_empty_.notify_all();
  }

  std::size_t size() const {
    std::lock_guard lock(mu_);
    return items_.size();
  }

  std::size_t capacity() const { return capacity_; }

  std::size_t high_water() const {
    std::lock_guard lock(mu_);
    return high_water_;
  }

 private:
  void wait_not_empty(std::unique_lock<std::mutex>& lock) {
    if (items_.empty() && !closed_) {
      ++waiting_consumers_;
      not_empty_.wait(lock, [&] { return !items_.empty() || closed_; });
      --waiting_consumers_;
    }
  }

  const std::size_t capacity_;
  mutable std::mutex mu_;
  std::condition_variable not_full_;
  std::condition_variable not_empty_;
  std::deque<T> items_;
  std::size_t waiting_producers_ = 0;
  std::size_t waiting_consumers_ = 0;
  std::size_t high_water_ = 0;
  bool closed_ = false;
};

}  // namespace burstflow::runtime
