/*
 * Copyright 2026 The hird-sim Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <optional>
#include <vector>

#include "hird/flit.hpp"
#include "hird/types.hpp"

namespace hird {

/// Slot storage of one ring: for every lane and direction a circular chain
/// of `stages` single-flit registers. Advancing the ring moves every flit one
/// stage along its direction; it is done by rotating an offset instead of
/// copying flits.
class RingState {
 public:
  RingState() = default;
  RingState(int stages, int lanes);

  int stages() const { return stages_; }
  int lanes() const { return lanes_; }

  void advance() { offset_ = (offset_ + 1) % stages_; }

  std::optional<Flit>& at(int lane, Direction d, int stage) { return buf_[buffer(lane, d)][physical_index(d, stage)]; }
  const std::optional<Flit>& at(int lane, Direction d, int stage) const {
    return buf_[buffer(lane, d)][physical_index(d, stage)];
  }

  /// Identity of the register currently at `stage`. Stable for a flit for
  /// as long as it stays on the ring.
  int physical_index(Direction d, int stage) const {
    const int k = d == Direction::kCW ? stage - offset_ : stage + offset_;
    return ((k % stages_) + stages_) % stages_;
  }

  std::size_t occupancy() const;

  template <typename Fn>
  void for_each_flit(Fn&& fn) const {
    for (const auto& b : buf_)
      for (const auto& slot : b)
        if (slot) fn(*slot);
  }

 private:
  int buffer(int lane, Direction d) const { return lane * 2 + dir_index(d); }

  int stages_ = 0;
  int lanes_ = 0;
  int offset_ = 0;
  std::vector<std::vector<std::optional<Flit>>> buf_;
};

/// The registers one router sees on one ring in the current cycle.
class RingStop {
 public:
  RingStop(RingState& ring, int stage) : ring_(&ring), stage_(stage) {}

  int lanes() const { return ring_->lanes(); }
  int stage() const { return stage_; }
  std::optional<Flit>& slot(Direction d, int lane) { return ring_->at(lane, d, stage_); }
  const std::optional<Flit>& slot(Direction d, int lane) const { return ring_->at(lane, d, stage_); }
  int register_id(Direction d) const { return ring_->physical_index(d, stage_); }

 private:
  RingState* ring_;
  int stage_;
};

}  // namespace hird
