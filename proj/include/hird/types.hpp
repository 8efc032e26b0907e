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

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace hird {

using Cycle = std::uint64_t;

/// Ring travel direction. Every ring lane carries two independent slot
/// arrays, one per direction.
enum class Direction : std::uint8_t { kCW = 0, kCCW = 1 };

inline constexpr std::array<Direction, 2> kDirections{Direction::kCW, Direction::kCCW};

constexpr int dir_index(Direction d) { return static_cast<int>(d); }

constexpr const char* to_string(Direction d) { return d == Direction::kCW ? "CW" : "CCW"; }

/// Raised when a configuration cannot be realized. The message names the
/// constraint that failed.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when the simulation observes a broken invariant (slot
/// displacement, conservation mismatch, FIFO overflow).
class InvariantViolation : public std::runtime_error {
 public:
  InvariantViolation(Cycle cycle, const std::string& what)
      : std::runtime_error("cycle " + std::to_string(cycle) + ": " + what), cycle_(cycle) {}

  Cycle cycle() const { return cycle_; }

 private:
  Cycle cycle_;
};

}  // namespace hird
