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

#include "hird/ring.hpp"

namespace hird {

RingState::RingState(int stages, int lanes)
    : stages_(stages), lanes_(lanes), buf_(static_cast<std::size_t>(lanes) * 2, std::vector<std::optional<Flit>>(stages)) {}

std::size_t RingState::occupancy() const {
  std::size_t n = 0;
  for (const auto& b : buf_)
    for (const auto& slot : b) n += slot.has_value();
  return n;
}

}  // namespace hird
