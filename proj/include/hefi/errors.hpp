/*
 * Copyright 2026 The hefi Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <stdexcept>
#include <string>

namespace hefi {

// Parameters or fault addresses that can never describe a valid run.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Operands that do not share a ring dimension, prime chain or domain.
class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Stored state is outside its canonical range: a residue >= q_k or a big
// coefficient >= Q. Raised by validity checks where a real library would
// assert, and classified as a DETECTED fault outcome.
class RepresentationViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hefi
