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

#include <cstddef>

#include <boost/multiprecision/cpp_int.hpp>

namespace hefi {

using BigInt = boost::multiprecision::cpp_int;

// Number of significant bits; 0 for zero. Sign is ignored.
inline std::size_t bit_length(const BigInt& x) {
  if (x == 0) return 0;
  return boost::multiprecision::msb(boost::multiprecision::abs(x)) + 1;
}

inline double to_double(const BigInt& x) { return x.convert_to<double>(); }

}  // namespace hefi
