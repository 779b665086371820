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

#include <cstdint>

namespace hefi {

// Word-sized modular arithmetic for residues of primes below 2^62.

inline std::uint64_t add_mod(std::uint64_t a, std::uint64_t b, std::uint64_t q) {
  std::uint64_t s = a + b;
  return s >= q ? s - q : s;
}

inline std::uint64_t sub_mod(std::uint64_t a, std::uint64_t b, std::uint64_t q) {
  return a >= b ? a - b : a + q - b;
}

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t q) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % q);
}

// Precomputed floor(w * 2^64 / q) for repeated multiplication by a fixed w.
inline std::uint64_t shoup_precompute(std::uint64_t w, std::uint64_t q) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(w) << 64) / q);
}

// a * w mod q for a < q, using the Shoup quotient of w.
inline std::uint64_t mul_mod_shoup(std::uint64_t a, std::uint64_t w, std::uint64_t w_shoup,
                                   std::uint64_t q) {
  auto hi = static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * w_shoup) >> 64);
  std::uint64_t r = a * w - hi * q;
  return r >= q ? r - q : r;
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t q);

// Modular inverse for prime q (Fermat).
std::uint64_t inv_mod(std::uint64_t a, std::uint64_t q);

// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime(std::uint64_t n);

}  // namespace hefi
