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
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "hefi/modarith.hpp"
#include "hefi/rns.hpp"

namespace hefi {

// Smallest psi with multiplicative order exactly `order` (a power of two)
// modulo prime q. Throws ConfigError unless q = 1 mod order.
std::uint64_t find_primitive_root(std::uint64_t q, std::uint64_t order);

// True iff w has multiplicative order exactly `order` (a power of two) mod q.
bool is_primitive_root(std::uint64_t w, std::uint64_t order, std::uint64_t q);

// Cooley-Tukey butterfly: (a + w*b, a - w*b) mod q.
inline std::pair<std::uint64_t, std::uint64_t> butterfly(std::uint64_t a, std::uint64_t b, std::uint64_t w,
                                                         std::uint64_t q) {
  const std::uint64_t wb = mul_mod(w, b, q);
  return {add_mod(a, wb, q), sub_mod(a, wb, q)};
}

std::size_t bit_reverse(std::size_t x, unsigned bits);

// Twiddles for the negacyclic NTT of length n modulo q, with psi folded in.
// forward[k] = psi^bitrev(k), inverse[k] = psi^-bitrev(k).
class TwiddleTable {
 public:
  TwiddleTable(std::uint64_t q, std::size_t n);

  std::uint64_t modulus() const { return q_; }
  std::size_t size() const { return n_; }
  std::uint64_t psi() const { return psi_; }
  std::uint64_t n_inv() const { return n_inv_; }
  std::span<const std::uint64_t> forward() const { return fwd_; }
  std::span<const std::uint64_t> inverse() const { return inv_; }

 private:
  friend void ntt_forward(std::span<std::uint64_t>, const TwiddleTable&);
  friend void ntt_inverse(std::span<std::uint64_t>, const TwiddleTable&);

  std::uint64_t q_;
  std::size_t n_;
  unsigned log_n_;
  std::uint64_t psi_;
  std::uint64_t n_inv_;
  std::uint64_t n_inv_shoup_;
  std::vector<std::uint64_t> fwd_, fwd_shoup_;
  std::vector<std::uint64_t> inv_, inv_shoup_;
};

// In-place forward negacyclic NTT. Output slot i holds the input polynomial
// evaluated at psi^(2*bitrev(i) + 1). Inputs must be reduced; outputs are.
void ntt_forward(std::span<std::uint64_t> a, const TwiddleTable& table);
// Exact inverse of ntt_forward, including the N^-1 scaling.
void ntt_inverse(std::span<std::uint64_t> a, const TwiddleTable& table);

// Per-limb twiddle tables for a whole prime chain.
class NttContext {
 public:
  NttContext(const PrimeChain& chain, std::size_t n);

  std::size_t n() const { return n_; }
  const TwiddleTable& table(std::size_t k) const { return tables_[k]; }

  RnsPoly to_ntt(RnsPoly p) const;
  RnsPoly to_coefficient(RnsPoly p) const;

 private:
  std::size_t n_;
  std::vector<TwiddleTable> tables_;
};

}  // namespace hefi
