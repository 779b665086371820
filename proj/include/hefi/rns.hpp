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
#include <optional>
#include <span>
#include <vector>

#include "hefi/bigint.hpp"
#include "hefi/ring.hpp"

namespace hefi {

// Chain of word-sized NTT-friendly primes q_k with CRT precomputation.
// Q = prod q_k, Q_k = Q / q_k, inv_k = Q_k^{-1} mod q_k.
class PrimeChain {
 public:
  explicit PrimeChain(std::vector<std::uint64_t> primes);

  std::size_t size() const { return primes_.size(); }
  std::uint64_t prime(std::size_t k) const { return primes_[k]; }
  const std::vector<std::uint64_t>& primes() const { return primes_; }
  const Modulus& modulus() const { return modulus_; }
  const BigInt& cofactor(std::size_t k) const { return cofactors_[k]; }
  std::uint64_t cofactor_inverse(std::size_t k) const { return cofactor_inv_[k]; }
  // inv_k * Q_k, the CRT basis element that multiplies r_k.
  const BigInt& crt_basis(std::size_t k) const { return basis_[k]; }

  friend bool operator==(const PrimeChain& a, const PrimeChain& b) { return a.primes_ == b.primes_; }

 private:
  std::vector<std::uint64_t> primes_;
  Modulus modulus_;
  std::vector<BigInt> cofactors_;
  std::vector<std::uint64_t> cofactor_inv_;
  std::vector<BigInt> basis_;
};

// `count` distinct primes below 2^bit_size, each = 1 mod 2n. Without a seed
// the search walks down from 2^bit_size; a seed picks a pseudo-random start
// in [2^(bit_size-1), 2^bit_size) and walks down from there, wrapping once.
PrimeChain generate_prime_chain(std::size_t n, std::size_t count, unsigned bit_size,
                                std::optional<std::uint64_t> seed = std::nullopt);

enum class Domain { coefficient, ntt };

// One row of N residues per prime. Residues are raw 64-bit words; a flipped
// word may exceed q_k until check_residues() is run.
struct RnsPoly {
  std::vector<std::vector<std::uint64_t>> limbs;
  Domain domain = Domain::coefficient;

  RnsPoly() = default;
  RnsPoly(std::size_t num_limbs, std::size_t n, Domain d = Domain::coefficient)
      : limbs(num_limbs, std::vector<std::uint64_t>(n, 0)), domain(d) {}

  std::size_t num_limbs() const { return limbs.size(); }
  std::size_t n() const { return limbs.empty() ? 0 : limbs.front().size(); }
  std::span<std::uint64_t> limb(std::size_t k) { return limbs[k]; }
  std::span<const std::uint64_t> limb(std::size_t k) const { return limbs[k]; }

  friend bool operator==(const RnsPoly&, const RnsPoly&) = default;
};

// Throws RepresentationViolation if any residue is >= its prime.
void check_residues(const RnsPoly& r, const PrimeChain& chain);

RnsPoly to_rns(const BigPoly& p, const PrimeChain& chain);

// CRT reconstruction: p = (sum_k r_k * inv_k * Q_k) mod Q.
BigPoly from_rns(const RnsPoly& r, const PrimeChain& chain);

RnsPoly rns_add(const RnsPoly& a, const RnsPoly& b, const PrimeChain& chain);
RnsPoly rns_sub(const RnsPoly& a, const RnsPoly& b, const PrimeChain& chain);
// Both operands must be in the NTT domain.
RnsPoly rns_mul_pointwise(const RnsPoly& a, const RnsPoly& b, const PrimeChain& chain);

}  // namespace hefi
