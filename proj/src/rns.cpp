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

#include "hefi/rns.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <string>

#include "hefi/errors.hpp"
#include "hefi/modarith.hpp"

namespace hefi {

namespace {

BigInt product(const std::vector<std::uint64_t>& primes) {
  if (primes.empty()) throw ConfigError("prime chain must not be empty");
  return std::accumulate(primes.begin(), primes.end(), BigInt(1),
                         [](const BigInt& acc, std::uint64_t q) { return acc * q; });
}

void require_compatible(const RnsPoly& a, const RnsPoly& b, const PrimeChain& chain) {
  if (a.num_limbs() != chain.size() || b.num_limbs() != chain.size()) {
    throw DimensionMismatch("limb count does not match prime chain");
  }
  if (a.n() != b.n()) throw DimensionMismatch("ring dimensions differ");
  if (a.domain != b.domain) throw DimensionMismatch("operands in different domains");
}

template <class Op>
RnsPoly limbwise(const RnsPoly& a, const RnsPoly& b, const PrimeChain& chain, Op op) {
  require_compatible(a, b, chain);
  RnsPoly out(a.num_limbs(), a.n(), a.domain);
  for (std::size_t k = 0; k < chain.size(); ++k) {
    const std::uint64_t q = chain.prime(k);
    for (std::size_t i = 0; i < a.n(); ++i) out.limbs[k][i] = op(a.limbs[k][i], b.limbs[k][i], q);
  }
  return out;
}

}  // namespace

PrimeChain::PrimeChain(std::vector<std::uint64_t> primes)
    : primes_(std::move(primes)), modulus_(product(primes_)) {
  for (std::size_t k = 0; k < primes_.size(); ++k) {
    const std::uint64_t q = primes_[k];
    if (q >= (std::uint64_t{1} << 62) || !is_prime(q)) {
      throw ConfigError("chain entry " + std::to_string(q) + " is not a prime below 2^62");
    }
    if (std::count(primes_.begin(), primes_.end(), q) != 1) {
      throw ConfigError("chain primes must be distinct");
    }
    BigInt cof = modulus_.value() / q;
    const auto cof_mod = static_cast<std::uint64_t>(cof % q);
    const std::uint64_t inv = inv_mod(cof_mod, q);
    cofactors_.push_back(cof);
    cofactor_inv_.push_back(inv);
    basis_.push_back(cof * inv);
  }
}

PrimeChain generate_prime_chain(std::size_t n, std::size_t count, unsigned bit_size,
                                std::optional<std::uint64_t> seed) {
  if (bit_size < 2 || bit_size > 62) throw ConfigError("prime bit size must be in [2, 62]");
  if (count < 1) throw ConfigError("prime chain needs at least one prime");
  if (!is_power_of_two(n)) throw ConfigError("ring dimension must be a power of two");

  const std::uint64_t step = 2 * static_cast<std::uint64_t>(n);
  const std::uint64_t top = std::uint64_t{1} << bit_size;
  // Largest candidate = 1 mod 2n strictly below 2^bit_size.
  if (top <= step) throw ConfigError("no prime = 1 mod 2N fits in " + std::to_string(bit_size) + " bits");
  const std::uint64_t highest = ((top - 2) / step) * step + 1;

  std::uint64_t start = highest;
  if (seed) {
    std::mt19937_64 rng(*seed);
    const std::uint64_t low = top >> 1;
    std::uniform_int_distribution<std::uint64_t> dist(low, top - 1);
    const std::uint64_t pick = dist(rng);
    start = pick < step ? 1 : ((pick - 1) / step) * step + 1;
  }

  std::vector<std::uint64_t> primes;
  auto scan = [&](std::uint64_t from, std::uint64_t stop_below) {
    for (std::uint64_t c = from; c >= stop_below && c > 1 && primes.size() < count; c -= step) {
      if (is_prime(c)) primes.push_back(c);
      if (c < step) break;
    }
  };
  scan(start, 2);
  if (primes.size() < count && start != highest) {
    // Wrap around to the top of the range, above the seeded start.
    for (std::uint64_t c = highest; c > start && primes.size() < count; c -= step) {
      if (is_prime(c)) primes.push_back(c);
    }
  }
  if (primes.size() < count) {
    throw ConfigError("only " + std::to_string(primes.size()) + " primes = 1 mod " + std::to_string(step) +
                      " below 2^" + std::to_string(bit_size));
  }
  return PrimeChain(std::move(primes));
}

void check_residues(const RnsPoly& r, const PrimeChain& chain) {
  if (r.num_limbs() != chain.size()) throw DimensionMismatch("limb count does not match prime chain");
  for (std::size_t k = 0; k < chain.size(); ++k) {
    const std::uint64_t q = chain.prime(k);
    for (std::size_t i = 0; i < r.n(); ++i) {
      if (r.limbs[k][i] >= q) {
        throw RepresentationViolation("residue " + std::to_string(i) + " of limb " + std::to_string(k) +
                                      " is not below q_k");
      }
    }
  }
}

RnsPoly to_rns(const BigPoly& p, const PrimeChain& chain) {
  RnsPoly out(chain.size(), p.size());
  for (std::size_t k = 0; k < chain.size(); ++k) {
    const std::uint64_t q = chain.prime(k);
    for (std::size_t i = 0; i < p.size(); ++i) out.limbs[k][i] = static_cast<std::uint64_t>(p[i] % q);
  }
  return out;
}

BigPoly from_rns(const RnsPoly& r, const PrimeChain& chain) {
  if (r.domain != Domain::coefficient) throw DimensionMismatch("CRT reconstruction needs coefficient domain");
  check_residues(r, chain);
  const Modulus& q = chain.modulus();
  BigPoly out(r.n());
  for (std::size_t i = 0; i < r.n(); ++i) {
    BigInt acc = 0;
    for (std::size_t k = 0; k < chain.size(); ++k) acc += chain.crt_basis(k) * r.limbs[k][i];
    out[i] = acc % q.value();
  }
  return out;
}

RnsPoly rns_add(const RnsPoly& a, const RnsPoly& b, const PrimeChain& chain) {
  return limbwise(a, b, chain, add_mod);
}

RnsPoly rns_sub(const RnsPoly& a, const RnsPoly& b, const PrimeChain& chain) {
  return limbwise(a, b, chain, sub_mod);
}

RnsPoly rns_mul_pointwise(const RnsPoly& a, const RnsPoly& b, const PrimeChain& chain) {
  if (a.domain != Domain::ntt || b.domain != Domain::ntt) {
    throw DimensionMismatch("pointwise product needs NTT-domain operands");
  }
  return limbwise(a, b, chain, mul_mod);
}

}  // namespace hefi
