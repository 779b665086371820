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

#include "hefi/ntt.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "hefi/errors.hpp"
#include "hefi/modarith.hpp"

namespace hefi {

bool is_primitive_root(std::uint64_t w, std::uint64_t order, std::uint64_t q) {
  if (order < 2 || !std::has_single_bit(order)) return false;
  return pow_mod(w, order / 2, q) == q - 1;
}

std::uint64_t find_primitive_root(std::uint64_t q, std::uint64_t order) {
  if (order < 2 || !std::has_single_bit(order)) throw ConfigError("root order must be a power of two");
  if (q < 3 || (q - 1) % order != 0) {
    throw ConfigError(std::to_string(q) + " is not 1 mod " + std::to_string(order));
  }
  const std::uint64_t cofactor = (q - 1) / order;
  for (std::uint64_t g = 2; g < q; ++g) {
    const std::uint64_t candidate = pow_mod(g, cofactor, q);
    if (!is_primitive_root(candidate, order, q)) continue;
    // The roots of exact order are candidate^odd; return the least.
    std::uint64_t best = candidate;
    const std::uint64_t sq = mul_mod(candidate, candidate, q);
    std::uint64_t x = candidate;
    for (std::uint64_t k = 1; k < order / 2; ++k) {
      x = mul_mod(x, sq, q);
      best = std::min(best, x);
    }
    return best;
  }
  throw ConfigError("no primitive root found; is " + std::to_string(q) + " prime?");
}

std::size_t bit_reverse(std::size_t x, unsigned bits) {
  std::size_t r = 0;
  for (unsigned b = 0; b < bits; ++b) {
    r = (r << 1) | (x & 1);
    x >>= 1;
  }
  return r;
}

TwiddleTable::TwiddleTable(std::uint64_t q, std::size_t n) : q_(q), n_(n) {
  if (n < 2 || !std::has_single_bit(n)) throw ConfigError("NTT length must be a power of two >= 2");
  log_n_ = static_cast<unsigned>(std::countr_zero(n));
  psi_ = find_primitive_root(q, 2 * static_cast<std::uint64_t>(n));
  const std::uint64_t psi_inv = inv_mod(psi_, q);
  n_inv_ = inv_mod(static_cast<std::uint64_t>(n) % q, q);
  n_inv_shoup_ = shoup_precompute(n_inv_, q);

  fwd_.resize(n);
  inv_.resize(n);
  std::uint64_t p = 1, pi = 1;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t r = bit_reverse(k, log_n_);
    fwd_[r] = p;
    inv_[r] = pi;
    p = mul_mod(p, psi_, q);
    pi = mul_mod(pi, psi_inv, q);
  }
  fwd_shoup_.resize(n);
  inv_shoup_.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    fwd_shoup_[k] = shoup_precompute(fwd_[k], q);
    inv_shoup_[k] = shoup_precompute(inv_[k], q);
  }
}

void ntt_forward(std::span<std::uint64_t> a, const TwiddleTable& table) {
  const std::size_t n = table.n_;
  if (a.size() != n) throw DimensionMismatch("NTT input length does not match table");
  const std::uint64_t q = table.q_;
  std::size_t t = n;
  for (std::size_t m = 1; m < n; m <<= 1) {
    t >>= 1;
    for (std::size_t i = 0; i < m; ++i) {
      const std::uint64_t w = table.fwd_[m + i];
      const std::uint64_t ws = table.fwd_shoup_[m + i];
      const std::size_t j1 = 2 * i * t;
      for (std::size_t j = j1; j < j1 + t; ++j) {
        const std::uint64_t u = a[j];
        const std::uint64_t v = mul_mod_shoup(a[j + t], w, ws, q);
        a[j] = add_mod(u, v, q);
        a[j + t] = sub_mod(u, v, q);
      }
    }
  }
}

void ntt_inverse(std::span<std::uint64_t> a, const TwiddleTable& table) {
  const std::size_t n = table.n_;
  if (a.size() != n) throw DimensionMismatch("NTT input length does not match table");
  const std::uint64_t q = table.q_;
  std::size_t t = 1;
  for (std::size_t m = n; m > 1; m >>= 1) {
    const std::size_t h = m >> 1;
    std::size_t j1 = 0;
    for (std::size_t i = 0; i < h; ++i) {
      const std::uint64_t w = table.inv_[h + i];
      const std::uint64_t ws = table.inv_shoup_[h + i];
      // Gentleman-Sande butterfly.
      for (std::size_t j = j1; j < j1 + t; ++j) {
        const std::uint64_t u = a[j];
        const std::uint64_t v = a[j + t];
        a[j] = add_mod(u, v, q);
        a[j + t] = mul_mod_shoup(sub_mod(u, v, q), w, ws, q);
      }
      j1 += 2 * t;
    }
    t <<= 1;
  }
  for (auto& x : a) x = mul_mod_shoup(x, table.n_inv_, table.n_inv_shoup_, q);
}

NttContext::NttContext(const PrimeChain& chain, std::size_t n) : n_(n) {
  tables_.reserve(chain.size());
  for (std::uint64_t q : chain.primes()) tables_.emplace_back(q, n);
}

RnsPoly NttContext::to_ntt(RnsPoly p) const {
  if (p.domain == Domain::ntt) return p;
  if (p.num_limbs() != tables_.size()) throw DimensionMismatch("limb count does not match NTT context");
  for (std::size_t k = 0; k < tables_.size(); ++k) ntt_forward(p.limb(k), tables_[k]);
  p.domain = Domain::ntt;
  return p;
}

RnsPoly NttContext::to_coefficient(RnsPoly p) const {
  if (p.domain == Domain::coefficient) return p;
  if (p.num_limbs() != tables_.size()) throw DimensionMismatch("limb count does not match NTT context");
  for (std::size_t k = 0; k < tables_.size(); ++k) ntt_inverse(p.limb(k), tables_[k]);
  p.domain = Domain::coefficient;
  return p;
}

}  // namespace hefi
