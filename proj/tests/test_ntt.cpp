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

#include <bit>
#include <random>

#include "doctest.h"
#include "hefi/errors.hpp"
#include "hefi/modarith.hpp"
#include "hefi/ntt.hpp"

using namespace hefi;

namespace {

using Limb = std::vector<std::uint64_t>;

Limb random_limb(std::size_t n, std::uint64_t q, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint64_t> dist(0, q - 1);
  Limb v(n);
  for (auto& x : v) x = dist(rng);
  return v;
}

// Direct O(N^2) evaluation of sum a_i x^i mod q.
std::uint64_t evaluate(const Limb& a, std::uint64_t x, std::uint64_t q) {
  std::uint64_t acc = 0;
  for (std::size_t i = a.size(); i-- > 0;) acc = add_mod(mul_mod(acc, x, q), a[i], q);
  return acc;
}

Limb negacyclic_schoolbook(const Limb& a, const Limb& b, std::uint64_t q) {
  const std::size_t n = a.size();
  Limb out(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const std::uint64_t prod = mul_mod(a[i], b[j], q);
      if (i + j < n) {
        out[i + j] = add_mod(out[i + j], prod, q);
      } else {
        out[i + j - n] = sub_mod(out[i + j - n], prod, q);
      }
    }
  }
  return out;
}

}  // namespace

TEST_CASE("find_primitive_root") {
  CHECK(is_primitive_root(2, 8, 17));
  CHECK(pow_mod(2, 8, 17) == 1);
  CHECK(pow_mod(2, 4, 17) == 16);
  CHECK(find_primitive_root(17, 8) == 2);
  CHECK(find_primitive_root(5, 4) == 2);

  for (std::uint64_t q : {17ULL, 97ULL, 257ULL, 7681ULL, 12289ULL}) {
    for (std::uint64_t order = 2; (q - 1) % order == 0; order *= 2) {
      const std::uint64_t psi = find_primitive_root(q, order);
      CHECK(pow_mod(psi, order, q) == 1);
      CHECK(pow_mod(psi, order / 2, q) == q - 1);
      for (std::uint64_t w = 1; w < psi; ++w) CHECK_FALSE(is_primitive_root(w, order, q));
    }
  }
  const PrimeChain chain = generate_prime_chain(1024, 3, 59);
  for (auto q : chain.primes()) {
    const std::uint64_t psi = find_primitive_root(q, 2048);
    CHECK(pow_mod(psi, 1024, q) == q - 1);
  }

  CHECK_THROWS_AS(find_primitive_root(19, 8), ConfigError);
  CHECK_THROWS_AS(find_primitive_root(17, 6), ConfigError);
}

TEST_CASE("butterfly") {
  CHECK(butterfly(3, 5, 4, 17) == std::pair<std::uint64_t, std::uint64_t>{6, 0});
  CHECK(butterfly(9, 0, 13, 17) == std::pair<std::uint64_t, std::uint64_t>{9, 9});
  CHECK(butterfly(0, 5, 1, 17) == std::pair<std::uint64_t, std::uint64_t>{5, 12});
  CHECK(butterfly(0, 0, 1, 17) == std::pair<std::uint64_t, std::uint64_t>{0, 0});
}

TEST_CASE("twiddle table invariants") {
  const TwiddleTable t(17, 4);
  CHECK(t.psi() == 2);
  CHECK(mul_mod(4, t.n_inv(), 17) == 1);
  CHECK(t.forward().size() == 4);
  CHECK(t.inverse().size() == 4);
  for (std::size_t k = 0; k < 4; ++k) CHECK(mul_mod(t.forward()[k], t.inverse()[k], 17) == 1);
  CHECK_THROWS_AS(TwiddleTable(17, 16), ConfigError);
  CHECK_THROWS_AS(TwiddleTable(17, 3), ConfigError);
}

TEST_CASE("ntt_forward examples") {
  const TwiddleTable t(17, 4);
  Limb delta{1, 0, 0, 0};
  ntt_forward(delta, t);
  CHECK(delta == Limb{1, 1, 1, 1});

  Limb zero(4, 0);
  ntt_forward(zero, t);
  CHECK(zero == Limb(4, 0));

  Limb wrong(8, 0);
  CHECK_THROWS_AS(ntt_forward(wrong, t), DimensionMismatch);
  CHECK_THROWS_AS(ntt_inverse(wrong, t), DimensionMismatch);
}

TEST_CASE("ntt_forward output i is the evaluation at psi^(2 bitrev(i) + 1)") {
  std::mt19937_64 rng(17);
  struct Case {
    std::uint64_t q;
    std::size_t n;
  };
  for (Case c : {Case{17, 8}, Case{17, 4}, Case{97, 16}, Case{12289, 64}}) {
    const TwiddleTable t(c.q, c.n);
    const unsigned bits = static_cast<unsigned>(std::countr_zero(c.n));
    for (int trial = 0; trial < 20; ++trial) {
      const Limb a = random_limb(c.n, c.q, rng);
      Limb out = a;
      ntt_forward(out, t);
      for (std::size_t i = 0; i < c.n; ++i) {
        const std::uint64_t x = pow_mod(t.psi(), 2 * bit_reverse(i, bits) + 1, c.q);
        CHECK(out[i] == evaluate(a, x, c.q));
      }
    }
  }
}

TEST_CASE("ntt_inverse") {
  const TwiddleTable t(17, 4);
  Limb ones{1, 1, 1, 1};
  ntt_inverse(ones, t);
  CHECK(ones == Limb{1, 0, 0, 0});

  std::mt19937_64 rng(5);
  const PrimeChain chain = generate_prime_chain(256, 3, 59);
  for (auto q : chain.primes()) {
    const TwiddleTable table(q, 256);
    for (int trial = 0; trial < 20; ++trial) {
      const Limb a = random_limb(256, q, rng);
      Limb x = a;
      ntt_forward(x, table);
      ntt_inverse(x, table);
      CHECK(x == a);
    }
  }
}

TEST_CASE("convolution theorem against schoolbook") {
  std::mt19937_64 rng(8);
  const PrimeChain chain = generate_prime_chain(64, 2, 59);
  for (std::size_t n : {2u, 8u, 64u}) {
    for (auto q : chain.primes()) {
      const TwiddleTable table(q, n);
      for (int trial = 0; trial < 10; ++trial) {
        const Limb a = random_limb(n, q, rng);
        const Limb b = random_limb(n, q, rng);
        Limb fa = a, fb = b;
        ntt_forward(fa, table);
        ntt_forward(fb, table);
        Limb prod(n);
        for (std::size_t i = 0; i < n; ++i) prod[i] = mul_mod(fa[i], fb[i], q);
        ntt_inverse(prod, table);
        CHECK(prod == negacyclic_schoolbook(a, b, q));
      }
    }
  }
}

TEST_CASE("RNS pointwise product matches the big-integer schoolbook product") {
  const std::size_t n = 8;
  const PrimeChain chain = generate_prime_chain(n, 3, 59);
  const NttContext ntt(chain, n);
  Rng rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const BigPoly a = sample_uniform(n, chain.modulus(), rng);
    const BigPoly b = sample_uniform(n, chain.modulus(), rng);
    const RnsPoly prod = rns_mul_pointwise(ntt.to_ntt(to_rns(a, chain)), ntt.to_ntt(to_rns(b, chain)), chain);
    CHECK(from_rns(ntt.to_coefficient(prod), chain) == poly_negacyclic_mul(a, b, chain.modulus()));
  }
}

TEST_CASE("a single NTT-domain delta spreads to every coefficient") {
  std::mt19937_64 rng(12);
  const PrimeChain chain = generate_prime_chain(1024, 3, 59);
  for (std::size_t n : {4u, 64u, 1024u}) {
    for (auto q : chain.primes()) {
      const TwiddleTable table(q, n);
      for (int trial = 0; trial < 5; ++trial) {
        Limb d(n, 0);
        d[rng() % n] = 1 + rng() % (q - 1);
        ntt_inverse(d, table);
        for (auto v : d) CHECK(v != 0);
      }
    }
  }
}

TEST_CASE("linearity") {
  std::mt19937_64 rng(31);
  const std::uint64_t q = generate_prime_chain(32, 1, 50).prime(0);
  const TwiddleTable table(q, 32);
  for (int trial = 0; trial < 20; ++trial) {
    const Limb a = random_limb(32, q, rng);
    const Limb b = random_limb(32, q, rng);
    Limb diff(32);
    for (std::size_t i = 0; i < 32; ++i) diff[i] = sub_mod(a[i], b[i], q);
    Limb fa = a, fb = b;
    ntt_forward(fa, table);
    ntt_forward(fb, table);
    ntt_forward(diff, table);
    for (std::size_t i = 0; i < 32; ++i) CHECK(diff[i] == sub_mod(fa[i], fb[i], q));
  }
}
