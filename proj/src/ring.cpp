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

#include "hefi/ring.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "hefi/errors.hpp"

namespace hefi {

namespace mp = boost::multiprecision;

namespace {

void require_same_size(const BigPoly& a, const BigPoly& b) {
  if (a.size() != b.size()) {
    throw DimensionMismatch("polynomial sizes differ: " + std::to_string(a.size()) + " vs " +
                            std::to_string(b.size()));
  }
}

struct CenteredTerms {
  std::vector<BigInt> values;
  std::vector<std::size_t> index;
  std::size_t max_bits = 0;
};

// Nonzero coefficients of b as signed representatives in (-Q/2, Q/2].
CenteredTerms centered_terms(const BigPoly& b, const Modulus& q) {
  CenteredTerms t;
  for (std::size_t j = 0; j < b.size(); ++j) {
    if (b[j] == 0) continue;
    BigInt c = b[j] > q.half() ? BigInt(b[j] - q.value()) : b[j];
    t.max_bits = std::max(t.max_bits, bit_length(BigInt(abs(c))));
    t.values.push_back(std::move(c));
    t.index.push_back(j);
  }
  return t;
}

// Accumulates a_i * |c_j| into separate positive and negative unsigned
// fixed-width sums when the worst case fits, so the O(N^2) loop only ever
// adds and never touches the heap. Unit multipliers (ternary secrets and
// ephemerals) skip the multiplication.
template <class Acc>
BigPoly schoolbook(const BigPoly& a, const CenteredTerms& terms, const Modulus& q) {
  const std::size_t n = a.size();
  const std::size_t m = terms.values.size();
  std::vector<Acc> lhs(n);
  for (std::size_t i = 0; i < n; ++i) lhs[i] = static_cast<Acc>(a[i]);
  std::vector<Acc> mag(m);
  std::vector<bool> negative(m);
  std::vector<bool> unit(m);
  for (std::size_t t = 0; t < m; ++t) {
    negative[t] = terms.values[t] < 0;
    mag[t] = static_cast<Acc>(BigInt(abs(terms.values[t])));
    unit[t] = mag[t] == 1;
  }

  std::vector<Acc> pos(n);
  std::vector<Acc> neg(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (lhs[i] == 0) continue;
    for (std::size_t t = 0; t < m; ++t) {
      std::size_t k = i + terms.index[t];
      bool minus = negative[t];
      if (k >= n) {
        k -= n;
        minus = !minus;
      }
      Acc& dst = minus ? neg[k] : pos[k];
      if (unit[t]) {
        dst += lhs[i];
      } else {
        dst += lhs[i] * mag[t];
      }
    }
  }

  BigPoly out(n);
  for (std::size_t k = 0; k < n; ++k) {
    out[k] = q.reduce(static_cast<BigInt>(pos[k]) - static_cast<BigInt>(neg[k]));
  }
  return out;
}

// Ternary multipliers: every term is +-a_i. Coefficients are split into
// `digit_bits`-bit digits and each digit position is summed in its own int64;
// the caller picks the width so that N digits cannot overflow.
template <std::size_t W>
BigPoly unit_schoolbook(const BigPoly& a, const CenteredTerms& terms, const Modulus& q, unsigned digit_bits) {
  using Digits = std::array<std::int64_t, W>;
  const std::size_t n = a.size();
  const BigInt mask = (BigInt(1) << digit_bits) - 1;
  std::vector<Digits> lhs(n);
  std::vector<bool> nonzero(n);
  for (std::size_t i = 0; i < n; ++i) {
    BigInt x = a[i];
    nonzero[i] = x != 0;
    for (std::size_t w = 0; w < W; ++w) {
      lhs[i][w] = static_cast<std::int64_t>(x & mask);
      x >>= digit_bits;
    }
  }

  // Term offsets by sign, ascending, so each row splits cleanly at the wrap.
  std::vector<std::size_t> plus;
  std::vector<std::size_t> minus;
  for (std::size_t t = 0; t < terms.index.size(); ++t) {
    (terms.values[t] < 0 ? minus : plus).push_back(terms.index[t]);
  }

  std::vector<Digits> acc(n, Digits{});
  // X^(i+j) = -X^(i+j-n) once i + j wraps past n.
  const auto row = [&](const std::vector<std::size_t>& js, std::size_t i, std::int64_t sign) {
    const Digits& x = lhs[i];
    const auto split = std::lower_bound(js.begin(), js.end(), n - i);
    for (auto it = js.begin(); it != split; ++it) {
      Digits& d = acc[i + *it];
      for (std::size_t w = 0; w < W; ++w) d[w] += sign * x[w];
    }
    for (auto it = split; it != js.end(); ++it) {
      Digits& d = acc[i + *it - n];
      for (std::size_t w = 0; w < W; ++w) d[w] -= sign * x[w];
    }
  };
  for (std::size_t i = 0; i < n; ++i) {
    if (!nonzero[i]) continue;
    row(plus, i, 1);
    row(minus, i, -1);
  }

  BigPoly out(n);
  for (std::size_t k = 0; k < n; ++k) {
    BigInt v = 0;
    for (std::size_t w = W; w-- > 0;) v = (v << digit_bits) + acc[k][w];
    out[k] = q.reduce(v);
  }
  return out;
}

}  // namespace

Modulus::Modulus(BigInt q) : q_(std::move(q)) {
  if (q_ < 2) throw ConfigError("modulus must be at least 2");
  half_ = q_ / 2;
  bits_ = bit_length(q_);
}

BigInt Modulus::reduce(const BigInt& x) const {
  BigInt r = x % q_;
  if (r < 0) r += q_;
  return r;
}

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

BigPoly lift(const std::vector<long long>& values, const Modulus& q) {
  BigPoly p(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) p[i] = q.reduce(BigInt(values[i]));
  return p;
}

void check_canonical(const BigPoly& p, const Modulus& q) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] < 0 || p[i] >= q.value()) {
      throw RepresentationViolation("coefficient " + std::to_string(i) + " outside [0, Q)");
    }
  }
}

BigPoly poly_add(const BigPoly& a, const BigPoly& b, const Modulus& q) {
  require_same_size(a, b);
  BigPoly out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    out[i] = a[i] + b[i];
    if (out[i] >= q.value()) out[i] -= q.value();
  }
  return out;
}

BigPoly poly_sub(const BigPoly& a, const BigPoly& b, const Modulus& q) {
  require_same_size(a, b);
  BigPoly out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    out[i] = a[i] - b[i];
    if (out[i] < 0) out[i] += q.value();
  }
  return out;
}

BigPoly poly_neg(const BigPoly& a, const Modulus& q) {
  BigPoly out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] == 0 ? BigInt(0) : BigInt(q.value() - a[i]);
  return out;
}

BigPoly poly_negacyclic_mul(const BigPoly& a, const BigPoly& b, const Modulus& q) {
  require_same_size(a, b);
  const CenteredTerms terms = centered_terms(b, q);
  if (terms.max_bits == 1) {
    // |sum| <= N * 2^digit_bits must stay below 2^63.
    const std::size_t log_n = bit_length(BigInt(a.size()));
    const unsigned digit_bits = log_n < 62 ? static_cast<unsigned>(62 - log_n) : 0;
    const std::size_t w = digit_bits == 0 ? 0 : (q.bits() + digit_bits - 1) / digit_bits;
    switch (w) {
      case 1: return unit_schoolbook<1>(a, terms, q, digit_bits);
      case 2: return unit_schoolbook<2>(a, terms, q, digit_bits);
      case 3: return unit_schoolbook<3>(a, terms, q, digit_bits);
      case 4: return unit_schoolbook<4>(a, terms, q, digit_bits);
      case 5: return unit_schoolbook<5>(a, terms, q, digit_bits);
      case 6: return unit_schoolbook<6>(a, terms, q, digit_bits);
      default: break;
    }
  }
  // Each partial sum is at most N * Q * max|c_j|.
  const std::size_t need = q.bits() + terms.max_bits + bit_length(BigInt(a.size()));
  if (need <= 256) return schoolbook<mp::uint256_t>(a, terms, q);
  if (need <= 512) return schoolbook<mp::uint512_t>(a, terms, q);
  if (need <= 1024) return schoolbook<mp::uint1024_t>(a, terms, q);
  return schoolbook<BigInt>(a, terms, q);
}

BigInt centered_lift(const BigInt& c, const Modulus& q) {
  if (c < 0 || c >= q.value()) throw RepresentationViolation("coefficient outside [0, Q)");
  return c > q.half() ? BigInt(c - q.value()) : c;
}

BigInt sample_below(const Modulus& q, Rng& rng) {
  const std::size_t bits = q.bits();
  const std::size_t words = (bits + 63) / 64;
  const BigInt mask = (BigInt(1) << bits) - 1;
  for (;;) {
    BigInt x = 0;
    for (std::size_t w = 0; w < words; ++w) {
      x <<= 64;
      x |= rng();
    }
    x &= mask;
    if (x < q.value()) return x;
  }
}

BigPoly sample_uniform(std::size_t n, const Modulus& q, Rng& rng) {
  BigPoly p(n);
  for (auto& c : p.coeffs) c = sample_below(q, rng);
  return p;
}

BigPoly sample_ternary(std::size_t n, const Modulus& q, Rng& rng) {
  std::uniform_int_distribution<int> dist(-1, 1);
  std::vector<long long> v(n);
  for (auto& x : v) x = dist(rng);
  return lift(v, q);
}

BigPoly sample_gaussian(std::size_t n, double sigma, const Modulus& q, Rng& rng) {
  if (!(sigma >= 0.0)) throw ConfigError("sigma must be non-negative");
  std::vector<long long> v(n, 0);
  if (sigma > 0.0) {
    std::normal_distribution<double> dist(0.0, sigma);
    for (auto& x : v) x = std::llround(dist(rng));
  }
  return lift(v, q);
}

}  // namespace hefi
