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
#include <random>
#include <vector>

#include "hefi/bigint.hpp"

namespace hefi {

using Rng = std::mt19937_64;

// Coefficient modulus Q of the ring Z_Q[X]/(X^N + 1).
class Modulus {
 public:
  explicit Modulus(BigInt q);

  const BigInt& value() const { return q_; }
  const BigInt& half() const { return half_; }
  std::size_t bits() const { return bits_; }

  // Canonical representative in [0, Q) of any signed integer.
  BigInt reduce(const BigInt& x) const;

 private:
  BigInt q_;
  BigInt half_;
  std::size_t bits_;
};

// Polynomial with N arbitrary-precision coefficients, lowest degree first.
// Canonical form keeps every coefficient in [0, Q); a fault may break that,
// which check_canonical() reports.
struct BigPoly {
  std::vector<BigInt> coeffs;

  BigPoly() = default;
  explicit BigPoly(std::size_t n) : coeffs(n) {}
  explicit BigPoly(std::vector<BigInt> c) : coeffs(std::move(c)) {}

  std::size_t size() const { return coeffs.size(); }
  BigInt& operator[](std::size_t i) { return coeffs[i]; }
  const BigInt& operator[](std::size_t i) const { return coeffs[i]; }

  friend bool operator==(const BigPoly&, const BigPoly&) = default;
};

bool is_power_of_two(std::size_t n);

// Lifts signed integers into [0, Q).
BigPoly lift(const std::vector<long long>& values, const Modulus& q);

// Throws RepresentationViolation if any coefficient is outside [0, Q).
void check_canonical(const BigPoly& p, const Modulus& q);

BigPoly poly_add(const BigPoly& a, const BigPoly& b, const Modulus& q);
BigPoly poly_sub(const BigPoly& a, const BigPoly& b, const Modulus& q);
BigPoly poly_neg(const BigPoly& a, const Modulus& q);

// Schoolbook product modulo (X^N + 1, Q). O(N^2); the reference every
// faster multiplication is checked against.
BigPoly poly_negacyclic_mul(const BigPoly& a, const BigPoly& b, const Modulus& q);

// Maps c in [0, Q) to (-Q/2, Q/2].
BigInt centered_lift(const BigInt& c, const Modulus& q);

// Uniform over [0, Q).
BigInt sample_below(const Modulus& q, Rng& rng);

BigPoly sample_uniform(std::size_t n, const Modulus& q, Rng& rng);
BigPoly sample_ternary(std::size_t n, const Modulus& q, Rng& rng);
// Rounded N(0, sigma^2). sigma == 0 gives the zero polynomial.
BigPoly sample_gaussian(std::size_t n, double sigma, const Modulus& q, Rng& rng);

}  // namespace hefi
