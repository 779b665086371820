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
#include <string>
#include <variant>

#include "hefi/embedding.hpp"
#include "hefi/ntt.hpp"
#include "hefi/ring.hpp"
#include "hefi/rns.hpp"

namespace hefi {

// TEXTBOOK keeps every polynomial as BigPoly and multiplies with the
// schoolbook routine. RNS_NTT keeps limbs of residues and multiplies
// pointwise in the NTT domain. Both share Q = prod q_k and the same random
// draws, so they agree exactly.
enum class Backend { textbook, rns_ntt };

std::string to_string(Backend b);
Backend parse_backend(const std::string& s);

struct Params {
  std::size_t n;
  unsigned log_delta;
  PrimeChain chain;
  double sigma = 3.2;
  Backend backend = Backend::textbook;
  std::uint64_t seed = 0;

  double delta() const;
  const Modulus& modulus() const { return chain.modulus(); }
  // Throws ConfigError.
  void validate() const;
};

inline constexpr std::size_t kDefaultLimbs = 3;
inline constexpr unsigned kDefaultPrimeBits = 59;
inline constexpr double kDefaultSigma = 3.2;

Params make_params(std::size_t n, unsigned log_delta, Backend backend = Backend::textbook,
                   std::uint64_t seed = 0, std::size_t limbs = kDefaultLimbs,
                   unsigned prime_bits = kDefaultPrimeBits, double sigma = kDefaultSigma);

// Backend representation of one polynomial.
using Poly = std::variant<BigPoly, RnsPoly>;

struct Plaintext {
  Poly poly;
  unsigned log_delta;
};

struct Ciphertext {
  Poly c0;
  Poly c1;
  unsigned log_delta;
};

struct SecretKey {
  BigPoly s;
};

// b = -a*s + e mod Q.
struct PublicKey {
  Poly b;
  Poly a;
};

struct KeyPair {
  SecretKey secret;
  PublicKey pub;
};

class CkksContext {
 public:
  explicit CkksContext(Params params);

  const Params& params() const { return params_; }
  const Modulus& modulus() const { return params_.modulus(); }
  const CanonicalEmbedding& embedding() const { return embedding_; }
  // Only present for the RNS_NTT backend.
  const NttContext* ntt() const { return ntt_ ? &*ntt_ : nullptr; }

  // round(delta * interpolate(z)), lifted into [0, Q). Throws ConfigError if
  // delta * max|z| leaves less than kEncodeMargin of headroom below Q/2.
  Plaintext encode(const Message& z) const;
  Message decode(const Plaintext& pt) const;

  KeyPair keygen(Rng& rng) const;
  Ciphertext encrypt(const Plaintext& pt, const PublicKey& pk, Rng& rng) const;
  // m' = c0 + c1*s mod Q. Validity of both halves is checked first.
  Plaintext decrypt(const Ciphertext& ct, const SecretKey& sk) const;

  // Converts a backend polynomial to canonical big coefficients. Throws
  // RepresentationViolation on out-of-range residues or coefficients.
  BigPoly to_big(const Poly& p) const;
  Poly from_big(const BigPoly& p, Domain domain = Domain::coefficient) const;

  // Centered lift, divide by delta, evaluate at the slot roots.
  Message decode_poly(const BigPoly& m) const;
  // decode(lhs) - decode(rhs), computed from the exact integer difference.
  Message decode_difference(const BigPoly& lhs, const BigPoly& rhs) const;

  static constexpr double kEncodeMargin = 64.0;

 private:
  BigPoly mul(const BigPoly& a, const BigPoly& b) const;

  Params params_;
  CanonicalEmbedding embedding_;
  std::optional<NttContext> ntt_;
};

}  // namespace hefi
