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

#include "hefi/ckks.hpp"

#include <cmath>

#include "hefi/errors.hpp"

namespace hefi {

namespace {

bool all_zero(const BigPoly& p) {
  for (const auto& c : p.coeffs) {
    if (c != 0) return false;
  }
  return true;
}

}  // namespace

std::string to_string(Backend b) { return b == Backend::textbook ? "textbook" : "rns_ntt"; }

Backend parse_backend(const std::string& s) {
  if (s == "textbook") return Backend::textbook;
  if (s == "rns_ntt" || s == "rns-ntt") return Backend::rns_ntt;
  throw ConfigError("unknown backend '" + s + "'");
}

double Params::delta() const { return std::ldexp(1.0, static_cast<int>(log_delta)); }

void Params::validate() const {
  if (n < 2 || !is_power_of_two(n)) throw ConfigError("N must be a power of two >= 2");
  if (log_delta < 1) throw ConfigError("delta must be a power of two >= 2");
  if (!(sigma >= 0.0)) throw ConfigError("sigma must be non-negative");
  // delta itself must sit well below Q/2 or no message fits.
  if (log_delta + 7 >= modulus().bits()) throw ConfigError("delta too large for Q");
  if (backend == Backend::rns_ntt) {
    for (std::uint64_t q : chain.primes()) {
      if ((q - 1) % (2 * n) != 0) throw ConfigError("chain prime is not 1 mod 2N");
    }
  }
}

Params make_params(std::size_t n, unsigned log_delta, Backend backend, std::uint64_t seed, std::size_t limbs,
                   unsigned prime_bits, double sigma) {
  if (n < 2 || !is_power_of_two(n)) throw ConfigError("N must be a power of two >= 2");
  Params p{n, log_delta, generate_prime_chain(n, limbs, prime_bits), sigma, backend, seed};
  p.validate();
  return p;
}

CkksContext::CkksContext(Params params) : params_(std::move(params)), embedding_(params_.n) {
  params_.validate();
  if (params_.backend == Backend::rns_ntt) ntt_.emplace(params_.chain, params_.n);
}

BigPoly CkksContext::mul(const BigPoly& a, const BigPoly& b) const {
  return poly_negacyclic_mul(a, b, modulus());
}

Plaintext CkksContext::encode(const Message& z) const {
  if (static_cast<std::size_t>(z.size()) != embedding_.slots()) {
    throw DimensionMismatch("message must have N/2 slots");
  }
  const double max_abs = z.size() == 0 ? 0.0 : z.cwiseAbs().maxCoeff();
  if (max_abs > 0.0 &&
      std::log2(max_abs) + params_.log_delta + std::log2(kEncodeMargin) >= static_cast<double>(modulus().bits() - 1)) {
    throw ConfigError("delta * max|z| overflows the encoding margin below Q/2");
  }
  const Eigen::VectorXd coeffs = embedding_.interpolate(z) * params_.delta();
  BigPoly p(params_.n);
  for (std::size_t i = 0; i < params_.n; ++i) {
    p[i] = modulus().reduce(BigInt(std::round(coeffs(static_cast<Eigen::Index>(i)))));
  }
  return {from_big(p), params_.log_delta};
}

Message CkksContext::decode(const Plaintext& pt) const { return decode_poly(to_big(pt.poly)); }

Message CkksContext::decode_poly(const BigPoly& m) const {
  if (m.size() != params_.n) throw DimensionMismatch("plaintext has wrong ring dimension");
  Eigen::VectorXd real(static_cast<Eigen::Index>(params_.n));
  const int shift = -static_cast<int>(params_.log_delta);
  for (std::size_t i = 0; i < params_.n; ++i) {
    real(static_cast<Eigen::Index>(i)) = std::ldexp(to_double(centered_lift(m[i], modulus())), shift);
  }
  return embedding_.evaluate(real);
}

Message CkksContext::decode_difference(const BigPoly& lhs, const BigPoly& rhs) const {
  if (lhs.size() != params_.n || rhs.size() != params_.n) throw DimensionMismatch("wrong ring dimension");
  Eigen::VectorXd real(static_cast<Eigen::Index>(params_.n));
  const int shift = -static_cast<int>(params_.log_delta);
  for (std::size_t i = 0; i < params_.n; ++i) {
    const BigInt d = centered_lift(lhs[i], modulus()) - centered_lift(rhs[i], modulus());
    real(static_cast<Eigen::Index>(i)) = std::ldexp(to_double(d), shift);
  }
  return embedding_.evaluate(real);
}

BigPoly CkksContext::to_big(const Poly& p) const {
  if (const auto* big = std::get_if<BigPoly>(&p)) {
    check_canonical(*big, modulus());
    return *big;
  }
  const auto& rns = std::get<RnsPoly>(p);
  check_residues(rns, params_.chain);
  if (rns.domain == Domain::coefficient) return from_rns(rns, params_.chain);
  if (!ntt_) throw DimensionMismatch("NTT-domain polynomial without an NTT context");
  return from_rns(ntt_->to_coefficient(rns), params_.chain);
}

Poly CkksContext::from_big(const BigPoly& p, Domain domain) const {
  if (params_.backend == Backend::textbook) return p;
  RnsPoly r = to_rns(p, params_.chain);
  return domain == Domain::ntt ? ntt_->to_ntt(std::move(r)) : r;
}

KeyPair CkksContext::keygen(Rng& rng) const {
  const std::size_t n = params_.n;
  BigPoly s = sample_ternary(n, modulus(), rng);
  while (all_zero(s)) s = sample_ternary(n, modulus(), rng);
  BigPoly a = sample_uniform(n, modulus(), rng);
  BigPoly e = sample_gaussian(n, params_.sigma, modulus(), rng);

  if (params_.backend == Backend::textbook) {
    BigPoly b = poly_add(poly_neg(mul(a, s), modulus()), e, modulus());
    return {SecretKey{std::move(s)}, PublicKey{std::move(b), std::move(a)}};
  }
  const PrimeChain& chain = params_.chain;
  RnsPoly a_ntt = ntt_->to_ntt(to_rns(a, chain));
  RnsPoly s_ntt = ntt_->to_ntt(to_rns(s, chain));
  RnsPoly e_ntt = ntt_->to_ntt(to_rns(e, chain));
  RnsPoly b_ntt = rns_sub(e_ntt, rns_mul_pointwise(a_ntt, s_ntt, chain), chain);
  return {SecretKey{std::move(s)}, PublicKey{std::move(b_ntt), std::move(a_ntt)}};
}

Ciphertext CkksContext::encrypt(const Plaintext& pt, const PublicKey& pk, Rng& rng) const {
  const std::size_t n = params_.n;
  BigPoly u = sample_ternary(n, modulus(), rng);
  BigPoly e0 = sample_gaussian(n, params_.sigma, modulus(), rng);
  BigPoly e1 = sample_gaussian(n, params_.sigma, modulus(), rng);

  if (params_.backend == Backend::textbook) {
    const auto& p = std::get<BigPoly>(pt.poly);
    check_canonical(p, modulus());
    const auto& b = std::get<BigPoly>(pk.b);
    const auto& a = std::get<BigPoly>(pk.a);
    BigPoly c0 = poly_add(poly_add(mul(b, u), e0, modulus()), p, modulus());
    BigPoly c1 = poly_add(mul(a, u), e1, modulus());
    return {std::move(c0), std::move(c1), pt.log_delta};
  }
  const PrimeChain& chain = params_.chain;
  const auto& p = std::get<RnsPoly>(pt.poly);
  check_residues(p, chain);
  RnsPoly p_ntt = ntt_->to_ntt(p);
  RnsPoly u_ntt = ntt_->to_ntt(to_rns(u, chain));
  RnsPoly e0_ntt = ntt_->to_ntt(to_rns(e0, chain));
  RnsPoly e1_ntt = ntt_->to_ntt(to_rns(e1, chain));
  const auto& b = std::get<RnsPoly>(pk.b);
  const auto& a = std::get<RnsPoly>(pk.a);
  RnsPoly c0 = rns_add(rns_add(rns_mul_pointwise(b, u_ntt, chain), e0_ntt, chain), p_ntt, chain);
  RnsPoly c1 = rns_add(rns_mul_pointwise(a, u_ntt, chain), e1_ntt, chain);
  return {std::move(c0), std::move(c1), pt.log_delta};
}

Plaintext CkksContext::decrypt(const Ciphertext& ct, const SecretKey& sk) const {
  if (params_.backend == Backend::textbook) {
    const auto& c0 = std::get<BigPoly>(ct.c0);
    const auto& c1 = std::get<BigPoly>(ct.c1);
    check_canonical(c0, modulus());
    check_canonical(c1, modulus());
    return {poly_add(c0, mul(c1, sk.s), modulus()), ct.log_delta};
  }
  const PrimeChain& chain = params_.chain;
  const auto& c0 = std::get<RnsPoly>(ct.c0);
  const auto& c1 = std::get<RnsPoly>(ct.c1);
  check_residues(c0, chain);
  check_residues(c1, chain);
  RnsPoly s_ntt = ntt_->to_ntt(to_rns(sk.s, chain));
  RnsPoly m = rns_add(ntt_->to_ntt(c0), rns_mul_pointwise(ntt_->to_ntt(c1), s_ntt, chain), chain);
  return {ntt_->to_coefficient(std::move(m)), ct.log_delta};
}

}  // namespace hefi
