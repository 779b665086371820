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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include "hefi/ckks.hpp"

namespace hefi {

enum class Stage { post_encode, post_encrypt };
enum class Target { plaintext, c0, c1 };
// big: canonical magnitude bits of a [0, Q) coefficient (TEXTBOOK only).
// rns_limb / ntt_limb: one 64-bit residue word of limb k in the coefficient
// or NTT domain (RNS_NTT only).
enum class Representation { big, rns_limb, ntt_limb };
enum class Outcome { benign, sdc, detected };

std::string to_string(Stage s);
std::string to_string(Target t);
std::string to_string(Representation r);
std::string to_string(Outcome o);
Target parse_target(const std::string& s);
Representation parse_representation(const std::string& s);
Stage parse_stage(const std::string& s);

// Address of one single-bit flip.
struct FaultSpec {
  Stage stage = Stage::post_encrypt;
  Target target = Target::c0;
  Representation representation = Representation::big;
  std::size_t limb = 0;
  std::size_t coeff_index = 0;
  unsigned bit_index = 0;

  friend auto operator<=>(const FaultSpec&, const FaultSpec&) = default;
};

// Stage implied by a target: the plaintext is hit after encoding, either
// ciphertext half after encryption.
Stage stage_for(Target t);

// Throws ConfigError if the address does not exist for these params.
void validate_fault(const FaultSpec& spec, const Params& params);

// XOR-toggles exactly one bit. Throws ConfigError on an out-of-range address.
void flip_bit(BigPoly& p, std::size_t coeff, unsigned bit);
void flip_bit(RnsPoly& p, std::size_t limb, std::size_t coeff, unsigned bit);

// Flips the addressed bit of `state`, which must already be held in the
// addressed representation (BigPoly for big, RnsPoly in the matching domain
// for rns_limb / ntt_limb).
void apply_fault(Poly& state, const FaultSpec& spec);

struct Thresholds {
  // Fault error within tau_benign x baseline error is benign.
  double tau_benign = 2.0;
  // Absolute slot-error floor: deviations below it are benign whatever the
  // baseline.
  double floor = 1e-6;
};

Outcome classify(double l2_error, double baseline_l2, bool detected, const Thresholds& th = {});

struct InjectionResult {
  Message recovered;  // empty when detected
  double l2_error = 0.0;
  double max_slot_error = 0.0;
  double baseline_l2 = 0.0;
  Outcome outcome = Outcome::benign;
  // L2 of recovered - baseline recovered, from the exact integer difference of
  // the decrypted polynomials. Isolates the fault from encryption noise.
  double fault_l2 = 0.0;
};

// Fault-free run of one message, cached so that every injection shares its
// keys, randomness and intermediate state; the flipped bit is the only
// difference between a faulty run and the baseline.
class Pipeline {
 public:
  Pipeline(Params params, Message z, Thresholds th = {});

  const CkksContext& context() const { return ctx_; }
  const Params& params() const { return ctx_.params(); }
  const Message& message() const { return z_; }
  const KeyPair& keys() const { return keys_; }
  const Plaintext& encoded() const { return pt_; }
  const Ciphertext& encrypted() const { return ct_; }
  const BigPoly& decrypted() const { return m_; }
  const InjectionResult& baseline() const { return baseline_; }

  InjectionResult run(const std::optional<FaultSpec>& spec) const;

 private:
  Poly in_representation(Poly p, Representation r) const;

  CkksContext ctx_;
  Message z_;
  Thresholds th_;
  KeyPair keys_;
  Rng encrypt_rng_;
  Plaintext pt_;
  Ciphertext ct_;
  BigPoly m_;
  InjectionResult baseline_;
};

InjectionResult run_pipeline_with_fault(const Params& params, const Message& z, const std::optional<FaultSpec>& spec,
                                        const Thresholds& th = {});

}  // namespace hefi
