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

#include "hefi/fault.hpp"

#include <limits>

#include "hefi/errors.hpp"

namespace hefi {

std::string to_string(Stage s) { return s == Stage::post_encode ? "post_encode" : "post_encrypt"; }

std::string to_string(Target t) {
  switch (t) {
    case Target::plaintext: return "plaintext";
    case Target::c0: return "c0";
    case Target::c1: return "c1";
  }
  return "?";
}

std::string to_string(Representation r) {
  switch (r) {
    case Representation::big: return "big";
    case Representation::rns_limb: return "rns_limb";
    case Representation::ntt_limb: return "ntt_limb";
  }
  return "?";
}

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::benign: return "BENIGN";
    case Outcome::sdc: return "SDC";
    case Outcome::detected: return "DETECTED";
  }
  return "?";
}

Target parse_target(const std::string& s) {
  if (s == "plaintext" || s == "pt") return Target::plaintext;
  if (s == "c0") return Target::c0;
  if (s == "c1") return Target::c1;
  throw ConfigError("unknown target '" + s + "'");
}

Representation parse_representation(const std::string& s) {
  if (s == "big") return Representation::big;
  if (s == "rns_limb" || s == "rns-limb" || s == "rns") return Representation::rns_limb;
  if (s == "ntt_limb" || s == "ntt-limb" || s == "ntt") return Representation::ntt_limb;
  throw ConfigError("unknown representation '" + s + "'");
}

Stage parse_stage(const std::string& s) {
  if (s == "post_encode" || s == "post-encode") return Stage::post_encode;
  if (s == "post_encrypt" || s == "post-encrypt") return Stage::post_encrypt;
  throw ConfigError("unknown stage '" + s + "'");
}

Stage stage_for(Target t) { return t == Target::plaintext ? Stage::post_encode : Stage::post_encrypt; }

void validate_fault(const FaultSpec& spec, const Params& params) {
  if (spec.stage != stage_for(spec.target)) {
    throw ConfigError("target " + to_string(spec.target) + " does not exist at stage " + to_string(spec.stage));
  }
  if (spec.coeff_index >= params.n) throw ConfigError("coefficient index out of range");
  if (spec.representation == Representation::big) {
    if (params.backend != Backend::textbook) throw ConfigError("big representation needs the textbook backend");
    if (spec.bit_index >= params.modulus().bits()) throw ConfigError("bit index beyond bit-length of Q");
  } else {
    if (params.backend != Backend::rns_ntt) throw ConfigError("limb representations need the rns_ntt backend");
    if (spec.limb >= params.chain.size()) throw ConfigError("limb index out of range");
    if (spec.bit_index >= 64) throw ConfigError("bit index beyond 64-bit word");
  }
}

void flip_bit(BigPoly& p, std::size_t coeff, unsigned bit) {
  if (coeff >= p.size()) throw ConfigError("coefficient index out of range");
  boost::multiprecision::bit_flip(p[coeff], bit);
}

void flip_bit(RnsPoly& p, std::size_t limb, std::size_t coeff, unsigned bit) {
  if (limb >= p.num_limbs()) throw ConfigError("limb index out of range");
  if (coeff >= p.n()) throw ConfigError("coefficient index out of range");
  if (bit >= 64) throw ConfigError("bit index beyond 64-bit word");
  p.limbs[limb][coeff] ^= std::uint64_t{1} << bit;
}

void apply_fault(Poly& state, const FaultSpec& spec) {
  if (spec.representation == Representation::big) {
    auto* big = std::get_if<BigPoly>(&state);
    if (!big) throw ConfigError("big fault applied to a residue polynomial");
    flip_bit(*big, spec.coeff_index, spec.bit_index);
    return;
  }
  auto* rns = std::get_if<RnsPoly>(&state);
  if (!rns) throw ConfigError("limb fault applied to a big polynomial");
  const Domain want = spec.representation == Representation::ntt_limb ? Domain::ntt : Domain::coefficient;
  if (rns->domain != want) throw ConfigError("limb fault addressed in the wrong domain");
  flip_bit(*rns, spec.limb, spec.coeff_index, spec.bit_index);
}

Outcome classify(double l2_error, double baseline_l2, bool detected, const Thresholds& th) {
  if (detected) return Outcome::detected;
  return l2_error <= th.tau_benign * std::max(baseline_l2, th.floor) ? Outcome::benign : Outcome::sdc;
}

Pipeline::Pipeline(Params params, Message z, Thresholds th)
    : ctx_(std::move(params)), z_(std::move(z)), th_(th), encrypt_rng_(ctx_.params().seed) {
  keys_ = ctx_.keygen(encrypt_rng_);
  pt_ = ctx_.encode(z_);
  Rng rng = encrypt_rng_;
  ct_ = ctx_.encrypt(pt_, keys_.pub, rng);
  m_ = ctx_.to_big(ctx_.decrypt(ct_, keys_.secret).poly);

  baseline_.recovered = ctx_.decode_poly(m_);
  baseline_.l2_error = l2_error(baseline_.recovered, z_);
  baseline_.max_slot_error = (baseline_.recovered - z_).cwiseAbs().maxCoeff();
  baseline_.baseline_l2 = baseline_.l2_error;
  baseline_.outcome = classify(baseline_.l2_error, baseline_.baseline_l2, false, th_);
  baseline_.fault_l2 = 0.0;
}

Poly Pipeline::in_representation(Poly p, Representation r) const {
  if (r == Representation::big) return p;
  auto& rns = std::get<RnsPoly>(p);
  return r == Representation::ntt_limb ? ctx_.ntt()->to_ntt(std::move(rns))
                                       : ctx_.ntt()->to_coefficient(std::move(rns));
}

InjectionResult Pipeline::run(const std::optional<FaultSpec>& spec) const {
  if (!spec) return baseline_;
  validate_fault(*spec, params());

  InjectionResult result;
  result.baseline_l2 = baseline_.l2_error;
  try {
    Ciphertext ct;
    if (spec->stage == Stage::post_encode) {
      Plaintext pt = pt_;
      pt.poly = in_representation(std::move(pt.poly), spec->representation);
      apply_fault(pt.poly, *spec);
      Rng rng = encrypt_rng_;
      ct = ctx_.encrypt(pt, keys_.pub, rng);
    } else {
      ct = ct_;
      ct.c0 = in_representation(std::move(ct.c0), spec->representation);
      ct.c1 = in_representation(std::move(ct.c1), spec->representation);
      apply_fault(spec->target == Target::c0 ? ct.c0 : ct.c1, *spec);
    }
    const BigPoly m = ctx_.to_big(ctx_.decrypt(ct, keys_.secret).poly);
    result.recovered = ctx_.decode_poly(m);
    result.l2_error = l2_error(result.recovered, z_);
    result.max_slot_error = (result.recovered - z_).cwiseAbs().maxCoeff();
    result.fault_l2 = ctx_.decode_difference(m, m_).norm();
    result.outcome = classify(result.l2_error, result.baseline_l2, false, th_);
  } catch (const RepresentationViolation&) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    result.recovered = Message();
    result.l2_error = inf;
    result.max_slot_error = inf;
    result.fault_l2 = inf;
    result.outcome = Outcome::detected;
  }
  return result;
}

InjectionResult run_pipeline_with_fault(const Params& params, const Message& z, const std::optional<FaultSpec>& spec,
                                        const Thresholds& th) {
  return Pipeline(params, z, th).run(spec);
}

}  // namespace hefi
