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
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "hefi/fault.hpp"
#include "hefi/pgm.hpp"

namespace hefi {

enum class MessageSource { fixed, random };

// Half-open index range.
struct Range {
  std::size_t begin = 0;
  std::size_t end = 0;
};

struct SweepAxes {
  std::vector<Target> targets = {Target::c0, Target::c1};
  // Empty: big for textbook, ntt_limb for rns_ntt.
  std::vector<Representation> representations;
  // Empty: every limb of the chain.
  std::vector<std::size_t> limbs;
  // Unset: every bit of the addressed word (bit-length of Q, or 64).
  std::optional<Range> bits;
  // Unset: every coefficient.
  std::optional<Range> coeffs;
};

struct CampaignConfig {
  Params params;
  MessageSource source = MessageSource::fixed;
  SweepAxes axes;
  std::vector<unsigned> log_deltas = {20, 40, 50};
  Thresholds thresholds;
  unsigned jobs = 1;
};

struct CampaignRow {
  Backend backend = Backend::textbook;
  Target target = Target::c0;
  Representation representation = Representation::big;
  std::optional<std::size_t> limb;  // unset for big
  std::size_t coeff_index = 0;
  unsigned bit_index = 0;
  unsigned log_delta = 0;
  Outcome outcome = Outcome::benign;
  double l2_error = 0.0;
  double max_slot_error = 0.0;
  double baseline_l2 = 0.0;
  std::uint64_t seed = 0;
  // Not part of the CSV schema; see InjectionResult::fault_l2.
  double fault_l2 = 0.0;
};

// Address fields, delta and seed; rows are unique and sorted on this key.
bool row_less(const CampaignRow& a, const CampaignRow& b);

// z_k = (k + 1) / (N/2).
Message fixed_message(std::size_t n);
// Re and Im uniform in [-1, 1], from `seed`.
Message random_message(std::size_t n, std::uint64_t seed);
Message campaign_message(const CampaignConfig& config);

// All fault addresses covered by the axes, in row order.
std::vector<FaultSpec> enumerate_specs(const Params& params, const SweepAxes& axes);

CampaignRow make_row(const Params& params, const FaultSpec& spec, const InjectionResult& r);

std::vector<CampaignRow> sweep_bits(const CampaignConfig& config);
// sweep_bits repeated for every entry of config.log_deltas.
std::vector<CampaignRow> sweep_scale_factors(const CampaignConfig& config);

struct ImageResult {
  GrayImage image;
  CampaignRow row;
  std::size_t blocks = 0;
};

// Packs pixels row-major into blocks of N/2 slots scaled to [0, 1], runs
// each block through the pipeline (block b uses seed + b) and reassembles
// the decoded image, clamped to the pixel range. `fault` hits block
// `block` only; `row` describes that block.
ImageResult image_campaign(const CampaignConfig& config, const GrayImage& input,
                           const std::optional<FaultSpec>& fault, std::size_t block = 0);

inline constexpr const char* kCsvHeader =
    "backend,target,representation,limb,coeff_index,bit_index,delta,outcome,l2_error,max_slot_error,baseline_l2,"
    "seed";

std::string format_row(const CampaignRow& row);
void write_csv(std::vector<CampaignRow> rows, std::ostream& out);
// Sorted, header plus one line per row, written atomically.
void emit_csv(std::vector<CampaignRow> rows, const std::filesystem::path& path);

}  // namespace hefi
