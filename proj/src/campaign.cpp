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

#include "hefi/campaign.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <random>
#include <sstream>
#include <thread>
#include <tuple>

#include "hefi/errors.hpp"
#include "hefi/io.hpp"

namespace hefi {

namespace {

auto row_key(const CampaignRow& r) {
  return std::make_tuple(r.backend, r.target, r.representation, r.limb.value_or(0), r.coeff_index, r.bit_index,
                         r.log_delta, r.seed);
}

std::string format_double(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

// Runs every fault address against one pipeline; output order follows `specs`
// whatever the thread schedule.
std::vector<CampaignRow> run_specs(const Pipeline& pipeline, const std::vector<FaultSpec>& specs, unsigned jobs) {
  std::vector<CampaignRow> rows(specs.size());
  auto work = [&](std::size_t i) { rows[i] = make_row(pipeline.params(), specs[i], pipeline.run(specs[i])); };
  if (jobs <= 1 || specs.size() < 2) {
    for (std::size_t i = 0; i < specs.size(); ++i) work(i);
    return rows;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  const unsigned workers = std::min<std::size_t>(jobs, specs.size());
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < specs.size(); i = next++) work(i);
    });
  }
  for (auto& t : pool) t.join();
  return rows;
}

}  // namespace

bool row_less(const CampaignRow& a, const CampaignRow& b) { return row_key(a) < row_key(b); }

Message fixed_message(std::size_t n) {
  const std::size_t slots = n / 2;
  Message z(static_cast<Eigen::Index>(slots));
  for (std::size_t k = 0; k < slots; ++k) {
    z(static_cast<Eigen::Index>(k)) = static_cast<double>(k + 1) / static_cast<double>(slots);
  }
  return z;
}

Message random_message(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Message z(static_cast<Eigen::Index>(n / 2));
  for (Eigen::Index k = 0; k < z.size(); ++k) {
    const double re = dist(rng);
    const double im = dist(rng);
    z(k) = {re, im};
  }
  return z;
}

Message campaign_message(const CampaignConfig& config) {
  return config.source == MessageSource::fixed ? fixed_message(config.params.n)
                                               : random_message(config.params.n, config.params.seed);
}

std::vector<FaultSpec> enumerate_specs(const Params& params, const SweepAxes& axes) {
  std::vector<Representation> reps = axes.representations;
  if (reps.empty()) {
    reps.push_back(params.backend == Backend::textbook ? Representation::big : Representation::ntt_limb);
  }
  std::vector<std::size_t> all_limbs = axes.limbs;
  if (all_limbs.empty()) {
    for (std::size_t k = 0; k < params.chain.size(); ++k) all_limbs.push_back(k);
  }
  const Range coeffs = axes.coeffs.value_or(Range{0, params.n});
  if (coeffs.begin > coeffs.end || coeffs.end > params.n) throw ConfigError("coefficient range out of bounds");

  std::vector<FaultSpec> specs;
  for (Target target : axes.targets) {
    for (Representation rep : reps) {
      const bool big = rep == Representation::big;
      const std::size_t width = big ? params.modulus().bits() : 64;
      const Range bits = axes.bits.value_or(Range{0, width});
      if (bits.begin > bits.end || bits.end > width) throw ConfigError("bit range out of bounds");
      const std::vector<std::size_t> limbs = big ? std::vector<std::size_t>{0} : all_limbs;
      for (std::size_t limb : limbs) {
        for (std::size_t i = coeffs.begin; i < coeffs.end; ++i) {
          for (std::size_t j = bits.begin; j < bits.end; ++j) {
            FaultSpec spec{stage_for(target), target, rep, limb, i, static_cast<unsigned>(j)};
            validate_fault(spec, params);
            specs.push_back(spec);
          }
        }
      }
    }
  }
  std::sort(specs.begin(), specs.end(), [](const FaultSpec& a, const FaultSpec& b) {
    return std::tie(a.target, a.representation, a.limb, a.coeff_index, a.bit_index) <
           std::tie(b.target, b.representation, b.limb, b.coeff_index, b.bit_index);
  });
  specs.erase(std::unique(specs.begin(), specs.end()), specs.end());
  return specs;
}

CampaignRow make_row(const Params& params, const FaultSpec& spec, const InjectionResult& r) {
  CampaignRow row;
  row.backend = params.backend;
  row.target = spec.target;
  row.representation = spec.representation;
  if (spec.representation != Representation::big) row.limb = spec.limb;
  row.coeff_index = spec.coeff_index;
  row.bit_index = spec.bit_index;
  row.log_delta = params.log_delta;
  row.outcome = r.outcome;
  row.l2_error = r.l2_error;
  row.max_slot_error = r.max_slot_error;
  row.baseline_l2 = r.baseline_l2;
  row.seed = params.seed;
  row.fault_l2 = r.fault_l2;
  return row;
}

std::vector<CampaignRow> sweep_bits(const CampaignConfig& config) {
  const std::vector<FaultSpec> specs = enumerate_specs(config.params, config.axes);
  const Pipeline pipeline(config.params, campaign_message(config), config.thresholds);
  auto rows = run_specs(pipeline, specs, config.jobs);
  std::sort(rows.begin(), rows.end(), row_less);
  return rows;
}

std::vector<CampaignRow> sweep_scale_factors(const CampaignConfig& config) {
  if (config.log_deltas.empty()) throw ConfigError("scale-factor sweep needs at least one delta");
  std::vector<CampaignRow> rows;
  for (unsigned log_delta : config.log_deltas) {
    CampaignConfig one = config;
    one.params.log_delta = log_delta;
    one.params.validate();
    auto part = sweep_bits(one);
    rows.insert(rows.end(), part.begin(), part.end());
  }
  std::sort(rows.begin(), rows.end(), row_less);
  return rows;
}

ImageResult image_campaign(const CampaignConfig& config, const GrayImage& input,
                           const std::optional<FaultSpec>& fault, std::size_t block) {
  if (input.pixels.empty() || input.pixels.size() != input.width * input.height) {
    throw std::runtime_error("malformed image");
  }
  const std::size_t slots = config.params.n / 2;
  const std::size_t blocks = (input.size() + slots - 1) / slots;
  if (block >= blocks) throw ConfigError("fault block beyond the image");
  const double scale = static_cast<double>(input.max_value);

  ImageResult out;
  out.blocks = blocks;
  out.image = input;
  for (std::size_t b = 0; b < blocks; ++b) {
    Message z = Message::Zero(static_cast<Eigen::Index>(slots));
    const std::size_t first = b * slots;
    const std::size_t count = std::min(slots, input.size() - first);
    for (std::size_t k = 0; k < count; ++k) {
      z(static_cast<Eigen::Index>(k)) = static_cast<double>(input.pixels[first + k]) / scale;
    }
    Params params = config.params;
    params.seed = config.params.seed + b;
    const Pipeline pipeline(params, z, config.thresholds);
    const std::optional<FaultSpec> spec = b == block ? fault : std::nullopt;
    const InjectionResult r = pipeline.run(spec);
    for (std::size_t k = 0; k < count; ++k) {
      double v = 0.0;
      if (r.outcome != Outcome::detected) v = std::round(r.recovered(static_cast<Eigen::Index>(k)).real() * scale);
      out.image.pixels[first + k] = static_cast<std::uint8_t>(std::clamp(v, 0.0, scale));
    }
    if (b == block) {
      out.row = fault ? make_row(params, *fault, r) : make_row(params, FaultSpec{}, r);
    }
  }
  return out;
}

std::string format_row(const CampaignRow& row) {
  std::ostringstream s;
  s << to_string(row.backend) << ',' << to_string(row.target) << ',' << to_string(row.representation) << ','
    << (row.limb ? std::to_string(*row.limb) : std::string()) << ',' << row.coeff_index << ',' << row.bit_index
    << ",2^" << row.log_delta << ',' << to_string(row.outcome) << ',' << format_double(row.l2_error) << ','
    << format_double(row.max_slot_error) << ',' << format_double(row.baseline_l2) << ',' << row.seed;
  return s.str();
}

void write_csv(std::vector<CampaignRow> rows, std::ostream& out) {
  std::stable_sort(rows.begin(), rows.end(), row_less);
  out << kCsvHeader << '\n';
  for (const auto& r : rows) out << format_row(r) << '\n';
}

void emit_csv(std::vector<CampaignRow> rows, const std::filesystem::path& path) {
  std::ostringstream s;
  write_csv(std::move(rows), s);
  write_file_atomic(path, s.str());
}

}  // namespace hefi
