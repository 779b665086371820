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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include "doctest.h"
#include "hefi/campaign.hpp"
#include "hefi/errors.hpp"

using namespace hefi;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

std::filesystem::path temp_path(const std::string& name) { return std::filesystem::temp_directory_path() / name; }

CampaignConfig small_config(Backend backend = Backend::textbook) {
  CampaignConfig config{make_params(4, 40, backend, 1)};
  return config;
}

}  // namespace

TEST_CASE("l2_error") {
  const Message z = fixed_message(8);
  CHECK(l2_error(z, z) == 0.0);
  Message d = Message::Zero(2);
  d(0) = {3.0, 0.0};
  d(1) = {0.0, 4.0};
  CHECK(l2_error(d, Message::Zero(2)) == 5.0);
  Message one = z;
  one(2) += std::ldexp(1.0, 7 - 40);
  CHECK(l2_error(one, z) == doctest::Approx(std::ldexp(1.0, 7 - 40)).epsilon(1e-3));
  CHECK_THROWS_AS(l2_error(z, Message::Zero(3)), DimensionMismatch);
}

TEST_CASE("fixed message") {
  const Message z = fixed_message(8);
  CHECK(z.size() == 4);
  CHECK(z(0) == std::complex<double>(0.25, 0.0));
  CHECK(z(3) == std::complex<double>(1.0, 0.0));
}

TEST_CASE("sweep_bits: counts, ordering and the c0 / c1 shape") {
  const CampaignConfig config = small_config();
  const auto rows = sweep_bits(config);
  CHECK(rows.size() == 2 * 4 * 177);
  CHECK(std::is_sorted(rows.begin(), rows.end(), row_less));

  double max_c0 = 0.0, max_c1 = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    CHECK(r.seed == 1);
    CHECK(r.log_delta == 40);
    CHECK_FALSE(r.limb.has_value());
    if (r.outcome == Outcome::detected) continue;
    (r.target == Target::c0 ? max_c0 : max_c1) = std::max(r.target == Target::c0 ? max_c0 : max_c1, r.l2_error);
    if (r.target == Target::c0 && r.bit_index + 3 <= 177) {
      const double oracle = std::sqrt(2.0) * std::ldexp(1.0, static_cast<int>(r.bit_index) - 40);
      CHECK(r.fault_l2 == doctest::Approx(oracle).epsilon(0.01));
      if (r.bit_index > 0) CHECK(r.fault_l2 >= rows[i - 1].fault_l2 * 0.99);
    }
  }
  CHECK(max_c1 >= max_c0);
}

TEST_CASE("sweep_scale_factors") {
  CampaignConfig config = small_config();
  config.axes.targets = {Target::c0};
  config.log_deltas = {20, 40, 50};
  const auto rows = sweep_scale_factors(config);
  CHECK(rows.size() == 3 * 4 * 177);

  std::map<std::tuple<std::size_t, unsigned>, std::map<unsigned, CampaignRow>> by_address;
  for (const auto& r : rows) by_address[{r.coeff_index, r.bit_index}][r.log_delta] = r;
  std::map<unsigned, std::size_t> benign;
  for (const auto& [addr, per_delta] : by_address) {
    REQUIRE(per_delta.size() == 3);
    const auto& r20 = per_delta.at(20);
    const auto& r40 = per_delta.at(40);
    const auto& r50 = per_delta.at(50);
    for (const auto* r : {&r20, &r40, &r50}) benign[r->log_delta] += r->outcome == Outcome::benign;
    if (r20.outcome == Outcome::detected || r40.outcome == Outcome::detected || r50.outcome == Outcome::detected) {
      continue;
    }
    CHECK(r50.l2_error <= r40.l2_error);
    CHECK(r40.l2_error <= r20.l2_error);
  }
  CHECK(benign[50] > benign[40]);
  CHECK(benign[40] > benign[20]);

  config.log_deltas.clear();
  CHECK_THROWS_AS(sweep_scale_factors(config), ConfigError);
}

TEST_CASE("RNS sweep with explicit axes") {
  CampaignConfig config = small_config(Backend::rns_ntt);
  config.axes.targets = {Target::c0};
  config.axes.representations = {Representation::rns_limb};
  config.axes.limbs = {1};
  config.axes.coeffs = Range{2, 3};
  config.axes.bits = Range{60, 64};
  const auto rows = sweep_bits(config);
  CHECK(rows.size() == 4);
  for (const auto& r : rows) {
    CHECK(r.limb == std::optional<std::size_t>(1));
    CHECK(r.coeff_index == 2);
    CHECK(r.outcome == Outcome::detected);
  }
  config.axes.bits = Range{60, 65};
  CHECK_THROWS_AS(sweep_bits(config), ConfigError);
}

TEST_CASE("CSV emission") {
  std::ostringstream empty;
  write_csv({}, empty);
  CHECK(empty.str() == std::string(kCsvHeader) + "\n");

  std::vector<CampaignRow> rows(512);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    rows[i].coeff_index = i % 4;
    rows[i].bit_index = static_cast<unsigned>(i / 4);
    rows[i].l2_error = 0.1 * static_cast<double>(i);
  }
  const auto path = temp_path("hefi_rows.csv");
  emit_csv(rows, path);
  const std::string text = slurp(path);
  CHECK(count_lines(text) == 513);
  CHECK(text.rfind(std::string(kCsvHeader) + "\n", 0) == 0);
  CHECK_FALSE(std::filesystem::exists(path.string() + ".tmp"));

  CampaignRow r;
  r.backend = Backend::rns_ntt;
  r.target = Target::c1;
  r.representation = Representation::ntt_limb;
  r.limb = 2;
  r.coeff_index = 3;
  r.bit_index = 17;
  r.log_delta = 40;
  r.outcome = Outcome::detected;
  r.l2_error = std::numeric_limits<double>::infinity();
  r.max_slot_error = std::numeric_limits<double>::infinity();
  r.baseline_l2 = 0.125;
  r.seed = 9;
  CHECK(format_row(r) == "rns_ntt,c1,ntt_limb,2,3,17,2^40,DETECTED,inf,inf,0.125,9");
  CHECK_THROWS(emit_csv(rows, "/nonexistent-dir/x.csv"));
}

TEST_CASE("campaigns are reproducible and schedule-independent") {
  CampaignConfig config = small_config();
  const auto p1 = temp_path("hefi_a.csv");
  const auto p2 = temp_path("hefi_b.csv");
  const auto p3 = temp_path("hefi_c.csv");
  emit_csv(sweep_bits(config), p1);
  emit_csv(sweep_bits(config), p2);
  config.jobs = 4;
  emit_csv(sweep_bits(config), p3);
  CHECK(slurp(p1) == slurp(p2));
  CHECK(slurp(p1) == slurp(p3));
}

TEST_CASE("image campaign") {
  GrayImage img;
  img.width = 6;
  img.height = 5;
  for (std::size_t i = 0; i < 30; ++i) img.pixels.push_back(static_cast<std::uint8_t>((i * 37) % 256));

  CampaignConfig config{make_params(16, 40, Backend::textbook, 3)};
  const ImageResult clean = image_campaign(config, img, std::nullopt);
  CHECK(clean.blocks == 4);
  REQUIRE(clean.image.size() == img.size());
  for (std::size_t i = 0; i < img.size(); ++i) CHECK(std::abs(int(clean.image.pixels[i]) - int(img.pixels[i])) <= 1);

  const FaultSpec low{Stage::post_encode, Target::plaintext, Representation::big, 0, 4, 3};
  const ImageResult mild = image_campaign(config, img, low, 2);
  CHECK(mild.row.coeff_index == 4);
  CHECK(mild.row.seed == 5);
  for (std::size_t i = 0; i < img.size(); ++i) CHECK(std::abs(int(mild.image.pixels[i]) - int(img.pixels[i])) <= 1);

  CHECK_THROWS_AS(image_campaign(config, img, low, 4), ConfigError);
  GrayImage broken = img;
  broken.pixels.pop_back();
  CHECK_THROWS(image_campaign(config, broken, std::nullopt));
}
