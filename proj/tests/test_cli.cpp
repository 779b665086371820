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


#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>

#include "doctest.h"
#include "hefi/pgm.hpp"

namespace fs = std::filesystem;

namespace {

const fs::path kWork = fs::temp_directory_path() / "hefi_cli_test";

// Runs the CLI with stdout captured to `out_file`; returns the exit status.
int run(const std::string& args, const std::string& out_file = "out.txt") {
  fs::create_directories(kWork);
  const std::string cmd = std::string("env -u HEFI_SEED \"") + HEFI_CLI_PATH + "\" " + args + " > \"" +
                          (kWork / out_file).string() + "\" 2> \"" + (kWork / "err.txt").string() + "\"";
  const int status = std::system(cmd.c_str());
  REQUIRE(WIFEXITED(status));
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_CASE("roundtrip exit codes") {
  CHECK(run("roundtrip --n 4 --delta 2^40 --seed 1") == 0);
  CHECK(run("roundtrip --n 1024 --delta 1099511627776 --backend rns_ntt --seed 1") == 0);
  CHECK(run("roundtrip --n 3") == 2);
  CHECK(run("roundtrip --delta 2^170") == 2);
  CHECK(run("roundtrip --delta 1000") == 2);
  CHECK(run("roundtrip --backend gpu") == 2);
  CHECK(run("roundtrip --no-such-flag") == 2);
  CHECK(run("") == 2);
  // 2^8 scaling leaves the rounding error far above the precision bound.
  CHECK(run("roundtrip --delta 2^8 --sigma 3.2 --seed 1") == 1);
}

TEST_CASE("roundtrip is deterministic per seed") {
  REQUIRE(run("roundtrip --n 16 --seed 9 --message random", "a.txt") == 0);
  REQUIRE(run("roundtrip --n 16 --seed 9 --message random", "b.txt") == 0);
  REQUIRE(run("roundtrip --n 16 --seed 10 --message random", "c.txt") == 0);
  CHECK(slurp(kWork / "a.txt") == slurp(kWork / "b.txt"));
  CHECK(slurp(kWork / "a.txt") != slurp(kWork / "c.txt"));
}

TEST_CASE("HEFI_SEED supplies the default seed and --seed overrides it") {
  fs::create_directories(kWork);
  const std::string base = std::string("\"") + HEFI_CLI_PATH + "\" roundtrip --n 8 --message random";
  const std::string err = " 2> \"" + (kWork / "err.txt").string() + "\"";
  REQUIRE(std::system(("HEFI_SEED=5 " + base + " > " + (kWork / "env.txt").string() + err).c_str()) == 0);
  REQUIRE(run("roundtrip --n 8 --message random --seed 5", "flag.txt") == 0);
  CHECK(slurp(kWork / "env.txt") == slurp(kWork / "flag.txt"));
  REQUIRE(std::system(("HEFI_SEED=5 " + base + " --seed 6 > " + (kWork / "both.txt").string() + err).c_str()) == 0);
  REQUIRE(run("roundtrip --n 8 --message random --seed 6", "six.txt") == 0);
  CHECK(slurp(kWork / "both.txt") == slurp(kWork / "six.txt"));
  CHECK(std::system(("HEFI_SEED=abc " + base + " > /dev/null" + err).c_str()) != 0);
}

TEST_CASE("the effective configuration goes to stderr") {
  REQUIRE(run("roundtrip --n 8 --seed 4") == 0);
  const std::string err = slurp(kWork / "err.txt");
  CHECK(err.find("--n 8") != std::string::npos);
  CHECK(err.find("--seed 4") != std::string::npos);
  CHECK(err.find("--backend textbook") != std::string::npos);
}

TEST_CASE("inject maps outcomes to exit codes") {
  CHECK(run("inject --target c0 --bit 2 --seed 1") == 0);
  CHECK(slurp(kWork / "out.txt").find(",BENIGN,") != std::string::npos);
  CHECK(run("inject --target c1 --bit 40 --seed 1") == 3);
  CHECK(slurp(kWork / "out.txt").find(",SDC,") != std::string::npos);
  CHECK(run("inject --backend rns_ntt --rep rns_limb --limb 1 --bit 63 --seed 1") == 4);
  CHECK(slurp(kWork / "out.txt").find(",DETECTED,") != std::string::npos);
  CHECK(run("inject --target c0 --seed 1") == 2);
  CHECK(run("inject --target c0 --coeff 4 --bit 1 --seed 1") == 2);
  CHECK(run("inject --target c0 --rep rns_limb --bit 1 --seed 1") == 2);
  CHECK(run("inject --target c2 --bit 1 --seed 1") == 2);
}

TEST_CASE("sweep writes one row per addressed bit") {
  const fs::path csv = kWork / "sweep.csv";
  REQUIRE(run("sweep --n 4 --seed 1 --output \"" + csv.string() + "\"") == 0);
  const std::string text = slurp(csv);
  CHECK(count_lines(text) == 2 * 4 * 177 + 1);
  CHECK(text.rfind("backend,target,representation,limb,coeff_index,bit_index,delta,outcome,", 0) == 0);
  CHECK_FALSE(fs::exists(kWork / "sweep.csv.tmp"));

  REQUIRE(run("sweep --n 4 --seed 1 --jobs 3 --output \"" + (kWork / "sweep3.csv").string() + "\"") == 0);
  CHECK(slurp(kWork / "sweep3.csv") == text);

  REQUIRE(run("sweep --n 4 --seed 1 --targets c1 --bits 10:20 --coeffs 1:2") == 0);
  CHECK(count_lines(slurp(kWork / "out.txt")) == 11);
}

TEST_CASE("sweep reports unwritable output") {
  CHECK(run("sweep --n 4 --bits 0:1 --output /nonexistent-dir/x.csv") == 5);
}

TEST_CASE("delta-sweep covers every scale factor") {
  REQUIRE(run("delta-sweep --n 4 --seed 1 --bits 30:31 --targets c0") == 0);
  const std::string text = slurp(kWork / "out.txt");
  CHECK(count_lines(text) == 3 * 4 + 1);
  for (const char* d : {",2^20,", ",2^40,", ",2^50,"}) CHECK(text.find(d) != std::string::npos);
  CHECK(run("delta-sweep --n 4 --deltas 2^40,7 --bits 0:1") == 2);
}

TEST_CASE("image writes a PGM of the same shape") {
  hefi::GrayImage img{6, 5, 255, std::vector<std::uint8_t>(30)};
  for (std::size_t i = 0; i < img.pixels.size(); ++i) img.pixels[i] = static_cast<std::uint8_t>(8 * i);
  const fs::path in = kWork / "in.pgm";
  const fs::path out = kWork / "out.pgm";
  fs::create_directories(kWork);
  hefi::write_pgm(img, in);

  REQUIRE(run("image --n 16 --seed 2 --image \"" + in.string() + "\" --output \"" + out.string() + "\"") == 0);
  const hefi::GrayImage clean = hefi::read_pgm(out);
  CHECK(clean.width == 6);
  CHECK(clean.height == 5);
  CHECK(clean.pixels == img.pixels);

  REQUIRE(run("image --n 16 --seed 2 --target c0 --bit 50 --image \"" + in.string() + "\" --output \"" +
              out.string() + "\"") == 0);
  CHECK(hefi::read_pgm(out).pixels != img.pixels);

  CHECK(run("image --n 16 --image \"" + (kWork / "missing.pgm").string() + "\" --output \"" + out.string() +
            "\"") == 5);
  CHECK(run("image --n 16 --output \"" + out.string() + "\"") == 2);
}
