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

// Command-line driver: fault-free round trips, single injections, bit and
// scale-factor sweeps, and the image experiment.
//
// Exit codes: 0 success / BENIGN, 1 round trip outside the precision bound,
// 2 usage or configuration error, 3 SDC, 4 DETECTED, 5 I/O error.

#include <bit>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hefi/campaign.hpp"
#include "hefi/errors.hpp"

namespace {

using namespace hefi;

constexpr int kExitOk = 0;
constexpr int kExitImprecise = 1;
constexpr int kExitUsage = 2;
constexpr int kExitSdc = 3;
constexpr int kExitDetected = 4;
constexpr int kExitIo = 5;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::size_t n = 4;
  std::string delta = "2^40";
  std::string backend = "textbook";
  std::size_t limbs = kDefaultLimbs;
  unsigned prime_bits = kDefaultPrimeBits;
  double sigma = kDefaultSigma;
  std::uint64_t seed = 0;
  std::string message = "fixed";
  double tau = 2.0;
  double floor = 1e-6;
  unsigned jobs = 1;

  // Single fault address.
  std::string target = "c0";
  std::string representation;
  std::size_t limb = 0;
  std::size_t coeff = 0;
  int bit = -1;

  // Sweep axes.
  std::vector<std::string> targets = {"c0", "c1"};
  std::vector<std::string> representations;
  std::vector<std::size_t> sweep_limbs;
  std::string bits;
  std::string coeffs;
  std::vector<std::string> deltas = {"2^20", "2^40", "2^50"};

  std::string output;
  std::string image;
  std::size_t block = 0;
};

unsigned parse_log_delta(const std::string& text) {
  if (text.rfind("2^", 0) == 0) {
    const std::string exp = text.substr(2);
    if (exp.empty() || exp.find_first_not_of("0123456789") != std::string::npos) {
      throw ConfigError("bad delta '" + text + "'");
    }
    return static_cast<unsigned>(std::stoul(exp));
  }
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos) {
    throw ConfigError("delta must be a power of two, written 2^k or in decimal");
  }
  const unsigned long long v = std::stoull(text);
  if (v < 2 || (v & (v - 1)) != 0) throw ConfigError("delta must be a power of two >= 2");
  return static_cast<unsigned>(std::countr_zero(v));
}

Range parse_range(const std::string& text) {
  const auto colon = text.find(':');
  try {
    if (colon == std::string::npos) {
      const std::size_t v = std::stoul(text);
      return {v, v + 1};
    }
    return {std::stoul(text.substr(0, colon)), std::stoul(text.substr(colon + 1))};
  } catch (const std::logic_error&) {
    throw ConfigError("bad range '" + text + "', expected lo:hi");
  }
}

Params build_params(const RunConfig& rc) {
  return make_params(rc.n, parse_log_delta(rc.delta), parse_backend(rc.backend), rc.seed, rc.limbs, rc.prime_bits,
                     rc.sigma);
}

Thresholds build_thresholds(const RunConfig& rc) { return {rc.tau, rc.floor}; }

Representation default_representation(const Params& params) {
  return params.backend == Backend::textbook ? Representation::big : Representation::ntt_limb;
}

FaultSpec build_fault(const RunConfig& rc, const Params& params) {
  if (rc.bit < 0) throw ConfigError("--bit is required");
  FaultSpec spec;
  spec.target = parse_target(rc.target);
  spec.stage = stage_for(spec.target);
  spec.representation =
      rc.representation.empty() ? default_representation(params) : parse_representation(rc.representation);
  spec.limb = rc.limb;
  spec.coeff_index = rc.coeff;
  spec.bit_index = static_cast<unsigned>(rc.bit);
  validate_fault(spec, params);
  return spec;
}

CampaignConfig build_campaign(const RunConfig& rc) {
  CampaignConfig config{build_params(rc)};
  if (rc.message == "random") {
    config.source = MessageSource::random;
  } else if (rc.message != "fixed") {
    throw ConfigError("--message must be fixed or random");
  }
  config.axes.targets.clear();
  for (const auto& t : rc.targets) config.axes.targets.push_back(parse_target(t));
  for (const auto& r : rc.representations) config.axes.representations.push_back(parse_representation(r));
  config.axes.limbs = rc.sweep_limbs;
  if (!rc.bits.empty()) config.axes.bits = parse_range(rc.bits);
  if (!rc.coeffs.empty()) config.axes.coeffs = parse_range(rc.coeffs);
  config.log_deltas.clear();
  for (const auto& d : rc.deltas) config.log_deltas.push_back(parse_log_delta(d));
  config.thresholds = build_thresholds(rc);
  config.jobs = rc.jobs;
  return config;
}

Message build_message(const RunConfig& rc, const Params& params) {
  if (rc.message == "fixed") return fixed_message(params.n);
  if (rc.message == "random") return random_message(params.n, params.seed);
  throw ConfigError("--message must be fixed or random");
}

std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (const auto& s : v) out += (out.empty() ? "" : ",") + s;
  return out;
}

// Every effective setting as flags, so the run can be repeated verbatim.
std::string effective_config(const std::string& sub, const RunConfig& rc) {
  std::ostringstream s;
  s << "# hefi " << sub << " --n " << rc.n << " --delta " << rc.delta << " --backend " << rc.backend << " --limbs "
    << rc.limbs << " --prime-bits " << rc.prime_bits << " --sigma " << rc.sigma << " --seed " << rc.seed
    << " --tau " << rc.tau << " --floor " << rc.floor;
  if (sub == "roundtrip" || sub == "inject" || sub == "sweep" || sub == "delta-sweep") {
    s << " --message " << rc.message;
  }
  if (sub == "inject" || sub == "image") {
    if (rc.bit >= 0) {
      s << " --target " << rc.target << " --limb " << rc.limb << " --coeff " << rc.coeff << " --bit " << rc.bit;
      if (!rc.representation.empty()) s << " --rep " << rc.representation;
    }
  }
  if (sub == "sweep" || sub == "delta-sweep") {
    s << " --targets " << join(rc.targets);
    if (!rc.representations.empty()) s << " --reps " << join(rc.representations);
    if (!rc.sweep_limbs.empty()) {
      s << " --limbs-axis";
      for (auto l : rc.sweep_limbs) s << ' ' << l;
    }
    if (!rc.bits.empty()) s << " --bits " << rc.bits;
    if (!rc.coeffs.empty()) s << " --coeffs " << rc.coeffs;
    s << " --jobs " << rc.jobs;
  }
  if (sub == "delta-sweep") s << " --deltas " << join(rc.deltas);
  if (sub == "image") s << " --image " << rc.image << " --block " << rc.block;
  if (!rc.output.empty()) s << " --output " << rc.output;
  return s.str();
}

int outcome_exit(Outcome o) {
  switch (o) {
    case Outcome::benign: return kExitOk;
    case Outcome::sdc: return kExitSdc;
    case Outcome::detected: return kExitDetected;
  }
  return kExitUsage;
}

void write_rows(const std::vector<CampaignRow>& rows, const std::string& path) {
  try {
    emit_csv(rows, path);
  } catch (const std::runtime_error& e) {
    throw IoError(e.what());
  }
}

int cmd_roundtrip(const RunConfig& rc) {
  const Params params = build_params(rc);
  const Message z = build_message(rc, params);
  const InjectionResult r = run_pipeline_with_fault(params, z, std::nullopt, build_thresholds(rc));
  const double bound = 1e-6 * std::sqrt(static_cast<double>(params.n) / 2.0);
  std::cout << "baseline_l2 " << r.l2_error << "\nmax_slot_error " << r.max_slot_error << "\nbound " << bound
            << "\nstatus " << (r.l2_error <= bound ? "ok" : "imprecise") << '\n';
  return r.l2_error <= bound ? kExitOk : kExitImprecise;
}

int cmd_inject(const RunConfig& rc) {
  const Params params = build_params(rc);
  const FaultSpec spec = build_fault(rc, params);
  const InjectionResult r = run_pipeline_with_fault(params, build_message(rc, params), spec, build_thresholds(rc));
  const CampaignRow row = make_row(params, spec, r);
  std::cout << format_row(row) << '\n';
  if (!rc.output.empty()) write_rows({row}, rc.output);
  return outcome_exit(r.outcome);
}

int cmd_sweep(const RunConfig& rc, bool deltas) {
  const CampaignConfig config = build_campaign(rc);
  const auto rows = deltas ? sweep_scale_factors(config) : sweep_bits(config);
  if (rc.output.empty()) {
    write_csv(rows, std::cout);
  } else {
    write_rows(rows, rc.output);
    std::cerr << rows.size() << " rows written to " << rc.output << '\n';
  }
  return kExitOk;
}

int cmd_image(const RunConfig& rc) {
  const CampaignConfig config = build_campaign(rc);
  GrayImage input;
  try {
    input = read_pgm(rc.image);
  } catch (const std::runtime_error& e) {
    throw IoError(e.what());
  }
  std::optional<FaultSpec> spec;
  if (rc.bit >= 0) spec = build_fault(rc, config.params);
  const ImageResult result = image_campaign(config, input, spec, rc.block);
  try {
    write_pgm(result.image, rc.output);
  } catch (const std::runtime_error& e) {
    throw IoError(e.what());
  }
  std::cout << kCsvHeader << '\n' << format_row(result.row) << '\n';
  return kExitOk;
}

void add_params(CLI::App* app, RunConfig& rc) {
  app->add_option("--n", rc.n, "Ring dimension N (power of two)")->capture_default_str();
  app->add_option("--delta", rc.delta, "Scale factor, 2^k or a decimal power of two")->capture_default_str();
  app->add_option("--backend", rc.backend, "textbook or rns_ntt")->capture_default_str();
  app->add_option("--limbs", rc.limbs, "Number of primes in the chain")->capture_default_str();
  app->add_option("--prime-bits", rc.prime_bits, "Primes are below 2^prime-bits")->capture_default_str();
  app->add_option("--sigma", rc.sigma, "Gaussian noise standard deviation")->capture_default_str();
  app->add_option("--seed", rc.seed, "RNG seed (default: $HEFI_SEED or 0)")->capture_default_str();
  app->add_option("--tau", rc.tau, "BENIGN threshold as a multiple of the baseline error")->capture_default_str();
  app->add_option("--floor", rc.floor, "Absolute error below which a fault is BENIGN")->capture_default_str();
}

void add_fault(CLI::App* app, RunConfig& rc) {
  app->add_option("--target", rc.target, "plaintext, c0 or c1")->capture_default_str();
  app->add_option("--rep", rc.representation, "big, rns_limb or ntt_limb (default: per backend)");
  app->add_option("--limb", rc.limb, "Limb index for rns_limb / ntt_limb")->capture_default_str();
  app->add_option("--coeff", rc.coeff, "Coefficient index")->capture_default_str();
  app->add_option("--bit", rc.bit, "Bit index to flip");
}

void add_axes(CLI::App* app, RunConfig& rc) {
  app->add_option("--message", rc.message, "fixed or random")->capture_default_str();
  app->add_option("--targets", rc.targets, "Targets to sweep")->delimiter(',')->capture_default_str();
  app->add_option("--reps", rc.representations, "Representations to sweep")->delimiter(',');
  app->add_option("--limbs-axis", rc.sweep_limbs, "Limbs to sweep (default: all)")->delimiter(',');
  app->add_option("--bits", rc.bits, "Bit range lo:hi (default: full word)");
  app->add_option("--coeffs", rc.coeffs, "Coefficient range lo:hi (default: all)");
  app->add_option("--jobs", rc.jobs, "Worker threads")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Single-bit fault injection for a CKKS encode/encrypt/decrypt/decode pipeline"};
  app.require_subcommand(1);

  RunConfig rc;
  if (const char* env = std::getenv("HEFI_SEED")) {
    try {
      rc.seed = std::stoull(env);
    } catch (const std::logic_error&) {
      std::cerr << "error: HEFI_SEED is not an unsigned integer\n";
      return kExitUsage;
    }
  }

  auto* roundtrip = app.add_subcommand("roundtrip", "Fault-free run; reports the baseline error");
  add_params(roundtrip, rc);
  roundtrip->add_option("--message", rc.message, "fixed or random")->capture_default_str();

  auto* inject = app.add_subcommand("inject", "Flip one bit and classify the outcome");
  add_params(inject, rc);
  add_fault(inject, rc);
  inject->add_option("--message", rc.message, "fixed or random")->capture_default_str();
  inject->add_option("--output", rc.output, "Also write the row as CSV");

  auto* sweep = app.add_subcommand("sweep", "Flip every addressed bit in turn");
  add_params(sweep, rc);
  add_axes(sweep, rc);
  sweep->add_option("--output", rc.output, "CSV path (default: stdout)");

  auto* delta_sweep = app.add_subcommand("delta-sweep", "Bit sweep repeated per scale factor");
  add_params(delta_sweep, rc);
  add_axes(delta_sweep, rc);
  delta_sweep->add_option("--deltas", rc.deltas, "Scale factors")->delimiter(',')->capture_default_str();
  delta_sweep->add_option("--output", rc.output, "CSV path (default: stdout)");

  auto* image = app.add_subcommand("image", "Run a PGM image through the pipeline with an optional fault");
  add_params(image, rc);
  add_fault(image, rc);
  image->add_option("--image", rc.image, "Input PGM (P2 or P5)")->required();
  image->add_option("--output", rc.output, "Output PGM")->required();
  image->add_option("--block", rc.block, "Block of N/2 pixels that receives the fault")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  const std::string sub = app.get_subcommands().front()->get_name();
  std::cerr << effective_config(sub, rc) << '\n';
  try {
    if (sub == "roundtrip") return cmd_roundtrip(rc);
    if (sub == "inject") return cmd_inject(rc);
    if (sub == "sweep") return cmd_sweep(rc, false);
    if (sub == "delta-sweep") return cmd_sweep(rc, true);
    if (sub == "image") return cmd_image(rc);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
