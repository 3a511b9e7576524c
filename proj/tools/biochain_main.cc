// Copyright 2026 The Biochain Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// biochain: command-line front end for the simulator, the economic models
// and the encrypted-matching primitives.

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "biochain/biometrics.hpp"
#include "biochain/errors.hpp"
#include "biochain/fath.hpp"
#include "biochain/fees.hpp"
#include "biochain/group_crypto.hpp"
#include "biochain/lwe_he.hpp"
#include "biochain/netsim.hpp"
#include "biochain/rng.hpp"
#include "biochain/slashing.hpp"
#include "biochain/zkp_linear.hpp"

namespace {

using nlohmann::json;
namespace bc = biochain;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitInvariant = 2;
constexpr int kExitReject = 3;

// Raised for bad files and arguments; maps to exit code 1.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json read_json(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw UsageError(path + ": " + e.what());
  }
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
  if (!out) throw UsageError("write failed for " + path);
}

void write_json(const std::string& path, const json& doc) {
  if (!path.empty()) write_file(path, doc.dump(2) + "\n");
}

template <typename T>
std::vector<T> parse_list(const std::string& text, const char* what) {
  std::vector<T> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const long long v = std::stoll(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(static_cast<T>(v));
    } catch (const std::exception&) {
      throw UsageError(std::string("bad ") + what + " entry '" + item + "'");
    }
  }
  if (out.empty()) throw UsageError(std::string("empty ") + what);
  return out;
}

std::vector<std::uint8_t> parse_bits(const std::string& text, const char* what) {
  std::vector<std::uint8_t> out;
  for (long long v : parse_list<long long>(text, what)) {
    if (v != 0 && v != 1) throw UsageError(std::string(what) + " must be 0/1");
    out.push_back(static_cast<std::uint8_t>(v));
  }
  return out;
}

std::string default_data(const char* name) { return std::string(BIOCHAIN_DATA_DIR) + "/" + name; }

struct Common {
  std::uint64_t seed = 0;
  std::string output;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--seed", c.seed, "Seed for all randomness")->capture_default_str();
  cmd->add_option("--output", c.output, "Write the JSON result to this file");
}

// ---------------------------------------------------------------- run-sim

struct RunSimArgs {
  Common common;
  std::string scenario;
  std::string events;
  bool seed_given = false;
};

int run_sim(const RunSimArgs& a, const CLI::App& cmd) {
  json doc = read_json(a.scenario);
  bc::netsim::SimConfig cfg = bc::netsim::config_from_json(doc);
  if (cmd.count("--seed") > 0) cfg.seed = a.common.seed;

  const bc::netsim::SimReport report = bc::netsim::run(cfg);
  const auto violations = bc::netsim::check_invariants(report.events);
  json summary = report.summary();
  summary["scenario"] = cfg.name;
  summary["seed"] = cfg.seed;
  summary["invariant_violations"] = violations;
  write_json(a.common.output, summary);
  if (!a.events.empty()) write_file(a.events, report.event_log());

  std::cout << "scenario " << cfg.name << " seed " << cfg.seed << ": " << report.slots
            << " slots, " << report.skipped_slots << " skipped, " << report.events.size()
            << " events\n";
  std::cout << "fees collected " << report.fees_collected << " (nodes " << report.fees_to_nodes
            << ", vault " << report.fees_to_vault << ")\n";
  std::cout << "slashes " << report.slashes.size() << ", rebalances " << report.rebalances.size()
            << ", final supply " << report.final_ledger.total_supply() << "\n";
  std::cout << "event log sha256 " << summary["event_log_sha256"].get<std::string>() << "\n";
  if (!violations.empty()) {
    for (const auto& v : violations) std::cerr << "invariant violation: " << v << "\n";
    return kExitInvariant;
  }
  return kExitOk;
}

// -------------------------------------------------------------- fath-demo

int fath_demo(const Common& c) {
  bc::fath::LedgerSnapshot ledger({{"you", 1000}, {"everyone-else", 9'999'000}});
  const std::vector<bc::Amount> commission = {1'000'000, 2'000'000, 1'500'000};

  json periods = json::array();
  auto row = [&](std::int64_t year, bc::Amount paid, const bc::fath::RebalanceOutcome* o) {
    std::cout << std::left << std::setw(6) << year << std::right << std::setw(14)
              << ledger.total_supply() << std::setw(14) << paid << std::setw(10)
              << (o ? bc::fath::to_string(o->kind) : "-") << std::setw(10)
              << (o ? o->ratio.get_str() : "-") << std::setw(10) << ledger.balance("you") << "\n";
    json j = {{"year", year}, {"supply", ledger.total_supply()}, {"commission", paid},
              {"wallet", ledger.balance("you")}};
    if (o) j["kind"] = bc::fath::to_string(o->kind), j["ratio"] = o->ratio.get_str();
    periods.push_back(std::move(j));
  };

  std::cout << std::left << std::setw(6) << "year" << std::right << std::setw(14) << "supply"
            << std::setw(14) << "commission" << std::setw(10) << "kind" << std::setw(10)
            << "ratio" << std::setw(10) << "wallet" << "\n";
  row(0, commission[0], nullptr);
  for (std::size_t year = 1; year < commission.size(); ++year) {
    const bc::fath::PeriodStats prev{commission[year - 1], static_cast<std::int64_t>(year - 1)};
    const bc::fath::PeriodStats curr{commission[year], static_cast<std::int64_t>(year)};
    auto [next, outcome] = bc::fath::run_period(ledger, prev, curr);
    ledger = std::move(next);
    row(static_cast<std::int64_t>(year), commission[year], &outcome);
  }
  write_json(c.output, {{"periods", periods}});
  return kExitOk;
}

// -------------------------------------------------------------- fee-quote

struct FeeArgs {
  Common common;
  std::string quotes = default_data("quotes.json");
  std::string size_gb = "0";
  std::int64_t validators = 1;
  std::string decline = "0.3057";
};

int fee_quote(const FeeArgs& a) {
  const bc::fees::PriceQuote quote = bc::fees::quote_from_json(read_json(a.quotes));
  bc::fees::StorageModel model;
  model.annual_decline = bc::fees::parse_decimal(a.decline);
  const bc::fees::Rational size = bc::fees::parse_decimal(a.size_gb);
  const bc::fees::FeeBreakdown fee = bc::fees::quote_transaction(quote, size, a.validators, model);

  std::cout << "validators      " << fee.validators << "\n"
            << "data size (GB)  " << a.size_gb << "\n"
            << "computational   " << bc::fees::format_native(fee.computational) << " HMND\n"
            << "storage         " << bc::fees::format_native(fee.storage_perpetual) << " HMND\n"
            << "total           " << bc::fees::format_native(fee.total) << " HMND\n";
  write_json(a.common.output, bc::fees::to_json(fee));
  return kExitOk;
}

// ------------------------------------------------------- score-modalities

struct ScoreArgs {
  Common common;
  std::string input = default_data("modalities.json");
};

int score_modalities(const ScoreArgs& a) {
  const auto profiles = bc::bio::modalities_from_json(read_json(a.input));
  const auto rows = bc::bio::score_table(profiles);
  std::cout << std::left << std::setw(38) << "modality" << std::right << std::setw(7) << "score"
            << std::setw(11) << "published" << std::setw(10) << "eligible" << "\n";
  int mismatches = 0;
  for (const auto& r : rows) {
    std::cout << std::left << std::setw(38) << r.name << std::right << std::setw(7) << r.score
              << std::setw(11) << (r.published_score ? std::to_string(*r.published_score) : "-")
              << std::setw(10) << (r.eligible ? "yes" : "no")
              << (r.matches_published() ? "" : "   differs from published") << "\n";
    if (!r.matches_published()) ++mismatches;
  }
  std::cout << rows.size() - mismatches << "/" << rows.size() << " rows match published scores\n";
  write_json(a.common.output, bc::bio::to_json(rows));
  return kExitOk;
}

// ------------------------------------------------------------------ keygen

struct KeygenArgs {
  Common common;
  unsigned bits = 64;
  bool production = false;
  std::string secret;
};

int keygen(const KeygenArgs& a) {
  bc::Rng rng(a.common.seed);
  const bc::group::GroupParams params =
      a.production ? bc::group::production_params() : bc::group::generate_params(a.bits, rng);
  const bc::group::KeyPair kp = bc::group::keygen(params, rng);
  const json pub = bc::group::to_json(params, &kp.pk);
  if (a.common.output.empty()) {
    std::cout << pub.dump(2) << "\n";
  } else {
    write_json(a.common.output, pub);
    std::cout << "public key written to " << a.common.output << "\n";
  }
  if (!a.secret.empty()) {
    json sec = pub;
    sec["sk"] = kp.sk.get_str();
    write_json(a.secret, sec);
  }
  return kExitOk;
}

// ---------------------------------------------------- prove/verify-linear

struct PublicKey {
  bc::group::GroupParams params;
  bc::group::BigInt pk;
};

PublicKey load_public_key(const std::string& path) {
  const json doc = read_json(path);
  try {
    PublicKey k{bc::group::params_from_json(doc), bc::group::bigint_from_json(doc.at("pk"))};
    if (!k.params.valid() || !k.params.contains(k.pk)) throw UsageError(path + ": invalid key");
    return k;
  } catch (const json::exception& e) {
    throw UsageError(path + ": " + e.what());
  }
}

struct ProveArgs {
  Common common;
  std::string key;
  std::string inputs;
  std::string coefficients;
};

int prove_linear(const ProveArgs& a) {
  const PublicKey key = load_public_key(a.key);
  const auto inputs = parse_list<std::int64_t>(a.inputs, "input");
  const auto coeffs = parse_list<std::int64_t>(a.coefficients, "coefficient");
  if (inputs.size() != coeffs.size()) throw UsageError("inputs and coefficients differ in length");

  bc::Rng rng(a.common.seed);
  std::vector<bc::group::BigInt> randomness;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    randomness.push_back(bc::group::random_scalar(key.params, rng));
  }
  const auto proof = bc::zkp::prove_linear(key.params, key.pk, inputs, randomness, coeffs, rng);
  const json doc = {{"statement", bc::zkp::to_json(proof.statement)},
                    {"proof", bc::zkp::to_json(proof.proof)}};
  if (a.common.output.empty()) {
    std::cout << doc.dump(2) << "\n";
  } else {
    write_json(a.common.output, doc);
    std::int64_t y = 0;
    for (std::size_t i = 0; i < inputs.size(); ++i) y += coeffs[i] * inputs[i];
    std::cout << "proved y = " << y << " over " << inputs.size() << " encrypted inputs; wrote "
              << a.common.output << "\n";
  }
  return kExitOk;
}

struct VerifyArgs {
  Common common;
  std::string key;
  std::string proof;
};

int verify_linear(const VerifyArgs& a) {
  const PublicKey key = load_public_key(a.key);
  const json doc = read_json(a.proof);
  bool accepted = false;
  try {
    const auto stmt = bc::zkp::linear_statement_from_json(doc.at("statement"));
    const auto proof = bc::zkp::logeq_proof_from_json(doc.at("proof"));
    accepted = bc::zkp::verify_linear(key.params, key.pk, stmt, proof);
  } catch (const json::exception& e) {
    throw UsageError(a.proof + ": " + e.what());
  } catch (const bc::Error& e) {
    // Values that parse but are not group elements fail verification.
    if (e.code() != bc::Errc::InvalidArgument && e.code() != bc::Errc::InvalidCiphertext) throw;
  }
  std::cout << (accepted ? "accept" : "reject") << "\n";
  write_json(a.common.output, {{"accepted", accepted}});
  return accepted ? kExitOk : kExitReject;
}

// --------------------------------------------------------------- lwe-match

struct MatchArgs {
  Common common;
  std::string profile = "default";
  std::string template_bits;
  std::string probe_bits;
  std::size_t bits = 0;
  std::int64_t threshold = -1;
};

int lwe_match(const MatchArgs& a) {
  const bc::lwe::LweParams params = bc::lwe::profile(a.profile);
  bc::Rng rng(a.common.seed);
  std::vector<std::uint8_t> tmpl, probe;
  if (!a.template_bits.empty() || !a.probe_bits.empty()) {
    tmpl = parse_bits(a.template_bits, "template");
    probe = parse_bits(a.probe_bits, "probe");
  } else {
    const std::size_t n = a.bits ? a.bits : 8;
    for (std::size_t i = 0; i < n; ++i) tmpl.push_back(rng.coin() ? 1 : 0);
    for (std::size_t i = 0; i < n; ++i) probe.push_back(rng.coin() ? 1 : 0);
  }
  if (tmpl.size() != probe.size()) throw UsageError("template and probe differ in length");
  const std::uint64_t threshold =
      a.threshold >= 0 ? static_cast<std::uint64_t>(a.threshold) : (tmpl.size() + 1) / 2;

  const bc::lwe::LweKeyPair keys = bc::lwe::lwe_keygen(params, rng);
  const auto enc = bc::bio::encrypted_match(params, keys, tmpl, probe, threshold, rng);
  const auto plain = bc::bio::plaintext_match(tmpl, probe, threshold);
  const bool is_match = enc.result == bc::bio::MatchResult::Match;
  std::cout << "profile " << a.profile << " (d=" << params.d << ", t=" << params.t << "), n="
            << tmpl.size() << ", threshold " << threshold << "\n"
            << "encrypted inner product " << enc.inner_product << " -> "
            << (is_match ? "match" : "no match") << "\n"
            << "plaintext decision " << (plain == enc.result ? "agrees" : "DISAGREES") << "\n";
  write_json(a.common.output, {{"profile", a.profile},
                               {"n", tmpl.size()},
                               {"threshold", threshold},
                               {"inner_product", enc.inner_product},
                               {"match", is_match},
                               {"plaintext_agrees", plain == enc.result}});
  return plain == enc.result ? kExitOk : kExitInvariant;
}

// -------------------------------------------------------------- slash-demo

struct SlashArgs {
  Common common;
  std::string kind = "offline48h";
  int repeat = 3;
};

int slash_demo(const SlashArgs& a) {
  const auto kind = bc::slashing::parse_kind(a.kind);
  if (!kind) throw UsageError("unknown perpetration '" + a.kind + "'");
  if (a.repeat < 1) throw UsageError("--repeat must be at least 1");
  const auto& p = bc::slashing::perpetration(*kind);
  std::cout << bc::slashing::to_string(*kind) << ": severity " << p.severity << ", base "
            << bc::slashing::Period{p.base_period_months}.to_string() << " months, "
            << (p.scalable ? "scalable" : "not scalable") << "\n";

  bc::slashing::Blacklist bl;
  json entries = json::array();
  bc::SimTime now = 0;
  for (int i = 0; i < a.repeat; ++i) {
    const auto& e = bl.slash(0, *kind, now);
    std::cout << "offense " << i + 1 << ": " << e.period.to_string()
              << (e.period.forever() ? "" : " months") << "\n";
    entries.push_back(bc::slashing::to_json(e));
    if (e.period.forever()) continue;
    now += e.period.seconds();
  }
  write_json(a.common.output, {{"perpetration", bc::slashing::to_json(p)}, {"entries", entries}});
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"biochain: simulator, economics and encrypted matching tools"};
  app.require_subcommand(1);

  RunSimArgs sim;
  auto* cmd_sim = app.add_subcommand("run-sim", "Run a network simulation scenario");
  add_common(cmd_sim, sim.common);
  cmd_sim->add_option("--scenario", sim.scenario, "Scenario JSON file")->required();
  cmd_sim->add_option("--events", sim.events, "Write the NDJSON event log to this file");

  Common fath;
  auto* cmd_fath = app.add_subcommand("fath-demo", "Replay the three-year supply rebalance example");
  add_common(cmd_fath, fath);

  FeeArgs fee;
  auto* cmd_fee = app.add_subcommand("fee-quote", "Price a transaction from a quote fixture");
  add_common(cmd_fee, fee.common);
  cmd_fee->add_option("--quotes", fee.quotes, "Provider quote JSON")->capture_default_str();
  cmd_fee->add_option("--size-gb", fee.size_gb, "Stored payload size in GB (decimal)")
      ->capture_default_str();
  cmd_fee->add_option("--validators", fee.validators, "Validators executing and storing")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd_fee->add_option("--decline", fee.decline, "Annual storage cost decline")
      ->capture_default_str();

  ScoreArgs score;
  auto* cmd_score = app.add_subcommand("score-modalities", "Score biometric modalities");
  add_common(cmd_score, score.common);
  cmd_score->add_option("--input", score.input, "Modality levels JSON")->capture_default_str();

  KeygenArgs kg;
  auto* cmd_kg = app.add_subcommand("keygen", "Generate an ElGamal group and key pair");
  add_common(cmd_kg, kg.common);
  cmd_kg->add_option("--bits", kg.bits, "Safe prime size")->capture_default_str()->check(
      CLI::Range(16u, 2048u));
  cmd_kg->add_flag("--production", kg.production, "Use the fixed 1024-bit group");
  cmd_kg->add_option("--secret", kg.secret, "Also write the secret key here");

  ProveArgs prove;
  auto* cmd_prove = app.add_subcommand("prove-linear", "Encrypt inputs and prove a linear map");
  add_common(cmd_prove, prove.common);
  cmd_prove->add_option("--key", prove.key, "Public key JSON from keygen")->required();
  cmd_prove->add_option("--inputs", prove.inputs, "Comma-separated integer inputs")->required();
  cmd_prove->add_option("--coefficients", prove.coefficients, "Comma-separated weights")
      ->required();

  VerifyArgs verify;
  auto* cmd_verify = app.add_subcommand("verify-linear", "Check a linear-map proof");
  add_common(cmd_verify, verify.common);
  cmd_verify->add_option("--key", verify.key, "Public key JSON")->required();
  cmd_verify->add_option("--proof", verify.proof, "Proof JSON from prove-linear")->required();

  MatchArgs match;
  auto* cmd_match = app.add_subcommand("lwe-match", "Encrypted template matching");
  add_common(cmd_match, match.common);
  cmd_match->add_option("--profile", match.profile, "Parameter profile")
      ->capture_default_str()
      ->check(CLI::IsMember(bc::lwe::profile_names()));
  cmd_match->add_option("--template", match.template_bits, "Comma-separated template bits");
  cmd_match->add_option("--probe", match.probe_bits, "Comma-separated probe bits");
  cmd_match->add_option("--bits", match.bits, "Random vector length when no bits are given");
  cmd_match->add_option("--threshold", match.threshold, "Match when inner product >= threshold");

  SlashArgs slash;
  auto* cmd_slash = app.add_subcommand("slash-demo", "Show blacklist periods for repeat offenses");
  add_common(cmd_slash, slash.common);
  cmd_slash->add_option("--kind", slash.kind, "Perpetration kind")->capture_default_str();
  cmd_slash->add_option("--repeat", slash.repeat, "Number of offenses")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (cmd_sim->parsed()) return run_sim(sim, *cmd_sim);
    if (cmd_fath->parsed()) return fath_demo(fath);
    if (cmd_fee->parsed()) return fee_quote(fee);
    if (cmd_score->parsed()) return score_modalities(score);
    if (cmd_kg->parsed()) return keygen(kg);
    if (cmd_prove->parsed()) return prove_linear(prove);
    if (cmd_verify->parsed()) return verify_linear(verify);
    if (cmd_match->parsed()) return lwe_match(match);
    if (cmd_slash->parsed()) return slash_demo(slash);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const bc::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitConfig;
}
