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

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "biochain/errors.hpp"
#include "biochain/netsim.hpp"
#include "biochain/rng.hpp"

namespace biochain::netsim {
namespace {

using nlohmann::json;

json load(const std::string& rel) {
  std::ifstream in(std::string(BIOCHAIN_DATA_DIR) + "/" + rel);
  return json::parse(in);
}

SimConfig base_config(std::int64_t nodes, std::int64_t slots_per_epoch, std::int64_t epochs) {
  SimConfig c;
  c.seed = 7;
  c.num_nodes = nodes;
  c.slots_per_epoch = slots_per_epoch;
  c.epochs = epochs;
  c.slot_seconds = 3600;
  c.initial_balances = {{"users", 1'000'000'000}};
  c.epoch_fees = {1000};
  return c;
}

std::vector<const SimEvent*> of_kind(const SimReport& r, const std::string& kind) {
  std::vector<const SimEvent*> out;
  for (const auto& e : r.events) {
    if (e.kind == kind) out.push_back(&e);
  }
  return out;
}

std::vector<const SimEvent*> slashes_of(const SimReport& r, NodeId node, const std::string& kind) {
  std::vector<const SimEvent*> out;
  for (const auto* e : of_kind(r, "Slashed")) {
    if (e->payload.at("node") == node && e->payload.at("kind") == kind) out.push_back(e);
  }
  return out;
}

TEST(RoundRobin, CyclesThroughRoster) {
  const std::vector<NodeId> roster = {0, 1, 2};
  std::vector<NodeId> authors;
  for (std::int64_t s = 0; s < 6; ++s) authors.push_back(*next_author(s, roster));
  EXPECT_EQ(authors, (std::vector<NodeId>{0, 1, 2, 0, 1, 2}));
  EXPECT_FALSE(next_author(3, {}).has_value());
}

TEST(Fees, Examples) {
  const FeeSplit ten = distribute_fees(100, {0, 1, 2, 3, 4, 5, 6, 7, 8, 9});
  EXPECT_EQ(ten.vault, 2);
  Amount paid = 0;
  for (const auto& [n, a] : ten.payouts) {
    EXPECT_TRUE(a == 9 || a == 10);
    paid += a;
  }
  EXPECT_EQ(paid, 98);
  const FeeSplit one = distribute_fees(100, {4});
  EXPECT_EQ(one.vault, 2);
  ASSERT_EQ(one.payouts.size(), 1u);
  EXPECT_EQ(one.payouts[0], (std::pair<NodeId, Amount>{4, 98}));
  const FeeSplit none = distribute_fees(100, {});
  EXPECT_EQ(none.vault, 100);
  EXPECT_TRUE(none.payouts.empty());
  EXPECT_THROW(distribute_fees(-1, {1}), Error);
}

TEST(Fees, ConservationRandom) {
  Rng rng(61);
  for (int trial = 0; trial < 1000; ++trial) {
    const Amount fees = static_cast<Amount>(rng.below(1'000'000'000'000ULL));
    std::vector<NodeId> roster(rng.below(40));
    std::iota(roster.begin(), roster.end(), NodeId{0});
    const FeeSplit split = distribute_fees(fees, roster);
    Amount sum = split.vault;
    for (const auto& [n, a] : split.payouts) sum += a;
    ASSERT_EQ(sum, fees);
    if (!roster.empty()) ASSERT_EQ(split.vault, fees * 2 / 100);
  }
}

TEST(Run, EmptyRun) {
  SimConfig c = base_config(3, 10, 0);
  const SimReport r = run(c);
  EXPECT_TRUE(r.events.empty());
  EXPECT_EQ(r.slots, 0);
  EXPECT_EQ(r.final_ledger, r.initial_ledger);
  EXPECT_TRUE(r.blocks_per_node.empty());
}

TEST(Run, HonestCountsAndFairness) {
  SimConfig c = base_config(10, 100, 10);
  const SimReport r = run(c);
  EXPECT_TRUE(check_invariants(r.events).empty());
  EXPECT_EQ(r.skipped_slots, 0);
  std::int64_t total = 0;
  for (NodeId n = 0; n < 10; ++n) {
    const auto blocks = r.blocks_per_node.at(n);
    EXPECT_GE(blocks, 100 * 10 / 10 - 1);
    EXPECT_LE(blocks, 100 * 10 / 10 + 1);
    total += blocks;
  }
  EXPECT_EQ(total + r.skipped_slots, r.slots);
  // Stable roster: every full rotation gives each node one block.
  for (std::int64_t k = 1; k * 10 <= 1000; ++k) {
    std::map<std::uint64_t, int> counts;
    for (const auto* e : of_kind(r, "BlockAuthored")) {
      if (e->slot < k * 10) ++counts[e->payload.at("node").get<std::uint64_t>()];
    }
    for (std::uint64_t n = 0; n < 10; ++n) ASSERT_EQ(counts[n], k);
  }
}

TEST(Run, Determinism) {
  SimConfig c = base_config(5, 50, 6);
  c.offline = {{2, 60, 120}};
  c.offenses = {{30, 1, slashing::Kind::FailedFormationDelivery}};
  c.pipeline = PipelineConfig{};
  c.bioauth_failure = {{3, 0, 1}};
  const std::string a = run(c).event_log();
  const std::string b = run(c).event_log();
  EXPECT_EQ(a, b);
  EXPECT_FALSE(a.empty());
}

TEST(Tickets, RenewalAndExpiry) {
  SimConfig c = base_config(2, 50, 4);
  c.ticket_validity_slots = 100;
  const SimReport r = run(c);
  std::vector<std::pair<std::int64_t, std::int64_t>> renewals;
  for (const auto* e : of_kind(r, "TicketRenewed")) {
    if (e->payload.at("node") == 0) renewals.emplace_back(e->slot, e->payload.at("expiry_slot"));
  }
  ASSERT_GE(renewals.size(), 2u);
  EXPECT_EQ(renewals[0], (std::pair<std::int64_t, std::int64_t>{0, 100}));
  EXPECT_EQ(renewals[1], (std::pair<std::int64_t, std::int64_t>{100, 200}));
}

TEST(Tickets, MissedMonthlyVerification) {
  SimConfig c = base_config(3, 50, 6);
  c.slot_seconds = 26301;  // one month is 99 slots
  ASSERT_EQ(c.month_slots(), 99);
  c.ticket_validity_slots = 40;
  c.skip_renewal = {{1, 1, 1000}};
  const SimReport r = run(c);
  const auto hits = slashes_of(r, 1, "MissedMonthlyVerification");
  ASSERT_FALSE(hits.empty());
  EXPECT_EQ(hits[0]->slot, 99);  // last verified at slot 0
  EXPECT_TRUE(slashes_of(r, 0, "MissedMonthlyVerification").empty());
  EXPECT_TRUE(check_invariants(r.events).empty());
  // Without a ticket node 1 never authors after slot 40.
  for (const auto* e : of_kind(r, "BlockAuthored")) {
    if (e->payload.at("node") == 1) EXPECT_LT(e->slot, 40);
  }
}

TEST(Tickets, BlacklistedRenewalRejected) {
  SimConfig c = base_config(3, 50, 4);
  c.ticket_validity_slots = 20;
  c.offenses = {{10, 2, slashing::Kind::UptimeBelow91}};
  const SimReport r = run(c);
  bool rejected = false;
  for (const auto* e : of_kind(r, "RenewalRejected")) {
    if (e->payload.at("node") == 2 && e->payload.at("reason") == "Blacklisted") rejected = true;
  }
  EXPECT_TRUE(rejected);
}

TEST(Tickets, ScriptedBioauthFailure) {
  for (bool pipeline : {false, true}) {
    SimConfig c = base_config(3, 50, 2);
    c.ticket_validity_slots = 20;
    c.bioauth_failure = {{1, 20, 41}};
    if (pipeline) c.pipeline = PipelineConfig{};
    const SimReport r = run(c);
    std::set<std::int64_t> rejected_at;
    for (const auto* e : of_kind(r, "RenewalRejected")) {
      if (e->payload.at("node") == 1) {
        EXPECT_EQ(e->payload.at("reason"), "BioauthFailed");
        rejected_at.insert(e->slot);
      }
    }
    EXPECT_TRUE(rejected_at.contains(20)) << pipeline;
    EXPECT_FALSE(rejected_at.contains(41)) << pipeline;
    for (const auto* e : of_kind(r, "BlockAuthored")) {
      if (e->payload.at("node") == 1) EXPECT_TRUE(e->slot < 20 || e->slot >= 41) << e->slot;
    }
  }
}

TEST(Uptime, OfflineBeyondFortyEightHours) {
  SimConfig c = base_config(3, 200, 1);
  c.offline = {{0, 10, 59}};  // 49 one-hour slots
  const SimReport r = run(c);
  const auto hits = slashes_of(r, 0, "Offline48h");
  ASSERT_EQ(hits.size(), 1u);
  EXPECT_EQ(hits[0]->slot, 58);
  c.offline = {{0, 10, 58}};  // exactly 48 hours
  EXPECT_TRUE(slashes_of(run(c), 0, "Offline48h").empty());
}

TEST(Uptime, BelowNinetyOnePercent) {
  SimConfig c = base_config(3, 100, 1);
  // Ten scattered outages of one hour: 90% uptime, no long streak.
  for (std::int64_t s = 5; s < 100; s += 10) c.offline.push_back({1, s, s + 1});
  const SimReport r = run(c);
  EXPECT_EQ(slashes_of(r, 1, "UptimeBelow91").size(), 1u);
  EXPECT_TRUE(slashes_of(r, 0, "UptimeBelow91").empty());
  EXPECT_TRUE(slashes_of(r, 1, "Offline48h").empty());
  // Nine outages: 91% is enough.
  c.offline.pop_back();
  EXPECT_TRUE(slashes_of(run(c), 1, "UptimeBelow91").empty());
}

TEST(Blacklist, DropsOutOfRotationNextSlot) {
  SimConfig c = base_config(4, 100, 2);
  c.offenses = {{37, 2, slashing::Kind::FailedFormationDelivery}};
  const SimReport r = run(c);
  const auto hit = slashes_of(r, 2, "FailedFormationDelivery");
  ASSERT_EQ(hit.size(), 1u);
  for (const auto* e : of_kind(r, "BlockAuthored")) {
    if (e->slot >= 37) EXPECT_NE(e->payload.at("node"), 2) << e->slot;
  }
  // Node 2 gets no fee share while banned.
  for (const auto* e : of_kind(r, "FeesDistributed")) {
    EXPECT_FALSE(e->payload.at("payouts").contains("2"));
  }
  EXPECT_TRUE(check_invariants(r.events).empty());
}

TEST(Fath, RisingFeesMintProportionally) {
  SimConfig c = base_config(4, 10, 4);
  c.epoch_fees = {1000, 1500, 3000, 3000};
  const SimReport r = run(c);
  const auto reb = of_kind(r, "FathRebalance");
  ASSERT_EQ(reb.size(), 3u);
  EXPECT_EQ(reb[0]->payload.at("kind"), "inFath");
  EXPECT_EQ(reb[0]->payload.at("ratio_num"), 1);
  EXPECT_EQ(reb[0]->payload.at("ratio_den"), 2);
  EXPECT_EQ(reb[1]->payload.at("ratio_num"), 1);
  EXPECT_EQ(reb[1]->payload.at("ratio_den"), 1);
  EXPECT_EQ(reb[2]->payload.at("kind"), "none");
  EXPECT_TRUE(r.final_ledger.consistent());
  EXPECT_EQ(r.final_ledger.total_supply(), reb.back()->payload.at("new_supply").get<Amount>());
  EXPECT_EQ(r.final_ledger.total_supply(), r.initial_ledger.total_supply() * 3);
}

TEST(Config, ParsingAndErrors) {
  const SimConfig c = config_from_json(load("scenarios/faulty.json"));
  EXPECT_EQ(c.name, "faulty");
  EXPECT_EQ(c.num_nodes, 10);
  EXPECT_EQ(c.offline.size(), 2u);
  ASSERT_TRUE(c.pipeline.has_value());
  auto code = [](const json& doc) {
    try {
      config_from_json(doc);
    } catch (const Error& e) {
      return std::pair{e.code(), std::string(e.what())};
    }
    return std::pair{Errc::InvalidArgument, std::string("accepted")};
  };
  json missing = {{"num_nodes", 3}, {"slots_per_epoch", 10}};
  auto [c1, m1] = code(missing);
  EXPECT_EQ(c1, Errc::ConfigInvalid);
  EXPECT_NE(m1.find("epochs"), std::string::npos);
  json bad_type = {{"num_nodes", "three"}, {"slots_per_epoch", 10}, {"epochs", 1}};
  EXPECT_EQ(code(bad_type).first, Errc::ConfigInvalid);
  json bad_node = {{"num_nodes", 3}, {"slots_per_epoch", 10}, {"epochs", 1},
                   {"faults", {{"offline", {{{"node", 5}, {"from", 0}, {"to", 1}}}}}}};
  EXPECT_EQ(code(bad_node).first, Errc::ConfigInvalid);
  json bad_kind = {{"num_nodes", 3}, {"slots_per_epoch", 10}, {"epochs", 1},
                   {"faults", {{"offenses", {{{"node", 1}, {"slot", 0}, {"kind", "nope"}}}}}}};
  auto [c4, m4] = code(bad_kind);
  EXPECT_EQ(c4, Errc::ConfigInvalid);
  EXPECT_NE(m4.find("faults.offenses[0].kind"), std::string::npos);
  EXPECT_EQ(code(json::array()).first, Errc::ConfigInvalid);
}

TEST(Invariants, CheckerCatchesViolations) {
  auto ev = [](std::int64_t slot, std::uint64_t seq, std::string kind, json p) {
    return SimEvent{slot, seq, std::move(kind), std::move(p)};
  };
  const std::vector<SimEvent> ok = {
      ev(0, 0, "TicketRenewed", {{"node", 1}, {"expiry_slot", 10}}),
      ev(1, 1, "BlockAuthored", {{"node", 1}}),
      ev(2, 2, "FeesDistributed", {{"collected", 100}, {"vault", 2}, {"payouts", {{"1", 98}}}}),
  };
  EXPECT_TRUE(check_invariants(ok).empty());

  auto expired = ok;
  expired[1].slot = 10;
  expired[2].slot = 10;
  EXPECT_FALSE(check_invariants(expired).empty());

  auto never = ok;
  never[1].payload["node"] = 2;
  EXPECT_FALSE(check_invariants(never).empty());

  auto banned = ok;
  banned.insert(banned.begin() + 1,
                ev(1, 1, "Slashed", {{"node", 1}, {"start_slot", 1}, {"until_slot", nullptr}}));
  banned[2].seq = 2;
  banned[3].seq = 3;
  EXPECT_EQ(check_invariants(banned).size(), 2u);  // authored and paid

  auto leak = ok;
  leak[2].payload["vault"] = 1;
  EXPECT_FALSE(check_invariants(leak).empty());

  auto backwards = ok;
  backwards[2].slot = 0;
  EXPECT_FALSE(check_invariants(backwards).empty());
}

class GoldenScenario : public ::testing::TestWithParam<const char*> {};

TEST_P(GoldenScenario, ReproducesCommittedReport) {
  const std::string name = GetParam();
  const SimConfig c = config_from_json(load("scenarios/" + name + ".json"));
  const SimReport r = run(c);
  EXPECT_TRUE(check_invariants(r.events).empty());
  json summary = r.summary();
  const json golden = load("golden/" + name + ".report.json");
  for (const auto& [key, value] : summary.items()) {
    EXPECT_EQ(value, golden.at(key)) << name << ": " << key;
  }
  EXPECT_EQ(run(c).event_log(), r.event_log());
}

TEST_P(GoldenScenario, ConservationEveryEpoch) {
  const SimConfig c = config_from_json(load(std::string("scenarios/") + GetParam() + ".json"));
  const SimReport r = run(c);
  const auto fees = of_kind(r, "FeesDistributed");
  ASSERT_EQ(static_cast<std::int64_t>(fees.size()), c.epochs);
  Amount collected = 0;
  for (const auto* e : fees) {
    Amount sum = e->payload.at("vault").get<Amount>();
    for (const auto& [node, amount] : e->payload.at("payouts").items()) sum += amount.get<Amount>();
    ASSERT_EQ(sum, e->payload.at("collected").get<Amount>());
    ASSERT_EQ(e->payload.at("collected").get<Amount>(),
              c.fee_for_epoch(e->payload.at("epoch").get<std::int64_t>()));
    collected += sum;
  }
  EXPECT_EQ(collected, r.fees_collected);
  EXPECT_EQ(r.fees_to_nodes + r.fees_to_vault, r.fees_collected);
  EXPECT_TRUE(r.final_ledger.consistent());
  std::int64_t blocks = 0;
  for (const auto& [n, b] : r.blocks_per_node) blocks += b;
  EXPECT_EQ(blocks + r.skipped_slots, r.slots);
}

INSTANTIATE_TEST_SUITE_P(All, GoldenScenario, ::testing::Values("honest", "faulty", "malicious"));

TEST(GoldenScenario, FalseTransactionSlashed) {
  const SimReport r = run(config_from_json(load("scenarios/malicious.json")));
  const auto hits = slashes_of(r, 2, "FalseTransaction");
  ASSERT_EQ(hits.size(), 1u);
  EXPECT_EQ(hits[0]->payload.at("period_months"), "120");
  const auto effects = hits[0]->payload.at("effects").get<std::vector<std::string>>();
  EXPECT_NE(std::find(effects.begin(), effects.end(), "DevotionNullified"), effects.end());
}

}  // namespace
}  // namespace biochain::netsim
