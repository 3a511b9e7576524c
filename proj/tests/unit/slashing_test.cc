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

#include <fstream>
#include <set>
#include <string>

#include <gmpxx.h>
#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "biochain/errors.hpp"
#include "biochain/slashing.hpp"
#include "biochain/vortex.hpp"

namespace biochain::slashing {
namespace {

using namespace timeunits;

nlohmann::json load_golden() {
  std::ifstream in(std::string(BIOCHAIN_DATA_DIR) + "/slashing_table.json");
  return nlohmann::json::parse(in);
}

mpq_class months(const std::string& text) {
  // Fixture periods are plain decimals such as "0.5" or "120".
  const auto dot = text.find('.');
  if (dot == std::string::npos) return mpq_class(mpz_class(text));
  const std::string frac = text.substr(dot + 1);
  mpz_class den = 1;
  for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
  mpq_class out(mpz_class(text.substr(0, dot) + frac), den);
  out.canonicalize();
  return out;
}

TEST(Table, MatchesGoldenFixture) {
  const auto golden = load_golden();
  ASSERT_EQ(golden.size(), all_kinds().size());
  std::set<std::string> seen;
  for (const auto& row : golden) {
    const std::string name = row.at("kind");
    seen.insert(name);
    const Perpetration& p = perpetration(kind_from_string(name));
    EXPECT_EQ(to_string(p.kind), name);
    EXPECT_EQ(p.severity, row.at("severity").get<int>()) << name;
    EXPECT_EQ(p.base_period_months, months(row.at("base_period_months"))) << name;
    EXPECT_EQ(p.scalable, row.at("scalable").get<bool>()) << name;
    std::set<std::string> effects;
    for (Effect e : p.effects) effects.insert(to_string(e));
    EXPECT_EQ(effects, row.at("effects").get<std::set<std::string>>()) << name;
  }
  EXPECT_EQ(seen.size(), golden.size());
}

TEST(Table, JsonExportRoundTripsFixture) {
  EXPECT_EQ(table_json(), load_golden());
}

TEST(Ladder, Rungs) {
  const char* expected[] = {"0.5", "1", "2", "3", "6", "12", "24", "36", "120", "240", "forever"};
  for (int i = 0; i < kLadderSize; ++i) EXPECT_EQ(scaling_ladder(i).to_string(), expected[i]) << i;
  EXPECT_EQ(scaling_ladder(0).months, mpq_class(1, 2));
  EXPECT_EQ(scaling_ladder(5).months, mpq_class(12));
  EXPECT_TRUE(scaling_ladder(10).forever());
  EXPECT_TRUE(scaling_ladder(25).forever());
  for (int i = 1; i < 10; ++i) EXPECT_GT(*scaling_ladder(i).months, *scaling_ladder(i - 1).months);
}

TEST(Ladder, BaseRungMatchesTable) {
  for (Kind k : all_kinds()) {
    const Perpetration& p = perpetration(k);
    if (!p.scalable) continue;
    const Period first = scaling_ladder(base_rung(k));
    ASSERT_FALSE(first.forever());
    EXPECT_EQ(*first.months, p.base_period_months) << to_string(k);
  }
}

TEST(Ladder, RepeatOffenseProgression) {
  Blacklist bl;
  const char* expected[] = {"0.5", "1", "2", "3", "6", "12", "24", "36", "120", "240", "forever",
                            "forever"};
  SimTime now = 0;
  for (int i = 0; i < 12; ++i) {
    const BlacklistEntry& e = bl.slash(1, Kind::Offline48h, now);
    EXPECT_EQ(e.offense_index, i);
    EXPECT_EQ(e.period.to_string(), expected[i]) << i;
    now += kYear;
  }
  EXPECT_EQ(bl.offenses(1, Kind::Offline48h), 12);
  EXPECT_EQ(bl.offenses(2, Kind::Offline48h), 0);
}

TEST(Slash, Examples) {
  Blacklist bl;
  const auto& first = bl.slash(3, Kind::Offline48h, 0);
  EXPECT_EQ(first.period.to_string(), "0.5");
  EXPECT_EQ(first.effects, (std::set<Effect>{Effect::Deactivated, Effect::FeesStopped}));
  EXPECT_EQ(bl.slash(3, Kind::Offline48h, kMonth).period.to_string(), "1");
  const auto& lie = bl.slash(4, Kind::FalseTransaction, 0);
  EXPECT_EQ(lie.period.to_string(), "120");
  EXPECT_TRUE(lie.effects.contains(Effect::DevotionNullified));
  EXPECT_EQ(bl.slash(4, Kind::FalseTransaction, 0).period.to_string(), "240");
  EXPECT_TRUE(bl.slash(4, Kind::FalseTransaction, 0).period.forever());
  // Not scalable: always the base period.
  for (int i = 0; i < 4; ++i) {
    EXPECT_EQ(bl.slash(5, Kind::MismatchedProposalType, 0).period.to_string(), "1");
    EXPECT_EQ(bl.slash(5, Kind::MissedMonthlyVerification, 0).period.to_string(), "0.5");
  }
  // Kinds count separately.
  EXPECT_EQ(bl.slash(3, Kind::UptimeBelow91, 0).period.to_string(), "1");
}

TEST(Slash, DateArithmetic) {
  EXPECT_EQ(kMonth, 2630016);  // 30.44 days
  EXPECT_EQ(scaling_ladder(0).seconds(), 1315008);
  Blacklist bl;
  const SimTime t0 = 1000;
  bl.slash(9, Kind::MissedMonthlyVerification, t0);
  EXPECT_FALSE(bl.is_blacklisted(9, t0 - 1));
  EXPECT_TRUE(bl.is_blacklisted(9, t0));
  EXPECT_TRUE(bl.is_blacklisted(9, t0 + 10 * kDay));
  EXPECT_TRUE(bl.is_blacklisted(9, t0 + 1315007));
  EXPECT_FALSE(bl.is_blacklisted(9, t0 + 1315008));
  EXPECT_FALSE(bl.is_blacklisted(9, t0 + 16 * kDay));
  EXPECT_TRUE(bl.has_effect(9, Effect::FeesStopped, t0 + kDay));
  EXPECT_FALSE(bl.has_effect(9, Effect::Deactivated, t0 + kDay));
  EXPECT_THROW(Period{}.seconds(), Error);

  bl.slash(8, Kind::FalseTransaction, 0);
  bl.slash(8, Kind::FalseTransaction, 0);
  bl.slash(8, Kind::FalseTransaction, 0);
  EXPECT_TRUE(bl.is_blacklisted(8, 1000 * kYear));
}

TEST(Effects, RosterChanges) {
  Blacklist bl;
  NetworkState state{{1, 2, 3}, {1, 2, 3}, {}};
  apply_effects(bl.slash(1, Kind::MissedMonthlyVerification, 0), state, nullptr, 0);
  EXPECT_FALSE(state.validators.contains(1));
  EXPECT_FALSE(state.deactivated.contains(1));
  EXPECT_FALSE(state.fee_roster.contains(1));
  apply_effects(bl.slash(2, Kind::UptimeBelow91, 0), state, nullptr, 0);
  EXPECT_FALSE(state.validators.contains(2));
  EXPECT_TRUE(state.fee_roster.contains(2));
  EXPECT_FALSE(state.deactivated.contains(2));
  apply_effects(bl.slash(3, Kind::Offline48h, 0), state, nullptr, 0);
  EXPECT_TRUE(state.deactivated.contains(3));
  EXPECT_FALSE(state.fee_roster.contains(3));
}

TEST(Effects, FalseTransactionZeroesGoverningHistory) {
  vortex::Vortex dao;
  auto& rec = dao.add_node(7, vortex::Role::Governor, 0);
  rec.has_approved_proposal = true;
  rec.formation_participant = true;
  dao.refresh_tiers(3 * kYear);
  EXPECT_EQ(dao.record(7).tier, vortex::Tier::Legate);
  Blacklist bl;
  NetworkState state{{7}, {7}, {}};
  apply_effects(bl.slash(7, Kind::FalseTransaction, 3 * kYear), state, &dao, 3 * kYear);
  EXPECT_EQ(dao.record(7).governing_since, 3 * kYear);
  EXPECT_FALSE(dao.record(7).formation_participant);
  EXPECT_EQ(dao.record(7).tier, vortex::Tier::Citizen);
  EXPECT_TRUE(state.deactivated.contains(7));
}

TEST(Names, Parsing) {
  for (Kind k : all_kinds()) EXPECT_EQ(kind_from_string(to_string(k)), k);
  EXPECT_EQ(parse_kind("false-transaction"), Kind::FalseTransaction);
  EXPECT_EQ(parse_kind("offline_48h"), Kind::Offline48h);
  EXPECT_FALSE(parse_kind("jaywalking").has_value());
  EXPECT_THROW(kind_from_string("jaywalking"), Error);
  const auto doc = to_json(Blacklist().slash(1, Kind::UptimeBelow91, 5));
  EXPECT_EQ(doc["kind"], "UptimeBelow91");
}

}  // namespace
}  // namespace biochain::slashing
