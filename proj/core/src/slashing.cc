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

#include "biochain/slashing.hpp"

#include <algorithm>
#include <cctype>

#include "biochain/vortex.hpp"

namespace biochain::slashing {
namespace {

struct KindName {
  Kind kind;
  const char* name;
  const char* alias;
};

constexpr KindName kKindNames[] = {
    {Kind::MissedMonthlyVerification, "MissedMonthlyVerification", "missedmonthlyverification"},
    {Kind::MismatchedProposalType, "MismatchedProposalType", "mismatchedproposaltype"},
    {Kind::FailedFormationDelivery, "FailedFormationDelivery", "failedformationdelivery"},
    {Kind::Offline48h, "Offline48h", "offline48h"},
    {Kind::MismatchedProposalTypeNoRight, "MismatchedProposalTypeNoRight",
     "mismatchedproposaltypenoright"},
    {Kind::UptimeBelow91, "UptimeBelow91", "uptimebelow91"},
    {Kind::FalseTransaction, "FalseTransaction", "falsetransaction"},
};

std::vector<Perpetration> build_table() {
  using E = Effect;
  const mpq_class half(1, 2);
  return {
      {Kind::MissedMonthlyVerification, 0, half, false, {E::ExcludedFromValidators, E::FeesStopped}},
      {Kind::MismatchedProposalType, 1, 1, false, {}},
      {Kind::FailedFormationDelivery, 2, 1, true, {}},
      {Kind::Offline48h, 2, half, true, {E::Deactivated, E::FeesStopped}},
      {Kind::MismatchedProposalTypeNoRight, 3, 1, true, {E::Deactivated, E::FeesStopped}},
      {Kind::UptimeBelow91, 3, 1, true, {}},
      {Kind::FalseTransaction, 5, 120, true,
       {E::Deactivated, E::FeesStopped, E::DevotionNullified}},
  };
}

const std::vector<mpq_class>& ladder() {
  static const std::vector<mpq_class> rungs = {mpq_class(1, 2), 1, 2, 3, 6, 12, 24, 36, 120, 240};
  return rungs;
}

}  // namespace

const char* to_string(Kind kind) {
  for (const auto& k : kKindNames) {
    if (k.kind == kind) return k.name;
  }
  return "?";
}

const char* to_string(Effect effect) {
  switch (effect) {
    case Effect::ExcludedFromValidators: return "ExcludedFromValidators";
    case Effect::Deactivated: return "Deactivated";
    case Effect::FeesStopped: return "FeesStopped";
    case Effect::DevotionNullified: return "DevotionNullified";
  }
  return "?";
}

std::optional<Kind> parse_kind(const std::string& name) {
  std::string lower = name;
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) {
    return static_cast<char>(std::tolower(c));
  });
  std::erase_if(lower, [](char c) { return c == '-' || c == '_'; });
  for (const auto& k : kKindNames) {
    if (name == k.name || lower == k.alias) return k.kind;
  }
  return std::nullopt;
}

Kind kind_from_string(const std::string& name) {
  auto kind = parse_kind(name);
  if (!kind) raise(Errc::InvalidArgument, "unknown perpetration '" + name + "'");
  return *kind;
}

const std::vector<Kind>& all_kinds() {
  static const std::vector<Kind> kinds = [] {
    std::vector<Kind> out;
    for (const auto& k : kKindNames) out.push_back(k.kind);
    return out;
  }();
  return kinds;
}

SimTime Period::seconds() const {
  if (!months) raise(Errc::InvalidArgument, "forever has no length");
  mpq_class s = *months * timeunits::kMonth;
  mpz_class whole = s.get_num() / s.get_den();
  return static_cast<SimTime>(whole.get_si());
}

std::string Period::to_string() const {
  if (!months) return "forever";
  if (months->get_den() == 1) return months->get_num().get_str();
  // Only halves appear on the ladder.
  mpq_class tenths = *months * 10;
  mpz_class t = tenths.get_num() / tenths.get_den();
  std::string s = mpz_class(t / 10).get_str() + "." + mpz_class(t % 10).get_str();
  return s;
}

const Perpetration& perpetration(Kind kind) {
  static const std::vector<Perpetration> table = build_table();
  for (const auto& p : table) {
    if (p.kind == kind) return p;
  }
  raise(Errc::InvalidArgument, "unknown perpetration");
}

Period scaling_ladder(int index) {
  if (index < 0) raise(Errc::InvalidArgument, "negative offense index");
  const auto& rungs = ladder();
  if (index >= static_cast<int>(rungs.size())) return Period{};
  return Period{rungs[static_cast<std::size_t>(index)]};
}

int base_rung(Kind kind) {
  const mpq_class& base = perpetration(kind).base_period_months;
  const auto& rungs = ladder();
  auto it = std::find(rungs.begin(), rungs.end(), base);
  if (it == rungs.end()) raise(Errc::InvalidArgument, "base period not on the ladder");
  return static_cast<int>(it - rungs.begin());
}

bool BlacklistEntry::covers(SimTime now) const {
  if (now < start) return false;
  if (period.forever()) return true;
  return now < start + period.seconds();
}

const BlacklistEntry& Blacklist::slash(NodeId node, Kind kind, SimTime now) {
  const Perpetration& p = perpetration(kind);
  int& count = counts_[{node, kind}];
  BlacklistEntry entry;
  entry.node = node;
  entry.kind = kind;
  entry.offense_index = count;
  entry.period = p.scalable ? scaling_ladder(base_rung(kind) + count) : Period{p.base_period_months};
  entry.start = now;
  entry.effects = p.effects;
  ++count;
  entries_.push_back(std::move(entry));
  return entries_.back();
}

bool Blacklist::is_blacklisted(NodeId node, SimTime now) const {
  return std::any_of(entries_.begin(), entries_.end(), [&](const BlacklistEntry& e) {
    return e.node == node && e.covers(now);
  });
}

bool Blacklist::has_effect(NodeId node, Effect effect, SimTime now) const {
  return std::any_of(entries_.begin(), entries_.end(), [&](const BlacklistEntry& e) {
    return e.node == node && e.covers(now) && e.effects.contains(effect);
  });
}

int Blacklist::offenses(NodeId node, Kind kind) const {
  auto it = counts_.find({node, kind});
  return it == counts_.end() ? 0 : it->second;
}

void apply_effects(const BlacklistEntry& entry, NetworkState& state, vortex::Vortex* dao,
                   SimTime now) {
  // Every blacklisted node loses signing rights for the period.
  state.validators.erase(entry.node);
  for (Effect e : entry.effects) {
    switch (e) {
      case Effect::ExcludedFromValidators: break;
      case Effect::Deactivated: state.deactivated.insert(entry.node); break;
      case Effect::FeesStopped: state.fee_roster.erase(entry.node); break;
      case Effect::DevotionNullified:
        if (dao && dao->records().contains(entry.node)) dao->nullify_devotion(entry.node, now);
        break;
    }
  }
}

nlohmann::json to_json(const Perpetration& p) {
  nlohmann::json effects = nlohmann::json::array();
  for (Effect e : p.effects) effects.push_back(to_string(e));
  return {{"kind", to_string(p.kind)},
          {"severity", p.severity},
          {"base_period_months", Period{p.base_period_months}.to_string()},
          {"scalable", p.scalable},
          {"effects", std::move(effects)}};
}

nlohmann::json to_json(const BlacklistEntry& entry) {
  nlohmann::json effects = nlohmann::json::array();
  for (Effect e : entry.effects) effects.push_back(to_string(e));
  return {{"node", entry.node},
          {"kind", to_string(entry.kind)},
          {"offense_index", entry.offense_index},
          {"period_months", entry.period.to_string()},
          {"start", entry.start},
          {"effects", std::move(effects)}};
}

nlohmann::json table_json() {
  nlohmann::json rows = nlohmann::json::array();
  for (Kind k : all_kinds()) rows.push_back(to_json(perpetration(k)));
  return rows;
}

}  // namespace biochain::slashing
