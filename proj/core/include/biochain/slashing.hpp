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

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <nlohmann/json.hpp>

#include "biochain/errors.hpp"

namespace biochain::vortex {
class Vortex;
}

namespace biochain::slashing {

enum class Kind {
  MissedMonthlyVerification,
  MismatchedProposalType,
  FailedFormationDelivery,
  Offline48h,
  MismatchedProposalTypeNoRight,
  UptimeBelow91,
  FalseTransaction,
};

enum class Effect { ExcludedFromValidators, Deactivated, FeesStopped, DevotionNullified };

const char* to_string(Kind kind);
const char* to_string(Effect effect);
Kind kind_from_string(const std::string& name);
/// Accepts the canonical name or a lowercase short alias such as "offline48h".
std::optional<Kind> parse_kind(const std::string& name);
const std::vector<Kind>& all_kinds();

/// A blacklisting length in months; nullopt months means forever.
struct Period {
  std::optional<mpq_class> months;

  bool forever() const { return !months.has_value(); }
  /// Length in simulated seconds. Only valid when !forever().
  SimTime seconds() const;
  std::string to_string() const;
  bool operator==(const Period& other) const { return months == other.months; }
};

struct Perpetration {
  Kind kind;
  int severity;
  mpq_class base_period_months;
  bool scalable;
  std::set<Effect> effects;
};

const Perpetration& perpetration(Kind kind);

inline constexpr int kLadderSize = 11;  // ten finite rungs then forever

/// Ladder rung `index`; index >= 10 is forever.
Period scaling_ladder(int index);
/// Rung a scalable kind starts on.
int base_rung(Kind kind);

struct BlacklistEntry {
  NodeId node = 0;
  Kind kind = Kind::MissedMonthlyVerification;
  int offense_index = 0;  // 0 for the first offense of this kind by this node
  Period period;
  SimTime start = 0;
  std::set<Effect> effects;

  bool covers(SimTime now) const;
};

/// Per-node offense history and blacklist periods.
class Blacklist {
 public:
  const BlacklistEntry& slash(NodeId node, Kind kind, SimTime now);
  bool is_blacklisted(NodeId node, SimTime now) const;
  /// True while any covering entry carries `effect`.
  bool has_effect(NodeId node, Effect effect, SimTime now) const;
  int offenses(NodeId node, Kind kind) const;
  const std::vector<BlacklistEntry>& entries() const { return entries_; }

 private:
  std::vector<BlacklistEntry> entries_;
  std::map<std::pair<NodeId, Kind>, int> counts_;
};

/// Network-side consequences of a fresh entry.
struct NetworkState {
  std::set<NodeId> validators;
  std::set<NodeId> fee_roster;
  std::set<NodeId> deactivated;
};

void apply_effects(const BlacklistEntry& entry, NetworkState& state, vortex::Vortex* dao,
                   SimTime now);

nlohmann::json to_json(const Perpetration& p);
nlohmann::json to_json(const BlacklistEntry& entry);
/// The full kind -> (severity, base, scalable, effects) map.
nlohmann::json table_json();

}  // namespace biochain::slashing
