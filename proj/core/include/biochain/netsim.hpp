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
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "biochain/apportion.hpp"
#include "biochain/errors.hpp"
#include "biochain/fath.hpp"
#include "biochain/slashing.hpp"
#include "biochain/vortex.hpp"

namespace biochain::netsim {

/// Slot range [from, to).
struct SlotWindow {
  NodeId node = 0;
  std::int64_t from = 0;
  std::int64_t to = 0;

  bool contains(std::int64_t slot) const { return slot >= from && slot < to; }
};

struct ScriptedOffense {
  std::int64_t slot = 0;
  NodeId node = 0;
  slashing::Kind kind = slashing::Kind::FalseTransaction;
};

struct GovernorSeed {
  NodeId node = 0;
  SimTime governing_since = 0;
  bool formation_participant = false;
  bool has_approved_proposal = false;
};

enum class DaoActionKind { Submit, PoolVote, Vote, Delegate };

struct DaoAction {
  std::int64_t slot = 0;
  DaoActionKind kind = DaoActionKind::Submit;
  NodeId node = 0;
  vortex::ProposalType type = vortex::ProposalType::Product;  // Submit
  vortex::ProposalId proposal = 0;                            // PoolVote, Vote
  bool yes = true;                                            // PoolVote, Vote
  NodeId target = 0;                                          // Delegate
};

/// Runs encrypted matching for every renewal.
struct PipelineConfig {
  std::string profile = "test-exhaustive";
  std::size_t bits = 4;
};

struct SimConfig {
  std::string name = "scenario";
  std::uint64_t seed = 0;
  std::int64_t num_nodes = 1;
  std::int64_t slots_per_epoch = 1;
  std::int64_t epochs = 0;
  SimTime slot_seconds = 6;
  std::int64_t ticket_validity_slots = 0;  // 0 means one month of slots
  std::int64_t fath_period_epochs = 1;     // 0 disables rebalancing
  std::map<std::string, Amount> initial_balances;
  std::vector<Amount> epoch_fees;  // the last value repeats
  std::vector<SlotWindow> offline;
  std::vector<SlotWindow> skip_renewal;
  std::vector<SlotWindow> bioauth_failure;
  std::vector<ScriptedOffense> offenses;
  std::vector<GovernorSeed> governors;
  std::vector<DaoAction> dao_actions;
  std::optional<PipelineConfig> pipeline;

  std::int64_t validity_slots() const;
  std::int64_t month_slots() const;
  Amount fee_for_epoch(std::int64_t epoch) const;
  /// Throws ConfigInvalid.
  void validate() const;
};

inline constexpr const char* kUsersAccount = "users";
inline constexpr const char* kVaultAccount = "formation_vault";
std::string node_account(NodeId node);

/// Parses a scenario document. Throws ConfigInvalid with a path to the
/// offending field.
SimConfig config_from_json(const nlohmann::json& doc);

struct SimEvent {
  std::int64_t slot = 0;
  std::uint64_t seq = 0;
  std::string kind;
  nlohmann::json payload = nlohmann::json::object();

  nlohmann::json to_json() const;
};

/// Round-robin author for the slot over a sorted roster.
std::optional<NodeId> next_author(std::int64_t slot, const std::vector<NodeId>& roster);

/// Fee split: 2% (rounded down) to the vault, the rest equally with
/// largest remainder. An empty roster sends everything to the vault.
struct FeeSplit {
  Amount vault = 0;
  std::vector<std::pair<NodeId, Amount>> payouts;
};
FeeSplit distribute_fees(Amount fees, const std::vector<NodeId>& roster);

struct SimReport {
  std::vector<SimEvent> events;
  fath::LedgerSnapshot initial_ledger;
  fath::LedgerSnapshot final_ledger;
  std::map<NodeId, std::int64_t> blocks_per_node;
  std::int64_t slots = 0;
  std::int64_t skipped_slots = 0;
  Amount fees_collected = 0;
  Amount fees_to_nodes = 0;
  Amount fees_to_vault = 0;
  std::vector<nlohmann::json> rebalances;
  std::vector<slashing::BlacklistEntry> slashes;
  nlohmann::json dao = nlohmann::json::object();

  std::string event_log() const;  // NDJSON, one line per event
  nlohmann::json summary() const;
};

SimReport run(const SimConfig& config);

/// Replays an event log and returns every safety or conservation
/// violation found. Uses only the events, not simulator state.
std::vector<std::string> check_invariants(const std::vector<SimEvent>& events);

}  // namespace biochain::netsim
