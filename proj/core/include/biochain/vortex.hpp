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

#include <nlohmann/json.hpp>

#include "biochain/apportion.hpp"
#include "biochain/errors.hpp"

namespace biochain::vortex {

enum class Role { HumanNode, Governor, Delegator };
enum class Tier { Citizen, Senator, Legate, Consul };
enum class ProposalType { Product, FeeDistribution, Monetary, Protocol, Administrative, VortexCore };
enum class ProposalState { InPool, InVote, Approved, Declined, Expired };
enum class QuorumBasis { Power, Heads };
enum class Board { Fresh, Trending, Popular };

const char* to_string(Role role);
const char* to_string(Tier tier);
const char* to_string(ProposalType type);
const char* to_string(ProposalState state);
ProposalType proposal_type_from_string(const std::string& name);
Tier tier_from_string(const std::string& name);

/// ceil(percent * n / 100) in exact integer arithmetic.
std::int64_t ceil_percent(std::int64_t n, std::int64_t percent);

inline constexpr std::int64_t kQuorumPercent = 33;
inline constexpr std::int64_t kApprovalPercent = 66;
inline constexpr std::int64_t kPoolPercent = 22;
inline constexpr std::int64_t kVetoPercent = 66;
inline constexpr std::int64_t kFormationConsulPercent = 66;
inline constexpr int kMaxOpenProposals = 5;
inline constexpr int kVetoLimit = 2;

bool quorum_reached(std::int64_t cast, std::int64_t eligible);
bool approval_reached(std::int64_t yes, std::int64_t cast);

/// Proposal rights per tier.
bool tier_allows(Tier tier, ProposalType type);
/// Longest time a proposal of this type may sit in the pool.
SimTime max_pool_time(ProposalType type);

struct GovernorRecord {
  NodeId id = 0;
  Role role = Role::HumanNode;
  Tier tier = Tier::Citizen;
  bool human = true;
  SimTime governing_since = 0;
  bool formation_participant = false;
  bool runs_node = true;
  bool has_approved_proposal = false;
  std::set<NodeId> delegations_received;
  std::optional<NodeId> delegated_to;
  bool active_this_month = false;

  bool governing() const { return role == Role::Governor || role == Role::Delegator; }
};

/// Highest tier whose requirements the record meets at `now`.
Tier tier_promotion(const GovernorRecord& record, SimTime now);

using ProposalId = std::uint64_t;

struct Proposal {
  ProposalId id = 0;
  NodeId proposer = 0;
  std::optional<NodeId> nominated_by;
  std::optional<ProposalId> previous;  // earlier round of the same decision
  std::string pseudonym;
  ProposalType type = ProposalType::Product;
  ProposalState state = ProposalState::InPool;
  std::map<NodeId, SimTime> pool_upvotes;
  std::map<NodeId, SimTime> pool_downvotes;
  std::set<NodeId> vote_yes;
  std::set<NodeId> vote_no;
  SimTime submitted_at = 0;
  SimTime pool_deadline = 0;
  SimTime vote_deadline = 0;
  SimTime resubmit_eligible_at = 0;
  int approval_count = 0;
  bool vetoed = false;
  bool granted = false;

  bool open() const { return state == ProposalState::InPool || state == ProposalState::InVote; }
  std::size_t pool_votes() const { return pool_upvotes.size() + pool_downvotes.size(); }
};

struct TallyResult {
  ProposalId proposal = 0;
  std::int64_t eligible_governors = 0;  // total eligible voting weight
  std::int64_t votes_cast = 0;
  std::int64_t yes = 0;
  bool quorum_met = false;
  bool approved = false;
};

struct VetoResult {
  bool vetoed = false;
  std::int64_t required = 0;
};

struct FormationGrant {
  ProposalId proposal = 0;
  NodeId recipient = 0;
  Amount amount = 0;
  Amount vault_balance = 0;  // after the grant
};

struct VortexConfig {
  QuorumBasis quorum_basis = QuorumBasis::Power;
  SimTime vote_period = timeunits::kWeek;
  SimTime resubmit_cooldown = 2 * timeunits::kWeek;
  /// Before this time every Formation grant also needs Consul approval.
  SimTime consul_gate_until = 4 * timeunits::kYear;
  std::uint64_t pseudonym_salt = 0;
};

/// The DAO state machine. Single writer; every mutation takes the current
/// simulated time explicitly.
class Vortex {
 public:
  explicit Vortex(VortexConfig config = {});

  const VortexConfig& config() const { return config_; }

  GovernorRecord& add_node(NodeId id, Role role, SimTime governing_since = 0, bool human = true);
  const GovernorRecord& record(NodeId id) const;
  GovernorRecord& record(NodeId id);
  const std::map<NodeId, GovernorRecord>& records() const { return records_; }

  const Proposal& proposal(ProposalId id) const;
  const std::map<ProposalId, Proposal>& proposals() const { return proposals_; }

  ProposalId submit_proposal(NodeId proposer, ProposalType type, SimTime now,
                             std::optional<NodeId> nominated_by = std::nullopt);
  /// New pool round for an expired, declined or vetoed decision.
  ProposalId resubmit(ProposalId previous, SimTime now);

  const Proposal& pool_vote(NodeId governor, ProposalId id, bool upvote, SimTime now);
  void cast_vote(NodeId governor, ProposalId id, bool yes, SimTime now);
  TallyResult tally(ProposalId id, SimTime now);

  /// Expires stale pool entries and tallies every vote whose week is over.
  std::vector<TallyResult> advance(SimTime now);

  std::int64_t voting_power(NodeId id) const;
  std::int64_t governor_count() const;
  std::int64_t eligible_weight() const;

  void delegate(NodeId delegator, NodeId delegatee, SimTime now);
  void revoke_delegation(NodeId delegator);

  VetoResult veto(ProposalId id, std::int64_t consul_yes, std::int64_t consul_total);

  /// Demotes every Governor with no activity since the last sweep and
  /// clears activity flags. Returns the demoted ids.
  std::vector<NodeId> monthly_activity_sweep();

  void refresh_tiers(SimTime now);
  /// Severity-5 slashing: governing time and Formation credit are reset.
  void nullify_devotion(NodeId id, SimTime now);
  void demote(NodeId id);

  void fund_formation(Amount amount);
  Amount formation_vault() const { return formation_vault_; }
  FormationGrant route_to_formation(ProposalId id, std::int64_t consul_yes,
                                    std::int64_t consul_total, SimTime now, Amount requested);

  std::vector<ProposalId> board(Board board, SimTime now) const;
  std::size_t open_proposals(NodeId proposer) const;

 private:
  Proposal& mutable_proposal(ProposalId id);
  void expire_if_due(Proposal& p, SimTime now);
  void expire_stale(NodeId proposer, SimTime now);
  void release_delegators(GovernorRecord& delegatee);
  ProposalId insert(Proposal p, SimTime now);

  VortexConfig config_;
  std::map<NodeId, GovernorRecord> records_;
  std::map<ProposalId, Proposal> proposals_;
  ProposalId next_id_ = 0;
  Amount formation_vault_ = 0;
};

nlohmann::json to_json(const TallyResult& tally);
nlohmann::json to_json(const Vortex& vortex);

}  // namespace biochain::vortex
