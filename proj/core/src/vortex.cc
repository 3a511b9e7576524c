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

#include "biochain/vortex.hpp"

#include <algorithm>

#include "biochain/hash.hpp"

namespace biochain::vortex {

const char* to_string(Role role) {
  switch (role) {
    case Role::HumanNode: return "HumanNode";
    case Role::Governor: return "Governor";
    case Role::Delegator: return "Delegator";
  }
  return "?";
}

const char* to_string(Tier tier) {
  switch (tier) {
    case Tier::Citizen: return "Citizen";
    case Tier::Senator: return "Senator";
    case Tier::Legate: return "Legate";
    case Tier::Consul: return "Consul";
  }
  return "?";
}

const char* to_string(ProposalType type) {
  switch (type) {
    case ProposalType::Product: return "Product";
    case ProposalType::FeeDistribution: return "FeeDistribution";
    case ProposalType::Monetary: return "Monetary";
    case ProposalType::Protocol: return "Protocol";
    case ProposalType::Administrative: return "Administrative";
    case ProposalType::VortexCore: return "VortexCore";
  }
  return "?";
}

const char* to_string(ProposalState state) {
  switch (state) {
    case ProposalState::InPool: return "InPool";
    case ProposalState::InVote: return "InVote";
    case ProposalState::Approved: return "Approved";
    case ProposalState::Declined: return "Declined";
    case ProposalState::Expired: return "Expired";
  }
  return "?";
}

ProposalType proposal_type_from_string(const std::string& name) {
  for (auto t : {ProposalType::Product, ProposalType::FeeDistribution, ProposalType::Monetary,
                 ProposalType::Protocol, ProposalType::Administrative, ProposalType::VortexCore}) {
    if (name == to_string(t)) return t;
  }
  raise(Errc::InvalidArgument, "unknown proposal type '" + name + "'");
}

Tier tier_from_string(const std::string& name) {
  for (auto t : {Tier::Citizen, Tier::Senator, Tier::Legate, Tier::Consul}) {
    if (name == to_string(t)) return t;
  }
  raise(Errc::InvalidArgument, "unknown tier '" + name + "'");
}

std::int64_t ceil_percent(std::int64_t n, std::int64_t percent) {
  return (percent * n + 99) / 100;
}

bool quorum_reached(std::int64_t cast, std::int64_t eligible) {
  return eligible > 0 && cast >= ceil_percent(eligible, kQuorumPercent);
}

bool approval_reached(std::int64_t yes, std::int64_t cast) {
  return cast > 0 && yes >= ceil_percent(cast, kApprovalPercent);
}

bool tier_allows(Tier tier, ProposalType type) {
  switch (type) {
    case ProposalType::Product: return true;
    case ProposalType::FeeDistribution: return tier >= Tier::Senator;
    case ProposalType::Monetary:
    case ProposalType::Protocol:
    case ProposalType::Administrative: return tier >= Tier::Legate;
    case ProposalType::VortexCore: return tier >= Tier::Consul;
  }
  return false;
}

SimTime max_pool_time(ProposalType type) {
  using namespace timeunits;
  switch (type) {
    case ProposalType::Product: return 2 * kWeek;
    case ProposalType::FeeDistribution:
    case ProposalType::Monetary: return kMonth;
    case ProposalType::Protocol: return 2 * kMonth;
    case ProposalType::Administrative: return 3 * kMonth;
    case ProposalType::VortexCore: return 6 * kMonth;
  }
  return 0;
}

Tier tier_promotion(const GovernorRecord& record, SimTime now) {
  if (!record.has_approved_proposal || !record.runs_node) return Tier::Citizen;
  const SimTime governed = now - record.governing_since;
  using timeunits::kYear;
  if (record.formation_participant && governed >= 4 * kYear) return Tier::Consul;
  if (record.formation_participant && governed >= 2 * kYear) return Tier::Legate;
  if (governed >= kYear) return Tier::Senator;
  return Tier::Citizen;
}

Vortex::Vortex(VortexConfig config) : config_(config) {}

GovernorRecord& Vortex::add_node(NodeId id, Role role, SimTime governing_since, bool human) {
  if (role == Role::Delegator) {
    raise(Errc::InvalidArgument, "register as Governor, then delegate");
  }
  GovernorRecord rec;
  rec.id = id;
  rec.role = human ? role : Role::HumanNode;
  rec.human = human;
  rec.governing_since = governing_since;
  auto [it, inserted] = records_.insert_or_assign(id, std::move(rec));
  return it->second;
}

const GovernorRecord& Vortex::record(NodeId id) const {
  auto it = records_.find(id);
  if (it == records_.end()) raise(Errc::UnknownNode, std::to_string(id));
  return it->second;
}

GovernorRecord& Vortex::record(NodeId id) {
  auto it = records_.find(id);
  if (it == records_.end()) raise(Errc::UnknownNode, std::to_string(id));
  return it->second;
}

const Proposal& Vortex::proposal(ProposalId id) const {
  auto it = proposals_.find(id);
  if (it == proposals_.end()) raise(Errc::UnknownProposal, std::to_string(id));
  return it->second;
}

Proposal& Vortex::mutable_proposal(ProposalId id) {
  auto it = proposals_.find(id);
  if (it == proposals_.end()) raise(Errc::UnknownProposal, std::to_string(id));
  return it->second;
}

std::size_t Vortex::open_proposals(NodeId proposer) const {
  return static_cast<std::size_t>(std::count_if(
      proposals_.begin(), proposals_.end(),
      [&](const auto& kv) { return kv.second.proposer == proposer && kv.second.open(); }));
}

ProposalId Vortex::insert(Proposal p, SimTime now) {
  p.id = next_id_++;
  p.state = ProposalState::InPool;
  p.submitted_at = now;
  p.pool_deadline = now + max_pool_time(p.type);
  const std::string tag = "proposal:" + std::to_string(p.id) + ":" + std::to_string(p.proposer) +
                          ":" + std::to_string(config_.pseudonym_salt);
  const Digest digest = sha256(tag);
  p.pseudonym = to_hex(std::span<const std::uint8_t>(digest.data(), 6));
  const ProposalId id = p.id;
  proposals_.emplace(id, std::move(p));
  return id;
}

ProposalId Vortex::submit_proposal(NodeId proposer, ProposalType type, SimTime now,
                                   std::optional<NodeId> nominated_by) {
  GovernorRecord& rec = record(proposer);
  if (!rec.human) {
    if (!nominated_by || !record(*nominated_by).governing()) raise(Errc::NotNominated);
  }
  // Non-human proposals are judged by the nominating Governor's rights.
  const Tier tier = rec.human ? rec.tier : record(*nominated_by).tier;
  if (!tier_allows(tier, type)) {
    raise(Errc::TierInsufficient,
          std::string(to_string(tier)) + " may not propose " + to_string(type));
  }
  expire_stale(proposer, now);
  if (open_proposals(proposer) >= kMaxOpenProposals) raise(Errc::TooManyOpenProposals);

  Proposal p;
  p.proposer = proposer;
  p.nominated_by = nominated_by;
  p.type = type;
  rec.active_this_month = true;
  return insert(std::move(p), now);
}

ProposalId Vortex::resubmit(ProposalId previous, SimTime now) {
  Proposal& old = mutable_proposal(previous);
  expire_if_due(old, now);
  if (old.open() || old.state == ProposalState::Approved) {
    raise(Errc::InvalidArgument, "only expired, declined or vetoed proposals can be resubmitted");
  }
  if (now < old.resubmit_eligible_at) raise(Errc::ResubmitCooldown);
  expire_stale(old.proposer, now);
  if (open_proposals(old.proposer) >= kMaxOpenProposals) raise(Errc::TooManyOpenProposals);
  const GovernorRecord& rec = record(old.proposer);
  const Tier tier = rec.human ? rec.tier : record(*old.nominated_by).tier;
  if (!tier_allows(tier, old.type)) raise(Errc::TierInsufficient);

  Proposal p;
  p.proposer = old.proposer;
  p.nominated_by = old.nominated_by;
  p.type = old.type;
  p.previous = previous;
  p.approval_count = old.approval_count;
  record(old.proposer).active_this_month = true;
  return insert(std::move(p), now);
}

void Vortex::expire_if_due(Proposal& p, SimTime now) {
  if (p.state == ProposalState::InPool && now >= p.pool_deadline) {
    p.state = ProposalState::Expired;
    p.resubmit_eligible_at = p.pool_deadline + config_.resubmit_cooldown;
  }
}

void Vortex::expire_stale(NodeId proposer, SimTime now) {
  for (auto& [id, p] : proposals_) {
    if (p.proposer == proposer) expire_if_due(p, now);
  }
}

std::int64_t Vortex::governor_count() const {
  return std::count_if(records_.begin(), records_.end(),
                       [](const auto& kv) { return kv.second.governing(); });
}

std::int64_t Vortex::voting_power(NodeId id) const {
  const GovernorRecord& rec = record(id);
  if (rec.role != Role::Governor) return 0;
  return 1 + static_cast<std::int64_t>(rec.delegations_received.size());
}

std::int64_t Vortex::eligible_weight() const {
  std::int64_t total = 0;
  for (const auto& [id, rec] : records_) {
    if (rec.role != Role::Governor) continue;
    total += config_.quorum_basis == QuorumBasis::Heads ? 1 : voting_power(id);
  }
  return total;
}

const Proposal& Vortex::pool_vote(NodeId governor, ProposalId id, bool upvote, SimTime now) {
  Proposal& p = mutable_proposal(id);
  GovernorRecord& rec = record(governor);
  if (!rec.governing()) raise(Errc::NotGovernor);
  expire_if_due(p, now);
  if (p.state != ProposalState::InPool) raise(Errc::NotInPool);
  if (p.pool_upvotes.contains(governor) || p.pool_downvotes.contains(governor)) {
    raise(Errc::DuplicatePoolVote);
  }
  (upvote ? p.pool_upvotes : p.pool_downvotes).emplace(governor, now);
  rec.active_this_month = true;
  const auto needed = ceil_percent(governor_count(), kPoolPercent);
  if (static_cast<std::int64_t>(p.pool_votes()) >= needed) {
    p.state = ProposalState::InVote;
    p.vote_deadline = now + config_.vote_period;
  }
  return p;
}

void Vortex::cast_vote(NodeId governor, ProposalId id, bool yes, SimTime now) {
  Proposal& p = mutable_proposal(id);
  GovernorRecord& rec = record(governor);
  if (rec.role != Role::Governor) raise(Errc::NotGovernor);
  if (p.state != ProposalState::InVote) raise(Errc::NotInVote);
  if (now >= p.vote_deadline) raise(Errc::VotingClosed);
  if (p.vote_yes.contains(governor) || p.vote_no.contains(governor)) raise(Errc::DuplicateVote);
  (yes ? p.vote_yes : p.vote_no).insert(governor);
  rec.active_this_month = true;
}

TallyResult Vortex::tally(ProposalId id, SimTime now) {
  Proposal& p = mutable_proposal(id);
  if (p.state != ProposalState::InVote) raise(Errc::NotInVote);
  if (now < p.vote_deadline) raise(Errc::VotingStillOpen);

  const bool heads = config_.quorum_basis == QuorumBasis::Heads;
  auto weight = [&](NodeId voter) -> std::int64_t {
    const GovernorRecord& r = record(voter);
    if (r.role != Role::Governor) return 0;  // demoted after voting
    return heads ? 1 : voting_power(voter);
  };

  TallyResult out;
  out.proposal = id;
  out.eligible_governors = eligible_weight();
  for (NodeId v : p.vote_yes) out.yes += weight(v);
  out.votes_cast = out.yes;
  for (NodeId v : p.vote_no) out.votes_cast += weight(v);
  out.quorum_met = quorum_reached(out.votes_cast, out.eligible_governors);
  out.approved = out.quorum_met && approval_reached(out.yes, out.votes_cast);

  if (out.approved) {
    p.state = ProposalState::Approved;
    ++p.approval_count;
    GovernorRecord& proposer = record(p.proposer);
    proposer.has_approved_proposal = true;
    if (proposer.human && proposer.role == Role::HumanNode) {
      proposer.role = Role::Governor;
      proposer.governing_since = now;
      proposer.active_this_month = true;
    }
  } else {
    p.state = ProposalState::Declined;
    p.resubmit_eligible_at = now + config_.resubmit_cooldown;
  }
  return out;
}

std::vector<TallyResult> Vortex::advance(SimTime now) {
  std::vector<TallyResult> out;
  for (auto& [id, p] : proposals_) {
    expire_if_due(p, now);
    if (p.state == ProposalState::InVote && now >= p.vote_deadline) out.push_back(tally(id, now));
  }
  return out;
}

void Vortex::delegate(NodeId delegator, NodeId delegatee, SimTime /*now*/) {
  if (delegator == delegatee) raise(Errc::DelegationDepth, "self-delegation");
  GovernorRecord& from = record(delegator);
  GovernorRecord& to = record(delegatee);
  if (!from.governing() || to.role == Role::HumanNode) raise(Errc::NotGovernor);
  if (to.role == Role::Delegator) raise(Errc::DelegationDepth, "delegatee has delegated");
  if (!from.delegations_received.empty()) {
    raise(Errc::DelegationDepth, "a node holding delegations cannot delegate");
  }
  if (from.delegated_to) record(*from.delegated_to).delegations_received.erase(delegator);
  from.delegated_to = delegatee;
  from.role = Role::Delegator;
  to.delegations_received.insert(delegator);
}

void Vortex::revoke_delegation(NodeId delegator) {
  GovernorRecord& from = record(delegator);
  if (from.role != Role::Delegator || !from.delegated_to) {
    raise(Errc::InvalidArgument, "node has not delegated");
  }
  record(*from.delegated_to).delegations_received.erase(delegator);
  from.delegated_to.reset();
  from.role = Role::Governor;
}

void Vortex::release_delegators(GovernorRecord& delegatee) {
  for (NodeId d : delegatee.delegations_received) {
    GovernorRecord& rec = record(d);
    rec.delegated_to.reset();
    rec.role = Role::Governor;
  }
  delegatee.delegations_received.clear();
}

VetoResult Vortex::veto(ProposalId id, std::int64_t consul_yes, std::int64_t consul_total) {
  Proposal& p = mutable_proposal(id);
  if (p.state != ProposalState::Approved) raise(Errc::NotApproved);
  if (p.approval_count > kVetoLimit) raise(Errc::VetoExhausted);
  if (consul_total <= 0 || consul_yes < 0 || consul_yes > consul_total) {
    raise(Errc::InvalidArgument, "consul counts out of range");
  }
  VetoResult out;
  out.required = ceil_percent(consul_total, kVetoPercent);
  out.vetoed = consul_yes >= out.required;
  if (out.vetoed) {
    p.state = ProposalState::Declined;
    p.vetoed = true;
  }
  return out;
}

std::vector<NodeId> Vortex::monthly_activity_sweep() {
  std::vector<NodeId> demoted;
  for (auto& [id, rec] : records_) {
    if (rec.role == Role::Governor && !rec.active_this_month) demoted.push_back(id);
  }
  for (NodeId id : demoted) demote(id);
  for (auto& [id, rec] : records_) rec.active_this_month = false;
  return demoted;
}

void Vortex::demote(NodeId id) {
  GovernorRecord& rec = record(id);
  if (rec.role == Role::Delegator) revoke_delegation(id);
  release_delegators(rec);
  rec.role = Role::HumanNode;
}

void Vortex::refresh_tiers(SimTime now) {
  for (auto& [id, rec] : records_) rec.tier = tier_promotion(rec, now);
}

void Vortex::nullify_devotion(NodeId id, SimTime now) {
  GovernorRecord& rec = record(id);
  rec.governing_since = now;
  rec.formation_participant = false;
  rec.tier = tier_promotion(rec, now);
}

void Vortex::fund_formation(Amount amount) {
  if (amount < 0) raise(Errc::InvalidArgument, "negative Formation funding");
  formation_vault_ += amount;
}

FormationGrant Vortex::route_to_formation(ProposalId id, std::int64_t consul_yes,
                                          std::int64_t consul_total, SimTime now,
                                          Amount requested) {
  Proposal& p = mutable_proposal(id);
  if (p.state != ProposalState::Approved) raise(Errc::NotApproved);
  if (p.granted) raise(Errc::InvalidArgument, "proposal already funded");
  if (requested < 0) raise(Errc::InvalidArgument, "negative grant");
  if (now < config_.consul_gate_until) {
    if (consul_total <= 0 || consul_yes < ceil_percent(consul_total, kFormationConsulPercent)) {
      raise(Errc::ConsulApprovalMissing);
    }
  }
  if (requested > formation_vault_) raise(Errc::InsufficientFormationFunds);
  formation_vault_ -= requested;
  p.granted = true;
  record(p.proposer).formation_participant = true;
  return FormationGrant{id, p.proposer, requested, formation_vault_};
}

std::vector<ProposalId> Vortex::board(Board board, SimTime now) const {
  std::vector<const Proposal*> pool;
  for (const auto& [id, p] : proposals_) {
    if (p.state == ProposalState::InPool && now < p.pool_deadline) pool.push_back(&p);
  }
  auto recent_up = [&](const Proposal* p) {
    return std::count_if(p->pool_upvotes.begin(), p->pool_upvotes.end(), [&](const auto& kv) {
      return kv.second + 72 * timeunits::kHour > now;
    });
  };
  std::stable_sort(pool.begin(), pool.end(), [&](const Proposal* a, const Proposal* b) {
    switch (board) {
      case Board::Fresh: return a->submitted_at > b->submitted_at;
      case Board::Trending: return recent_up(a) > recent_up(b);
      case Board::Popular: return a->pool_upvotes.size() > b->pool_upvotes.size();
    }
    return false;
  });
  std::vector<ProposalId> out;
  for (const Proposal* p : pool) out.push_back(p->id);
  return out;
}

nlohmann::json to_json(const TallyResult& tally) {
  return {{"proposal", tally.proposal},     {"eligible", tally.eligible_governors},
          {"votes_cast", tally.votes_cast}, {"yes", tally.yes},
          {"quorum_met", tally.quorum_met}, {"approved", tally.approved}};
}

nlohmann::json to_json(const Vortex& vortex) {
  nlohmann::json governors = nlohmann::json::object();
  for (const auto& [id, rec] : vortex.records()) {
    nlohmann::json r = {{"role", to_string(rec.role)},
                        {"tier", to_string(rec.tier)},
                        {"voting_power", vortex.voting_power(id)},
                        {"governing_since", rec.governing_since},
                        {"formation_participant", rec.formation_participant}};
    if (rec.delegated_to) r["delegated_to"] = *rec.delegated_to;
    governors[std::to_string(id)] = std::move(r);
  }
  nlohmann::json proposals = nlohmann::json::array();
  for (const auto& [id, p] : vortex.proposals()) {
    proposals.push_back({{"id", id},
                         {"proposer", p.pseudonym},
                         {"type", to_string(p.type)},
                         {"state", to_string(p.state)},
                         {"approval_count", p.approval_count},
                         {"vetoed", p.vetoed}});
  }
  return {{"governors", std::move(governors)},
          {"proposals", std::move(proposals)},
          {"formation_vault", vortex.formation_vault()}};
}

}  // namespace biochain::vortex
