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

#include "biochain/netsim.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "biochain/biometrics.hpp"
#include "biochain/hash.hpp"
#include "biochain/lwe_he.hpp"
#include "biochain/rng.hpp"

namespace biochain::netsim {
namespace {

using nlohmann::json;

constexpr SimTime kOfflineLimit = 48 * timeunits::kHour;
constexpr std::int64_t kUptimePercent = 91;
constexpr std::int64_t kVaultPercent = 2;

// Reads doc[key] as T, reporting the path on type errors.
template <typename T>
T field(const json& doc, const std::string& path, const char* key, T fallback) {
  if (!doc.contains(key)) return fallback;
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception& e) {
    raise(Errc::ConfigInvalid, path + "." + key + ": " + e.what());
  }
}

template <typename T>
T required(const json& doc, const std::string& path, const char* key) {
  if (!doc.contains(key)) raise(Errc::ConfigInvalid, path + "." + key + ": missing");
  return field<T>(doc, path, key, T{});
}

std::vector<SlotWindow> windows(const json& faults, const char* key) {
  std::vector<SlotWindow> out;
  if (!faults.contains(key)) return out;
  const std::string base = std::string("faults.") + key;
  if (!faults[key].is_array()) raise(Errc::ConfigInvalid, base + ": expected array");
  for (std::size_t i = 0; i < faults[key].size(); ++i) {
    const json& w = faults[key][i];
    const std::string path = base + "[" + std::to_string(i) + "]";
    out.push_back({required<NodeId>(w, path, "node"), required<std::int64_t>(w, path, "from"),
                   required<std::int64_t>(w, path, "to")});
  }
  return out;
}

bool in_any(const std::vector<SlotWindow>& ws, NodeId node, std::int64_t slot) {
  return std::any_of(ws.begin(), ws.end(),
                     [&](const SlotWindow& w) { return w.node == node && w.contains(slot); });
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return (a + b - 1) / b; }

}  // namespace

std::string node_account(NodeId node) { return "node-" + std::to_string(node); }

std::int64_t SimConfig::month_slots() const {
  return std::max<std::int64_t>(1, timeunits::kMonth / slot_seconds);
}

std::int64_t SimConfig::validity_slots() const {
  return ticket_validity_slots > 0 ? ticket_validity_slots : month_slots();
}

Amount SimConfig::fee_for_epoch(std::int64_t epoch) const {
  if (epoch_fees.empty()) return 0;
  const auto i = std::min<std::size_t>(static_cast<std::size_t>(epoch), epoch_fees.size() - 1);
  return epoch_fees[i];
}

void SimConfig::validate() const {
  auto fail = [](const std::string& what) { raise(Errc::ConfigInvalid, what); };
  if (num_nodes < 1) fail("num_nodes must be at least 1");
  if (slots_per_epoch < 1) fail("slots_per_epoch must be at least 1");
  if (epochs < 0) fail("epochs must be non-negative");
  if (slot_seconds < 1) fail("slot_seconds must be positive");
  if (ticket_validity_slots < 0) fail("ticket_validity_slots must be non-negative");
  if (fath_period_epochs < 0) fail("fath_period_epochs must be non-negative");
  for (const auto& [acct, amount] : initial_balances) {
    if (amount < 0) fail("negative initial balance for " + acct);
  }
  for (Amount f : epoch_fees) {
    if (f < 0) fail("negative epoch fee");
  }
  auto check_node = [&](NodeId n, const std::string& where) {
    if (static_cast<std::int64_t>(n) >= num_nodes) fail(where + ": unknown node " + std::to_string(n));
  };
  for (const auto* list : {&offline, &skip_renewal, &bioauth_failure}) {
    for (const auto& w : *list) {
      check_node(w.node, "fault window");
      if (w.to < w.from) fail("fault window ends before it starts");
    }
  }
  for (const auto& o : offenses) check_node(o.node, "offense");
  std::set<NodeId> govs;
  for (const auto& g : governors) {
    check_node(g.node, "governor");
    if (!govs.insert(g.node).second) fail("duplicate governor " + std::to_string(g.node));
  }
  for (const auto& a : dao_actions) {
    check_node(a.node, "dao action");
    if (a.kind == DaoActionKind::Delegate) check_node(a.target, "dao action target");
  }
  if (pipeline) {
    const auto names = lwe::profile_names();
    if (std::find(names.begin(), names.end(), pipeline->profile) == names.end()) {
      fail("unknown pipeline profile " + pipeline->profile);
    }
    if (pipeline->bits < 1) fail("pipeline bits must be positive");
  }
}

SimConfig config_from_json(const json& doc) {
  if (!doc.is_object()) raise(Errc::ConfigInvalid, "scenario must be a JSON object");
  SimConfig c;
  const std::string root = "$";
  c.name = field<std::string>(doc, root, "name", c.name);
  c.seed = field<std::uint64_t>(doc, root, "seed", c.seed);
  c.num_nodes = required<std::int64_t>(doc, root, "num_nodes");
  c.slots_per_epoch = required<std::int64_t>(doc, root, "slots_per_epoch");
  c.epochs = required<std::int64_t>(doc, root, "epochs");
  c.slot_seconds = field<SimTime>(doc, root, "slot_seconds", c.slot_seconds);
  c.ticket_validity_slots = field<std::int64_t>(doc, root, "ticket_validity_slots", 0);
  c.fath_period_epochs = field<std::int64_t>(doc, root, "fath_period_epochs", 1);
  c.initial_balances =
      field<std::map<std::string, Amount>>(doc, root, "initial_balances", c.initial_balances);
  c.epoch_fees = field<std::vector<Amount>>(doc, root, "epoch_fees", c.epoch_fees);

  if (doc.contains("faults")) {
    const json& f = doc["faults"];
    if (!f.is_object()) raise(Errc::ConfigInvalid, "faults: expected object");
    c.offline = windows(f, "offline");
    c.skip_renewal = windows(f, "skip_renewal");
    c.bioauth_failure = windows(f, "bioauth_failure");
    if (f.contains("offenses")) {
      for (std::size_t i = 0; i < f["offenses"].size(); ++i) {
        const json& o = f["offenses"][i];
        const std::string path = "faults.offenses[" + std::to_string(i) + "]";
        const auto kind_name = required<std::string>(o, path, "kind");
        auto kind = slashing::parse_kind(kind_name);
        if (!kind) raise(Errc::ConfigInvalid, path + ".kind: unknown '" + kind_name + "'");
        c.offenses.push_back({required<std::int64_t>(o, path, "slot"),
                              required<NodeId>(o, path, "node"), *kind});
      }
    }
  }

  if (doc.contains("dao")) {
    const json& d = doc["dao"];
    if (d.contains("governors")) {
      for (std::size_t i = 0; i < d["governors"].size(); ++i) {
        const json& g = d["governors"][i];
        const std::string path = "dao.governors[" + std::to_string(i) + "]";
        c.governors.push_back({required<NodeId>(g, path, "node"),
                               field<SimTime>(g, path, "governing_since", 0),
                               field<bool>(g, path, "formation_participant", false),
                               field<bool>(g, path, "has_approved_proposal", false)});
      }
    }
    if (d.contains("actions")) {
      for (std::size_t i = 0; i < d["actions"].size(); ++i) {
        const json& a = d["actions"][i];
        const std::string path = "dao.actions[" + std::to_string(i) + "]";
        DaoAction act;
        act.slot = required<std::int64_t>(a, path, "slot");
        act.node = required<NodeId>(a, path, "node");
        const auto kind = required<std::string>(a, path, "action");
        try {
          if (kind == "submit") {
            act.kind = DaoActionKind::Submit;
            act.type = vortex::proposal_type_from_string(required<std::string>(a, path, "type"));
          } else if (kind == "pool_vote" || kind == "vote") {
            act.kind = kind == "vote" ? DaoActionKind::Vote : DaoActionKind::PoolVote;
            act.proposal = required<vortex::ProposalId>(a, path, "proposal");
            act.yes = field<bool>(a, path, "yes", true);
          } else if (kind == "delegate") {
            act.kind = DaoActionKind::Delegate;
            act.target = required<NodeId>(a, path, "to");
          } else {
            raise(Errc::ConfigInvalid, path + ".action: unknown '" + kind + "'");
          }
        } catch (const Error& e) {
          if (e.code() == Errc::ConfigInvalid) throw;
          raise(Errc::ConfigInvalid, path + ": " + e.what());
        }
        c.dao_actions.push_back(act);
      }
    }
  }

  if (doc.contains("pipeline")) {
    const json& p = doc["pipeline"];
    PipelineConfig pc;
    pc.profile = field<std::string>(p, "pipeline", "profile", pc.profile);
    pc.bits = field<std::size_t>(p, "pipeline", "bits", pc.bits);
    c.pipeline = pc;
  }
  c.validate();
  return c;
}

json SimEvent::to_json() const {
  json out = payload;
  out["slot"] = slot;
  out["seq"] = seq;
  out["kind"] = kind;
  return out;
}

std::optional<NodeId> next_author(std::int64_t slot, const std::vector<NodeId>& roster) {
  if (roster.empty()) return std::nullopt;
  return roster[static_cast<std::size_t>(slot % static_cast<std::int64_t>(roster.size()))];
}

FeeSplit distribute_fees(Amount fees, const std::vector<NodeId>& roster) {
  if (fees < 0) raise(Errc::InvalidArgument, "negative fees");
  FeeSplit out;
  if (roster.empty()) {
    out.vault = fees;
    return out;
  }
  out.vault = fees * kVaultPercent / 100;
  const auto shares = split_equally(fees - out.vault, roster.size());
  for (std::size_t i = 0; i < roster.size(); ++i) out.payouts.emplace_back(roster[i], shares[i]);
  return out;
}

std::string SimReport::event_log() const {
  std::string out;
  for (const auto& e : events) {
    out += e.to_json().dump();
    out += '\n';
  }
  return out;
}

json SimReport::summary() const {
  json blocks = json::object();
  for (const auto& [node, n] : blocks_per_node) blocks[std::to_string(node)] = n;
  json slash_list = json::array();
  for (const auto& s : slashes) slash_list.push_back(slashing::to_json(s));
  const std::string log = event_log();
  return {{"slots", slots},
          {"skipped_slots", skipped_slots},
          {"blocks_per_node", std::move(blocks)},
          {"fees", {{"collected", fees_collected}, {"to_nodes", fees_to_nodes}, {"to_vault", fees_to_vault}}},
          {"vault_balance", final_ledger.balance(kVaultAccount)},
          {"rebalances", rebalances},
          {"slashes", std::move(slash_list)},
          {"initial_ledger", initial_ledger.balances()},
          {"final_ledger", final_ledger.balances()},
          {"total_supply", final_ledger.total_supply()},
          {"dao", dao},
          {"event_count", events.size()},
          {"event_log_sha256", to_hex(sha256(log))}};
}

namespace {

struct NodeState {
  std::int64_t ticket_expiry = 0;  // ticket valid while slot < expiry
  std::int64_t last_verified = 0;
  std::int64_t offline_streak = 0;
  bool streak_slashed = false;
  std::int64_t measured = 0;
  std::int64_t online = 0;
  std::vector<std::uint8_t> template_bits;
};

class Simulation {
 public:
  explicit Simulation(const SimConfig& config)
      : cfg_(config),
        rng_(mix_seed(config.seed)),
        dao_(vortex::VortexConfig{.pseudonym_salt = config.seed}) {
    std::map<std::string, Amount> balances = cfg_.initial_balances;
    balances.try_emplace(kUsersAccount, 0);
    balances.try_emplace(kVaultAccount, 0);
    for (NodeId n = 0; n < static_cast<NodeId>(cfg_.num_nodes); ++n) {
      balances.try_emplace(node_account(n), 0);
    }
    ledger_ = fath::LedgerSnapshot(std::move(balances));
    report_.initial_ledger = ledger_;
    nodes_.resize(static_cast<std::size_t>(cfg_.num_nodes));

    for (NodeId n = 0; n < static_cast<NodeId>(cfg_.num_nodes); ++n) {
      dao_.add_node(n, vortex::Role::HumanNode);
      state_.validators.insert(n);
      state_.fee_roster.insert(n);
    }
    for (const auto& g : cfg_.governors) {
      auto& rec = dao_.add_node(g.node, vortex::Role::Governor, g.governing_since);
      rec.formation_participant = g.formation_participant;
      rec.has_approved_proposal = g.has_approved_proposal;
      rec.tier = vortex::tier_promotion(rec, 0);
    }

    if (cfg_.pipeline) {
      params_ = lwe::profile(cfg_.pipeline->profile);
      Rng key_rng = rng_.fork(0x6b657973);
      keys_ = lwe::lwe_keygen(params_, key_rng);
      for (NodeId n = 0; n < static_cast<NodeId>(cfg_.num_nodes); ++n) {
        Rng r = rng_.fork(0x1000 + n);
        auto& bits = nodes_[n].template_bits;
        bits.resize(cfg_.pipeline->bits);
        for (auto& b : bits) b = r.coin() ? 1 : 0;
        bits[0] = 1;  // an all-zero template would match anything
      }
    }
  }

  SimReport run() {
    const std::int64_t total = cfg_.slots_per_epoch * cfg_.epochs;
    std::int64_t month = 0;
    for (std::int64_t slot = 0; slot < total; ++slot) {
      const std::int64_t epoch = slot / cfg_.slots_per_epoch;
      const bool epoch_start = slot % cfg_.slots_per_epoch == 0;
      const bool epoch_end = (slot + 1) % cfg_.slots_per_epoch == 0;

      apply_offenses(slot);
      process_tickets(slot, epoch_start);
      apply_dao_actions(slot);
      author(slot);
      track_uptime(slot);
      if (epoch_end) end_epoch(slot, epoch);
      const std::int64_t m = now(slot + 1) / timeunits::kMonth;
      if (m != month) {
        month = m;
        sweep(slot);
      }
    }
    report_.slots = total;
    report_.final_ledger = ledger_;
    report_.dao = vortex::to_json(dao_);
    return std::move(report_);
  }

 private:
  SimTime now(std::int64_t slot) const { return slot * cfg_.slot_seconds; }

  void emit(std::int64_t slot, const char* kind, json payload = json::object()) {
    report_.events.push_back({slot, seq_++, kind, std::move(payload)});
  }

  bool blacklisted(NodeId n, std::int64_t slot) const {
    return blacklist_.is_blacklisted(n, now(slot));
  }

  void slash(std::int64_t slot, NodeId node, slashing::Kind kind) {
    const auto& entry = blacklist_.slash(node, kind, now(slot));
    slashing::apply_effects(entry, state_, &dao_, now(slot));
    json payload = slashing::to_json(entry);
    payload["start_slot"] = slot;
    if (entry.period.forever()) {
      payload["until_slot"] = nullptr;
    } else {
      payload["until_slot"] = slot + ceil_div(entry.period.seconds(), cfg_.slot_seconds);
    }
    emit(slot, "Slashed", std::move(payload));
    report_.slashes.push_back(entry);
    nodes_[node].last_verified = slot;
  }

  void apply_offenses(std::int64_t slot) {
    for (const auto& o : cfg_.offenses) {
      if (o.slot == slot) slash(slot, o.node, o.kind);
    }
  }

  bool bioauth(NodeId n, std::int64_t slot) {
    const bool scripted_ok = !in_any(cfg_.bioauth_failure, n, slot);
    if (!cfg_.pipeline) return scripted_ok;
    const auto& tmpl = nodes_[n].template_bits;
    std::vector<std::uint8_t> probe = tmpl;
    if (!scripted_ok) {
      for (auto& b : probe) b ^= 1;
    }
    const auto threshold =
        static_cast<std::uint64_t>(std::count(tmpl.begin(), tmpl.end(), std::uint8_t{1}));
    auto r = bio::encrypted_match(params_, keys_, tmpl, probe, threshold, rng_);
    return r.result == bio::MatchResult::Match;
  }

  void process_tickets(std::int64_t slot, bool epoch_start) {
    const std::int64_t validity = cfg_.validity_slots();
    for (NodeId n = 0; n < static_cast<NodeId>(nodes_.size()); ++n) {
      NodeState& ns = nodes_[n];
      const bool expiring = slot == ns.ticket_expiry;
      const bool without_ticket = slot > ns.ticket_expiry;
      const bool banned = blacklisted(n, slot);
      // A banned node cannot verify, so its monthly clock restarts when
      // the ban ends. Its rejected attempts are logged once per epoch.
      if (banned) ns.last_verified = slot;
      if (expiring || (without_ticket && (!banned || epoch_start))) {
        std::string_view reason;
        if (banned) {
          reason = to_string(Errc::Blacklisted);
        } else if (in_any(cfg_.offline, n, slot) || in_any(cfg_.skip_renewal, n, slot)) {
          reason = "NotAttempted";
        } else if (!bioauth(n, slot)) {
          reason = to_string(Errc::BioauthFailed);
        }
        if (reason.empty()) {
          ns.ticket_expiry = slot + validity;
          ns.last_verified = slot;
          emit(slot, "TicketRenewed", {{"node", n}, {"expiry_slot", ns.ticket_expiry}});
        } else {
          if (expiring && slot > 0) emit(slot, "TicketExpired", {{"node", n}});
          if (reason != "NotAttempted") {
            emit(slot, "RenewalRejected", {{"node", n}, {"reason", std::string(reason)}});
          }
        }
      }
      if (!banned && slot - ns.last_verified >= cfg_.month_slots()) {
        slash(slot, n, slashing::Kind::MissedMonthlyVerification);
      }
    }
  }

  void apply_dao_actions(std::int64_t slot) {
    bool any = false;
    for (const auto& a : cfg_.dao_actions) {
      if (a.slot != slot) continue;
      if (!any) {
        tally_due(slot, now(slot));
        any = true;
      }
      dao_action(slot, a);
    }
  }

  void dao_action(std::int64_t slot, const DaoAction& a) {
    const SimTime t = now(slot);
    try {
      switch (a.kind) {
        case DaoActionKind::Submit: {
          const auto id = dao_.submit_proposal(a.node, a.type, t);
          emit(slot, "ProposalSubmitted",
               {{"proposal", id},
                {"type", vortex::to_string(a.type)},
                {"pseudonym", dao_.proposal(id).pseudonym}});
          break;
        }
        case DaoActionKind::PoolVote: {
          const auto& p = dao_.pool_vote(a.node, a.proposal, a.yes, t);
          if (p.state == vortex::ProposalState::InVote) {
            emit(slot, "ProposalInVote", {{"proposal", p.id}, {"vote_deadline", p.vote_deadline}});
          }
          break;
        }
        case DaoActionKind::Vote: dao_.cast_vote(a.node, a.proposal, a.yes, t); break;
        case DaoActionKind::Delegate: dao_.delegate(a.node, a.target, t); break;
      }
    } catch (const Error& e) {
      emit(slot, "ActionRejected", {{"node", a.node}, {"reason", std::string(to_string(e.code()))}});
      if (e.code() == Errc::TierInsufficient) {
        slash(slot, a.node, slashing::Kind::MismatchedProposalTypeNoRight);
      }
    }
  }

  void tally_due(std::int64_t slot, SimTime t_now) {
    for (const auto& t : dao_.advance(t_now)) {
      json payload = vortex::to_json(t);
      payload["state"] = vortex::to_string(dao_.proposal(t.proposal).state);
      emit(slot, "ProposalTallied", std::move(payload));
    }
  }

  std::vector<NodeId> roster(std::int64_t slot) const {
    std::vector<NodeId> out;
    for (NodeId n = 0; n < static_cast<NodeId>(nodes_.size()); ++n) {
      if (slot < nodes_[n].ticket_expiry && !blacklisted(n, slot)) out.push_back(n);
    }
    return out;
  }

  void author(std::int64_t slot) {
    const auto r = roster(slot);
    const auto a = next_author(slot, r);
    if (!a) {
      ++report_.skipped_slots;
      emit(slot, "SlotSkipped", {{"reason", "EmptyRoster"}});
    } else if (in_any(cfg_.offline, *a, slot)) {
      ++report_.skipped_slots;
      emit(slot, "SlotSkipped", {{"reason", "AuthorOffline"}, {"node", *a}});
    } else {
      ++report_.blocks_per_node[*a];
      emit(slot, "BlockAuthored", {{"node", *a}});
    }
  }

  void track_uptime(std::int64_t slot) {
    for (NodeId n = 0; n < static_cast<NodeId>(nodes_.size()); ++n) {
      NodeState& ns = nodes_[n];
      if (blacklisted(n, slot)) {
        ns.offline_streak = 0;
        ns.streak_slashed = false;
        continue;
      }
      ++ns.measured;
      if (!in_any(cfg_.offline, n, slot)) {
        ++ns.online;
        ns.offline_streak = 0;
        ns.streak_slashed = false;
        continue;
      }
      ++ns.offline_streak;
      if (!ns.streak_slashed && ns.offline_streak * cfg_.slot_seconds > kOfflineLimit) {
        ns.streak_slashed = true;
        slash(slot, n, slashing::Kind::Offline48h);
      }
    }
  }

  void end_epoch(std::int64_t slot, std::int64_t epoch) {
    for (NodeId n = 0; n < static_cast<NodeId>(nodes_.size()); ++n) {
      NodeState& ns = nodes_[n];
      if (ns.measured > 0 && ns.online * 100 < kUptimePercent * ns.measured) {
        slash(slot, n, slashing::Kind::UptimeBelow91);
      }
      ns.measured = 0;
      ns.online = 0;
    }

    // Fee-eligible: authorized now, so blacklisted or expired nodes get nothing.
    const std::vector<NodeId> eligible = roster(slot);
    const Amount scheduled = cfg_.fee_for_epoch(epoch);
    const Amount collected = std::min(scheduled, ledger_.balance(kUsersAccount));
    const FeeSplit split = distribute_fees(collected, eligible);
    ledger_.transfer(kUsersAccount, kVaultAccount, split.vault);
    json payouts = json::object();
    Amount paid = 0;
    for (const auto& [n, amount] : split.payouts) {
      ledger_.transfer(kUsersAccount, node_account(n), amount);
      payouts[std::to_string(n)] = amount;
      paid += amount;
    }
    report_.fees_collected += collected;
    report_.fees_to_nodes += paid;
    report_.fees_to_vault += split.vault;
    period_fees_ += collected;
    emit(slot, "FeesDistributed",
         {{"epoch", epoch}, {"scheduled", scheduled}, {"collected", collected},
          {"vault", split.vault}, {"payouts", std::move(payouts)}});

    tally_due(slot, now(slot + 1));
    dao_.refresh_tiers(now(slot + 1));

    if (cfg_.fath_period_epochs > 0 && (epoch + 1) % cfg_.fath_period_epochs == 0) {
      const std::int64_t period = (epoch + 1) / cfg_.fath_period_epochs - 1;
      fath::PeriodStats curr{period_fees_, period};
      if (prev_period_) {
        auto [next, outcome] = fath::run_period(ledger_, *prev_period_, curr);
        ledger_ = std::move(next);
        json j = fath::to_json(outcome, period);
        report_.rebalances.push_back(j);
        emit(slot, "FathRebalance", std::move(j));
      }
      prev_period_ = curr;
      period_fees_ = 0;
    }
  }

  void sweep(std::int64_t slot) {
    const auto demoted = dao_.monthly_activity_sweep();
    if (!demoted.empty()) emit(slot, "GovernorsDemoted", {{"nodes", demoted}});
  }

  const SimConfig& cfg_;
  Rng rng_;
  vortex::Vortex dao_;
  slashing::Blacklist blacklist_;
  slashing::NetworkState state_;
  fath::LedgerSnapshot ledger_;
  std::vector<NodeState> nodes_;
  SimReport report_;
  std::uint64_t seq_ = 0;
  Amount period_fees_ = 0;
  std::optional<fath::PeriodStats> prev_period_;
  lwe::LweParams params_;
  lwe::LweKeyPair keys_;
};

}  // namespace

SimReport run(const SimConfig& config) {
  config.validate();
  return Simulation(config).run();
}

std::vector<std::string> check_invariants(const std::vector<SimEvent>& events) {
  std::vector<std::string> out;
  std::map<std::uint64_t, std::int64_t> expiry;  // node -> ticket expiry slot
  struct Ban {
    std::int64_t from;
    std::optional<std::int64_t> until;
  };
  std::multimap<std::uint64_t, Ban> bans;
  auto banned = [&](std::uint64_t node, std::int64_t slot) {
    auto [lo, hi] = bans.equal_range(node);
    for (auto it = lo; it != hi; ++it) {
      if (slot >= it->second.from && (!it->second.until || slot < *it->second.until)) return true;
    }
    return false;
  };
  auto where = [](const SimEvent& e) {
    return "slot " + std::to_string(e.slot) + " seq " + std::to_string(e.seq) + " " + e.kind;
  };

  for (std::size_t i = 0; i < events.size(); ++i) {
    const SimEvent& e = events[i];
    if (i > 0) {
      const SimEvent& prev = events[i - 1];
      if (e.seq <= prev.seq) out.push_back(where(e) + ": sequence not increasing");
      if (e.slot < prev.slot) out.push_back(where(e) + ": slot goes backwards");
    }
    const json& p = e.payload;
    if (e.kind == "TicketRenewed") {
      expiry[p.at("node").get<std::uint64_t>()] = p.at("expiry_slot").get<std::int64_t>();
    } else if (e.kind == "Slashed") {
      Ban b{p.at("start_slot").get<std::int64_t>(), std::nullopt};
      if (!p.at("until_slot").is_null()) b.until = p.at("until_slot").get<std::int64_t>();
      bans.emplace(p.at("node").get<std::uint64_t>(), b);
    } else if (e.kind == "BlockAuthored") {
      const auto node = p.at("node").get<std::uint64_t>();
      auto it = expiry.find(node);
      if (it == expiry.end() || e.slot >= it->second) {
        out.push_back(where(e) + ": author " + std::to_string(node) + " has no valid ticket");
      }
      if (banned(node, e.slot)) {
        out.push_back(where(e) + ": author " + std::to_string(node) + " is blacklisted");
      }
    } else if (e.kind == "FeesDistributed") {
      Amount sum = p.at("vault").get<Amount>();
      for (const auto& [node, amount] : p.at("payouts").items()) {
        const auto id = std::stoull(node);
        sum += amount.get<Amount>();
        if (amount.get<Amount>() < 0) out.push_back(where(e) + ": negative payout");
        if (banned(id, e.slot)) out.push_back(where(e) + ": blacklisted node " + node + " paid");
        auto it = expiry.find(id);
        if (it == expiry.end() || e.slot >= it->second) {
          out.push_back(where(e) + ": node " + node + " paid without a valid ticket");
        }
      }
      if (sum != p.at("collected").get<Amount>()) {
        out.push_back(where(e) + ": fees not conserved");
      }
    }
  }
  return out;
}

}  // namespace biochain::netsim
