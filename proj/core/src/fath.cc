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

#include "biochain/fath.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

#include "biochain/errors.hpp"

namespace biochain::fath {

LedgerSnapshot::LedgerSnapshot(std::map<AccountId, Amount> balances)
    : balances_(std::move(balances)) {
  for (const auto& [id, amount] : balances_) {
    if (amount < 0) raise(Errc::InvalidArgument, "negative balance for " + id);
    total_supply_ += amount;
  }
}

Amount LedgerSnapshot::balance(const AccountId& id) const {
  auto it = balances_.find(id);
  return it == balances_.end() ? 0 : it->second;
}

void LedgerSnapshot::credit(const AccountId& id, Amount amount) {
  if (amount < 0) raise(Errc::InvalidArgument, "negative credit");
  balances_[id] += amount;
  total_supply_ += amount;
}

void LedgerSnapshot::debit(const AccountId& id, Amount amount) {
  if (amount < 0) raise(Errc::InvalidArgument, "negative debit");
  auto it = balances_.find(id);
  if (it == balances_.end() || it->second < amount) {
    raise(Errc::InvalidArgument, "insufficient balance in " + id);
  }
  it->second -= amount;
  total_supply_ -= amount;
}

void LedgerSnapshot::transfer(const AccountId& from, const AccountId& to, Amount amount) {
  debit(from, amount);
  credit(to, amount);
}

bool LedgerSnapshot::consistent() const {
  Amount sum = 0;
  for (const auto& [id, amount] : balances_) {
    if (amount < 0) return false;
    sum += amount;
  }
  return sum == total_supply_;
}

const char* to_string(RebalanceKind kind) {
  switch (kind) {
    case RebalanceKind::None: return "none";
    case RebalanceKind::InFath: return "inFath";
    case RebalanceKind::OutFath: return "outFath";
  }
  return "none";
}

Rational compute_ratio(const PeriodStats& prev, const PeriodStats& curr) {
  if (prev.fees_paid < 0 || curr.fees_paid < 0) raise(Errc::InvalidArgument, "negative fees");
  if (prev.fees_paid == 0) raise(Errc::UndefinedBaseline);
  Rational r(mpz_class(static_cast<long>(curr.fees_paid - prev.fees_paid)),
             mpz_class(static_cast<long>(prev.fees_paid)));
  r.canonicalize();
  return r;
}

namespace {

// floor and remainder of (amount * num / den) for den > 0.
std::pair<mpz_class, mpz_class> scaled(Amount amount, const Rational& factor) {
  mpz_class q, r;
  const mpz_class n = mpz_class(static_cast<long>(amount)) * factor.get_num();
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t(), factor.get_den_mpz_t());
  return {q, r};
}

}  // namespace

std::pair<LedgerSnapshot, RebalanceOutcome> rebalance(const LedgerSnapshot& ledger,
                                                      const Rational& ratio) {
  if (ratio <= -1) raise(Errc::RatioBelowNegativeOne);
  const Rational factor = ratio + 1;

  RebalanceOutcome outcome;
  outcome.ratio = ratio;
  outcome.kind = ratio > 0 ? RebalanceKind::InFath
               : ratio < 0 ? RebalanceKind::OutFath
                           : RebalanceKind::None;
  outcome.old_supply = ledger.total_supply();

  // round half up: floor(S * factor + 1/2)
  const Rational exact_supply = Rational(static_cast<long>(ledger.total_supply())) * factor;
  mpz_class new_supply;
  const Rational shifted = exact_supply + Rational(1, 2);
  mpz_fdiv_q(new_supply.get_mpz_t(), shifted.get_num_mpz_t(), shifted.get_den_mpz_t());
  outcome.new_supply = new_supply.get_si();

  const auto& balances = ledger.balances();
  std::vector<AccountId> ids;
  std::vector<Amount> next;
  std::vector<mpz_class> remainders;
  Amount assigned = 0;
  for (const auto& [id, amount] : balances) {
    auto [q, r] = scaled(amount, factor);
    ids.push_back(id);
    next.push_back(q.get_si());
    remainders.push_back(r);
    assigned += next.back();
  }
  std::vector<std::size_t> order(ids.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return remainders[a] > remainders[b]; });
  Amount leftover = outcome.new_supply - assigned;
  for (std::size_t k = 0; leftover > 0 && k < order.size(); ++k, --leftover) {
    ++next[order[k]];
  }

  std::map<AccountId, Amount> updated;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    updated.emplace(ids[i], next[i]);
    outcome.deltas.emplace(ids[i], next[i] - balances.at(ids[i]));
  }
  return {LedgerSnapshot(std::move(updated)), std::move(outcome)};
}

std::pair<LedgerSnapshot, RebalanceOutcome> run_period(const LedgerSnapshot& ledger,
                                                       const PeriodStats& prev,
                                                       const PeriodStats& curr) {
  Rational ratio;
  try {
    ratio = compute_ratio(prev, curr);
  } catch (const Error& e) {
    if (e.code() != Errc::UndefinedBaseline) throw;
    RebalanceOutcome none;
    none.old_supply = none.new_supply = ledger.total_supply();
    for (const auto& [id, amount] : ledger.balances()) none.deltas.emplace(id, 0);
    return {ledger, std::move(none)};
  }
  return rebalance(ledger, ratio);
}

nlohmann::json to_json(const RebalanceOutcome& outcome, std::int64_t period) {
  return {{"period", period},
          {"kind", to_string(outcome.kind)},
          {"ratio_num", outcome.ratio.get_num().get_si()},
          {"ratio_den", outcome.ratio.get_den().get_si()},
          {"new_supply", outcome.new_supply}};
}

}  // namespace biochain::fath
