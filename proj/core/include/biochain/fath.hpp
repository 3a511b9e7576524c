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

#include <gmpxx.h>
#include <nlohmann/json.hpp>

#include "biochain/apportion.hpp"

namespace biochain::fath {

using Rational = mpq_class;
using AccountId = std::string;

/// Integer balances; total_supply always equals the sum of balances.
class LedgerSnapshot {
 public:
  LedgerSnapshot() = default;
  explicit LedgerSnapshot(std::map<AccountId, Amount> balances);

  const std::map<AccountId, Amount>& balances() const { return balances_; }
  Amount total_supply() const { return total_supply_; }
  Amount balance(const AccountId& id) const;

  void credit(const AccountId& id, Amount amount);
  /// Throws InvalidArgument if the account would go negative.
  void debit(const AccountId& id, Amount amount);
  void transfer(const AccountId& from, const AccountId& to, Amount amount);

  bool consistent() const;

  friend bool operator==(const LedgerSnapshot&, const LedgerSnapshot&) = default;

 private:
  std::map<AccountId, Amount> balances_;
  Amount total_supply_ = 0;
};

struct PeriodStats {
  Amount fees_paid = 0;
  std::int64_t period_index = 0;
};

enum class RebalanceKind { None, InFath, OutFath };
const char* to_string(RebalanceKind kind);

struct RebalanceOutcome {
  RebalanceKind kind = RebalanceKind::None;
  Rational ratio = 0;
  Amount old_supply = 0;
  Amount new_supply = 0;
  std::map<AccountId, Amount> deltas;
};

/// (curr - prev) / prev. Throws UndefinedBaseline when prev has no fees.
Rational compute_ratio(const PeriodStats& prev, const PeriodStats& curr);

/// Scales every balance by (1 + ratio). The new supply is
/// round(old_supply * (1 + ratio)) (halves round up); each account gets
/// floor(balance * (1 + ratio)) plus at most one unit from the
/// largest-remainder pass, so supply is conserved exactly.
std::pair<LedgerSnapshot, RebalanceOutcome> rebalance(const LedgerSnapshot& ledger,
                                                      const Rational& ratio);

/// compute_ratio followed by rebalance. A zero-fee baseline yields kind
/// None and an unchanged ledger.
std::pair<LedgerSnapshot, RebalanceOutcome> run_period(const LedgerSnapshot& ledger,
                                                       const PeriodStats& prev,
                                                       const PeriodStats& curr);

/// {"period", "kind", "ratio_num", "ratio_den", "new_supply"}.
nlohmann::json to_json(const RebalanceOutcome& outcome, std::int64_t period);

}  // namespace biochain::fath
