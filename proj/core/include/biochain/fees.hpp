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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>
#include <nlohmann/json.hpp>

#include "biochain/apportion.hpp"

namespace biochain::fees {

using Rational = mpq_class;

/// Native token precision: 1 token = 10^6 smallest units. The internal
/// USD fee unit uses the same six decimal places.
inline constexpr int kNativeDecimals = 6;
inline constexpr Amount kUnitsPerToken = 1'000'000;

/// Exact value of a decimal literal such as "0.3057", "12", "1e-3".
Rational parse_decimal(std::string_view text);
/// Accepts JSON strings or numbers; numbers go through their shortest
/// round-trip text form, so 0.001 parses as exactly 1/1000.
Rational decimal_from_json(const nlohmann::json& value);

struct ProviderQuote {
  std::string name;
  Rational compute_usd;          // per transaction, per validator
  Rational storage_gb_hour_usd;  // cost of storing 1 GB for one hour today
};

struct PriceQuote {
  Rational compute_cost_per_tx_usd;
  Rational storage_cost_gb_hour_usd;
  Rational hmnd_per_usd;
  std::int64_t timestamp = 0;

  bool valid() const;
};

/// The most expensive provider sets the base price for each resource.
PriceQuote base_quote(std::span<const ProviderQuote> providers, const Rational& hmnd_per_usd,
                      std::int64_t timestamp = 0);

/// {"providers":[{"name","compute_usd","storage_gb_hour_usd"}], "hmnd_per_usd", "timestamp"?}
PriceQuote quote_from_json(const nlohmann::json& doc);

struct StorageModel {
  /// Fractional cost decline applied once per decline period.
  Rational annual_decline = Rational(3057, 10000);
  /// Hours in one decline period (mean Gregorian year).
  Rational hours_per_period = 8766;
};

/// Ceiling conversion of a USD amount into smallest native units.
Amount usd_to_native_ceil(const Rational& usd, const PriceQuote& quote);

/// compute cost x validators, in native units rounded up.
Amount computational_fee(const PriceQuote& quote, std::int64_t validators);

/// Closed form of sum_i size * C0 * (1 - d)^i = size * C0 / d, where C0 is
/// the first period's cost of one GB. Throws DeclineOutOfRange unless 0 < d < 1.
Rational perpetual_storage_usd(const Rational& first_period_cost_per_gb, const Rational& size_gb,
                               const Rational& decline);

/// Perpetual storage for one copy of the data, in native units rounded up.
Amount perpetual_storage_price(const PriceQuote& quote, const Rational& size_gb,
                               const StorageModel& model = {});

struct FeeBreakdown {
  Amount computational = 0;
  Amount storage_perpetual = 0;
  Amount total = 0;
  std::int64_t validators = 1;
  Rational data_size_gb = 0;
};

/// Computational fee plus perpetual storage for every storing validator.
FeeBreakdown quote_transaction(const PriceQuote& quote, const Rational& size_gb,
                               std::int64_t validators, const StorageModel& model = {});

nlohmann::json to_json(const FeeBreakdown& fee);

/// Decimal rendering of an amount of smallest units, e.g. 1234567 -> "1.234567".
std::string format_native(Amount units);

}  // namespace biochain::fees
