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

#include "biochain/fees.hpp"

#include <algorithm>
#include <cctype>

#include "biochain/errors.hpp"

namespace biochain::fees {

namespace {

mpz_class pow10(unsigned long e) {
  mpz_class out;
  mpz_ui_pow_ui(out.get_mpz_t(), 10, e);
  return out;
}

Amount ceil_to_amount(const Rational& x) {
  mpz_class out;
  mpz_cdiv_q(out.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  if (!out.fits_slong_p()) raise(Errc::InvalidArgument, "amount overflows 64 bits");
  return out.get_si();
}

void require_validators(std::int64_t validators) {
  if (validators < 1) raise(Errc::InvalidArgument, "at least one validator required");
}

}  // namespace

Rational parse_decimal(std::string_view text) {
  auto bad = [&] { raise(Errc::InvalidArgument, "not a decimal number: '" + std::string(text) + "'"); };
  if (text.empty()) bad();
  std::size_t pos = 0;
  bool negative = false;
  if (text[pos] == '+' || text[pos] == '-') negative = text[pos++] == '-';
  std::string digits;
  long scale = 0;
  bool seen_digit = false;
  bool seen_point = false;
  for (; pos < text.size(); ++pos) {
    const char c = text[pos];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      seen_digit = true;
      if (seen_point) ++scale;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!seen_digit) bad();
  long exponent = 0;
  if (pos < text.size()) {
    if (text[pos] != 'e' && text[pos] != 'E') bad();
    const std::string rest(text.substr(pos + 1));
    if (rest.empty()) bad();
    std::size_t used = 0;
    try {
      exponent = std::stol(rest, &used);
    } catch (const std::exception&) {
      bad();
    }
    if (used != rest.size()) bad();
  }
  Rational out(mpz_class(digits, 10));
  const long shift = exponent - scale;
  if (shift >= 0) {
    out *= pow10(static_cast<unsigned long>(shift));
  } else {
    out /= pow10(static_cast<unsigned long>(-shift));
  }
  out.canonicalize();
  return negative ? Rational(-out) : out;
}

Rational decimal_from_json(const nlohmann::json& value) {
  if (value.is_string()) return parse_decimal(value.get_ref<const std::string&>());
  if (value.is_number()) return parse_decimal(value.dump());
  raise(Errc::InvalidArgument, "expected a decimal value");
}

bool PriceQuote::valid() const {
  return compute_cost_per_tx_usd > 0 && storage_cost_gb_hour_usd > 0 && hmnd_per_usd > 0;
}

PriceQuote base_quote(std::span<const ProviderQuote> providers, const Rational& hmnd_per_usd,
                      std::int64_t timestamp) {
  if (providers.empty()) raise(Errc::InvalidArgument, "no provider quotes");
  PriceQuote out;
  out.compute_cost_per_tx_usd = providers.front().compute_usd;
  out.storage_cost_gb_hour_usd = providers.front().storage_gb_hour_usd;
  for (const auto& p : providers) {
    out.compute_cost_per_tx_usd = std::max(out.compute_cost_per_tx_usd, p.compute_usd);
    out.storage_cost_gb_hour_usd = std::max(out.storage_cost_gb_hour_usd, p.storage_gb_hour_usd);
  }
  out.hmnd_per_usd = hmnd_per_usd;
  out.timestamp = timestamp;
  if (!out.valid()) raise(Errc::InvalidArgument, "quote prices must be strictly positive");
  return out;
}

PriceQuote quote_from_json(const nlohmann::json& doc) {
  std::vector<ProviderQuote> providers;
  for (const auto& p : doc.at("providers")) {
    providers.push_back(ProviderQuote{p.at("name").get<std::string>(),
                                      decimal_from_json(p.at("compute_usd")),
                                      decimal_from_json(p.at("storage_gb_hour_usd"))});
  }
  return base_quote(providers, decimal_from_json(doc.at("hmnd_per_usd")),
                    doc.value("timestamp", std::int64_t{0}));
}

Amount usd_to_native_ceil(const Rational& usd, const PriceQuote& quote) {
  return ceil_to_amount(usd * quote.hmnd_per_usd * Rational(kUnitsPerToken));
}

Amount computational_fee(const PriceQuote& quote, std::int64_t validators) {
  require_validators(validators);
  return usd_to_native_ceil(quote.compute_cost_per_tx_usd * Rational(validators), quote);
}

Rational perpetual_storage_usd(const Rational& first_period_cost_per_gb, const Rational& size_gb,
                               const Rational& decline) {
  if (decline <= 0 || decline >= 1) raise(Errc::DeclineOutOfRange);
  if (size_gb < 0) raise(Errc::InvalidArgument, "negative data size");
  return size_gb * first_period_cost_per_gb / decline;
}

Amount perpetual_storage_price(const PriceQuote& quote, const Rational& size_gb,
                               const StorageModel& model) {
  const Rational first = quote.storage_cost_gb_hour_usd * model.hours_per_period;
  return usd_to_native_ceil(perpetual_storage_usd(first, size_gb, model.annual_decline), quote);
}

FeeBreakdown quote_transaction(const PriceQuote& quote, const Rational& size_gb,
                               std::int64_t validators, const StorageModel& model) {
  require_validators(validators);
  if (!quote.valid()) raise(Errc::InvalidArgument, "quote prices must be strictly positive");
  const Rational first = quote.storage_cost_gb_hour_usd * model.hours_per_period;
  const Rational storage_usd =
      perpetual_storage_usd(first, size_gb, model.annual_decline) * Rational(validators);

  FeeBreakdown out;
  out.validators = validators;
  out.data_size_gb = size_gb;
  out.computational = computational_fee(quote, validators);
  out.storage_perpetual = usd_to_native_ceil(storage_usd, quote);
  out.total = out.computational + out.storage_perpetual;
  return out;
}

std::string format_native(Amount units) {
  const bool negative = units < 0;
  const std::uint64_t u = negative ? static_cast<std::uint64_t>(-(units + 1)) + 1
                                   : static_cast<std::uint64_t>(units);
  std::string frac = std::to_string(u % kUnitsPerToken);
  frac.insert(0, kNativeDecimals - frac.size(), '0');
  return (negative ? "-" : "") + std::to_string(u / kUnitsPerToken) + "." + frac;
}

nlohmann::json to_json(const FeeBreakdown& fee) {
  return {{"computational", fee.computational},
          {"storage_perpetual", fee.storage_perpetual},
          {"total", fee.total},
          {"validators", fee.validators},
          {"data_size_gb", fee.data_size_gb.get_str()},
          {"total_hmnd", format_native(fee.total)}};
}

}  // namespace biochain::fees
