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

#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <gtest/gtest.h>

#include "biochain/apportion.hpp"
#include "biochain/errors.hpp"
#include "biochain/fath.hpp"
#include "biochain/rng.hpp"

namespace biochain {
namespace {

using fath::LedgerSnapshot;
using fath::PeriodStats;
using fath::Rational;
using fath::RebalanceKind;

// mpq_class(num, den) skips canonicalization; arithmetic on it is unreliable.
Rational rat(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return Errc::InvalidArgument;
}

// |a - b| as an exact rational.
Rational distance(Amount a, const Rational& b) {
  Rational d = Rational(static_cast<long>(a)) - b;
  return d < 0 ? Rational(-d) : d;
}

TEST(Apportion, SmallExamples) {
  const std::vector<mpz_class> w = {1, 1, 1};
  EXPECT_EQ(apportion(10, w), (std::vector<Amount>{4, 3, 3}));
  const std::vector<mpz_class> w2 = {5, 3, 2};
  EXPECT_EQ(apportion(100, w2), (std::vector<Amount>{50, 30, 20}));
  const std::vector<mpz_class> w3 = {0, 7};
  EXPECT_EQ(apportion(9, w3), (std::vector<Amount>{0, 9}));
  EXPECT_EQ(apportion(0, w), (std::vector<Amount>{0, 0, 0}));
  EXPECT_TRUE(apportion(5, std::span<const mpz_class>{}).empty());
  const std::vector<mpz_class> zeros = {0, 0};
  EXPECT_EQ(code_of([&] { apportion(3, zeros); }), Errc::InvalidArgument);
  const std::vector<mpz_class> neg = {-1, 2};
  EXPECT_EQ(code_of([&] { apportion(3, neg); }), Errc::InvalidArgument);
}

TEST(Apportion, LargestRemainderProperties) {
  Rng rng(31);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t n = 1 + rng.below(12);
    std::vector<mpz_class> w(n);
    mpz_class sum = 0;
    for (auto& x : w) {
      x = static_cast<unsigned long>(rng.below(1000));
      sum += x;
    }
    if (sum == 0) w[0] = sum = 1;
    const Amount total = static_cast<Amount>(rng.below(1'000'000));
    const auto out = apportion(total, w);
    ASSERT_EQ(std::accumulate(out.begin(), out.end(), Amount{0}), total);
    for (std::size_t i = 0; i < n; ++i) {
      Rational exact(mpz_class(total * w[i]), sum);
      exact.canonicalize();
      ASSERT_LT(distance(out[i], exact), 1);
      // Quota rule: floor or ceiling of the exact share.
      ASSERT_GE(Rational(static_cast<long>(out[i])), exact - 1);
    }
  }
}

TEST(SplitEqually, Remainder) {
  EXPECT_EQ(split_equally(10, 3), (std::vector<Amount>{4, 3, 3}));
  EXPECT_EQ(split_equally(2, 4), (std::vector<Amount>{1, 1, 0, 0}));
  EXPECT_TRUE(split_equally(5, 0).empty());
  Rng rng(32);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + rng.below(50);
    const Amount total = static_cast<Amount>(rng.below(1'000'000'000));
    const auto out = split_equally(total, n);
    ASSERT_EQ(std::accumulate(out.begin(), out.end(), Amount{0}), total);
    const auto [lo, hi] = std::minmax_element(out.begin(), out.end());
    ASSERT_LE(*hi - *lo, 1);
  }
}

TEST(Ledger, Basics) {
  LedgerSnapshot l({{"a", 10}, {"b", 5}});
  EXPECT_EQ(l.total_supply(), 15);
  l.transfer("a", "c", 4);
  EXPECT_EQ(l.balance("a"), 6);
  EXPECT_EQ(l.balance("c"), 4);
  EXPECT_EQ(l.balance("zz"), 0);
  EXPECT_EQ(l.total_supply(), 15);
  EXPECT_TRUE(l.consistent());
  EXPECT_THROW(l.debit("b", 6), Error);
  EXPECT_THROW(LedgerSnapshot({{"x", -1}}), Error);
}

TEST(Fath, ComputeRatio) {
  EXPECT_EQ(fath::compute_ratio({1'000'000, 0}, {2'000'000, 1}), Rational(1));
  EXPECT_EQ(fath::compute_ratio({2'000'000, 1}, {1'500'000, 2}), rat(-1, 4));
  EXPECT_EQ(fath::compute_ratio({7, 1}, {7, 2}), Rational(0));
  EXPECT_EQ(code_of([] { fath::compute_ratio({0, 0}, {5, 1}); }), Errc::UndefinedBaseline);
}

TEST(Fath, WorkedExample) {
  std::map<std::string, Amount> start = {{"wallet", 1000}, {"rest", 9'999'000}};
  LedgerSnapshot year0(start);
  auto [year1, up] = fath::run_period(year0, {1'000'000, 0}, {2'000'000, 1});
  EXPECT_EQ(up.kind, RebalanceKind::InFath);
  EXPECT_EQ(year1.total_supply(), 20'000'000);
  EXPECT_EQ(year1.balance("wallet"), 2000);
  EXPECT_EQ(up.deltas.at("wallet"), 1000);
  auto [year2, down] = fath::run_period(year1, {2'000'000, 1}, {1'500'000, 2});
  EXPECT_EQ(down.kind, RebalanceKind::OutFath);
  EXPECT_EQ(year2.total_supply(), 15'000'000);
  EXPECT_EQ(year2.balance("wallet"), 1500);
  EXPECT_EQ(down.deltas.at("wallet"), -500);
  const auto doc = fath::to_json(down, 2);
  EXPECT_EQ(doc["kind"], "outFath");
  EXPECT_EQ(doc["ratio_num"], -1);
  EXPECT_EQ(doc["ratio_den"], 4);
  EXPECT_EQ(doc["new_supply"], 15'000'000);
}

TEST(Fath, DegenerateCases) {
  LedgerSnapshot l({{"a", 3}, {"b", 7}});
  auto [same, none] = fath::rebalance(l, 0);
  EXPECT_EQ(same, l);
  EXPECT_EQ(none.kind, RebalanceKind::None);
  auto [kept, undefined] = fath::run_period(l, {0, 0}, {100, 1});
  EXPECT_EQ(kept, l);
  EXPECT_EQ(undefined.kind, RebalanceKind::None);
  EXPECT_EQ(code_of([&] { fath::rebalance(l, -1); }), Errc::RatioBelowNegativeOne);
  EXPECT_EQ(code_of([&] { fath::rebalance(l, rat(-3, 2)); }), Errc::RatioBelowNegativeOne);
  LedgerSnapshot solo({{"only", 12345}});
  for (const Rational& r : {rat(1, 3), rat(-2, 7), Rational(5)}) {
    auto [next, out] = fath::rebalance(solo, r);
    EXPECT_EQ(next.balance("only"), next.total_supply());
  }
}

LedgerSnapshot random_ledger(Rng& rng, std::size_t n) {
  std::map<std::string, Amount> b;
  for (std::size_t i = 0; i < n; ++i) {
    b["acct-" + std::to_string(i)] = static_cast<Amount>(rng.below(10'000'000));
  }
  return LedgerSnapshot(std::move(b));
}

Rational random_ratio(Rng& rng) {
  // Numerator in [-999, 3000], denominator in [1, 1000]; keeps ratio > -1.
  const long den = 1 + static_cast<long>(rng.below(1000));
  const long num = rng.between(-den + 1, 3 * den);
  Rational r(num, den);
  r.canonicalize();
  return r;
}

TEST(Fath, ConservationAndProportionality) {
  Rng rng(33);
  for (int trial = 0; trial < 500; ++trial) {
    const auto ledger = random_ledger(rng, 1 + rng.below(40));
    const Rational r = random_ratio(rng);
    auto [next, out] = fath::rebalance(ledger, r);
    ASSERT_TRUE(next.consistent());
    ASSERT_EQ(next.total_supply(), out.new_supply);
    // Supply rounds half up.
    const Rational exact_supply = Rational(static_cast<long>(ledger.total_supply())) * (r + 1);
    ASSERT_LE(distance(out.new_supply, exact_supply), rat(1, 2));
    for (const auto& [id, before] : ledger.balances()) {
      const Amount after = next.balance(id);
      ASSERT_LT(distance(after, Rational(static_cast<long>(before)) * (r + 1)), 1) << id;
      const Amount delta = out.deltas.at(id);
      ASSERT_EQ(delta, after - before);
      if (out.kind == RebalanceKind::InFath) ASSERT_GE(delta, 0);
      if (out.kind == RebalanceKind::OutFath) ASSERT_LE(delta, 0);
    }
  }
}

TEST(Fath, SharePreservation) {
  Rng rng(34);
  for (int trial = 0; trial < 300; ++trial) {
    const auto ledger = random_ledger(rng, 2 + rng.below(20));
    if (ledger.total_supply() == 0) continue;
    const Rational r = random_ratio(rng);
    auto [next, out] = fath::rebalance(ledger, r);
    if (next.total_supply() == 0) continue;
    const Rational tolerance = rat(static_cast<long>(ledger.balances().size()),
                                   static_cast<long>(next.total_supply()));
    for (const auto& [id, before] : ledger.balances()) {
      const Rational share_before = rat(before, ledger.total_supply());
      const Rational share_after = rat(next.balance(id), next.total_supply());
      Rational diff = share_after - share_before;
      if (diff < 0) diff = -diff;
      ASSERT_LE(diff, tolerance) << id;
    }
  }
}

TEST(Fath, InThenOutComposition) {
  Rng rng(35);
  for (int trial = 0; trial < 300; ++trial) {
    const auto ledger = random_ledger(rng, 1 + rng.below(30));
    const long den = 1 + static_cast<long>(rng.below(100));
    const Rational r = rat(1 + static_cast<long>(rng.below(300)), den);
    auto [up, a] = fath::rebalance(ledger, r);
    const Rational back = -r / (r + 1);
    auto [down, b] = fath::rebalance(up, back);
    for (const auto& [id, before] : ledger.balances()) {
      ASSERT_LE(std::llabs(down.balance(id) - before), 1) << id;
    }
  }
}

}  // namespace
}  // namespace biochain
