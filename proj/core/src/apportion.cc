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

#include "biochain/apportion.hpp"

#include <algorithm>
#include <numeric>

#include "biochain/errors.hpp"

namespace biochain {

std::vector<Amount> apportion(Amount total, std::span<const mpz_class> weights) {
  if (total < 0) raise(Errc::InvalidArgument, "cannot apportion a negative total");
  mpz_class weight_sum = 0;
  for (const auto& w : weights) {
    if (w < 0) raise(Errc::InvalidArgument, "negative apportionment weight");
    weight_sum += w;
  }
  std::vector<Amount> out(weights.size(), 0);
  if (weights.empty() || total == 0) return out;
  if (weight_sum == 0) raise(Errc::InvalidArgument, "all apportionment weights are zero");

  std::vector<mpz_class> remainders(weights.size());
  Amount assigned = 0;
  const mpz_class t(static_cast<long>(total));
  for (std::size_t i = 0; i < weights.size(); ++i) {
    mpz_class quotient;
    mpz_fdiv_qr(quotient.get_mpz_t(), remainders[i].get_mpz_t(),
                mpz_class(t * weights[i]).get_mpz_t(), weight_sum.get_mpz_t());
    out[i] = quotient.get_si();
    assigned += out[i];
  }
  std::vector<std::size_t> order(weights.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return remainders[a] > remainders[b];
  });
  for (Amount left = total - assigned, k = 0; left > 0; --left, ++k) {
    ++out[order[static_cast<std::size_t>(k)]];
  }
  return out;
}

std::vector<Amount> split_equally(Amount total, std::size_t count) {
  if (count == 0) return {};
  if (total < 0) raise(Errc::InvalidArgument, "cannot split a negative total");
  const auto n = static_cast<Amount>(count);
  std::vector<Amount> out(count, total / n);
  for (Amount i = 0; i < total % n; ++i) ++out[static_cast<std::size_t>(i)];
  return out;
}

}  // namespace biochain
