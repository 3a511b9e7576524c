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
#include <vector>

#include <gmpxx.h>

namespace biochain {

/// Balances and fees in smallest native units.
using Amount = std::int64_t;

/// Largest-remainder apportionment: splits `total` in proportion to
/// `weights`, giving each share floor(total * w_i / W) and handing the
/// leftover units to the largest fractional remainders. Ties go to the
/// lower index. The result always sums to `total` exactly.
std::vector<Amount> apportion(Amount total, std::span<const mpz_class> weights);

/// Equal split of `total` among `count` recipients, leftover units to the
/// first recipients.
std::vector<Amount> split_equally(Amount total, std::size_t count);

}  // namespace biochain
