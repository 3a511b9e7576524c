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

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "biochain/rng.hpp"

namespace biochain::group {

using BigInt = mpz_class;

/// Order-q subgroup of Z_p^* with p = 2q + 1. Elements are residues in
/// [1, p-1]; exponents (scalars) live in Z_q.
struct GroupParams {
  BigInt p;
  BigInt q;
  BigInt g;

  /// True iff x is a residue in [1, p-1] with x^q = 1 (mod p).
  bool contains(const BigInt& x) const;

  /// Full structural check: p and q prime, q | p-1, g != 1, g^q = 1.
  bool valid() const;

  BigInt exp(const BigInt& base, const BigInt& e) const;
  BigInt mul(const BigInt& a, const BigInt& b) const;
  BigInt inv(const BigInt& a) const;
  /// g^e with e reduced mod q (negative exponents allowed).
  BigInt pow_g(const BigInt& e) const;
  /// Reduce an arbitrary integer into [0, q).
  BigInt scalar(const BigInt& e) const;

  friend bool operator==(const GroupParams&, const GroupParams&) = default;
};

/// Searches for a safe prime p of exactly `bits` bits and returns the
/// quadratic-residue subgroup with generator 4^k for the first k giving a
/// non-identity element. Deterministic in the rng state.
GroupParams generate_params(unsigned bits, Rng& rng);

/// The 1024-bit safe prime from RFC 2409 (Oakley group 2) with g = 4.
GroupParams production_params();

/// The textbook group p = 23, q = 11, g = 4 used throughout the tests.
GroupParams toy_params();

/// Uniform scalar in [lo, q-1].
BigInt random_scalar(const GroupParams& params, Rng& rng, unsigned long lo = 1);

struct KeyPair {
  BigInt sk;  // alpha in [1, q-1]
  BigInt pk;  // h = g^alpha
};

KeyPair keygen(const GroupParams& params, Rng& rng);
KeyPair keypair_from_secret(const GroupParams& params, const BigInt& sk);

struct Ciphertext {
  BigInt c;  // g^r
  BigInt d;  // pk^r * m

  friend bool operator==(const Ciphertext&, const Ciphertext&) = default;
};

Ciphertext encrypt(const GroupParams& params, const BigInt& pk, const BigInt& m, Rng& rng);
/// Encryption with caller-chosen randomness r (reduced mod q).
Ciphertext encrypt_with(const GroupParams& params, const BigInt& pk, const BigInt& m,
                        const BigInt& r);
BigInt decrypt(const GroupParams& params, const BigInt& sk, const Ciphertext& ct);

/// Component-wise product; decrypts to m1 * m2.
Ciphertext hom_mul(const GroupParams& params, const Ciphertext& a, const Ciphertext& b);
/// Component-wise power; decrypts to m^k.
Ciphertext hom_scalar(const GroupParams& params, const Ciphertext& ct, const BigInt& k);
/// Component-wise quotient; decrypts to m1 / m2.
Ciphertext hom_div(const GroupParams& params, const Ciphertext& a, const Ciphertext& b);

/// Collective public key assembled from per-participant keys.
struct CollectiveKey {
  BigInt pk_agg;
  std::size_t participant_count = 0;
};

CollectiveKey aggregate_keys(const GroupParams& params, std::span<const BigInt> partials);

/// Removes one participant's share of the mask: (c, d / c^sk_i). Applying
/// every participant's secret in any order leaves (c, m).
Ciphertext partial_decrypt(const GroupParams& params, const BigInt& sk_i, const Ciphertext& ct);

/// Exponent encoding of small integers as g^x.
BigInt encode_exponent(const GroupParams& params, const BigInt& x);

// JSON documents use decimal strings for every big integer.
nlohmann::json to_json(const GroupParams& params, const BigInt* pk = nullptr);
GroupParams params_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const Ciphertext& ct);
Ciphertext ciphertext_from_json(const nlohmann::json& doc);
BigInt bigint_from_json(const nlohmann::json& value);

}  // namespace biochain::group
