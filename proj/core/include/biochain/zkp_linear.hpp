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

#include <array>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "biochain/group_crypto.hpp"
#include "biochain/rng.hpp"

namespace biochain::zkp {

using group::BigInt;
using group::Ciphertext;
using group::GroupParams;

// ---------------------------------------------------------------------------
// Feldman commitments
// ---------------------------------------------------------------------------

/// Exponent commitments h_i = g^{a_i} to the coefficients of f(x) = sum a_i x^i.
struct VssCommitment {
  std::vector<BigInt> h;
};

struct Share {
  BigInt x;  // abscissa
  BigInt y;  // claimed f(x) mod q
};

VssCommitment vss_commit(const GroupParams& params, std::span<const BigInt> coefficients);

/// Accepts iff g^y == prod_i h_i^{x^i} (mod p).
bool vss_verify_share(const GroupParams& params, const VssCommitment& commitment,
                      const Share& share);

// ---------------------------------------------------------------------------
// Discrete-log equality (Chaum-Pedersen, Fiat-Shamir transformed)
// ---------------------------------------------------------------------------

/// Claim that log_{g1} h1 == log_{g2} h2.
struct LogEqStatement {
  BigInt g1, h1, g2, h2;
};

struct LogEqProof {
  BigInt a;  // g1^r
  BigInt b;  // g2^r
  BigInt t;  // r + w*z mod q

  friend bool operator==(const LogEqProof&, const LogEqProof&) = default;
};

/// Fiat-Shamir challenge over the full statement and the commitments.
// `context` is extra transcript data bound into the challenge; callers that
// prove a relation about a larger statement pass a digest of it here.
BigInt logeq_challenge(const GroupParams& params, const LogEqStatement& stmt, const BigInt& a,
                       const BigInt& b, std::span<const std::uint8_t> context = {});

LogEqProof logeq_prove(const GroupParams& params, const LogEqStatement& stmt, const BigInt& w,
                       Rng& rng, std::span<const std::uint8_t> context = {});
bool logeq_verify(const GroupParams& params, const LogEqStatement& stmt, const LogEqProof& proof,
                  std::span<const std::uint8_t> context = {});

// ---------------------------------------------------------------------------
// Encrypted linear computation y = sum a_i x_i
// ---------------------------------------------------------------------------

struct LinearStatement {
  std::vector<std::int64_t> coefficients;
  std::vector<Ciphertext> inputs;  // Enc(g^{x_i})
  Ciphertext output;               // Enc(g^y)
};

/// (prod c_i^{a_i}, prod d_i^{a_i}); an encryption of g^{sum a_i x_i}.
Ciphertext aggregate(const GroupParams& params, const BigInt& pk, const LinearStatement& stmt);

// Digest of coefficients, inputs and output. The LogEq proof only sees the
// quotient, so without this a zero coefficient would leave its input unbound.
std::array<std::uint8_t, 32> linear_context(const GroupParams& params, const BigInt& pk,
                                            const LinearStatement& stmt);

struct LinearProof {
  LinearStatement statement;
  LogEqProof proof;
};

/// Encrypts each x_i with the supplied randomness, encrypts y under fresh
/// randomness, and proves that the aggregate and the output encrypt the
/// same plaintext without revealing x or y.
LinearProof prove_linear(const GroupParams& params, const BigInt& pk,
                         std::span<const std::int64_t> inputs,
                         std::span<const BigInt> randomness,
                         std::span<const std::int64_t> coefficients, Rng& rng);

bool verify_linear(const GroupParams& params, const BigInt& pk, const LinearStatement& stmt,
                   const LogEqProof& proof);

/// One convolution output y_j = sum_i kernel[i] * x[start + i].
struct WindowLayout {
  std::size_t start = 0;
  std::vector<std::int64_t> coefficients;  // the kernel, applied at start
};

/// Sliding-window decomposition of a 1-D valid convolution into
/// n - m + 1 independent linear statements.
std::vector<WindowLayout> conv_as_linear(std::size_t input_len, std::span<const std::int64_t> kernel);

/// Proves every window of a convolution separately. Input ciphertexts are
/// shared between overlapping windows (same randomness per x_i).
std::vector<LinearProof> prove_convolution(const GroupParams& params, const BigInt& pk,
                                           std::span<const std::int64_t> inputs,
                                           std::span<const std::int64_t> kernel, Rng& rng);

nlohmann::json to_json(const LogEqProof& proof);
LogEqProof logeq_proof_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const LinearStatement& stmt);
LinearStatement linear_statement_from_json(const nlohmann::json& doc);

}  // namespace biochain::zkp
