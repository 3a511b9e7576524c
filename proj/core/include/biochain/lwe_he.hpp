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

#include <nlohmann/json.hpp>

#include "biochain/rng.hpp"

namespace biochain::lwe {

/// Ring-LWE parameters over R = Z[x]/(x^d + 1).
struct LweParams {
  std::size_t d = 64;            // ring degree, power of two
  std::uint64_t q = 0;           // ciphertext modulus, prime, < 2^62
  std::uint64_t t = 257;         // plaintext modulus, t < q
  double sigma = 3.0;            // discrete Gaussian width for chi

  bool valid() const;
};

/// Named parameter sets: "test-exhaustive" (d=8, t=17), "test-small"
/// (d=16, t=17) and "default" (d=64, t=257). All share a 60-bit prime
/// q = 1 (mod 2^18).
LweParams profile(std::string_view name);
std::vector<std::string> profile_names();

/// Polynomial with exactly d coefficients, canonical residues of its modulus.
struct RingElement {
  std::vector<std::uint64_t> coeffs;

  friend bool operator==(const RingElement&, const RingElement&) = default;
};

RingElement zero(std::size_t d);

// Arithmetic in R_mod. All operands must have the same degree.
RingElement add(const RingElement& a, const RingElement& b, std::uint64_t mod);
RingElement sub(const RingElement& a, const RingElement& b, std::uint64_t mod);
RingElement negate(const RingElement& a, std::uint64_t mod);
/// Negacyclic schoolbook product.
RingElement mul(const RingElement& a, const RingElement& b, std::uint64_t mod);
RingElement scale(const RingElement& a, std::uint64_t k, std::uint64_t mod);

/// Discrete Gaussian over Z truncated to [-6 sigma, 6 sigma], by rejection.
std::int64_t sample_gaussian(double sigma, Rng& rng);
/// Element of R_q with chi-distributed coefficients.
RingElement sample_chi(const LweParams& params, Rng& rng);
RingElement sample_uniform(const LweParams& params, Rng& rng);

/// Maps a residue mod q to the centered representative in (-q/2, q/2].
std::int64_t center(std::uint64_t x, std::uint64_t q);

struct LweKeyPair {
  RingElement sk;  // s
  RingElement p0;  // -(p1 s + t e)
  RingElement p1;  // uniform
};

struct LweCiphertext {
  std::vector<RingElement> parts;  // (c_0, ..., c_r)

  std::size_t degree() const { return parts.empty() ? 0 : parts.size() - 1; }
};

LweKeyPair lwe_keygen(const LweParams& params, Rng& rng);
LweCiphertext lwe_encrypt(const LweParams& params, const LweKeyPair& keys, const RingElement& m,
                          Rng& rng);
RingElement lwe_decrypt(const LweParams& params, const RingElement& sk, const LweCiphertext& ct);
LweCiphertext lwe_add(const LweParams& params, const LweCiphertext& a, const LweCiphertext& b);
LweCiphertext lwe_mul(const LweParams& params, const LweCiphertext& a, const LweCiphertext& b);

/// Infinity norm of the centered decryption polynomial [<c, S>]_q divided
/// by t. Decryption is correct while this stays below noise_bound().
double lwe_noise(const LweParams& params, const RingElement& sk, const LweCiphertext& ct);
double noise_bound(const LweParams& params);

/// Bit i -> coefficient of x^i.
RingElement encode_forward(const LweParams& params, std::span<const std::uint8_t> bits);
/// Bit j -> coefficient of x^{n-j}, n = bits.size().
RingElement encode_reverse(const LweParams& params, std::span<const std::uint8_t> bits);

/// Reads the coefficient of x^n of the decrypted product
/// Enc(encode_forward(P)) * Enc(encode_reverse(Q)), which equals <P, Q>.
std::uint64_t extract_inner_product(const LweParams& params, const RingElement& sk,
                                    const LweCiphertext& product, std::size_t n);

nlohmann::json to_json(const LweCiphertext& ct);
LweCiphertext lwe_ciphertext_from_json(const nlohmann::json& doc);

}  // namespace biochain::lwe
