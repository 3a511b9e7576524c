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

#include "biochain/lwe_he.hpp"

#include <algorithm>
#include <cmath>

#include "biochain/errors.hpp"

namespace biochain::lwe {

namespace {

__extension__ typedef unsigned __int128 u128;

// 2^60 - 2^18 + 1.
constexpr std::uint64_t kModulus60 = 1152921504606584833ULL;

void check_same_degree(const RingElement& a, const RingElement& b) {
  if (a.coeffs.size() != b.coeffs.size()) raise(Errc::ParamsMismatch, "ring degree differs");
}

void check_ciphertext(const LweParams& params, const LweCiphertext& ct) {
  if (ct.parts.size() < 2) raise(Errc::ParamsMismatch, "ciphertext needs at least two parts");
  for (const auto& part : ct.parts) {
    if (part.coeffs.size() != params.d) raise(Errc::ParamsMismatch, "ring degree differs");
    for (std::uint64_t c : part.coeffs) {
      if (c >= params.q) raise(Errc::ParamsMismatch, "coefficient not reduced mod q");
    }
  }
}

std::uint64_t lift(std::int64_t v, std::uint64_t mod) {
  const std::int64_t m = static_cast<std::int64_t>(mod);
  std::int64_t r = v % m;
  if (r < 0) r += m;
  return static_cast<std::uint64_t>(r);
}

}  // namespace

bool LweParams::valid() const {
  const bool pow2 = d >= 2 && (d & (d - 1)) == 0;
  return pow2 && q > 2 && q < (std::uint64_t{1} << 62) && t >= 2 && t < q && sigma > 0.0;
}

LweParams profile(std::string_view name) {
  if (name == "test-exhaustive") return LweParams{8, kModulus60, 17, 3.0};
  if (name == "test-small") return LweParams{16, kModulus60, 17, 3.0};
  if (name == "default") return LweParams{64, kModulus60, 257, 3.0};
  raise(Errc::InvalidArgument, "unknown LWE profile '" + std::string(name) + "'");
}

std::vector<std::string> profile_names() { return {"test-exhaustive", "test-small", "default"}; }

RingElement zero(std::size_t d) { return RingElement{std::vector<std::uint64_t>(d, 0)}; }

RingElement add(const RingElement& a, const RingElement& b, std::uint64_t mod) {
  check_same_degree(a, b);
  RingElement out = zero(a.coeffs.size());
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
    const u128 s = static_cast<u128>(a.coeffs[i]) + b.coeffs[i];
    out.coeffs[i] = static_cast<std::uint64_t>(s % mod);
  }
  return out;
}

RingElement negate(const RingElement& a, std::uint64_t mod) {
  RingElement out = zero(a.coeffs.size());
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
    const std::uint64_t c = a.coeffs[i] % mod;
    out.coeffs[i] = c == 0 ? 0 : mod - c;
  }
  return out;
}

RingElement sub(const RingElement& a, const RingElement& b, std::uint64_t mod) {
  return add(a, negate(b, mod), mod);
}

RingElement mul(const RingElement& a, const RingElement& b, std::uint64_t mod) {
  check_same_degree(a, b);
  const std::size_t d = a.coeffs.size();
  // Terms with i + j >= d wrap around with a sign flip (x^d = -1).
  std::vector<std::uint64_t> pos(d, 0);
  std::vector<std::uint64_t> neg(d, 0);
  for (std::size_t i = 0; i < d; ++i) {
    if (a.coeffs[i] == 0) continue;
    for (std::size_t j = 0; j < d; ++j) {
      const std::uint64_t prod =
          static_cast<std::uint64_t>(static_cast<u128>(a.coeffs[i]) * b.coeffs[j] % mod);
      const std::size_t k = i + j;
      if (k < d) {
        pos[k] = static_cast<std::uint64_t>((static_cast<u128>(pos[k]) + prod) % mod);
      } else {
        neg[k - d] = static_cast<std::uint64_t>((static_cast<u128>(neg[k - d]) + prod) % mod);
      }
    }
  }
  RingElement out = zero(d);
  for (std::size_t k = 0; k < d; ++k) {
    out.coeffs[k] = static_cast<std::uint64_t>((static_cast<u128>(pos[k]) + mod - neg[k]) % mod);
  }
  return out;
}

RingElement scale(const RingElement& a, std::uint64_t k, std::uint64_t mod) {
  RingElement out = zero(a.coeffs.size());
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
    out.coeffs[i] = static_cast<std::uint64_t>(static_cast<u128>(a.coeffs[i]) * (k % mod) % mod);
  }
  return out;
}

std::int64_t sample_gaussian(double sigma, Rng& rng) {
  const auto bound = static_cast<std::int64_t>(std::floor(6.0 * sigma));
  const double two_var = 2.0 * sigma * sigma;
  for (;;) {
    const std::int64_t x = rng.between(-bound, bound);
    const double accept = std::exp(-static_cast<double>(x * x) / two_var);
    if (rng.unit() < accept) return x;
  }
}

RingElement sample_chi(const LweParams& params, Rng& rng) {
  RingElement out = zero(params.d);
  for (auto& c : out.coeffs) c = lift(sample_gaussian(params.sigma, rng), params.q);
  return out;
}

RingElement sample_uniform(const LweParams& params, Rng& rng) {
  RingElement out = zero(params.d);
  for (auto& c : out.coeffs) c = rng.below(params.q);
  return out;
}

std::int64_t center(std::uint64_t x, std::uint64_t q) {
  x %= q;
  if (x > q / 2) return -static_cast<std::int64_t>(q - x);
  return static_cast<std::int64_t>(x);
}

LweKeyPair lwe_keygen(const LweParams& params, Rng& rng) {
  if (!params.valid()) raise(Errc::InvalidArgument, "invalid LWE parameters");
  LweKeyPair keys;
  keys.sk = sample_chi(params, rng);
  keys.p1 = sample_uniform(params, rng);
  const RingElement e = sample_chi(params, rng);
  const RingElement inner = add(mul(keys.p1, keys.sk, params.q), scale(e, params.t, params.q),
                                params.q);
  keys.p0 = negate(inner, params.q);
  return keys;
}

LweCiphertext lwe_encrypt(const LweParams& params, const LweKeyPair& keys, const RingElement& m,
                          Rng& rng) {
  if (m.coeffs.size() != params.d) raise(Errc::ParamsMismatch, "plaintext degree");
  for (std::uint64_t c : m.coeffs) {
    if (c >= params.t) raise(Errc::PlaintextOutOfRange);
  }
  const RingElement u = sample_chi(params, rng);
  const RingElement f = sample_chi(params, rng);
  const RingElement g = sample_chi(params, rng);
  RingElement c0 = mul(keys.p0, u, params.q);
  c0 = add(c0, scale(g, params.t, params.q), params.q);
  c0 = add(c0, m, params.q);
  RingElement c1 = add(mul(keys.p1, u, params.q), scale(f, params.t, params.q), params.q);
  return LweCiphertext{{std::move(c0), std::move(c1)}};
}

namespace {

// <c, (1, s, s^2, ...)> in R_q, by Horner's rule.
RingElement inner_with_powers(const LweParams& params, const RingElement& sk,
                              const LweCiphertext& ct) {
  RingElement acc = ct.parts.back();
  for (std::size_t i = ct.parts.size() - 1; i-- > 0;) {
    acc = add(mul(acc, sk, params.q), ct.parts[i], params.q);
  }
  return acc;
}

}  // namespace

RingElement lwe_decrypt(const LweParams& params, const RingElement& sk, const LweCiphertext& ct) {
  check_ciphertext(params, ct);
  const RingElement acc = inner_with_powers(params, sk, ct);
  RingElement out = zero(params.d);
  for (std::size_t i = 0; i < params.d; ++i) {
    out.coeffs[i] = lift(center(acc.coeffs[i], params.q), params.t);
  }
  return out;
}

LweCiphertext lwe_add(const LweParams& params, const LweCiphertext& a, const LweCiphertext& b) {
  check_ciphertext(params, a);
  check_ciphertext(params, b);
  const std::size_t n = std::max(a.parts.size(), b.parts.size());
  LweCiphertext out;
  out.parts.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const RingElement& x = i < a.parts.size() ? a.parts[i] : zero(params.d);
    const RingElement& y = i < b.parts.size() ? b.parts[i] : zero(params.d);
    out.parts.push_back(add(x, y, params.q));
  }
  return out;
}

LweCiphertext lwe_mul(const LweParams& params, const LweCiphertext& a, const LweCiphertext& b) {
  check_ciphertext(params, a);
  check_ciphertext(params, b);
  LweCiphertext out;
  out.parts.assign(a.parts.size() + b.parts.size() - 1, zero(params.d));
  for (std::size_t i = 0; i < a.parts.size(); ++i) {
    for (std::size_t j = 0; j < b.parts.size(); ++j) {
      out.parts[i + j] = add(out.parts[i + j], mul(a.parts[i], b.parts[j], params.q), params.q);
    }
  }
  return out;
}

double lwe_noise(const LweParams& params, const RingElement& sk, const LweCiphertext& ct) {
  check_ciphertext(params, ct);
  const RingElement acc = inner_with_powers(params, sk, ct);
  std::uint64_t worst = 0;
  for (std::uint64_t c : acc.coeffs) {
    const std::int64_t v = center(c, params.q);
    worst = std::max<std::uint64_t>(worst, static_cast<std::uint64_t>(v < 0 ? -v : v));
  }
  return static_cast<double>(worst) / static_cast<double>(params.t);
}

double noise_bound(const LweParams& params) {
  return static_cast<double>(params.q) / (2.0 * static_cast<double>(params.t));
}

namespace {

void check_bits(const LweParams& params, std::span<const std::uint8_t> bits) {
  if (2 * bits.size() > params.d) raise(Errc::VectorTooLong);
  for (std::uint8_t b : bits) {
    if (b > 1) raise(Errc::InvalidArgument, "bit vector entries must be 0 or 1");
  }
}

}  // namespace

RingElement encode_forward(const LweParams& params, std::span<const std::uint8_t> bits) {
  check_bits(params, bits);
  RingElement out = zero(params.d);
  for (std::size_t i = 0; i < bits.size(); ++i) out.coeffs[i] = bits[i];
  return out;
}

RingElement encode_reverse(const LweParams& params, std::span<const std::uint8_t> bits) {
  check_bits(params, bits);
  RingElement out = zero(params.d);
  const std::size_t n = bits.size();
  for (std::size_t j = 0; j < n; ++j) out.coeffs[n - j] = bits[j];
  return out;
}

std::uint64_t extract_inner_product(const LweParams& params, const RingElement& sk,
                                    const LweCiphertext& product, std::size_t n) {
  if (2 * n > params.d) raise(Errc::VectorTooLong);
  return lwe_decrypt(params, sk, product).coeffs[n];
}

nlohmann::json to_json(const LweCiphertext& ct) {
  nlohmann::json parts = nlohmann::json::array();
  for (const auto& part : ct.parts) {
    nlohmann::json coeffs = nlohmann::json::array();
    for (std::uint64_t c : part.coeffs) coeffs.push_back(std::to_string(c));
    parts.push_back(std::move(coeffs));
  }
  return parts;
}

LweCiphertext lwe_ciphertext_from_json(const nlohmann::json& doc) {
  LweCiphertext ct;
  for (const auto& part : doc) {
    RingElement r;
    for (const auto& c : part) r.coeffs.push_back(std::stoull(c.get<std::string>()));
    ct.parts.push_back(std::move(r));
  }
  return ct;
}

}  // namespace biochain::lwe
