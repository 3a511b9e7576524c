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

#include "biochain/group_crypto.hpp"

#include <array>

#include "biochain/errors.hpp"

namespace biochain::group {

namespace {

constexpr std::array<unsigned long, 24> kSmallPrimes = {
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};

bool has_small_factor(const BigInt& n) {
  for (unsigned long sp : kSmallPrimes) {
    if (n == sp) return false;
    if (mpz_fdiv_ui(n.get_mpz_t(), sp) == 0) return true;
  }
  return false;
}

bool is_probable_prime(const BigInt& n) {
  return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

// Uniform integer with exactly `bits` random bits (top bit not forced).
BigInt random_bits(Rng& rng, unsigned bits) {
  BigInt out = 0;
  unsigned remaining = bits;
  while (remaining > 0) {
    const unsigned take = remaining >= 64 ? 64 : remaining;
    std::uint64_t word = rng.next_u64();
    if (take < 64) word &= (std::uint64_t{1} << take) - 1;
    out <<= take;
    BigInt w;
    mpz_import(w.get_mpz_t(), 1, 1, sizeof(word), 0, 0, &word);
    out += w;
    remaining -= take;
  }
  return out;
}

BigInt random_below(Rng& rng, const BigInt& bound) {
  const unsigned bits = static_cast<unsigned>(mpz_sizeinbase(bound.get_mpz_t(), 2));
  for (;;) {
    BigInt x = random_bits(rng, bits);
    if (x < bound) return x;
  }
}

void require_member(const GroupParams& params, const BigInt& x, Errc code, const char* what) {
  if (!params.contains(x)) raise(code, what);
}

}  // namespace

bool GroupParams::contains(const BigInt& x) const {
  if (x < 1 || x >= p) return false;
  return exp(x, q) == 1;
}

bool GroupParams::valid() const {
  if (p < 5 || q < 2 || g <= 1 || g >= p) return false;
  if (!is_probable_prime(p) || !is_probable_prime(q)) return false;
  BigInt rem = (p - 1) % q;
  if (rem != 0) return false;
  return exp(g, q) == 1;
}

BigInt GroupParams::exp(const BigInt& base, const BigInt& e) const {
  BigInt out;
  if (e < 0) {
    BigInt inv_base = inv(base);
    BigInt pos = -e;
    mpz_powm(out.get_mpz_t(), inv_base.get_mpz_t(), pos.get_mpz_t(), p.get_mpz_t());
  } else {
    mpz_powm(out.get_mpz_t(), base.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
  }
  return out;
}

BigInt GroupParams::mul(const BigInt& a, const BigInt& b) const {
  BigInt out = a * b;
  mpz_mod(out.get_mpz_t(), out.get_mpz_t(), p.get_mpz_t());
  return out;
}

BigInt GroupParams::inv(const BigInt& a) const {
  BigInt out;
  if (mpz_invert(out.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t()) == 0) {
    raise(Errc::InvalidArgument, "element not invertible mod p");
  }
  return out;
}

BigInt GroupParams::scalar(const BigInt& e) const {
  BigInt out;
  mpz_mod(out.get_mpz_t(), e.get_mpz_t(), q.get_mpz_t());
  return out;
}

BigInt GroupParams::pow_g(const BigInt& e) const { return exp(g, scalar(e)); }

GroupParams generate_params(unsigned bits, Rng& rng) {
  if (bits < 16) raise(Errc::InvalidArgument, "group bit length must be >= 16");
  const BigInt top = BigInt(1) << (bits - 2);
  for (;;) {
    // q has bits-1 bits, so p = 2q + 1 has exactly `bits` bits.
    BigInt q = random_bits(rng, bits - 2) | top;
    q |= 1;
    // q = 1 (mod 3) would make 3 | p.
    if (mpz_fdiv_ui(q.get_mpz_t(), 3) != 2) continue;
    BigInt p = 2 * q + 1;
    if (has_small_factor(q) || has_small_factor(p)) continue;
    if (!is_probable_prime(q) || !is_probable_prime(p)) continue;
    return GroupParams{p, q, BigInt(4)};
  }
}

GroupParams production_params() {
  BigInt p(
      "FFFFFFFFFFFFFFFFC90FDAA22168C234C4C6628B80DC1CD129024E088A67CC74020BBEA63B139B22514A0879"
      "8E3404DDEF9519B3CD3A431B302B0A6DF25F14374FE1356D6D51C245E485B576625E7EC6F44C42E9A637ED6B"
      "0BFF5CB6F406B7EDEE386BFB5A899FA5AE9F24117C4B1FE649286651ECE65381FFFFFFFFFFFFFFFF",
      16);
  BigInt q = (p - 1) / 2;
  return GroupParams{p, q, BigInt(4)};
}

GroupParams toy_params() { return GroupParams{BigInt(23), BigInt(11), BigInt(4)}; }

BigInt random_scalar(const GroupParams& params, Rng& rng, unsigned long lo) {
  const BigInt span = params.q - lo;
  return random_below(rng, span) + lo;
}

KeyPair keygen(const GroupParams& params, Rng& rng) {
  return keypair_from_secret(params, random_scalar(params, rng));
}

KeyPair keypair_from_secret(const GroupParams& params, const BigInt& sk) {
  if (sk < 1 || sk >= params.q) raise(Errc::InvalidArgument, "secret key outside [1, q-1]");
  return KeyPair{sk, params.exp(params.g, sk)};
}

Ciphertext encrypt(const GroupParams& params, const BigInt& pk, const BigInt& m, Rng& rng) {
  return encrypt_with(params, pk, m, random_scalar(params, rng));
}

Ciphertext encrypt_with(const GroupParams& params, const BigInt& pk, const BigInt& m,
                        const BigInt& r) {
  require_member(params, m, Errc::MessageNotInSubgroup, "plaintext");
  require_member(params, pk, Errc::ParamsMismatch, "public key");
  const BigInt rr = params.scalar(r);
  return Ciphertext{params.exp(params.g, rr), params.mul(params.exp(pk, rr), m)};
}

BigInt decrypt(const GroupParams& params, const BigInt& sk, const Ciphertext& ct) {
  require_member(params, ct.c, Errc::InvalidCiphertext, "component c");
  require_member(params, ct.d, Errc::InvalidCiphertext, "component d");
  const BigInt mask = params.exp(ct.c, params.scalar(sk));
  return params.mul(ct.d, params.inv(mask));
}

Ciphertext hom_mul(const GroupParams& params, const Ciphertext& a, const Ciphertext& b) {
  for (const BigInt* x : {&a.c, &a.d, &b.c, &b.d}) {
    require_member(params, *x, Errc::ParamsMismatch, "ciphertext component");
  }
  return Ciphertext{params.mul(a.c, b.c), params.mul(a.d, b.d)};
}

Ciphertext hom_scalar(const GroupParams& params, const Ciphertext& ct, const BigInt& k) {
  require_member(params, ct.c, Errc::ParamsMismatch, "ciphertext component");
  require_member(params, ct.d, Errc::ParamsMismatch, "ciphertext component");
  const BigInt kk = params.scalar(k);
  return Ciphertext{params.exp(ct.c, kk), params.exp(ct.d, kk)};
}

Ciphertext hom_div(const GroupParams& params, const Ciphertext& a, const Ciphertext& b) {
  for (const BigInt* x : {&a.c, &a.d, &b.c, &b.d}) {
    require_member(params, *x, Errc::ParamsMismatch, "ciphertext component");
  }
  return Ciphertext{params.mul(a.c, params.inv(b.c)), params.mul(a.d, params.inv(b.d))};
}

CollectiveKey aggregate_keys(const GroupParams& params, std::span<const BigInt> partials) {
  if (partials.empty()) raise(Errc::EmptyParticipantSet);
  BigInt acc = 1;
  for (const BigInt& pk : partials) {
    require_member(params, pk, Errc::ParamsMismatch, "partial public key");
    acc = params.mul(acc, pk);
  }
  return CollectiveKey{acc, partials.size()};
}

Ciphertext partial_decrypt(const GroupParams& params, const BigInt& sk_i, const Ciphertext& ct) {
  require_member(params, ct.c, Errc::InvalidCiphertext, "component c");
  require_member(params, ct.d, Errc::InvalidCiphertext, "component d");
  const BigInt mask = params.exp(ct.c, params.scalar(sk_i));
  return Ciphertext{ct.c, params.mul(ct.d, params.inv(mask))};
}

BigInt encode_exponent(const GroupParams& params, const BigInt& x) { return params.pow_g(x); }

nlohmann::json to_json(const GroupParams& params, const BigInt* pk) {
  nlohmann::json doc = {
      {"p", params.p.get_str()}, {"q", params.q.get_str()}, {"g", params.g.get_str()}};
  if (pk != nullptr) doc["pk"] = pk->get_str();
  return doc;
}

BigInt bigint_from_json(const nlohmann::json& value) {
  if (value.is_string()) {
    const auto& s = value.get_ref<const std::string&>();
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
      raise(Errc::InvalidArgument, "expected a decimal integer string, got '" + s + "'");
    }
    return BigInt(s, 10);
  }
  if (value.is_number_unsigned()) return BigInt(value.get<unsigned long>());
  if (value.is_number_integer()) return BigInt(value.get<long>());
  raise(Errc::InvalidArgument, "expected a decimal integer string");
}

GroupParams params_from_json(const nlohmann::json& doc) {
  return GroupParams{bigint_from_json(doc.at("p")), bigint_from_json(doc.at("q")),
                     bigint_from_json(doc.at("g"))};
}

nlohmann::json to_json(const Ciphertext& ct) {
  return {{"c", ct.c.get_str()}, {"d", ct.d.get_str()}};
}

Ciphertext ciphertext_from_json(const nlohmann::json& doc) {
  return Ciphertext{bigint_from_json(doc.at("c")), bigint_from_json(doc.at("d"))};
}

}  // namespace biochain::group
