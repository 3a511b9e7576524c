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

#include <algorithm>
#include <vector>

#include <gtest/gtest.h>

#include "biochain/errors.hpp"
#include "biochain/group_crypto.hpp"
#include "biochain/rng.hpp"

namespace biochain::group {
namespace {

// Brute-force discrete log in a tiny group; independent of the library.
long brute_log(const GroupParams& gp, const BigInt& h) {
  BigInt acc = 1;
  for (long x = 0; x < gp.q.get_si(); ++x) {
    if (acc == h) return x;
    acc = acc * gp.g % gp.p;
  }
  return -1;
}

class GroupCrypto : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    Rng rng(2024);
    params_ = new GroupParams(generate_params(64, rng));
  }
  static void TearDownTestSuite() { delete params_; }
  static GroupParams* params_;
};
GroupParams* GroupCrypto::params_ = nullptr;

TEST(ToyGroup, Structure) {
  const GroupParams gp = toy_params();
  EXPECT_EQ(gp.p, 23);
  EXPECT_EQ(gp.q, 11);
  EXPECT_EQ(gp.g, 4);
  EXPECT_TRUE(gp.valid());
  // Quadratic residues mod 23.
  const std::vector<int> qr = {1, 2, 3, 4, 6, 8, 9, 12, 13, 16, 18};
  for (int x = 1; x < 23; ++x) {
    const bool member = std::find(qr.begin(), qr.end(), x) != qr.end();
    EXPECT_EQ(gp.contains(x), member) << x;
  }
  EXPECT_FALSE(gp.contains(0));
  EXPECT_FALSE(gp.contains(23));
}

TEST(ToyGroup, KeygenFromSecret) {
  const GroupParams gp = toy_params();
  // 4^3 = 64 = 18 (mod 23)
  EXPECT_EQ(keypair_from_secret(gp, 3).pk, 18);
}

TEST(ToyGroup, ExhaustiveEncryptDecrypt) {
  const GroupParams gp = toy_params();
  for (long sk = 1; sk < 11; ++sk) {
    const KeyPair kp = keypair_from_secret(gp, sk);
    for (long x = 0; x < 11; ++x) {
      const BigInt m = encode_exponent(gp, x);
      for (long r = 0; r < 11; ++r) {
        const Ciphertext ct = encrypt_with(gp, kp.pk, m, r);
        ASSERT_EQ(decrypt(gp, kp.sk, ct), m);
        ASSERT_EQ(brute_log(gp, decrypt(gp, kp.sk, ct)), x);
      }
    }
  }
}

TEST(ToyGroup, ExhaustiveHomomorphism) {
  const GroupParams gp = toy_params();
  const KeyPair kp = keypair_from_secret(gp, 7);
  Rng rng(5);
  for (long x1 = 0; x1 < 11; ++x1) {
    for (long x2 = 0; x2 < 11; ++x2) {
      const auto a = encrypt(gp, kp.pk, encode_exponent(gp, x1), rng);
      const auto b = encrypt(gp, kp.pk, encode_exponent(gp, x2), rng);
      ASSERT_EQ(brute_log(gp, decrypt(gp, kp.sk, hom_mul(gp, a, b))), (x1 + x2) % 11);
      ASSERT_EQ(brute_log(gp, decrypt(gp, kp.sk, hom_div(gp, a, b))), ((x1 - x2) % 11 + 11) % 11);
      ASSERT_EQ(brute_log(gp, decrypt(gp, kp.sk, hom_scalar(gp, a, x2))), (x1 * x2) % 11);
    }
  }
}

TEST(ToyGroup, NonMemberMessageRejected) {
  const GroupParams gp = toy_params();
  const KeyPair kp = keypair_from_secret(gp, 2);
  Rng rng(1);
  try {
    encrypt(gp, kp.pk, 5, rng);  // 5 is a non-residue mod 23
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::MessageNotInSubgroup);
  }
}

TEST(ToyGroup, MalformedCiphertextRejected) {
  const GroupParams gp = toy_params();
  const KeyPair kp = keypair_from_secret(gp, 2);
  EXPECT_THROW(decrypt(gp, kp.sk, Ciphertext{5, 4}), Error);
  EXPECT_THROW(decrypt(gp, kp.sk, Ciphertext{0, 4}), Error);
}

TEST(ToyGroup, ParamsMismatch) {
  // A ciphertext from the 47 = 2*23 + 1 group does not fit the toy group.
  const GroupParams gp = toy_params();
  try {
    hom_mul(gp, Ciphertext{4, 42}, Ciphertext{4, 4});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::ParamsMismatch);
  }
}

TEST(ToyGroup, CollectiveKeyAnyOrder) {
  const GroupParams gp = toy_params();
  const std::vector<BigInt> sks = {2, 5, 9};
  std::vector<BigInt> pks;
  for (const auto& s : sks) pks.push_back(keypair_from_secret(gp, s).pk);
  const CollectiveKey ck = aggregate_keys(gp, pks);
  EXPECT_EQ(ck.participant_count, 3u);
  EXPECT_EQ(ck.pk_agg, gp.pow_g(2 + 5 + 9));

  Rng rng(8);
  const BigInt m = encode_exponent(gp, 6);
  const Ciphertext ct = encrypt(gp, ck.pk_agg, m, rng);
  std::vector<int> order = {0, 1, 2};
  do {
    Ciphertext c = ct;
    for (int i : order) c = partial_decrypt(gp, sks[i], c);
    EXPECT_EQ(c.d, m);
  } while (std::next_permutation(order.begin(), order.end()));
  // Aggregate secret decrypts in one step.
  EXPECT_EQ(decrypt(gp, 16, ct), m);
}

TEST(ToyGroup, EmptyParticipants) {
  try {
    aggregate_keys(toy_params(), {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::EmptyParticipantSet);
  }
}

TEST_F(GroupCrypto, GeneratedParamsAreSafePrimeGroup) {
  const GroupParams& gp = *params_;
  EXPECT_EQ(mpz_sizeinbase(gp.p.get_mpz_t(), 2), 64u);
  EXPECT_EQ(gp.p, 2 * gp.q + 1);
  EXPECT_NE(mpz_probab_prime_p(gp.p.get_mpz_t(), 40), 0);
  EXPECT_NE(mpz_probab_prime_p(gp.q.get_mpz_t(), 40), 0);
  EXPECT_TRUE(gp.valid());
  EXPECT_TRUE(gp.contains(gp.g));
  EXPECT_NE(gp.g, 1);
}

TEST_F(GroupCrypto, GenerationIsDeterministic) {
  Rng a(2024), b(2024);
  EXPECT_EQ(generate_params(64, a), *params_);
  EXPECT_EQ(generate_params(64, b), *params_);
}

TEST_F(GroupCrypto, RoundTripAndProductHomomorphism) {
  const GroupParams& gp = *params_;
  Rng rng(77);
  const KeyPair kp = keygen(gp, rng);
  for (int i = 0; i < 300; ++i) {
    const BigInt m1 = gp.pow_g(random_scalar(gp, rng, 0));
    const BigInt m2 = gp.pow_g(random_scalar(gp, rng, 0));
    const auto c1 = encrypt(gp, kp.pk, m1, rng);
    const auto c2 = encrypt(gp, kp.pk, m2, rng);
    ASSERT_EQ(decrypt(gp, kp.sk, c1), m1);
    ASSERT_EQ(decrypt(gp, kp.sk, hom_mul(gp, c1, c2)), m1 * m2 % gp.p);
  }
}

TEST_F(GroupCrypto, ScalarHomomorphismWithNegatives) {
  const GroupParams& gp = *params_;
  Rng rng(78);
  const KeyPair kp = keygen(gp, rng);
  const auto ct = encrypt(gp, kp.pk, encode_exponent(gp, 5), rng);
  EXPECT_EQ(decrypt(gp, kp.sk, hom_scalar(gp, ct, -3)), gp.pow_g(-15));
  EXPECT_EQ(gp.mul(gp.pow_g(-15), gp.pow_g(15)), 1);
}

TEST_F(GroupCrypto, JsonRoundTrip) {
  const GroupParams& gp = *params_;
  Rng rng(3);
  const KeyPair kp = keygen(gp, rng);
  const auto doc = to_json(gp, &kp.pk);
  EXPECT_TRUE(doc.at("p").is_string());
  EXPECT_EQ(params_from_json(doc), gp);
  EXPECT_EQ(bigint_from_json(doc.at("pk")), kp.pk);
  const auto ct = encrypt(gp, kp.pk, gp.g, rng);
  EXPECT_EQ(ciphertext_from_json(to_json(ct)), ct);
  EXPECT_THROW(bigint_from_json("12x"), Error);
}

TEST(ProductionGroup, IsValid) {
  const GroupParams gp = production_params();
  EXPECT_EQ(mpz_sizeinbase(gp.p.get_mpz_t(), 2), 1024u);
  EXPECT_TRUE(gp.valid());
  Rng rng(1);
  const KeyPair kp = keygen(gp, rng);
  const BigInt m = encode_exponent(gp, 123456);
  EXPECT_EQ(decrypt(gp, kp.sk, encrypt(gp, kp.pk, m, rng)), m);
}

}  // namespace
}  // namespace biochain::group
