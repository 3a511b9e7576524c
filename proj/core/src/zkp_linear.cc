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

#include "biochain/zkp_linear.hpp"

#include <string_view>

#include "biochain/errors.hpp"
#include "biochain/hash.hpp"

namespace biochain::zkp {

namespace {

constexpr std::string_view kLogEqDomain = "biochain/logeq/v1";
constexpr std::string_view kLinearDomain = "biochain/linear/v1";

std::vector<std::uint8_t> to_bytes(const BigInt& x) {
  std::size_t count = 0;
  std::vector<std::uint8_t> out((mpz_sizeinbase(x.get_mpz_t(), 2) + 7) / 8);
  mpz_export(out.data(), &count, 1, 1, 1, 0, x.get_mpz_t());
  out.resize(count);
  return out;
}

BigInt exp_signed(const GroupParams& params, const BigInt& base, std::int64_t k) {
  return params.exp(base, params.scalar(BigInt(static_cast<long>(k))));
}

}  // namespace

VssCommitment vss_commit(const GroupParams& params, std::span<const BigInt> coefficients) {
  VssCommitment out;
  out.h.reserve(coefficients.size());
  for (const BigInt& a : coefficients) out.h.push_back(params.pow_g(a));
  return out;
}

bool vss_verify_share(const GroupParams& params, const VssCommitment& commitment,
                      const Share& share) {
  BigInt rhs = 1;
  BigInt power = 1;  // x^i mod q
  const BigInt x = params.scalar(share.x);
  for (const BigInt& h : commitment.h) {
    if (!params.contains(h)) return false;
    rhs = params.mul(rhs, params.exp(h, power));
    power = params.scalar(power * x);
  }
  return params.pow_g(share.y) == rhs;
}

BigInt logeq_challenge(const GroupParams& params, const LogEqStatement& stmt, const BigInt& a,
                       const BigInt& b, std::span<const std::uint8_t> context) {
  Sha256 h;
  h.update(kLogEqDomain);
  for (const BigInt* x : {&params.p, &params.q, &params.g, &stmt.g1, &stmt.h1, &stmt.g2,
                          &stmt.h2, &a, &b}) {
    h.update_framed(to_bytes(*x));
  }
  if (!context.empty()) h.update_framed(context);
  const Digest digest = h.finish();
  BigInt z;
  mpz_import(z.get_mpz_t(), digest.size(), 1, 1, 1, 0, digest.data());
  return params.scalar(z);
}

LogEqProof logeq_prove(const GroupParams& params, const LogEqStatement& stmt, const BigInt& w,
                       Rng& rng, std::span<const std::uint8_t> context) {
  const BigInt ww = params.scalar(w);
  if (params.exp(stmt.g1, ww) != stmt.h1 || params.exp(stmt.g2, ww) != stmt.h2) {
    raise(Errc::WitnessInconsistent);
  }
  const BigInt r = group::random_scalar(params, rng);
  LogEqProof proof;
  proof.a = params.exp(stmt.g1, r);
  proof.b = params.exp(stmt.g2, r);
  const BigInt z = logeq_challenge(params, stmt, proof.a, proof.b, context);
  proof.t = params.scalar(r + ww * z);
  return proof;
}

bool logeq_verify(const GroupParams& params, const LogEqStatement& stmt, const LogEqProof& proof,
                  std::span<const std::uint8_t> context) {
  for (const BigInt* x : {&stmt.g1, &stmt.h1, &stmt.g2, &stmt.h2, &proof.a, &proof.b}) {
    if (!params.contains(*x)) return false;
  }
  if (proof.t < 0 || proof.t >= params.q) return false;
  const BigInt z = logeq_challenge(params, stmt, proof.a, proof.b, context);
  const bool first = params.exp(stmt.g1, proof.t) == params.mul(proof.a, params.exp(stmt.h1, z));
  const bool second = params.exp(stmt.g2, proof.t) == params.mul(proof.b, params.exp(stmt.h2, z));
  return first && second;
}

Ciphertext aggregate(const GroupParams& params, const BigInt& pk, const LinearStatement& stmt) {
  if (stmt.coefficients.size() != stmt.inputs.size()) {
    raise(Errc::InvalidArgument, "coefficient and input counts differ");
  }
  if (!params.contains(pk)) raise(Errc::ParamsMismatch, "public key");
  Ciphertext acc{BigInt(1), BigInt(1)};
  for (std::size_t i = 0; i < stmt.inputs.size(); ++i) {
    const Ciphertext& ct = stmt.inputs[i];
    if (!params.contains(ct.c) || !params.contains(ct.d)) {
      raise(Errc::ParamsMismatch, "input ciphertext " + std::to_string(i));
    }
    acc.c = params.mul(acc.c, exp_signed(params, ct.c, stmt.coefficients[i]));
    acc.d = params.mul(acc.d, exp_signed(params, ct.d, stmt.coefficients[i]));
  }
  return acc;
}

std::array<std::uint8_t, 32> linear_context(const GroupParams& params, const BigInt& pk,
                                            const LinearStatement& stmt) {
  Sha256 h;
  h.update(kLinearDomain);
  h.update_framed(to_bytes(pk));
  for (std::int64_t a : stmt.coefficients) {
    h.update_framed(to_bytes(params.scalar(BigInt(static_cast<long>(a)))));
  }
  for (const Ciphertext& ct : stmt.inputs) {
    h.update_framed(to_bytes(ct.c));
    h.update_framed(to_bytes(ct.d));
  }
  h.update_framed(to_bytes(stmt.output.c));
  h.update_framed(to_bytes(stmt.output.d));
  return h.finish();
}

LinearProof prove_linear(const GroupParams& params, const BigInt& pk,
                         std::span<const std::int64_t> inputs,
                         std::span<const BigInt> randomness,
                         std::span<const std::int64_t> coefficients, Rng& rng) {
  if (inputs.size() != randomness.size() || inputs.size() != coefficients.size()) {
    raise(Errc::InvalidArgument, "inputs, randomness and coefficients must have equal length");
  }
  if (inputs.empty()) raise(Errc::InvalidArgument, "empty input list");

  LinearProof out;
  auto& stmt = out.statement;
  stmt.coefficients.assign(coefficients.begin(), coefficients.end());
  BigInt y = 0;
  BigInt r_agg = 0;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const BigInt x(static_cast<long>(inputs[i]));
    const BigInt a(static_cast<long>(coefficients[i]));
    stmt.inputs.push_back(
        group::encrypt_with(params, pk, group::encode_exponent(params, x), randomness[i]));
    y += a * x;
    r_agg += a * randomness[i];
  }
  const BigInt r_out = group::random_scalar(params, rng);
  stmt.output = group::encrypt_with(params, pk, group::encode_exponent(params, y), r_out);

  const Ciphertext agg = aggregate(params, pk, stmt);
  const Ciphertext quotient = group::hom_div(params, agg, stmt.output);
  const LogEqStatement eq{params.g, quotient.c, pk, quotient.d};
  out.proof = logeq_prove(params, eq, r_agg - r_out, rng, linear_context(params, pk, stmt));
  return out;
}

bool verify_linear(const GroupParams& params, const BigInt& pk, const LinearStatement& stmt,
                   const LogEqProof& proof) {
  if (stmt.inputs.empty() || stmt.inputs.size() != stmt.coefficients.size()) return false;
  if (!params.contains(pk) || !params.contains(stmt.output.c) ||
      !params.contains(stmt.output.d)) {
    return false;
  }
  try {
    const Ciphertext agg = aggregate(params, pk, stmt);
    const Ciphertext quotient = group::hom_div(params, agg, stmt.output);
    return logeq_verify(params, LogEqStatement{params.g, quotient.c, pk, quotient.d}, proof,
                        linear_context(params, pk, stmt));
  } catch (const Error&) {
    return false;
  }
}

std::vector<WindowLayout> conv_as_linear(std::size_t input_len,
                                         std::span<const std::int64_t> kernel) {
  if (kernel.empty()) raise(Errc::InvalidArgument, "empty kernel");
  if (kernel.size() > input_len) raise(Errc::KernelLargerThanInput);
  std::vector<WindowLayout> out;
  out.reserve(input_len - kernel.size() + 1);
  for (std::size_t j = 0; j + kernel.size() <= input_len; ++j) {
    out.push_back(WindowLayout{j, {kernel.begin(), kernel.end()}});
  }
  return out;
}

std::vector<LinearProof> prove_convolution(const GroupParams& params, const BigInt& pk,
                                           std::span<const std::int64_t> inputs,
                                           std::span<const std::int64_t> kernel, Rng& rng) {
  const auto windows = conv_as_linear(inputs.size(), kernel);
  std::vector<BigInt> randomness;
  randomness.reserve(inputs.size());
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    randomness.push_back(group::random_scalar(params, rng));
  }
  std::vector<LinearProof> out;
  out.reserve(windows.size());
  for (const auto& w : windows) {
    const std::size_t m = w.coefficients.size();
    out.push_back(prove_linear(params, pk, inputs.subspan(w.start, m),
                               std::span<const BigInt>(randomness).subspan(w.start, m),
                               w.coefficients, rng));
  }
  return out;
}

nlohmann::json to_json(const LogEqProof& proof) {
  return {{"A", proof.a.get_str()}, {"B", proof.b.get_str()}, {"t", proof.t.get_str()}};
}

LogEqProof logeq_proof_from_json(const nlohmann::json& doc) {
  return LogEqProof{group::bigint_from_json(doc.at("A")), group::bigint_from_json(doc.at("B")),
                    group::bigint_from_json(doc.at("t"))};
}

nlohmann::json to_json(const LinearStatement& stmt) {
  nlohmann::json inputs = nlohmann::json::array();
  for (const auto& ct : stmt.inputs) inputs.push_back(group::to_json(ct));
  return {{"coefficients", stmt.coefficients},
          {"inputs", std::move(inputs)},
          {"output", group::to_json(stmt.output)}};
}

LinearStatement linear_statement_from_json(const nlohmann::json& doc) {
  LinearStatement stmt;
  stmt.coefficients = doc.at("coefficients").get<std::vector<std::int64_t>>();
  for (const auto& ct : doc.at("inputs")) stmt.inputs.push_back(group::ciphertext_from_json(ct));
  stmt.output = group::ciphertext_from_json(doc.at("output"));
  return stmt;
}

}  // namespace biochain::zkp
