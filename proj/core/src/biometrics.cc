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

#include "biochain/biometrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "biochain/errors.hpp"

namespace biochain::bio {

const std::array<const char*, kFactorCount> kFactorNames = {
    "Acceptability", "Collectability", "Permanence", "Universality",  "Uniqueness",
    "Accuracy",      "Security",       "ProcessingSpeed", "Circumvention", "Hardware"};

double FeatureVector::norm() const {
  double acc = 0.0;
  for (double v : values) acc += v * v;
  return std::sqrt(acc);
}

FeatureVector FeatureVector::normalized() const {
  const double n = norm();
  if (n == 0.0) raise(Errc::ZeroVector);
  FeatureVector out{values};
  for (double& v : out.values) v /= n;
  return out;
}

double cosine_similarity(const FeatureVector& a, const FeatureVector& b) {
  if (a.values.size() != b.values.size()) raise(Errc::DimensionMismatch);
  for (double v : a.values) {
    if (!std::isfinite(v)) raise(Errc::InvalidArgument, "non-finite feature value");
  }
  for (double v : b.values) {
    if (!std::isfinite(v)) raise(Errc::InvalidArgument, "non-finite feature value");
  }
  const double na = a.norm();
  const double nb = b.norm();
  if (na == 0.0 || nb == 0.0) raise(Errc::ZeroVector);
  const double dot =
      std::inner_product(a.values.begin(), a.values.end(), b.values.begin(), 0.0);
  return std::clamp(dot / (na * nb), -1.0, 1.0);
}

MatchResult match_decision(double score, double threshold) {
  if (!(threshold > 0.0 && threshold < 1.0)) {
    raise(Errc::InvalidArgument, "threshold must lie in (0, 1)");
  }
  return score >= threshold ? MatchResult::Match : MatchResult::NoMatch;
}

QuantizedVector quantize(const FeatureVector& v, std::int64_t scale) {
  if (scale <= 0) raise(Errc::InvalidArgument, "scale must be positive");
  QuantizedVector out;
  out.scale = scale;
  out.values.reserve(v.values.size());
  for (double x : v.values) {
    out.values.push_back(static_cast<std::int64_t>(std::llround(x * static_cast<double>(scale))));
  }
  return out;
}

std::int64_t dot_q(const QuantizedVector& a, const QuantizedVector& b) {
  if (a.values.size() != b.values.size()) raise(Errc::DimensionMismatch);
  std::int64_t acc = 0;
  for (std::size_t i = 0; i < a.values.size(); ++i) acc += a.values[i] * b.values[i];
  return acc;
}

double quantization_error_bound(std::size_t dimension, std::int64_t scale) {
  const double s = static_cast<double>(scale);
  return static_cast<double>(dimension) * (2.0 / s + 1.0 / (s * s));
}

std::vector<std::uint8_t> binarize(const FeatureVector& v) {
  std::vector<std::uint8_t> bits;
  bits.reserve(v.values.size());
  for (double x : v.values) bits.push_back(x > 0.0 ? 1 : 0);
  return bits;
}

EncryptedMatch encrypted_match(const lwe::LweParams& params, const lwe::LweKeyPair& keys,
                               std::span<const std::uint8_t> template_bits,
                               std::span<const std::uint8_t> probe_bits,
                               std::uint64_t threshold_count, Rng& rng) {
  if (template_bits.size() != probe_bits.size()) raise(Errc::DimensionMismatch);
  if (template_bits.size() >= params.t) {
    raise(Errc::InvalidArgument, "template length must stay below the plaintext modulus");
  }
  const auto ct_template =
      lwe::lwe_encrypt(params, keys, lwe::encode_forward(params, template_bits), rng);
  const auto ct_probe =
      lwe::lwe_encrypt(params, keys, lwe::encode_reverse(params, probe_bits), rng);
  const auto product = lwe::lwe_mul(params, ct_template, ct_probe);

  EncryptedMatch out;
  out.inner_product = lwe::extract_inner_product(params, keys.sk, product, template_bits.size());
  out.result = out.inner_product >= threshold_count ? MatchResult::Match : MatchResult::NoMatch;
  return out;
}

MatchResult plaintext_match(std::span<const std::uint8_t> template_bits,
                            std::span<const std::uint8_t> probe_bits,
                            std::uint64_t threshold_count) {
  if (template_bits.size() != probe_bits.size()) raise(Errc::DimensionMismatch);
  std::uint64_t dot = 0;
  for (std::size_t i = 0; i < template_bits.size(); ++i) dot += template_bits[i] & probe_bits[i];
  return dot >= threshold_count ? MatchResult::Match : MatchResult::NoMatch;
}

std::int64_t conv_out_size(const CnnShape& shape) {
  if (shape.width <= 0 || shape.kernel <= 0 || shape.stride <= 0 || shape.padding < 0 ||
      shape.depth <= 0) {
    raise(Errc::InvalidArgument, "shape fields must be positive");
  }
  const std::int64_t span = shape.width - shape.kernel + 2 * shape.padding;
  if (span < 0) raise(Errc::InvalidArgument, "kernel larger than padded input");
  if (span % shape.stride != 0) raise(Errc::NonIntegralOutput);
  return span / shape.stride + 1;
}

std::int64_t pool_out_size(std::int64_t width, std::int64_t kernel, std::int64_t stride) {
  return conv_out_size(CnnShape{width, kernel, 0, stride, 1});
}

int modality_score(const ModalityProfile& profile) {
  int score = 0;
  for (std::size_t i = 0; i < kFactorCount; ++i) {
    const int level = profile.levels[i];
    if (level < 1 || level > 3) {
      raise(Errc::InvalidArgument, profile.name + ": factor level outside {1,2,3}");
    }
    score += level * kFactorWeights[i];
  }
  return score;
}

std::vector<ScoreRow> score_table(std::span<const ModalityProfile> profiles) {
  std::vector<ScoreRow> rows;
  rows.reserve(profiles.size());
  for (const auto& p : profiles) {
    const int score = modality_score(p);
    rows.push_back(ScoreRow{p.name, score, p.published_score, score > kEligibilityCutoff});
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const ScoreRow& a, const ScoreRow& b) { return a.score > b.score; });
  return rows;
}

std::vector<ModalityProfile> modalities_from_json(const nlohmann::json& doc) {
  std::vector<ModalityProfile> out;
  for (const auto& row : doc) {
    ModalityProfile p;
    p.name = row.at("name").get<std::string>();
    const auto levels = row.at("levels").get<std::vector<int>>();
    if (levels.size() != kFactorCount) {
      raise(Errc::InvalidArgument, p.name + ": expected 10 factor levels");
    }
    std::copy(levels.begin(), levels.end(), p.levels.begin());
    if (row.contains("published_score")) p.published_score = row["published_score"].get<int>();
    out.push_back(std::move(p));
  }
  return out;
}

nlohmann::json to_json(std::span<const ScoreRow> rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json row = {{"name", r.name}, {"score", r.score}, {"eligible", r.eligible}};
    if (r.published_score) {
      row["published_score"] = *r.published_score;
      row["matches_published"] = r.matches_published();
    }
    out.push_back(std::move(row));
  }
  return out;
}

FeatureVector feature_vector_from_json(const nlohmann::json& doc) {
  return FeatureVector{doc.get<std::vector<double>>()};
}

}  // namespace biochain::bio
