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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "biochain/lwe_he.hpp"
#include "biochain/rng.hpp"

namespace biochain::bio {

struct FeatureVector {
  std::vector<double> values;

  double norm() const;
  FeatureVector normalized() const;
};

/// (a . b) / (|a| |b|). Throws DimensionMismatch or ZeroVector.
double cosine_similarity(const FeatureVector& a, const FeatureVector& b);

enum class MatchResult { Match, NoMatch };

/// Closed boundary: a score equal to the threshold matches.
MatchResult match_decision(double score, double threshold);

struct QuantizedVector {
  std::vector<std::int64_t> values;  // round(v_i * scale)
  std::int64_t scale = 1;
};

QuantizedVector quantize(const FeatureVector& v, std::int64_t scale);
std::int64_t dot_q(const QuantizedVector& a, const QuantizedVector& b);
/// Worst-case |dot_q / S^2 - cos| for unit vectors of the given dimension.
double quantization_error_bound(std::size_t dimension, std::int64_t scale);

/// Sign binarization of a real template: bit i = (v_i > 0).
std::vector<std::uint8_t> binarize(const FeatureVector& v);

/// Encrypted matching of two bit templates under one ring-LWE key. Both
/// templates are packed, encrypted, multiplied once, and the inner product
/// is read back from the decrypted product.
struct EncryptedMatch {
  std::uint64_t inner_product = 0;
  MatchResult result = MatchResult::NoMatch;
};

EncryptedMatch encrypted_match(const lwe::LweParams& params, const lwe::LweKeyPair& keys,
                               std::span<const std::uint8_t> template_bits,
                               std::span<const std::uint8_t> probe_bits,
                               std::uint64_t threshold_count, Rng& rng);

/// Plaintext reference for the same decision.
MatchResult plaintext_match(std::span<const std::uint8_t> template_bits,
                            std::span<const std::uint8_t> probe_bits,
                            std::uint64_t threshold_count);

// ---------------------------------------------------------------------------
// Convolutional shape arithmetic
// ---------------------------------------------------------------------------

struct CnnShape {
  std::int64_t width = 0;    // W
  std::int64_t kernel = 0;   // F
  std::int64_t padding = 0;  // P
  std::int64_t stride = 1;   // S
  std::int64_t depth = 1;    // D
};

/// (W - F + 2P) / S + 1; throws NonIntegralOutput if S does not divide.
std::int64_t conv_out_size(const CnnShape& shape);
/// (W - F) / S + 1.
std::int64_t pool_out_size(std::int64_t width, std::int64_t kernel, std::int64_t stride);

// ---------------------------------------------------------------------------
// Modality scoring
// ---------------------------------------------------------------------------

inline constexpr std::size_t kFactorCount = 10;

/// Acceptability, Collectability, Permanence, Universality, Uniqueness,
/// Accuracy, Security, ProcessingSpeed, Circumvention, Hardware.
inline constexpr std::array<int, kFactorCount> kFactorWeights = {6, 6, 5, 5, 10, 8, 10, 3, 10, 8};
extern const std::array<const char*, kFactorCount> kFactorNames;

/// Modalities scoring strictly above this are eligible for node enrollment.
inline constexpr int kEligibilityCutoff = 147;

struct ModalityProfile {
  std::string name;
  std::array<int, kFactorCount> levels{};  // each in {1,2,3}; Circumvention pre-inverted
  std::optional<int> published_score;
};

int modality_score(const ModalityProfile& profile);

struct ScoreRow {
  std::string name;
  int score = 0;
  std::optional<int> published_score;
  bool eligible = false;

  bool matches_published() const { return !published_score || *published_score == score; }
};

/// Rows ranked by descending computed score (ties keep input order).
std::vector<ScoreRow> score_table(std::span<const ModalityProfile> profiles);

std::vector<ModalityProfile> modalities_from_json(const nlohmann::json& doc);
nlohmann::json to_json(std::span<const ScoreRow> rows);

FeatureVector feature_vector_from_json(const nlohmann::json& doc);

}  // namespace biochain::bio
