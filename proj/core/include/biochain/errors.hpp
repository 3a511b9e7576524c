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
#include <stdexcept>
#include <string>
#include <string_view>

namespace biochain {

// Error categories raised by the core library. One enum for the whole
// project keeps the CLI's exit-code mapping in a single place.
enum class Errc {
  InvalidArgument,
  // group_crypto
  MessageNotInSubgroup,
  InvalidCiphertext,
  ParamsMismatch,
  EmptyParticipantSet,
  // zkp_linear
  WitnessInconsistent,
  KernelLargerThanInput,
  // lwe_he
  PlaintextOutOfRange,
  VectorTooLong,
  // biometrics
  DimensionMismatch,
  ZeroVector,
  NonIntegralOutput,
  // fath
  UndefinedBaseline,
  RatioBelowNegativeOne,
  // fees
  DeclineOutOfRange,
  // vortex
  UnknownNode,
  UnknownProposal,
  TierInsufficient,
  TooManyOpenProposals,
  NotNominated,
  DuplicatePoolVote,
  DuplicateVote,
  NotGovernor,
  NotInPool,
  NotInVote,
  VotingStillOpen,
  VotingClosed,
  VetoExhausted,
  NotApproved,
  ConsulApprovalMissing,
  InsufficientFormationFunds,
  ResubmitCooldown,
  DelegationDepth,
  // netsim
  Blacklisted,
  BioauthFailed,
  EmptyRoster,
  ConfigInvalid,
};

std::string_view to_string(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  explicit Error(Errc code) : Error(code, std::string(to_string(code))) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& detail = {}) {
  if (detail.empty()) throw Error(code);
  throw Error(code, std::string(to_string(code)) + ": " + detail);
}

using NodeId = std::uint32_t;

// Simulated wall-clock time in seconds since genesis.
using SimTime = std::int64_t;

namespace timeunits {
inline constexpr SimTime kHour = 3600;
inline constexpr SimTime kDay = 24 * kHour;
inline constexpr SimTime kWeek = 7 * kDay;
// Mean Gregorian month, 30.44 days.
inline constexpr SimTime kMonth = 2630016;
inline constexpr SimTime kYear = 12 * kMonth;
}  // namespace timeunits

}  // namespace biochain
