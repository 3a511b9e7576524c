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

#include "biochain/errors.hpp"

namespace biochain {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::MessageNotInSubgroup: return "MessageNotInSubgroup";
    case Errc::InvalidCiphertext: return "InvalidCiphertext";
    case Errc::ParamsMismatch: return "ParamsMismatch";
    case Errc::EmptyParticipantSet: return "EmptyParticipantSet";
    case Errc::WitnessInconsistent: return "WitnessInconsistent";
    case Errc::KernelLargerThanInput: return "KernelLargerThanInput";
    case Errc::PlaintextOutOfRange: return "PlaintextOutOfRange";
    case Errc::VectorTooLong: return "VectorTooLong";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::ZeroVector: return "ZeroVector";
    case Errc::NonIntegralOutput: return "NonIntegralOutput";
    case Errc::UndefinedBaseline: return "UndefinedBaseline";
    case Errc::RatioBelowNegativeOne: return "RatioBelowNegativeOne";
    case Errc::DeclineOutOfRange: return "DeclineOutOfRange";
    case Errc::UnknownNode: return "UnknownNode";
    case Errc::UnknownProposal: return "UnknownProposal";
    case Errc::TierInsufficient: return "TierInsufficient";
    case Errc::TooManyOpenProposals: return "TooManyOpenProposals";
    case Errc::NotNominated: return "NotNominated";
    case Errc::DuplicatePoolVote: return "DuplicatePoolVote";
    case Errc::DuplicateVote: return "DuplicateVote";
    case Errc::NotGovernor: return "NotGovernor";
    case Errc::NotInPool: return "NotInPool";
    case Errc::NotInVote: return "NotInVote";
    case Errc::VotingStillOpen: return "VotingStillOpen";
    case Errc::VotingClosed: return "VotingClosed";
    case Errc::VetoExhausted: return "VetoExhausted";
    case Errc::NotApproved: return "NotApproved";
    case Errc::ConsulApprovalMissing: return "ConsulApprovalMissing";
    case Errc::InsufficientFormationFunds: return "InsufficientFormationFunds";
    case Errc::ResubmitCooldown: return "ResubmitCooldown";
    case Errc::DelegationDepth: return "DelegationDepth";
    case Errc::Blacklisted: return "Blacklisted";
    case Errc::BioauthFailed: return "BioauthFailed";
    case Errc::EmptyRoster: return "EmptyRoster";
    case Errc::ConfigInvalid: return "ConfigInvalid";
  }
  return "Unknown";
}

}  // namespace biochain
