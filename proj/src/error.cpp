// Copyright 2026 The ssibridge Authors
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

#include "ssibridge/error.hpp"

namespace ssibridge {

std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::MalformedEncoding: return "MalformedEncoding";
    case Errc::MalformedToken: return "MalformedToken";
    case Errc::InvalidClaimName: return "InvalidClaimName";
    case Errc::InvalidLifetime: return "InvalidLifetime";
    case Errc::SigningKeyUnavailable: return "SigningKeyUnavailable";
    case Errc::UnknownSuite: return "UnknownSuite";
    case Errc::SignatureInvalid: return "SignatureInvalid";
    case Errc::Expired: return "Expired";
    case Errc::NotYetValid: return "NotYetValid";
    case Errc::UnknownDisclosureDigest: return "UnknownDisclosureDigest";
    case Errc::UnknownDisclosure: return "UnknownDisclosure";
    case Errc::NonValidVerdict: return "NonValidVerdict";
    case Errc::QuoteMismatch: return "QuoteMismatch";
    case Errc::FetchFailed: return "FetchFailed";
    case Errc::DepthExceeded: return "DepthExceeded";
    case Errc::CycleDetected: return "CycleDetected";
    case Errc::InvalidTopology: return "InvalidTopology";
    case Errc::UnknownEntity: return "UnknownEntity";
    case Errc::UnknownMark: return "UnknownMark";
    case Errc::TransportCompromised: return "TransportCompromised";
    case Errc::WitnessStatementMismatch: return "WitnessStatementMismatch";
    case Errc::UnknownBackend: return "UnknownBackend";
    case Errc::BackendRejected: return "BackendRejected";
    case Errc::UnknownContract: return "UnknownContract";
    case Errc::BrokenChain: return "BrokenChain";
    case Errc::NotAuthenticated: return "NotAuthenticated";
    case Errc::UnknownCredential: return "UnknownCredential";
    case Errc::PreflightFailed: return "PreflightFailed";
    case Errc::ProofRejected: return "ProofRejected";
    case Errc::NotPublished: return "NotPublished";
    case Errc::AttestationFailed: return "AttestationFailed";
    case Errc::Unreachable: return "Unreachable";
    case Errc::IoError: return "IoError";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "UnknownError";
}

}  // namespace ssibridge
