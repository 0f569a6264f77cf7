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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ssibridge {

// Machine-readable failure codes. Surfaced verbatim by the CLI's JSON error
// output, so names are part of the external interface.
enum class Errc {
  MalformedEncoding,
  MalformedToken,
  InvalidClaimName,
  InvalidLifetime,
  SigningKeyUnavailable,
  UnknownSuite,
  SignatureInvalid,
  Expired,
  NotYetValid,
  UnknownDisclosureDigest,
  UnknownDisclosure,
  NonValidVerdict,
  QuoteMismatch,
  FetchFailed,
  DepthExceeded,
  CycleDetected,
  InvalidTopology,
  UnknownEntity,
  UnknownMark,
  TransportCompromised,
  WitnessStatementMismatch,
  UnknownBackend,
  BackendRejected,
  UnknownContract,
  BrokenChain,
  NotAuthenticated,
  UnknownCredential,
  PreflightFailed,
  ProofRejected,
  NotPublished,
  AttestationFailed,
  Unreachable,
  IoError,
  InvalidArgument,
};

std::string_view errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& detail)
      : std::runtime_error(std::string(errc_name(code)) + ": " + detail),
        code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

}  // namespace ssibridge
