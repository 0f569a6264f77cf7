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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ssibridge/signed_token.hpp"

namespace ssibridge::fed {

// Unsigned application-level stand-in for an endpoint's TLS server
// certificate. Handed out-of-band; its fingerprint is what gets pinned and
// recorded in enclave transcripts.
struct EndpointCert {
  std::string entity_id;
  Jwk public_key;  // public half only
  uint64_t not_before = 0;
  uint64_t not_after = 0;

  json to_json() const;
  static EndpointCert from_json(const json& j);
  Digest fingerprint() const;  // SHA-256 of the canonical JSON bytes
};

// A signed compliance marker. The embedded token's payload carries the
// fields; status_endpoint is a federation-relative locator of the form
// "fed:<owner_id>/status".
struct TrustMark {
  std::string mark_id;
  std::string mark_type;
  std::string issuer_id;
  std::string owner_id;
  std::string status_endpoint;
  SignedToken token;

  static TrustMark build(const Jwk& issuer_key, const std::string& mark_id,
                         const std::string& mark_type,
                         const std::string& issuer_id,
                         const std::string& owner_id,
                         const std::string& status_endpoint);
  static TrustMark parse(std::string_view compact);
};

struct EntityStatementFields {
  std::string issuer_id;
  std::string subject_id;
  std::vector<Jwk> jwks;  // public halves
  std::vector<std::string> authority_hints;
  std::vector<TrustMark> trust_marks;
  std::map<std::string, std::vector<std::string>> trust_mark_issuers;
  uint64_t iat = 0;
  uint64_t exp = 0;
};

// Signed federation metadata. Self-signed (issuer == subject) statements are
// Entity Configurations; others are subordinate statements about the subject.
struct EntityStatement {
  EntityStatementFields fields;
  SignedToken token;

  bool is_entity_configuration() const {
    return fields.issuer_id == fields.subject_id;
  }
  const std::string& compact() const { return token.compact(); }
};

EntityStatement build_entity_statement(const Jwk& signing_key,
                                       const EntityStatementFields& fields);
EntityStatement parse_entity_statement(std::string_view compact);

// Ordered leaf -> anchor: [leaf EC, subordinate statement(s)..., anchor EC].
struct TrustChain {
  std::vector<EntityStatement> statements;

  const EntityStatement& leaf() const { return statements.front(); }
  const EntityStatement& anchor() const { return statements.back(); }
  std::vector<std::string> entity_ids() const;
};

enum class MarkStatus { Active, Revoked, Unreachable, Silent };
std::string_view mark_status_name(MarkStatus s);

struct StatusResult {
  MarkStatus status = MarkStatus::Unreachable;
  std::optional<std::string> raw_response;  // absent for Unreachable/Silent
  Digest endpoint_cert_fingerprint;         // zero when nothing was observed
  uint64_t queried_at = 0;
};

enum class ChainReason {
  None,
  MalformedChain,
  AnchorMismatch,
  BadSignature,
  StatementExpired,
  StatementNotYetValid,
  MarkUnauthorized,
  MarkSignatureInvalid,
  MarkRevoked,
  MarkSilent,
  MarkUnreachable,
  ResolutionFailed,
};
std::string_view chain_reason_name(ChainReason r);
ChainReason chain_reason_from_name(std::string_view name);

struct MarkCheck {
  std::string mark_id;
  std::string mark_type;
  bool authorized = false;
  bool signature_ok = false;
  StatusResult status;
};

struct EntityResult {
  std::string entity_id;
  bool signature_ok = false;
  bool time_ok = false;
  std::vector<MarkCheck> marks;
};

// Full diagnostic of a chain verification. Failures are encoded here, never
// thrown: verifiers need the complete picture of which entity and which
// status endpoint broke the chain.
struct ChainVerdict {
  bool valid = false;
  ChainReason reason = ChainReason::None;
  std::string offending_entity;
  std::vector<EntityResult> per_entity;
  Digest anchor_key_fingerprint;

  json to_json() const;
  static ChainVerdict from_json(const json& j);
  // Compact form carried inside attested-credential claims.
  json summary() const;
};

}  // namespace ssibridge::fed
