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

#include "ssibridge/federation/verify.hpp"

#include <set>

#include "ssibridge/error.hpp"

namespace ssibridge::fed {

TrustChain resolve_trust_chain(const std::string& leaf_id,
                               FederationTransport& fetcher, int max_depth) {
  auto fetch_ec = [&](const std::string& id) {
    TransportReply r = fetcher.fetch_entity_configuration(id);
    if (r.status != TransportStatus::Ok)
      throw Error(Errc::FetchFailed, id);
    return parse_entity_statement(r.body);
  };

  TrustChain chain;
  std::set<std::string> visited{leaf_id};
  EntityStatement current_ec = fetch_ec(leaf_id);
  std::string current = leaf_id;
  chain.statements.push_back(current_ec);

  while (!current_ec.fields.authority_hints.empty()) {
    if (static_cast<int>(visited.size()) >= max_depth)
      throw Error(Errc::DepthExceeded, "chain exceeds depth " +
                                           std::to_string(max_depth));
    const std::string superior = current_ec.fields.authority_hints.front();
    if (visited.count(superior))
      throw Error(Errc::CycleDetected, superior);
    TransportReply sub = fetcher.fetch_subordinate_statement(superior, current);
    if (sub.status != TransportStatus::Ok)
      throw Error(Errc::FetchFailed, superior);
    chain.statements.push_back(parse_entity_statement(sub.body));
    current_ec = fetch_ec(superior);
    current = superior;
    visited.insert(superior);
  }
  // Close the chain with the anchor's own configuration. For a leaf that is
  // itself the anchor the chain is just that single statement.
  if (chain.statements.size() > 1) chain.statements.push_back(current_ec);
  return chain;
}

StatusResult check_trust_mark_status(const TrustMark& mark,
                                     FederationTransport& transport,
                                     const Clock& clock) {
  StatusResult result;
  result.queried_at = clock.now();
  TransportReply r = transport.query_mark_status(mark.status_endpoint,
                                                 mark.mark_id);
  if (r.cert) result.endpoint_cert_fingerprint = r.cert->fingerprint();
  if (r.status != TransportStatus::Ok) {
    result.status = MarkStatus::Unreachable;
    return result;
  }
  if (r.body.empty()) {
    result.status = MarkStatus::Silent;
    return result;
  }
  json body = json::parse(r.body, nullptr, false);
  if (body.is_discarded() || !body.is_object() || !body.contains("active") ||
      !body.at("active").is_boolean()) {
    // A response we cannot interpret is treated exactly like silence.
    result.status = MarkStatus::Silent;
    return result;
  }
  result.status = body.at("active").get<bool>() ? MarkStatus::Active
                                                : MarkStatus::Revoked;
  result.raw_response = r.body;
  return result;
}

namespace {

bool verify_under_any(const SignedToken& token, const std::vector<Jwk>& keys) {
  for (const auto& k : keys)
    if (token.verify(k)) return true;
  return false;
}

// Keys attesting to `entity_id` inside the chain: jwks of every statement
// whose subject is that entity.
std::vector<Jwk> keys_for_entity(const TrustChain& chain,
                                 const std::string& entity_id) {
  std::vector<Jwk> keys;
  for (const auto& s : chain.statements)
    if (s.fields.subject_id == entity_id)
      for (const auto& k : s.fields.jwks) keys.push_back(k);
  return keys;
}

struct Failure {
  ChainReason reason;
  std::string entity;
};

}  // namespace

ChainVerdict verify_trust_chain(const TrustChain& chain, const Jwk& anchor_key,
                                FederationTransport& transport,
                                const Clock& clock) {
  ChainVerdict verdict;
  verdict.anchor_key_fingerprint = anchor_key.fingerprint();

  const auto& stmts = chain.statements;
  if (stmts.empty()) {
    verdict.reason = ChainReason::MalformedChain;
    return verdict;
  }

  // Linkage: leaf EC first, anchor EC last, each statement's subject is the
  // previous statement's issuer.
  const EntityStatement& leaf = stmts.front();
  const EntityStatement& anchor = stmts.back();
  bool linked = leaf.is_entity_configuration() &&
                anchor.is_entity_configuration() &&
                static_cast<int>(stmts.size()) <= 2 * kMaxChainDepth;
  for (size_t i = 1; linked && i < stmts.size(); ++i) {
    if (stmts[i].fields.subject_id != stmts[i - 1].fields.issuer_id)
      linked = false;
  }
  if (!linked) {
    verdict.reason = ChainReason::MalformedChain;
    return verdict;
  }
  const std::string anchor_id = anchor.fields.subject_id;

  // Failures are collected in priority buckets so a single injected fault
  // always surfaces as its own reason, regardless of knock-on effects.
  std::vector<Failure> anchor_failures, sig_failures, time_failures,
      mark_failures;

  // Anchor pinning. A self-consistent anchor EC that the pinned key cannot
  // verify means the verifier is holding the wrong anchor; an EC that not
  // even its own jwks verify means the statement itself was tampered with.
  bool anchor_self_ok = verify_under_any(anchor.token, anchor.fields.jwks);
  bool anchor_pin_ok = anchor.token.verify(anchor_key);
  if (!anchor_pin_ok && anchor_self_ok)
    anchor_failures.push_back({ChainReason::AnchorMismatch, anchor_id});

  const uint64_t now = clock.now();
  std::set<std::string> seen_marks;

  for (size_t i = 0; i < stmts.size(); ++i) {
    const EntityStatement& s = stmts[i];
    EntityResult entity;
    entity.entity_id = s.fields.subject_id;

    // Signature of this statement, under keys appropriate to its issuer.
    const std::string& issuer = s.fields.issuer_id;
    if (stmts.size() == 1) {
      // Degenerate chain: the leaf is the anchor itself.
      entity.signature_ok = s.token.verify(anchor_key);
    } else if (i == stmts.size() - 1) {
      entity.signature_ok = anchor_pin_ok || anchor_self_ok;
    } else if (i == 0) {
      // The leaf EC is self-signed; its authenticity comes from the
      // superior's statement attesting the leaf's keys. Checking only the
      // embedded jwks would accept any self-consistent forgery.
      entity.signature_ok = verify_under_any(s.token, stmts[1].fields.jwks);
    } else if (issuer == anchor_id) {
      entity.signature_ok =
          s.token.verify(anchor_key) ||
          verify_under_any(s.token, anchor.fields.jwks);
    } else {
      entity.signature_ok = verify_under_any(s.token, keys_for_entity(chain, issuer));
    }
    if (!entity.signature_ok)
      sig_failures.push_back({ChainReason::BadSignature, issuer});

    entity.time_ok = s.fields.iat <= now && now < s.fields.exp;
    if (!entity.time_ok) {
      time_failures.push_back({now >= s.fields.exp
                                   ? ChainReason::StatementExpired
                                   : ChainReason::StatementNotYetValid,
                               s.fields.subject_id});
    }

    // Trust marks carried for this statement's subject. Marks can appear in
    // both the subject's EC and the superior's subordinate statement about
    // it; dedupe so each is queried exactly once.
    for (const auto& mark : s.fields.trust_marks) {
      if (!seen_marks.insert(mark.mark_id).second) continue;
      MarkCheck check;
      check.mark_id = mark.mark_id;
      check.mark_type = mark.mark_type;

      auto auth_it = anchor.fields.trust_mark_issuers.find(mark.mark_type);
      check.authorized =
          auth_it != anchor.fields.trust_mark_issuers.end() &&
          std::find(auth_it->second.begin(), auth_it->second.end(),
                    mark.issuer_id) != auth_it->second.end();

      std::vector<Jwk> issuer_keys = keys_for_entity(chain, mark.issuer_id);
      if (mark.issuer_id == anchor_id) issuer_keys.push_back(anchor_key);
      check.signature_ok = verify_under_any(mark.token, issuer_keys);

      check.status = check_trust_mark_status(mark, transport, clock);

      if (!check.authorized)
        mark_failures.push_back({ChainReason::MarkUnauthorized, mark.owner_id});
      else if (!check.signature_ok)
        mark_failures.push_back({ChainReason::MarkSignatureInvalid, mark.owner_id});
      else if (check.status.status == MarkStatus::Revoked)
        mark_failures.push_back({ChainReason::MarkRevoked, mark.owner_id});
      else if (check.status.status == MarkStatus::Silent)
        mark_failures.push_back({ChainReason::MarkSilent, mark.owner_id});
      else if (check.status.status == MarkStatus::Unreachable)
        mark_failures.push_back({ChainReason::MarkUnreachable, mark.owner_id});

      entity.marks.push_back(std::move(check));
    }
    verdict.per_entity.push_back(std::move(entity));
  }

  for (const auto* bucket :
       {&anchor_failures, &sig_failures, &time_failures, &mark_failures}) {
    if (!bucket->empty()) {
      verdict.valid = false;
      verdict.reason = bucket->front().reason;
      verdict.offending_entity = bucket->front().entity;
      return verdict;
    }
  }
  verdict.valid = true;
  verdict.reason = ChainReason::None;
  return verdict;
}

}  // namespace ssibridge::fed
