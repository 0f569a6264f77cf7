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

#include "ssibridge/proof/transcript_backend.hpp"

#include <algorithm>

#include "ssibridge/error.hpp"

namespace ssibridge::proof {

ProofStatement statement_from_quote(const enclave::Quote& quote) {
  ProofStatement s;
  s.root_of_trust_fingerprint = quote.root_cert.fingerprint();
  s.credential_digest = quote.bound_inputs.credential_digest;
  s.measurement = quote.measurement;
  s.policy_digest = quote.bound_inputs.policy_digest;
  s.verified_at = quote.bound_inputs.verified_at;
  s.outcome = quote.bound_inputs.outcome;
  return s;
}

namespace {

bool quote_supports_statement(const enclave::Quote& q, const ProofStatement& s) {
  return statement_from_quote(q) == s;
}

}  // namespace

Proof TranscriptBackend::prove(const ProofStatement& statement,
                               const Witness& witness) const {
  if (!quote_supports_statement(witness.quote, statement))
    throw Error(Errc::WitnessStatementMismatch,
                "witness quote does not support the statement");
  Proof p;
  p.backend_id = kId;
  std::string body = json{{"quote", witness.quote.to_json()}}.dump();
  p.payload = to_bytes(body);
  // Never emit a proof this backend would itself reject.
  if (!verify(statement, p, {statement.root_of_trust_fingerprint}))
    throw Error(Errc::WitnessStatementMismatch,
                "witness quote does not verify against its own chain");
  return p;
}

bool TranscriptBackend::verify(const ProofStatement& statement,
                               const Proof& proof,
                               const std::vector<Digest>& trusted_roots) const {
  if (proof.backend_id != kId) return false;
  json body = json::parse(to_string(proof.payload), nullptr, false);
  if (body.is_discarded() || !body.contains("quote")) return false;
  enclave::Quote quote;
  try {
    quote = enclave::Quote::from_json(body.at("quote"));
  } catch (const Error&) {
    return false;
  } catch (const json::exception&) {
    return false;
  }

  // The embedded root must be the one the statement names, and that root
  // must be on the caller's trust list.
  Digest root_fp = quote.root_cert.fingerprint();
  if (root_fp != statement.root_of_trust_fingerprint) return false;
  if (std::find(trusted_roots.begin(), trusted_roots.end(), root_fp) ==
      trusted_roots.end())
    return false;
  if (!quote_supports_statement(quote, statement)) return false;
  return enclave::verify_quote(quote, quote.root_cert, statement.measurement,
                               quote.bound_inputs) ==
         enclave::QuoteVerdict::Valid;
}

}  // namespace ssibridge::proof
