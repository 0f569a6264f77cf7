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

#include "ssibridge/enclave/quote.hpp"

#include <algorithm>

#include "ssibridge/error.hpp"

namespace ssibridge::enclave {

Bytes Quote::signed_bytes() const {
  Bytes msg;
  msg.insert(msg.end(), measurement.bytes.begin(), measurement.bytes.end());
  msg.insert(msg.end(), report_data.begin(), report_data.end());
  put_u64be(msg, timestamp);
  return msg;
}

json Quote::to_json() const {
  return json{{"simulated", true},
              {"measurement", measurement.hex()},
              {"report_data", b64url_encode(report_data)},
              {"timestamp", timestamp},
              {"signature", b64url_encode(signature)},
              {"platform_cert", platform_cert.to_json()},
              {"root_cert", root_cert.to_json()},
              {"bound_inputs", bound_inputs.to_json()}};
}

Quote Quote::from_json(const json& j) {
  if (!j.value("simulated", false))
    throw Error(Errc::MalformedEncoding,
                "quote without the simulated marker is not acceptable here");
  Quote q;
  q.measurement = Digest::from_hex(j.at("measurement").get<std::string>());
  Bytes rd = b64url_decode(j.at("report_data").get<std::string>());
  if (rd.size() != 64)
    throw Error(Errc::MalformedEncoding, "report_data must be 64 bytes");
  std::copy(rd.begin(), rd.end(), q.report_data.begin());
  q.timestamp = j.at("timestamp").get<uint64_t>();
  q.signature = b64url_decode(j.at("signature").get<std::string>());
  q.platform_cert = Cert::from_json(j.at("platform_cert"));
  q.root_cert = Cert::from_json(j.at("root_cert"));
  q.bound_inputs = PublicInputs::from_json(j.at("bound_inputs"));
  return q;
}

bool Quote::report_data_matches(const PublicInputs& inputs) const {
  Digest d = inputs.digest();
  if (!std::equal(d.bytes.begin(), d.bytes.end(), report_data.begin()))
    return false;
  return std::all_of(report_data.begin() + 32, report_data.end(),
                     [](uint8_t b) { return b == 0; });
}

Quote make_quote(const Platform& platform, const Digest& measurement,
                 const PublicInputs& inputs, uint64_t timestamp) {
  Quote q;
  q.measurement = measurement;
  Digest input_digest = inputs.digest();
  std::copy(input_digest.bytes.begin(), input_digest.bytes.end(),
            q.report_data.begin());  // upper 32 bytes stay zero
  q.timestamp = timestamp;
  q.signature = platform.attestation_sign(q.signed_bytes());
  q.platform_cert = platform.platform_cert();
  q.root_cert = platform.root_cert();
  q.bound_inputs = inputs;
  return q;
}

std::string_view quote_verdict_name(QuoteVerdict v) {
  switch (v) {
    case QuoteVerdict::Valid: return "Valid";
    case QuoteVerdict::RootMismatch: return "RootMismatch";
    case QuoteVerdict::BadSignature: return "BadSignature";
    case QuoteVerdict::MeasurementMismatch: return "MeasurementMismatch";
    case QuoteVerdict::InputsMismatch: return "InputsMismatch";
  }
  return "?";
}

QuoteVerdict verify_quote(const Quote& q, const Cert& trusted_root,
                          const Digest& expected_measurement,
                          const PublicInputs& expected_inputs) {
  if (q.root_cert.fingerprint() != trusted_root.fingerprint())
    return QuoteVerdict::RootMismatch;
  // The chain is checked against the trusted copy, not the embedded one.
  if (!trusted_root.verify_signed_by(trusted_root.subject_key))
    return QuoteVerdict::BadSignature;
  if (!q.platform_cert.verify_signed_by(trusted_root.subject_key))
    return QuoteVerdict::BadSignature;
  if (!verify_bytes(q.platform_cert.subject_key, q.signed_bytes(), q.signature))
    return QuoteVerdict::BadSignature;
  if (q.measurement != expected_measurement)
    return QuoteVerdict::MeasurementMismatch;
  if (!q.report_data_matches(expected_inputs))
    return QuoteVerdict::InputsMismatch;
  return QuoteVerdict::Valid;
}

}  // namespace ssibridge::enclave
