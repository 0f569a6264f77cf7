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

#include "ssibridge/sd_jwt.hpp"

namespace ssibridge::wallet {

// Stand-in for the government wallet app: credentials live in its internal
// store and can only be exported after an eID login. Export hands over the
// byte-identical compact form.
class SimItWallet {
 public:
  explicit SimItWallet(std::string holder_id)
      : holder_id_(std::move(holder_id)) {}

  const std::string& holder_id() const { return holder_id_; }

  void login() { eid_session_ = true; }
  void logout() { eid_session_ = false; }
  bool authenticated() const { return eid_session_; }

  void store_credential(const std::string& cred_id, const SdJwtVc& cred);
  SdJwtVc export_credential(const std::string& cred_id) const;
  std::vector<std::string> credential_ids() const;

  json to_json() const;
  static SimItWallet from_json(const json& j);

 private:
  std::string holder_id_;
  bool eid_session_ = false;
  std::map<std::string, std::string> credentials_;  // id -> compact form
};

}  // namespace ssibridge::wallet
