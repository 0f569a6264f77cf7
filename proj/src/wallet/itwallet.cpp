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

#include "ssibridge/wallet/itwallet.hpp"

#include "ssibridge/error.hpp"

namespace ssibridge::wallet {

void SimItWallet::store_credential(const std::string& cred_id,
                                   const SdJwtVc& cred) {
  credentials_[cred_id] = cred.compact_form();
}

SdJwtVc SimItWallet::export_credential(const std::string& cred_id) const {
  if (!eid_session_)
    throw Error(Errc::NotAuthenticated, "eID session required for export");
  auto it = credentials_.find(cred_id);
  if (it == credentials_.end()) throw Error(Errc::UnknownCredential, cred_id);
  return SdJwtVc::parse(it->second);
}

std::vector<std::string> SimItWallet::credential_ids() const {
  std::vector<std::string> ids;
  for (const auto& [id, c] : credentials_) ids.push_back(id);
  return ids;
}

json SimItWallet::to_json() const {
  return json{{"holder_id", holder_id_},
              {"eid_session", eid_session_},
              {"credentials", credentials_}};
}

SimItWallet SimItWallet::from_json(const json& j) {
  SimItWallet w(j.at("holder_id").get<std::string>());
  w.eid_session_ = j.at("eid_session").get<bool>();
  w.credentials_ =
      j.at("credentials").get<std::map<std::string, std::string>>();
  return w;
}

}  // namespace ssibridge::wallet
