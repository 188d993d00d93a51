// Copyright 2026 The mddw Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <fstream>
#include <nlohmann/json.hpp>
#include <string>

#include "mddw/games.hpp"
#include "mddw/watermark.hpp"

namespace mddw {

using Json = nlohmann::json;

// Key files. All schemes share {"scheme","group","role","sk","pk"}; cmdvs
// signers additionally carry the PRF key and the Schnorr pair. Schemas in
// FORMATS.md.
struct KeyFile {
  std::string scheme;  // mdvs | cmdvs | dvs | pdw
  GroupId group = GroupId::test16;
  std::string role;  // signer | verifier
  Bytes sk;          // scalar encoding; may be empty for public-only files
  Bytes pk;          // group element encoding
  Bytes prf_key;     // cmdvs signer
  Bytes sig_sk;      // cmdvs signer (Schnorr secret)
  Bytes sig_pk;      // cmdvs signer (Schnorr public)
};

inline Json key_to_json(const KeyFile& k) {
  Json j{{"scheme", k.scheme},
         {"group", to_string(k.group)},
         {"role", k.role},
         {"sk", to_hex(k.sk)},
         {"pk", to_hex(k.pk)}};
  if (!k.prf_key.empty()) j["prf_key"] = to_hex(k.prf_key);
  if (!k.sig_sk.empty()) j["sig_sk"] = to_hex(k.sig_sk);
  if (!k.sig_pk.empty()) j["sig_pk"] = to_hex(k.sig_pk);
  return j;
}

inline KeyFile key_from_json(const Json& j) {
  KeyFile k;
  k.scheme = j.at("scheme").get<std::string>();
  k.group = group_id_from_string(j.at("group").get<std::string>());
  k.role = j.at("role").get<std::string>();
  k.sk = from_hex(j.at("sk").get<std::string>());
  k.pk = from_hex(j.at("pk").get<std::string>());
  if (j.contains("prf_key")) k.prf_key = from_hex(j["prf_key"].get<std::string>());
  if (j.contains("sig_sk")) k.sig_sk = from_hex(j["sig_sk"].get<std::string>());
  if (j.contains("sig_pk")) k.sig_pk = from_hex(j["sig_pk"].get<std::string>());
  return k;
}

// Watermarked-text files.
struct TextFile {
  uint32_t vocab = 64;
  WatermarkParams params;
  TokenSeq tokens;
};

inline Json text_to_json(const TextFile& t) {
  return Json{{"vocab", t.vocab},
              {"params",
               {{"n", t.params.n},
                {"ell", t.params.ell},
                {"len_sig", t.params.len_sig},
                {"backend", to_string(t.params.backend)},
                {"group", to_string(t.params.group)}}},
              {"tokens", t.tokens}};
}

inline TextFile text_from_json(const Json& j) {
  TextFile t;
  t.vocab = j.at("vocab").get<uint32_t>();
  const Json& p = j.at("params");
  t.params.n = p.at("n").get<size_t>();
  t.params.ell = p.at("ell").get<size_t>();
  t.params.len_sig = p.at("len_sig").get<size_t>();
  t.params.backend = backend_from_string(p.at("backend").get<std::string>());
  t.params.group = group_id_from_string(p.at("group").get<std::string>());
  t.params.vocab = t.vocab;
  t.tokens = j.at("tokens").get<TokenSeq>();
  for (Token tok : t.tokens)
    if (tok >= t.vocab) throw TokenOutOfRange("token >= vocab in text file");
  return t;
}

// Claim-proof files.
inline Json claim_to_json(const Group& G, const TextClaimProof& proof) {
  Json arr = Json::array();
  for (const auto& slot : proof.proofs) {
    arr.push_back(Json{{"offset", slot.offset},
                       {"r_commit", to_hex(slot.claim.r_commit)},
                       {"sigma_sig", to_hex(schnorr_sig_encode(G, slot.claim.sigma_sig))}});
  }
  return Json{{"proofs", arr}};
}

inline TextClaimProof claim_from_json(const Group& G, const Json& j) {
  TextClaimProof proof;
  for (const auto& e : j.at("proofs")) {
    TextClaimSlot slot;
    slot.offset = e.at("offset").get<size_t>();
    slot.claim.r_commit = from_hex(e.at("r_commit").get<std::string>());
    slot.claim.sigma_sig = schnorr_sig_decode(G, from_hex(e.at("sigma_sig").get<std::string>()));
    proof.proofs.push_back(std::move(slot));
  }
  return proof;
}

inline Json report_to_json(const GameReport& r) {
  Json stats = Json::object();
  for (const auto& [k, v] : r.stats) stats[k] = v;
  return Json{{"suite", r.suite},
              {"trials", r.trials},
              {"failures", r.failures},
              {"seed", r.seed},
              {"passed", r.passed()},
              {"stats", stats}};
}

inline Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  Json j = Json::parse(in, nullptr, false);
  if (j.is_discarded()) throw DecodeError("invalid JSON in " + path);
  return j;
}

inline void save_json(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << j.dump(2) << "\n";
}

}  // namespace mddw
