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

// Regenerates tests/golden/golden.json, the byte-exact interop anchors for
// the oracles, encodings, and signature schemes. Run from anywhere:
//
//   mddw-gen-golden [output-path]

#include <iostream>

#include "mddw/keyio.hpp"

using namespace mddw;

int main(int argc, char** argv) {
  std::string out_path = argc > 1 ? argv[1] : "tests/golden/golden.json";
  Json j;

  // ---- raw XOF framing ----
  j["xof"] = Json::array();
  for (auto& [tag, msg, len] : std::vector<std::tuple<std::string, std::string, size_t>>{
           {"MDDW/H1", "", 32}, {"MDDW/H2", "00ff10", 16}, {"MDDW/PRF", "6d657373616765", 32}}) {
    Bytes m = from_hex(msg);
    j["xof"].push_back(Json{{"tag", tag}, {"msg", msg}, {"out_len", len}, {"digest", to_hex(xof(tag, m, len))}});
  }

  // ---- token codec and oracles ----
  TokenSeq block{3, 60};
  TokenSeq longer{3, 60, 0, 17};
  j["encode_tokens"] = Json{{"tokens", longer}, {"bytes", to_hex(encode_tokens(longer))}};
  j["h1"] = Json{{"tokens", block}, {"ell", 2}, {"digest", to_hex(h1_message(block, 2))}};
  j["h2"] = Json{{"tokens", block},
                 {"ell", 2},
                 {"bits", 64},
                 {"packed", to_hex(h2_mask(block, 2, 64).to_packed())}};
  BitString sigma_prev;
  sigma_prev.push_back(1);
  sigma_prev.push_back(0);
  sigma_prev.push_back(1);
  j["h3"] = Json{{"m", longer}, {"sigma_prev", "101"}, {"bit", h3_bit(longer, sigma_prev)}};

  PrfKey key{from_hex("000102030405060708090a0b0c0d0e0f101112131415161718191a1b1c1d1e1f")};
  Bytes prf_in = from_string("prf input");
  j["prf"] = Json{{"key", to_hex(key.key)}, {"input", to_hex(prf_in)}, {"out", to_hex(prf_eval(key, prf_in))}};

  Bytes com_r = from_hex("202122232425262728292a2b2c2d2e2f303132333435363738393a3b3c3d3e3f");
  Bytes com_msg = from_string("commitment body");
  j["commit"] = Json{{"msg", to_hex(com_msg)}, {"r", to_hex(com_r)}, {"com", to_hex(commit(com_msg, com_r).com)}};

  // ---- per-group anchors ----
  j["groups"] = Json::object();
  for (GroupId id : {GroupId::toy23, GroupId::test16, GroupId::prod128}) {
    const Group& G = Group::get(id);
    Bytes msg = from_string("group anchor");
    Json g{{"scalar_bytes", G.scalar_bytes()},
           {"elem_bytes", G.elem_bytes()},
           {"generator", to_hex(G.encode(G.generator()))},
           {"identity", to_hex(G.encode(G.identity()))},
           {"hash_to_scalar", to_hex(G.s_encode(G.hash_to_scalar("MDDW/GOLD", msg)))},
           {"hash_to_group", to_hex(G.encode(G.hash_to_group("MDDW/GOLD", msg)))}};
    if (G.pairing_available()) {
      g["gt_bytes"] = G.params().gt_bytes;
      g["pair_gg"] = to_hex(G.gt_encode(G.pair(G.generator(), G.generator())));
    }
    j["groups"][to_string(id)] = g;
  }

  // ---- Schnorr: fully deterministic given (sk, msg, rand32) ----
  {
    const Group& G = Group::get(GroupId::test16);
    Scalar sk = G.s_decode(from_hex("1234"));
    Bytes msg = from_string("schnorr message");
    Bytes rand32 = from_hex("404142434445464748494a4b4c4d4e4f505152535455565758595a5b5c5d5e5f");
    SchnorrSig sig = schnorr_sign(G, sk, msg, rand32);
    j["schnorr"] = Json{{"group", "test16"},
                        {"sk", to_hex(G.s_encode(sk))},
                        {"pk", to_hex(G.encode(G.exp(G.generator(), sk)))},
                        {"msg", to_hex(msg)},
                        {"rand", to_hex(rand32)},
                        {"sig", to_hex(schnorr_sig_encode(G, sig))}};
  }

  // ---- MDVS: serialization vector plus a frozen verifying instance ----
  {
    const Group& G = Group::get(GroupId::test16);
    MdvsSignature fixed{G.s_from_u64(0x0102), G.s_from_u64(0x0304), G.s_from_u64(0x0506),
                        G.s_from_u64(0x0708)};
    j["mdvs_serialization"] =
        Json{{"group", "test16"}, {"bytes", to_hex(mdvs_sig_encode(G, fixed))}};

    Rng rng(987654321);
    auto kp = mdvs_keygen(G, rng);
    std::vector<Scalar> vsks;
    std::vector<GroupElem> vpks;
    for (int i = 0; i < 3; i++) {
      auto v = mdvs_keygen(G, rng);
      vsks.push_back(v.sk);
      vpks.push_back(v.pk);
    }
    Bytes msg = from_string("mdvs frozen instance");
    MdvsSignature sig = mdvs_sign(G, kp.sk, kp.pk, vpks, msg, rng);
    Json vk = Json::array();
    for (size_t i = 0; i < vsks.size(); i++)
      vk.push_back(Json{{"sk", to_hex(G.s_encode(vsks[i]))}, {"pk", to_hex(G.encode(vpks[i]))}});
    j["mdvs_instance"] = Json{{"group", "test16"},
                              {"spk", to_hex(G.encode(kp.pk))},
                              {"verifiers", vk},
                              {"msg", to_hex(msg)},
                              {"sig", to_hex(mdvs_sig_encode(G, sig))}};
  }

  // ---- CMDVS: frozen signature plus claim ----
  {
    const Group& G = Group::get(GroupId::test16);
    Rng rng(24681012);
    CmdvsSignerKey key = cmdvs_keygen(G, rng);
    std::vector<Scalar> vsks;
    std::vector<GroupElem> vpks;
    for (int i = 0; i < 2; i++) {
      auto v = cmdvs_verkeygen(G, rng);
      vsks.push_back(v.sk);
      vpks.push_back(v.pk);
    }
    Bytes msg = from_string("cmdvs frozen instance");
    CmdvsSignature sig = cmdvs_sign(G, key, vpks, msg, rng);
    auto claim = cmdvs_claim(G, key, vpks, sig);
    Json vk = Json::array();
    for (size_t i = 0; i < vsks.size(); i++)
      vk.push_back(Json{{"sk", to_hex(G.s_encode(vsks[i]))}, {"pk", to_hex(G.encode(vpks[i]))}});
    j["cmdvs_instance"] = Json{{"group", "test16"},
                               {"spk_sig", to_hex(G.encode(key.pub.spk_sig))},
                               {"spk_mdvs", to_hex(G.encode(key.pub.spk_mdvs))},
                               {"verifiers", vk},
                               {"msg", to_hex(msg)},
                               {"sig", to_hex(cmdvs_sig_encode(G, sig))},
                               {"claim_r", to_hex(claim->r_commit)},
                               {"claim_sig", to_hex(schnorr_sig_encode(G, claim->sigma_sig))}};
  }

  // ---- DVS scheme III (deterministic) and BLS ----
  {
    const Group& G = Group::get(GroupId::prod128);
    Scalar ssk = G.hash_to_scalar("MDDW/GOLD", from_string("dvs signer"));
    Scalar vsk = G.hash_to_scalar("MDDW/GOLD", from_string("dvs verifier"));
    GroupElem spk = G.exp(G.generator(), ssk);
    GroupElem vpk = G.exp(G.generator(), vsk);
    Bytes msg = from_string("dvs message");
    Bytes ctx = from_string("dvs context");
    Rng rng(0);
    DvsSig sig = dvs_sign(G, ssk, vpk, msg, DvsMode::s_only, ctx, rng, 16);
    j["dvs"] = Json{{"group", "prod128"},
                    {"ssk", to_hex(G.s_encode(ssk))},
                    {"vsk", to_hex(G.s_encode(vsk))},
                    {"spk", to_hex(G.encode(spk))},
                    {"vpk", to_hex(G.encode(vpk))},
                    {"msg", to_hex(msg)},
                    {"ctx", to_hex(ctx)},
                    {"l", 16},
                    {"s", to_hex(sig.s.to_packed())}};

    Scalar bls_sk = G.hash_to_scalar("MDDW/GOLD", from_string("bls signer"));
    BlsSig bls = bls_sign(G, bls_sk, msg, 128);
    j["bls"] = Json{{"group", "prod128"},
                    {"sk", to_hex(G.s_encode(bls_sk))},
                    {"pk", to_hex(G.encode(G.exp(G.generator(), bls_sk)))},
                    {"msg", to_hex(msg)},
                    {"l", 128},
                    {"s", to_hex(bls.s.to_packed())}};
  }

  save_json(out_path, j);
  std::cerr << "golden vectors written to " << out_path << "\n";
  return 0;
}
