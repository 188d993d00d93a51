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

#include <optional>
#include <unordered_set>
#include <variant>

#include "mddw/bls.hpp"
#include "mddw/cmdvs.hpp"
#include "mddw/dvs.hpp"
#include "mddw/model.hpp"

namespace mddw {

// The watermark engine. One watermark is an anchor block of ell tokens
// whose H1 digest gets signed, followed by len_sig carrier blocks of ell
// tokens, each rejection-sampled until its H3 bit equals the next signature
// bit. Four signer backends:
//
//   mdvs  - MDVS signature, XOR-masked with H2(anchor)
//   cmdvs - claimable MDVS (inner signature + commitment), XOR-masked
//   ddw   - DVS scheme with context-derived r, raw pseudorandom bits (no XOR)
//   pdw   - publicly detectable BLS baseline, raw bits (no XOR, detection
//           needs only the public key, hence not distortion-free)
enum class Backend { mdvs, cmdvs, ddw, pdw };

inline std::string to_string(Backend b) {
  switch (b) {
    case Backend::mdvs: return "mdvs";
    case Backend::cmdvs: return "cmdvs";
    case Backend::ddw: return "ddw";
    case Backend::pdw: return "pdw";
  }
  throw Error("bad backend");
}

inline Backend backend_from_string(const std::string& s) {
  if (s == "mdvs") return Backend::mdvs;
  if (s == "cmdvs") return Backend::cmdvs;
  if (s == "ddw") return Backend::ddw;
  if (s == "pdw") return Backend::pdw;
  throw DecodeError("unknown backend: " + s);
}

struct WatermarkParams {
  size_t n = 160;         // target output length in tokens
  size_t ell = 2;         // block length
  size_t len_sig = 64;    // signature bit length; derived from backend/group
  uint32_t vocab = 64;
  size_t max_attempts = 4096;
  Backend backend = Backend::mdvs;
  GroupId group = GroupId::test16;

  size_t watermark_tokens() const { return (len_sig + 1) * ell; }
};

// ---- signer / detector bundles, one per backend ----

struct MdvsSigner {
  Scalar ssk;
  GroupElem spk;
  std::vector<GroupElem> vpks;
};
struct CmdvsSigner {
  CmdvsSignerKey key;
  std::vector<GroupElem> vpks;
};
struct DdwSigner {
  Scalar ssk;
  GroupElem vpk;
  size_t l_bits = kDvsProdBits;
};
struct PdwSigner {
  Scalar sk;
  size_t l_bits = kBlsDefaultBits;
};
using SignerBundle = std::variant<MdvsSigner, CmdvsSigner, DdwSigner, PdwSigner>;

struct MdvsDetector {
  GroupElem spk;
  Scalar vsk;
  std::vector<GroupElem> vpks;
};
struct CmdvsDetector {
  CmdvsPublicKey spk;
  Scalar vsk;
  std::vector<GroupElem> vpks;
};
struct DdwDetector {
  GroupElem spk;
  Scalar vsk;
  size_t l_bits = kDvsProdBits;
};
struct PdwDetector {
  GroupElem pk;  // detection needs only the public key
  size_t l_bits = kBlsDefaultBits;
};
using DetectorBundle = std::variant<MdvsDetector, CmdvsDetector, DdwDetector, PdwDetector>;

// Designated-set forging inputs (signer public key + all detector secrets).
struct MdvsForger {
  GroupElem spk;
  std::vector<Scalar> vsks;
};
struct CmdvsForger {
  CmdvsPublicKey spk;
  std::vector<Scalar> vsks;
};
using ForgerBundle = std::variant<MdvsForger, CmdvsForger>;

struct DetectResult {
  bool detected = false;
  std::optional<size_t> offset;
  Backend backend = Backend::mdvs;
};

// Instrumentation for the rejection-sampling profiler and layout tests.
struct WatmarStats {
  size_t watermarks = 0;
  size_t carrier_blocks = 0;
  size_t attempts = 0;
  std::vector<size_t> offsets;  // anchor offset of each embedded watermark
};

inline const Group& backend_group(const WatermarkParams& p) { return Group::get(p.group); }

inline size_t backend_len_sig(const Group& G, const SignerBundle& signer) {
  return std::visit(
      [&](const auto& s) -> size_t {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, MdvsSigner>) return mdvs_sig_bits(G);
        else if constexpr (std::is_same_v<T, CmdvsSigner>) return cmdvs_sig_bits(G);
        else return s.l_bits;
      },
      signer);
}

inline bool backend_uses_xor(Backend b) { return b == Backend::mdvs || b == Backend::cmdvs; }

namespace detail {

inline void check_params(const WatermarkParams& p, Backend expected) {
  if (p.ell == 0) throw Error("ell must be positive");
  if (p.backend != expected) throw BackendUnsupported("bundle does not match params.backend");
}

inline BitString sign_watermark(const Group& G, const WatermarkParams& p, const SignerBundle& signer,
                                BytesView msg, TokenView anchor, Rng& rng) {
  return std::visit(
      [&](const auto& s) -> BitString {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, MdvsSigner>) {
          return mdvs_sig_to_bits(G, mdvs_sign(G, s.ssk, s.spk, s.vpks, msg, rng));
        } else if constexpr (std::is_same_v<T, CmdvsSigner>) {
          return cmdvs_sig_to_bits(G, cmdvs_sign(G, s.key, s.vpks, msg, rng));
        } else if constexpr (std::is_same_v<T, DdwSigner>) {
          Bytes ctx = encode_tokens(anchor);
          return dvs_sign(G, s.ssk, s.vpk, msg, DvsMode::s_only, ctx, rng, s.l_bits).s;
        } else {
          (void)anchor;
          return bls_sign(G, s.sk, msg, s.l_bits).s;
        }
      },
      signer);
}

inline bool verify_watermark(const Group& G, const DetectorBundle& det, BytesView msg,
                             const BitString& bits, TokenView anchor) {
  return std::visit(
      [&](const auto& d) -> bool {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, MdvsDetector>) {
          MdvsSignature sig;
          try {
            sig = mdvs_bits_to_sig(G, bits);
          } catch (const DecodeError&) {
            return false;
          }
          return mdvs_verify(G, d.spk, d.vsk, d.vpks, msg, sig);
        } else if constexpr (std::is_same_v<T, CmdvsDetector>) {
          CmdvsSignature sig;
          try {
            sig = cmdvs_bits_to_sig(G, bits);
          } catch (const DecodeError&) {
            return false;
          }
          return cmdvs_verify(G, d.spk, d.vsk, d.vpks, msg, sig);
        } else if constexpr (std::is_same_v<T, DdwDetector>) {
          Bytes ctx = encode_tokens(anchor);
          return dvs_verify(G, d.spk, d.vsk, msg, DvsSig{std::nullopt, bits}, DvsMode::s_only, ctx);
        } else {
          return bls_verify(G, d.pk, msg, BlsSig{bits});
        }
      },
      det);
}

inline size_t detector_len_sig(const Group& G, const DetectorBundle& det) {
  return std::visit(
      [&](const auto& d) -> size_t {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, MdvsDetector>) return mdvs_sig_bits(G);
        else if constexpr (std::is_same_v<T, CmdvsDetector>) return cmdvs_sig_bits(G);
        else return d.l_bits;
      },
      det);
}

// Shared embedding loop; `sign` maps (msg, anchor) to signature bits.
template <typename SignFn>
TokenSeq watmar_loop(const WatermarkParams& p, Model& model, TokenView prompt, SignFn&& sign,
                     bool use_xor, WatmarStats* stats) {
  TokenSeq t;
  while (t.size() + p.ell + p.ell * p.len_sig < p.n) {
    TokenSeq anchor = model.generate(prompt, t, p.ell);
    t.insert(t.end(), anchor.begin(), anchor.end());
    Bytes msg = h1_message(anchor, p.ell);
    BitString sig = sign(msg, anchor);
    if (sig.size() != p.len_sig) throw Error("backend signature length does not match len_sig");
    if (use_xor) sig.xor_with(h2_mask(anchor, p.ell, p.len_sig));

    if (stats) {
      stats->watermarks++;
      stats->offsets.push_back(t.size() - p.ell);
    }

    BitString sigma_prev;
    TokenSeq m;
    for (size_t i = 0; i < sig.size(); i++) {
      uint8_t target = sig[i];
      TokenSeq x;
      size_t attempts = 0;
      for (;;) {
        if (++attempts > p.max_attempts)
          throw LowEntropyModel("rejection sampling exceeded max_attempts");
        x = model.generate(prompt, t, p.ell);
        TokenSeq m_with_x = m;
        m_with_x.insert(m_with_x.end(), x.begin(), x.end());
        if (h3_bit(m_with_x, sigma_prev) == target) break;
      }
      m.insert(m.end(), x.begin(), x.end());
      t.insert(t.end(), x.begin(), x.end());
      sigma_prev.push_back(target);
      if (stats) {
        stats->carrier_blocks++;
        stats->attempts += attempts;
      }
    }
  }
  if (t.size() < p.n) {
    TokenSeq pad = model.generate(prompt, t, p.n - t.size());
    t.insert(t.end(), pad.begin(), pad.end());
  }
  return t;
}

// Chain-extract len_sig bits starting at offset mu (anchor at mu).
inline BitString extract_bits(const WatermarkParams& p, TokenView tokens, size_t mu) {
  BitString sigma;
  TokenSeq m;
  m.reserve(p.len_sig * p.ell);
  for (size_t phi = 1; phi <= p.len_sig; phi++) {
    size_t start = mu + phi * p.ell;
    m.insert(m.end(), tokens.begin() + start, tokens.begin() + start + p.ell);
    sigma.push_back(h3_bit(m, sigma));
  }
  if (backend_uses_xor(p.backend)) sigma.xor_with(h2_mask(tokens.subspan(mu, p.ell), p.ell, p.len_sig));
  return sigma;
}

}  // namespace detail

inline TokenSeq watmar(const WatermarkParams& p, const SignerBundle& signer, Model& model,
                       TokenView prompt, Rng& rng, WatmarStats* stats = nullptr) {
  const Group& G = backend_group(p);
  if (backend_len_sig(G, signer) != p.len_sig)
    throw Error("params.len_sig does not match the backend signature length");
  Backend want = static_cast<Backend>(signer.index());
  detail::check_params(p, want);
  auto sign = [&](BytesView msg, TokenView anchor) {
    return detail::sign_watermark(G, p, signer, msg, anchor, rng);
  };
  return detail::watmar_loop(p, model, prompt, sign, backend_uses_xor(p.backend), stats);
}

// Scan every offset of the candidate (its actual length, not the configured
// n); report the first offset whose extracted signature verifies.
inline DetectResult detect(const WatermarkParams& p, const DetectorBundle& det, TokenView tokens) {
  const Group& G = backend_group(p);
  if (detail::detector_len_sig(G, det) != p.len_sig)
    throw Error("params.len_sig does not match the detector bundle");
  for (Token t : tokens)
    if (t >= p.vocab) throw TokenOutOfRange("token >= vocab size");

  DetectResult res;
  res.backend = p.backend;
  size_t W = p.watermark_tokens();
  if (tokens.size() < W) return res;
  for (size_t mu = 0; mu + W <= tokens.size(); mu++) {
    TokenView anchor = tokens.subspan(mu, p.ell);
    Bytes msg = h1_message(anchor, p.ell);
    BitString bits = detail::extract_bits(p, tokens, mu);
    if (detail::verify_watermark(G, det, msg, bits, anchor)) {
      res.detected = true;
      res.offset = mu;
      return res;
    }
  }
  return res;
}

// Designated-set forging: the watermark loop with the joint MDVS forgery as
// the signer. Only the XOR backends have a designated set to forge for; the
// single-key ddw analogue lives in dvs_forge_by_verifier.
inline TokenSeq forge_ds(const WatermarkParams& p, const ForgerBundle& forger, Model& model,
                         TokenView prompt, Rng& rng, WatmarStats* stats = nullptr) {
  if (p.backend == Backend::ddw || p.backend == Backend::pdw)
    throw BackendUnsupported("forge_ds supports the mdvs and cmdvs backends only");
  const Group& G = backend_group(p);

  return std::visit(
      [&](const auto& f) -> TokenSeq {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, MdvsForger>) {
          detail::check_params(p, Backend::mdvs);
          if (mdvs_sig_bits(G) != p.len_sig) throw Error("len_sig mismatch");
          auto sign = [&](BytesView msg, TokenView) {
            return mdvs_sig_to_bits(G, mdvs_fge_ds(G, f.spk, f.vsks, msg, rng));
          };
          return detail::watmar_loop(p, model, prompt, sign, true, stats);
        } else {
          detail::check_params(p, Backend::cmdvs);
          if (cmdvs_sig_bits(G) != p.len_sig) throw Error("len_sig mismatch");
          auto sign = [&](BytesView msg, TokenView) {
            MdvsSignature inner = mdvs_fge_ds(G, f.spk.spk_mdvs, f.vsks, msg, rng);
            // The forgers cannot open anyone's commitment; a random one is
            // indistinguishable and verification never reads it.
            CmdvsSignature sig{inner, Commitment{rng.bytes(32)}};
            return cmdvs_sig_to_bits(G, sig);
          };
          return detail::watmar_loop(p, model, prompt, sign, true, stats);
        }
      },
      forger);
}

// Off-the-record for any subset has no concrete MDVS instantiation here;
// the generic wrapper is kept behind this interface and exercised with a
// stand-in forger in tests.
struct AnySubsetForger {
  virtual ~AnySubsetForger() = default;
  virtual MdvsSignature forge(const Group& G, const GroupElem& spk,
                              const std::vector<GroupElem>& vpks,
                              const std::vector<Scalar>& subset_vsks, BytesView msg) = 0;
};

inline TokenSeq forge_as(const WatermarkParams& p, const GroupElem& spk,
                         const std::vector<GroupElem>& vpks, const std::vector<Scalar>& subset_vsks,
                         AnySubsetForger& forger, Model& model, TokenView prompt,
                         WatmarStats* stats = nullptr) {
  detail::check_params(p, Backend::mdvs);
  const Group& G = backend_group(p);
  if (mdvs_sig_bits(G) != p.len_sig) throw Error("len_sig mismatch");
  auto sign = [&](BytesView msg, TokenView) {
    return mdvs_sig_to_bits(G, forger.forge(G, spk, vpks, subset_vsks, msg));
  };
  return detail::watmar_loop(p, model, prompt, sign, true, stats);
}

// ---- text claiming (cmdvs backend) ----

struct TextClaimSlot {
  size_t offset = 0;
  CmdvsClaim claim;
};

struct TextClaimProof {
  std::vector<TextClaimSlot> proofs;
};

// Walk aligned watermark slots with constant stride (len_sig+1)*ell and try
// to claim each extracted signature; slots this signer did not produce
// contribute nothing.
inline TextClaimProof claim_text(const WatermarkParams& p, const CmdvsSignerKey& key,
                                 const std::vector<GroupElem>& vpks, TokenView tokens) {
  detail::check_params(p, Backend::cmdvs);
  const Group& G = backend_group(p);
  if (cmdvs_sig_bits(G) != p.len_sig) throw Error("len_sig mismatch");
  TextClaimProof proof;
  size_t W = p.watermark_tokens();
  for (size_t mu = 0; mu + W <= tokens.size(); mu += W) {
    BitString bits = detail::extract_bits(p, tokens, mu);
    CmdvsSignature sig;
    try {
      sig = cmdvs_bits_to_sig(G, bits);
    } catch (const DecodeError&) {
      continue;
    }
    auto claim = cmdvs_claim(G, key, vpks, sig);
    if (claim) proof.proofs.push_back(TextClaimSlot{mu, std::move(*claim)});
  }
  return proof;
}

inline bool clmver_text(const WatermarkParams& p, const CmdvsPublicKey& spk,
                        const std::vector<GroupElem>& vpks, TokenView tokens,
                        const TextClaimProof& proof) {
  detail::check_params(p, Backend::cmdvs);
  const Group& G = backend_group(p);
  if (cmdvs_sig_bits(G) != p.len_sig) throw Error("len_sig mismatch");
  size_t W = p.watermark_tokens();
  for (const auto& slot : proof.proofs) {
    if (slot.offset + W > tokens.size()) continue;
    BitString bits = detail::extract_bits(p, tokens, slot.offset);
    CmdvsSignature sig;
    try {
      sig = cmdvs_bits_to_sig(G, bits);
    } catch (const DecodeError&) {
      continue;
    }
    if (cmdvs_clm_ver(G, spk, vpks, sig, slot.claim)) return true;
  }
  return false;
}

// ---- NOLap predicate ----

// True iff no k-token contiguous window of `candidate` appears contiguously
// in any corpus text. Rolling polynomial hash with bytewise confirmation.
inline bool nolap_k(size_t k, TokenView candidate, const std::vector<TokenSeq>& corpus) {
  if (k == 0) throw Error("nolap_k requires k >= 1");
  if (candidate.size() < k) return true;

  constexpr uint64_t kMul = 0x9e3779b97f4a7c15ull;
  auto mix = [](uint64_t h, Token t) { return (h + t + 1) * kMul; };

  uint64_t top = 1;
  for (size_t i = 0; i + 1 < k; i++) top *= kMul;

  auto window_hashes = [&](TokenView text) {
    std::vector<uint64_t> hs;
    if (text.size() < k) return hs;
    // Rabin-Karp style: h = sum_{j} (t_j + 1) * kMul^{k-j}
    uint64_t h = 0;
    for (size_t j = 0; j < k; j++) h = mix(h, text[j]);
    hs.push_back(h);
    for (size_t j = k; j < text.size(); j++) {
      h -= (text[j - k] + 1) * top * kMul;
      h = mix(h, text[j]);
      hs.push_back(h);
    }
    return hs;
  };

  std::unordered_set<uint64_t> cand_hashes;
  auto ch = window_hashes(candidate);
  cand_hashes.insert(ch.begin(), ch.end());

  for (const auto& text : corpus) {
    auto th = window_hashes(text);
    for (size_t j = 0; j < th.size(); j++) {
      if (!cand_hashes.contains(th[j])) continue;
      // hash hit: confirm against every candidate window
      for (size_t i = 0; i + k <= candidate.size(); i++) {
        if (ch[i] != th[j]) continue;
        bool same = true;
        for (size_t l = 0; l < k && same; l++) same = candidate[i + l] == text[j + l];
        if (same) return false;
      }
    }
  }
  return true;
}

inline bool nolap_k(size_t k, TokenView candidate, TokenView single) {
  return nolap_k(k, candidate, std::vector<TokenSeq>{TokenSeq(single.begin(), single.end())});
}

}  // namespace mddw
