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

#include <map>
#include <string>

#include "mddw/stats.hpp"
#include "mddw/watermark.hpp"

namespace mddw {

// Desk-scale, fully seeded versions of the security experiments. Adversaries
// are scripted strategies: random texts, bigram-avoiding splices, crops,
// bit mutations, key-swap claims. Every suite regenerates honest keys from
// the seed and uses only public library APIs.
enum class Suite {
  completeness,
  consistency,
  soundness,
  robustness,
  otr,
  distortion,
  claim,
  attempts,
};

inline std::string to_string(Suite s) {
  switch (s) {
    case Suite::completeness: return "completeness";
    case Suite::consistency: return "consistency";
    case Suite::soundness: return "soundness";
    case Suite::robustness: return "robustness";
    case Suite::otr: return "otr";
    case Suite::distortion: return "distortion";
    case Suite::claim: return "claim";
    case Suite::attempts: return "attempts";
  }
  throw Error("bad suite");
}

inline Suite suite_from_string(const std::string& s) {
  for (Suite v : {Suite::completeness, Suite::consistency, Suite::soundness, Suite::robustness,
                  Suite::otr, Suite::distortion, Suite::claim, Suite::attempts})
    if (to_string(v) == s) return v;
  throw DecodeError("unknown suite: " + s);
}

struct GameReport {
  std::string suite;
  size_t trials = 0;
  size_t failures = 0;
  uint64_t seed = 0;
  std::map<std::string, double> stats;

  bool passed() const { return failures == 0; }
};

namespace games_detail {

struct HonestSetup {
  WatermarkParams params;
  MdvsSigner signer;
  std::vector<MdvsDetector> detectors;
  std::vector<Scalar> vsks;
  ModelConfig model_cfg;
};

// Standard fixture: test16 MDVS, |S| designated detectors, mock model with
// V = 64 and alpha = ell * log2(k_cand) bits of per-block min-entropy.
inline HonestSetup make_setup(Rng& rng, size_t n, size_t n_detectors = 3, uint32_t k_cand = 16) {
  const Group& G = Group::get(GroupId::test16);
  HonestSetup s;
  s.params = WatermarkParams{n, 2, mdvs_sig_bits(G), 64, 4096, Backend::mdvs, GroupId::test16};
  auto kp = mdvs_keygen(G, rng);
  s.signer.ssk = kp.sk;
  s.signer.spk = kp.pk;
  for (size_t j = 0; j < n_detectors; j++) {
    auto vk = mdvs_keygen(G, rng);
    s.signer.vpks.push_back(vk.pk);
    s.vsks.push_back(vk.sk);
  }
  for (size_t j = 0; j < n_detectors; j++)
    s.detectors.push_back(MdvsDetector{s.signer.spk, s.vsks[j], s.signer.vpks});
  s.model_cfg = ModelConfig{64, k_cand, rng.u64(), 2};
  return s;
}

inline TokenSeq random_prompt(Rng& rng, uint32_t vocab) {
  TokenSeq p(4);
  for (auto& t : p) t = static_cast<Token>(rng.below(vocab));
  return p;
}

inline TokenSeq random_text(Rng& rng, size_t len, uint32_t vocab) {
  TokenSeq t(len);
  for (auto& x : t) x = static_cast<Token>(rng.below(vocab));
  return t;
}

// Adversarial splice: walk over tokens drawn from the corpus while never
// reproducing a corpus bigram. Avoiding all bigrams rules out any shared
// window of length >= 2, so the output satisfies NOLap_k for every k >= 2.
inline TokenSeq nolap_splice(Rng& rng, const std::vector<TokenSeq>& corpus, size_t len,
                             uint32_t vocab) {
  std::unordered_set<uint64_t> bigrams;
  TokenSeq pool;
  for (const auto& text : corpus) {
    for (size_t i = 0; i + 1 < text.size(); i++)
      bigrams.insert(static_cast<uint64_t>(text[i]) << 32 | text[i + 1]);
    pool.insert(pool.end(), text.begin(), text.end());
  }
  if (pool.empty()) return random_text(rng, len, vocab);

  TokenSeq out;
  out.push_back(pool[rng.below(pool.size())]);
  while (out.size() < len) {
    Token prev = out.back();
    bool placed = false;
    for (int tries = 0; tries < 64 && !placed; tries++) {
      Token cand = tries < 32 ? pool[rng.below(pool.size())]
                              : static_cast<Token>(rng.below(vocab));
      if (!bigrams.contains(static_cast<uint64_t>(prev) << 32 | cand)) {
        out.push_back(cand);
        placed = true;
      }
    }
    if (!placed) {
      // every sampled successor collided; scan the vocabulary
      for (Token cand = 0; cand < vocab && !placed; cand++) {
        if (!bigrams.contains(static_cast<uint64_t>(prev) << 32 | cand)) {
          out.push_back(cand);
          placed = true;
        }
      }
      if (!placed) out.back() = pool[rng.below(pool.size())];  // dead end; re-pick
    }
  }
  return out;
}

inline size_t scalar_bin(const Group& G, const Scalar& s, size_t bins) {
  mpz_class v = s.v * bins / G.order();
  return static_cast<size_t>(v.get_ui());
}

}  // namespace games_detail

inline GameReport run_suite(Suite suite, size_t trials, uint64_t seed) {
  using namespace games_detail;
  GameReport rep;
  rep.suite = to_string(suite);
  rep.trials = trials;
  rep.seed = seed;
  Rng rng(seed);
  const Group& G16 = Group::get(GroupId::test16);

  switch (suite) {
    case Suite::completeness: {
      // Fresh keys per trial; every designated detector must accept.
      for (size_t i = 0; i < trials; i++) {
        auto s = make_setup(rng, 160);
        MockModel model(s.model_cfg);
        auto prompt = random_prompt(rng, s.params.vocab);
        Rng sig_rng = rng.fork("sign");
        TokenSeq text = watmar(s.params, s.signer, model, prompt, sig_rng);
        for (const auto& det : s.detectors)
          if (!detect(s.params, det, text).detected) rep.failures++;
      }
      break;
    }

    case Suite::consistency: {
      auto s = make_setup(rng, 160);
      size_t splits = 0;
      for (size_t i = 0; i < trials; i++) {
        TokenSeq cand;
        switch (i % 3) {
          case 0:
            cand = random_text(rng, 160, s.params.vocab);
            break;
          case 1: {
            MockModel model(ModelConfig{64, 16, rng.u64(), 2});
            auto prompt = random_prompt(rng, s.params.vocab);
            Rng sig_rng = rng.fork("sign");
            cand = watmar(s.params, s.signer, model, prompt, sig_rng);
            // mutate one token of one carrier block
            size_t pos = rng.below(cand.size());
            cand[pos] = static_cast<Token>((cand[pos] + 1 + rng.below(62)) % 64);
            break;
          }
          default: {
            MockModel model(ModelConfig{64, 16, rng.u64(), 2});
            auto prompt = random_prompt(rng, s.params.vocab);
            Rng sig_rng = rng.fork("sign");
            TokenSeq text = watmar(s.params, s.signer, model, prompt, sig_rng);
            size_t len = s.params.watermark_tokens() + rng.below(20);
            size_t start = rng.below(text.size() - len + 1);
            cand.assign(text.begin() + start, text.begin() + start + len);
            break;
          }
        }
        bool first = detect(s.params, s.detectors[0], cand).detected;
        for (size_t j = 1; j < s.detectors.size(); j++)
          if (detect(s.params, s.detectors[j], cand).detected != first) splits++;
      }
      rep.failures = splits;
      break;
    }

    case Suite::soundness: {
      auto s = make_setup(rng, 160);
      std::vector<TokenSeq> corpus;
      for (int i = 0; i < 8; i++) {
        MockModel model(ModelConfig{64, 16, rng.u64(), 2});
        auto prompt = random_prompt(rng, s.params.vocab);
        Rng sig_rng = rng.fork("sign");
        corpus.push_back(watmar(s.params, s.signer, model, prompt, sig_rng));
      }
      // Minimal watermark-bearing length: exactly one detection offset per
      // candidate. See FORMATS.md on the residual 1/q accept rate.
      size_t cand_len = s.params.watermark_tokens();
      size_t detections = 0;
      for (size_t i = 0; i < trials; i++) {
        TokenSeq cand;
        if (i % 2 == 0) {
          cand = random_text(rng, cand_len, s.params.vocab);
        } else {
          cand = nolap_splice(rng, corpus, cand_len, s.params.vocab);
          if (!nolap_k(s.params.ell, cand, corpus)) {
            rep.failures++;  // splice construction must respect NOLap
            continue;
          }
        }
        for (const auto& det : s.detectors)
          if (detect(s.params, det, cand).detected) detections++;
      }
      rep.failures += detections;
      rep.stats["detections"] = static_cast<double>(detections);
      break;
    }

    case Suite::robustness: {
      auto s = make_setup(rng, 300);  // two watermarks plus padding
      size_t window = (2 * s.params.len_sig + 2) * s.params.ell;
      std::vector<TokenSeq> pool;
      for (size_t i = 0; i < (trials + 4) / 5; i++) {
        MockModel model(ModelConfig{64, 16, rng.u64(), 2});
        auto prompt = random_prompt(rng, s.params.vocab);
        Rng sig_rng = rng.fork("sign");
        WatmarStats st;
        TokenSeq text = watmar(s.params, s.signer, model, prompt, sig_rng, &st);
        if (st.watermarks < 2) throw Error("robustness fixture needs >= 2 watermarks");
        pool.push_back(std::move(text));
      }
      for (size_t i = 0; i < trials; i++) {
        const TokenSeq& text = pool[rng.below(pool.size())];
        size_t start = rng.below(text.size() - window + 1);
        TokenSeq crop(text.begin() + start, text.begin() + start + window);
        for (const auto& det : s.detectors)
          if (!detect(s.params, det, crop).detected) rep.failures++;
      }
      break;
    }

    case Suite::otr: {
      auto s = make_setup(rng, 160);
      MdvsForger forger{s.signer.spk, s.vsks};

      // (1) forged texts must be accepted by every designated detector
      for (size_t i = 0; i < trials; i++) {
        MockModel model(ModelConfig{64, 16, rng.u64(), 2});
        auto prompt = random_prompt(rng, s.params.vocab);
        Rng f_rng = rng.fork("forge");
        TokenSeq text = forge_ds(s.params, forger, model, prompt, f_rng);
        for (const auto& det : s.detectors)
          if (!detect(s.params, det, text).detected) rep.failures++;
      }

      // (2) component marginals of Sign vs FgeDS, chi-square uniformity
      size_t samples = 50 * trials;
      constexpr size_t kBins = 16;
      std::vector<std::vector<size_t>> sign_bins(4, std::vector<size_t>(kBins, 0));
      std::vector<std::vector<size_t>> fge_bins(4, std::vector<size_t>(kBins, 0));
      Bytes msg = from_string("otr-marginals");
      for (size_t i = 0; i < samples; i++) {
        MdvsSignature a = mdvs_sign(G16, s.signer.ssk, s.signer.spk, s.signer.vpks, msg, rng);
        MdvsSignature b = mdvs_fge_ds(G16, s.signer.spk, s.vsks, msg, rng);
        const Scalar* sa[4] = {&a.c1, &a.c2, &a.z1, &a.z2};
        const Scalar* sb[4] = {&b.c1, &b.c2, &b.z1, &b.z2};
        for (int c = 0; c < 4; c++) {
          sign_bins[c][scalar_bin(G16, *sa[c], kBins)]++;
          fge_bins[c][scalar_bin(G16, *sb[c], kBins)]++;
        }
      }
      double min_p = 1.0;
      for (int c = 0; c < 4; c++) {
        min_p = std::min(min_p, chi_square_uniform_p(sign_bins[c]));
        min_p = std::min(min_p, chi_square_uniform_p(fge_bins[c]));
      }
      rep.stats["marginals_min_p"] = min_p;
      if (min_p <= 0.01) rep.failures++;

      // (3) token statistics of honest vs forged corpora
      size_t want_tokens = 1000 * trials;
      std::vector<size_t> honest_counts(64, 0), forged_counts(64, 0);
      auto fill = [&](std::vector<size_t>& counts, bool forged) {
        size_t have = 0;
        while (have < want_tokens) {
          MockModel model(ModelConfig{64, 16, rng.u64(), 2});
          auto prompt = random_prompt(rng, 64);
          Rng t_rng = rng.fork(forged ? "tok-forge" : "tok-sign");
          TokenSeq text = forged ? forge_ds(s.params, forger, model, prompt, t_rng)
                                 : watmar(s.params, s.signer, model, prompt, t_rng);
          for (Token t : text) counts[t]++;
          have += text.size();
        }
      };
      fill(honest_counts, false);
      fill(forged_counts, true);
      double tok_p = chi_square_two_sample_p(honest_counts, forged_counts);
      rep.stats["token_stats_p"] = tok_p;
      if (tok_p <= 0.01) rep.failures++;
      break;
    }

    case Suite::distortion: {
      // Uniform mock model (k_cand = V): watermarked vs plain token marginals.
      auto s = make_setup(rng, 160, 3, 64);
      size_t want_tokens = 1000 * trials;
      std::vector<size_t> marked(64, 0), plain(64, 0);
      size_t have = 0;
      while (have < want_tokens) {
        MockModel model(ModelConfig{64, 64, rng.u64(), 2});
        auto prompt = random_prompt(rng, 64);
        Rng sig_rng = rng.fork("sign");
        TokenSeq text = watmar(s.params, s.signer, model, prompt, sig_rng);
        for (Token t : text) marked[t]++;
        have += text.size();
      }
      have = 0;
      while (have < want_tokens) {
        MockModel model(ModelConfig{64, 64, rng.u64(), 2});
        auto prompt = random_prompt(rng, 64);
        TokenSeq text = model.generate(prompt, {}, 160);
        for (Token t : text) plain[t]++;
        have += text.size();
      }
      double p = chi_square_two_sample_p(marked, plain);
      rep.stats["token_stats_p"] = p;
      if (p <= 0.01) rep.failures++;
      break;
    }

    case Suite::claim: {
      WatermarkParams params{650, 2, cmdvs_sig_bits(G16), 64, 4096, Backend::cmdvs, GroupId::test16};
      CmdvsSignerKey alice = cmdvs_keygen(G16, rng);
      CmdvsSignerKey bob = cmdvs_keygen(G16, rng);
      std::vector<GroupElem> vpks;
      for (int j = 0; j < 3; j++) vpks.push_back(cmdvs_verkeygen(G16, rng).pk);
      CmdvsSigner signer{alice, vpks};

      size_t bogus_accepts = 0;
      for (size_t i = 0; i < trials; i++) {
        MockModel model(ModelConfig{64, 16, rng.u64(), 2});
        auto prompt = random_prompt(rng, 64);
        Rng sig_rng = rng.fork("sign");
        TokenSeq text = watmar(params, signer, model, prompt, sig_rng);

        TextClaimProof mine = claim_text(params, alice, vpks, text);
        if (mine.proofs.empty() || !clmver_text(params, alice.pub, vpks, text, mine)) rep.failures++;

        TextClaimProof foreign = claim_text(params, bob, vpks, text);
        if (!foreign.proofs.empty()) rep.failures++;

        // random and forged proofs against this text: random bytes, the
        // honest proof reframed for the wrong signer, shifted slots, and
        // clobbered openings
        for (int k = 0; k < 10; k++) {
          TextClaimProof bogus = mine;
          const CmdvsPublicKey* claimant = &alice.pub;
          switch (k % 4) {
            case 0: {
              CmdvsClaim c{rng.bytes(32),
                           SchnorrSig{G16.rand_scalar_nonzero(rng), G16.rand_scalar_nonzero(rng)}};
              bogus.proofs.assign(1, TextClaimSlot{0, std::move(c)});
              claimant = &bob.pub;
              break;
            }
            case 1:
              claimant = &bob.pub;  // framing: honest proof, wrong signer
              break;
            case 2:
              if (!bogus.proofs.empty()) bogus.proofs[0].offset += params.ell;
              break;
            default:
              if (!bogus.proofs.empty()) bogus.proofs[0].claim.r_commit = rng.bytes(32);
              break;
          }
          if (clmver_text(params, *claimant, vpks, text, bogus)) bogus_accepts++;
        }
      }
      rep.failures += bogus_accepts;
      rep.stats["bogus_accepts"] = static_cast<double>(bogus_accepts);
      break;
    }

    case Suite::attempts: {
      auto s = make_setup(rng, 160);
      WatmarStats st;
      while (st.carrier_blocks < trials) {
        MockModel model(ModelConfig{64, 16, rng.u64(), 2});
        auto prompt = random_prompt(rng, 64);
        Rng sig_rng = rng.fork("sign");
        (void)watmar(s.params, s.signer, model, prompt, sig_rng, &st);
      }
      double mean = static_cast<double>(st.attempts) / static_cast<double>(st.carrier_blocks);
      rep.stats["mean_attempts"] = mean;
      rep.stats["carrier_blocks"] = static_cast<double>(st.carrier_blocks);
      rep.trials = st.carrier_blocks;
      if (mean < 1.9 || mean > 2.1) rep.failures++;
      break;
    }
  }
  return rep;
}

}  // namespace mddw
