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

#include <memory>
#include <string>

#include "mddw/oracles.hpp"
#include "mddw/rng.hpp"

namespace mddw {

// Auto-regressive token model. generate() must draw fresh samples on every
// call, including repeated calls with identical (prompt, context): the
// rejection loop in the watermark embedder depends on that. An instance
// serves one generation stream at a time.
class Model {
 public:
  virtual ~Model() = default;
  virtual TokenSeq generate(TokenView prompt, TokenView context, size_t n_tokens) = 0;
  virtual uint32_t vocab() const = 0;
};

struct ModelConfig {
  uint32_t vocab = 64;
  uint32_t k_cand = 16;  // candidate set size; per-block min-entropy is block_len*log2(k_cand)
  uint64_t seed = 0;
  uint32_t block_len = 2;
};

// Seeded mock model. Each token is drawn uniformly from a candidate set of
// k_cand distinct tokens derived deterministically from (seed, prompt,
// context): candidate sets are reproducible across instances with the same
// seed, while the samples come from a separate stream and are fresh on every
// call.
class MockModel : public Model {
 public:
  explicit MockModel(const ModelConfig& cfg)
      : cfg_(cfg), stream_(make_stream_seed(cfg.seed)) {
    if (cfg.k_cand < 2 || cfg.k_cand > cfg.vocab)
      throw Error("mock model requires 2 <= k_cand <= vocab");
  }

  uint32_t vocab() const override { return cfg_.vocab; }

  TokenSeq generate(TokenView prompt, TokenView context, size_t n_tokens) override {
    TokenSeq out;
    out.reserve(n_tokens);
    TokenSeq ctx(context.begin(), context.end());
    for (size_t i = 0; i < n_tokens; i++) {
      TokenSeq cands = candidate_set(prompt, ctx);
      out.push_back(cands[stream_.below(cfg_.k_cand)]);
      ctx.push_back(out.back());
    }
    return out;
  }

  // Deterministic in (seed, prompt, context); exposed for the min-entropy
  // property tests.
  TokenSeq candidate_set(TokenView prompt, TokenView context) const {
    Bytes frame;
    append_u64be(frame, cfg_.seed);
    append(frame, encode_tokens(prompt));
    append(frame, encode_tokens(context));
    frame.resize(frame.size() + 4);

    TokenSeq cands;
    cands.reserve(cfg_.k_cand);
    uint64_t lim = (uint64_t(1) << 32) / cfg_.vocab * cfg_.vocab;
    for (uint32_t ctr = 0; cands.size() < cfg_.k_cand; ctr++) {
      for (int j = 0; j < 4; j++) frame[frame.size() - 4 + j] = static_cast<uint8_t>(ctr >> (24 - 8 * j));
      Bytes block = xof(kTagMock, frame, 256);
      for (size_t off = 0; off + 4 <= block.size() && cands.size() < cfg_.k_cand; off += 4) {
        uint64_t w = 0;
        for (int j = 0; j < 4; j++) w = w << 8 | block[off + j];
        if (w >= lim) continue;
        Token t = static_cast<Token>(w % cfg_.vocab);
        bool dup = false;
        for (Token c : cands) dup = dup || c == t;
        if (!dup) cands.push_back(t);
      }
    }
    return cands;
  }

 private:
  static Bytes make_stream_seed(uint64_t seed) {
    Bytes in;
    append_u64be(in, seed);
    return xof("MDDW/MOCK/STREAM", in, 32);
  }

  ModelConfig cfg_;
  Rng stream_;
};

// Adapter for an external completion endpoint speaking the wire protocol
//   POST <path>  {"prompt":[...],"context":[...],"num_tokens":n}
//   200          {"tokens":[...]}
// Declared here, implemented in mddw/http_model.hpp to keep the HTTP and
// JSON dependencies out of the core headers.
class HttpModel;

inline std::unique_ptr<Model> make_mock_model(const ModelConfig& cfg) {
  return std::make_unique<MockModel>(cfg);
}

}  // namespace mddw
