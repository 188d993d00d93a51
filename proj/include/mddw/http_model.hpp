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

#include <httplib.h>

#include <nlohmann/json.hpp>
#include <string>

#include "mddw/model.hpp"

namespace mddw {

// GenModel against a live completion endpoint. The wire protocol is
// normative (FORMATS.md): request {"prompt":[ints],"context":[ints],
// "num_tokens":n}, response {"tokens":[ints]} with exactly n tokens in
// [0, vocab).
class HttpModel : public Model {
 public:
  HttpModel(std::string url, uint32_t vocab, int timeout_ms = 5000, int retries = 0)
      : vocab_(vocab), retries_(retries) {
    auto pos = url.find("://");
    if (pos != std::string::npos) url = url.substr(pos + 3);
    auto slash = url.find('/');
    host_ = url.substr(0, slash);
    path_ = slash == std::string::npos ? "/" : url.substr(slash);
    timeout_ms_ = timeout_ms;
  }

  uint32_t vocab() const override { return vocab_; }

  TokenSeq generate(TokenView prompt, TokenView context, size_t n_tokens) override {
    nlohmann::json req{{"prompt", TokenSeq(prompt.begin(), prompt.end())},
                       {"context", TokenSeq(context.begin(), context.end())},
                       {"num_tokens", n_tokens}};
    std::string body = req.dump();

    httplib::Result res;
    for (int attempt = 0; attempt <= retries_; attempt++) {
      httplib::Client cli(std::string("http://") + host_);
      cli.set_connection_timeout(0, timeout_ms_ * 1000);
      cli.set_read_timeout(timeout_ms_ / 1000, timeout_ms_ % 1000 * 1000);
      res = cli.Post(path_, body, "application/json");
      if (res) break;
    }
    if (!res) throw TransportError("model endpoint unreachable: " + host_);
    if (res->status != 200)
      throw BadResponseError("model endpoint returned status " + std::to_string(res->status));

    nlohmann::json resp = nlohmann::json::parse(res->body, nullptr, false);
    if (resp.is_discarded() || !resp.contains("tokens") || !resp["tokens"].is_array())
      throw BadResponseError("malformed model response");
    TokenSeq out;
    for (const auto& v : resp["tokens"]) {
      if (!v.is_number_unsigned()) throw BadResponseError("non-integer token in response");
      uint64_t t = v.get<uint64_t>();
      if (t >= vocab_) throw TokenOutOfRange("token >= vocab size in model response");
      out.push_back(static_cast<Token>(t));
    }
    if (out.size() != n_tokens) throw BadResponseError("model returned wrong token count");
    return out;
  }

 private:
  std::string host_, path_;
  uint32_t vocab_;
  int timeout_ms_;
  int retries_;
};

}  // namespace mddw
