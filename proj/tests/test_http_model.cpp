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

#include <gtest/gtest.h>

#include <thread>

#include "mddw/http_model.hpp"
#include "mddw/keyio.hpp"

namespace mddw {
namespace {

// In-process stub endpoint speaking the completion wire protocol.
class StubServer {
 public:
  enum class Mode { echo_fixed, short_reply, out_of_range };

  StubServer() {
    server_.Post("/complete", [this](const httplib::Request& req, httplib::Response& res) {
      Json body = Json::parse(req.body, nullptr, false);
      ASSERT_FALSE(body.is_discarded());
      last_prompt_ = body.at("prompt").get<TokenSeq>();
      last_context_ = body.at("context").get<TokenSeq>();
      size_t n = body.at("num_tokens").get<size_t>();
      TokenSeq out;
      switch (mode_) {
        case Mode::echo_fixed:
          for (size_t i = 0; i < n; i++) out.push_back(static_cast<Token>(i % 7));
          break;
        case Mode::short_reply:
          for (size_t i = 0; i + 1 < n; i++) out.push_back(1);
          break;
        case Mode::out_of_range:
          out.assign(n, 9999);
          break;
      }
      res.set_content(Json{{"tokens", out}}.dump(), "application/json");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }

  ~StubServer() {
    server_.stop();
    thread_.join();
  }

  std::string url() const { return "http://127.0.0.1:" + std::to_string(port_) + "/complete"; }

  Mode mode_ = Mode::echo_fixed;
  TokenSeq last_prompt_, last_context_;

 private:
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
};

TEST(HttpModel, PassThroughAndRequestShape) {
  StubServer stub;
  HttpModel model(stub.url(), 64);
  TokenSeq prompt{1, 2, 3};
  TokenSeq context{4, 5};
  TokenSeq out = model.generate(prompt, context, 4);
  EXPECT_EQ(out, (TokenSeq{0, 1, 2, 3}));
  EXPECT_EQ(stub.last_prompt_, prompt);
  EXPECT_EQ(stub.last_context_, context);
}

TEST(HttpModel, ShortReplyIsBadResponse) {
  StubServer stub;
  stub.mode_ = StubServer::Mode::short_reply;
  HttpModel model(stub.url(), 64);
  EXPECT_THROW((void)model.generate({}, {}, 3), BadResponseError);
}

TEST(HttpModel, OutOfRangeToken) {
  StubServer stub;
  stub.mode_ = StubServer::Mode::out_of_range;
  HttpModel model(stub.url(), 64);
  EXPECT_THROW((void)model.generate({}, {}, 2), TokenOutOfRange);
}

TEST(HttpModel, UnreachableEndpoint) {
  HttpModel model("http://127.0.0.1:1/complete", 64, 200);
  EXPECT_THROW((void)model.generate({}, {}, 2), TransportError);
}

}  // namespace
}  // namespace mddw
