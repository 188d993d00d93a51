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

// End-to-end pipeline runs of the CLI binary: keygen -> watermark -> detect,
// forge-ds, claim/clmver, the games dispatcher, and the exit-code contract.

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "mddw/keyio.hpp"

namespace mddw {
namespace {

namespace fs = std::filesystem;

struct CliRunner {
  fs::path dir;

  CliRunner() {
    dir = fs::temp_directory_path() / ("mddw_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(dir);
  }
  ~CliRunner() { fs::remove_all(dir); }

  std::string path(const std::string& name) const { return (dir / name).string(); }

  int run(const std::string& args) const {
    std::string cmd = std::string(MDDW_CLI_PATH) + " " + args + " >" + path("stdout.txt") +
                      " 2>" + path("stderr.txt");
    int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  }

  std::string stdout_text() const {
    std::ifstream in(path("stdout.txt"));
    return std::string(std::istreambuf_iterator<char>(in), {});
  }
};

TEST(Cli, KeygenWatermarkDetectPipeline) {
  CliRunner cli;
  ASSERT_EQ(cli.run("keygen --scheme mdvs --role signer --group test16 --seed 1 --out " +
                    cli.path("signer.json")),
            0);
  for (int i = 0; i < 3; i++) {
    ASSERT_EQ(cli.run("keygen --scheme mdvs --role verifier --group test16 --seed " +
                      std::to_string(10 + i) + " --out " + cli.path("v" + std::to_string(i) + ".json")),
              0);
  }
  // key file shape
  KeyFile k = key_from_json(load_json(cli.path("signer.json")));
  EXPECT_EQ(k.scheme, "mdvs");
  EXPECT_EQ(k.role, "signer");
  EXPECT_FALSE(k.sk.empty());

  std::string dets = cli.path("v0.json") + " " + cli.path("v1.json") + " " + cli.path("v2.json");
  ASSERT_EQ(cli.run("watermark --signer " + cli.path("signer.json") + " --detectors " + dets +
                    " --model mock:seed=5 --n 160 --seed 6 --out " + cli.path("text.json")),
            0);

  // each designated detector accepts; exit code 0 signals detection
  for (int i = 0; i < 3; i++) {
    EXPECT_EQ(cli.run("detect --signer-pub " + cli.path("signer.json") + " --detector " +
                      cli.path("v" + std::to_string(i) + ".json") + " --detectors " + dets +
                      " --text " + cli.path("text.json")),
              0);
  }
  Json out = Json::parse(cli.stdout_text());
  EXPECT_TRUE(out.at("detected").get<bool>());
  EXPECT_EQ(out.at("offset").get<size_t>(), 0u);

  // plain model text: exit code 1, detected=false
  TextFile plain;
  plain.vocab = 64;
  plain.params = WatermarkParams{160, 2, 64, 64, 4096, Backend::mdvs, GroupId::test16};
  MockModel model(ModelConfig{64, 16, 99, 2});
  plain.tokens = model.generate({}, {}, 160);
  save_json(cli.path("plain.json"), text_to_json(plain));
  EXPECT_EQ(cli.run("detect --signer-pub " + cli.path("signer.json") + " --detector " +
                    cli.path("v0.json") + " --detectors " + dets + " --text " + cli.path("plain.json")),
            1);
}

TEST(Cli, SeedMakesWatermarkReproducible) {
  CliRunner cli;
  ASSERT_EQ(cli.run("keygen --scheme mdvs --role signer --group test16 --seed 2 --out " +
                    cli.path("s.json")),
            0);
  ASSERT_EQ(cli.run("keygen --scheme mdvs --role verifier --group test16 --seed 3 --out " +
                    cli.path("v.json")),
            0);
  for (const char* out : {"a.json", "b.json"}) {
    ASSERT_EQ(cli.run("watermark --signer " + cli.path("s.json") + " --detectors " +
                      cli.path("v.json") + " --model mock:seed=4 --n 140 --seed 9 --out " +
                      cli.path(out)),
              0);
  }
  EXPECT_EQ(load_json(cli.path("a.json")), load_json(cli.path("b.json")));
}

TEST(Cli, ForgeDsIsDetected) {
  CliRunner cli;
  ASSERT_EQ(cli.run("keygen --scheme mdvs --role signer --group test16 --seed 1 --out " +
                    cli.path("s.json")),
            0);
  ASSERT_EQ(cli.run("keygen --scheme mdvs --role verifier --group test16 --seed 2 --out " +
                    cli.path("v.json")),
            0);
  ASSERT_EQ(cli.run("forge-ds --signer " + cli.path("s.json") + " --detectors " + cli.path("v.json") +
                    " --model mock:seed=7 --n 140 --seed 8 --out " + cli.path("forged.json")),
            0);
  EXPECT_EQ(cli.run("detect --signer-pub " + cli.path("s.json") + " --detector " + cli.path("v.json") +
                    " --detectors " + cli.path("v.json") + " --text " + cli.path("forged.json")),
            0);
}

TEST(Cli, ClaimRoundTrip) {
  CliRunner cli;
  ASSERT_EQ(cli.run("keygen --scheme cmdvs --role signer --group test16 --seed 1 --out " +
                    cli.path("s.json")),
            0);
  ASSERT_EQ(cli.run("keygen --scheme cmdvs --role verifier --group test16 --seed 2 --out " +
                    cli.path("v.json")),
            0);
  ASSERT_EQ(cli.run("watermark --signer " + cli.path("s.json") + " --detectors " + cli.path("v.json") +
                    " --model mock:seed=3 --n 650 --seed 4 --out " + cli.path("text.json")),
            0);
  ASSERT_EQ(cli.run("claim --signer " + cli.path("s.json") + " --detectors " + cli.path("v.json") +
                    " --text " + cli.path("text.json") + " --out " + cli.path("claim.json")),
            0);
  EXPECT_EQ(cli.run("clmver --signer-pub " + cli.path("s.json") + " --detectors " + cli.path("v.json") +
                    " --text " + cli.path("text.json") + " --claim " + cli.path("claim.json")),
            0);

  // a different signer cannot claim the same text
  ASSERT_EQ(cli.run("keygen --scheme cmdvs --role signer --group test16 --seed 9 --out " +
                    cli.path("other.json")),
            0);
  EXPECT_EQ(cli.run("claim --signer " + cli.path("other.json") + " --detectors " + cli.path("v.json") +
                    " --text " + cli.path("text.json") + " --out " + cli.path("empty.json")),
            1);
}

TEST(Cli, GamesDispatch) {
  CliRunner cli;
  EXPECT_EQ(cli.run("games --suite attempts --trials 300 --seed 5 --out " + cli.path("rep.json")), 0);
  Json rep = load_json(cli.path("rep.json"));
  EXPECT_EQ(rep.at("suite"), "attempts");
  EXPECT_TRUE(rep.at("passed").get<bool>());
}

TEST(Cli, BenchEmitsTimings) {
  CliRunner cli;
  ASSERT_EQ(cli.run("bench --scheme mdvs --group test16 --model mock:seed=1 --n 140 --trials 2 "
                    "--seed 3"),
            0);
  Json j = Json::parse(cli.stdout_text());
  EXPECT_EQ(j.at("scheme"), "mdvs");
  EXPECT_EQ(j.at("trials"), 2);
  EXPECT_GT(j.at("generation_ms_per_text").get<double>(), 0.0);
  EXPECT_GT(j.at("detection_ms_per_text").get<double>(), 0.0);
  EXPECT_GT(j.at("generation_overhead_factor").get<double>(), 0.0);
}

TEST(Cli, ExitCodes) {
  CliRunner cli;
  EXPECT_EQ(cli.run("no-such-command"), 2);
  EXPECT_EQ(cli.run("keygen --scheme mdvs --role nonsense --out " + cli.path("k.json")), 2);
  EXPECT_EQ(cli.run("detect --signer-pub /does/not/exist.json --text /nope.json"), 3);
  // dvs keys only exist on the pairing group
  EXPECT_EQ(cli.run("keygen --scheme dvs --role signer --group test16 --out " + cli.path("d.json")),
            2);
}

}  // namespace
}  // namespace mddw
