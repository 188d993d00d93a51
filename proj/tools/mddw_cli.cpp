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

#include <CLI11.hpp>
#include <chrono>
#include <iostream>

#include "mddw/http_model.hpp"
#include "mddw/keyio.hpp"

// Exit codes: 0 success (and "detected" for detect/clmver), 1 not detected /
// claim rejected, 2 usage or configuration error, 3 I/O or transport error.
namespace {

using namespace mddw;

constexpr int kExitDetected = 0;
constexpr int kExitNotDetected = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct ConfigError : Error {
  using Error::Error;
};

// "mock:seed=7,V=64,k=16" or "http://host:port/path"
std::unique_ptr<Model> make_model(const std::string& spec, uint32_t vocab, size_t ell,
                                  int timeout_ms, int retries) {
  if (spec.rfind("http:", 0) == 0 || spec.rfind("https:", 0) == 0)
    return std::make_unique<HttpModel>(spec, vocab, timeout_ms, retries);
  if (spec.rfind("mock", 0) != 0) throw ConfigError("unknown model spec: " + spec);
  ModelConfig cfg;
  cfg.vocab = vocab;
  cfg.block_len = static_cast<uint32_t>(ell);
  auto rest = spec.find(':') == std::string::npos ? "" : spec.substr(spec.find(':') + 1);
  std::stringstream ss(rest);
  std::string kv;
  while (std::getline(ss, kv, ',')) {
    auto eq = kv.find('=');
    if (eq == std::string::npos) throw ConfigError("bad model option: " + kv);
    std::string key = kv.substr(0, eq), val = kv.substr(eq + 1);
    if (key == "seed") cfg.seed = std::stoull(val);
    else if (key == "V") cfg.vocab = static_cast<uint32_t>(std::stoul(val));
    else if (key == "k") cfg.k_cand = static_cast<uint32_t>(std::stoul(val));
    else throw ConfigError("unknown model option: " + key);
  }
  if (cfg.vocab != vocab) throw ConfigError("model vocab differs from --vocab");
  return std::make_unique<MockModel>(cfg);
}

TokenSeq parse_prompt(const std::string& csv, uint32_t vocab) {
  TokenSeq out;
  if (csv.empty()) return out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    unsigned long v = std::stoul(item);
    if (v >= vocab) throw ConfigError("prompt token >= vocab");
    out.push_back(static_cast<Token>(v));
  }
  return out;
}

KeyFile load_key(const std::string& path) { return key_from_json(load_json(path)); }

std::vector<GroupElem> load_detector_pubs(const Group& G, const std::vector<std::string>& paths) {
  std::vector<GroupElem> vpks;
  for (const auto& p : paths) {
    KeyFile k = load_key(p);
    if (k.group != G.id()) throw ConfigError("detector key group mismatch: " + p);
    vpks.push_back(G.decode(k.pk));
  }
  return vpks;
}

size_t scheme_len_sig(const Group& G, const std::string& scheme, size_t sig_bits) {
  if (scheme == "mdvs") return mdvs_sig_bits(G);
  if (scheme == "cmdvs") return cmdvs_sig_bits(G);
  if (scheme == "dvs" || scheme == "pdw") return sig_bits;
  throw ConfigError("unknown scheme: " + scheme);
}

Backend scheme_backend(const std::string& scheme) {
  if (scheme == "mdvs") return Backend::mdvs;
  if (scheme == "cmdvs") return Backend::cmdvs;
  if (scheme == "dvs") return Backend::ddw;
  if (scheme == "pdw") return Backend::pdw;
  throw ConfigError("unknown scheme: " + scheme);
}

int cmd_keygen(const std::string& scheme, const std::string& role, GroupId group,
               uint64_t seed, bool seeded, const std::string& out) {
  const Group& G = Group::get(group);
  Rng rng = seeded ? Rng(seed) : Rng::from_entropy();
  KeyFile k;
  k.scheme = scheme;
  k.group = group;
  k.role = role;
  if ((scheme == "dvs" || scheme == "pdw") && !G.pairing_available())
    throw ConfigError(scheme + " requires the pairing group prod128");
  if (scheme == "cmdvs" && role == "signer") {
    CmdvsSignerKey key = cmdvs_keygen(G, rng);
    k.sk = G.s_encode(key.ssk_mdvs);
    k.pk = G.encode(key.pub.spk_mdvs);
    k.prf_key = key.k.key;
    k.sig_sk = G.s_encode(key.ssk_sig);
    k.sig_pk = G.encode(key.pub.spk_sig);
  } else {
    auto kp = mdvs_keygen(G, rng);  // all schemes use (sk, g^sk) pairs
    k.sk = G.s_encode(kp.sk);
    k.pk = G.encode(kp.pk);
  }
  save_json(out, key_to_json(k));
  std::cerr << "wrote " << scheme << " " << role << " key (" << to_string(group) << ") to " << out
            << "\n";
  return 0;
}

CmdvsSignerKey cmdvs_key_from_file(const Group& G, const KeyFile& k) {
  if (k.prf_key.empty() || k.sig_sk.empty()) throw ConfigError("key file is not a cmdvs signer key");
  CmdvsSignerKey key;
  key.k = PrfKey{k.prf_key};
  key.ssk_sig = G.s_decode(k.sig_sk);
  key.ssk_mdvs = G.s_decode(k.sk);
  key.pub = CmdvsPublicKey{G.decode(k.sig_pk), G.decode(k.pk)};
  return key;
}

struct CommonParams {
  std::string signer_path;
  std::vector<std::string> detector_paths;
  std::string model_spec = "mock:seed=1";
  std::string prompt_csv;
  size_t n = 160;
  size_t ell = 2;
  uint32_t vocab = 64;
  size_t sig_bits = 0;  // ddw/pdw signature bits; defaults per group
  uint64_t seed = 0;
  bool seeded = false;
  int timeout_ms = 5000;
  int retries = 0;
};

WatermarkParams build_params(const Group& G, const std::string& scheme, const CommonParams& c) {
  size_t sig_bits = c.sig_bits;
  if (sig_bits == 0) sig_bits = G.id() == GroupId::prod128 ? kDvsProdBits : kDvsTestBits;
  if (scheme == "pdw" && c.sig_bits == 0) sig_bits = kBlsDefaultBits;
  WatermarkParams p;
  p.n = c.n;
  p.ell = c.ell;
  p.vocab = c.vocab;
  p.backend = scheme_backend(scheme);
  p.group = G.id();
  p.len_sig = scheme_len_sig(G, scheme, sig_bits);
  return p;
}

int cmd_watermark(const CommonParams& c, const std::string& out, bool forge) {
  KeyFile signer_key = load_key(c.signer_path);
  const Group& G = Group::get(signer_key.group);
  WatermarkParams params = build_params(G, signer_key.scheme, c);
  auto model = make_model(c.model_spec, c.vocab, c.ell, c.timeout_ms, c.retries);
  TokenSeq prompt = parse_prompt(c.prompt_csv, c.vocab);
  Rng rng = c.seeded ? Rng(c.seed) : Rng::from_entropy();

  TokenSeq text;
  if (forge) {
    // detector key files must carry secrets here
    std::vector<Scalar> vsks;
    for (const auto& p : c.detector_paths) {
      KeyFile k = load_key(p);
      if (k.sk.empty()) throw ConfigError("forge-ds needs detector secret keys");
      vsks.push_back(G.s_decode(k.sk));
    }
    if (signer_key.scheme == "mdvs") {
      MdvsForger f{G.decode(signer_key.pk), vsks};
      text = forge_ds(params, f, *model, prompt, rng);
    } else if (signer_key.scheme == "cmdvs") {
      CmdvsForger f{CmdvsPublicKey{G.decode(signer_key.sig_pk), G.decode(signer_key.pk)}, vsks};
      text = forge_ds(params, f, *model, prompt, rng);
    } else {
      throw ConfigError("forge-ds supports mdvs and cmdvs signers");
    }
  } else {
    std::vector<GroupElem> vpks = load_detector_pubs(G, c.detector_paths);
    if (signer_key.scheme == "mdvs") {
      MdvsSigner s{G.s_decode(signer_key.sk), G.decode(signer_key.pk), vpks};
      text = watmar(params, s, *model, prompt, rng);
    } else if (signer_key.scheme == "cmdvs") {
      CmdvsSigner s{cmdvs_key_from_file(G, signer_key), vpks};
      text = watmar(params, s, *model, prompt, rng);
    } else if (signer_key.scheme == "dvs") {
      if (vpks.size() != 1) throw ConfigError("ddw takes exactly one designated detector");
      DdwSigner s{G.s_decode(signer_key.sk), vpks[0], params.len_sig};
      text = watmar(params, s, *model, prompt, rng);
    } else if (signer_key.scheme == "pdw") {
      PdwSigner s{G.s_decode(signer_key.sk), params.len_sig};
      text = watmar(params, s, *model, prompt, rng);
    } else {
      throw ConfigError("unknown signer scheme");
    }
  }

  TextFile tf{c.vocab, params, text};
  save_json(out, text_to_json(tf));
  std::cerr << (forge ? "forged" : "watermarked") << " text: " << text.size() << " tokens, "
            << to_string(params.backend) << " backend, written to " << out << "\n";
  return 0;
}

int cmd_detect(const std::string& signer_pub_path, const std::string& detector_path,
               const std::vector<std::string>& detector_paths, const std::string& text_path) {
  KeyFile signer_key = load_key(signer_pub_path);
  const Group& G = Group::get(signer_key.group);
  TextFile tf = text_from_json(load_json(text_path));
  tf.params.vocab = tf.vocab;

  DetectResult res;
  if (signer_key.scheme == "mdvs" || signer_key.scheme == "cmdvs") {
    if (detector_path.empty()) throw ConfigError("detect needs --detector with a secret key");
    KeyFile det_key = load_key(detector_path);
    if (det_key.sk.empty()) throw ConfigError("detector key has no secret");
    std::vector<GroupElem> vpks = load_detector_pubs(G, detector_paths);
    if (signer_key.scheme == "mdvs") {
      MdvsDetector d{G.decode(signer_key.pk), G.s_decode(det_key.sk), vpks};
      res = detect(tf.params, d, tf.tokens);
    } else {
      CmdvsDetector d{CmdvsPublicKey{G.decode(signer_key.sig_pk), G.decode(signer_key.pk)},
                      G.s_decode(det_key.sk), vpks};
      res = detect(tf.params, d, tf.tokens);
    }
  } else if (signer_key.scheme == "dvs") {
    if (detector_path.empty()) throw ConfigError("detect needs --detector with a secret key");
    KeyFile det_key = load_key(detector_path);
    DdwDetector d{G.decode(signer_key.pk), G.s_decode(det_key.sk), tf.params.len_sig};
    res = detect(tf.params, d, tf.tokens);
  } else if (signer_key.scheme == "pdw") {
    PdwDetector d{G.decode(signer_key.pk), tf.params.len_sig};
    res = detect(tf.params, d, tf.tokens);
  } else {
    throw ConfigError("unknown signer scheme");
  }

  Json j{{"detected", res.detected}};
  if (res.offset) j["offset"] = *res.offset;
  std::cout << j.dump() << "\n";
  std::cerr << (res.detected ? "watermark detected" : "no watermark found") << "\n";
  return res.detected ? kExitDetected : kExitNotDetected;
}

int cmd_claim(const std::string& signer_path, const std::vector<std::string>& detector_paths,
              const std::string& text_path, const std::string& out) {
  KeyFile signer_key = load_key(signer_path);
  if (signer_key.scheme != "cmdvs") throw ConfigError("claim needs a cmdvs signer key");
  const Group& G = Group::get(signer_key.group);
  TextFile tf = text_from_json(load_json(text_path));
  tf.params.vocab = tf.vocab;
  std::vector<GroupElem> vpks = load_detector_pubs(G, detector_paths);
  CmdvsSignerKey key = cmdvs_key_from_file(G, signer_key);
  TextClaimProof proof = claim_text(tf.params, key, vpks, tf.tokens);
  save_json(out, claim_to_json(G, proof));
  std::cerr << "claims for " << proof.proofs.size() << " watermark slot(s) written to " << out
            << "\n";
  return proof.proofs.empty() ? kExitNotDetected : kExitDetected;
}

int cmd_clmver(const std::string& signer_pub_path, const std::vector<std::string>& detector_paths,
               const std::string& text_path, const std::string& claim_path) {
  KeyFile signer_key = load_key(signer_pub_path);
  if (signer_key.scheme != "cmdvs") throw ConfigError("clmver needs a cmdvs signer public key");
  const Group& G = Group::get(signer_key.group);
  TextFile tf = text_from_json(load_json(text_path));
  tf.params.vocab = tf.vocab;
  std::vector<GroupElem> vpks = load_detector_pubs(G, detector_paths);
  CmdvsPublicKey pub{G.decode(signer_key.sig_pk), G.decode(signer_key.pk)};
  TextClaimProof proof = claim_from_json(G, load_json(claim_path));
  bool ok = clmver_text(tf.params, pub, vpks, tf.tokens, proof);
  std::cout << Json{{"accepted", ok}}.dump() << "\n";
  std::cerr << (ok ? "claim accepted" : "claim rejected") << "\n";
  return ok ? kExitDetected : kExitNotDetected;
}

int cmd_bench(const std::string& scheme, GroupId group, const CommonParams& c, size_t trials) {
  const Group& G = Group::get(group);
  Rng rng = Rng(c.seeded ? c.seed : 42);
  WatermarkParams params = build_params(G, scheme, c);
  auto model = make_model(c.model_spec, c.vocab, c.ell, c.timeout_ms, c.retries);
  TokenSeq prompt = parse_prompt(c.prompt_csv, c.vocab);

  SignerBundle signer{MdvsSigner{}};
  DetectorBundle det{MdvsDetector{}};
  if (scheme == "mdvs") {
    auto kp = mdvs_keygen(G, rng);
    std::vector<GroupElem> vpks;
    std::vector<Scalar> vsks;
    for (int i = 0; i < 3; i++) {
      auto v = mdvs_keygen(G, rng);
      vpks.push_back(v.pk);
      vsks.push_back(v.sk);
    }
    signer = MdvsSigner{kp.sk, kp.pk, vpks};
    det = MdvsDetector{kp.pk, vsks[0], vpks};
  } else if (scheme == "cmdvs") {
    CmdvsSignerKey key = cmdvs_keygen(G, rng);
    std::vector<GroupElem> vpks;
    std::vector<Scalar> vsks;
    for (int i = 0; i < 3; i++) {
      auto v = cmdvs_verkeygen(G, rng);
      vpks.push_back(v.pk);
      vsks.push_back(v.sk);
    }
    signer = CmdvsSigner{key, vpks};
    det = CmdvsDetector{key.pub, vsks[0], vpks};
  } else if (scheme == "dvs") {
    auto s = dvs_keygen(G, rng);
    auto v = dvs_keygen(G, rng);
    signer = DdwSigner{s.sk, v.pk, params.len_sig};
    det = DdwDetector{s.pk, v.sk, params.len_sig};
  } else if (scheme == "pdw") {
    auto s = dvs_keygen(G, rng);
    signer = PdwSigner{s.sk, params.len_sig};
    det = PdwDetector{s.pk, params.len_sig};
  } else {
    throw ConfigError("unknown scheme: " + scheme);
  }

  using clock = std::chrono::steady_clock;
  double gen_ms = 0, det_ms = 0, plain_ms = 0;
  size_t tokens = 0;
  for (size_t i = 0; i < trials; i++) {
    auto t0 = clock::now();
    TokenSeq text = watmar(params, signer, *model, prompt, rng);
    auto t1 = clock::now();
    bool found = std::visit([&](const auto& d) { return detect(params, DetectorBundle{d}, text).detected; }, det);
    auto t2 = clock::now();
    (void)model->generate(prompt, {}, params.n);
    auto t3 = clock::now();
    if (!found) std::cerr << "warning: watermark not detected in bench trial " << i << "\n";
    gen_ms += std::chrono::duration<double, std::milli>(t1 - t0).count();
    det_ms += std::chrono::duration<double, std::milli>(t2 - t1).count();
    plain_ms += std::chrono::duration<double, std::milli>(t3 - t2).count();
    tokens += text.size();
  }
  Json j{{"scheme", scheme},
         {"group", to_string(group)},
         {"trials", trials},
         {"tokens_per_text", params.n},
         {"generation_ms_per_text", gen_ms / trials},
         {"plain_generation_ms_per_text", plain_ms / trials},
         {"generation_overhead_factor", plain_ms > 0 ? gen_ms / plain_ms : 0.0},
         {"detection_ms_per_text", det_ms / trials}};
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_games(const std::string& suite, size_t trials, uint64_t seed, const std::string& out) {
  GameReport rep = run_suite(suite_from_string(suite), trials, seed);
  Json j = report_to_json(rep);
  if (out.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    save_json(out, j);
  }
  std::cerr << rep.suite << ": " << rep.failures << " failure(s) in " << rep.trials << " trial(s)\n";
  return rep.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mddw - multi-designated detector watermarking toolkit"};
  app.require_subcommand(1);

  // keygen
  std::string scheme = "mdvs", role = "signer", group_name = "test16", out = "key.json";
  auto* keygen = app.add_subcommand("keygen", "generate a key file");
  keygen->add_option("--scheme", scheme, "mdvs | cmdvs | dvs | pdw");
  keygen->add_option("--role", role, "signer | verifier")
      ->check(CLI::IsMember({"signer", "verifier"}));
  keygen->add_option("--group", group_name, "toy23 | test16 | prod128");
  keygen->add_option("--out", out, "output path")->required();
  uint64_t kg_seed = 0;
  auto* kg_seed_opt = keygen->add_option("--seed", kg_seed, "deterministic key generation");

  // shared generation options
  CommonParams c;
  auto add_common = [&](CLI::App* cmd, bool with_signer) {
    if (with_signer) cmd->add_option("--signer", c.signer_path, "signer key file")->required();
    cmd->add_option("--detectors", c.detector_paths, "designated detector key files");
    cmd->add_option("--model", c.model_spec, "mock:seed=..,V=..,k=.. or http://host:port/path");
    cmd->add_option("--prompt", c.prompt_csv, "comma-separated prompt tokens");
    cmd->add_option("--n", c.n, "output length in tokens");
    cmd->add_option("--ell", c.ell, "block length");
    cmd->add_option("--vocab", c.vocab, "vocabulary size");
    cmd->add_option("--sig-bits", c.sig_bits, "ddw/pdw signature bits");
    cmd->add_option("--timeout-ms", c.timeout_ms, "http timeout");
    cmd->add_option("--retries", c.retries, "http retries");
  };

  std::string text_out = "text.json";
  auto* watermark = app.add_subcommand("watermark", "generate watermarked text");
  add_common(watermark, true);
  watermark->add_option("--out", text_out, "output text file");
  uint64_t wm_seed = 0;
  auto* wm_seed_opt = watermark->add_option("--seed", wm_seed, "deterministic randomness");

  auto* forge = app.add_subcommand("forge-ds", "designated-set forgery of watermarked text");
  add_common(forge, true);
  forge->add_option("--out", text_out, "output text file");
  auto* fg_seed_opt = forge->add_option("--seed", wm_seed, "deterministic randomness");

  std::string signer_pub, detector_path, text_path = "text.json", claim_path = "claim.json";
  auto* det_cmd = app.add_subcommand("detect", "run a designated detector over a text file");
  det_cmd->add_option("--signer-pub", signer_pub, "signer (public) key file")->required();
  det_cmd->add_option("--detector", detector_path, "this detector's secret key file");
  std::vector<std::string> det_pub_paths;
  det_cmd->add_option("--detectors", det_pub_paths, "all designated detector key files");
  det_cmd->add_option("--text", text_path, "candidate text file")->required();

  auto* claim_cmd = app.add_subcommand("claim", "claim authorship of a watermarked text");
  claim_cmd->add_option("--signer", c.signer_path, "cmdvs signer key file")->required();
  claim_cmd->add_option("--detectors", det_pub_paths, "designated detector key files");
  claim_cmd->add_option("--text", text_path, "text file")->required();
  claim_cmd->add_option("--out", claim_path, "output claim file");

  auto* clmver_cmd = app.add_subcommand("clmver", "verify a claim");
  clmver_cmd->add_option("--signer-pub", signer_pub, "cmdvs signer public key file")->required();
  clmver_cmd->add_option("--detectors", det_pub_paths, "designated detector key files");
  clmver_cmd->add_option("--text", text_path, "text file")->required();
  clmver_cmd->add_option("--claim", claim_path, "claim file")->required();

  std::string bench_scheme = "mdvs";
  size_t bench_trials = 5;
  auto* bench = app.add_subcommand("bench", "time generation and detection");
  bench->add_option("--scheme", bench_scheme, "mdvs | cmdvs | dvs | pdw");
  bench->add_option("--group", group_name, "group id");
  bench->add_option("--trials", bench_trials, "texts per measurement");
  add_common(bench, false);
  auto* bench_seed_opt = bench->add_option("--seed", wm_seed, "deterministic randomness");

  std::string suite_name = "completeness", games_out;
  size_t games_trials = 100;
  uint64_t games_seed = 1;
  auto* games = app.add_subcommand("games", "run a security-game suite");
  games->add_option("--suite", suite_name,
                    "completeness|consistency|soundness|robustness|otr|distortion|claim|attempts")
      ->required();
  games->add_option("--trials", games_trials, "trial count");
  games->add_option("--seed", games_seed, "suite seed");
  games->add_option("--out", games_out, "write the JSON report here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*keygen)
      return cmd_keygen(scheme, role, group_id_from_string(group_name), kg_seed,
                        kg_seed_opt->count() > 0, out);
    if (*watermark) {
      c.seed = wm_seed;
      c.seeded = wm_seed_opt->count() > 0;
      return cmd_watermark(c, text_out, false);
    }
    if (*forge) {
      c.seed = wm_seed;
      c.seeded = fg_seed_opt->count() > 0;
      return cmd_watermark(c, text_out, true);
    }
    if (*det_cmd) return cmd_detect(signer_pub, detector_path, det_pub_paths, text_path);
    if (*claim_cmd) return cmd_claim(c.signer_path, det_pub_paths, text_path, claim_path);
    if (*clmver_cmd) return cmd_clmver(signer_pub, det_pub_paths, text_path, claim_path);
    if (*bench) {
      c.seed = wm_seed;
      c.seeded = bench_seed_opt->count() > 0;
      return cmd_bench(bench_scheme, group_id_from_string(group_name), c, bench_trials);
    }
    if (*games) return cmd_games(suite_name, games_trials, games_seed, games_out);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const TransportError& e) {
    std::cerr << "transport error: " << e.what() << "\n";
    return kExitIo;
  } catch (const BadResponseError& e) {
    std::cerr << "bad response: " << e.what() << "\n";
    return kExitIo;
  } catch (const DecodeError& e) {
    std::cerr << "decode error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitUsage;
}
