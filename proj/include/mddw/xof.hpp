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

#include <openssl/evp.h>

#include <string_view>

#include "mddw/bytes.hpp"

namespace mddw {

// Single extendable-output hash behind every oracle in this library:
// SHAKE256 over the domain-separated frame
//
//     u8(len(tag)) || tag || msg
//
// Tags are short ASCII strings ("MDDW/H1", "MDDW/SCH", ...). The frame and
// the tag registry are normative; see FORMATS.md.
inline Bytes xof(std::string_view tag, BytesView msg, size_t out_len) {
  Bytes out(out_len);
  if (out_len == 0) return out;
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (ctx == nullptr) throw Error("EVP_MD_CTX_new failed");
  uint8_t tag_len = static_cast<uint8_t>(tag.size());
  int ok = EVP_DigestInit_ex(ctx, EVP_shake256(), nullptr) &&
           EVP_DigestUpdate(ctx, &tag_len, 1) &&
           EVP_DigestUpdate(ctx, tag.data(), tag.size()) &&
           EVP_DigestUpdate(ctx, msg.data(), msg.size()) &&
           EVP_DigestFinalXOF(ctx, out.data(), out.size());
  EVP_MD_CTX_free(ctx);
  if (!ok) throw Error("SHAKE256 evaluation failed");
  return out;
}

inline Bytes xof(std::string_view tag, const Bytes& msg, size_t out_len) {
  return xof(tag, BytesView(msg), out_len);
}

}  // namespace mddw
