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

#include <stdexcept>
#include <string>

namespace mddw {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed or out-of-range byte encoding (scalar >= q, point off curve, ...).
struct DecodeError : Error {
  using Error::Error;
};

// pair()/gt ops requested on a group without a bilinear map.
struct PairingUnavailable : Error {
  using Error::Error;
};

// Token block length differs from the configured block length.
struct WrongBlockLength : Error {
  using Error::Error;
};

struct WrongLength : Error {
  using Error::Error;
};

struct TokenOutOfRange : Error {
  using Error::Error;
};

struct EmptyVerifierSet : Error {
  using Error::Error;
};

// Rejection sampling exceeded the attempt cap; the model violates the
// per-block min-entropy assumption.
struct LowEntropyModel : Error {
  using Error::Error;
};

struct BackendUnsupported : Error {
  using Error::Error;
};

// HTTP model adapter errors.
struct TransportError : Error {
  using Error::Error;
};
struct BadResponseError : Error {
  using Error::Error;
};

}  // namespace mddw
