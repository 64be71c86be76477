// Copyright 2026 The Edge IAM Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "edgeiam/common/expected.hpp"

namespace edgeiam::identity {

using PublicKey = std::array<std::uint8_t, 32>;
using Seed = std::array<std::uint8_t, 32>;
using Signature = std::array<std::uint8_t, 64>;

/// Ed25519 key pair. The seed is the private key; the public key is always
/// derived from it, never stored independently.
class KeyPair {
 public:
  /// Deterministic for a given seed.
  static KeyPair from_seed(const Seed& seed);

  const Seed& seed() const { return seed_; }
  const PublicKey& public_key() const { return public_key_; }

  Signature sign(std::span<const std::uint8_t> message) const;
  Signature sign(std::string_view message) const;

 private:
  KeyPair(const Seed& seed, const PublicKey& pk) : seed_(seed), public_key_(pk) {}

  Seed seed_;
  PublicKey public_key_;
};

struct KeyError {
  std::string message;
};

/// With a seed: must be exactly 32 bytes. Without: fresh CSPRNG seed.
Expected<KeyPair, KeyError> generate_keypair(std::optional<std::span<const std::uint8_t>> seed = std::nullopt);
Expected<KeyPair, KeyError> keypair_from_hex(std::string_view seed_hex);

bool verify_signature(const PublicKey& key, std::span<const std::uint8_t> message, const Signature& signature);
bool verify_signature(const PublicKey& key, std::string_view message, const Signature& signature);

}  // namespace edgeiam::identity
