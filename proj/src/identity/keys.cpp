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

#include "edgeiam/identity/keys.hpp"

#include <openssl/evp.h>

#include <memory>
#include <stdexcept>

#include "edgeiam/common/crypto.hpp"
#include "edgeiam/common/encoding.hpp"

namespace edgeiam::identity {
namespace {

struct PkeyDeleter {
  void operator()(EVP_PKEY* p) const { EVP_PKEY_free(p); }
};
struct MdCtxDeleter {
  void operator()(EVP_MD_CTX* p) const { EVP_MD_CTX_free(p); }
};
using PkeyPtr = std::unique_ptr<EVP_PKEY, PkeyDeleter>;
using MdCtxPtr = std::unique_ptr<EVP_MD_CTX, MdCtxDeleter>;

PkeyPtr private_key(const Seed& seed) {
  PkeyPtr key(EVP_PKEY_new_raw_private_key(EVP_PKEY_ED25519, nullptr, seed.data(), seed.size()));
  if (!key) throw std::runtime_error("EVP_PKEY_new_raw_private_key failed");
  return key;
}

std::span<const std::uint8_t> as_bytes(std::string_view s) {
  return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}

}  // namespace

KeyPair KeyPair::from_seed(const Seed& seed) {
  auto key = private_key(seed);
  PublicKey pk{};
  std::size_t len = pk.size();
  if (EVP_PKEY_get_raw_public_key(key.get(), pk.data(), &len) != 1 || len != pk.size()) {
    throw std::runtime_error("EVP_PKEY_get_raw_public_key failed");
  }
  return KeyPair(seed, pk);
}

Signature KeyPair::sign(std::span<const std::uint8_t> message) const {
  auto key = private_key(seed_);
  MdCtxPtr ctx(EVP_MD_CTX_new());
  Signature sig{};
  std::size_t len = sig.size();
  if (!ctx || EVP_DigestSignInit(ctx.get(), nullptr, nullptr, nullptr, key.get()) != 1 ||
      EVP_DigestSign(ctx.get(), sig.data(), &len, message.data(), message.size()) != 1 || len != sig.size()) {
    throw std::runtime_error("Ed25519 signing failed");
  }
  return sig;
}

Signature KeyPair::sign(std::string_view message) const { return sign(as_bytes(message)); }

Expected<KeyPair, KeyError> generate_keypair(std::optional<std::span<const std::uint8_t>> seed) {
  Seed s{};
  if (seed) {
    if (seed->size() != s.size()) {
      return unexpected(KeyError{"seed must be exactly 32 bytes, got " + std::to_string(seed->size())});
    }
    std::copy(seed->begin(), seed->end(), s.begin());
  } else {
    const auto fresh = random_bytes(s.size());
    std::copy(fresh.begin(), fresh.end(), s.begin());
  }
  return KeyPair::from_seed(s);
}

Expected<KeyPair, KeyError> keypair_from_hex(std::string_view seed_hex) {
  const auto bytes = hex_decode(seed_hex);
  if (!bytes) return unexpected(KeyError{"seed is not valid hex"});
  return generate_keypair(std::span<const std::uint8_t>(*bytes));
}

bool verify_signature(const PublicKey& key, std::span<const std::uint8_t> message, const Signature& signature) {
  PkeyPtr pkey(EVP_PKEY_new_raw_public_key(EVP_PKEY_ED25519, nullptr, key.data(), key.size()));
  if (!pkey) return false;
  MdCtxPtr ctx(EVP_MD_CTX_new());
  if (!ctx || EVP_DigestVerifyInit(ctx.get(), nullptr, nullptr, nullptr, pkey.get()) != 1) return false;
  return EVP_DigestVerify(ctx.get(), signature.data(), signature.size(), message.data(), message.size()) == 1;
}

bool verify_signature(const PublicKey& key, std::string_view message, const Signature& signature) {
  return verify_signature(key, as_bytes(message), signature);
}

}  // namespace edgeiam::identity
