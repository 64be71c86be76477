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

#include <gtest/gtest.h>

#include <random>

#include "edgeiam/common/crypto.hpp"
#include "edgeiam/common/encoding.hpp"
#include "edgeiam/common/http.hpp"

namespace edgeiam {
namespace {

TEST(Base64Url, Rfc4648Vectors) {
  // RFC 4648 section 10 vectors with the URL-safe alphabet and no padding.
  EXPECT_EQ(base64url_encode(std::string_view("")), "");
  EXPECT_EQ(base64url_encode(std::string_view("f")), "Zg");
  EXPECT_EQ(base64url_encode(std::string_view("fo")), "Zm8");
  EXPECT_EQ(base64url_encode(std::string_view("foo")), "Zm9v");
  EXPECT_EQ(base64url_encode(std::string_view("foob")), "Zm9vYg");
  EXPECT_EQ(base64url_encode(std::string_view("fooba")), "Zm9vYmE");
  EXPECT_EQ(base64url_encode(std::string_view("foobar")), "Zm9vYmFy");
  const Bytes high{0xfb, 0xff, 0xbf};
  EXPECT_EQ(base64url_encode(high), "-_-_");
}

TEST(Base64Url, StrictDecoding) {
  EXPECT_EQ(base64url_decode("Zm9vYg"), Bytes({'f', 'o', 'o', 'b'}));
  EXPECT_FALSE(base64url_decode("Zm9vYg==").has_value());
  EXPECT_FALSE(base64url_decode("Zm9v+g").has_value());
  EXPECT_FALSE(base64url_decode("Z").has_value());
  // "Zh" decodes to 'f' only if the 4 trailing bits are ignored.
  EXPECT_FALSE(base64url_decode("Zh").has_value());
  EXPECT_TRUE(base64url_decode("").has_value());
}

TEST(Base64Url, RandomRoundTripAndUniqueness) {
  std::mt19937_64 rng(3);
  for (int n = 0; n < 200; ++n) {
    Bytes data(static_cast<std::size_t>(n % 67));
    for (auto& b : data) b = static_cast<std::uint8_t>(rng());
    const auto text = base64url_encode(data);
    ASSERT_EQ(base64url_decode(text), data);
    // Every other character at the last position must be rejected or decode
    // to different bytes.
    if (!text.empty()) {
      for (char c : std::string("ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789-_")) {
        if (c == text.back()) continue;
        auto mutated = text;
        mutated.back() = c;
        auto decoded = base64url_decode(mutated);
        if (decoded) {
          EXPECT_NE(*decoded, data);
        }
      }
    }
  }
}

TEST(Hex, RoundTrip) {
  const Bytes data{0x00, 0xab, 0xff, 0x10};
  EXPECT_EQ(hex_encode(data), "00abff10");
  EXPECT_EQ(hex_decode("00ABff10"), data);
  EXPECT_FALSE(hex_decode("abc").has_value());
  EXPECT_FALSE(hex_decode("zz").has_value());
  EXPECT_TRUE(is_lower_hex("00abff10"));
  EXPECT_FALSE(is_lower_hex("00ABff10"));
}

TEST(Identifier, Grammar) {
  EXPECT_TRUE(is_identifier("researcher"));
  EXPECT_TRUE(is_identifier("a_1"));
  EXPECT_TRUE(is_identifier(std::string(64, 'a')));
  EXPECT_FALSE(is_identifier(std::string(65, 'a')));
  EXPECT_FALSE(is_identifier("1a"));
  EXPECT_FALSE(is_identifier("_a"));
  EXPECT_FALSE(is_identifier("Ab"));
  EXPECT_FALSE(is_identifier("a-b"));
  EXPECT_FALSE(is_identifier(""));
}

TEST(Sha256, KnownAnswers) {
  const auto abc = sha256(std::string_view("abc"));
  EXPECT_EQ(hex_encode(abc), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  const auto empty = sha256(std::string_view(""));
  EXPECT_EQ(hex_encode(empty), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST(Random, UuidShape) {
  const auto a = random_uuid();
  const auto b = random_uuid();
  EXPECT_NE(a, b);
  ASSERT_EQ(a.size(), 36u);
  EXPECT_EQ(a[14], '4');
  EXPECT_EQ(random_bytes(16).size(), 16u);
}

TEST(Url, Parsing) {
  auto u = parse_url("http://Edge.City.Example:8080/energy/plug1?x=1");
  ASSERT_TRUE(u.has_value());
  EXPECT_EQ(u->host, "edge.city.example");
  EXPECT_EQ(u->port, 8080);
  EXPECT_EQ(u->target, "/energy/plug1?x=1");
  EXPECT_EQ(u->host_header(), "edge.city.example:8080");
  auto d = parse_url("http://h");
  ASSERT_TRUE(d.has_value());
  EXPECT_EQ(d->port, 80);
  EXPECT_EQ(d->target, "/");
  EXPECT_EQ(d->host_header(), "h");
  EXPECT_FALSE(parse_url("https://h/").has_value());
  EXPECT_FALSE(parse_url("h/x").has_value());
}

TEST(Bearer, ConstantTimeMatch) {
  EXPECT_TRUE(bearer_token_matches("Bearer s3cret", "s3cret"));
  EXPECT_FALSE(bearer_token_matches("Bearer s3cre", "s3cret"));
  EXPECT_FALSE(bearer_token_matches("s3cret", "s3cret"));
  EXPECT_FALSE(bearer_token_matches("Bearer ", ""));
}

}  // namespace
}  // namespace edgeiam
