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

#include <atomic>
#include <thread>

#include <nlohmann/json.hpp>

#include "edgeiam/common/encoding.hpp"
#include "edgeiam/identity/canonical.hpp"
#include "edgeiam/identity/credential.hpp"
#include "edgeiam/identity/http_sources.hpp"
#include "edgeiam/identity/presentation.hpp"
#include "edgeiam/identity/replay_cache.hpp"
#include "identity_fakes.hpp"

namespace edgeiam::identity {
namespace {

using nlohmann::json;

// RFC 8032 section 7.1, tests 1 and 2.
constexpr const char* kSeed1 = "9d61b19deffd5a60ba844af492ec2cc44449c5697b326919703bac031cae7f60";
constexpr const char* kPk1 = "d75a980182b10ab7d54bfed3c964073a0ee172f3daa62325af021a68f707511a";
constexpr const char* kSigEmpty1 =
    "e5564300c360ac729086e2cc806e828a84877f1eb8e5d974d873e065224901555fb8821590a33bacc61e39701cf9b46bd25bf5f0595bbe24"
    "655141438e7a100b";
constexpr const char* kSeed2 = "4ccd089b28ff96da9db6c346ec114e0f5b8a319f35aba624da8cf6ed4fb8a6fb";
constexpr const char* kPk2 = "3d4017c3e843895a92b70aa74d1b7ebc9c982ccf2ec4968cc0cd55f12af4660c";
constexpr const char* kSig72 =
    "92a009a9f0d4cab8720e820b5f642540a2b27b5416503f8fb3762223ebdb69da085ac1e43e15996e458f3613d0f11d8c387b2eaeb4302aee"
    "b00d291612bb0c00";

// Computed with an independent Ed25519/JSON implementation.
constexpr const char* kDid1 = "did:lkey:11qYAYKxCrfVS_7TyWQHOg7hcvPapiMlrwIaaPcHURo";
constexpr const char* kDid2 = "did:lkey:PUAXw-hDiVqStwqnTRt-vJyYLM8uxJaMwM1V8Sr0Zgw";
constexpr const char* kGoldenVcSignature =
    "Hhrja6GncuKrnCf-wtGUqHo3cnbkn8aJCpXksuVizBpQMBSXW27mPjLBBEKVu4jvrJrCttVKNvyWfrFJeBZ2BA";
constexpr const char* kGoldenNonce = "mFqQXF1TqraDy1Msq3DEJDwqrMkzpjoLvp4X-7a7mdA";
constexpr const char* kGoldenHolderSignature =
    "ptzIs_5sPeYOXToPbKVKxHRfIlJW12Unj2hSTCljl03ukpFZ0d_lb7V9j8N9JbQL3cflhaZ0j5qtlwgZoWcWDA";

constexpr std::int64_t kIssuedAt = 1700000000;
constexpr std::int64_t kExpiresAt = 1700086400;
constexpr const char* kStatusUrl = "http://idm.example/v1/status/1";
constexpr const char* kRandom1 = "00000000000000000000000000000001";

KeyPair key(const char* hex) { return keypair_from_hex(hex).value(); }

UnsignedCredential golden_fields() {
  return {"urn:uuid:00000000-0000-4000-8000-000000000001", kDid2, {"researcher"}, kIssuedAt, kExpiresAt,
          {kStatusUrl, 7}};
}

VerifiableCredential golden_vc() { return issue_credential(golden_fields(), key(kSeed1), kDid1).value(); }

RequestBinding golden_binding() { return RequestBinding::make("GET", "/energy/plug1", "edge.city.example", "").value(); }

// --- keys ------------------------------------------------------------------

TEST(Ed25519, Rfc8032KnownAnswers) {
  auto k1 = key(kSeed1);
  EXPECT_EQ(hex_encode(k1.public_key()), kPk1);
  EXPECT_EQ(hex_encode(k1.sign(std::string_view(""))), kSigEmpty1);
  auto k2 = key(kSeed2);
  EXPECT_EQ(hex_encode(k2.public_key()), kPk2);
  const std::uint8_t msg[] = {0x72};
  const auto sig = k2.sign(std::span<const std::uint8_t>(msg));
  EXPECT_EQ(hex_encode(sig), kSig72);
  EXPECT_TRUE(verify_signature(k2.public_key(), std::span<const std::uint8_t>(msg), sig));
  auto flipped = sig;
  flipped[5] ^= 1;
  EXPECT_FALSE(verify_signature(k2.public_key(), std::span<const std::uint8_t>(msg), flipped));
}

TEST(Ed25519, SeedRules) {
  EXPECT_FALSE(keypair_from_hex("00").has_value());
  EXPECT_FALSE(keypair_from_hex(std::string(64, 'z')).has_value());
  auto a = generate_keypair();
  auto b = generate_keypair();
  ASSERT_TRUE(a && b);
  EXPECT_NE(a->public_key(), b->public_key());
  const std::vector<std::uint8_t> short_seed(31, 1);
  EXPECT_FALSE(generate_keypair(std::span<const std::uint8_t>(short_seed)).has_value());
}

// --- canonical JSON -----------------------------------------------------------

TEST(Canonical, GoldenFixture) {
  const auto input = json::parse(
      R"({"z":{"b":[3,{"y":true,"x":"é\n\"q"}],"a":-12},"A":"caps","m":{"k2":0,"k1":{"n":18446744073709551615}},"é":1,"e":"tab\there"})");
  auto out = canonical_bytes(input);
  ASSERT_TRUE(out.has_value());
  EXPECT_EQ(*out,
            R"({"A":"caps","e":"tab\there","m":{"k1":{"n":18446744073709551615},"k2":0},"z":{"a":-12,"b":[3,{"x":"é\n\"q","y":true}]},"é":1})");
}

TEST(Canonical, RejectsFloatsAndNull) {
  EXPECT_FALSE(canonical_bytes(json::parse(R"({"a":1.5})")).has_value());
  EXPECT_FALSE(canonical_bytes(json::parse(R"({"a":[null]})")).has_value());
}

TEST(Canonical, KeyOrderDoesNotMatter) {
  EXPECT_EQ(canonical_bytes(json::parse(R"({"b":1,"a":{"d":2,"c":3}})")).value(),
            canonical_bytes(json::parse(R"({"a":{"c":3,"d":2},"b":1})")).value());
}

// --- DIDs --------------------------------------------------------------------

TEST(Did, LkeyDerivation) {
  EXPECT_EQ(did_from_key(key(kSeed1).public_key()), kDid1);
  EXPECT_EQ(did_from_key(PublicKey{}), "did:lkey:AAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAA");
  auto doc = lkey_document(kDid1);
  ASSERT_TRUE(doc.has_value());
  ASSERT_EQ(doc->verification_methods.size(), 1u);
  EXPECT_EQ(doc->verification_methods[0].id, std::string(kDid1) + "#key-1");
  EXPECT_TRUE(doc->is_authentication_method(std::string(kDid1) + "#key-1"));
}

TEST(Did, MethodGrammar) {
  EXPECT_EQ(did_method(kDid1), DidMethod::lkey);
  EXPECT_EQ(did_method("did:reg:abc-123"), DidMethod::reg);
  EXPECT_FALSE(did_method("did:lkey:AAAA").has_value());
  EXPECT_FALSE(did_method("did:reg:").has_value());
  EXPECT_FALSE(did_method("did:reg:a/b").has_value());
  EXPECT_FALSE(did_method("did:web:example.com").has_value());
}

TEST(Did, DocumentValidation) {
  const auto pk = key(kSeed2).public_key();
  DidDocument doc{"did:reg:alice", {{"did:reg:alice#k1", pk}}, {"did:reg:alice#k1"}};
  EXPECT_FALSE(validate_did_document(doc).has_value());
  auto round = did_document_from_json(did_document_to_json(doc));
  ASSERT_TRUE(round.has_value());
  EXPECT_EQ(round->verification_methods[0].public_key, pk);

  auto dangling = doc;
  dangling.authentication = {"did:reg:alice#k2"};
  EXPECT_TRUE(validate_did_document(dangling).has_value());
  auto foreign = doc;
  foreign.verification_methods[0].id = "did:reg:bob#k1";
  EXPECT_TRUE(validate_did_document(foreign).has_value());
  auto dup = doc;
  dup.verification_methods.push_back(dup.verification_methods[0]);
  EXPECT_TRUE(validate_did_document(dup).has_value());
  DidDocument wrong_key{kDid1, {{std::string(kDid1) + "#key-1", pk}}, {}};
  EXPECT_TRUE(validate_did_document(wrong_key).has_value());

  auto extra = did_document_to_json(doc);
  extra["service"] = json::array();
  EXPECT_FALSE(did_document_from_json(extra).has_value());
}

TEST(Did, Resolution) {
  testing::MemoryRegistry registry;
  EXPECT_TRUE(resolve_did(kDid1, nullptr).has_value());
  EXPECT_EQ(registry.fetches, 0);
  auto none = resolve_did("did:reg:alice", nullptr);
  ASSERT_FALSE(none.has_value());
  EXPECT_EQ(none.error().code, ResolveErrorCode::unavailable);
  auto missing = resolve_did("did:reg:alice", &registry);
  ASSERT_FALSE(missing.has_value());
  EXPECT_EQ(missing.error().code, ResolveErrorCode::not_found);
  registry.documents["did:reg:alice"] = DidDocument{"did:reg:bob", {}, {}};
  auto mismatched = resolve_did("did:reg:alice", &registry);
  ASSERT_FALSE(mismatched.has_value());
  EXPECT_EQ(mismatched.error().code, ResolveErrorCode::malformed);
  EXPECT_EQ(resolve_did("did:web:x", &registry).error().code, ResolveErrorCode::unknown_method);
}

// --- status list -------------------------------------------------------------

TEST(StatusList, BitLayoutIsMsbFirstPerNibble) {
  auto list = StatusList::create("1", 16);
  EXPECT_EQ(list.bits, "0000");
  list = revoke_index(list, 0).value();
  EXPECT_EQ(list.bits, "8000");
  list = revoke_index(list, 5).value();
  EXPECT_EQ(list.bits, "8400");
  list = revoke_index(list, 15).value();
  EXPECT_EQ(list.bits, "8401");
  EXPECT_TRUE(list.is_revoked(5).value());
  EXPECT_FALSE(list.is_revoked(4).value());
  EXPECT_FALSE(list.is_revoked(16).has_value());
  EXPECT_FALSE(revoke_index(list, 16).has_value());
  EXPECT_EQ(revoke_index(list, 5).value().bits, "8401");
}

TEST(StatusList, GrowKeepsBitsAndJsonRoundTrips) {
  auto list = revoke_index(StatusList::create("abc", 8), 3).value();
  auto grown = grow_status_list(list, 32);
  EXPECT_EQ(grown.size, 32u);
  EXPECT_EQ(grown.bits, "10000000");
  const auto j = status_list_to_json(grown, 9);
  EXPECT_EQ(j.at("revision"), 9);
  auto back = status_list_from_json(j);
  ASSERT_TRUE(back.has_value());
  EXPECT_EQ(back->bits, grown.bits);
  EXPECT_FALSE(status_list_from_json(json{{"id", "x"}, {"size", 8}, {"bits", "0"}}).has_value());
  EXPECT_FALSE(status_list_from_json(json{{"id", "x"}, {"size", 8}, {"bits", "0G"}}).has_value());
}

// --- credentials ---------------------------------------------------------------

class CredentialTest : public ::testing::Test {
 protected:
  testing::MemoryRegistry registry;
  testing::MemoryStatusFetcher statuses;
  StandardResolver resolver{&registry};
  std::set<std::string> trusted{kDid1};

  void SetUp() override { statuses.lists[kStatusUrl] = StatusList::create("1", 64); }

  Expected<VerifiedCredential, VerificationFailure> verify(const VerifiableCredential& vc,
                                                           std::int64_t now = kIssuedAt + 60) {
    return verify_credential(vc, resolver, trusted, statuses, now);
  }
};

TEST_F(CredentialTest, GoldenSignature) {
  const auto vc = golden_vc();
  EXPECT_EQ(vc.proof.signature, kGoldenVcSignature);
  EXPECT_EQ(vc.proof.verification_method, std::string(kDid1) + "#key-1");
  EXPECT_EQ(vc.proof.created, kIssuedAt);
  auto ok = verify(vc);
  ASSERT_TRUE(ok.has_value()) << ok.error().detail;
  EXPECT_EQ(ok->subject, kDid2);
  EXPECT_EQ(ok->attributes, std::vector<std::string>{"researcher"});
}

TEST_F(CredentialTest, JsonRoundTripIsStrict) {
  const auto j = credential_to_json(golden_vc());
  auto back = credential_from_json(j);
  ASSERT_TRUE(back.has_value());
  EXPECT_EQ(credential_to_json(*back), j);
  auto extra = j;
  extra["note"] = "x";
  EXPECT_FALSE(credential_from_json(extra).has_value());
  auto missing = j;
  missing.erase("expires_at");
  EXPECT_FALSE(credential_from_json(missing).has_value());
  auto negative_index = j;
  negative_index["status"]["index"] = -1;
  EXPECT_FALSE(credential_from_json(negative_index).has_value());
}

TEST_F(CredentialTest, FailureReasons) {
  const auto vc = golden_vc();

  auto untrusted = verify_credential(vc, resolver, {}, statuses, kIssuedAt + 1);
  ASSERT_FALSE(untrusted.has_value());
  EXPECT_EQ(untrusted.error().code, ReasonCode::untrusted_issuer);

  auto tampered = vc;
  tampered.attributes = {"admin"};
  EXPECT_EQ(verify(tampered).error().code, ReasonCode::bad_signature);

  auto extended = vc;
  extended.expires_at += 1;
  EXPECT_EQ(verify(extended).error().code, ReasonCode::bad_signature);

  EXPECT_EQ(verify(vc, kExpiresAt).error().code, ReasonCode::expired);
  EXPECT_TRUE(verify(vc, kExpiresAt - 1).has_value());
  EXPECT_EQ(verify(vc, kIssuedAt - 1).error().code, ReasonCode::expired);
  EXPECT_TRUE(verify(vc, kIssuedAt).has_value());

  statuses.lists[kStatusUrl] = revoke_index(statuses.lists[kStatusUrl], 7).value();
  EXPECT_EQ(verify(vc).error().code, ReasonCode::revoked);
  statuses.lists[kStatusUrl] = revoke_index(StatusList::create("1", 64), 6).value();
  EXPECT_TRUE(verify(vc).has_value());

  statuses.reachable = false;
  EXPECT_EQ(verify(vc).error().code, ReasonCode::status_unavailable);
  statuses.reachable = true;

  statuses.lists[kStatusUrl] = StatusList::create("1", 4);
  EXPECT_EQ(verify(vc).error().code, ReasonCode::malformed);

  auto bad_shape = vc;
  bad_shape.attributes = {"researcher", "researcher"};
  EXPECT_EQ(verify(bad_shape).error().code, ReasonCode::malformed);

  auto moved_proof = vc;
  moved_proof.proof.created += 1;
  EXPECT_EQ(verify(moved_proof).error().code, ReasonCode::malformed);
}

TEST_F(CredentialTest, RegistryIssuerNeedsReachableRegistry) {
  const auto issuer_key = key(kSeed2);
  registry.documents["did:reg:city"] =
      DidDocument{"did:reg:city", {{"did:reg:city#k", issuer_key.public_key()}}, {"did:reg:city#k"}};
  auto fields = golden_fields();
  fields.subject = kDid1;
  auto vc = issue_credential(fields, issuer_key, "did:reg:city", "did:reg:city#k").value();
  trusted = {"did:reg:city"};
  EXPECT_TRUE(verify(vc).has_value());
  registry.reachable = false;
  EXPECT_EQ(verify(vc).error().code, ReasonCode::upstream_unavailable);
  registry.reachable = true;
  registry.documents.clear();
  EXPECT_EQ(verify(vc).error().code, ReasonCode::bad_signature);
}

TEST_F(CredentialTest, AttributeSanitizing) {
  EXPECT_EQ(sanitize_attribute("  Senior-Researcher "), "senior_researcher");
  EXPECT_FALSE(sanitize_attribute("two words").has_value());
  EXPECT_FALSE(sanitize_attribute("x!").has_value());
  EXPECT_FALSE(sanitize_attribute("").has_value());
  auto fields = golden_fields();
  fields.attributes = {"Researcher"};
  EXPECT_FALSE(issue_credential(fields, key(kSeed1), kDid1).has_value());
  fields = golden_fields();
  fields.expires_at = fields.issued_at;
  EXPECT_FALSE(issue_credential(fields, key(kSeed1), kDid1).has_value());
}

// --- presentations -------------------------------------------------------------

TEST(Nonce, GoldenValues) {
  const auto binding = golden_binding();
  EXPECT_EQ(binding.content_digest, "-");
  EXPECT_EQ(compute_nonce(binding, 1700000000, std::string(32, '0')).value(),
            "Cs7t8Z--l9_PUfO_77tpGY26XfaLF93u2ZITofHDGM8");
  EXPECT_EQ(compute_nonce(binding, 1700000060, kRandom1).value(), kGoldenNonce);
  EXPECT_FALSE(compute_nonce(binding, 1, "ABCDEF0123456789ABCDEF0123456789").has_value());
  EXPECT_FALSE(compute_nonce(binding, 1, "00").has_value());
}

TEST(Binding, Normalization) {
  auto b = RequestBinding::make("post", "/x?y=1", "Edge.Example:8080", "hello");
  ASSERT_TRUE(b.has_value());
  EXPECT_EQ(b->method, "POST");
  EXPECT_EQ(b->host, "edge.example:8080");
  EXPECT_EQ(b->content_digest, "LPJNul-wow4m6DsqxbninhsWHlwfp0JecwQzYpOLmCQ");  // SHA-256("hello")
  EXPECT_FALSE(RequestBinding::make("FETCH", "/", "h", "").has_value());
  auto round = binding_from_json(binding_to_json(*b));
  ASSERT_TRUE(round.has_value());
  EXPECT_EQ(*round, *b);
}

class PresentationTest : public CredentialTest {
 protected:
  ReplayCache cache{2 * kDefaultFreshnessWindow};
  KeyPair holder = key(kSeed2);
  std::int64_t now = kIssuedAt + 60;

  VerifiablePresentation present(const RequestBinding& binding, std::optional<std::string> random = kRandom1) {
    return build_vp(golden_vc(), binding, holder, resolver, now, std::move(random)).value();
  }

  Expected<PresentationClaims, VerificationFailure> check(const VerifiablePresentation& vp,
                                                          const RequestBinding& binding) {
    return verify_vp(vp, binding, resolver, trusted, statuses, cache, now);
  }
};

TEST_F(PresentationTest, GoldenHolderSignatureAndAcceptance) {
  const auto vp = present(golden_binding());
  EXPECT_EQ(vp.nonce, kGoldenNonce);
  EXPECT_EQ(vp.holder_proof.verification_method, std::string(kDid2) + "#key-1");
  EXPECT_EQ(vp.holder_proof.signature, kGoldenHolderSignature);
  auto ok = check(vp, golden_binding());
  ASSERT_TRUE(ok.has_value()) << ok.error().detail;
  EXPECT_EQ(ok->subject, kDid2);
  EXPECT_EQ(ok->issuer, kDid1);
  EXPECT_EQ(cache.size(), 1u);
}

TEST_F(PresentationTest, TokenRoundTrip) {
  const auto vp = present(golden_binding());
  auto back = decode_presentation_token(encode_presentation_token(vp));
  ASSERT_TRUE(back.has_value());
  EXPECT_EQ(presentation_to_json(*back), presentation_to_json(vp));
  EXPECT_FALSE(decode_presentation_token("not a token").has_value());
  EXPECT_FALSE(decode_presentation_token(base64url_encode(std::string_view("{\"a\":1}"))).has_value());
}

TEST_F(PresentationTest, ReplayIsRejected) {
  const auto vp = present(golden_binding());
  ASSERT_TRUE(check(vp, golden_binding()).has_value());
  auto second = check(vp, golden_binding());
  ASSERT_FALSE(second.has_value());
  EXPECT_EQ(second.error().code, ReasonCode::replayed);
}

TEST_F(PresentationTest, BindingMismatch) {
  const auto vp = present(golden_binding());
  for (auto other : {RequestBinding::make("POST", "/energy/plug1", "edge.city.example", "").value(),
                     RequestBinding::make("GET", "/energy/plug2", "edge.city.example", "").value(),
                     RequestBinding::make("GET", "/energy/plug1", "evil.example", "").value(),
                     RequestBinding::make("GET", "/energy/plug1", "edge.city.example", "x").value()}) {
    auto r = check(vp, other);
    ASSERT_FALSE(r.has_value());
    EXPECT_EQ(r.error().code, ReasonCode::binding_mismatch);
  }
  EXPECT_EQ(cache.size(), 0u);
}

TEST_F(PresentationTest, FreshnessWindowIsInclusive) {
  const auto binding = golden_binding();
  const std::int64_t base = kIssuedAt + 1000;
  now = base;
  auto vp = present(binding);
  now = base + kDefaultFreshnessWindow;
  EXPECT_TRUE(check(vp, binding).has_value());
  now = base;
  auto late = present(binding, "00000000000000000000000000000002");
  now = base + kDefaultFreshnessWindow + 1;
  EXPECT_EQ(check(late, binding).error().code, ReasonCode::stale);
  now = base;
  auto early = present(binding, "00000000000000000000000000000003");
  now = base - kDefaultFreshnessWindow - 1;
  EXPECT_EQ(check(early, binding).error().code, ReasonCode::stale);
  now = base - kDefaultFreshnessWindow;
  EXPECT_TRUE(check(early, binding).has_value());
}

TEST_F(PresentationTest, ForgedHolderSignature) {
  auto vp = present(golden_binding());
  auto forged = build_vp(golden_vc(), golden_binding(), key(kSeed1), resolver, now, kRandom1);
  // The issuer's key is not in the subject's document.
  EXPECT_FALSE(forged.has_value());
  auto sig = base64url_decode(vp.holder_proof.signature).value();
  sig[0] ^= 0x01;
  vp.holder_proof.signature = base64url_encode(sig);
  EXPECT_EQ(check(vp, golden_binding()).error().code, ReasonCode::holder_signature_invalid);
  EXPECT_EQ(cache.size(), 0u);
}

TEST_F(PresentationTest, HolderMethodMustAuthenticateSubject) {
  auto vp = present(golden_binding());
  vp.holder_proof.verification_method = std::string(kDid2) + "#key-2";
  EXPECT_EQ(check(vp, golden_binding()).error().code, ReasonCode::holder_key_mismatch);
}

TEST(PresentationToken, OverflowingNumberIsRejectedNotThrown) {
  const auto token = base64url_encode(std::string(R"({"timestamp":1E00086400})"));
  EXPECT_FALSE(decode_presentation_token(token).has_value());
}

TEST_F(PresentationTest, MalformedFieldsAreRejectedFirst) {
  auto vp = present(golden_binding());
  vp.random = "short";
  EXPECT_EQ(check(vp, golden_binding()).error().code, ReasonCode::malformed);
}

TEST_F(PresentationTest, CredentialFailurePropagates) {
  statuses.lists[kStatusUrl] = revoke_index(statuses.lists[kStatusUrl], 7).value();
  EXPECT_EQ(check(present(golden_binding()), golden_binding()).error().code, ReasonCode::revoked);
}

TEST_F(PresentationTest, ConcurrentReplaysAdmitExactlyOne) {
  const auto vp = present(golden_binding());
  std::atomic<int> accepted{0};
  std::vector<std::thread> threads;
  for (int i = 0; i < 8; ++i) {
    threads.emplace_back([&] {
      testing::MemoryStatusFetcher local;
      local.lists = statuses.lists;
      StandardResolver r;
      if (verify_vp(vp, golden_binding(), r, trusted, local, cache, now).has_value()) ++accepted;
    });
  }
  for (auto& t : threads) t.join();
  EXPECT_EQ(accepted.load(), 1);
}

// --- replay cache ---------------------------------------------------------------

TEST(ReplayCache, TtlBoundary) {
  ReplayCache cache(240);
  EXPECT_TRUE(cache.insert_if_absent("n", 1000));
  EXPECT_FALSE(cache.insert_if_absent("n", 1000));
  EXPECT_TRUE(cache.contains("n", 1240));
  EXPECT_FALSE(cache.contains("n", 1241));
  EXPECT_TRUE(cache.insert_if_absent("n", 1241));
  for (int i = 0; i < 100; ++i) cache.insert_if_absent("k" + std::to_string(i), 2000);
  EXPECT_TRUE(cache.insert_if_absent("late", 3000));
  EXPECT_EQ(cache.size(), 1u);
}

// --- caching sources ---------------------------------------------------------------

TEST(CachingSources, CacheSuccessesOnly) {
  testing::MemoryRegistry registry;
  StandardResolver inner(&registry);
  std::int64_t clock = 0;
  CachingResolver resolver(inner, 60, [&] { return clock; });
  EXPECT_FALSE(resolver.resolve("did:reg:a").has_value());
  EXPECT_FALSE(resolver.resolve("did:reg:a").has_value());
  EXPECT_EQ(registry.fetches, 2);
  registry.documents["did:reg:a"] = DidDocument{"did:reg:a", {{"did:reg:a#k", PublicKey{}}}, {}};
  EXPECT_TRUE(resolver.resolve("did:reg:a").has_value());
  EXPECT_TRUE(resolver.resolve("did:reg:a").has_value());
  EXPECT_EQ(registry.fetches, 3);
  clock = 60;
  EXPECT_TRUE(resolver.resolve("did:reg:a").has_value());
  EXPECT_EQ(registry.fetches, 4);

  testing::MemoryStatusFetcher fetcher;
  fetcher.lists["u"] = StatusList::create("1", 8);
  CachingStatusFetcher statuses(fetcher, 30, [&] { return clock; });
  EXPECT_TRUE(statuses.fetch("u").has_value());
  fetcher.lists["u"] = revoke_index(fetcher.lists["u"], 0).value();
  EXPECT_FALSE(statuses.fetch("u")->is_revoked(0).value());
  clock += 30;
  EXPECT_TRUE(statuses.fetch("u")->is_revoked(0).value());
}

}  // namespace
}  // namespace edgeiam::identity
