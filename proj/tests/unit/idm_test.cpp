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

#include <set>
#include <thread>

#include <nlohmann/json.hpp>

#include "edgeiam/common/encoding.hpp"
#include "edgeiam/identity/did.hpp"
#include "edgeiam/identity/status_list.hpp"
#include "edgeiam/idm/idm.hpp"
#include "edgeiam/idm/service.hpp"
#include "stack.hpp"

namespace edgeiam {
namespace {

using nlohmann::json;
using testing::kAdminToken;
using testing::kIssuerSeed;
using testing::TempDir;

constexpr std::int64_t kNow = 1700000000;
constexpr const char* kStatusUrl = "http://idm.test/v1/status/1";

identity::KeyPair issuer() { return *identity::keypair_from_hex(kIssuerSeed); }

std::string holder_did(std::uint8_t fill) {
  identity::Seed seed{};
  seed.fill(fill);
  return identity::did_from_key(identity::KeyPair::from_seed(seed).public_key());
}

json reg_document(const std::string& id, std::uint8_t key_fill) {
  identity::Seed seed{};
  seed.fill(key_fill);
  const auto pk = identity::KeyPair::from_seed(seed).public_key();
  return json{{"id", id},
              {"verification_methods", {{{"id", "#key-1"}, {"public_key", base64url_encode(pk)}}}},
              {"authentication", json::array({"#key-1"})}};
}

bool revoked(const json& list, std::uint64_t index) {
  auto parsed = identity::status_list_from_json(list);
  return parsed && *parsed->is_revoked(index);
}

TEST(Idm, RegisterAssignsRegIdAndIsIdempotent) {
  idm::Idm idm(issuer(), std::nullopt);
  auto first = idm.register_did(reg_document("", 1), kNow);
  ASSERT_TRUE(first.has_value()) << first.error().message;
  EXPECT_TRUE(first->created);
  EXPECT_EQ(identity::did_method(first->did), identity::DidMethod::reg);

  auto doc = idm.document(first->did);
  ASSERT_TRUE(doc.has_value());
  auto parsed = identity::did_document_from_json(json::parse(*doc));
  ASSERT_TRUE(parsed.has_value()) << parsed.error();
  EXPECT_EQ(parsed->verification_methods.at(0).id, first->did + "#key-1");

  auto again = idm.register_did(json::parse(*doc), kNow + 5);
  ASSERT_TRUE(again.has_value());
  EXPECT_FALSE(again->created);
  EXPECT_EQ(again->did, first->did);
  EXPECT_EQ(*idm.document(first->did), *doc);

  auto conflict = idm.register_did(reg_document(first->did, 2), kNow);
  ASSERT_FALSE(conflict.has_value());
  EXPECT_EQ(conflict.error().code, idm::IdmErrorCode::conflict);
  EXPECT_EQ(*idm.document(first->did), *doc);
}

TEST(Idm, RegisterRejectsMalformedAndLkey) {
  idm::Idm idm(issuer(), std::nullopt);
  EXPECT_EQ(idm.register_did(json{{"id", ""}}, kNow).error().code, idm::IdmErrorCode::bad_request);
  EXPECT_EQ(idm.register_did(reg_document(holder_did(3), 3), kNow).error().code, idm::IdmErrorCode::bad_request);
  EXPECT_EQ(idm.register_did(json::array(), kNow).error().code, idm::IdmErrorCode::bad_request);
  EXPECT_FALSE(idm.document("did:reg:missing").has_value());
}

TEST(Idm, IssueTtlArithmeticAndDistinctIndices) {
  idm::Idm idm(issuer(), std::nullopt);
  auto a = idm.issue(holder_did(1), {"cs_department", "researcher"}, 2592000, kNow, kStatusUrl);
  auto b = idm.issue(holder_did(1), {"researcher"}, 60, kNow, kStatusUrl);
  ASSERT_TRUE(a.has_value()) << a.error().message;
  ASSERT_TRUE(b.has_value());
  EXPECT_EQ(a->expires_at - a->issued_at, 2592000);
  EXPECT_EQ(a->issuer, idm.issuer_did());
  EXPECT_EQ(std::set<std::string>(a->attributes.begin(), a->attributes.end()),
            (std::set<std::string>{"cs_department", "researcher"}));
  EXPECT_NE(a->status.index, b->status.index);
  EXPECT_NE(a->id, b->id);
  EXPECT_EQ(a->status.status_url, kStatusUrl);

  auto doc = identity::lkey_document(idm.issuer_did());
  ASSERT_TRUE(doc.has_value());
  EXPECT_TRUE(identity::credential_signature_valid(*a, *doc));
}

TEST(Idm, IssueSanitizesAndRejects) {
  idm::Idm idm(issuer(), std::nullopt);
  auto vc = idm.issue(holder_did(1), {" CS-Department "}, 10, kNow, kStatusUrl);
  ASSERT_TRUE(vc.has_value());
  EXPECT_EQ(vc->attributes, std::vector<std::string>{"cs_department"});

  EXPECT_EQ(idm.issue(holder_did(1), {"Bad Name!"}, 10, kNow, kStatusUrl).error().code, idm::IdmErrorCode::bad_request);
  EXPECT_EQ(idm.issue(holder_did(1), {}, 10, kNow, kStatusUrl).error().code, idm::IdmErrorCode::bad_request);
  EXPECT_EQ(idm.issue(holder_did(1), {"a"}, 0, kNow, kStatusUrl).error().code, idm::IdmErrorCode::bad_request);
  EXPECT_EQ(idm.issue("not-a-did", {"a"}, 10, kNow, kStatusUrl).error().code, idm::IdmErrorCode::bad_request);
  EXPECT_EQ(idm.issue("did:reg:nobody", {"a"}, 10, kNow, kStatusUrl).error().code, idm::IdmErrorCode::not_found);

  auto reg = idm.register_did(reg_document("", 4), kNow);
  ASSERT_TRUE(reg.has_value());
  EXPECT_TRUE(idm.issue(reg->did, {"a"}, 10, kNow, kStatusUrl).has_value());
}

TEST(Idm, RevokeSetsBitIdempotentlyAndBumpsRevisionOnce) {
  idm::Idm idm(issuer(), std::nullopt);
  auto fresh = idm.status_list_json(idm::kStatusListId);
  ASSERT_TRUE(fresh.has_value());
  EXPECT_EQ((*fresh)["size"], idm::kInitialStatusListSize);
  EXPECT_EQ((*fresh)["bits"].get<std::string>().find_first_not_of('0'), std::string::npos);
  const auto rev0 = (*fresh)["revision"].get<std::uint64_t>();

  idm.issue(holder_did(1), {"a"}, 10, kNow, kStatusUrl);
  auto vc = idm.issue(holder_did(1), {"a"}, 10, kNow, kStatusUrl);
  ASSERT_TRUE(vc.has_value());
  EXPECT_FALSE(idm.revoke(vc->id).has_value());
  auto after = *idm.status_list_json(idm::kStatusListId);
  EXPECT_TRUE(revoked(after, vc->status.index));
  EXPECT_FALSE(revoked(after, vc->status.index - 1));
  EXPECT_GT(after["revision"].get<std::uint64_t>(), rev0);

  EXPECT_FALSE(idm.revoke(vc->id).has_value());
  EXPECT_EQ((*idm.status_list_json(idm::kStatusListId))["revision"], after["revision"]);

  auto missing = idm.revoke("urn:uuid:unknown");
  ASSERT_TRUE(missing.has_value());
  EXPECT_EQ(missing->code, idm::IdmErrorCode::not_found);
  EXPECT_FALSE(idm.status_list_json("2").has_value());
}

TEST(Idm, StatusListGrowsPastInitialSize) {
  idm::Idm idm(issuer(), std::nullopt);
  std::string last;
  for (std::uint64_t i = 0; i <= idm::kInitialStatusListSize; ++i) {
    last = idm.issue(holder_did(1), {"a"}, 10, kNow, kStatusUrl)->id;
  }
  ASSERT_FALSE(idm.revoke(last).has_value());
  auto list = *idm.status_list_json(idm::kStatusListId);
  EXPECT_EQ(list["size"], 2 * idm::kInitialStatusListSize);
  EXPECT_TRUE(revoked(list, idm::kInitialStatusListSize));
}

TEST(Idm, ConcurrentIssuanceAssignsUniqueIndices) {
  idm::Idm idm(issuer(), std::nullopt);
  std::vector<std::thread> threads;
  std::mutex mu;
  std::set<std::uint64_t> indices;
  for (int t = 0; t < 8; ++t) {
    threads.emplace_back([&] {
      for (int i = 0; i < 50; ++i) {
        auto vc = idm.issue(holder_did(1), {"a"}, 10, kNow, kStatusUrl);
        std::lock_guard lock(mu);
        indices.insert(vc->status.index);
      }
    });
  }
  for (auto& t : threads) t.join();
  EXPECT_EQ(indices.size(), 400u);
}

TEST(Idm, RestartReplaysIdenticalState) {
  TempDir dir;
  json status;
  std::string did;
  std::string doc;
  std::vector<idm::IssuedCredentialRecord> records;
  {
    idm::Idm idm(issuer(), dir.path());
    did = idm.register_did(reg_document("", 5), kNow)->did;
    doc = *idm.document(did);
    auto a = idm.issue(holder_did(1), {"researcher"}, 100, kNow, kStatusUrl);
    idm.issue(did, {"cs_department"}, 100, kNow, kStatusUrl);
    idm.revoke(a->id);
    idm.revoke(a->id);
    status = *idm.status_list_json(idm::kStatusListId);
    records = idm.credentials();
  }
  idm::Idm idm(issuer(), dir.path());
  EXPECT_EQ(*idm.document(did), doc);
  EXPECT_EQ(*idm.status_list_json(idm::kStatusListId), status);
  auto replayed = idm.credentials();
  ASSERT_EQ(replayed.size(), records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    EXPECT_EQ(identity::credential_to_json(replayed[i].credential), identity::credential_to_json(records[i].credential));
    EXPECT_EQ(replayed[i].revoked, records[i].revoked);
  }
  auto next = idm.issue(holder_did(1), {"a"}, 10, kNow, kStatusUrl);
  EXPECT_EQ(next->status.index, 2u);
}

class IdmHttp : public ::testing::Test {
 protected:
  void SetUp() override {
    idm::IdmConfig config;
    config.admin_token = kAdminToken;
    config.issuer_seed_hex = kIssuerSeed;
    config.clock = [] { return kNow; };
    service = std::make_unique<idm::IdmService>(config);
    service->start();
  }

  HttpResponse post(const std::string& target, const json& body, const std::string& token = kAdminToken) {
    auto url = parse_url(service->base_url() + target);
    return *pool.post_json(*url, body.dump(), {{"Authorization", "Bearer " + token}});
  }
  HttpResponse get(const std::string& target) { return *pool.get(*parse_url(service->base_url() + target)); }

  std::unique_ptr<idm::IdmService> service;
  HttpClientPool pool;
};

TEST_F(IdmHttp, DidRegistrationRoundTrip) {
  auto created = post("/v1/dids", {{"did_document", reg_document("", 7)}});
  ASSERT_EQ(created.status, 201) << created.body;
  const auto did = json::parse(created.body)["did"].get<std::string>();
  auto fetched = get("/v1/dids/" + did);
  ASSERT_EQ(fetched.status, 200);
  EXPECT_EQ(fetched.body, *service->idm().document(did));

  auto again = post("/v1/dids", {{"did_document", json::parse(fetched.body)}});
  EXPECT_EQ(again.status, 200);
  EXPECT_EQ(json::parse(again.body)["did"], did);
  EXPECT_EQ(post("/v1/dids", {{"did_document", reg_document(did, 8)}}).status, 409);
  EXPECT_EQ(post("/v1/dids", {{"did_document", reg_document("", 7)}}, "wrong").status, 401);
  EXPECT_EQ(post("/v1/dids", {{"nope", 1}}).status, 400);
  EXPECT_EQ(get("/v1/dids/did:reg:absent").status, 404);
}

TEST_F(IdmHttp, CredentialLifecycle) {
  const json request{{"subject_did", holder_did(1)}, {"attributes", {"cs_department", "researcher"}}, {"ttl_seconds", 2592000}};
  EXPECT_EQ(post("/v1/credentials", request, "wrong").status, 401);
  auto issued = post("/v1/credentials", request);
  ASSERT_EQ(issued.status, 201) << issued.body;
  auto vc = identity::credential_from_json(json::parse(issued.body));
  ASSERT_TRUE(vc.has_value()) << vc.error();
  EXPECT_EQ(vc->expires_at - vc->issued_at, 2592000);
  EXPECT_EQ(vc->status.status_url, service->base_url() + "/v1/status/1");

  auto bad = request;
  bad["attributes"] = {"Bad Name!"};
  EXPECT_EQ(post("/v1/credentials", bad).status, 400);
  bad = request;
  bad["subject_did"] = "did:reg:unknown";
  EXPECT_EQ(post("/v1/credentials", bad).status, 404);

  auto status = get("/v1/status/1");
  ASSERT_EQ(status.status, 200);
  EXPECT_EQ(status.header("Cache-Control"), "no-store");
  EXPECT_FALSE(revoked(json::parse(status.body), vc->status.index));

  EXPECT_EQ(post("/v1/credentials/" + vc->id + "/revoke", json::object(), "wrong").status, 401);
  EXPECT_EQ(post("/v1/credentials/" + vc->id + "/revoke", json::object()).status, 204);
  EXPECT_EQ(post("/v1/credentials/" + vc->id + "/revoke", json::object()).status, 204);
  EXPECT_EQ(post("/v1/credentials/urn:uuid:nope/revoke", json::object()).status, 404);
  EXPECT_TRUE(revoked(json::parse(get("/v1/status/1").body), vc->status.index));
  EXPECT_EQ(get("/v1/status/9").status, 404);

  auto issuer_info = json::parse(get("/v1/issuer").body);
  EXPECT_EQ(issuer_info["did"], service->idm().issuer_did());
}

TEST(IdmService, RequiresAdminToken) {
  idm::IdmConfig config;
  config.issuer_seed_hex = kIssuerSeed;
  EXPECT_THROW(idm::IdmService{config}, std::invalid_argument);
  config.admin_token = "t";
  config.issuer_seed_hex = "zz";
  EXPECT_THROW(idm::IdmService{config}, std::invalid_argument);
}

}  // namespace
}  // namespace edgeiam
