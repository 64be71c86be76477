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

#include <nlohmann/json.hpp>

#include "edgeiam/authz/decision.hpp"
#include "edgeiam/common/clock.hpp"
#include "stack.hpp"

namespace edgeiam {
namespace {

using nlohmann::json;
using testing::kAdminToken;
using testing::Stack;
using testing::StackOptions;
using testing::TempDir;

class AuthzHttp : public ::testing::Test {
 protected:
  explicit AuthzHttp(StackOptions options = {}) : stack(options) {}

  void SetUp() override { alice.emplace(stack.enroll(home.path() / "alice", {"cs_department", "researcher"}, &vc_id)); }

  HttpResponse send(const std::string& method, const std::string& target, const std::string& body,
                    const std::string& token = kAdminToken) {
    auto url = parse_url(stack.authz->base_url() + target);
    HttpHeaders headers{{"Content-Type", "application/json"}};
    if (!token.empty()) headers.emplace_back("Authorization", "Bearer " + token);
    return *stack.pool.send(*url, {method, url->target, headers, body});
  }

  json check_request(const wallet::Wallet& w, const std::string& id, const std::string& target,
                     std::int64_t ts = unix_now()) {
    auto vc = w.credential(id);
    auto url = parse_url(stack.pep_url(target));
    auto token = wallet::presentation_token(w, *vc, "GET", *url, "", ts);
    auto binding = identity::RequestBinding::make("GET", url->target, url->host_header(), "");
    return authz::decision_request_to_json({*binding, *token, *rebac::ObjectRef::parse("asset:smart_plug_1"), "reader"});
  }

  json check(const json& request) {
    auto res = send("POST", "/v1/check", request.dump(), "");
    EXPECT_EQ(res.status, 200) << res.body;
    return json::parse(res.body);
  }

  Stack stack;
  TempDir home;
  std::string vc_id;
  std::optional<wallet::Wallet> alice;
};

TEST_F(AuthzHttp, ModelAdministration) {
  EXPECT_EQ(send("PUT", "/v1/model", testing::kSmartPlugModel, "").status, 401);
  EXPECT_EQ(send("PUT", "/v1/model", testing::kSmartPlugModel, "wrong").status, 401);
  auto ok = send("PUT", "/v1/model", testing::kSmartPlugModel);
  ASSERT_EQ(ok.status, 200) << ok.body;
  EXPECT_TRUE(json::parse(ok.body).contains("model_id"));

  auto dangling = send("PUT", "/v1/model", R"({"types":{"doc":{"relations":{"reader":[{"computed":"owner"}]}}}})");
  ASSERT_EQ(dangling.status, 400);
  EXPECT_FALSE(json::parse(dangling.body)["violations"].empty());
  EXPECT_EQ(send("PUT", "/v1/model", "{not json").status, 400);

  auto current = json::parse(send("GET", "/v1/model", "").body);
  EXPECT_EQ(current["model_id"], json::parse(ok.body)["model_id"]);
  EXPECT_TRUE(current["model"]["types"].contains("asset"));
}

TEST_F(AuthzHttp, TupleAdministration) {
  const json write{{"writes", {{{"object", "asset:lamp"}, {"relation", "reader"}, {"subject", "user:bob"}},
                               {{"object", "asset:lamp"},
                                {"relation", "reader"},
                                {"subject", {{"object", "org:x"}, {"relation", "researcher"}}}}}},
                   {"deletes", json::array()}};
  EXPECT_EQ(send("POST", "/v1/tuples", write.dump(), "").status, 401);
  auto res = send("POST", "/v1/tuples", write.dump());
  ASSERT_EQ(res.status, 200) << res.body;
  const auto revision = json::parse(res.body)["revision"].get<std::uint64_t>();

  auto listed = json::parse(send("GET", "/v1/tuples?object=asset:lamp", "").body);
  EXPECT_EQ(listed["revision"], revision);
  EXPECT_EQ(listed["tuples"].size(), 2u);
  EXPECT_EQ(json::parse(send("GET", "/v1/tuples?subject=user:bob", "").body)["tuples"].size(), 1u);
  EXPECT_EQ(json::parse(send("GET", "/v1/tuples?subject=org:x%23researcher", "").body)["tuples"].size(), 1u);
  EXPECT_EQ(send("GET", "/v1/tuples?object=nocolon", "").status, 400);

  const json unknown_relation{{"writes", {{{"object", "asset:lamp"}, {"relation", "owner"}, {"subject", "user:bob"}}}}};
  EXPECT_EQ(send("POST", "/v1/tuples", unknown_relation.dump()).status, 400);
  EXPECT_EQ(json::parse(send("GET", "/v1/tuples", "").body)["revision"], revision);

  const json del{{"writes", json::array()},
                 {"deletes", {{{"object", "asset:lamp"}, {"relation", "reader"}, {"subject", "user:bob"}}}}};
  ASSERT_EQ(send("POST", "/v1/tuples", del.dump()).status, 200);
  EXPECT_EQ(json::parse(send("GET", "/v1/tuples?object=asset:lamp", "").body)["tuples"].size(), 1u);

  auto tree = send("GET", "/v1/expand?object=asset:lamp&relation=reader", "");
  ASSERT_EQ(tree.status, 200) << tree.body;
  EXPECT_EQ(send("GET", "/v1/expand?object=asset:lamp", "").status, 400);
}

TEST_F(AuthzHttp, CheckAllowsTrustedResearcherWithTrace) {
  auto d = check(check_request(*alice, vc_id, "/energy/plug1"));
  EXPECT_EQ(d["allowed"], true);
  EXPECT_EQ(d["reason_code"], "ok");
  EXPECT_EQ(d["subject"], alice->did());
  ASSERT_TRUE(d.contains("trace"));
  EXPECT_NE(d["trace"][0].get<std::string>().find("[contextual]"), std::string::npos);
}

TEST_F(AuthzHttp, ContextualTuplesAreNeverStored) {
  const auto before = json::parse(send("GET", "/v1/tuples", "").body);
  for (int i = 0; i < 5; ++i) check(check_request(*alice, vc_id, "/energy/plug1"));
  const auto after = json::parse(send("GET", "/v1/tuples", "").body);
  EXPECT_EQ(before, after);
  for (const auto& t : after["tuples"]) EXPECT_NE(t["relation"], "researcher");
}

TEST_F(AuthzHttp, ReplayedPresentationIsDenied) {
  const auto request = check_request(*alice, vc_id, "/energy/plug1");
  EXPECT_EQ(check(request)["reason_code"], "ok");
  auto second = check(request);
  EXPECT_EQ(second["allowed"], false);
  EXPECT_EQ(second["reason_code"], "replayed");
}

TEST_F(AuthzHttp, RevocationIsSeenOnTheNextCheck) {
  EXPECT_EQ(check(check_request(*alice, vc_id, "/energy/plug1"))["reason_code"], "ok");
  ASSERT_EQ(stack.admin_post(stack.idm->base_url(), "/v1/credentials/" + vc_id + "/revoke", "{}").status, 204);
  auto d = check(check_request(*alice, vc_id, "/energy/plug1"));
  EXPECT_EQ(d["allowed"], false);
  EXPECT_EQ(d["reason_code"], "revoked");
}

TEST_F(AuthzHttp, MissingAttributeMeansNoRelation) {
  std::string other_id;
  auto bob = stack.enroll(home.path() / "bob", {"cs_department"}, &other_id);
  auto d = check(check_request(bob, other_id, "/energy/plug1"));
  EXPECT_EQ(d["allowed"], false);
  EXPECT_EQ(d["reason_code"], "no_relation");
}

TEST_F(AuthzHttp, StaleAndMalformedRequests) {
  auto stale = check(check_request(*alice, vc_id, "/energy/plug1", unix_now() - 600));
  EXPECT_EQ(stale["reason_code"], "stale");

  auto bad = send("POST", "/v1/check", R"({"binding":{}})", "");
  EXPECT_EQ(bad.status, 400);
  EXPECT_EQ(json::parse(bad.body)["reason_code"], "malformed");

  auto garbled = check_request(*alice, vc_id, "/energy/plug1");
  garbled["vp_token"] = "!!!";
  EXPECT_EQ(check(garbled)["reason_code"], "malformed");

  auto rebound = check_request(*alice, vc_id, "/energy/plug1");
  rebound["binding"]["target"] = "/energy/plug2";
  EXPECT_EQ(check(rebound)["reason_code"], "binding_mismatch");
}

TEST_F(AuthzHttp, UntrustedIssuerAfterRestartWithSameTuples) {
  const auto tuples = json::parse(send("GET", "/v1/tuples", "").body);
  stack.restart_authz(false);
  EXPECT_EQ(json::parse(send("GET", "/v1/tuples", "").body), tuples);
  auto d = check(check_request(*alice, vc_id, "/energy/plug1"));
  EXPECT_EQ(d["allowed"], false);
  EXPECT_EQ(d["reason_code"], "untrusted_issuer");
}

TEST_F(AuthzHttp, IdmOutageFailsClosed) {
  const auto request = check_request(*alice, vc_id, "/energy/plug1");
  stack.idm->stop();
  auto d = check(request);
  EXPECT_EQ(d["allowed"], false);
  EXPECT_EQ(d["reason_code"], "upstream_unavailable");
}

TEST_F(AuthzHttp, CheckLocalBypassesPip) {
  const json body{{"subject_id", "user:alice"},
                  {"relation", "reader"},
                  {"object", "asset:smart_plug_1"},
                  {"contextual_tuples",
                   {{{"object", "org:" + stack.issuer_did()}, {"relation", "researcher"}, {"subject", "user:alice"}}}}};
  EXPECT_EQ(send("POST", "/v1/check-local", body.dump(), "").status, 401);
  auto allowed = json::parse(send("POST", "/v1/check-local", body.dump()).body);
  EXPECT_EQ(allowed["allowed"], true);
  EXPECT_GE(allowed["depth_reached"].get<int>(), 1);
  auto without = body;
  without.erase("contextual_tuples");
  EXPECT_EQ(json::parse(send("POST", "/v1/check-local", without.dump()).body)["reason_code"], "no_relation");
}

TEST_F(AuthzHttp, MetricsCountDecisions) {
  for (int i = 0; i < 3; ++i) check(check_request(*alice, vc_id, "/energy/plug1"));
  auto metrics = json::parse(send("GET", "/metrics", "").body);
  EXPECT_EQ(metrics["check"]["count"], 3);
  EXPECT_LE(metrics["check"]["p90_ms"].get<double>(), metrics["check"]["max_ms"].get<double>());
  EXPECT_EQ(stack.authz->decision_latency().count, 3u);
}

class CachedAuthzHttp : public AuthzHttp {
 protected:
  CachedAuthzHttp() : AuthzHttp(StackOptions{.cache_enabled = true}) {}
};

TEST_F(CachedAuthzHttp, RevocationMayLagWithinCacheTtl) {
  EXPECT_EQ(check(check_request(*alice, vc_id, "/energy/plug1"))["reason_code"], "ok");
  ASSERT_EQ(stack.admin_post(stack.idm->base_url(), "/v1/credentials/" + vc_id + "/revoke", "{}").status, 204);
  EXPECT_EQ(check(check_request(*alice, vc_id, "/energy/plug1"))["reason_code"], "ok");
}

TEST(DecisionReason, FoldsIdentityOnlyCodes) {
  using identity::ReasonCode;
  EXPECT_EQ(authz::decision_reason(ReasonCode::status_unavailable), ReasonCode::upstream_unavailable);
  EXPECT_EQ(authz::decision_reason(ReasonCode::holder_key_mismatch), ReasonCode::holder_signature_invalid);
  EXPECT_EQ(authz::decision_reason(ReasonCode::revoked), ReasonCode::revoked);
}

TEST(AccessDecisionJson, AllowedIffOk) {
  EXPECT_TRUE(authz::access_decision_from_json(json{{"allowed", true}, {"reason_code", "ok"}}).has_value());
  EXPECT_FALSE(authz::access_decision_from_json(json{{"allowed", true}, {"reason_code", "revoked"}}).has_value());
  EXPECT_FALSE(authz::access_decision_from_json(json{{"allowed", false}, {"reason_code", "ok"}}).has_value());
  EXPECT_FALSE(authz::access_decision_from_json(json{{"allowed", false}, {"reason_code", "bogus"}}).has_value());
}

}  // namespace
}  // namespace edgeiam
