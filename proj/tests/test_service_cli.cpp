#include <gtest/gtest.h>

#include <sstream>
#include <thread>

#include "oracles.hpp"
#include "ppco/cli.hpp"
#include "ppco/http.hpp"
#include "temp_dir.hpp"

namespace ppco {
namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run_cli(const fs::path& store, std::vector<std::string> args) {
  args.insert(args.begin(), {"ppco", "--store", store.string()});
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = cli_run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class SurfaceTest : public ::testing::Test {
 protected:
  void SetUp() override { store.seed_fixture(); }

  testing::TempDir dir;
  Store store{dir.path()};
  Service service{store};
};

TEST_F(SurfaceTest, FilterEndpoint) {
  auto r = service.handle({"GET", "/artifacts/CycloneVessel/filter", {{"actor", "ActorX"}}, ""});
  EXPECT_EQ(r.status, 200);
  Json j = Json::parse(r.body);
  EXPECT_EQ(j["entries"].size(), 11u);
  EXPECT_FALSE(j.contains("audit"));
  std::map<std::string, int> got;
  for (const auto& e : j["entries"]) got[e["batch"]] = e["level"];
  EXPECT_EQ(got, oracle::min_merge({oracle::published_vp1(), oracle::published_vp2()}));

  auto audited = service.handle({"GET", "/artifacts/CycloneVessel/filter", {{"actor", "ActorX"}, {"audit", "1"}}, ""});
  EXPECT_EQ(Json::parse(audited.body)["audit"][0]["viewpoint_id"], "VP2");

  EXPECT_EQ(service.handle({"GET", "/artifacts/CycloneVessel/filter", {}, ""}).status, 400);
  EXPECT_EQ(service.handle({"GET", "/artifacts/CycloneVessel/filter", {{"actor", "Nobody"}}, ""}).status, 404);
}

TEST_F(SurfaceTest, ChangeEndpointsMapErrors) {
  auto created = service.handle({"POST", "/changes", {},
                                 R"({"author_actor_id":"ActorX","artifact_id":"CycloneVessel","batch":"Geometry-Form","delta":"v2"})"});
  ASSERT_EQ(created.status, 200) << created.body;
  std::string id = Json::parse(created.body)["id"];

  auto denied = service.handle({"POST", "/changes/" + id + "/decisions", {}, R"({"actor_id":"ActorZ","decision":"approve"})"});
  EXPECT_EQ(denied.status, 403);
  EXPECT_EQ(Json::parse(denied.body)["error"]["code"], "permission_denied");

  auto ok = service.handle({"POST", "/changes/" + id + "/decisions", {}, R"({"actor_id":"ActorY","decision":"Approve"})"});
  EXPECT_EQ(ok.status, 200);
  EXPECT_EQ(Json::parse(ok.body)["status"], "Effective");

  auto again = service.handle({"POST", "/changes/" + id + "/decisions", {}, R"({"actor_id":"ActorY","decision":"Approve"})"});
  EXPECT_EQ(again.status, 409);

  EXPECT_EQ(service.handle({"GET", "/changes/" + id, {}, ""}).body, ok.body);
  EXPECT_EQ(service.handle({"GET", "/changes/CH999999", {}, ""}).status, 404);

  auto notes = service.handle({"GET", "/actors/ActorY/annotations", {}, ""});
  EXPECT_EQ(Json::parse(notes.body).size(), 1u);

  auto no_access = service.handle({"POST", "/changes", {},
                                   R"({"author_actor_id":"ActorW","artifact_id":"CycloneVessel","batch":"Geometry-Form"})"});
  EXPECT_EQ(no_access.status, 403);
  EXPECT_EQ(service.handle({"POST", "/changes", {}, "{"}).status, 422);
}

TEST_F(SurfaceTest, ModelEndpoints) {
  EXPECT_EQ(service.handle({"GET", "/model/current", {}, ""}).body, store.export_model());
  PpcoModel m = fixture::cyclone_vessel_model();
  m.interactions[0].endpoint_a = ArtifactId("Ghost");
  auto r = service.handle({"POST", "/model", {}, canonical_document(m)});
  EXPECT_EQ(r.status, 422);
  EXPECT_EQ(Json::parse(r.body)["error"]["violations"][0]["code"], "interaction.dangling_endpoint");
  EXPECT_EQ(service.handle({"GET", "/actors/ActorX/viewpoints", {}, ""}).status, 200);
  EXPECT_EQ(service.handle({"GET", "/nowhere", {}, ""}).status, 404);
  EXPECT_EQ(service.handle({"DELETE", "/model", {}, ""}).status, 405);
}

TEST_F(SurfaceTest, CliExitCodes) {
  auto ok = run_cli(dir.path(), {"filter", "--actor", "ActorX", "--artifact", "CycloneVessel"});
  EXPECT_EQ(ok.code, 0);
  auto missing = run_cli(dir.path(), {"filter", "--actor", "NoSuchActor", "--artifact", "CycloneVessel"});
  EXPECT_EQ(missing.code, 1);
  EXPECT_EQ(Json::parse(missing.out)["error"]["code"], "not_found");
  EXPECT_EQ(run_cli(dir.path(), {"filter", "--actor", "ActorX"}).code, 2);
  EXPECT_EQ(run_cli(dir.path(), {"bogus"}).code, 2);
  EXPECT_EQ(run_cli(dir.path(), {"--help"}).code, 0);

  auto valid = run_cli(dir.path(), {"model", "validate", "fixture"});
  EXPECT_EQ(valid.code, 0);
  EXPECT_EQ(Json::parse(valid.out), Json::parse(R"({"valid":true,"violations":[]})"));
  EXPECT_EQ(run_cli(dir.path(), {"model", "validate", "--members", "fixture"}).code, 0);
}

TEST_F(SurfaceTest, CliAndServiceAgreeByteForByte) {
  auto cli = run_cli(dir.path(), {"filter", "--actor", "ActorX", "--artifact", "CycloneVessel", "--audit"});
  auto http = service.handle({"GET", "/artifacts/CycloneVessel/filter", {{"actor", "ActorX"}, {"audit", "true"}}, ""});
  EXPECT_EQ(cli.out, http.body);

  EXPECT_EQ(run_cli(dir.path(), {"model", "export"}).out, service.handle({"GET", "/model/current", {}, ""}).body);
  EXPECT_EQ(run_cli(dir.path(), {"vp", "list", "--actor", "ActorX"}).out,
            service.handle({"GET", "/actors/ActorX/viewpoints", {}, ""}).body);
  auto missing = run_cli(dir.path(), {"filter", "--actor", "Nobody", "--artifact", "CycloneVessel"});
  EXPECT_EQ(missing.out, service.handle({"GET", "/artifacts/CycloneVessel/filter", {{"actor", "Nobody"}}, ""}).body);
}

TEST_F(SurfaceTest, CliChangeLifecycle) {
  auto p = run_cli(dir.path(), {"change", "propose", "--author", "ActorX", "--artifact", "CycloneVessel", "--batch",
                                "Geometry-Form", "--delta", "cad://v2"});
  ASSERT_EQ(p.code, 0) << p.out;
  std::string id = Json::parse(p.out)["id"];
  EXPECT_EQ(run_cli(dir.path(), {"change", "decide", id, "--actor", "ActorZ", "--decision", "approve"}).code, 1);
  auto d = run_cli(dir.path(), {"change", "decide", id, "--actor", "ActorY", "--decision", "reject"});
  EXPECT_EQ(Json::parse(d.out)["status"], "Rejected");
  EXPECT_EQ(run_cli(dir.path(), {"change", "show", id}).out, d.out);
  EXPECT_EQ(run_cli(dir.path(), {"change", "decide", id, "--actor", "ActorY", "--decision", "maybe"}).code, 2);
  EXPECT_EQ(Json::parse(run_cli(dir.path(), {"change", "list"}).out).size(), 1u);
  EXPECT_EQ(Json::parse(run_cli(dir.path(), {"annotations", "--actor", "ActorY"}).out).size(), 1u);
}

TEST_F(SurfaceTest, CliPolicyCheck) {
  testing::TempDir files;
  auto write = [&](const char* name, const std::string& text) {
    detail::write_file_atomic(files.path() / name, text);
    return (files.path() / name).string();
  };
  auto good = run_cli(dir.path(), {"policy", "check", write("p.policy", std::string(fixture::kDefaultPolicy))});
  EXPECT_EQ(good.code, 0);
  EXPECT_EQ(good.out, serialize_policy(parse_policy(fixture::kDefaultPolicy)));
  auto bad = run_cli(dir.path(), {"policy", "check", write("bad.policy", "rule discipline=* activity=* competence>=1\n  grant Flows:0\n")});
  EXPECT_EQ(bad.code, 1);
  Json err = Json::parse(bad.out)["error"];
  EXPECT_EQ(err["line"], 2);
  EXPECT_EQ(err["column"], 15);
}

TEST_F(SurfaceTest, RealHttpRoundTrip) {
  httplib::Server server;
  bind(server, service);
  int port = server.bind_to_any_port("127.0.0.1");
  ASSERT_GT(port, 0);
  std::thread t([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  httplib::Client client("127.0.0.1", port);
  auto res = client.Get("/artifacts/CycloneVessel/filter?actor=ActorX");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  EXPECT_EQ(res->body, run_cli(dir.path(), {"filter", "--actor", "ActorX", "--artifact", "CycloneVessel"}).out);

  auto bad = client.Post("/changes/CH000001/decisions", R"({"actor_id":"ActorY","decision":"approve"})", "application/json");
  ASSERT_TRUE(bad);
  EXPECT_EQ(bad->status, 404);

  server.stop();
  t.join();
}

}  // namespace
}  // namespace ppco
