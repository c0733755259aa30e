#include <gtest/gtest.h>

#include <thread>

#include "corruptions.hpp"
#include "oracles.hpp"
#include "ppco/store.hpp"
#include "temp_dir.hpp"

namespace ppco {
namespace {

const fs::path kFixtures = PPCO_FIXTURE_DIR;

std::string fixture_file(const char* name) { return detail::read_file(kFixtures / name); }

class StoreTest : public ::testing::Test {
 protected:
  testing::TempDir dir;
  Store store{dir.path()};
};

TEST_F(StoreTest, EmptyStore) {
  EXPECT_EQ(store.current_version(), 0u);
  try {
    store.export_model();
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotFound);
  }
}

TEST_F(StoreTest, FixtureImportExportIsByteIdentical) {
  std::string doc = fixture_file("model.json");
  EXPECT_EQ(store.import_model(doc), 1u);
  EXPECT_EQ(store.export_model(), doc);
  EXPECT_EQ(store.export_model(1), doc);
  EXPECT_EQ(doc, canonical_document(fixture::cyclone_vessel_model()));
  EXPECT_THROW(store.export_model(7), Error);
}

TEST_F(StoreTest, ImportCanonicalizesOrderAndWhitespace) {
  Json j = Json::parse(fixture_file("model.json"));
  std::reverse(j["artifacts"].begin(), j["artifacts"].end());
  std::reverse(j["interactions"].begin(), j["interactions"].end());
  store.import_model(j.dump());
  EXPECT_EQ(store.export_model(), fixture_file("model.json"));
  // Fixed point: export -> import -> export.
  store.import_model(store.export_model());
  EXPECT_EQ(store.export_model(2), store.export_model(1));
}

TEST_F(StoreTest, ImportRejectsInvalidModel) {
  for (const auto& c : testing::single_fault_corruptions()) {
    PpcoModel m = fixture::cyclone_vessel_model();
    c.apply(m);
    try {
      store.import_model(canonical_document(m));
      FAIL() << c.name;
    } catch (const ValidationError& e) {
      EXPECT_EQ(e.report().codes(), std::vector<std::string>{c.expected_code}) << c.name;
    }
  }
  EXPECT_EQ(store.current_version(), 0u);
  EXPECT_THROW(store.import_model("{not json"), Error);
}

TEST_F(StoreTest, FixtureDocumentsRoundTrip) {
  store.seed_fixture();
  EXPECT_EQ(canonical_list(store.actors()), fixture_file("actors.json"));
  EXPECT_EQ(canonical_list(store.viewpoints()), fixture_file("viewpoints.json"));
  EXPECT_EQ(serialize_policy(store.policy()), fixture_file("default.policy"));
  EXPECT_EQ(serialize_policy(parse_policy(fixture_file("default.policy"))), fixture_file("default.policy"));

  // write -> read -> write per entity kind
  for (const auto& a : decode_list<Actor>(fixture_file("actors.json"))) {
    EXPECT_EQ(canonical_document(decode<Actor>(canonical_document(a))), canonical_document(a));
  }
  for (const auto& v : decode_list<Viewpoint>(fixture_file("viewpoints.json"))) {
    EXPECT_EQ(canonical_document(decode<Viewpoint>(canonical_document(v))), canonical_document(v));
  }
}

TEST_F(StoreTest, ActorNeedsModelAndTeam) {
  Actor a = fixture::cyclone_vessel_actors()[0];
  EXPECT_THROW(store.add_actor(a), Error);
  store.import_model(fixture_file("model.json"));
  a.team_id = TeamId("T8");
  EXPECT_THROW(store.add_actor(a), ValidationError);
  a.team_id = TeamId("T1");
  a.id = ActorId("../escape");
  EXPECT_THROW(store.add_actor(a), Error);
}

TEST_F(StoreTest, EffectiveChangePublishesVersion) {
  store.seed_fixture();
  auto p = store.propose(ActorId("ActorX"), ArtifactId("CycloneVessel"), BatchKind("Geometry-Form"), "cad://v2");
  EXPECT_EQ(p.status, ChangeStatus::Pending);
  EXPECT_EQ(store.current_version(), 1u);
  EXPECT_EQ(store.annotations(ActorId("ActorY")).size(), 1u);
  p = store.decide(p.id, ActorId("ActorY"), Decision::Approve);
  EXPECT_EQ(p.status, ChangeStatus::Effective);
  EXPECT_EQ(p.model_version, std::optional<std::uint64_t>(2));
  EXPECT_EQ(store.current_version(), 2u);
  EXPECT_EQ(find_artifact(store.model(), ArtifactId("CycloneVessel"))->batches.at(BatchKind("Geometry-Form")),
            "cad://v2");
  EXPECT_EQ(store.change(p.id), p);
}

TEST_F(StoreTest, RejectedAndWithdrawnLeaveModelUntouched) {
  store.seed_fixture();
  std::string before = store.export_model();
  auto p = store.propose(ActorId("ActorX"), ArtifactId("CycloneVessel"), BatchKind("Geometry-Form"), "a");
  store.decide(p.id, ActorId("ActorY"), Decision::Reject);
  auto q = store.propose(ActorId("ActorX"), ArtifactId("CycloneVessel"), BatchKind("Geometry-Form"), "b");
  store.withdraw(q.id, ActorId("ActorX"));
  EXPECT_EQ(store.current_version(), 1u);
  EXPECT_EQ(store.export_model(), before);
  EXPECT_EQ(store.changes().size(), 2u);
  EXPECT_THROW(store.decide(q.id, ActorId("ActorY"), Decision::Approve), Error);
}

TEST_F(StoreTest, RecoveryFinishesPublishedChange) {
  store.seed_fixture();
  auto p = store.propose(ActorId("ActorX"), ArtifactId("CycloneVessel"), BatchKind("Geometry-Form"), "cad://v3");
  auto done = store.decide(p.id, ActorId("ActorY"), Decision::Approve);
  // Simulate a crash after the CURRENT rename: change document still Pending.
  detail::write_file_atomic(dir.path() / "changes" / (p.id.str() + ".json"), canonical_document(p));
  Store reopened(dir.path());
  auto recovered = reopened.change(p.id);
  EXPECT_EQ(recovered.status, ChangeStatus::Effective);
  EXPECT_EQ(recovered.model_version, done.model_version);
}

TEST_F(StoreTest, ConcurrentReadersDuringWrites) {
  store.seed_fixture();
  std::atomic<bool> stop{false};
  std::atomic<int> reads{0};
  std::vector<std::thread> readers;
  const std::string expected = canonical(filter_result_json(store.filter(ArtifactId("CycloneVessel"), ActorId("ActorX")), false));
  for (int i = 0; i < 4; ++i) {
    readers.emplace_back([&] {
      while (!stop) {
        auto r = store.filter(ArtifactId("CycloneVessel"), ActorId("ActorX"));
        EXPECT_EQ(canonical(filter_result_json(r, false)), expected);
        ++reads;
      }
    });
  }
  for (int i = 0; i < 20; ++i) {
    auto p = store.propose(ActorId("ActorX"), ArtifactId("CycloneVessel"), BatchKind("Geometry-Form"), std::to_string(i));
    store.decide(p.id, ActorId("ActorY"), i % 2 ? Decision::Approve : Decision::Reject);
  }
  stop = true;
  for (auto& t : readers) t.join();
  EXPECT_GT(reads.load(), 0);
  EXPECT_EQ(store.current_version(), 11u);
}

}  // namespace
}  // namespace ppco
