#include <gtest/gtest.h>

#include "oracles.hpp"
#include "ppco/fixture.hpp"

namespace ppco {
namespace {

const BatchKind kGeometry("Geometry-Form");
const ArtifactId kVessel("CycloneVessel");

class WorkflowTest : public ::testing::Test {
 protected:
  Workspace ws = fixture::cyclone_vessel_workspace();

  // Adds an actor whose geometry viewpoint on the vessel receives Geometry-Form.
  void add_geometry_stakeholder(const std::string& id) {
    ws.register_actor({ActorId(id), id, "reviewer", Situation::Internal, TeamId("T2"), {{"geometry", CompetenceLevel(3)}}});
    Viewpoint v = ws.viewpoints.at(ViewpointId("VP3"));
    v.id = ViewpointId("VP-" + id);
    v.actor_id = ActorId(id);
    v.relationships.clear();
    ws.register_viewpoint(v);
  }
};

TEST_F(WorkflowTest, ConcernedActorsRecomputeFilters) {
  EXPECT_EQ(concerned_actors(ws, kVessel, kGeometry, ActorId("ActorX")), std::set<ActorId>{ActorId("ActorY")});

  std::set<ActorId> oracle_set;
  for (const auto& [id, _] : ws.actors) {
    if (id != ActorId("ActorX") && filtering_info_artifact(ws, kVessel, id).contains(kGeometry)) oracle_set.insert(id);
  }
  EXPECT_EQ(concerned_actors(ws, kVessel, kGeometry, ActorId("ActorX")), oracle_set);

  EXPECT_TRUE(concerned_actors(ws, kVessel, BatchKind("Thermal")).empty());
  EXPECT_THROW(concerned_actors(ws, ArtifactId("Ghost"), kGeometry), Error);
}

TEST_F(WorkflowTest, ProposeIsPendingWithAnnotations) {
  auto out = propose_change(ws, ChangeId("CH1"), ActorId("ActorX"), kVessel, kGeometry, "cad://v2.step", 1);
  EXPECT_EQ(out.proposal.status, ChangeStatus::Pending);
  EXPECT_EQ(out.proposal.concerned, std::set<ActorId>{ActorId("ActorY")});
  ASSERT_EQ(out.annotations.size(), 1u);
  EXPECT_EQ(out.annotations[0].actor_id, ActorId("ActorY"));
  EXPECT_TRUE(is_consistent(out.proposal));
}

TEST_F(WorkflowTest, ProposeWithoutAccessIsDenied) {
  try {
    propose_change(ws, ChangeId("CH1"), ActorId("ActorY"), kVessel, BatchKind("Mechanic"), "x", 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::PermissionDenied);
  }
  try {
    propose_change(ws, ChangeId("CH1"), ActorId("Nobody"), kVessel, kGeometry, "x", 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotFound);
  }
}

TEST_F(WorkflowTest, NoOtherStakeholderIsImmediatelyEffective) {
  // Only ActorX receives Mechanic on the vessel.
  auto out = propose_change(ws, ChangeId("CH1"), ActorId("ActorX"), kVessel, BatchKind("Mechanic"), "m", 4);
  EXPECT_EQ(out.proposal.status, ChangeStatus::Effective);
  EXPECT_TRUE(out.annotations.empty());
  EXPECT_EQ(out.proposal.resolved, Tick{4});
  auto next = apply_change(ws.model, out.proposal);
  EXPECT_EQ(find_artifact(next, kVessel)->batches.at(BatchKind("Mechanic")), "m");
}

TEST_F(WorkflowTest, DecisionsFollowUnanimity) {
  add_geometry_stakeholder("ActorV");
  auto p = propose_change(ws, ChangeId("CH1"), ActorId("ActorX"), kVessel, kGeometry, "d", 1).proposal;
  ASSERT_EQ(p.concerned.size(), 2u);
  p = record_decision(p, ActorId("ActorV"), Decision::Approve, 2);
  EXPECT_EQ(p.status, ChangeStatus::Pending);
  p = record_decision(p, ActorId("ActorY"), Decision::Approve, 3);
  EXPECT_EQ(p.status, ChangeStatus::Effective);
  EXPECT_EQ(p.resolved, Tick{3});
  try {
    record_decision(p, ActorId("ActorY"), Decision::Approve, 4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidState);
  }
}

TEST_F(WorkflowTest, SingleRejectRejects) {
  add_geometry_stakeholder("ActorV");
  auto p = propose_change(ws, ChangeId("CH1"), ActorId("ActorX"), kVessel, kGeometry, "d", 1).proposal;
  p = record_decision(p, ActorId("ActorY"), Decision::Reject, 2);
  EXPECT_EQ(p.status, ChangeStatus::Rejected);
  EXPECT_TRUE(is_consistent(p));
  EXPECT_THROW(apply_change(ws.model, p), Error);
}

TEST_F(WorkflowTest, DecisionErrors) {
  add_geometry_stakeholder("ActorV");
  auto p = propose_change(ws, ChangeId("CH1"), ActorId("ActorX"), kVessel, kGeometry, "d", 1).proposal;
  auto code_of = [&](const ActorId& a) {
    try {
      record_decision(p, a, Decision::Approve, 2);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::IoError;
  };
  EXPECT_EQ(code_of(ActorId("ActorZ")), ErrorCode::PermissionDenied);
  EXPECT_EQ(code_of(ActorId("ActorX")), ErrorCode::PermissionDenied);  // author approves implicitly
  p = record_decision(p, ActorId("ActorY"), Decision::Approve, 2);
  EXPECT_EQ(code_of(ActorId("ActorY")), ErrorCode::Conflict);
}

TEST_F(WorkflowTest, WithdrawByAuthorOnly) {
  auto p = propose_change(ws, ChangeId("CH1"), ActorId("ActorX"), kVessel, kGeometry, "d", 1).proposal;
  EXPECT_THROW(withdraw_change(p, ActorId("ActorY"), 2), Error);
  auto w = withdraw_change(p, ActorId("ActorX"), 2);
  EXPECT_EQ(w.status, ChangeStatus::Withdrawn);
  EXPECT_TRUE(is_consistent(w));
  EXPECT_THROW(withdraw_change(w, ActorId("ActorX"), 3), Error);
  EXPECT_THROW(record_decision(w, ActorId("ActorY"), Decision::Approve, 3), Error);
}

TEST_F(WorkflowTest, ConcernedSetIsFrozen) {
  auto p = propose_change(ws, ChangeId("CH1"), ActorId("ActorX"), kVessel, kGeometry, "d", 1).proposal;
  add_geometry_stakeholder("ActorLate");
  p = record_decision(p, ActorId("ActorY"), Decision::Approve, 2);
  EXPECT_EQ(p.status, ChangeStatus::Effective);
  EXPECT_THROW(record_decision(p, ActorId("ActorLate"), Decision::Approve, 3), Error);
}

}  // namespace
}  // namespace ppco
