#pragma once

#include <algorithm>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "ppco/bounded.hpp"
#include "ppco/model.hpp"
#include "ppco/validate.hpp"

namespace ppco {

enum class Situation { Internal, ExternalPartner };

struct Actor {
  ActorId id;
  std::string name;
  std::string role;  // e.g. "external designer"
  Situation situation = Situation::Internal;
  TeamId team_id;
  std::map<Discipline, CompetenceLevel> competences;

  std::optional<CompetenceLevel> competence_in(const Discipline& d) const {
    auto it = competences.find(d);
    if (it == competences.end()) return std::nullopt;
    return it->second;
  }

  friend bool operator==(const Actor&, const Actor&) = default;
};

enum class RelationshipKind { Complements, Refines, Conflicts };

struct ViewpointDomain {
  ActivityId activity_id;
  Discipline discipline;

  friend bool operator==(const ViewpointDomain&, const ViewpointDomain&) = default;
};

struct ViewpointObjective {
  std::string focus_label;  // e.g. "shape global design"
  ArtifactId target_artifact_id;

  friend bool operator==(const ViewpointObjective&, const ViewpointObjective&) = default;
};

struct ViewpointRelationship {
  ViewpointId other_viewpoint_id;
  RelationshipKind kind = RelationshipKind::Complements;

  friend bool operator==(const ViewpointRelationship&, const ViewpointRelationship&) = default;
};

// Relationships and importance are carried for audit only; the filter
// does not read them.
struct Viewpoint {
  ViewpointId id;
  ActorId actor_id;
  ViewpointDomain domain;
  ViewpointObjective objective;
  std::vector<ViewpointRelationship> relationships;
  Importance importance{3};

  friend bool operator==(const Viewpoint&, const Viewpoint&) = default;
};

using ActorRegistry = std::map<ActorId, Actor>;
using ViewpointRegistry = std::map<ViewpointId, Viewpoint>;

inline const Actor& actor_or_throw(const ActorRegistry& actors, const ActorId& id) {
  auto it = actors.find(id);
  if (it == actors.end()) fail(ErrorCode::NotFound, "unknown actor '" + id.str() + "'");
  return it->second;
}

// ---------------------------------------------------------------------------
// Registration checks

inline ValidationReport check_actor(const PpcoModel& model, const Actor& actor) {
  ValidationReport r;
  if (actor.id.empty()) r.violations.push_back({"actor.empty_id", "", "actor id is empty"});
  if (find_team(model, actor.team_id) == nullptr) {
    r.violations.push_back({"actor.unknown_team", actor.id.str(), "team '" + actor.team_id.str() + "' does not exist"});
  }
  return r;
}

inline ValidationReport check_viewpoint(const PpcoModel& model, const ActorRegistry& actors,
                                        const ViewpointRegistry& viewpoints, const Viewpoint& vp) {
  ValidationReport r;
  auto add = [&](std::string code, std::string msg) {
    r.violations.push_back({std::move(code), vp.id.str(), std::move(msg)});
  };
  if (vp.id.empty()) add("viewpoint.empty_id", "viewpoint id is empty");
  auto actor = actors.find(vp.actor_id);
  if (actor == actors.end()) {
    add("viewpoint.unknown_actor", "actor '" + vp.actor_id.str() + "' is not registered");
  } else if (!actor->second.competence_in(vp.domain.discipline)) {
    add("viewpoint.missing_competence",
        "actor has no competence in '" + vp.domain.discipline + "'");
  }
  if (find_activity(model, vp.domain.activity_id) == nullptr) {
    add("viewpoint.unknown_activity", "activity '" + vp.domain.activity_id.str() + "' does not exist");
  }
  if (find_artifact(model, vp.objective.target_artifact_id) == nullptr) {
    add("viewpoint.unknown_target", "artifact '" + vp.objective.target_artifact_id.str() + "' does not exist");
  }
  for (const auto& rel : vp.relationships) {
    if (rel.other_viewpoint_id == vp.id) {
      add("viewpoint.self_relationship", "relationship points at itself");
    } else if (!viewpoints.contains(rel.other_viewpoint_id)) {
      add("viewpoint.unknown_relationship", "viewpoint '" + rel.other_viewpoint_id.str() + "' is not registered");
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Filtering steps 1-3

/// Step 1: every viewpoint held by `actor_id`, in id order.
inline std::vector<Viewpoint> restitution_list_viewpoint(const ActorRegistry& actors,
                                                         const ViewpointRegistry& viewpoints,
                                                         const ActorId& actor_id) {
  actor_or_throw(actors, actor_id);
  std::vector<Viewpoint> out;
  for (const auto& [_, vp] : viewpoints) {  // map iteration is already id order
    if (vp.actor_id == actor_id) out.push_back(vp);
  }
  return out;
}

/// Step 2: viewpoints whose target is `artifact_id` or one of its ancestors.
/// Input order is preserved.
inline std::vector<Viewpoint> filtering_list_vp_artifact(const PpcoModel& model,
                                                         std::span<const Viewpoint> viewpoints,
                                                         const ArtifactId& artifact_id) {
  artifact_or_throw(model, artifact_id);
  std::vector<Viewpoint> out;
  for (const auto& vp : viewpoints) {
    if (is_ancestor_or_self(model, vp.objective.target_artifact_id, artifact_id)) out.push_back(vp);
  }
  return out;
}

/// Step 3: decreasing competence of the holder in the viewpoint's
/// discipline, ties by id.
inline std::vector<Viewpoint> classification_vp(const ActorRegistry& actors,
                                                std::span<const Viewpoint> viewpoints) {
  std::vector<std::pair<CompetenceLevel, Viewpoint>> keyed;
  keyed.reserve(viewpoints.size());
  for (const auto& vp : viewpoints) {
    auto it = actors.find(vp.actor_id);
    auto level = it == actors.end() ? std::nullopt : it->second.competence_in(vp.domain.discipline);
    if (!level) {
      fail(ErrorCode::InvalidInput, "viewpoint '" + vp.id.str() + "' has no competence entry for '" +
                                        vp.domain.discipline + "'");
    }
    keyed.emplace_back(*level, vp);
  }
  std::ranges::sort(keyed, [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second.id < b.second.id;
  });
  std::vector<Viewpoint> out;
  out.reserve(keyed.size());
  for (auto& [_, vp] : keyed) out.push_back(std::move(vp));
  return out;
}

}  // namespace ppco
