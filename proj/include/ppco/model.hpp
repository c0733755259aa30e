#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ppco/error.hpp"
#include "ppco/ids.hpp"

namespace ppco {

enum class ArtifactKind { FinalProduct, SubArtifact, Component };

struct Artifact {
  ArtifactId id;
  std::string name;
  std::string description;
  std::optional<ArtifactId> parent_id;  // absent only for the root
  ArtifactKind kind = ArtifactKind::Component;
  // Metadata reference per batch (e.g. the CAD model path for Geometry-Form).
  // Effective change proposals rewrite these entries.
  std::map<BatchKind, std::string> batches;

  friend bool operator==(const Artifact&, const Artifact&) = default;
};

enum class InteractionClass { Space, Energy, Material, Information };

struct Interaction {
  InteractionId id;
  ArtifactId endpoint_a;
  ArtifactId endpoint_b;
  InteractionClass classification = InteractionClass::Space;
  std::string description;

  bool touches(const ArtifactId& a) const { return endpoint_a == a || endpoint_b == a; }

  friend bool operator==(const Interaction&, const Interaction&) = default;
};

struct Process {
  ProcessId id;
  std::string name;
  std::vector<ActivityId> activity_ids;

  friend bool operator==(const Process&, const Process&) = default;
};

struct Activity {
  ActivityId id;
  ProcessId process_id;
  std::string name;
  Discipline discipline;

  friend bool operator==(const Activity&, const Activity&) = default;
};

struct Task {
  TaskId id;
  ActivityId activity_id;
  std::string name;

  friend bool operator==(const Task&, const Task&) = default;
};

struct TaskFlow {
  TaskId from_task;
  TaskId to_task;
  std::string payload_description;

  friend auto operator<=>(const TaskFlow&, const TaskFlow&) = default;
};

struct Team {
  TeamId id;
  std::string name;
  std::vector<ActorId> member_actor_ids;
  ArtifactId responsibility_artifact_id;

  friend bool operator==(const Team&, const Team&) = default;
};

// team x team -> collaboration frequency. Missing cells read as 0.
using CollaborationMatrix = std::map<TeamId, std::map<TeamId, std::int64_t>>;

struct Organization {
  std::vector<Team> teams;
  CollaborationMatrix collaboration_matrix;

  friend bool operator==(const Organization&, const Organization&) = default;
};

struct PpcoModel {
  std::string project_id;
  ArtifactId root_artifact_id;
  std::vector<Artifact> artifacts;
  std::vector<Interaction> interactions;
  std::vector<Process> processes;
  std::vector<Activity> activities;
  std::vector<Task> tasks;
  std::vector<TaskFlow> task_flows;
  Organization organization;

  friend bool operator==(const PpcoModel&, const PpcoModel&) = default;
};

// ---------------------------------------------------------------------------
// Lookup

template <typename Range, typename Id>
auto find_by_id(Range& range, const Id& id) -> decltype(&*std::begin(range)) {
  auto it = std::ranges::find_if(range, [&](const auto& e) { return e.id == id; });
  return it == std::end(range) ? nullptr : &*it;
}

inline const Artifact* find_artifact(const PpcoModel& m, const ArtifactId& id) {
  return find_by_id(m.artifacts, id);
}

inline const Artifact& artifact_or_throw(const PpcoModel& m, const ArtifactId& id) {
  const Artifact* a = find_artifact(m, id);
  if (a == nullptr) fail(ErrorCode::NotFound, "unknown artifact '" + id.str() + "'");
  return *a;
}

inline const Team* find_team(const PpcoModel& m, const TeamId& id) {
  return find_by_id(m.organization.teams, id);
}

inline const Activity* find_activity(const PpcoModel& m, const ActivityId& id) {
  return find_by_id(m.activities, id);
}

// Puts every collection in id order. Queries assume nothing about order, but
// canonical documents and comparisons do.
inline void canonicalize(PpcoModel& m) {
  auto by_id = [](const auto& a, const auto& b) { return a.id < b.id; };
  std::ranges::sort(m.artifacts, by_id);
  std::ranges::sort(m.interactions, by_id);
  std::ranges::sort(m.processes, by_id);
  std::ranges::sort(m.activities, by_id);
  std::ranges::sort(m.tasks, by_id);
  std::ranges::sort(m.task_flows);
  std::ranges::sort(m.organization.teams, by_id);
  for (auto& p : m.processes) std::ranges::sort(p.activity_ids);
  for (auto& t : m.organization.teams) std::ranges::sort(t.member_actor_ids);
}

// ---------------------------------------------------------------------------
// Queries

/// Direct children of `id`, sorted by id. Throws NotFound for an unknown id.
inline std::vector<Artifact> decompose(const PpcoModel& m, const ArtifactId& id) {
  artifact_or_throw(m, id);
  std::vector<Artifact> children;
  for (const auto& a : m.artifacts) {
    if (a.parent_id && *a.parent_id == id) children.push_back(a);
  }
  std::ranges::sort(children, {}, &Artifact::id);
  return children;
}

/// Strict descendants of `id` in depth-first, id-ascending order.
inline std::vector<Artifact> descendants(const PpcoModel& m, const ArtifactId& id) {
  std::vector<Artifact> out;
  std::vector<ArtifactId> stack{id};
  while (!stack.empty()) {
    ArtifactId cur = stack.back();
    stack.pop_back();
    auto children = decompose(m, cur);
    for (auto it = children.rbegin(); it != children.rend(); ++it) stack.push_back(it->id);
    if (cur != id) out.push_back(artifact_or_throw(m, cur));
    if (out.size() > m.artifacts.size()) fail(ErrorCode::InvalidState, "decomposition contains a cycle");
  }
  return out;
}

/// True when `ancestor` is `id` itself or lies on its parent chain.
inline bool is_ancestor_or_self(const PpcoModel& m, const ArtifactId& ancestor, const ArtifactId& id) {
  std::optional<ArtifactId> cur = id;
  for (std::size_t steps = 0; cur && steps <= m.artifacts.size(); ++steps) {
    if (*cur == ancestor) return true;
    const Artifact* a = find_artifact(m, *cur);
    if (a == nullptr) return false;
    cur = a->parent_id;
  }
  return false;
}

/// Interactions touching `id`, optionally of one class, sorted by id.
inline std::vector<Interaction> interactions_of(const PpcoModel& m, const ArtifactId& id,
                                                std::optional<InteractionClass> cls = std::nullopt) {
  artifact_or_throw(m, id);
  std::vector<Interaction> out;
  for (const auto& i : m.interactions) {
    if (i.touches(id) && (!cls || i.classification == *cls)) out.push_back(i);
  }
  std::ranges::sort(out, {}, &Interaction::id);
  return out;
}

/// Symmetric frequency lookup; (a, a) is always 0.
inline std::int64_t team_collaboration(const PpcoModel& m, const TeamId& a, const TeamId& b) {
  for (const auto& t : {a, b}) {
    if (find_team(m, t) == nullptr) fail(ErrorCode::NotFound, "unknown team '" + t.str() + "'");
  }
  if (a == b) return 0;
  const auto& matrix = m.organization.collaboration_matrix;
  auto cell = [&](const TeamId& x, const TeamId& y) -> std::int64_t {
    auto row = matrix.find(x);
    if (row == matrix.end()) return 0;
    auto it = row->second.find(y);
    return it == row->second.end() ? 0 : it->second;
  };
  // Validated models are symmetric; max() keeps the lookup symmetric even if not.
  return std::max(cell(a, b), cell(b, a));
}

}  // namespace ppco
