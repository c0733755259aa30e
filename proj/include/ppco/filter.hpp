#pragma once

#include <vector>

#include "ppco/policy.hpp"
#include "ppco/viewpoint.hpp"
#include "ppco/workspace.hpp"

namespace ppco {

/// One viewpoint's step-4 output, kept in classification order for audit.
struct AuditRecord {
  ViewpointId viewpoint_id;
  ConnexionLevelList entries;

  friend bool operator==(const AuditRecord&, const AuditRecord&) = default;
};

struct FilterResult {
  ActorId actor_id;
  ArtifactId artifact_id;
  ConnexionLevelList entries;  // merged
  std::vector<AuditRecord> audit;

  /// No viewpoint of the actor covers the artifact. Still a success.
  bool empty() const noexcept { return audit.empty(); }
  bool contains(const BatchKind& batch) const { return find_batch(entries, batch) != nullptr; }

  friend bool operator==(const FilterResult&, const FilterResult&) = default;
};

/// Step 5: union of batches, lowest level per shared batch, provenance union.
/// Idempotent, commutative and associative.
inline ConnexionLevelList optimize_list_connexion_level(const ConnexionLevelList& current,
                                                        const ConnexionLevelList& previous) {
  ConnexionLevelList out;
  out.reserve(current.size() + previous.size());
  auto a = current.begin();
  auto b = previous.begin();
  while (a != current.end() || b != previous.end()) {
    if (b == previous.end() || (a != current.end() && a->batch < b->batch)) {
      out.push_back(*a++);
    } else if (a == current.end() || b->batch < a->batch) {
      out.push_back(*b++);
    } else {
      ConnexionEntry e{a->batch, std::min(a->level, b->level), a->provenance};
      e.provenance.insert(b->provenance.begin(), b->provenance.end());
      out.push_back(std::move(e));
      ++a;
      ++b;
    }
  }
  return out;
}

/// Runs the five filtering steps for one actor on one artifact.
inline FilterResult filtering_info_artifact(const Workspace& ws, const ArtifactId& artifact_id,
                                            const ActorId& actor_id) {
  const Actor& actor = actor_or_throw(ws.actors, actor_id);
  artifact_or_throw(ws.model, artifact_id);

  auto held = restitution_list_viewpoint(ws.actors, ws.viewpoints, actor_id);
  auto on_artifact = filtering_list_vp_artifact(ws.model, held, artifact_id);
  auto ranked = classification_vp(ws.actors, on_artifact);

  FilterResult result{actor_id, artifact_id, {}, {}};
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    auto per_viewpoint = restitution_list_connexion_level(ranked[i], actor, ws.policy);
    if (i > 0) {
      result.entries = optimize_list_connexion_level(per_viewpoint, result.entries);
    } else {
      result.entries = per_viewpoint;
    }
    result.audit.push_back({ranked[i].id, std::move(per_viewpoint)});
  }
  return result;
}

}  // namespace ppco
