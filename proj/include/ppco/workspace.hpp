#pragma once

#include <set>

#include "ppco/model.hpp"
#include "ppco/policy.hpp"
#include "ppco/validate.hpp"
#include "ppco/viewpoint.hpp"

namespace ppco {

// Immutable-by-convention snapshot of everything the filter reads: the
// current model version, both registries and the active policy.
struct Workspace {
  PpcoModel model;
  ActorRegistry actors;
  ViewpointRegistry viewpoints;
  Policy policy;

  std::set<ActorId> actor_ids() const {
    std::set<ActorId> ids;
    for (const auto& [id, _] : actors) ids.insert(id);
    return ids;
  }

  // Throw ValidationError on a rejected registration; re-registering an
  // existing id replaces it.
  void register_actor(Actor actor) {
    auto report = check_actor(model, actor);
    if (!report.ok()) throw ValidationError(std::move(report));
    actors.insert_or_assign(actor.id, std::move(actor));
  }

  void register_viewpoint(Viewpoint vp) {
    auto report = check_viewpoint(model, actors, viewpoints, vp);
    if (!report.ok()) throw ValidationError(std::move(report));
    viewpoints.insert_or_assign(vp.id, std::move(vp));
  }
};

}  // namespace ppco
