#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ppco/filter.hpp"
#include "ppco/workspace.hpp"

namespace ppco {

enum class ChangeStatus { Pending, Effective, Rejected, Withdrawn };
enum class Decision { Approve, Reject };

// Timestamps are logical ticks supplied by the caller (the store's event
// counter), so replays produce identical documents.
using Tick = std::uint64_t;

struct ChangeProposal {
  ChangeId id;
  ActorId author_actor_id;
  ArtifactId artifact_id;
  BatchKind batch;
  std::string delta;
  ChangeStatus status = ChangeStatus::Pending;
  std::set<ActorId> concerned;  // frozen at proposal time; never contains the author
  std::map<ActorId, Decision> decisions;
  Tick created = 0;
  std::optional<Tick> resolved;
  std::optional<std::uint64_t> model_version;  // set by the store when published

  bool terminal() const noexcept { return status != ChangeStatus::Pending; }

  friend bool operator==(const ChangeProposal&, const ChangeProposal&) = default;
};

struct Annotation {
  ChangeId change_id;
  ActorId actor_id;  // recipient
  ActorId author_actor_id;
  ArtifactId artifact_id;
  BatchKind batch;
  Tick created = 0;

  friend bool operator==(const Annotation&, const Annotation&) = default;
};

struct ProposalOutcome {
  ChangeProposal proposal;
  std::vector<Annotation> annotations;  // one per concerned actor
};

/// Status invariants: decisions only from concerned actors; Effective iff
/// all concerned approved; Rejected iff some concerned actor rejected.
inline bool is_consistent(const ChangeProposal& p) {
  bool any_reject = false;
  for (const auto& [actor, d] : p.decisions) {
    if (!p.concerned.contains(actor)) return false;
    any_reject = any_reject || d == Decision::Reject;
  }
  bool all_approve = !any_reject && p.decisions.size() == p.concerned.size();
  if ((p.status == ChangeStatus::Effective) != all_approve && p.status != ChangeStatus::Withdrawn) return false;
  if ((p.status == ChangeStatus::Rejected) != any_reject) return false;
  if (p.concerned.contains(p.author_actor_id)) return false;
  return p.terminal() == p.resolved.has_value();
}

/// Actors whose own filter result on `artifact_id` contains `batch`.
inline std::set<ActorId> concerned_actors(const Workspace& ws, const ArtifactId& artifact_id, const BatchKind& batch,
                                          const std::optional<ActorId>& exclude = std::nullopt) {
  artifact_or_throw(ws.model, artifact_id);
  std::set<ActorId> out;
  for (const auto& [id, _] : ws.actors) {
    if (exclude && id == *exclude) continue;
    if (filtering_info_artifact(ws, artifact_id, id).contains(batch)) out.insert(id);
  }
  return out;
}

/// A proposal with nobody else concerned is Effective on creation.
inline ProposalOutcome propose_change(const Workspace& ws, ChangeId id, const ActorId& author,
                                      const ArtifactId& artifact_id, const BatchKind& batch, std::string delta,
                                      Tick now) {
  auto own = filtering_info_artifact(ws, artifact_id, author);
  if (!own.contains(batch)) {
    fail(ErrorCode::PermissionDenied, "actor '" + author.str() + "' has no access to batch '" + batch.str() +
                                          "' on '" + artifact_id.str() + "'");
  }
  ProposalOutcome out;
  auto& p = out.proposal;
  p.id = std::move(id);
  p.author_actor_id = author;
  p.artifact_id = artifact_id;
  p.batch = batch;
  p.delta = std::move(delta);
  p.concerned = concerned_actors(ws, artifact_id, batch, author);
  p.created = now;
  if (p.concerned.empty()) {
    p.status = ChangeStatus::Effective;
    p.resolved = now;
  }
  for (const auto& actor : p.concerned) {
    out.annotations.push_back({p.id, actor, author, artifact_id, batch, now});
  }
  return out;
}

inline ChangeProposal record_decision(ChangeProposal p, const ActorId& actor, Decision decision, Tick now) {
  if (p.terminal()) fail(ErrorCode::InvalidState, "change '" + p.id.str() + "' is no longer pending");
  if (!p.concerned.contains(actor)) {
    fail(ErrorCode::PermissionDenied, "actor '" + actor.str() + "' is not concerned by change '" + p.id.str() + "'");
  }
  if (p.decisions.contains(actor)) {
    fail(ErrorCode::Conflict, "actor '" + actor.str() + "' already decided on change '" + p.id.str() + "'");
  }
  p.decisions.emplace(actor, decision);
  if (decision == Decision::Reject) {
    p.status = ChangeStatus::Rejected;
    p.resolved = now;
  } else if (p.decisions.size() == p.concerned.size()) {
    p.status = ChangeStatus::Effective;
    p.resolved = now;
  }
  return p;
}

inline ChangeProposal withdraw_change(ChangeProposal p, const ActorId& actor, Tick now) {
  if (p.terminal()) fail(ErrorCode::InvalidState, "change '" + p.id.str() + "' is no longer pending");
  if (actor != p.author_actor_id) {
    fail(ErrorCode::PermissionDenied, "only the author may withdraw change '" + p.id.str() + "'");
  }
  p.status = ChangeStatus::Withdrawn;
  p.resolved = now;
  return p;
}

/// The model version an Effective proposal publishes.
inline PpcoModel apply_change(PpcoModel model, const ChangeProposal& p) {
  require(p.status == ChangeStatus::Effective, ErrorCode::InvalidState, "only effective changes are applied");
  auto* a = find_by_id(model.artifacts, p.artifact_id);
  if (a == nullptr) fail(ErrorCode::NotFound, "unknown artifact '" + p.artifact_id.str() + "'");
  a->batches.insert_or_assign(p.batch, p.delta);
  return model;
}

}  // namespace ppco
