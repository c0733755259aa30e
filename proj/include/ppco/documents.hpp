#pragma once

// Canonical response documents shared by the CLI and the HTTP service, so
// both surfaces emit identical bytes for the same query.

#include <optional>
#include <string>

#include "ppco/codec.hpp"
#include "ppco/store.hpp"

namespace ppco::documents {

inline std::string version(std::uint64_t v) { return canonical(Json{{"version", v}}); }

inline std::string import_model(Store& store, std::string_view body) { return version(store.import_model(body)); }

inline std::string export_model(const Store& store, std::optional<std::uint64_t> v = std::nullopt) {
  return store.export_model(v);
}

inline std::string validate_model(std::string_view body, const std::set<ActorId>* actors = nullptr) {
  PpcoModel m = decode<PpcoModel>(body);
  return canonical(report_json(actors ? ppco::validate_model(m, *actors) : ppco::validate_model(m)));
}

inline std::string actors(const Store& store) { return canonical_list(store.actors()); }

inline std::string add_actor(Store& store, std::string_view body) {
  return canonical_document(store.add_actor(decode<Actor>(body)));
}

inline std::string viewpoints(const Store& store, const std::optional<ActorId>& actor) {
  return canonical_list(actor ? store.viewpoints_of(*actor) : store.viewpoints());
}

inline std::string add_viewpoint(Store& store, std::string_view body) {
  return canonical_document(store.add_viewpoint(decode<Viewpoint>(body)));
}

inline std::string check_policy(std::string_view text) { return serialize_policy(parse_policy(text)); }

inline std::string filter(const Store& store, const ArtifactId& artifact, const ActorId& actor, bool audit) {
  return canonical(filter_result_json(store.filter(artifact, actor), audit));
}

inline std::string propose(Store& store, const ActorId& author, const ArtifactId& artifact, const BatchKind& batch,
                           std::string delta) {
  return canonical_document(store.propose(author, artifact, batch, std::move(delta)));
}

inline std::string decide(Store& store, const ChangeId& id, const ActorId& actor, Decision d) {
  return canonical_document(store.decide(id, actor, d));
}

inline std::string withdraw(Store& store, const ChangeId& id, const ActorId& actor) {
  return canonical_document(store.withdraw(id, actor));
}

inline std::string change(const Store& store, const ChangeId& id) { return canonical_document(store.change(id)); }

inline std::string changes(const Store& store) { return canonical_list(store.changes()); }

inline std::string annotations(const Store& store, const ActorId& actor) {
  actor_or_throw(store.workspace().actors, actor);
  return canonical_list(store.annotations(actor));
}

inline std::string error(const Error& e) { return canonical(error_json(e)); }

/// Accepts "Approve"/"approve"/"APPROVE" and likewise for Reject.
inline Decision decision_from_text(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (s == "approve") return Decision::Approve;
  if (s == "reject") return Decision::Reject;
  fail(ErrorCode::InvalidInput, "decision must be approve or reject");
}

}  // namespace ppco::documents
