#pragma once

// Canonical JSON documents. Keys are sorted (nlohmann::json's default object
// is a std::map), arrays follow the library's deterministic id order, output
// is two-space indented with a trailing newline.

#include <array>
#include <string>
#include <string_view>
#include <utility>

#include <json.hpp>

#include "ppco/filter.hpp"
#include "ppco/model.hpp"
#include "ppco/policy.hpp"
#include "ppco/validate.hpp"
#include "ppco/viewpoint.hpp"
#include "ppco/workflow.hpp"

namespace nlohmann {

template <typename Tag>
struct adl_serializer<ppco::StrongId<Tag>> {
  static void to_json(json& j, const ppco::StrongId<Tag>& id) { j = id.str(); }
  static void from_json(const json& j, ppco::StrongId<Tag>& id) {
    auto s = j.get<std::string>();
    if (s.empty()) ppco::fail(ppco::ErrorCode::ParseError, "identifier must not be empty");
    id = ppco::StrongId<Tag>(std::move(s));
  }
};

template <typename Tag, int Min, int Max>
struct adl_serializer<ppco::BoundedInt<Tag, Min, Max>> {
  static void to_json(json& j, ppco::BoundedInt<Tag, Min, Max> v) { j = v.value(); }
  static void from_json(const json& j, ppco::BoundedInt<Tag, Min, Max>& v) {
    v = ppco::BoundedInt<Tag, Min, Max>(j.get<int>());
  }
};

}  // namespace nlohmann

namespace ppco {

using Json = nlohmann::json;

namespace detail {

template <typename E, std::size_t N>
struct EnumNames {
  std::array<std::pair<E, std::string_view>, N> names;

  std::string_view to_string(E e) const {
    for (const auto& [v, n] : names) {
      if (v == e) return n;
    }
    return "?";
  }
  E parse(std::string_view s, std::string_view what) const {
    for (const auto& [v, n] : names) {
      if (n == s) return v;
    }
    fail(ErrorCode::ParseError, "unknown " + std::string(what) + " '" + std::string(s) + "'");
  }
};

inline constexpr EnumNames<ArtifactKind, 3> kArtifactKinds{{{
    {ArtifactKind::FinalProduct, "FinalProduct"},
    {ArtifactKind::SubArtifact, "SubArtifact"},
    {ArtifactKind::Component, "Component"},
}}};
inline constexpr EnumNames<InteractionClass, 4> kInteractionClasses{{{
    {InteractionClass::Space, "Space"},
    {InteractionClass::Energy, "Energy"},
    {InteractionClass::Material, "Material"},
    {InteractionClass::Information, "Information"},
}}};
inline constexpr EnumNames<Situation, 2> kSituations{{{
    {Situation::Internal, "Internal"},
    {Situation::ExternalPartner, "ExternalPartner"},
}}};
inline constexpr EnumNames<RelationshipKind, 3> kRelationshipKinds{{{
    {RelationshipKind::Complements, "Complements"},
    {RelationshipKind::Refines, "Refines"},
    {RelationshipKind::Conflicts, "Conflicts"},
}}};
inline constexpr EnumNames<ChangeStatus, 4> kChangeStatuses{{{
    {ChangeStatus::Pending, "Pending"},
    {ChangeStatus::Effective, "Effective"},
    {ChangeStatus::Rejected, "Rejected"},
    {ChangeStatus::Withdrawn, "Withdrawn"},
}}};
inline constexpr EnumNames<Decision, 2> kDecisions{{{
    {Decision::Approve, "Approve"},
    {Decision::Reject, "Reject"},
}}};

inline const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) fail(ErrorCode::ParseError, std::string("expected an object holding '") + key + "'");
  auto it = j.find(key);
  if (it == j.end()) fail(ErrorCode::ParseError, std::string("missing field '") + key + "'");
  return *it;
}

template <typename T>
T get(const Json& j, const char* key) {
  return field(j, key).get<T>();
}

template <typename T>
T get_or(const Json& j, const char* key, T fallback) {
  auto it = j.find(key);
  return it == j.end() || it->is_null() ? fallback : it->get<T>();
}

template <typename T>
std::optional<T> get_optional(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  return it->get<T>();
}

template <typename T>
std::vector<T> get_list(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) return {};
  std::vector<T> out;
  for (const auto& e : *it) {
    T v;
    from_json(e, v);
    out.push_back(std::move(v));
  }
  return out;
}

template <typename T>
Json list(const std::vector<T>& items) {
  Json a = Json::array();
  for (const auto& i : items) {
    Json e;
    to_json(e, i);
    a.push_back(std::move(e));
  }
  return a;
}

}  // namespace detail

inline std::string_view to_string(ArtifactKind v) { return detail::kArtifactKinds.to_string(v); }
inline std::string_view to_string(InteractionClass v) { return detail::kInteractionClasses.to_string(v); }
inline std::string_view to_string(ChangeStatus v) { return detail::kChangeStatuses.to_string(v); }
inline std::string_view to_string(Decision v) { return detail::kDecisions.to_string(v); }
inline InteractionClass parse_interaction_class(std::string_view s) {
  return detail::kInteractionClasses.parse(s, "interaction class");
}
inline Decision parse_decision(std::string_view s) { return detail::kDecisions.parse(s, "decision"); }

// --- model -----------------------------------------------------------------

inline void to_json(Json& j, const Artifact& a) {
  j = {{"id", a.id}, {"name", a.name}, {"description", a.description},
       {"kind", detail::kArtifactKinds.to_string(a.kind)}};
  if (a.parent_id) j["parent_id"] = *a.parent_id;
  if (!a.batches.empty()) {
    Json b = Json::object();
    for (const auto& [k, v] : a.batches) b[k.str()] = v;
    j["batches"] = std::move(b);
  }
}

inline void from_json(const Json& j, Artifact& a) {
  a.id = detail::get<ArtifactId>(j, "id");
  a.name = detail::get_or<std::string>(j, "name", "");
  a.description = detail::get_or<std::string>(j, "description", "");
  a.kind = detail::kArtifactKinds.parse(detail::get<std::string>(j, "kind"), "artifact kind");
  a.parent_id.reset();
  if (auto it = j.find("parent_id"); it != j.end() && !it->is_null()) a.parent_id = it->get<ArtifactId>();
  a.batches.clear();
  if (auto it = j.find("batches"); it != j.end()) {
    for (const auto& [k, v] : it->items()) a.batches.emplace(BatchKind(k), v.get<std::string>());
  }
}

inline void to_json(Json& j, const Interaction& i) {
  j = {{"id", i.id},
       {"endpoint_a", i.endpoint_a},
       {"endpoint_b", i.endpoint_b},
       {"classification", to_string(i.classification)},
       {"description", i.description}};
}

inline void from_json(const Json& j, Interaction& i) {
  i.id = detail::get<InteractionId>(j, "id");
  i.endpoint_a = detail::get<ArtifactId>(j, "endpoint_a");
  i.endpoint_b = detail::get<ArtifactId>(j, "endpoint_b");
  i.classification = parse_interaction_class(detail::get<std::string>(j, "classification"));
  i.description = detail::get_or<std::string>(j, "description", "");
}

inline void to_json(Json& j, const Process& p) {
  j = {{"id", p.id}, {"name", p.name}, {"activity_ids", p.activity_ids}};
}

inline void from_json(const Json& j, Process& p) {
  p.id = detail::get<ProcessId>(j, "id");
  p.name = detail::get_or<std::string>(j, "name", "");
  p.activity_ids = detail::get_or<std::vector<ActivityId>>(j, "activity_ids", {});
}

inline void to_json(Json& j, const Activity& a) {
  j = {{"id", a.id}, {"process_id", a.process_id}, {"name", a.name}, {"discipline", a.discipline}};
}

inline void from_json(const Json& j, Activity& a) {
  a.id = detail::get<ActivityId>(j, "id");
  a.process_id = detail::get<ProcessId>(j, "process_id");
  a.name = detail::get_or<std::string>(j, "name", "");
  a.discipline = detail::get<std::string>(j, "discipline");
}

inline void to_json(Json& j, const Task& t) {
  j = {{"id", t.id}, {"activity_id", t.activity_id}, {"name", t.name}};
}

inline void from_json(const Json& j, Task& t) {
  t.id = detail::get<TaskId>(j, "id");
  t.activity_id = detail::get<ActivityId>(j, "activity_id");
  t.name = detail::get_or<std::string>(j, "name", "");
}

inline void to_json(Json& j, const TaskFlow& f) {
  j = {{"from_task", f.from_task}, {"to_task", f.to_task}, {"payload_description", f.payload_description}};
}

inline void from_json(const Json& j, TaskFlow& f) {
  f.from_task = detail::get<TaskId>(j, "from_task");
  f.to_task = detail::get<TaskId>(j, "to_task");
  f.payload_description = detail::get_or<std::string>(j, "payload_description", "");
}

inline void to_json(Json& j, const Team& t) {
  j = {{"id", t.id},
       {"name", t.name},
       {"member_actor_ids", t.member_actor_ids},
       {"responsibility_artifact_id", t.responsibility_artifact_id}};
}

inline void from_json(const Json& j, Team& t) {
  t.id = detail::get<TeamId>(j, "id");
  t.name = detail::get_or<std::string>(j, "name", "");
  t.member_actor_ids = detail::get_or<std::vector<ActorId>>(j, "member_actor_ids", {});
  t.responsibility_artifact_id = detail::get<ArtifactId>(j, "responsibility_artifact_id");
}

inline void to_json(Json& j, const PpcoModel& m) {
  Json matrix = Json::object();
  for (const auto& [a, row] : m.organization.collaboration_matrix) {
    Json r = Json::object();
    for (const auto& [b, f] : row) r[b.str()] = f;
    matrix[a.str()] = std::move(r);
  }
  j = {{"project_id", m.project_id},
       {"root_artifact_id", m.root_artifact_id},
       {"artifacts", detail::list(m.artifacts)},
       {"interactions", detail::list(m.interactions)},
       {"processes", detail::list(m.processes)},
       {"activities", detail::list(m.activities)},
       {"tasks", detail::list(m.tasks)},
       {"task_flows", detail::list(m.task_flows)},
       {"organization", {{"teams", detail::list(m.organization.teams)}, {"collaboration_matrix", matrix}}}};
}

inline void from_json(const Json& j, PpcoModel& m) {
  m.project_id = detail::get<std::string>(j, "project_id");
  m.root_artifact_id = detail::get<ArtifactId>(j, "root_artifact_id");
  m.artifacts = detail::get_list<Artifact>(j, "artifacts");
  m.interactions = detail::get_list<Interaction>(j, "interactions");
  m.processes = detail::get_list<Process>(j, "processes");
  m.activities = detail::get_list<Activity>(j, "activities");
  m.tasks = detail::get_list<Task>(j, "tasks");
  m.task_flows = detail::get_list<TaskFlow>(j, "task_flows");
  m.organization = {};
  if (auto org = j.find("organization"); org != j.end()) {
    m.organization.teams = detail::get_list<Team>(*org, "teams");
    if (auto mat = org->find("collaboration_matrix"); mat != org->end()) {
      for (const auto& [a, row] : mat->items()) {
        for (const auto& [b, f] : row.items()) {
          m.organization.collaboration_matrix[TeamId(a)][TeamId(b)] = f.get<std::int64_t>();
        }
      }
    }
  }
  canonicalize(m);
}

// --- actors and viewpoints -------------------------------------------------

inline void to_json(Json& j, const Actor& a) {
  Json comp = Json::object();
  for (const auto& [d, level] : a.competences) comp[d] = level.value();
  j = {{"id", a.id},
       {"name", a.name},
       {"role", a.role},
       {"situation", detail::kSituations.to_string(a.situation)},
       {"team_id", a.team_id},
       {"competences", comp}};
}

inline void from_json(const Json& j, Actor& a) {
  a.id = detail::get<ActorId>(j, "id");
  a.name = detail::get_or<std::string>(j, "name", "");
  a.role = detail::get_or<std::string>(j, "role", "");
  a.situation = detail::kSituations.parse(detail::get<std::string>(j, "situation"), "situation");
  a.team_id = detail::get<TeamId>(j, "team_id");
  a.competences.clear();
  // A JSON object cannot repeat a discipline key after parsing, so the
  // one-entry-per-discipline invariant holds by construction.
  for (const auto& [d, level] : detail::field(j, "competences").items()) {
    a.competences.emplace(d, CompetenceLevel(level.get<int>()));
  }
}

inline void to_json(Json& j, const Viewpoint& v) {
  Json rels = Json::array();
  for (const auto& r : v.relationships) {
    rels.push_back({{"other_viewpoint_id", r.other_viewpoint_id}, {"kind", detail::kRelationshipKinds.to_string(r.kind)}});
  }
  j = {{"id", v.id},
       {"actor_id", v.actor_id},
       {"domain", {{"activity_id", v.domain.activity_id}, {"discipline", v.domain.discipline}}},
       {"objective", {{"focus_label", v.objective.focus_label}, {"target_artifact_id", v.objective.target_artifact_id}}},
       {"relationships", rels},
       {"importance", v.importance}};
}

inline void from_json(const Json& j, Viewpoint& v) {
  v.id = detail::get<ViewpointId>(j, "id");
  v.actor_id = detail::get<ActorId>(j, "actor_id");
  const auto& dom = detail::field(j, "domain");
  v.domain = {detail::get<ActivityId>(dom, "activity_id"), detail::get<std::string>(dom, "discipline")};
  const auto& obj = detail::field(j, "objective");
  v.objective = {detail::get_or<std::string>(obj, "focus_label", ""), detail::get<ArtifactId>(obj, "target_artifact_id")};
  v.relationships.clear();
  if (auto it = j.find("relationships"); it != j.end()) {
    for (const auto& r : *it) {
      v.relationships.push_back({detail::get<ViewpointId>(r, "other_viewpoint_id"),
                                 detail::kRelationshipKinds.parse(detail::get<std::string>(r, "kind"), "relationship kind")});
    }
  }
  v.importance = Importance(detail::get_or<int>(j, "importance", 3));
}

// --- batch lists and filter results ----------------------------------------

inline void to_json(Json& j, const ConnexionEntry& e) {
  j = {{"batch", e.batch}, {"level", e.level}, {"provenance", e.provenance}};
}

inline void from_json(const Json& j, ConnexionEntry& e) {
  e.batch = detail::get<BatchKind>(j, "batch");
  e.level = detail::get<BatchLevel>(j, "level");
  e.provenance = detail::get_or<std::set<ViewpointId>>(j, "provenance", {});
}

inline Json filter_result_json(const FilterResult& r, bool with_audit) {
  Json j = {{"actor_id", r.actor_id}, {"artifact_id", r.artifact_id}, {"entries", detail::list(r.entries)}};
  if (with_audit) {
    Json audit = Json::array();
    for (const auto& rec : r.audit) {
      audit.push_back({{"viewpoint_id", rec.viewpoint_id}, {"entries", detail::list(rec.entries)}});
    }
    j["audit"] = std::move(audit);
  }
  return j;
}

// --- workflow ----------------------------------------------------------------

inline void to_json(Json& j, const ChangeProposal& p) {
  Json decisions = Json::object();
  for (const auto& [a, d] : p.decisions) decisions[a.str()] = to_string(d);
  j = {{"id", p.id},
       {"author_actor_id", p.author_actor_id},
       {"artifact_id", p.artifact_id},
       {"batch", p.batch},
       {"delta", p.delta},
       {"status", to_string(p.status)},
       {"concerned", p.concerned},
       {"decisions", decisions},
       {"created", p.created},
       {"resolved", p.resolved ? Json(*p.resolved) : Json(nullptr)},
       {"model_version", p.model_version ? Json(*p.model_version) : Json(nullptr)}};
}

inline void from_json(const Json& j, ChangeProposal& p) {
  p.id = detail::get<ChangeId>(j, "id");
  p.author_actor_id = detail::get<ActorId>(j, "author_actor_id");
  p.artifact_id = detail::get<ArtifactId>(j, "artifact_id");
  p.batch = detail::get<BatchKind>(j, "batch");
  p.delta = detail::get_or<std::string>(j, "delta", "");
  p.status = detail::kChangeStatuses.parse(detail::get<std::string>(j, "status"), "change status");
  p.concerned = detail::get_or<std::set<ActorId>>(j, "concerned", {});
  p.decisions.clear();
  if (auto it = j.find("decisions"); it != j.end()) {
    for (const auto& [a, d] : it->items()) p.decisions.emplace(ActorId(a), parse_decision(d.get<std::string>()));
  }
  p.created = detail::get<Tick>(j, "created");
  p.resolved = detail::get_optional<Tick>(j, "resolved");
  p.model_version = detail::get_optional<std::uint64_t>(j, "model_version");
}

inline void to_json(Json& j, const Annotation& a) {
  j = {{"change_id", a.change_id},
       {"actor_id", a.actor_id},
       {"author_actor_id", a.author_actor_id},
       {"artifact_id", a.artifact_id},
       {"batch", a.batch},
       {"created", a.created}};
}

inline void from_json(const Json& j, Annotation& a) {
  a.change_id = detail::get<ChangeId>(j, "change_id");
  a.actor_id = detail::get<ActorId>(j, "actor_id");
  a.author_actor_id = detail::get<ActorId>(j, "author_actor_id");
  a.artifact_id = detail::get<ArtifactId>(j, "artifact_id");
  a.batch = detail::get<BatchKind>(j, "batch");
  a.created = detail::get<Tick>(j, "created");
}

// --- reports and errors ------------------------------------------------------

inline Json report_json(const ValidationReport& r) {
  Json v = Json::array();
  for (const auto& x : r.violations) v.push_back({{"code", x.code}, {"subject", x.subject}, {"message", x.message}});
  return {{"valid", r.ok()}, {"violations", v}};
}

inline Json error_json(const Error& e) {
  Json inner = {{"code", to_string(e.code())}, {"message", e.what()}};
  if (const auto* v = dynamic_cast<const ValidationError*>(&e)) {
    inner["violations"] = report_json(v->report())["violations"];
  }
  if (const auto* p = dynamic_cast<const PolicyError*>(&e)) {
    inner["line"] = p->line();
    inner["column"] = p->column();
  }
  return {{"error", inner}};
}

// --- text ------------------------------------------------------------------

inline std::string canonical(const Json& j) { return j.dump(2) + "\n"; }

template <typename T>
std::string canonical_document(const T& value) {
  Json j;
  to_json(j, value);
  return canonical(j);
}

template <typename T>
std::string canonical_list(const std::vector<T>& items) {
  return canonical(detail::list(items));
}

// Wraps JSON syntax/type errors as ParseError; domain errors pass through.
template <typename T>
T decode(std::string_view text) {
  try {
    Json j = Json::parse(text);
    T value;
    from_json(j, value);
    return value;
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("malformed document: ") + e.what());
  }
}

template <typename T>
std::vector<T> decode_list(std::string_view text) {
  try {
    Json j = Json::parse(text);
    if (!j.is_array()) fail(ErrorCode::ParseError, "expected a JSON array");
    std::vector<T> out;
    for (const auto& e : j) {
      T v;
      from_json(e, v);
      out.push_back(std::move(v));
    }
    return out;
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("malformed document: ") + e.what());
  }
}

}  // namespace ppco
