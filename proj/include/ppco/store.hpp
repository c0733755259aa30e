#pragma once

// File-backed store. One document per entity:
//
//   <root>/meta.json                    logical clock and id counters
//   <root>/model/CURRENT                current model version number
//   <root>/model/<version>.json         canonical model documents
//   <root>/model/<version>.meta.json    {"version", "applied_change"}
//   <root>/actors/<id>.json
//   <root>/viewpoints/<id>.json
//   <root>/policies/default.policy
//   <root>/changes/<id>.json
//   <root>/annotations/<actor>/<change>.json
//
// Every file is replaced by write-to-temp + rename. Writers hold an exclusive
// flock on <root>/.lock (and an in-process mutex), readers a shared one. The
// rename of model/CURRENT is the single publication point for a new model
// version; a change document only turns Effective after it.

#include <sys/file.h>
#include <fcntl.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "ppco/codec.hpp"
#include "ppco/fixture.hpp"
#include "ppco/workflow.hpp"
#include "ppco/workspace.hpp"

namespace ppco {

namespace fs = std::filesystem;

namespace detail {

inline std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) fail(ErrorCode::IoError, "cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file_atomic(const fs::path& p, std::string_view content) {
  fs::path tmp = p;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorCode::IoError, "cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) fail(ErrorCode::IoError, "short write to " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, p, ec);
  if (ec) fail(ErrorCode::IoError, "cannot publish " + p.string() + ": " + ec.message());
}

// Ids become file names, so they are restricted to a portable charset.
inline const std::string& safe_name(const std::string& id) {
  bool ok = !id.empty() && id.front() != '.' && id.size() <= 128;
  for (char c : id) ok = ok && (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.');
  if (!ok) fail(ErrorCode::InvalidInput, "identifier '" + id + "' is not storable");
  return id;
}

class FileLock {
 public:
  FileLock(const fs::path& p, bool exclusive) {
    fd_ = ::open(p.c_str(), O_RDWR | O_CREAT | O_CLOEXEC, 0644);
    if (fd_ < 0) fail(ErrorCode::IoError, "cannot open lock " + p.string());
    if (::flock(fd_, exclusive ? LOCK_EX : LOCK_SH) != 0) {
      ::close(fd_);
      fail(ErrorCode::IoError, "cannot lock " + p.string());
    }
  }
  ~FileLock() {
    ::flock(fd_, LOCK_UN);
    ::close(fd_);
  }
  FileLock(const FileLock&) = delete;
  FileLock& operator=(const FileLock&) = delete;

 private:
  int fd_ = -1;
};

inline std::string version_name(std::uint64_t v) {
  std::ostringstream s;
  s << std::setw(6) << std::setfill('0') << v;
  return s.str();
}

}  // namespace detail

class Store {
 public:
  /// Opens (creating if needed) the store at `root` and reconciles a
  /// change whose model version was published before its own document.
  explicit Store(fs::path root) : root_(std::move(root)) {
    for (const char* d : {"model", "actors", "viewpoints", "policies", "changes", "annotations"}) {
      fs::create_directories(root_ / d);
    }
    std::unique_lock guard(mutex_);
    detail::FileLock lock(lock_path(), true);
    if (!fs::exists(root_ / "meta.json")) write_meta({0, 0});
    recover();
  }

  const fs::path& root() const noexcept { return root_; }

  // --- model -----------------------------------------------------------------

  std::uint64_t current_version() const {
    auto r = read_lock();
    return current_version_unlocked();
  }

  /// Canonical model document of `version` (default: current).
  std::string export_model(std::optional<std::uint64_t> version = std::nullopt) const {
    auto r = read_lock();
    return export_unlocked(version);
  }

  PpcoModel model(std::optional<std::uint64_t> version = std::nullopt) const {
    return decode<PpcoModel>(export_model(version));
  }

  /// Rejects with ValidationError when the document violates any model
  /// invariant; returns the new version otherwise.
  std::uint64_t import_model(std::string_view document) {
    PpcoModel m = decode<PpcoModel>(document);
    auto report = validate_model(m);
    if (!report.ok()) throw ValidationError(std::move(report));
    auto w = write_lock();
    return publish_model(m, std::nullopt);
  }

  // --- registries ------------------------------------------------------------

  Actor add_actor(Actor actor) {
    auto w = write_lock();
    Workspace ws = workspace_unlocked();
    detail::safe_name(actor.id.str());
    ws.register_actor(actor);
    detail::write_file_atomic(root_ / "actors" / (actor.id.str() + ".json"), canonical_document(actor));
    bump_tick();
    return actor;
  }

  Viewpoint add_viewpoint(Viewpoint vp) {
    auto w = write_lock();
    Workspace ws = workspace_unlocked();
    detail::safe_name(vp.id.str());
    ws.register_viewpoint(vp);
    detail::write_file_atomic(root_ / "viewpoints" / (vp.id.str() + ".json"), canonical_document(vp));
    bump_tick();
    return vp;
  }

  std::vector<Actor> actors() const {
    auto r = read_lock();
    return load_dir<Actor>(root_ / "actors");
  }

  std::vector<Viewpoint> viewpoints() const {
    auto r = read_lock();
    return load_dir<Viewpoint>(root_ / "viewpoints");
  }

  /// Step 1 for `actor_id`; NotFound for an unregistered actor.
  std::vector<Viewpoint> viewpoints_of(const ActorId& actor_id) const {
    Workspace ws = workspace();
    return restitution_list_viewpoint(ws.actors, ws.viewpoints, actor_id);
  }

  /// Parses, then stores the canonical text as the active policy.
  Policy set_policy(std::string_view text) {
    Policy p = parse_policy(text);
    auto w = write_lock();
    detail::write_file_atomic(policy_path(), serialize_policy(p));
    bump_tick();
    return p;
  }

  Policy policy() const {
    auto r = read_lock();
    return policy_unlocked();
  }

  /// Immutable snapshot for the filter. NotFound until a model is imported.
  Workspace workspace() const {
    auto r = read_lock();
    return workspace_unlocked();
  }

  FilterResult filter(const ArtifactId& artifact, const ActorId& actor) const {
    return filtering_info_artifact(workspace(), artifact, actor);
  }

  // --- change workflow -------------------------------------------------------

  ChangeProposal propose(const ActorId& author, const ArtifactId& artifact, const BatchKind& batch,
                         std::string delta) {
    auto w = write_lock();
    Workspace ws = workspace_unlocked();
    Meta meta = read_meta();
    ChangeId id("CH" + detail::version_name(meta.next_change + 1));
    ProposalOutcome out = propose_change(ws, id, author, artifact, batch, std::move(delta), meta.tick + 1);
    meta.next_change += 1;
    meta.tick += 1;
    write_meta(meta);
    for (const auto& a : out.annotations) {
      fs::path dir = root_ / "annotations" / detail::safe_name(a.actor_id.str());
      fs::create_directories(dir);
      detail::write_file_atomic(dir / (id.str() + ".json"), canonical_document(a));
    }
    if (out.proposal.status == ChangeStatus::Effective) return commit_effective(ws.model, out.proposal);
    write_change(out.proposal);
    return out.proposal;
  }

  ChangeProposal decide(const ChangeId& id, const ActorId& actor, Decision decision) {
    auto w = write_lock();
    ChangeProposal p = change_unlocked(id);
    Meta meta = read_meta();
    ChangeProposal next = record_decision(p, actor, decision, meta.tick + 1);
    meta.tick += 1;
    write_meta(meta);
    if (next.status == ChangeStatus::Effective) return commit_effective(workspace_unlocked().model, next);
    write_change(next);
    return next;
  }

  ChangeProposal withdraw(const ChangeId& id, const ActorId& actor) {
    auto w = write_lock();
    ChangeProposal p = change_unlocked(id);
    Meta meta = read_meta();
    ChangeProposal next = withdraw_change(p, actor, meta.tick + 1);
    meta.tick += 1;
    write_meta(meta);
    write_change(next);
    return next;
  }

  ChangeProposal change(const ChangeId& id) const {
    auto r = read_lock();
    return change_unlocked(id);
  }

  std::vector<ChangeProposal> changes() const {
    auto r = read_lock();
    return load_dir<ChangeProposal>(root_ / "changes");
  }

  std::vector<Annotation> annotations(const ActorId& actor) const {
    auto r = read_lock();
    fs::path dir = root_ / "annotations" / detail::safe_name(actor.str());
    if (!fs::exists(dir)) return {};
    return load_dir<Annotation>(dir);
  }

  /// Seeds an empty store with the cyclone-vessel model, actors, viewpoints
  /// and default policy.
  void seed_fixture() {
    import_model(canonical_document(fixture::cyclone_vessel_model()));
    for (auto& a : fixture::cyclone_vessel_actors()) add_actor(std::move(a));
    for (auto& v : fixture::cyclone_vessel_viewpoints()) add_viewpoint(std::move(v));
    set_policy(fixture::kDefaultPolicy);
  }

 private:
  struct Meta {
    Tick tick = 0;
    std::uint64_t next_change = 0;
  };

  struct Lock {
    std::variant<std::shared_lock<std::shared_mutex>, std::unique_lock<std::shared_mutex>> mem;
    detail::FileLock file;
  };

  // Readers pass through the turnstile; a waiting writer holds it, so a
  // steady stream of readers cannot starve it.
  std::unique_ptr<Lock> read_lock() const {
    std::unique_lock gate(turnstile_);
    std::shared_lock shared(mutex_);
    gate.unlock();
    return std::unique_ptr<Lock>(new Lock{std::move(shared), detail::FileLock(lock_path(), false)});
  }
  std::unique_ptr<Lock> write_lock() const {
    std::lock_guard gate(turnstile_);
    return std::unique_ptr<Lock>(new Lock{std::unique_lock(mutex_), detail::FileLock(lock_path(), true)});
  }

  fs::path lock_path() const { return root_ / ".lock"; }
  fs::path policy_path() const { return root_ / "policies" / "default.policy"; }

  Meta read_meta() const {
    Json j = Json::parse(detail::read_file(root_ / "meta.json"));
    return {j.at("tick").get<Tick>(), j.at("next_change").get<std::uint64_t>()};
  }
  void write_meta(const Meta& m) {
    detail::write_file_atomic(root_ / "meta.json", canonical(Json{{"tick", m.tick}, {"next_change", m.next_change}}));
  }
  void bump_tick() {
    Meta m = read_meta();
    m.tick += 1;
    write_meta(m);
  }

  std::uint64_t current_version_unlocked() const {
    fs::path cur = root_ / "model" / "CURRENT";
    if (!fs::exists(cur)) return 0;
    return std::stoull(detail::read_file(cur));
  }

  std::string export_unlocked(std::optional<std::uint64_t> version) const {
    std::uint64_t v = version.value_or(current_version_unlocked());
    fs::path p = root_ / "model" / (detail::version_name(v) + ".json");
    if (v == 0 || !fs::exists(p)) {
      fail(ErrorCode::NotFound, v == 0 && !version ? "no model imported" : "model version " + std::to_string(v) + " does not exist");
    }
    return detail::read_file(p);
  }

  std::uint64_t publish_model(const PpcoModel& m, const std::optional<ChangeId>& applied) {
    std::uint64_t v = current_version_unlocked() + 1;
    std::string name = detail::version_name(v);
    detail::write_file_atomic(root_ / "model" / (name + ".json"), canonical_document(m));
    Json meta = {{"version", v}, {"applied_change", applied ? Json(applied->str()) : Json(nullptr)}};
    detail::write_file_atomic(root_ / "model" / (name + ".meta.json"), canonical(meta));
    detail::write_file_atomic(root_ / "model" / "CURRENT", std::to_string(v) + "\n");
    bump_tick();
    return v;
  }

  // Stages the change as Pending, publishes the model, then marks the change
  // Effective. recover() completes the last step after a crash.
  ChangeProposal commit_effective(const PpcoModel& base, ChangeProposal p) {
    ChangeProposal staged = p;
    staged.status = ChangeStatus::Pending;
    staged.resolved.reset();
    write_change(staged);
    p.model_version = publish_model(apply_change(base, p), p.id);
    write_change(p);
    return p;
  }

  // A crash between the CURRENT rename and the change write leaves a Pending
  // change whose model is already live; finish it here.
  void recover() {
    std::uint64_t v = current_version_unlocked();
    if (v == 0) return;
    fs::path meta = root_ / "model" / (detail::version_name(v) + ".meta.json");
    if (!fs::exists(meta)) return;
    Json j = Json::parse(detail::read_file(meta));
    if (j.at("applied_change").is_null()) return;
    ChangeId id(j.at("applied_change").get<std::string>());
    fs::path cp = root_ / "changes" / (id.str() + ".json");
    if (!fs::exists(cp)) return;
    ChangeProposal p = decode<ChangeProposal>(detail::read_file(cp));
    if (p.status != ChangeStatus::Pending) return;
    p.status = ChangeStatus::Effective;
    p.resolved = read_meta().tick;
    p.model_version = v;
    write_change(p);
  }

  void write_change(const ChangeProposal& p) {
    detail::write_file_atomic(root_ / "changes" / (detail::safe_name(p.id.str()) + ".json"), canonical_document(p));
  }

  ChangeProposal change_unlocked(const ChangeId& id) const {
    fs::path p = root_ / "changes" / (detail::safe_name(id.str()) + ".json");
    if (!fs::exists(p)) fail(ErrorCode::NotFound, "unknown change '" + id.str() + "'");
    return decode<ChangeProposal>(detail::read_file(p));
  }

  Policy policy_unlocked() const {
    if (!fs::exists(policy_path())) return {};
    return parse_policy(detail::read_file(policy_path()));
  }

  Workspace workspace_unlocked() const {
    Workspace ws;
    ws.model = decode<PpcoModel>(export_unlocked(std::nullopt));
    for (auto& a : load_dir<Actor>(root_ / "actors")) ws.actors.emplace(a.id, std::move(a));
    for (auto& v : load_dir<Viewpoint>(root_ / "viewpoints")) ws.viewpoints.emplace(v.id, std::move(v));
    ws.policy = policy_unlocked();
    return ws;
  }

  template <typename T>
  static std::vector<T> load_dir(const fs::path& dir) {
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(dir)) {
      if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
    }
    std::ranges::sort(files);
    std::vector<T> out;
    for (const auto& f : files) out.push_back(decode<T>(detail::read_file(f)));
    return out;
  }

  fs::path root_;
  mutable std::shared_mutex mutex_;
  mutable std::mutex turnstile_;
};

}  // namespace ppco
