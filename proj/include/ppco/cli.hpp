#pragma once

#include <cstdlib>
#include <functional>
#include <iostream>
#include <iterator>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ppco/documents.hpp"

namespace ppco {

namespace detail {

inline std::string read_input(const std::string& path) {
  if (path == "-") return std::string(std::istreambuf_iterator<char>(std::cin), {});
  if (!fs::exists(path)) fail(ErrorCode::NotFound, "no such file '" + path + "'");
  return read_file(path);
}

}  // namespace detail

using ServeFn = std::function<int(Store&, const std::string& host, int port)>;

/// Runs one CLI invocation. Exit codes: 0 success, 1 domain error (an error
/// document is printed on `out`), 2 usage error.
inline int cli_run(int argc, const char* const* argv, std::ostream& out, std::ostream& err,
                   const ServeFn& serve_fn = {}) {
  CLI::App app{"Viewpoint-based information filtering over a PPCO product model", "ppco"};
  app.require_subcommand(1);

  const char* env_root = std::getenv("PPCO_STORE");
  std::string store_root = env_root != nullptr ? env_root : "ppco-store";
  app.add_option("--store", store_root, "store directory (default: $PPCO_STORE or ./ppco-store)");

  // Deferred actions; exactly one is selected by the parsed subcommand.
  std::function<std::string()> action;
  auto open_store = [&]() { return Store(store_root); };

  auto* init = app.add_subcommand("init", "create a store");
  bool with_fixture = false;
  init->add_flag("--fixture", with_fixture, "seed with the cyclone-vessel fixture");
  init->callback([&] {
    action = [&] {
      Store s = open_store();
      if (with_fixture) {
        if (s.current_version() != 0) fail(ErrorCode::Conflict, "store already holds a model");
        s.seed_fixture();
      }
      return documents::version(s.current_version());
    };
  });

  auto* model = app.add_subcommand("model", "import, export or validate model documents");
  model->require_subcommand(1);
  std::string model_file;
  auto* m_import = model->add_subcommand("import", "import a model document as a new version");
  m_import->add_option("file", model_file, "model document ('-' for stdin)")->required();
  m_import->callback([&] { action = [&] { Store s = open_store(); return documents::import_model(s, detail::read_input(model_file)); }; });
  std::optional<std::uint64_t> export_version;
  auto* m_export = model->add_subcommand("export", "print a model version");
  m_export->add_option("--version", export_version, "version (default: current)");
  m_export->callback([&] { action = [&] { return documents::export_model(open_store(), export_version); }; });
  bool check_members = false;
  auto* m_validate = model->add_subcommand("validate", "validate a model document");
  m_validate->add_option("file", model_file, "model document, or 'fixture' for the bundled one")->required();
  m_validate->add_flag("--members", check_members, "also resolve team members against the store's actors");
  m_validate->callback([&] {
    action = [&] {
      std::string doc = model_file == "fixture" && !fs::exists(model_file)
                            ? canonical_document(fixture::cyclone_vessel_model())
                            : detail::read_input(model_file);
      std::optional<std::set<ActorId>> registry;
      if (check_members) registry = open_store().workspace().actor_ids();
      std::string report = documents::validate_model(doc, registry ? &*registry : nullptr);
      if (!Json::parse(report).at("valid").get<bool>()) {
        PpcoModel m = decode<PpcoModel>(doc);
        throw ValidationError(registry ? ppco::validate_model(m, *registry) : ppco::validate_model(m));
      }
      return report;
    };
  });

  auto* actor = app.add_subcommand("actor", "manage actors");
  actor->require_subcommand(1);
  std::string doc_file;
  auto* a_add = actor->add_subcommand("add", "register an actor document");
  a_add->add_option("file", doc_file, "actor document ('-' for stdin)")->required();
  a_add->callback([&] { action = [&] { Store s = open_store(); return documents::add_actor(s, detail::read_input(doc_file)); }; });
  actor->add_subcommand("list", "list actors")->callback([&] { action = [&] { return documents::actors(open_store()); }; });

  auto* vp = app.add_subcommand("vp", "manage viewpoints");
  vp->require_subcommand(1);
  auto* v_add = vp->add_subcommand("add", "register a viewpoint document");
  v_add->add_option("file", doc_file, "viewpoint document ('-' for stdin)")->required();
  v_add->callback([&] { action = [&] { Store s = open_store(); return documents::add_viewpoint(s, detail::read_input(doc_file)); }; });
  std::optional<std::string> vp_actor;
  auto* v_list = vp->add_subcommand("list", "list viewpoints");
  v_list->add_option("--actor", vp_actor, "only this actor's viewpoints");
  v_list->callback([&] {
    action = [&] {
      std::optional<ActorId> a;
      if (vp_actor) a = ActorId(*vp_actor);
      return documents::viewpoints(open_store(), a);
    };
  });

  auto* policy = app.add_subcommand("policy", "policy documents");
  policy->require_subcommand(1);
  std::string policy_file;
  auto* p_check = policy->add_subcommand("check", "parse and print the canonical form");
  p_check->add_option("file", policy_file, "policy document ('-' for stdin)")->required();
  p_check->callback([&] { action = [&] { return documents::check_policy(detail::read_input(policy_file)); }; });
  auto* p_set = policy->add_subcommand("set", "install the active policy");
  p_set->add_option("file", policy_file, "policy document ('-' for stdin)")->required();
  p_set->callback([&] {
    action = [&] { Store s = open_store(); return serialize_policy(s.set_policy(detail::read_input(policy_file))); };
  });
  policy->add_subcommand("show", "print the active policy")->callback([&] {
    action = [&] { return serialize_policy(open_store().policy()); };
  });

  std::string f_actor, f_artifact;
  bool f_audit = false;
  auto* filter = app.add_subcommand("filter", "adequate information for an actor on an artifact");
  filter->add_option("--actor", f_actor, "actor id")->required();
  filter->add_option("--artifact", f_artifact, "artifact id")->required();
  filter->add_flag("--audit", f_audit, "include per-viewpoint lists in classification order");
  filter->callback([&] {
    action = [&] { return documents::filter(open_store(), ArtifactId(f_artifact), ActorId(f_actor), f_audit); };
  });

  auto* change = app.add_subcommand("change", "modification proposals");
  change->require_subcommand(1);
  std::string c_author, c_artifact, c_batch, c_delta, c_id, c_actor, c_decision;
  auto* c_propose = change->add_subcommand("propose", "propose a modification");
  c_propose->add_option("--author", c_author, "author actor id")->required();
  c_propose->add_option("--artifact", c_artifact, "artifact id")->required();
  c_propose->add_option("--batch", c_batch, "batch name")->required();
  c_propose->add_option("--delta", c_delta, "modification payload")->required();
  c_propose->callback([&] {
    action = [&] {
      Store s = open_store();
      return documents::propose(s, ActorId(c_author), ArtifactId(c_artifact), BatchKind(c_batch), c_delta);
    };
  });
  auto* c_decide = change->add_subcommand("decide", "record a concerned actor's decision");
  c_decide->add_option("id", c_id, "change id")->required();
  c_decide->add_option("--actor", c_actor, "deciding actor id")->required();
  c_decide->add_option("--decision", c_decision, "approve or reject")
      ->required()
      ->check(CLI::IsMember({"approve", "reject", "Approve", "Reject"}));
  c_decide->callback([&] {
    action = [&] {
      Store s = open_store();
      return documents::decide(s, ChangeId(c_id), ActorId(c_actor), documents::decision_from_text(c_decision));
    };
  });
  auto* c_withdraw = change->add_subcommand("withdraw", "withdraw a pending proposal (author only)");
  c_withdraw->add_option("id", c_id, "change id")->required();
  c_withdraw->add_option("--actor", c_actor, "author actor id")->required();
  c_withdraw->callback([&] {
    action = [&] { Store s = open_store(); return documents::withdraw(s, ChangeId(c_id), ActorId(c_actor)); };
  });
  auto* c_show = change->add_subcommand("show", "print one proposal");
  c_show->add_option("id", c_id, "change id")->required();
  c_show->callback([&] { action = [&] { return documents::change(open_store(), ChangeId(c_id)); }; });
  change->add_subcommand("list", "list proposals")->callback([&] { action = [&] { return documents::changes(open_store()); }; });

  std::string n_actor;
  auto* notes = app.add_subcommand("annotations", "change notices addressed to an actor");
  notes->add_option("--actor", n_actor, "actor id")->required();
  notes->callback([&] { action = [&] { return documents::annotations(open_store(), ActorId(n_actor)); }; });

  std::string host = "127.0.0.1";
  int port = 8080;
  bool serving = false;
  auto* serve = app.add_subcommand("serve", "run the HTTP service");
  serve->add_option("--host", host, "bind address");
  serve->add_option("--port", port, "port")->check(CLI::Range(1, 65535));
  serve->callback([&] { serving = true; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream discard;
    int code = app.exit(e, e.get_exit_code() == 0 ? out : discard, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (serving) {
      if (!serve_fn) fail(ErrorCode::InvalidInput, "serve is not available in this build");
      Store s = open_store();
      return serve_fn(s, host, port);
    }
    out << action();
    return 0;
  } catch (const Error& e) {
    out << documents::error(e);
    return 1;
  } catch (const std::exception& e) {
    out << documents::error(Error(ErrorCode::IoError, e.what()));
    return 1;
  }
}

}  // namespace ppco
