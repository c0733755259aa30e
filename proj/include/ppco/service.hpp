#pragma once

#include <map>
#include <regex>
#include <string>

#include "ppco/documents.hpp"

namespace ppco {

struct Request {
  std::string method;
  std::string path;
  std::map<std::string, std::string> query;
  std::string body;
};

struct Response {
  int status = 200;
  std::string body;
};

inline int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotFound: return 404;
    case ErrorCode::PermissionDenied: return 403;
    case ErrorCode::Conflict:
    case ErrorCode::InvalidState: return 409;
    case ErrorCode::ValidationFailed:
    case ErrorCode::ParseError:
    case ErrorCode::InvalidInput: return 422;
    case ErrorCode::IoError: return 500;
  }
  return 500;
}

// Transport-independent router. The HTTP binding in http.hpp forwards every
// request here.
class Service {
 public:
  explicit Service(Store& store) : store_(store) {}

  Response handle(const Request& req) const {
    try {
      return route(req);
    } catch (const Error& e) {
      return {http_status(e.code()), documents::error(e)};
    } catch (const std::exception& e) {
      return {500, documents::error(Error(ErrorCode::IoError, e.what()))};
    }
  }

 private:
  Response route(const Request& req) const {
    static const std::regex actor_vps(R"(^/actors/([^/]+)/viewpoints$)");
    static const std::regex actor_notes(R"(^/actors/([^/]+)/annotations$)");
    static const std::regex artifact_filter(R"(^/artifacts/([^/]+)/filter$)");
    static const std::regex change_one(R"(^/changes/([^/]+)$)");
    static const std::regex change_decisions(R"(^/changes/([^/]+)/decisions$)");
    static const std::regex change_withdraw(R"(^/changes/([^/]+)/withdraw$)");

    const bool get = req.method == "GET";
    const bool post = req.method == "POST";
    std::smatch m;

    if (req.path == "/model/current") {
      if (get) return ok(documents::export_model(store_));
    } else if (req.path == "/model") {
      if (post) return ok(documents::import_model(store_, req.body));
    } else if (req.path == "/actors") {
      if (get) return ok(documents::actors(store_));
      if (post) return ok(documents::add_actor(store_, req.body));
    } else if (req.path == "/viewpoints") {
      if (get) return ok(documents::viewpoints(store_, std::nullopt));
      if (post) return ok(documents::add_viewpoint(store_, req.body));
    } else if (std::regex_match(req.path, m, actor_vps)) {
      if (get) return ok(documents::viewpoints(store_, ActorId(m[1].str())));
    } else if (std::regex_match(req.path, m, actor_notes)) {
      if (get) return ok(documents::annotations(store_, ActorId(m[1].str())));
    } else if (std::regex_match(req.path, m, artifact_filter)) {
      if (get) {
        auto actor = req.query.find("actor");
        if (actor == req.query.end() || actor->second.empty()) return bad_request("missing query parameter 'actor'");
        auto audit = req.query.find("audit");
        bool with_audit = audit != req.query.end() && (audit->second == "1" || audit->second == "true");
        return ok(documents::filter(store_, ArtifactId(m[1].str()), ActorId(actor->second), with_audit));
      }
    } else if (req.path == "/changes") {
      if (get) return ok(documents::changes(store_));
      if (post) {
        Json body = parse_body(req.body);
        return ok(documents::propose(store_, detail::get<ActorId>(body, "author_actor_id"),
                                     detail::get<ArtifactId>(body, "artifact_id"),
                                     detail::get<BatchKind>(body, "batch"),
                                     detail::get_or<std::string>(body, "delta", "")));
      }
    } else if (std::regex_match(req.path, m, change_decisions)) {
      if (post) {
        Json body = parse_body(req.body);
        return ok(documents::decide(store_, ChangeId(m[1].str()), detail::get<ActorId>(body, "actor_id"),
                                    documents::decision_from_text(detail::get<std::string>(body, "decision"))));
      }
    } else if (std::regex_match(req.path, m, change_withdraw)) {
      if (post) {
        Json body = parse_body(req.body);
        return ok(documents::withdraw(store_, ChangeId(m[1].str()), detail::get<ActorId>(body, "actor_id")));
      }
    } else if (std::regex_match(req.path, m, change_one)) {
      if (get) return ok(documents::change(store_, ChangeId(m[1].str())));
    } else {
      return {404, documents::error(Error(ErrorCode::NotFound, "no route for " + req.path))};
    }
    return {405, canonical(Json{{"error", {{"code", "method_not_allowed"}, {"message", req.method + " " + req.path}}}})};
  }

  static Response ok(std::string body) { return {200, std::move(body)}; }

  static Response bad_request(const std::string& message) {
    return {400, canonical(Json{{"error", {{"code", "bad_request"}, {"message", message}}}})};
  }

  static Json parse_body(const std::string& body) {
    try {
      return Json::parse(body);
    } catch (const Json::exception& e) {
      throw Error(ErrorCode::ParseError, std::string("malformed request body: ") + e.what());
    }
  }

  Store& store_;
};

}  // namespace ppco
