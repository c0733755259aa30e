#pragma once

#include <string>

#include <httplib.h>

#include "ppco/service.hpp"

namespace ppco {

/// Registers catch-all handlers forwarding to `service`.
inline void bind(httplib::Server& server, const Service& service) {
  auto forward = [&service](const httplib::Request& req, httplib::Response& res) {
    Request r{req.method, req.path, {}, req.body};
    for (const auto& [k, v] : req.params) r.query.emplace(k, v);
    Response out = service.handle(r);
    res.status = out.status;
    res.set_content(out.body, "application/json");
  };
  server.Get(".*", forward);
  server.Post(".*", forward);
}

/// Blocks serving on host:port until the server is stopped.
inline bool serve(Store& store, const std::string& host, int port) {
  Service service(store);
  httplib::Server server;
  bind(server, service);
  return server.listen(host, port);
}

}  // namespace ppco
