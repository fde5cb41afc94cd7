#pragma once

// cpp-httplib transport for the WDI client. Link against the coint_http
// target (OpenSSL) for https:// base URLs; plain http:// works either way.

#include <chrono>
#include <string>

// httplib pulls in <resolv.h>, whose `_res` macro breaks Eigen headers
// included after it.
#include <Eigen/Dense>
#include <httplib.h>

#include "coint/error.hpp"
#include "coint/ingest/wdi.hpp"

namespace coint::ingest {

inline Transport http_transport(std::chrono::seconds timeout = std::chrono::seconds(30)) {
  return [timeout](const std::string& base_url, const std::string& target) {
    httplib::Client client(base_url);
    client.set_connection_timeout(timeout);
    client.set_read_timeout(timeout);
    client.set_follow_location(true);
    auto res = client.Get(target);
    if (!res) {
      Error e(ErrorKind::HttpError, "GET " + base_url + target + " failed: " + httplib::to_string(res.error()));
      e.status = 0;
      throw e;
    }
    return HttpResponse{res->status, res->body};
  };
}

}  // namespace coint::ingest
