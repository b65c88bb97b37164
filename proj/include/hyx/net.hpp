#pragma once

#include <chrono>
#include <cstdint>
#include <memory>
#include <string>

#include "hyx/core.hpp"
#include "hyx/store.hpp"

namespace hyx {

struct RemoteSource {
  std::string base_url;  // e.g. http://127.0.0.1:8420
  std::chrono::milliseconds timeout{10'000};
  std::size_t max_size = 64 * 1024 * 1024;
};

/// `/docs/<canonical id>`; the path every endpoint serves documents under.
std::string doc_path(const DocumentId& id);

/// Fetches `<base_url>/docs/<id>` and stores it only if its digest equals
/// id. Errors: NotFound (404), HttpStatus (other non-200), NetworkFailure,
/// SizeExceeded, DigestMismatch; on any error the store is unchanged.
Document fetch_verified(const RemoteSource& source, const DocumentId& id,
                        Store& store);

/// Read-only HTTP endpoint over a store.
///
///   GET /docs/<id>   200 raw bytes | 400 malformed id | 404 unknown id
///
/// Any other method on /docs/ answers 405.
class Server {
 public:
  explicit Server(const Store& store);
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  /// Binds `host:port` (port 0 picks a free port) and serves on a
  /// background thread. Throws Error{BindFailure}.
  void start(const std::string& bind_address);
  /// Binds and serves on the calling thread until stop().
  void run(const std::string& bind_address);
  void stop();

  int port() const noexcept { return port_; }
  std::string base_url() const;

 private:
  void bind(const std::string& bind_address);

  struct Impl;
  std::unique_ptr<Impl> impl_;
  std::string host_;
  int port_ = 0;
};

/// Splits "host:port"; a bare ":port" or "port" binds 127.0.0.1.
std::pair<std::string, int> parse_bind_address(const std::string& address);

}  // namespace hyx
