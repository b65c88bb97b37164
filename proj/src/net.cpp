#include "hyx/net.hpp"

#include <httplib.h>

#include <thread>

namespace hyx {

std::string doc_path(const DocumentId& id) { return "/docs/" + id.str(); }

Document fetch_verified(const RemoteSource& source, const DocumentId& id,
                        Store& store) {
  httplib::Client client(source.base_url);
  if (!client.is_valid())
    throw Error(Errc::NetworkFailure, "bad base url '" + source.base_url + "'");
  auto secs = std::chrono::duration_cast<std::chrono::seconds>(source.timeout);
  auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(
      source.timeout - secs);
  client.set_connection_timeout(secs.count(), usecs.count());
  client.set_read_timeout(secs.count(), usecs.count());

  Bytes body;
  bool too_large = false;
  auto res = client.Get(
      doc_path(id), httplib::Headers{},
      [&](const char* data, std::size_t len) {
        if (body.size() + len > source.max_size) {
          too_large = true;
          return false;
        }
        body.insert(body.end(), data, data + len);
        return true;
      });
  if (too_large)
    throw Error(Errc::SizeExceeded, id.str() + " exceeds " +
                                        std::to_string(source.max_size) +
                                        " bytes");
  if (!res)
    throw Error(Errc::NetworkFailure, "GET " + source.base_url + doc_path(id) +
                                          ": " + httplib::to_string(res.error()));
  if (res->status == 404) throw Error(Errc::NotFound, "remote: not found: " + id.str());
  if (res->status != 200)
    throw Error(Errc::HttpStatus, "GET " + doc_path(id) + " returned " +
                                      std::to_string(res->status));

  std::optional<std::string> tag;
  if (auto ct = res->get_header_value("Content-Type");
      !ct.empty() && ct != "application/octet-stream" && valid_format_tag(ct))
    tag = ct;
  Document doc(std::move(body), std::move(tag));
  if (compute_id(doc, id.algorithm()) != id)
    throw Error(Errc::DigestMismatch,
                "remote bytes for " + id.str() + " hash to " +
                    compute_id(doc, id.algorithm()).str());
  store.put_verified(id, doc);
  return doc;
}

std::pair<std::string, int> parse_bind_address(const std::string& address) {
  auto colon = address.rfind(':');
  std::string host = colon == std::string::npos ? "" : address.substr(0, colon);
  std::string port = colon == std::string::npos ? address : address.substr(colon + 1);
  if (host.size() >= 2 && host.front() == '[' && host.back() == ']')
    host = host.substr(1, host.size() - 2);
  if (host.empty()) host = "127.0.0.1";
  int value = -1;
  try {
    std::size_t used = 0;
    value = std::stoi(port, &used);
    if (used != port.size()) value = -1;
  } catch (const std::exception&) {
  }
  if (value < 0 || value > 65535)
    throw Error(Errc::BindFailure, "bad bind address '" + address + "'");
  return {host, value};
}

struct Server::Impl {
  const Store& store;
  httplib::Server http;
  std::thread thread;

  explicit Impl(const Store& s) : store(s) {
    // No SO_REUSEPORT: binding a busy port must fail.
    http.set_socket_options([](socket_t sock) {
      int yes = 1;
      ::setsockopt(sock, SOL_SOCKET, SO_REUSEADDR,
                   reinterpret_cast<const void*>(&yes), sizeof(yes));
    });
    http.Get(R"(/docs/([^/]+))", [this](const httplib::Request& req,
                                        httplib::Response& res) {
      auto id = try_parse_id(req.matches[1].str());
      if (!id) {
        res.status = 400;
        res.set_content("malformed id\n", "text/plain");
        return;
      }
      try {
        auto doc = store.get(*id);
        res.status = 200;
        res.set_content(reinterpret_cast<const char*>(doc.bytes().data()),
                        doc.size(),
                        doc.format_tag().value_or("application/octet-stream"));
      } catch (const Error& e) {
        res.status = e.code() == Errc::NotFound ? 404 : 500;
        res.set_content(std::string(e.what()) + "\n", "text/plain");
      }
    });
    auto read_only = [](const httplib::Request&, httplib::Response& res) {
      res.status = 405;
      res.set_header("Allow", "GET, HEAD");
      res.set_content("read-only endpoint\n", "text/plain");
    };
    http.Put(R"(/.*)", read_only);
    http.Post(R"(/.*)", read_only);
    http.Delete(R"(/.*)", read_only);
    http.Patch(R"(/.*)", read_only);
  }
};

Server::Server(const Store& store) : impl_(std::make_unique<Impl>(store)) {}

Server::~Server() { stop(); }

void Server::bind(const std::string& bind_address) {
  auto [host, port] = parse_bind_address(bind_address);
  int bound = port == 0 ? impl_->http.bind_to_any_port(host)
                        : (impl_->http.bind_to_port(host, port) ? port : -1);
  if (bound < 0)
    throw Error(Errc::BindFailure, "cannot bind " + bind_address);
  host_ = host;
  port_ = bound;
}

void Server::start(const std::string& bind_address) {
  bind(bind_address);
  impl_->thread = std::thread([this] { impl_->http.listen_after_bind(); });
  impl_->http.wait_until_ready();
}

void Server::run(const std::string& bind_address) {
  bind(bind_address);
  impl_->http.listen_after_bind();
}

void Server::stop() {
  if (!impl_) return;
  impl_->http.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
}

std::string Server::base_url() const {
  auto host = host_.find(':') != std::string::npos ? "[" + host_ + "]" : host_;
  return "http://" + host + ":" + std::to_string(port_);
}

}  // namespace hyx
