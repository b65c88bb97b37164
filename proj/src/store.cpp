#include "hyx/store.hpp"

#include <fcntl.h>
#include <sys/stat.h>
#include <unistd.h>

#include <atomic>
#include <cctype>
#include <cerrno>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <random>
#include <sstream>

namespace fs = std::filesystem;

namespace hyx {

std::string_view normalization_name(Normalization n) noexcept {
  return n == Normalization::None ? "none" : "newline-lf";
}

std::optional<Normalization> parse_normalization(std::string_view name) noexcept {
  if (name == "none") return Normalization::None;
  if (name == "newline-lf") return Normalization::NewlineLf;
  return std::nullopt;
}

bool is_textual(const Document& doc) {
  if (!doc.format_tag()) return is_valid_utf8(doc.bytes());
  std::string tag = *doc.format_tag();
  for (auto& c : tag) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  auto media = std::string_view(tag).substr(0, tag.find(';'));
  while (!media.empty() && media.back() == ' ') media.remove_suffix(1);
  return media.starts_with("text/") || media == "application/json" ||
         media.ends_with("+json") || media.ends_with("+xml") ||
         media.starts_with("application/prs.hyx-");
}

Document normalize(const Document& doc, Normalization policy) {
  if (policy == Normalization::None || !is_textual(doc)) return doc;
  auto in = doc.bytes();
  Bytes out;
  out.reserve(in.size());
  for (std::size_t i = 0; i < in.size(); ++i) {
    if (in[i] == '\r') {
      out.push_back('\n');
      if (i + 1 < in.size() && in[i + 1] == '\n') ++i;
    } else {
      out.push_back(in[i]);
    }
  }
  return Document(std::move(out), doc.format_tag());
}

fs::path default_store_path() {
  if (const char* env = std::getenv("HYX_STORE"); env && *env) return env;
  return ".hyx";
}

namespace {

[[noreturn]] void io_fail(const std::string& what, const fs::path& path,
                          int err = errno) {
  throw Error(Errc::StorageFailure,
              what + " " + path.string() + ": " + std::strerror(err));
}

std::optional<Bytes> read_file(const fs::path& path) {
  int fd = ::open(path.c_str(), O_RDONLY | O_CLOEXEC);
  if (fd < 0) {
    if (errno == ENOENT) return std::nullopt;
    io_fail("cannot open", path);
  }
  Bytes out;
  std::uint8_t buf[64 * 1024];
  for (;;) {
    auto n = ::read(fd, buf, sizeof buf);
    if (n < 0) {
      if (errno == EINTR) continue;
      int err = errno;
      ::close(fd);
      io_fail("cannot read", path, err);
    }
    if (n == 0) break;
    out.insert(out.end(), buf, buf + n);
  }
  ::close(fd);
  return out;
}

std::string temp_name() {
  static std::atomic<std::uint64_t> counter{0};
  static const std::uint64_t salt = std::random_device{}();
  std::ostringstream name;
  name << "put-" << ::getpid() << '-' << std::hex << salt << '-'
       << counter.fetch_add(1);
  return name.str();
}

std::string config_text(const StoreConfig& c) {
  return "algorithm=" + std::string(algorithm_name(c.default_algorithm)) +
         "\nnormalization=" + std::string(normalization_name(c.normalization)) +
         "\n";
}

}  // namespace

Store Store::init(const StoreConfig& config) {
  if (fs::exists(config.root / "config")) return open(config.root);
  std::error_code ec;
  fs::create_directories(config.root / "objects", ec);
  if (!ec) fs::create_directories(config.root / "tags", ec);
  if (!ec) fs::create_directories(config.root / "tmp", ec);
  if (ec)
    throw Error(Errc::StorageFailure, "cannot create store at " +
                                          config.root.string() + ": " +
                                          ec.message());
  Store store(config);
  auto text = config_text(config);
  store.publish(config.root / "config", to_bytes(text));
  // A concurrent init may have won the race with a different config.
  return open(config.root);
}

Store Store::open(const fs::path& root) {
  auto bytes = read_file(root / "config");
  if (!bytes)
    throw Error(Errc::NotFound, "no store at " + root.string());
  StoreConfig config{root, kDefaultAlgorithm, Normalization::None};
  std::istringstream in(to_string(*bytes));
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line.front() == '#') continue;
    auto eq = line.find('=');
    auto key = line.substr(0, eq);
    auto value = eq == std::string::npos ? std::string() : line.substr(eq + 1);
    if (key == "algorithm" && parse_algorithm(value)) {
      config.default_algorithm = *parse_algorithm(value);
    } else if (key == "normalization" && parse_normalization(value)) {
      config.normalization = *parse_normalization(value);
    } else {
      throw Error(Errc::BadConfig, "bad config line '" + line + "' in " +
                                       (root / "config").string());
    }
  }
  return Store(std::move(config));
}

fs::path Store::object_path(const DocumentId& id) const {
  auto hex = id.hex();
  return root() / "objects" / std::string(algorithm_name(id.algorithm())) /
         hex.substr(0, 2) / hex.substr(2);
}

fs::path Store::tag_path(const DocumentId& id) const {
  auto hex = id.hex();
  return root() / "tags" / std::string(algorithm_name(id.algorithm())) /
         hex.substr(0, 2) / hex.substr(2);
}

// Writes bytes to a temp file, then links it to target. Returns without
// touching target if it already exists.
void Store::publish(const fs::path& target,
                    std::span<const std::uint8_t> bytes) const {
  std::error_code ec;
  fs::create_directories(target.parent_path(), ec);
  if (ec) io_fail("cannot create", target.parent_path(), ec.value());

  auto tmp = root() / "tmp" / temp_name();
  int fd = ::open(tmp.c_str(), O_WRONLY | O_CREAT | O_EXCL | O_CLOEXEC, 0444);
  if (fd < 0) io_fail("cannot create", tmp);
  std::size_t done = 0;
  while (done < bytes.size()) {
    auto n = ::write(fd, bytes.data() + done, bytes.size() - done);
    if (n < 0) {
      if (errno == EINTR) continue;
      int err = errno;
      ::close(fd);
      ::unlink(tmp.c_str());
      io_fail("cannot write", tmp, err);
    }
    done += static_cast<std::size_t>(n);
  }
  if (::fsync(fd) != 0 || ::close(fd) != 0) {
    int err = errno;
    ::unlink(tmp.c_str());
    io_fail("cannot flush", tmp, err);
  }
  int rc = ::link(tmp.c_str(), target.c_str());
  int err = errno;
  ::unlink(tmp.c_str());
  if (rc != 0 && err != EEXIST) io_fail("cannot publish", target, err);
}

DocumentId Store::put(const Document& doc) {
  return put(doc, config_.default_algorithm);
}

DocumentId Store::put(const Document& doc, HashAlgorithm algorithm) {
  auto normalized = normalize(doc, config_.normalization);
  auto id = compute_id(normalized, algorithm);
  put_verified(id, normalized);
  return id;
}

void Store::put_verified(const DocumentId& id, const Document& doc) {
  if (compute_id(doc, id.algorithm()) != id)
    throw Error(Errc::DigestMismatch, "bytes do not hash to " + id.str());
  auto path = object_path(id);
  // Never replace an object; a present one must still verify.
  if (auto existing = read_file(path)) {
    if (compute_id(*existing, id.algorithm()) != id)
      throw Error(Errc::Corrupt, "stored object " + path.string() +
                                     " does not match " + id.str());
  } else {
    publish(path, doc.bytes());
  }
  if (doc.format_tag() && !fs::exists(tag_path(id)))
    publish(tag_path(id), to_bytes(*doc.format_tag()));
}

Document Store::get(const DocumentId& id) const {
  auto bytes = read_file(object_path(id));
  if (!bytes) throw Error(Errc::NotFound, "not found: " + id.str());
  if (compute_id(*bytes, id.algorithm()) != id)
    throw Error(Errc::Corrupt, "corrupt object " + object_path(id).string() +
                                   " for " + id.str());
  std::optional<std::string> tag;
  if (auto t = read_file(tag_path(id)); t && valid_format_tag(to_string(*t)))
    tag = to_string(*t);
  return Document(std::move(*bytes), std::move(tag));
}

bool Store::contains(const DocumentId& id) const {
  return fs::exists(object_path(id));
}

Document StoreResolver::resolve(const DocumentId& id) const {
  {
    std::lock_guard lock(mutex_);
    if (auto it = cache_.find(id); it != cache_.end()) return it->second;
  }
  auto doc = store_.get(id);
  std::lock_guard lock(mutex_);
  return cache_.try_emplace(id, std::move(doc)).first->second;
}

}  // namespace hyx
