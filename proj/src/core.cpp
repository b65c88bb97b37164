#include "hyx/core.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <memory>

namespace hyx {

Bytes to_bytes(std::string_view text) { return Bytes(text.begin(), text.end()); }

std::string to_string(std::span<const std::uint8_t> bytes) {
  return std::string(bytes.begin(), bytes.end());
}

Document::Document(Bytes bytes, std::optional<std::string> format_tag)
    : bytes_(std::move(bytes)), format_tag_(std::move(format_tag)) {
  if (format_tag_ && !valid_format_tag(*format_tag_))
    throw std::invalid_argument("format tag must be 1..255 ASCII bytes");
}

Document::Document(std::string_view text, std::optional<std::string> format_tag)
    : Document(to_bytes(text), std::move(format_tag)) {}

Document Document::with_tag(std::optional<std::string> tag) const {
  return Document(bytes_, std::move(tag));
}

bool valid_format_tag(std::string_view tag) noexcept {
  if (tag.empty() || tag.size() > 255) return false;
  return std::all_of(tag.begin(), tag.end(), [](char c) {
    auto u = static_cast<unsigned char>(c);
    return u >= 0x20 && u < 0x7f;
  });
}

std::string_view algorithm_name(HashAlgorithm algo) noexcept {
  return algo == HashAlgorithm::Sha1 ? "sha1" : "sha256";
}

std::size_t digest_length(HashAlgorithm algo) noexcept {
  return algo == HashAlgorithm::Sha1 ? 20 : 32;
}

std::optional<HashAlgorithm> parse_algorithm(std::string_view name) noexcept {
  if (name == "sha1") return HashAlgorithm::Sha1;
  if (name == "sha256") return HashAlgorithm::Sha256;
  return std::nullopt;
}

namespace {

constexpr char kHexDigits[] = "0123456789abcdef";

int hex_value(char c) noexcept {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

struct MdCtxDeleter {
  void operator()(EVP_MD_CTX* ctx) const noexcept { EVP_MD_CTX_free(ctx); }
};

}  // namespace

DocumentId::DocumentId(HashAlgorithm algorithm, Bytes digest)
    : algorithm_(algorithm), digest_(std::move(digest)) {
  if (digest_.size() != digest_length(algorithm_))
    throw Error(Errc::WrongDigestLength,
                std::string(algorithm_name(algorithm_)) + " digest must be " +
                    std::to_string(digest_length(algorithm_)) + " bytes");
}

std::string DocumentId::hex() const {
  std::string out;
  out.reserve(digest_.size() * 2);
  for (auto b : digest_) {
    out.push_back(kHexDigits[b >> 4]);
    out.push_back(kHexDigits[b & 0xf]);
  }
  return out;
}

std::string DocumentId::str() const {
  return std::string(algorithm_name(algorithm_)) + ":" + hex();
}

Document DocumentId::to_document() const { return Document(str()); }

DocumentId compute_id(std::span<const std::uint8_t> bytes,
                      HashAlgorithm algorithm) {
  const EVP_MD* md =
      algorithm == HashAlgorithm::Sha1 ? EVP_sha1() : EVP_sha256();
  std::unique_ptr<EVP_MD_CTX, MdCtxDeleter> ctx(EVP_MD_CTX_new());
  std::array<unsigned char, EVP_MAX_MD_SIZE> out{};
  unsigned int len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), md, nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), out.data(), &len) != 1)
    throw std::runtime_error("libcrypto digest failed");
  return DocumentId(algorithm, Bytes(out.begin(), out.begin() + len));
}

DocumentId compute_id(const Document& doc, HashAlgorithm algorithm) {
  return compute_id(doc.bytes(), algorithm);
}

DocumentId parse_id(std::string_view text) {
  HashAlgorithm algo = HashAlgorithm::Sha1;
  std::string_view hex = text;
  if (auto colon = text.find(':'); colon != std::string_view::npos) {
    auto name = text.substr(0, colon);
    if (name.empty())
      throw Error(Errc::MalformedId, "missing algorithm in id '" +
                                         std::string(text) + "'");
    auto parsed = parse_algorithm(name);
    if (!parsed)
      throw Error(Errc::UnknownAlgorithm,
                  "unknown hash algorithm '" + std::string(name) + "'");
    algo = *parsed;
    hex = text.substr(colon + 1);
  } else if (text.size() != 40) {
    throw Error(Errc::MalformedId,
                "expected <algo>:<hex> or 40 hex digits, got '" +
                    std::string(text) + "'");
  }
  if (hex.empty() || hex.size() % 2 != 0 ||
      !std::all_of(hex.begin(), hex.end(),
                   [](char c) { return hex_value(c) >= 0; }))
    throw Error(Errc::MalformedId,
                "malformed digest '" + std::string(hex) + "'");
  if (hex.size() != 2 * digest_length(algo))
    throw Error(Errc::WrongDigestLength,
                std::string(algorithm_name(algo)) + " digest needs " +
                    std::to_string(2 * digest_length(algo)) +
                    " hex digits, got " + std::to_string(hex.size()));
  Bytes digest(hex.size() / 2);
  for (std::size_t i = 0; i < digest.size(); ++i)
    digest[i] = static_cast<std::uint8_t>(hex_value(hex[2 * i]) << 4 |
                                          hex_value(hex[2 * i + 1]));
  return DocumentId(algo, std::move(digest));
}

std::optional<DocumentId> try_parse_id(std::string_view text) noexcept {
  try {
    return parse_id(text);
  } catch (const Error&) {
    return std::nullopt;
  }
}

bool is_valid_utf8(std::span<const std::uint8_t> s) noexcept {
  std::size_t i = 0;
  while (i < s.size()) {
    std::uint8_t c = s[i];
    std::size_t n;
    std::uint32_t cp;
    if (c < 0x80) {
      ++i;
      continue;
    } else if ((c & 0xe0) == 0xc0) {
      n = 1;
      cp = c & 0x1f;
    } else if ((c & 0xf0) == 0xe0) {
      n = 2;
      cp = c & 0x0f;
    } else if ((c & 0xf8) == 0xf0) {
      n = 3;
      cp = c & 0x07;
    } else {
      return false;
    }
    if (i + n >= s.size()) return false;
    for (std::size_t k = 1; k <= n; ++k) {
      if ((s[i + k] & 0xc0) != 0x80) return false;
      cp = (cp << 6) | (s[i + k] & 0x3f);
    }
    // overlong forms, surrogates, beyond U+10FFFF
    if ((n == 1 && cp < 0x80) || (n == 2 && cp < 0x800) ||
        (n == 3 && cp < 0x10000) || (cp >= 0xd800 && cp <= 0xdfff) ||
        cp > 0x10ffff)
      return false;
    i += n + 1;
  }
  return true;
}

DocumentId MemoryResolver::add(const Document& doc) {
  auto id = compute_id(doc, algorithm_);
  docs_.try_emplace(id, doc);
  return id;
}

void MemoryResolver::remove(const DocumentId& id) { docs_.erase(id); }

bool MemoryResolver::contains(const DocumentId& id) const {
  return docs_.contains(id);
}

Document MemoryResolver::resolve(const DocumentId& id) const {
  auto it = docs_.find(id);
  if (it == docs_.end()) throw Error(Errc::NotFound, "not found: " + id.str());
  return it->second;
}

}  // namespace hyx
