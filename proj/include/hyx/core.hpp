#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hyx/error.hpp"

namespace hyx {

using Bytes = std::vector<std::uint8_t>;

Bytes to_bytes(std::string_view text);
std::string to_string(std::span<const std::uint8_t> bytes);

/// An immutable finite byte sequence with an optional format tag.
///
/// The tag says how the bytes are to be interpreted (for example
/// "text/plain;charset=utf-8"). It is metadata only and never part of
/// the document's identity.
class Document {
 public:
  Document() = default;
  explicit Document(Bytes bytes, std::optional<std::string> format_tag = {});
  explicit Document(std::string_view text,
                    std::optional<std::string> format_tag = {});

  std::span<const std::uint8_t> bytes() const noexcept { return bytes_; }
  std::size_t size() const noexcept { return bytes_.size(); }
  bool empty() const noexcept { return bytes_.empty(); }
  const std::optional<std::string>& format_tag() const noexcept {
    return format_tag_;
  }
  std::string text() const { return to_string(bytes_); }

  Document with_tag(std::optional<std::string> tag) const;

  /// Equality compares bytes only.
  friend bool operator==(const Document& a, const Document& b) {
    return a.bytes_ == b.bytes_;
  }

 private:
  Bytes bytes_;
  std::optional<std::string> format_tag_;
};

inline constexpr std::string_view kEditListFormat = "application/prs.hyx-edl";
inline constexpr std::string_view kLocatorFormat = "application/prs.hyx-locator";

bool valid_format_tag(std::string_view tag) noexcept;

enum class HashAlgorithm : std::uint8_t { Sha1, Sha256 };

inline constexpr HashAlgorithm kDefaultAlgorithm = HashAlgorithm::Sha256;

std::string_view algorithm_name(HashAlgorithm algo) noexcept;
std::size_t digest_length(HashAlgorithm algo) noexcept;
std::optional<HashAlgorithm> parse_algorithm(std::string_view name) noexcept;

/// Content-based identifier: a hash algorithm and its digest.
/// Canonical text form is `<algo>:<lowercase hex>`.
class DocumentId {
 public:
  DocumentId(HashAlgorithm algorithm, Bytes digest);

  HashAlgorithm algorithm() const noexcept { return algorithm_; }
  std::span<const std::uint8_t> digest() const noexcept { return digest_; }
  std::string hex() const;
  std::string str() const;

  /// The canonical text as a document, since identifiers are documents too.
  Document to_document() const;

  friend auto operator<=>(const DocumentId&, const DocumentId&) = default;

 private:
  HashAlgorithm algorithm_;
  Bytes digest_;
};

DocumentId compute_id(const Document& doc, HashAlgorithm algorithm);
DocumentId compute_id(std::span<const std::uint8_t> bytes,
                      HashAlgorithm algorithm);

/// Accepts `<algo>:<hex>` or a bare 40-digit hex string (SHA-1).
DocumentId parse_id(std::string_view text);
std::optional<DocumentId> try_parse_id(std::string_view text) noexcept;

bool is_valid_utf8(std::span<const std::uint8_t> bytes) noexcept;

/// Maps identifiers to documents. Implementations must return the same
/// bytes for the same id for the lifetime of one assembly.
class Resolver {
 public:
  virtual ~Resolver() = default;
  /// Throws Error{NotFound} (or another store error) when unavailable.
  virtual Document resolve(const DocumentId& id) const = 0;
  /// Algorithm used to identify inline literals and intermediate documents.
  virtual HashAlgorithm algorithm() const noexcept = 0;
};

/// In-memory resolver, mostly useful for tests and small tools.
class MemoryResolver final : public Resolver {
 public:
  explicit MemoryResolver(HashAlgorithm algorithm = kDefaultAlgorithm)
      : algorithm_(algorithm) {}

  DocumentId add(const Document& doc);
  void remove(const DocumentId& id);
  bool contains(const DocumentId& id) const;

  Document resolve(const DocumentId& id) const override;
  HashAlgorithm algorithm() const noexcept override { return algorithm_; }

 private:
  HashAlgorithm algorithm_;
  std::map<DocumentId, Document> docs_;
};

}  // namespace hyx
