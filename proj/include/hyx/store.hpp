#pragma once

#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>

#include "hyx/core.hpp"

namespace hyx {

enum class Normalization : std::uint8_t { None, NewlineLf };

std::string_view normalization_name(Normalization n) noexcept;
std::optional<Normalization> parse_normalization(std::string_view name) noexcept;

/// True if the document's format (or, untagged, its UTF-8 validity) marks
/// it as text. Only text is subject to normalization.
bool is_textual(const Document& doc);

/// NewlineLf rewrites CRLF and lone CR to LF in textual documents.
Document normalize(const Document& doc, Normalization policy);

struct StoreConfig {
  std::filesystem::path root;
  HashAlgorithm default_algorithm = kDefaultAlgorithm;
  Normalization normalization = Normalization::None;
};

/// `HYX_STORE` if set, else `./.hyx`.
std::filesystem::path default_store_path();

/// Content-addressed object store on the local filesystem.
///
/// Layout under the root:
///   config                         key=value lines
///   objects/<algo>/<xx>/<rest>     raw document bytes
///   tags/<algo>/<xx>/<rest>        optional format tag
///   tmp/                           staging for atomic writes
///
/// Objects are published by hard-linking a fully written temp file into
/// place, so readers never see partial objects and an existing object is
/// never replaced. Every read re-hashes the bytes.
class Store {
 public:
  /// Creates the layout and writes config if none exists yet; otherwise
  /// opens the existing store (its config wins over `config`).
  static Store init(const StoreConfig& config);
  /// Throws Error{NotFound} if root has no config, Error{BadConfig} if
  /// the config does not parse.
  static Store open(const std::filesystem::path& root);

  const StoreConfig& config() const noexcept { return config_; }
  const std::filesystem::path& root() const noexcept { return config_.root; }

  /// Normalizes, hashes with the default algorithm and persists.
  DocumentId put(const Document& doc);
  DocumentId put(const Document& doc, HashAlgorithm algorithm);

  /// Persists doc exactly as given under id after checking its digest.
  /// Throws Error{DigestMismatch} if the bytes do not hash to id.
  void put_verified(const DocumentId& id, const Document& doc);

  /// Throws Error{NotFound} or Error{Corrupt}.
  Document get(const DocumentId& id) const;
  bool contains(const DocumentId& id) const;

  std::filesystem::path object_path(const DocumentId& id) const;

 private:
  explicit Store(StoreConfig config) : config_(std::move(config)) {}

  void publish(const std::filesystem::path& target,
               std::span<const std::uint8_t> bytes) const;
  std::filesystem::path tag_path(const DocumentId& id) const;

  StoreConfig config_;
};

/// Resolver over a store. Memoizes every document it returns, so repeated
/// reads during one assembly see identical bytes.
class StoreResolver final : public Resolver {
 public:
  explicit StoreResolver(const Store& store) : store_(store) {}

  Document resolve(const DocumentId& id) const override;
  HashAlgorithm algorithm() const noexcept override {
    return store_.config().default_algorithm;
  }

 private:
  const Store& store_;
  mutable std::mutex mutex_;
  mutable std::map<DocumentId, Document> cache_;
};

inline StoreResolver resolver_view(const Store& store) {
  return StoreResolver(store);
}

}  // namespace hyx
