#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hyx/core.hpp"
#include "hyx/links.hpp"
#include "hyx/locator.hpp"

namespace hyx {

/// A reference to a document: either by id or as an inline literal whose
/// bytes stand for the document with that content.
class Ref {
 public:
  static Ref id(DocumentId id) { return Ref(std::move(id)); }
  /// Throws Error{InvalidUtf8}: literals must be UTF-8 text.
  static Ref literal(Bytes bytes);
  static Ref literal(std::string_view text) { return literal(to_bytes(text)); }

  bool is_inline() const noexcept { return std::holds_alternative<Bytes>(v_); }
  const DocumentId* as_id() const noexcept { return std::get_if<DocumentId>(&v_); }
  const Bytes* as_literal() const noexcept { return std::get_if<Bytes>(&v_); }

  /// Canonical id text, or a quoted literal with escapes.
  std::string str() const;

  friend bool operator==(const Ref&, const Ref&) = default;

 private:
  explicit Ref(std::variant<DocumentId, Bytes> v) : v_(std::move(v)) {}
  std::variant<DocumentId, Bytes> v_;
};

using DocRef = Ref;
using LocRef = Ref;

struct Take {
  DocRef base;
  friend bool operator==(const Take&, const Take&) = default;
};
struct Insert {
  LocRef at;
  DocRef from;
  LocRef segment;
  friend bool operator==(const Insert&, const Insert&) = default;
};
struct Delete {
  LocRef segment;
  friend bool operator==(const Delete&, const Delete&) = default;
};
struct Replace {
  LocRef at;
  DocRef from;
  LocRef segment;
  friend bool operator==(const Replace&, const Replace&) = default;
};

using EditOp = std::variant<Take, Insert, Delete, Replace>;

std::string_view op_name(const EditOp& op) noexcept;

/// An ordered list of edit operations beginning with exactly one Take.
class EditList {
 public:
  /// Throws Error{MissingTake} or Error{MultipleTake}.
  explicit EditList(std::vector<EditOp> ops);

  const std::vector<EditOp>& ops() const noexcept { return ops_; }
  const Take& take() const { return std::get<Take>(ops_.front()); }

  /// Canonical text: magic line, one keyword per line, `from`/`segment`
  /// continuation lines indented by two spaces.
  std::string str() const;
  Document to_document() const;

  friend bool operator==(const EditList&, const EditList&) = default;

 private:
  std::vector<EditOp> ops_;
};

struct ParseOptions {
  std::size_t max_inline = 64 * 1024;
};

EditList parse_edit_list(const Document& doc, const ParseOptions& opts = {});
EditList parse_edit_list(std::string_view text, const ParseOptions& opts = {});

/// Bytes of a reference: the literal itself or what the resolver returns.
Document resolve_ref(const Ref& ref, const Resolver& resolver);
/// Id of a reference; literals are hashed with the resolver's algorithm.
DocumentId ref_id(const Ref& ref, const Resolver& resolver);

/// Called with every segment assemble() consumes, in order.
using SegmentObserver = std::function<void(const Segment&)>;

/// Applies the operations left to right. Locators of later operations
/// address the current working document. The result keeps the format tag
/// of the Take base. Failures carry the index of the failing operation.
Document assemble(const EditList& e, const Resolver& resolver,
                  const SegmentObserver& observe = {});

/// The segments an assembly consumes: for Insert/Replace the `at` locator
/// over the working document and the `segment` locator over `from`; for
/// Delete its locator over the working document.
LinkSet usage(const EditList& e, const Resolver& resolver);

/// usage() annotated as links of `result`: working-document pairs are
/// versioning links, pairs over `from` documents are transclusions.
LinkSet derive_links(const EditList& e, const Resolver& resolver,
                     const DocumentId& result);

enum class CheckStatus : std::uint8_t {
  Ok,
  Unresolved,
  Malformed,
  Unselectable,
  KindMismatch,
  Unchecked,
};

std::string_view status_name(CheckStatus status) noexcept;

struct Check {
  std::size_t op_index;
  std::string role;  // take, at, from, segment, delete
  std::string ref;
  CheckStatus status;
  std::string detail;
};

struct VerifyReport {
  std::vector<Check> checks;

  bool ok() const noexcept;
  std::size_t failures() const noexcept;
  /// One line per check, then a summary line.
  std::string str() const;
};

/// Dry run: resolves every reference and tests every locator without
/// producing the assembled document. Never throws for domain failures.
VerifyReport verify(const EditList& e, const Resolver& resolver);

}  // namespace hyx
