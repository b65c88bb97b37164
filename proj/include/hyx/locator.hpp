#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "hyx/core.hpp"

namespace hyx {

enum class Scheme : std::uint8_t { Char, Line, Byte };

std::string_view scheme_name(Scheme scheme) noexcept;

/// A content locator: a point or a half-open range of interstitial
/// positions counted in characters, lines or bytes.
///
/// Position 0 lies before the first unit and N after the last of N units,
/// so `char=11,16` spans the five characters following position 11.
class Locator {
 public:
  using Position = std::uint64_t;

  static Locator point(Scheme scheme, Position at);
  /// Throws Error{InvertedRange} if end < start.
  static Locator range(Scheme scheme, Position start, Position end);

  Scheme scheme() const noexcept { return scheme_; }
  bool is_point() const noexcept { return !end_; }
  bool is_range() const noexcept { return end_.has_value(); }
  Position start() const noexcept { return start_; }
  /// End of a range; equals start() for a point.
  Position end() const noexcept { return end_.value_or(start_); }

  /// Canonical text, e.g. "char=7" or "line=1,2".
  std::string str() const;
  Document to_document() const;

  friend auto operator<=>(const Locator&, const Locator&) = default;

 private:
  Locator(Scheme scheme, Position start, std::optional<Position> end)
      : scheme_(scheme), start_(start), end_(end) {}

  Scheme scheme_;
  Position start_;
  std::optional<Position> end_;
};

Locator parse_locator(std::string_view text);
Locator parse_locator(const Document& doc);

enum class TextEncoding : std::uint8_t { Utf8, Ascii };

/// How char/line locators read this document, from its format tag.
/// Returns nullopt for formats with no text interpretation.
std::optional<TextEncoding> text_encoding(const Document& doc);

/// Number of units in doc under scheme, or nullopt if the scheme does not
/// apply (non-text format or bytes that do not decode).
std::optional<std::uint64_t> unit_count(Scheme scheme, const Document& doc);

/// Membership test for segments: the scheme applies to doc and every
/// position lies in [0, unit_count].
bool selectable(const Locator& loc, const Document& doc);

/// A locator paired with the id of the document it selects from. Only
/// constructible through a successful selectability check.
class Segment {
 public:
  /// Throws Error{Unselectable} when selectable(loc, doc) is false.
  static Segment make(const Locator& loc, const DocumentId& id,
                      const Document& doc);
  static std::optional<Segment> try_make(const Locator& loc,
                                         const DocumentId& id,
                                         const Document& doc);

  const Locator& locator() const noexcept { return locator_; }
  const DocumentId& document() const noexcept { return document_; }

  friend auto operator<=>(const Segment&, const Segment&) = default;

 private:
  Segment(Locator loc, DocumentId id)
      : locator_(loc), document_(std::move(id)) {}

  Locator locator_;
  DocumentId document_;
};

struct Selection {
  Bytes segment_bytes;
  std::pair<std::uint64_t, std::uint64_t> unit_span;

  Document to_document(std::optional<std::string> tag = {}) const {
    return Document(segment_bytes, std::move(tag));
  }
};

/// Units [start, end) of a range locator, as bytes.
Selection transclude(const Locator& loc, const Document& doc);
Selection transclude(const Segment& seg, const Resolver& resolver);

/// Byte offset in doc of a point locator's position.
std::size_t resolve_point(const Locator& loc, const Document& doc);

/// Byte offsets [first, second) of a range locator. Throws like transclude.
std::pair<std::size_t, std::size_t> resolve_range(const Locator& loc,
                                                  const Document& doc);

}  // namespace hyx
