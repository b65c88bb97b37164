#include "hyx/locator.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

namespace hyx {

std::string_view scheme_name(Scheme scheme) noexcept {
  switch (scheme) {
    case Scheme::Char: return "char";
    case Scheme::Line: return "line";
    case Scheme::Byte: return "byte";
  }
  return "?";
}

Locator Locator::point(Scheme scheme, Position at) {
  return Locator(scheme, at, std::nullopt);
}

Locator Locator::range(Scheme scheme, Position start, Position end) {
  if (end < start)
    throw Error(Errc::InvertedRange, "range end " + std::to_string(end) +
                                         " precedes start " +
                                         std::to_string(start));
  return Locator(scheme, start, end);
}

std::string Locator::str() const {
  std::string out(scheme_name(scheme_));
  out += '=';
  out += std::to_string(start_);
  if (end_) {
    out += ',';
    out += std::to_string(*end_);
  }
  return out;
}

Document Locator::to_document() const {
  return Document(str(), std::string(kLocatorFormat));
}

namespace {

Locator::Position parse_position(std::string_view digits,
                                 std::string_view whole) {
  Locator::Position value = 0;
  auto* first = digits.data();
  auto* last = first + digits.size();
  if (digits.empty() ||
      !std::all_of(first, last, [](char c) { return c >= '0' && c <= '9'; }))
    throw Error(Errc::NonNumericPosition,
                "non-numeric position in locator '" + std::string(whole) + "'");
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last)
    throw Error(Errc::NonNumericPosition,
                "position out of range in locator '" + std::string(whole) +
                    "'");
  return value;
}

}  // namespace

Locator parse_locator(std::string_view text) {
  if (text.empty()) throw Error(Errc::EmptyLocator, "empty locator");
  if (!std::all_of(text.begin(), text.end(), [](char c) {
        return static_cast<unsigned char>(c) < 0x80;
      }))
    throw Error(Errc::NotAscii, "locator must be ASCII");

  auto eq = text.find('=');
  auto name = text.substr(0, eq);
  Scheme scheme;
  if (name == "char")
    scheme = Scheme::Char;
  else if (name == "line")
    scheme = Scheme::Line;
  else if (name == "byte")
    scheme = Scheme::Byte;
  else
    throw Error(Errc::UnknownScheme,
                "unknown locator scheme '" + std::string(name) + "'");
  if (eq == std::string_view::npos)
    throw Error(Errc::NonNumericPosition,
                "locator '" + std::string(text) + "' has no position");

  auto params = text.substr(eq + 1);
  auto comma = params.find(',');
  auto start = parse_position(params.substr(0, comma), text);
  if (comma == std::string_view::npos) return Locator::point(scheme, start);
  auto end = parse_position(params.substr(comma + 1), text);
  return Locator::range(scheme, start, end);
}

Locator parse_locator(const Document& doc) {
  return parse_locator(std::string_view(
      reinterpret_cast<const char*>(doc.bytes().data()), doc.size()));
}

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

bool is_ascii(std::span<const std::uint8_t> bytes) {
  return std::all_of(bytes.begin(), bytes.end(),
                     [](std::uint8_t b) { return b < 0x80; });
}

// Only called once selectable() has accepted the position.
std::size_t char_offset(std::span<const std::uint8_t> bytes, TextEncoding enc,
                        std::uint64_t pos) {
  if (enc == TextEncoding::Ascii) return static_cast<std::size_t>(pos);
  std::uint64_t seen = 0;
  for (std::size_t i = 0; i < bytes.size(); ++i) {
    if ((bytes[i] & 0xc0) == 0x80) continue;
    if (seen == pos) return i;
    ++seen;
  }
  return bytes.size();
}

std::size_t line_offset(std::span<const std::uint8_t> bytes,
                        std::uint64_t pos) {
  if (pos == 0) return 0;
  std::uint64_t seen = 0;
  for (std::size_t i = 0; i < bytes.size(); ++i) {
    if (bytes[i] == '\n' && ++seen == pos) return i + 1;
  }
  return bytes.size();
}

std::size_t offset_of(Scheme scheme, const Document& doc, std::uint64_t pos) {
  switch (scheme) {
    case Scheme::Byte: return static_cast<std::size_t>(pos);
    case Scheme::Line: return line_offset(doc.bytes(), pos);
    case Scheme::Char: return char_offset(doc.bytes(), *text_encoding(doc), pos);
  }
  return 0;
}

}  // namespace

std::optional<TextEncoding> text_encoding(const Document& doc) {
  if (!doc.format_tag()) return TextEncoding::Utf8;
  auto tag = lower(*doc.format_tag());
  auto semi = tag.find(';');
  auto media = trim(std::string_view(tag).substr(0, semi));

  std::optional<std::string_view> charset;
  while (semi != std::string::npos) {
    auto next = tag.find(';', semi + 1);
    auto param = trim(std::string_view(tag).substr(
        semi + 1, next == std::string::npos ? std::string::npos
                                            : next - semi - 1));
    if (param.starts_with("charset=")) {
      auto value = param.substr(8);
      if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
        value = value.substr(1, value.size() - 2);
      charset = value;
    }
    semi = next;
  }
  if (charset) {
    if (*charset == "utf-8" || *charset == "utf8") return TextEncoding::Utf8;
    if (*charset == "us-ascii" || *charset == "ascii")
      return TextEncoding::Ascii;
    return std::nullopt;
  }
  if (media.starts_with("text/") || media == "application/json" ||
      media.ends_with("+json") || media.ends_with("+xml") ||
      media.starts_with("application/prs.hyx-"))
    return TextEncoding::Utf8;
  return std::nullopt;
}

std::optional<std::uint64_t> unit_count(Scheme scheme, const Document& doc) {
  auto bytes = doc.bytes();
  if (scheme == Scheme::Byte) return bytes.size();

  auto enc = text_encoding(doc);
  if (!enc) return std::nullopt;
  if (*enc == TextEncoding::Ascii ? !is_ascii(bytes) : !is_valid_utf8(bytes))
    return std::nullopt;

  if (scheme == Scheme::Line) {
    auto lines = static_cast<std::uint64_t>(
        std::count(bytes.begin(), bytes.end(), std::uint8_t{'\n'}));
    if (!bytes.empty() && bytes.back() != '\n') ++lines;
    return lines;
  }
  if (*enc == TextEncoding::Ascii) return bytes.size();
  return static_cast<std::uint64_t>(
      std::count_if(bytes.begin(), bytes.end(),
                    [](std::uint8_t b) { return (b & 0xc0) != 0x80; }));
}

bool selectable(const Locator& loc, const Document& doc) {
  auto count = unit_count(loc.scheme(), doc);
  return count && loc.start() <= *count && loc.end() <= *count;
}

Segment Segment::make(const Locator& loc, const DocumentId& id,
                      const Document& doc) {
  if (!selectable(loc, doc))
    throw Error(Errc::Unselectable,
                loc.str() + " is not selectable in " + id.str());
  return Segment(loc, id);
}

std::optional<Segment> Segment::try_make(const Locator& loc,
                                         const DocumentId& id,
                                         const Document& doc) {
  if (!selectable(loc, doc)) return std::nullopt;
  return Segment(loc, id);
}

std::pair<std::size_t, std::size_t> resolve_range(const Locator& loc,
                                                  const Document& doc) {
  if (!loc.is_range())
    throw Error(Errc::RangeRequired,
                "expected a range locator, got " + loc.str());
  if (!selectable(loc, doc))
    throw Error(Errc::Unselectable, loc.str() + " is not selectable");
  auto first = offset_of(loc.scheme(), doc, loc.start());
  auto last = offset_of(loc.scheme(), doc, loc.end());
  return {first, last};
}

Selection transclude(const Locator& loc, const Document& doc) {
  auto [first, last] = resolve_range(loc, doc);
  auto bytes = doc.bytes();
  return Selection{Bytes(bytes.begin() + first, bytes.begin() + last),
                   {loc.start(), loc.end()}};
}

Selection transclude(const Segment& seg, const Resolver& resolver) {
  return transclude(seg.locator(), resolver.resolve(seg.document()));
}

std::size_t resolve_point(const Locator& loc, const Document& doc) {
  if (!loc.is_point())
    throw Error(Errc::PointRequired,
                "expected a point locator, got " + loc.str());
  if (!selectable(loc, doc))
    throw Error(Errc::Unselectable, loc.str() + " is out of range");
  return offset_of(loc.scheme(), doc, loc.start());
}

}  // namespace hyx
