#include "hyx/editlist.hpp"

#include <algorithm>

namespace hyx {

Ref Ref::literal(Bytes bytes) {
  if (!is_valid_utf8(bytes))
    throw Error(Errc::InvalidUtf8, "inline literal is not UTF-8");
  return Ref(std::move(bytes));
}

std::string Ref::str() const {
  if (auto id = as_id()) return id->str();
  std::string out = "\"";
  for (auto b : *as_literal()) {
    switch (b) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += static_cast<char>(b);
    }
  }
  out += '"';
  return out;
}

std::string_view op_name(const EditOp& op) noexcept {
  switch (op.index()) {
    case 0: return "take";
    case 1: return "insert";
    case 2: return "delete";
    case 3: return "replace";
  }
  return "?";
}

EditList::EditList(std::vector<EditOp> ops) : ops_(std::move(ops)) {
  if (ops_.empty() || !std::holds_alternative<Take>(ops_.front()))
    throw Error(Errc::MissingTake, "edit list must start with take");
  auto takes = std::count_if(ops_.begin(), ops_.end(), [](const EditOp& op) {
    return std::holds_alternative<Take>(op);
  });
  if (takes > 1)
    throw Error(Errc::MultipleTake, "edit list has more than one take");
}

std::string EditList::str() const {
  std::string out = "%hyx-edl 1\n";
  for (const auto& op : ops_) {
    std::visit(
        [&](const auto& o) {
          using T = std::decay_t<decltype(o)>;
          if constexpr (std::is_same_v<T, Take>) {
            out += "take " + o.base.str() + "\n";
          } else if constexpr (std::is_same_v<T, Delete>) {
            out += "delete " + o.segment.str() + "\n";
          } else {
            out += std::is_same_v<T, Insert> ? "insert at " : "replace ";
            out += o.at.str() + "\n";
            out += "  from " + o.from.str() + "\n";
            out += "  segment " + o.segment.str() + "\n";
          }
        },
        op);
  }
  return out;
}

Document EditList::to_document() const {
  return Document(str(), std::string(kEditListFormat));
}

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

struct Line {
  std::size_t number;
  std::string_view text;
};

class Parser {
 public:
  Parser(std::string_view text, const ParseOptions& opts) : opts_(opts) {
    std::size_t number = 0;
    for (std::size_t start = 0;; ++number) {
      auto nl = text.find('\n', start);
      auto t = trim(text.substr(start, nl == std::string_view::npos
                                           ? std::string_view::npos
                                           : nl - start));
      if (!t.empty() && t.front() != '#') lines_.push_back({number + 1, t});
      if (nl == std::string_view::npos) break;
      start = nl + 1;
    }
  }

  EditList parse() {
    if (pos_ < lines_.size() && lines_[pos_].text.front() == '%') {
      auto [magic, version] = split(lines_[pos_].text);
      if (magic != "%hyx-edl" || version != "1")
        fail(Errc::BadHeader, "expected '%hyx-edl 1'");
      ++pos_;
    }
    std::vector<EditOp> ops;
    while (pos_ < lines_.size()) {
      auto [keyword, rest] = split(lines_[pos_].text);
      if (keyword == "take") {
        if (!ops.empty())
          fail(std::any_of(ops.begin(), ops.end(),
                           [](const EditOp& op) {
                             return std::holds_alternative<Take>(op);
                           })
                   ? Errc::MultipleTake
                   : Errc::MissingTake,
               "take must appear once, as the first operation");
        ops.push_back(Take{ref(rest)});
        ++pos_;
        continue;
      }
      if (keyword != "insert" && keyword != "replace" && keyword != "delete")
        fail(Errc::UnknownKeyword,
             "unknown keyword '" + std::string(keyword) + "'");
      if (ops.empty())
        fail(Errc::MissingTake, "edit list must start with take");
      if (keyword == "insert") {
        auto [at, target] = split(rest);
        if (at != "at") fail(Errc::UnknownKeyword, "expected 'insert at'");
        auto at_ref = ref(target);
        ++pos_;
        auto [from, segment] = continuation("insert at");
        ops.push_back(Insert{std::move(at_ref), std::move(from), std::move(segment)});
      } else if (keyword == "replace") {
        auto at_ref = ref(rest);
        ++pos_;
        auto [from, segment] = continuation("replace");
        ops.push_back(Replace{std::move(at_ref), std::move(from), std::move(segment)});
      } else {
        ops.push_back(Delete{ref(rest)});
        ++pos_;
      }
    }
    if (ops.empty()) {
      pos_ = lines_.size();
      fail(Errc::MissingTake, "edit list has no take");
    }
    return EditList(std::move(ops));
  }

 private:
  static std::pair<std::string_view, std::string_view> split(
      std::string_view line) {
    auto end = std::find_if(line.begin(), line.end(), is_space) - line.begin();
    return {line.substr(0, end), trim(line.substr(end))};
  }

  std::pair<Ref, Ref> continuation(std::string_view owner) {
    auto expect = [&](std::string_view keyword) {
      if (pos_ >= lines_.size())
        fail(Errc::DanglingOperation, "'" + std::string(owner) +
                                          "' without '" +
                                          std::string(keyword) + "'");
      auto [kw, rest] = split(lines_[pos_].text);
      if (kw != keyword)
        fail(Errc::DanglingOperation, "'" + std::string(owner) +
                                          "' must be followed by '" +
                                          std::string(keyword) + "'");
      auto r = ref(rest);
      ++pos_;
      return r;
    };
    auto from = expect("from");
    auto segment = expect("segment");
    return {std::move(from), std::move(segment)};
  }

  Ref ref(std::string_view text) {
    if (text.empty()) fail(Errc::MalformedRef, "missing reference");
    if (text.front() != '"') {
      auto id = try_parse_id(text);
      if (!id)
        fail(Errc::MalformedRef, "malformed reference '" + std::string(text) + "'");
      return Ref::id(std::move(*id));
    }
    Bytes bytes;
    std::size_t i = 1;
    for (; i < text.size() && text[i] != '"'; ++i) {
      char c = text[i];
      if (c == '\\') {
        if (++i == text.size()) break;
        switch (text[i]) {
          case '"': c = '"'; break;
          case '\\': c = '\\'; break;
          case 'n': c = '\n'; break;
          case 't': c = '\t'; break;
          default:
            fail(Errc::MalformedRef,
                 std::string("unknown escape '\\") + text[i] + "'");
        }
      }
      bytes.push_back(static_cast<std::uint8_t>(c));
    }
    if (i >= text.size()) fail(Errc::MalformedRef, "unterminated literal");
    if (i + 1 != text.size())
      fail(Errc::MalformedRef, "text after closing quote");
    if (bytes.size() > opts_.max_inline)
      fail(Errc::InlineTooLarge,
           "inline literal of " + std::to_string(bytes.size()) +
               " bytes exceeds cap of " + std::to_string(opts_.max_inline));
    return Ref::literal(std::move(bytes));
  }

  [[noreturn]] void fail(Errc code, const std::string& msg) const {
    auto n = pos_ < lines_.size() ? lines_[pos_].number
             : lines_.empty()     ? 1
                                  : lines_.back().number;
    throw Error(code, "line " + std::to_string(n) + ": " + msg);
  }

  const ParseOptions& opts_;
  std::vector<Line> lines_;
  std::size_t pos_ = 0;
};

}  // namespace

EditList parse_edit_list(std::string_view text, const ParseOptions& opts) {
  if (!is_valid_utf8({reinterpret_cast<const std::uint8_t*>(text.data()),
                      text.size()}))
    throw Error(Errc::InvalidUtf8, "edit list is not UTF-8");
  return Parser(text, opts).parse();
}

EditList parse_edit_list(const Document& doc, const ParseOptions& opts) {
  return parse_edit_list(
      std::string_view(reinterpret_cast<const char*>(doc.bytes().data()),
                       doc.size()),
      opts);
}

}  // namespace hyx
