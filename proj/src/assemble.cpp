#include "hyx/editlist.hpp"

#include <sstream>

namespace hyx {

Document resolve_ref(const Ref& ref, const Resolver& resolver) {
  if (auto bytes = ref.as_literal()) return Document(*bytes);
  return resolver.resolve(*ref.as_id());
}

DocumentId ref_id(const Ref& ref, const Resolver& resolver) {
  if (auto bytes = ref.as_literal())
    return compute_id(*bytes, resolver.algorithm());
  return *ref.as_id();
}

namespace {

Locator resolve_locator(const LocRef& ref, const Resolver& resolver) {
  return parse_locator(resolve_ref(ref, resolver));
}

Document splice(const Document& working, std::size_t first, std::size_t last,
                std::span<const std::uint8_t> insert) {
  auto bytes = working.bytes();
  Bytes out;
  out.reserve(bytes.size() - (last - first) + insert.size());
  out.insert(out.end(), bytes.begin(), bytes.begin() + first);
  out.insert(out.end(), insert.begin(), insert.end());
  out.insert(out.end(), bytes.begin() + last, bytes.end());
  return Document(std::move(out), working.format_tag());
}

// Insert and Replace differ only in whether `at` is a point or a range.
struct SpliceOp {
  const LocRef& at;
  const DocRef& from;
  const LocRef& segment;
  bool is_insert;
};

SpliceOp splice_op(const EditOp& op) {
  if (auto ins = std::get_if<Insert>(&op))
    return {ins->at, ins->from, ins->segment, true};
  const auto& rep = std::get<Replace>(op);
  return {rep.at, rep.from, rep.segment, false};
}

// Byte span the `at` locator covers in the working document.
std::pair<std::size_t, std::size_t> target_span(const Locator& at,
                                                bool is_insert,
                                                const Document& working) {
  if (!is_insert) return resolve_range(at, working);
  auto offset = resolve_point(at, working);
  return {offset, offset};
}

// Runs f, rethrowing domain errors tagged with the operation index.
template <typename F>
auto at_op(std::size_t index, const EditOp& op, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.op_index()) throw;
    throw Error(e.code(),
                "op " + std::to_string(index) + " (" +
                    std::string(op_name(op)) + "): " + e.what(),
                index);
  }
}

}  // namespace

Document assemble(const EditList& e, const Resolver& resolver,
                  const SegmentObserver& observe) {
  Document working;
  const auto& ops = e.ops();
  for (std::size_t i = 0; i < ops.size(); ++i) {
    working = at_op(i, ops[i], [&]() -> Document {
      if (auto take = std::get_if<Take>(&ops[i]))
        return resolve_ref(take->base, resolver);

      if (auto del = std::get_if<Delete>(&ops[i])) {
        auto loc = resolve_locator(del->segment, resolver);
        auto [first, last] = resolve_range(loc, working);
        if (observe)
          observe(Segment::make(loc, compute_id(working, resolver.algorithm()),
                                working));
        return splice(working, first, last, {});
      }

      auto op = splice_op(ops[i]);
      auto at_loc = resolve_locator(op.at, resolver);
      auto [first, last] = target_span(at_loc, op.is_insert, working);
      auto source = resolve_ref(op.from, resolver);
      auto seg_loc = resolve_locator(op.segment, resolver);
      auto selection = transclude(seg_loc, source);
      if (observe) {
        observe(Segment::make(
            at_loc, compute_id(working, resolver.algorithm()), working));
        observe(Segment::make(seg_loc, ref_id(op.from, resolver), source));
      }
      return splice(working, first, last, selection.segment_bytes);
    });
  }
  return working;
}

namespace {

struct UsageEntry {
  Segment segment;
  bool over_working;
};

std::vector<UsageEntry> collect_usage(const EditList& e,
                                      const Resolver& resolver) {
  std::vector<UsageEntry> out;
  Document working;
  const auto& ops = e.ops();
  for (std::size_t i = 0; i < ops.size(); ++i) {
    working = at_op(i, ops[i], [&]() -> Document {
      if (auto take = std::get_if<Take>(&ops[i]))
        return resolve_ref(take->base, resolver);

      auto working_id = compute_id(working, resolver.algorithm());
      if (auto del = std::get_if<Delete>(&ops[i])) {
        auto loc = resolve_locator(del->segment, resolver);
        if (!loc.is_range())
          throw Error(Errc::RangeRequired,
                      "delete needs a range, got " + loc.str());
        out.push_back({Segment::make(loc, working_id, working), true});
        auto [first, last] = resolve_range(loc, working);
        return splice(working, first, last, {});
      }

      auto op = splice_op(ops[i]);
      auto at = resolve_locator(op.at, resolver);
      if (at.is_point() != op.is_insert)
        throw Error(op.is_insert ? Errc::PointRequired : Errc::RangeRequired,
                    std::string(op.is_insert ? "insert at" : "replace") +
                        " got " + at.str());
      out.push_back({Segment::make(at, working_id, working), true});

      auto source = resolve_ref(op.from, resolver);
      auto seg = resolve_locator(op.segment, resolver);
      if (!seg.is_range())
        throw Error(Errc::RangeRequired,
                    "segment needs a range, got " + seg.str());
      out.push_back(
          {Segment::make(seg, ref_id(op.from, resolver), source), false});

      auto [first, last] = target_span(at, op.is_insert, working);
      return splice(working, first, last,
                    transclude(seg, source).segment_bytes);
    });
  }
  return out;
}

}  // namespace

LinkSet usage(const EditList& e, const Resolver& resolver) {
  LinkSet links;
  for (auto& entry : collect_usage(e, resolver)) links.insert(entry.segment);
  return links;
}

LinkSet derive_links(const EditList& e, const Resolver& resolver,
                     const DocumentId& result) {
  LinkSet links;
  for (auto& entry : collect_usage(e, resolver))
    links.insert(Link{entry.segment,
                      entry.over_working ? LinkKind::Versioning
                                         : LinkKind::Transclusion,
                      result});
  return links;
}

std::string_view status_name(CheckStatus status) noexcept {
  switch (status) {
    case CheckStatus::Ok: return "ok";
    case CheckStatus::Unresolved: return "unresolved";
    case CheckStatus::Malformed: return "malformed";
    case CheckStatus::Unselectable: return "unselectable";
    case CheckStatus::KindMismatch: return "kind-mismatch";
    case CheckStatus::Unchecked: return "unchecked";
  }
  return "?";
}

bool VerifyReport::ok() const noexcept { return failures() == 0; }

std::size_t VerifyReport::failures() const noexcept {
  std::size_t n = 0;
  for (const auto& c : checks) n += c.status != CheckStatus::Ok;
  return n;
}

std::string VerifyReport::str() const {
  std::ostringstream out;
  for (const auto& c : checks) {
    out << status_name(c.status) << " op" << c.op_index << ' ' << c.role << ' '
        << c.ref;
    if (!c.detail.empty()) out << ' ' << c.detail;
    out << '\n';
  }
  if (ok())
    out << "ok: " << checks.size() << " checks passed\n";
  else
    out << "FAILED: " << failures() << " of " << checks.size()
        << " checks failed\n";
  return out.str();
}

namespace {

enum class Want { Point, Range };

class Verifier {
 public:
  Verifier(const Resolver& resolver, VerifyReport& report)
      : resolver_(resolver), report_(report) {}

  std::optional<Document> resolve(std::size_t op, std::string role,
                                  const Ref& ref) {
    try {
      auto doc = resolve_ref(ref, resolver_);
      add(op, std::move(role), ref, CheckStatus::Ok, "");
      return doc;
    } catch (const Error& e) {
      add(op, std::move(role), ref, CheckStatus::Unresolved, e.what());
      return std::nullopt;
    }
  }

  // Resolves and parses a locator reference, then tests it against target.
  std::optional<Locator> locate(std::size_t op, std::string role,
                                const Ref& ref, Want want,
                                const std::optional<Document>& target) {
    std::optional<Document> doc;
    try {
      doc = resolve_ref(ref, resolver_);
    } catch (const Error& e) {
      add(op, std::move(role), ref, CheckStatus::Unresolved, e.what());
      return std::nullopt;
    }
    std::optional<Locator> loc;
    try {
      loc = parse_locator(*doc);
    } catch (const Error& e) {
      add(op, std::move(role), ref, CheckStatus::Malformed, e.what());
      return std::nullopt;
    }
    if (loc->is_point() != (want == Want::Point)) {
      add(op, std::move(role), ref, CheckStatus::KindMismatch,
          loc->str() + (want == Want::Point ? " is not a point"
                                            : " is not a range"));
      return std::nullopt;
    }
    if (!target) {
      add(op, std::move(role), ref, CheckStatus::Unchecked,
          loc->str() + " (target unavailable)");
      return std::nullopt;
    }
    if (!selectable(*loc, *target)) {
      add(op, std::move(role), ref, CheckStatus::Unselectable,
          loc->str() + " out of range");
      return std::nullopt;
    }
    add(op, std::move(role), ref, CheckStatus::Ok, loc->str());
    return loc;
  }

 private:
  void add(std::size_t op, std::string role, const Ref& ref,
           CheckStatus status, std::string detail) {
    report_.checks.push_back(
        {op, std::move(role), ref.str(), status, std::move(detail)});
  }

  const Resolver& resolver_;
  VerifyReport& report_;
};

}  // namespace

VerifyReport verify(const EditList& e, const Resolver& resolver) {
  VerifyReport report;
  Verifier v(resolver, report);
  std::optional<Document> working;
  const auto& ops = e.ops();
  for (std::size_t i = 0; i < ops.size(); ++i) {
    if (auto take = std::get_if<Take>(&ops[i])) {
      working = v.resolve(i, "take", take->base);
    } else if (auto del = std::get_if<Delete>(&ops[i])) {
      auto loc = v.locate(i, "delete", del->segment, Want::Range, working);
      if (working && loc) {
        auto [first, last] = resolve_range(*loc, *working);
        working = splice(*working, first, last, {});
      } else {
        working.reset();
      }
    } else {
      auto op = splice_op(ops[i]);
      auto at_loc = v.locate(i, "at", op.at,
                             op.is_insert ? Want::Point : Want::Range, working);
      auto source = v.resolve(i, "from", op.from);
      auto seg_loc = v.locate(i, "segment", op.segment, Want::Range, source);
      if (working && at_loc && source && seg_loc) {
        auto [first, last] = target_span(*at_loc, op.is_insert, *working);
        working = splice(*working, first, last,
                         transclude(*seg_loc, *source).segment_bytes);
      } else {
        working.reset();
      }
    }
  }
  return report;
}

}  // namespace hyx
