#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string_view>
#include <vector>

#include "hyx/locator.hpp"

namespace hyx {

enum class LinkKind : std::uint8_t { Transclusion, Versioning, Point };

std::string_view kind_name(LinkKind kind) noexcept;

struct Link {
  Segment segment;
  std::optional<LinkKind> kind;
  /// Id of the document the link appears in, when known.
  std::optional<DocumentId> result;
};

/// Set of segments, kept in first-insertion order. A second insert of the
/// same <locator, document> pair is ignored.
class LinkSet {
 public:
  using const_iterator = std::vector<Link>::const_iterator;

  bool insert(Link link);
  bool insert(const Segment& segment) { return insert(Link{segment, {}, {}}); }

  bool contains(const Segment& segment) const {
    return index_.contains(segment);
  }
  std::size_t size() const noexcept { return links_.size(); }
  bool empty() const noexcept { return links_.empty(); }
  const_iterator begin() const noexcept { return links_.begin(); }
  const_iterator end() const noexcept { return links_.end(); }

  const std::set<Segment>& segments() const noexcept { return index_; }

  /// Set equality over segments; kinds and results are ignored.
  friend bool operator==(const LinkSet& a, const LinkSet& b) {
    return a.index_ == b.index_;
  }

 private:
  std::vector<Link> links_;
  std::set<Segment> index_;
};

}  // namespace hyx
