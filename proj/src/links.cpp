#include "hyx/links.hpp"

namespace hyx {

std::string_view kind_name(LinkKind kind) noexcept {
  switch (kind) {
    case LinkKind::Transclusion: return "transclusion";
    case LinkKind::Versioning: return "versioning";
    case LinkKind::Point: return "point";
  }
  return "?";
}

bool LinkSet::insert(Link link) {
  if (!index_.insert(link.segment).second) return false;
  links_.push_back(std::move(link));
  return true;
}

}  // namespace hyx
