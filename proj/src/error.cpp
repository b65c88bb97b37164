#include "hyx/error.hpp"

namespace hyx {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::MalformedId: return "malformed id";
    case Errc::UnknownAlgorithm: return "unknown algorithm";
    case Errc::WrongDigestLength: return "wrong digest length";
    case Errc::EmptyLocator: return "empty locator";
    case Errc::UnknownScheme: return "unknown locator scheme";
    case Errc::NonNumericPosition: return "non-numeric position";
    case Errc::InvertedRange: return "inverted range";
    case Errc::NotAscii: return "locator is not ASCII";
    case Errc::RangeRequired: return "range locator required";
    case Errc::PointRequired: return "point locator required";
    case Errc::Unselectable: return "locator not selectable";
    case Errc::InvalidUtf8: return "invalid UTF-8";
    case Errc::BadHeader: return "bad edit list header";
    case Errc::UnknownKeyword: return "unknown keyword";
    case Errc::DanglingOperation: return "incomplete operation";
    case Errc::MissingTake: return "missing take";
    case Errc::MultipleTake: return "multiple take";
    case Errc::MalformedRef: return "malformed reference";
    case Errc::InlineTooLarge: return "inline literal too large";
    case Errc::NotFound: return "not found";
    case Errc::Corrupt: return "corrupt object";
    case Errc::StorageFailure: return "storage failure";
    case Errc::BadConfig: return "bad store config";
    case Errc::NetworkFailure: return "network failure";
    case Errc::HttpStatus: return "unexpected HTTP status";
    case Errc::DigestMismatch: return "digest mismatch";
    case Errc::SizeExceeded: return "size cap exceeded";
    case Errc::BindFailure: return "bind failure";
  }
  return "unknown error";
}

Error::Error(Errc code, const std::string& what,
             std::optional<std::size_t> op_index)
    : std::runtime_error(what), code_(code), op_index_(op_index) {}

}  // namespace hyx
