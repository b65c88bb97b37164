#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hyx {

enum class Errc {
  // identifiers
  MalformedId,
  UnknownAlgorithm,
  WrongDigestLength,
  // locators
  EmptyLocator,
  UnknownScheme,
  NonNumericPosition,
  InvertedRange,
  NotAscii,
  RangeRequired,
  PointRequired,
  Unselectable,
  // edit lists
  InvalidUtf8,
  BadHeader,
  UnknownKeyword,
  DanglingOperation,
  MissingTake,
  MultipleTake,
  MalformedRef,
  InlineTooLarge,
  // store
  NotFound,
  Corrupt,
  StorageFailure,
  BadConfig,
  // net
  NetworkFailure,
  HttpStatus,
  DigestMismatch,
  SizeExceeded,
  BindFailure,
};

std::string_view to_string(Errc code) noexcept;

/// Every domain failure in hyx is reported as an Error carrying a code.
/// Assembly failures also carry the index of the failing operation.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what,
        std::optional<std::size_t> op_index = std::nullopt);

  Errc code() const noexcept { return code_; }
  std::optional<std::size_t> op_index() const noexcept { return op_index_; }

 private:
  Errc code_;
  std::optional<std::size_t> op_index_;
};

}  // namespace hyx
