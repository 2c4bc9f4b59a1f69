#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace smaclite {

enum class ErrorCode {
  MalformedDocument,
  MissingField,
  InvalidEnum,
  InvariantViolation,
  GroupCountMismatch,
  TerrainDimensionMismatch,
  UnresolvableUnitType,
  BadTypeIdMap,
  PlacementOverflow,
  DuplicateId,
  UnknownId,
  UnavailableAction,
  WrongActionCount,
  EpisodeOver,
  MalformedReplay,
  Io,
};

std::string_view to_string(ErrorCode code);

/// Single exception type for every failure the library reports. Callers that
/// need to branch on the failure kind inspect code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace smaclite
