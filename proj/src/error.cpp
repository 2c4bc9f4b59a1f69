#include "smaclite/error.hpp"

namespace smaclite {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MalformedDocument: return "MalformedDocument";
    case ErrorCode::MissingField: return "MissingField";
    case ErrorCode::InvalidEnum: return "InvalidEnum";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
    case ErrorCode::GroupCountMismatch: return "GroupCountMismatch";
    case ErrorCode::TerrainDimensionMismatch: return "TerrainDimensionMismatch";
    case ErrorCode::UnresolvableUnitType: return "UnresolvableUnitType";
    case ErrorCode::BadTypeIdMap: return "BadTypeIdMap";
    case ErrorCode::PlacementOverflow: return "PlacementOverflow";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::UnknownId: return "UnknownId";
    case ErrorCode::UnavailableAction: return "UnavailableAction";
    case ErrorCode::WrongActionCount: return "WrongActionCount";
    case ErrorCode::EpisodeOver: return "EpisodeOver";
    case ErrorCode::MalformedReplay: return "MalformedReplay";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace smaclite
