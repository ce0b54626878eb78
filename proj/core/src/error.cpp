#include "luxforge/error.hpp"

namespace luxforge {

std::string_view error_name(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::DegenerateOutline: return "DegenerateOutline";
        case ErrorCode::SelfIntersectingOutline: return "SelfIntersectingOutline";
        case ErrorCode::ClockwiseOutline: return "ClockwiseOutline";
        case ErrorCode::NonPositiveHeight: return "NonPositiveHeight";
        case ErrorCode::ObjectOutsideRoom: return "ObjectOutsideRoom";
        case ErrorCode::ObjectTooTall: return "ObjectTooTall";
        case ErrorCode::InvalidObject: return "InvalidObject";
        case ErrorCode::InvalidSurfaces: return "InvalidSurfaces";
        case ErrorCode::EmptyGrid: return "EmptyGrid";
        case ErrorCode::InvalidLuminaire: return "InvalidLuminaire";
        case ErrorCode::CoincidentPoint: return "CoincidentPoint";
        case ErrorCode::ReflectanceSaturated: return "ReflectanceSaturated";
        case ErrorCode::DuplicatePatternId: return "DuplicatePatternId";
        case ErrorCode::MalformedPattern: return "MalformedPattern";
        case ErrorCode::NoApplicablePattern: return "NoApplicablePattern";
        case ErrorCode::AnchorMissing: return "AnchorMissing";
        case ErrorCode::PlacementOutsideWall: return "PlacementOutsideWall";
        case ErrorCode::FixtureOutsideRoom: return "FixtureOutsideRoom";
        case ErrorCode::MalformedDesign: return "MalformedDesign";
        case ErrorCode::UnknownZone: return "UnknownZone";
        case ErrorCode::UnknownFixture: return "UnknownFixture";
        case ErrorCode::InvalidPolicy: return "InvalidPolicy";
        case ErrorCode::InvalidSchedule: return "InvalidSchedule";
        case ErrorCode::ZeroBaselineEnergy: return "ZeroBaselineEnergy";
        case ErrorCode::MalformedDocument: return "MalformedDocument";
        case ErrorCode::IoFailure: return "IoFailure";
        case ErrorCode::CorruptEntity: return "CorruptEntity";
        case ErrorCode::NotFound: return "NotFound";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(error_name(code)) + ": " + detail), code_(code), detail_(detail) {}

}  // namespace luxforge
