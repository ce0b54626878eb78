#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace luxforge {

/// Failure categories raised by the engine. The enumerator spelling is the
/// public error name surfaced by the CLI and the HTTP service.
enum class ErrorCode {
    // geometry
    DegenerateOutline,
    SelfIntersectingOutline,
    ClockwiseOutline,
    NonPositiveHeight,
    ObjectOutsideRoom,
    ObjectTooTall,
    InvalidObject,
    InvalidSurfaces,
    EmptyGrid,
    // photometry
    InvalidLuminaire,
    CoincidentPoint,
    ReflectanceSaturated,
    // patterns / designs
    DuplicatePatternId,
    MalformedPattern,
    NoApplicablePattern,
    AnchorMissing,
    PlacementOutsideWall,
    FixtureOutsideRoom,
    MalformedDesign,
    // control
    UnknownZone,
    UnknownFixture,
    InvalidPolicy,
    InvalidSchedule,
    ZeroBaselineEnergy,
    // documents / persistence
    MalformedDocument,
    IoFailure,
    CorruptEntity,
    NotFound,
    InvalidArgument,
};

std::string_view error_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& detail);

    ErrorCode code() const noexcept { return code_; }
    std::string_view name() const noexcept { return error_name(code_); }
    /// Detail text without the error-name prefix.
    const std::string& detail() const noexcept { return detail_; }

private:
    ErrorCode code_;
    std::string detail_;
};

}  // namespace luxforge
