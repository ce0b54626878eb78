#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "luxforge/geometry.hpp"
#include "luxforge/photometry.hpp"

namespace luxforge {

/// Footprint-to-wall distance at or below which an object counts as standing against the wall.
inline constexpr double kWallAdjacencyThreshold = 0.05;

struct Anchor {
    std::size_t object_index = 0;
    ObjectKind kind = ObjectKind::other;
    Vec2 center;
    int wall_index = 0;  ///< nearest wall
    double wall_distance = 0.0;
    bool adjacent = false;

    friend bool operator==(const Anchor&, const Anchor&) = default;
};

struct RoomAnalysis {
    std::vector<Anchor> anchors;
    Vec2 free_ceiling_centroid;
    RoomFunction function = RoomFunction::bedroom;
    std::vector<WallSegment> walls;

    /// First anchor of the given kind, if any.
    const Anchor* find(ObjectKind kind) const;
};

/// Emits one anchor per bed/tv/desk/dresser/closet, bound to its nearest wall,
/// and a ceiling point for central fixtures.
RoomAnalysis analyze_room(const ValidatedRoom& room);

enum class PatternFamily { ceiling_central, flank_object, above_object, guideline_bedroom };

std::string_view to_string(PatternFamily f);
std::optional<PatternFamily> parse_pattern_family(std::string_view s);

/// Numeric parameters of a placement rule. Which fields matter depends on the family.
struct PlacementRule {
    std::optional<ObjectKind> anchor;
    double mount_height = 0.0;      ///< wall fixtures (flank / above)
    double flank_offset = 0.3;      ///< clearance beyond the object half-width
    double tilt_degrees = 30.0;     ///< downward tilt of wall fixtures
    double table_offset = 0.3;      ///< guideline table lamps, outward from the bed corners
    double table_height = 0.6;

    friend bool operator==(const PlacementRule&, const PlacementRule&) = default;
};

struct TargetLux {
    double ambient = 100.0;
    std::optional<double> task;

    friend bool operator==(const TargetLux&, const TargetLux&) = default;
};

struct DesignPattern {
    std::string id;
    PatternFamily family = PatternFamily::ceiling_central;
    RoomFunction target_function = RoomFunction::bedroom;
    std::vector<ObjectKind> preconditions;
    PlacementRule placement;
    /// Luminaire per emitted fixture role ("ceiling", "wall", "table").
    std::map<std::string, LuminaireSpec> specs;
    TargetLux target_lux;

    friend bool operator==(const DesignPattern&, const DesignPattern&) = default;
};

struct PatternLibrary {
    std::string version;
    std::vector<DesignPattern> patterns;

    const DesignPattern* find(std::string_view id) const;

    friend bool operator==(const PatternLibrary&, const PatternLibrary&) = default;
};

/// Throws DuplicatePatternId or MalformedPattern.
void check_library(const PatternLibrary& library);

/// Parses a pattern-library JSON document and checks it.
PatternLibrary load_pattern_library(std::string_view document);

/// Canonical JSON text of a library; `load_pattern_library` reproduces it.
std::string dump_pattern_library(const PatternLibrary& library);

/// The embedded residential library (six bedroom patterns).
const PatternLibrary& default_pattern_library();

/// JSON text embedded in the binary for the default library.
std::string_view default_pattern_library_document();

/// Patterns applicable to the analysed room, in library order.
/// Throws NoApplicablePattern when nothing matches.
std::vector<DesignPattern> match_patterns(const RoomAnalysis& analysis, const PatternLibrary& library);

}  // namespace luxforge
