#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "luxforge/geometry.hpp"
#include "luxforge/patterns.hpp"
#include "luxforge/photometry.hpp"

namespace luxforge {

inline constexpr std::string_view kAmbientZone = "ambient";
inline constexpr std::string_view kTaskZone = "task";

/// Horizontal radius around a task fixture's aim point that counts as its task area.
inline constexpr double kTaskRadius = 0.5;

/// A set of placed fixtures for one room. The room document travels with the
/// design so a design file can be evaluated on its own.
struct LightingDesign {
    std::string id;
    std::string pattern_id;
    std::string room_ref;
    RoomModel room;
    std::vector<PlacedFixture> fixtures;
    std::vector<double> dims;  ///< current dim level per fixture, in [0,1]

    /// Zone label -> fixture indices, derived from the fixtures' zone fields.
    std::map<std::string, std::vector<std::size_t>> zones() const;

    friend bool operator==(const LightingDesign&, const LightingDesign&) = default;
};

/// Validates fixtures against the room, dim levels and fixture-id uniqueness.
void check_design(const LightingDesign& design, const ValidatedRoom& room);

struct DesignScore {
    double average_lux = 0.0;
    double min_lux = 0.0;
    double max_lux = 0.0;
    double uniformity = 0.0;
    std::optional<double> task_lux;
    bool meets_ambient = false;
    bool meets_task = false;
    double scalar_score = 0.0;

    friend bool operator==(const DesignScore&, const DesignScore&) = default;
};

/// Places the pattern's fixtures in the analysed room.
/// Throws AnchorMissing, PlacementOutsideWall or FixtureOutsideRoom.
LightingDesign instantiate_pattern(const DesignPattern& pattern, const RoomAnalysis& analysis,
                                   const ValidatedRoom& room);

/// Deterministic id for the design generated from `pattern_id` under `seed`.
std::string design_id(std::uint64_t seed, std::string_view pattern_id);

/// One design per matching pattern, in library order.
std::vector<LightingDesign> generate_designs(const ValidatedRoom& room, const PatternLibrary& library,
                                             std::uint64_t seed, const std::string& room_ref = {});

/// Grid points (indices into `field.points`) that lie in the task area of any task-zone fixture.
std::vector<std::size_t> task_points(const LightingDesign& design, const ValidatedRoom& room,
                                     const IlluminanceField& field);

/// Scores a design at full output on the workplane grid.
DesignScore evaluate_design(const LightingDesign& design, const ValidatedRoom& room, const TargetLux& targets,
                            double spacing = kDefaultGridSpacing,
                            double workplane_height = kDefaultWorkplaneHeight);

/// Indices into `designs`, best first: descending score, then ascending pattern id.
std::vector<std::size_t> rank_designs(std::span<const LightingDesign> designs,
                                      std::span<const DesignScore> scores);

struct RankedDesigns {
    std::vector<LightingDesign> designs;  ///< library order
    std::vector<DesignScore> scores;      ///< parallel to `designs`
    std::vector<std::size_t> order;       ///< indices into `designs`, best first
};

/// Generates, scores against each pattern's targets, and ranks.
RankedDesigns generate_ranked(const ValidatedRoom& room, const PatternLibrary& library, std::uint64_t seed,
                              const std::string& room_ref = {});

}  // namespace luxforge
