#include "luxforge/patterns.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "json_codec.hpp"
#include "luxforge/error.hpp"

namespace luxforge {

namespace {

bool is_anchor_kind(ObjectKind k) {
    switch (k) {
        case ObjectKind::bed:
        case ObjectKind::tv:
        case ObjectKind::desk:
        case ObjectKind::dresser:
        case ObjectKind::closet: return true;
        default: return false;
    }
}

Vec2 ceiling_point(const ValidatedRoom& room) {
    const Vec2 c = polygon_centroid(room.model().outline);
    if (point_in_room(room, c)) return c;
    // Non-convex outline whose centroid falls outside: nearest interior cell centre.
    const Rect& b = room.bounds();
    const double step = kDefaultGridSpacing;
    Vec2 best = room.model().outline.front();
    double best_d = std::numeric_limits<double>::infinity();
    const auto cols = static_cast<int>(std::ceil(b.width() / step));
    const auto rows = static_cast<int>(std::ceil(b.depth() / step));
    for (int j = 0; j < rows; ++j) {
        for (int i = 0; i < cols; ++i) {
            const Vec2 p{b.min.x + (i + 0.5) * step, b.min.y + (j + 0.5) * step};
            if (!point_in_room(room, p)) continue;
            const double d = norm(p - c);
            if (d < best_d) {
                best_d = d;
                best = p;
            }
        }
    }
    return best;
}

[[noreturn]] void malformed(const std::string& id, const std::string& field, const std::string& why) {
    throw Error(ErrorCode::MalformedPattern, "pattern '" + id + "' field '" + field + "': " + why);
}

void check_spec_role(const DesignPattern& p, const std::string& role) {
    const auto it = p.specs.find(role);
    if (it == p.specs.end()) malformed(p.id, "specs." + role, "missing");
    try {
        check_luminaire(it->second);
    } catch (const Error& e) {
        malformed(p.id, "specs." + role, e.detail());
    }
}

void check_pattern(const DesignPattern& p) {
    if (p.id.empty()) malformed(p.id, "id", "empty");
    switch (p.family) {
        case PatternFamily::ceiling_central:
            check_spec_role(p, "ceiling");
            break;
        case PatternFamily::flank_object:
        case PatternFamily::above_object:
            if (p.preconditions.size() != 1) malformed(p.id, "preconditions", "exactly one anchor kind required");
            if (p.placement.anchor != p.preconditions.front()) {
                malformed(p.id, "placement.anchor", "must equal the precondition kind");
            }
            if (!(p.placement.mount_height > 0.0)) malformed(p.id, "placement.mount_height", "must be positive");
            if (!(p.placement.tilt_degrees >= 0.0 && p.placement.tilt_degrees < 90.0)) {
                malformed(p.id, "placement.tilt_degrees", "must lie in [0, 90)");
            }
            if (p.family == PatternFamily::flank_object && !(p.placement.flank_offset >= 0.0)) {
                malformed(p.id, "placement.flank_offset", "must be non-negative");
            }
            check_spec_role(p, "wall");
            break;
        case PatternFamily::guideline_bedroom:
            if (std::find(p.preconditions.begin(), p.preconditions.end(), ObjectKind::bed) == p.preconditions.end()) {
                malformed(p.id, "preconditions", "guideline bedroom pattern requires a bed");
            }
            if (!(p.placement.table_height > 0.0)) malformed(p.id, "placement.table_height", "must be positive");
            if (!(p.placement.table_offset >= 0.0)) malformed(p.id, "placement.table_offset", "must be non-negative");
            check_spec_role(p, "ceiling");
            check_spec_role(p, "table");
            break;
    }
    if (!(p.target_lux.ambient >= 0.0)) malformed(p.id, "target_lux.ambient", "must be non-negative");
    if (p.target_lux.task && !(*p.target_lux.task >= 0.0)) malformed(p.id, "target_lux.task", "must be non-negative");
}

}  // namespace

const Anchor* RoomAnalysis::find(ObjectKind kind) const {
    for (const Anchor& a : anchors) {
        if (a.kind == kind) return &a;
    }
    return nullptr;
}

RoomAnalysis analyze_room(const ValidatedRoom& room) {
    RoomAnalysis analysis;
    analysis.function = room.model().function;
    analysis.walls = wall_segments(room);
    const auto& objects = room.model().objects;
    for (std::size_t i = 0; i < objects.size(); ++i) {
        const FurnitureObject& obj = objects[i];
        if (!is_anchor_kind(obj.kind)) continue;
        Anchor a;
        a.object_index = i;
        a.kind = obj.kind;
        a.center = obj.footprint.center();
        a.wall_distance = std::numeric_limits<double>::infinity();
        for (const WallSegment& w : analysis.walls) {
            const double d = rect_segment_distance(obj.footprint, w.start, w.end);
            if (d < a.wall_distance) {
                a.wall_distance = d;
                a.wall_index = w.index;
            }
        }
        a.adjacent = a.wall_distance <= kWallAdjacencyThreshold;
        analysis.anchors.push_back(a);
    }
    analysis.free_ceiling_centroid = ceiling_point(room);
    return analysis;
}

std::string_view to_string(PatternFamily f) {
    switch (f) {
        case PatternFamily::ceiling_central: return "ceiling_central";
        case PatternFamily::flank_object: return "flank_object";
        case PatternFamily::above_object: return "above_object";
        case PatternFamily::guideline_bedroom: return "guideline_bedroom";
    }
    return "unknown";
}

std::optional<PatternFamily> parse_pattern_family(std::string_view s) {
    for (const PatternFamily f : {PatternFamily::ceiling_central, PatternFamily::flank_object,
                                  PatternFamily::above_object, PatternFamily::guideline_bedroom}) {
        if (to_string(f) == s) return f;
    }
    return std::nullopt;
}

const DesignPattern* PatternLibrary::find(std::string_view id) const {
    for (const DesignPattern& p : patterns) {
        if (p.id == id) return &p;
    }
    return nullptr;
}

void check_library(const PatternLibrary& library) {
    if (library.patterns.empty()) {
        throw Error(ErrorCode::MalformedPattern, "field 'patterns': library must contain at least one pattern");
    }
    std::set<std::string> seen;
    for (const DesignPattern& p : library.patterns) {
        if (!seen.insert(p.id).second) {
            throw Error(ErrorCode::DuplicatePatternId, "pattern id '" + p.id + "' appears more than once");
        }
        check_pattern(p);
    }
}

PatternLibrary load_pattern_library(std::string_view document) {
    PatternLibrary library = codec::decode_library(codec::parse(document, ErrorCode::MalformedPattern));
    check_library(library);
    return library;
}

std::string dump_pattern_library(const PatternLibrary& library) {
    return codec::dump(codec::encode(library));
}

std::vector<DesignPattern> match_patterns(const RoomAnalysis& analysis, const PatternLibrary& library) {
    std::vector<DesignPattern> matched;
    for (const DesignPattern& p : library.patterns) {
        if (p.target_function != analysis.function) continue;
        const bool satisfied = std::all_of(p.preconditions.begin(), p.preconditions.end(),
                                           [&](ObjectKind k) { return analysis.find(k) != nullptr; });
        if (satisfied) matched.push_back(p);
    }
    if (matched.empty()) {
        throw Error(ErrorCode::NoApplicablePattern,
                    "no pattern in library '" + library.version + "' applies to a " +
                        std::string(to_string(analysis.function)) + " with the detected anchors");
    }
    return matched;
}

}  // namespace luxforge
