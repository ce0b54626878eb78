#include "luxforge/designer.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <numeric>
#include <set>

#include "luxforge/error.hpp"

namespace luxforge {

namespace {

Vec3 wall_axis(const WallSegment& wall, double tilt_degrees) {
    const double tilt = tilt_degrees * std::numbers::pi / 180.0;
    return {wall.inward_normal.x * std::cos(tilt), wall.inward_normal.y * std::cos(tilt), -std::sin(tilt)};
}

// Half of an axis-aligned footprint's extent projected onto a wall direction.
double half_width_along(const Rect& r, Vec2 dir) {
    return 0.5 * (std::abs(dir.x) * r.width() + std::abs(dir.y) * r.depth());
}

struct AnchorContext {
    const Anchor& anchor;
    const FurnitureObject& object;
    const WallSegment& wall;
};

AnchorContext require_anchor(const DesignPattern& pattern, const RoomAnalysis& analysis, const ValidatedRoom& room) {
    const ObjectKind kind = pattern.placement.anchor.value_or(ObjectKind::bed);
    const Anchor* a = analysis.find(kind);
    if (a == nullptr) {
        throw Error(ErrorCode::AnchorMissing,
                    "pattern '" + pattern.id + "' needs a " + std::string(to_string(kind)) + " in the room");
    }
    return {*a, room.model().objects.at(a->object_index), analysis.walls.at(static_cast<std::size_t>(a->wall_index))};
}

PlacedFixture make_fixture(const LuminaireSpec& spec, Vec3 position, Vec3 axis, std::string_view zone) {
    PlacedFixture f;
    f.spec = spec;
    f.position = position;
    f.axis = axis;
    f.zone = std::string(zone);
    f.dimmable = true;
    return f;
}

PlacedFixture ceiling_fixture(const DesignPattern& pattern, const RoomAnalysis& analysis, const ValidatedRoom& room) {
    const Vec2 c = analysis.free_ceiling_centroid;
    return make_fixture(pattern.specs.at("ceiling"), {c.x, c.y, room.ceiling_height()}, {0.0, 0.0, -1.0},
                        kAmbientZone);
}

std::vector<PlacedFixture> flank_fixtures(const DesignPattern& pattern, const RoomAnalysis& analysis,
                                          const ValidatedRoom& room) {
    const auto [anchor, object, wall] = require_anchor(pattern, analysis, room);
    const Vec2 dir = wall.direction();
    const double t_center = dot(anchor.center - wall.start, dir);
    const double reach = half_width_along(object.footprint, dir) + pattern.placement.flank_offset;
    const double t_low = std::clamp(t_center - reach, 0.0, wall.length);
    const double t_high = std::clamp(t_center + reach, 0.0, wall.length);
    if (std::abs(t_high - t_low) < 1e-12) {
        throw Error(ErrorCode::PlacementOutsideWall,
                    "pattern '" + pattern.id + "': both flanking positions collapse onto one point of wall " +
                        std::to_string(wall.index));
    }
    const Vec3 axis = wall_axis(wall, pattern.placement.tilt_degrees);
    const double z = pattern.placement.mount_height;
    const LuminaireSpec& spec = pattern.specs.at("wall");
    std::vector<PlacedFixture> out;
    for (const double t : {t_low, t_high}) {
        const Vec2 p = wall.start + dir * t;
        out.push_back(make_fixture(spec, {p.x, p.y, z}, axis, kTaskZone));
    }
    return out;
}

PlacedFixture above_fixture(const DesignPattern& pattern, const RoomAnalysis& analysis, const ValidatedRoom& room) {
    const auto [anchor, object, wall] = require_anchor(pattern, analysis, room);
    const Vec2 dir = wall.direction();
    const double t = std::clamp(dot(anchor.center - wall.start, dir), 0.0, wall.length);
    const Vec2 p = wall.start + dir * t;
    return make_fixture(pattern.specs.at("wall"), {p.x, p.y, pattern.placement.mount_height},
                        wall_axis(wall, pattern.placement.tilt_degrees), kTaskZone);
}

// Two table lamps beside the bed's head: the footprint corners nearest the
// anchor wall, pushed outward along the wall.
std::vector<PlacedFixture> table_fixtures(const DesignPattern& pattern, const RoomAnalysis& analysis,
                                          const ValidatedRoom& room) {
    const auto [anchor, object, wall] = require_anchor(pattern, analysis, room);
    const Rect& r = object.footprint;
    std::array<Vec2, 4> corners{r.min, Vec2{r.max.x, r.min.y}, r.max, Vec2{r.min.x, r.max.y}};
    const Vec2 dir = wall.direction();
    const Vec2 n = wall.inward_normal;
    // nearest to the wall first, then by along-wall coordinate
    std::stable_sort(corners.begin(), corners.end(), [&](Vec2 a, Vec2 b) {
        const double sa = dot(a - wall.start, n);
        const double sb = dot(b - wall.start, n);
        if (sa != sb) return sa < sb;
        return dot(a - wall.start, dir) < dot(b - wall.start, dir);
    });
    std::array<Vec2, 2> head{corners[0], corners[1]};
    if (dot(head[0] - wall.start, dir) > dot(head[1] - wall.start, dir)) std::swap(head[0], head[1]);

    const LuminaireSpec& spec = pattern.specs.at("table");
    const double offset = pattern.placement.table_offset;
    std::vector<PlacedFixture> out;
    for (int side = 0; side < 2; ++side) {
        const Vec2 c = head[static_cast<std::size_t>(side)];
        const double s = dot(c - wall.start, n);
        const double t0 = dot(c - wall.start, dir);
        const double t = std::clamp(side == 0 ? t0 - offset : t0 + offset, 0.0, wall.length);
        const Vec2 p = wall.start + dir * t + n * s;
        out.push_back(make_fixture(spec, {p.x, p.y, pattern.placement.table_height}, {0.0, 0.0, -1.0}, kTaskZone));
    }
    return out;
}

// Point where the fixture's axis meets the workplane, or its nadir when the
// axis never reaches it inside the room.
Vec2 aim_point(const PlacedFixture& f, const ValidatedRoom& room, double workplane_height) {
    if (f.axis.z < 0.0) {
        const double s = (f.position.z - workplane_height) / -f.axis.z;
        if (s >= 0.0) {
            const Vec3 hit = f.position + f.axis * s;
            if (point_in_room(room, hit.xy())) return hit.xy();
        }
    }
    return f.position.xy();
}

}  // namespace

std::map<std::string, std::vector<std::size_t>> LightingDesign::zones() const {
    std::map<std::string, std::vector<std::size_t>> out;
    for (std::size_t i = 0; i < fixtures.size(); ++i) out[fixtures[i].zone].push_back(i);
    return out;
}

void check_design(const LightingDesign& design, const ValidatedRoom& room) {
    if (design.dims.size() != design.fixtures.size()) {
        throw Error(ErrorCode::MalformedDesign, "design '" + design.id + "' has a dim list of the wrong length");
    }
    std::set<std::string> ids;
    for (std::size_t i = 0; i < design.fixtures.size(); ++i) {
        const PlacedFixture& f = design.fixtures[i];
        if (f.id.empty() || !ids.insert(f.id).second) {
            throw Error(ErrorCode::MalformedDesign, "design '" + design.id + "' fixture " + std::to_string(i) +
                                                        " has an empty or duplicate id");
        }
        if (f.zone.empty()) {
            throw Error(ErrorCode::MalformedDesign, "fixture '" + f.id + "' has no zone");
        }
        check_fixture(f, room);
        const double d = design.dims[i];
        if (!(d >= 0.0 && d <= 1.0)) {
            throw Error(ErrorCode::MalformedDesign, "fixture '" + f.id + "' dim level outside [0,1]");
        }
    }
}

LightingDesign instantiate_pattern(const DesignPattern& pattern, const RoomAnalysis& analysis,
                                   const ValidatedRoom& room) {
    LightingDesign design;
    design.pattern_id = pattern.id;
    design.room = room.model();
    switch (pattern.family) {
        case PatternFamily::ceiling_central:
            design.fixtures.push_back(ceiling_fixture(pattern, analysis, room));
            break;
        case PatternFamily::flank_object:
            design.fixtures = flank_fixtures(pattern, analysis, room);
            break;
        case PatternFamily::above_object:
            design.fixtures.push_back(above_fixture(pattern, analysis, room));
            break;
        case PatternFamily::guideline_bedroom: {
            design.fixtures.push_back(ceiling_fixture(pattern, analysis, room));
            auto tables = table_fixtures(pattern, analysis, room);
            design.fixtures.insert(design.fixtures.end(), tables.begin(), tables.end());
            break;
        }
    }
    for (std::size_t i = 0; i < design.fixtures.size(); ++i) {
        design.fixtures[i].id = "f" + std::to_string(i);
        check_fixture(design.fixtures[i], room);
    }
    design.dims.assign(design.fixtures.size(), 1.0);
    return design;
}

std::string design_id(std::uint64_t seed, std::string_view pattern_id) {
    return "s" + std::to_string(seed) + "-" + std::string(pattern_id);
}

std::vector<LightingDesign> generate_designs(const ValidatedRoom& room, const PatternLibrary& library,
                                             std::uint64_t seed, const std::string& room_ref) {
    const RoomAnalysis analysis = analyze_room(room);
    std::vector<LightingDesign> designs;
    for (const DesignPattern& p : match_patterns(analysis, library)) {
        LightingDesign d = instantiate_pattern(p, analysis, room);
        d.id = design_id(seed, p.id);
        d.room_ref = room_ref;
        designs.push_back(std::move(d));
    }
    return designs;
}

std::vector<std::size_t> task_points(const LightingDesign& design, const ValidatedRoom& room,
                                     const IlluminanceField& field) {
    std::vector<Vec2> aims;
    for (const PlacedFixture& f : design.fixtures) {
        if (f.zone == kTaskZone) aims.push_back(aim_point(f, room, field.workplane_height));
    }
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < field.points.size(); ++i) {
        const Vec2 p = field.points[i].xy();
        if (std::any_of(aims.begin(), aims.end(), [&](Vec2 a) { return norm(p - a) <= kTaskRadius; })) {
            out.push_back(i);
        }
    }
    return out;
}

DesignScore evaluate_design(const LightingDesign& design, const ValidatedRoom& room, const TargetLux& targets,
                            double spacing, double workplane_height) {
    const std::vector<double> full(design.fixtures.size(), 1.0);
    const IlluminanceField field = illuminance_field(design.fixtures, full, room, spacing, workplane_height);
    DesignScore s;
    s.average_lux = field.stats.average;
    s.min_lux = field.stats.min;
    s.max_lux = field.stats.max;
    s.uniformity = field.stats.uniformity;
    const auto task = task_points(design, room, field);
    if (!task.empty()) {
        double sum = 0.0;
        for (const std::size_t i : task) sum += field.lux[i];
        s.task_lux = sum / static_cast<double>(task.size());
    }
    s.meets_ambient = s.average_lux >= targets.ambient;
    s.meets_task = targets.task.has_value() && s.task_lux.has_value() && *s.task_lux >= *targets.task;
    s.scalar_score = (s.meets_ambient ? 1.0 : 0.0) + (s.meets_task ? 1.0 : 0.0) + s.uniformity;
    return s;
}

std::vector<std::size_t> rank_designs(std::span<const LightingDesign> designs, std::span<const DesignScore> scores) {
    if (designs.size() != scores.size()) {
        throw Error(ErrorCode::InvalidArgument, "rank_designs needs one score per design");
    }
    std::vector<std::size_t> order(designs.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (scores[a].scalar_score != scores[b].scalar_score) return scores[a].scalar_score > scores[b].scalar_score;
        return designs[a].pattern_id < designs[b].pattern_id;
    });
    return order;
}

RankedDesigns generate_ranked(const ValidatedRoom& room, const PatternLibrary& library, std::uint64_t seed,
                              const std::string& room_ref) {
    RankedDesigns out;
    out.designs = generate_designs(room, library, seed, room_ref);
    for (const LightingDesign& d : out.designs) {
        const DesignPattern* p = library.find(d.pattern_id);
        out.scores.push_back(evaluate_design(d, room, p ? p->target_lux : TargetLux{}));
    }
    out.order = rank_designs(out.designs, out.scores);
    return out;
}

}  // namespace luxforge
