#include "luxforge/geometry.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <sstream>
#include <utility>

#include "luxforge/error.hpp"

namespace luxforge {

namespace {

constexpr double kBoundaryTolerance = 1e-9;

constexpr std::array kRoomFunctionNames{
    std::pair{RoomFunction::bedroom, std::string_view{"bedroom"}},
    std::pair{RoomFunction::living_room, std::string_view{"living_room"}},
    std::pair{RoomFunction::bathroom, std::string_view{"bathroom"}},
    std::pair{RoomFunction::balcony, std::string_view{"balcony"}},
    std::pair{RoomFunction::closet, std::string_view{"closet"}},
    std::pair{RoomFunction::corridor, std::string_view{"corridor"}},
};

constexpr std::array kObjectKindNames{
    std::pair{ObjectKind::bed, std::string_view{"bed"}},
    std::pair{ObjectKind::tv, std::string_view{"tv"}},
    std::pair{ObjectKind::desk, std::string_view{"desk"}},
    std::pair{ObjectKind::dresser, std::string_view{"dresser"}},
    std::pair{ObjectKind::closet, std::string_view{"closet"}},
    std::pair{ObjectKind::nightstand, std::string_view{"nightstand"}},
    std::pair{ObjectKind::other, std::string_view{"other"}},
};

constexpr std::array kSurfaceKindNames{
    std::pair{SurfaceKind::floor, std::string_view{"floor"}},
    std::pair{SurfaceKind::ceiling, std::string_view{"ceiling"}},
    std::pair{SurfaceKind::wall, std::string_view{"wall"}},
};

template <typename Table, typename Enum>
std::string_view lookup_name(const Table& table, Enum value) {
    for (const auto& [e, name] : table) {
        if (e == value) return name;
    }
    return "unknown";
}

template <typename Enum, typename Table>
std::optional<Enum> lookup_value(const Table& table, std::string_view name) {
    for (const auto& [e, n] : table) {
        if (n == name) return e;
    }
    return std::nullopt;
}

int orientation(Vec2 a, Vec2 b, Vec2 c) {
    const double v = cross(b - a, c - a);
    if (v > 0.0) return 1;
    if (v < 0.0) return -1;
    return 0;
}

bool on_segment_bbox(Vec2 a, Vec2 b, Vec2 p) {
    return p.x >= std::min(a.x, b.x) && p.x <= std::max(a.x, b.x) && p.y >= std::min(a.y, b.y) &&
           p.y <= std::max(a.y, b.y);
}

// Closed segment intersection (touching counts).
bool segments_intersect(Vec2 p1, Vec2 p2, Vec2 q1, Vec2 q2) {
    const int o1 = orientation(p1, p2, q1);
    const int o2 = orientation(p1, p2, q2);
    const int o3 = orientation(q1, q2, p1);
    const int o4 = orientation(q1, q2, p2);
    if (o1 != o2 && o3 != o4) return true;
    if (o1 == 0 && on_segment_bbox(p1, p2, q1)) return true;
    if (o2 == 0 && on_segment_bbox(p1, p2, q2)) return true;
    if (o3 == 0 && on_segment_bbox(q1, q2, p1)) return true;
    if (o4 == 0 && on_segment_bbox(q1, q2, p2)) return true;
    return false;
}

bool on_boundary(std::span<const Vec2> polygon, Vec2 p) {
    const std::size_t n = polygon.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 a = polygon[i];
        const Vec2 b = polygon[(i + 1) % n];
        if (point_segment_distance(p, a, b) <= kBoundaryTolerance) return true;
    }
    return false;
}

// Interior test shared by the 2D and 3D clip routines: clip the parametric
// segment against each slab, then require a chord of positive length whose
// midpoint is strictly inside on every axis.
template <std::size_t N>
bool clip_crosses_interior(std::array<double, N> a, std::array<double, N> b, const std::array<double, N>& lo,
                           const std::array<double, N>& hi) {
    if (std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end())) std::swap(a, b);
    double t0 = 0.0;
    double t1 = 1.0;
    std::array<double, N> d{};
    for (std::size_t k = 0; k < N; ++k) {
        d[k] = b[k] - a[k];
        if (d[k] == 0.0) {
            if (!(a[k] > lo[k] && a[k] < hi[k])) return false;
            continue;
        }
        double ta = (lo[k] - a[k]) / d[k];
        double tb = (hi[k] - a[k]) / d[k];
        if (ta > tb) std::swap(ta, tb);
        t0 = std::max(t0, ta);
        t1 = std::min(t1, tb);
        if (t1 <= t0) return false;
    }
    const double tm = 0.5 * (t0 + t1);
    for (std::size_t k = 0; k < N; ++k) {
        const double m = a[k] + d[k] * tm;
        if (!(m > lo[k] && m < hi[k])) return false;
    }
    return true;
}

bool rect_inside_polygon(std::span<const Vec2> polygon, const Rect& r) {
    const std::array<Vec2, 4> corners{r.min, Vec2{r.max.x, r.min.y}, r.max, Vec2{r.min.x, r.max.y}};
    for (const Vec2 c : corners) {
        if (!point_in_polygon(polygon, c)) return false;
    }
    const std::size_t n = polygon.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 a = polygon[i];
        const Vec2 b = polygon[(i + 1) % n];
        if (clip_crosses_interior<2>({a.x, a.y}, {b.x, b.y}, {r.min.x, r.min.y}, {r.max.x, r.max.y})) return false;
        // reflex vertex strictly inside the footprint
        if (a.x > r.min.x && a.x < r.max.x && a.y > r.min.y && a.y < r.max.y) return false;
    }
    return true;
}

std::string describe_object(std::size_t index, const FurnitureObject& obj) {
    std::ostringstream os;
    os << "object " << index << " (" << to_string(obj.kind) << ")";
    return os.str();
}

std::vector<Surface> default_surfaces(std::size_t wall_count) {
    std::vector<Surface> s;
    s.push_back({SurfaceKind::floor, -1, kDefaultFloorReflectance});
    s.push_back({SurfaceKind::ceiling, -1, kDefaultCeilingReflectance});
    for (std::size_t i = 0; i < wall_count; ++i) {
        s.push_back({SurfaceKind::wall, static_cast<int>(i), kDefaultWallReflectance});
    }
    return s;
}

void check_surfaces(const std::vector<Surface>& surfaces, std::size_t wall_count) {
    int floors = 0;
    int ceilings = 0;
    std::vector<int> wall_hits(wall_count, 0);
    for (std::size_t i = 0; i < surfaces.size(); ++i) {
        const Surface& s = surfaces[i];
        if (!(s.reflectance >= 0.0 && s.reflectance <= 1.0)) {
            throw Error(ErrorCode::InvalidSurfaces,
                        "surface " + std::to_string(i) + " reflectance outside [0,1]");
        }
        switch (s.kind) {
            case SurfaceKind::floor: ++floors; break;
            case SurfaceKind::ceiling: ++ceilings; break;
            case SurfaceKind::wall:
                if (s.wall_index < 0 || static_cast<std::size_t>(s.wall_index) >= wall_count) {
                    throw Error(ErrorCode::InvalidSurfaces,
                                "surface " + std::to_string(i) + " references wall " +
                                    std::to_string(s.wall_index) + " which does not exist");
                }
                ++wall_hits[static_cast<std::size_t>(s.wall_index)];
                break;
        }
    }
    if (floors != 1) throw Error(ErrorCode::InvalidSurfaces, "expected exactly one floor surface");
    if (ceilings != 1) throw Error(ErrorCode::InvalidSurfaces, "expected exactly one ceiling surface");
    for (std::size_t w = 0; w < wall_count; ++w) {
        if (wall_hits[w] != 1) {
            throw Error(ErrorCode::InvalidSurfaces, "expected exactly one surface for wall " + std::to_string(w));
        }
    }
}

}  // namespace

std::string_view to_string(RoomFunction f) { return lookup_name(kRoomFunctionNames, f); }
std::string_view to_string(SurfaceKind k) { return lookup_name(kSurfaceKindNames, k); }
std::string_view to_string(ObjectKind k) { return lookup_name(kObjectKindNames, k); }

std::optional<RoomFunction> parse_room_function(std::string_view s) {
    return lookup_value<RoomFunction>(kRoomFunctionNames, s);
}
std::optional<SurfaceKind> parse_surface_kind(std::string_view s) {
    return lookup_value<SurfaceKind>(kSurfaceKindNames, s);
}
std::optional<ObjectKind> parse_object_kind(std::string_view s) {
    return lookup_value<ObjectKind>(kObjectKindNames, s);
}

double ValidatedRoom::reflectance(SurfaceKind kind, int wall_index) const {
    for (const Surface& s : model_.surfaces) {
        if (s.kind != kind) continue;
        if (kind == SurfaceKind::wall && s.wall_index != wall_index) continue;
        return s.reflectance;
    }
    return 0.0;
}

double signed_area(std::span<const Vec2> polygon) {
    double twice = 0.0;
    const std::size_t n = polygon.size();
    for (std::size_t i = 0; i < n; ++i) {
        twice += cross(polygon[i], polygon[(i + 1) % n]);
    }
    return 0.5 * twice;
}

Vec2 polygon_centroid(std::span<const Vec2> polygon) {
    const std::size_t n = polygon.size();
    double twice_area = 0.0;
    double cx = 0.0;
    double cy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 a = polygon[i];
        const Vec2 b = polygon[(i + 1) % n];
        const double c = cross(a, b);
        twice_area += c;
        cx += (a.x + b.x) * c;
        cy += (a.y + b.y) * c;
    }
    return {cx / (3.0 * twice_area), cy / (3.0 * twice_area)};
}

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
    const Vec2 ab = b - a;
    const double len2 = dot(ab, ab);
    if (len2 == 0.0) return norm(p - a);
    const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
    return norm(p - (a + ab * t));
}

double rect_segment_distance(const Rect& r, Vec2 a, Vec2 b) {
    if (r.contains(a) || r.contains(b)) return 0.0;
    const std::array<Vec2, 4> c{r.min, Vec2{r.max.x, r.min.y}, r.max, Vec2{r.min.x, r.max.y}};
    for (std::size_t i = 0; i < 4; ++i) {
        if (segments_intersect(a, b, c[i], c[(i + 1) % 4])) return 0.0;
    }
    double best = std::numeric_limits<double>::infinity();
    for (const Vec2 corner : c) best = std::min(best, point_segment_distance(corner, a, b));
    for (const Vec2 p : {a, b}) {
        const double dx = std::max({r.min.x - p.x, 0.0, p.x - r.max.x});
        const double dy = std::max({r.min.y - p.y, 0.0, p.y - r.max.y});
        best = std::min(best, std::hypot(dx, dy));
    }
    return best;
}

bool point_in_polygon(std::span<const Vec2> polygon, Vec2 p) {
    if (on_boundary(polygon, p)) return true;
    bool inside = false;
    const std::size_t n = polygon.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const Vec2 a = polygon[i];
        const Vec2 b = polygon[j];
        if ((a.y > p.y) != (b.y > p.y)) {
            const double x_cross = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
            if (p.x < x_cross) inside = !inside;
        }
    }
    return inside;
}

ValidatedRoom validate_room(RoomModel room) {
    const auto& outline = room.outline;
    const std::size_t n = outline.size();
    if (n < 3) {
        throw Error(ErrorCode::DegenerateOutline,
                    "outline has " + std::to_string(n) + " vertices, at least 3 required");
    }
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 v = outline[i];
        if (!std::isfinite(v.x) || !std::isfinite(v.y)) {
            throw Error(ErrorCode::DegenerateOutline, "vertex " + std::to_string(i) + " is not finite");
        }
        if (v == outline[(i + 1) % n]) {
            throw Error(ErrorCode::DegenerateOutline, "edge " + std::to_string(i) + " has zero length");
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 a1 = outline[i];
        const Vec2 a2 = outline[(i + 1) % n];
        for (std::size_t j = i + 1; j < n; ++j) {
            const Vec2 b1 = outline[j];
            const Vec2 b2 = outline[(j + 1) % n];
            const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
            bool bad = false;
            if (adjacent) {
                // Adjacent edges share one vertex; they must not fold back onto each other.
                const Vec2 da = a2 - a1;
                const Vec2 db = b2 - b1;
                bad = cross(da, db) == 0.0 && dot(da, db) < 0.0;
            } else {
                bad = segments_intersect(a1, a2, b1, b2);
            }
            if (bad) {
                throw Error(ErrorCode::SelfIntersectingOutline,
                            "edges " + std::to_string(i) + " and " + std::to_string(j) + " intersect");
            }
        }
    }
    const double area = signed_area(outline);
    if (std::abs(area) <= 1e-12) throw Error(ErrorCode::DegenerateOutline, "outline has zero area");
    if (area < 0.0) throw Error(ErrorCode::ClockwiseOutline, "outline vertices must be counter-clockwise");

    if (!(room.ceiling_height > 0.0) || !std::isfinite(room.ceiling_height)) {
        throw Error(ErrorCode::NonPositiveHeight, "ceiling_height must be positive");
    }

    if (room.surfaces.empty()) {
        room.surfaces = default_surfaces(n);
    } else {
        check_surfaces(room.surfaces, n);
    }

    for (std::size_t i = 0; i < room.objects.size(); ++i) {
        const FurnitureObject& obj = room.objects[i];
        if (!(obj.footprint.width() > 0.0) || !(obj.footprint.depth() > 0.0)) {
            throw Error(ErrorCode::InvalidObject, describe_object(i, obj) + " footprint has no area");
        }
        if (obj.facing.x == 0.0 && obj.facing.y == 0.0) {
            throw Error(ErrorCode::InvalidObject, describe_object(i, obj) + " facing is the zero vector");
        }
        if (!(obj.height > 0.0)) {
            throw Error(ErrorCode::NonPositiveHeight, describe_object(i, obj) + " height must be positive");
        }
        if (obj.height > room.ceiling_height) {
            throw Error(ErrorCode::ObjectTooTall, describe_object(i, obj) + " is taller than the ceiling");
        }
        if (!rect_inside_polygon(outline, obj.footprint)) {
            throw Error(ErrorCode::ObjectOutsideRoom, describe_object(i, obj) + " footprint leaves the outline");
        }
    }

    ValidatedRoom v;
    v.area_ = area;
    v.bounds_ = Rect{outline.front(), outline.front()};
    double perimeter = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 a = outline[i];
        const Vec2 b = outline[(i + 1) % n];
        const Vec2 d = b - a;
        const double len = norm(d);
        perimeter += len;
        v.walls_.push_back(WallSegment{static_cast<int>(i), a, b, Vec2{-d.y / len, d.x / len}, len});
        v.bounds_.min = {std::min(v.bounds_.min.x, a.x), std::min(v.bounds_.min.y, a.y)};
        v.bounds_.max = {std::max(v.bounds_.max.x, a.x), std::max(v.bounds_.max.y, a.y)};
    }
    v.perimeter_ = perimeter;
    v.model_ = std::move(room);
    return v;
}

bool point_in_room(const ValidatedRoom& room, Vec2 p) { return point_in_polygon(room.model().outline, p); }

bool inside_room_volume(const ValidatedRoom& room, Vec3 p) {
    return p.z >= -kBoundaryTolerance && p.z <= room.ceiling_height() + kBoundaryTolerance &&
           point_in_room(room, p.xy());
}

std::vector<Vec3> workplane_grid(const ValidatedRoom& room, double spacing, double workplane_height) {
    if (!(spacing > 0.0) || !std::isfinite(spacing)) {
        throw Error(ErrorCode::InvalidArgument, "grid spacing must be positive");
    }
    if (!(workplane_height >= 0.0) || !(workplane_height < room.ceiling_height())) {
        throw Error(ErrorCode::InvalidArgument, "workplane height must lie in [0, ceiling_height)");
    }
    const Rect& b = room.bounds();
    const GridShape shape = grid_shape(room, spacing);
    if (static_cast<double>(shape.columns) * static_cast<double>(shape.rows) > 2e7) {
        throw Error(ErrorCode::InvalidArgument, "grid spacing too fine for this room");
    }

    std::vector<Vec3> points;
    for (std::size_t j = 0; j < shape.rows; ++j) {
        const double y = b.min.y + (static_cast<double>(j) + 0.5) * spacing;
        for (std::size_t i = 0; i < shape.columns; ++i) {
            const double x = b.min.x + (static_cast<double>(i) + 0.5) * spacing;
            const Vec2 p{x, y};
            if (!point_in_room(room, p)) continue;
            const bool masked = std::any_of(room.model().objects.begin(), room.model().objects.end(),
                                            [&](const FurnitureObject& o) {
                                                return o.height >= workplane_height && o.footprint.contains(p);
                                            });
            if (masked) continue;
            points.push_back({x, y, workplane_height});
        }
    }
    if (points.empty()) {
        throw Error(ErrorCode::EmptyGrid, "no workplane sample survives at spacing " + std::to_string(spacing));
    }
    return points;
}

GridShape grid_shape(const ValidatedRoom& room, double spacing) {
    const Rect& b = room.bounds();
    const double cols = std::ceil(b.width() / spacing - 1e-9);
    const double rows = std::ceil(b.depth() / spacing - 1e-9);
    if (!(cols * rows <= 1e9)) throw Error(ErrorCode::InvalidArgument, "grid spacing too fine for this room");
    return {static_cast<std::size_t>(std::max(cols, 1.0)), static_cast<std::size_t>(std::max(rows, 1.0))};
}

std::vector<WallSegment> wall_segments(const ValidatedRoom& room) {
    return {room.walls().begin(), room.walls().end()};
}

bool segment_crosses_box_interior(Vec3 from, Vec3 to, Vec3 box_min, Vec3 box_max) {
    return clip_crosses_interior<3>({from.x, from.y, from.z}, {to.x, to.y, to.z}, {box_min.x, box_min.y, box_min.z},
                                    {box_max.x, box_max.y, box_max.z});
}

bool occludes(const ValidatedRoom& room, Vec3 from, Vec3 to) {
    for (const FurnitureObject& o : room.model().objects) {
        const Vec3 lo{o.footprint.min.x, o.footprint.min.y, 0.0};
        const Vec3 hi{o.footprint.max.x, o.footprint.max.y, o.height};
        if (segment_crosses_box_interior(from, to, lo, hi)) return true;
    }
    return false;
}

}  // namespace luxforge
