#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace luxforge {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
    friend Vec2 operator*(Vec2 a, double s) { return {a.x * s, a.y * s}; }
    friend Vec2 operator*(double s, Vec2 a) { return {a.x * s, a.y * s}; }
    friend bool operator==(const Vec2&, const Vec2&) = default;
};

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    Vec2 xy() const { return {x, y}; }

    friend Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
    friend Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
    friend Vec3 operator*(Vec3 a, double s) { return {a.x * s, a.y * s, a.z * s}; }
    friend Vec3 operator*(double s, Vec3 a) { return {a.x * s, a.y * s, a.z * s}; }
    friend bool operator==(const Vec3&, const Vec3&) = default;
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline double norm(Vec3 a) { return std::sqrt(dot(a, a)); }

enum class RoomFunction { bedroom, living_room, bathroom, balcony, closet, corridor };
enum class SurfaceKind { floor, ceiling, wall };
enum class ObjectKind { bed, tv, desk, dresser, closet, nightstand, other };

std::string_view to_string(RoomFunction f);
std::string_view to_string(SurfaceKind k);
std::string_view to_string(ObjectKind k);
std::optional<RoomFunction> parse_room_function(std::string_view s);
std::optional<SurfaceKind> parse_surface_kind(std::string_view s);
std::optional<ObjectKind> parse_object_kind(std::string_view s);

struct Surface {
    SurfaceKind kind = SurfaceKind::floor;
    int wall_index = -1;  ///< outline edge index for walls, -1 otherwise
    double reflectance = 0.0;

    friend bool operator==(const Surface&, const Surface&) = default;
};

/// Axis-aligned rectangle in plan.
struct Rect {
    Vec2 min;
    Vec2 max;

    double width() const { return max.x - min.x; }
    double depth() const { return max.y - min.y; }
    Vec2 center() const { return {(min.x + max.x) / 2.0, (min.y + max.y) / 2.0}; }
    bool contains(Vec2 p) const { return p.x >= min.x && p.x <= max.x && p.y >= min.y && p.y <= max.y; }

    friend bool operator==(const Rect&, const Rect&) = default;
};

struct FurnitureObject {
    ObjectKind kind = ObjectKind::other;
    Rect footprint;
    double height = 0.0;
    Vec2 facing{0.0, 1.0};

    friend bool operator==(const FurnitureObject&, const FurnitureObject&) = default;
};

struct RoomModel {
    std::vector<Vec2> outline;  ///< counter-clockwise, meters
    double ceiling_height = 0.0;
    std::vector<Surface> surfaces;
    std::vector<FurnitureObject> objects;
    RoomFunction function = RoomFunction::bedroom;

    friend bool operator==(const RoomModel&, const RoomModel&) = default;
};

struct WallSegment {
    int index = 0;
    Vec2 start;
    Vec2 end;
    Vec2 inward_normal;
    double length = 0.0;

    Vec2 direction() const { return (end - start) * (1.0 / length); }
    /// Point at along-wall coordinate `t` (meters from `start`).
    Vec2 at(double t) const { return start + direction() * t; }

    friend bool operator==(const WallSegment&, const WallSegment&) = default;
};

/// Reflectances used when a room document carries no surface list.
inline constexpr double kDefaultFloorReflectance = 0.2;
inline constexpr double kDefaultCeilingReflectance = 0.7;
inline constexpr double kDefaultWallReflectance = 0.5;

inline constexpr double kDefaultGridSpacing = 0.25;
inline constexpr double kDefaultWorkplaneHeight = 0.8;

/// A room whose invariants have been checked, together with derived data.
/// Only `validate_room` constructs one.
class ValidatedRoom {
public:
    const RoomModel& model() const { return model_; }
    std::span<const WallSegment> walls() const { return walls_; }
    double area() const { return area_; }
    double perimeter() const { return perimeter_; }
    double ceiling_height() const { return model_.ceiling_height; }
    const Rect& bounds() const { return bounds_; }

    /// Reflectance of the floor, ceiling, or the given wall.
    double reflectance(SurfaceKind kind, int wall_index = -1) const;

    friend bool operator==(const ValidatedRoom&, const ValidatedRoom&) = default;

private:
    friend ValidatedRoom validate_room(RoomModel room);
    ValidatedRoom() = default;

    RoomModel model_;
    std::vector<WallSegment> walls_;
    double area_ = 0.0;
    double perimeter_ = 0.0;
    Rect bounds_;
};

/// Checks every RoomModel invariant and derives wall segments and area.
/// An empty surface list is filled with the default reflectances.
/// Throws Error naming the offending vertex, edge, or object.
ValidatedRoom validate_room(RoomModel room);

/// Closed containment: boundary points count as inside.
bool point_in_room(const ValidatedRoom& room, Vec2 p);

/// Closed containment for an arbitrary simple polygon.
bool point_in_polygon(std::span<const Vec2> polygon, Vec2 p);

/// Signed shoelace area (positive for counter-clockwise).
double signed_area(std::span<const Vec2> polygon);

/// Cell-centre samples of a square grid anchored at the outline's bounding-box
/// minimum, in row-major order (ascending y, then x). Points outside the outline
/// or over objects at least `workplane_height` tall are dropped.
std::vector<Vec3> workplane_grid(const ValidatedRoom& room, double spacing,
                                 double workplane_height = kDefaultWorkplaneHeight);

struct GridShape {
    std::size_t columns = 0;
    std::size_t rows = 0;
};

/// Columns and rows of the sampling grid covering the outline's bounding box.
GridShape grid_shape(const ValidatedRoom& room, double spacing);

std::vector<WallSegment> wall_segments(const ValidatedRoom& room);

/// True iff the open segment (from, to) passes through the interior of any
/// furniture box. Grazing a face, edge, or touching at an endpoint does not count.
bool occludes(const ValidatedRoom& room, Vec3 from, Vec3 to);

/// Segment-vs-box test backing `occludes`; exposed for the photometry oracle tests.
bool segment_crosses_box_interior(Vec3 from, Vec3 to, Vec3 box_min, Vec3 box_max);

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b);

/// Minimum distance between a rectangle (closed) and a segment; 0 when they touch.
double rect_segment_distance(const Rect& r, Vec2 a, Vec2 b);

/// Area centroid of a simple polygon.
Vec2 polygon_centroid(std::span<const Vec2> polygon);

/// True when the 3D point lies in the room volume (closed in plan and height).
bool inside_room_volume(const ValidatedRoom& room, Vec3 p);

}  // namespace luxforge
