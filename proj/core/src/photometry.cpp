#include "luxforge/photometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "luxforge/error.hpp"

namespace luxforge {

std::string_view to_string(MountKind m) {
    switch (m) {
        case MountKind::ceiling: return "ceiling";
        case MountKind::wall: return "wall";
        case MountKind::table: return "table";
    }
    return "unknown";
}

std::optional<MountKind> parse_mount_kind(std::string_view s) {
    if (s == "ceiling") return MountKind::ceiling;
    if (s == "wall") return MountKind::wall;
    if (s == "table") return MountKind::table;
    return std::nullopt;
}

void check_luminaire(const LuminaireSpec& spec) {
    if (!(spec.flux > 0.0) || !std::isfinite(spec.flux)) {
        throw Error(ErrorCode::InvalidLuminaire, "luminaire '" + spec.name + "' flux must be positive");
    }
    if (!(spec.distribution_exponent >= 0.0) || !std::isfinite(spec.distribution_exponent)) {
        throw Error(ErrorCode::InvalidLuminaire,
                    "luminaire '" + spec.name + "' distribution exponent must be non-negative");
    }
    if (!(spec.power > 0.0) || !std::isfinite(spec.power)) {
        throw Error(ErrorCode::InvalidLuminaire, "luminaire '" + spec.name + "' power must be positive");
    }
}

void check_fixture(const PlacedFixture& fixture, const ValidatedRoom& room) {
    check_luminaire(fixture.spec);
    if (std::abs(norm(fixture.axis) - 1.0) > 1e-9) {
        throw Error(ErrorCode::MalformedDesign, "fixture '" + fixture.id + "' axis is not a unit vector");
    }
    if (!inside_room_volume(room, fixture.position)) {
        throw Error(ErrorCode::FixtureOutsideRoom, "fixture '" + fixture.id + "' lies outside the room");
    }
}

double peak_intensity(const LuminaireSpec& spec) {
    return spec.flux * (spec.distribution_exponent + 1.0) / (2.0 * std::numbers::pi);
}

double intensity(const LuminaireSpec& spec, double cos_theta) {
    if (cos_theta < 0.0) return 0.0;
    return peak_intensity(spec) * std::pow(cos_theta, spec.distribution_exponent);
}

double direct_illuminance(std::span<const PlacedFixture> fixtures, std::span<const double> dims,
                          const ValidatedRoom& room, Vec3 p) {
    if (fixtures.size() != dims.size()) {
        throw Error(ErrorCode::InvalidArgument, "dim list length does not match the fixture list");
    }
    double total = 0.0;
    for (std::size_t f = 0; f < fixtures.size(); ++f) {
        const PlacedFixture& fx = fixtures[f];
        const Vec3 to_point = p - fx.position;
        const double d = norm(to_point);
        if (d == 0.0) {
            throw Error(ErrorCode::CoincidentPoint, "sample point coincides with fixture '" + fx.id + "'");
        }
        if (dims[f] == 0.0) continue;
        const double cos_theta = dot(fx.axis, to_point) / d;
        // receiver normal is +z; p->fixture is -to_point
        const double cos_xi = -to_point.z / d;
        if (cos_theta <= 0.0 || cos_xi <= 0.0) continue;
        if (occludes(room, fx.position, p)) continue;
        total += dims[f] * intensity(fx.spec, cos_theta) * cos_xi / (d * d);
    }
    return total;
}

double interior_surface_area(const ValidatedRoom& room) {
    double walls = 0.0;
    for (const WallSegment& w : room.walls()) walls += w.length * room.ceiling_height();
    return 2.0 * room.area() + walls;
}

double mean_reflectance(const ValidatedRoom& room) {
    double weighted = room.area() * room.reflectance(SurfaceKind::floor) +
                      room.area() * room.reflectance(SurfaceKind::ceiling);
    for (const WallSegment& w : room.walls()) {
        weighted += w.length * room.ceiling_height() * room.reflectance(SurfaceKind::wall, w.index);
    }
    return weighted / interior_surface_area(room);
}

double ambient_illuminance(double emitted_flux, double mean_rho, double total_area) {
    if (mean_rho >= 1.0 - 1e-9) {
        throw Error(ErrorCode::ReflectanceSaturated, "mean reflectance is too close to 1");
    }
    return emitted_flux * mean_rho / (total_area * (1.0 - mean_rho));
}

double ambient_component(std::span<const PlacedFixture> fixtures, std::span<const double> dims,
                         const ValidatedRoom& room) {
    if (fixtures.size() != dims.size()) {
        throw Error(ErrorCode::InvalidArgument, "dim list length does not match the fixture list");
    }
    double flux = 0.0;
    for (std::size_t f = 0; f < fixtures.size(); ++f) flux += dims[f] * fixtures[f].spec.flux;
    return ambient_illuminance(flux, mean_reflectance(room), interior_surface_area(room));
}

FieldStats field_stats(std::span<const double> lux) {
    FieldStats s;
    if (lux.empty()) return s;
    double sum = 0.0;
    s.min = lux.front();
    s.max = lux.front();
    for (const double v : lux) {
        sum += v;
        s.min = std::min(s.min, v);
        s.max = std::max(s.max, v);
    }
    s.average = sum / static_cast<double>(lux.size());
    // the running sum can round the mean slightly outside [min, max]
    s.average = std::clamp(s.average, s.min, s.max);
    s.uniformity = s.average > 0.0 ? std::clamp(s.min / s.average, 0.0, 1.0) : 0.0;
    return s;
}

IlluminanceField illuminance_field(std::span<const PlacedFixture> fixtures, std::span<const double> dims,
                                   const ValidatedRoom& room, double spacing, double workplane_height) {
    IlluminanceField field;
    field.spacing = spacing;
    field.workplane_height = workplane_height;
    field.origin = room.bounds().min;
    field.points = workplane_grid(room, spacing, workplane_height);
    field.shape = grid_shape(room, spacing);
    const double ambient = ambient_component(fixtures, dims, room);
    field.lux.reserve(field.points.size());
    for (const Vec3& p : field.points) {
        field.lux.push_back(direct_illuminance(fixtures, dims, room, p) + ambient);
    }
    field.stats = field_stats(field.lux);
    return field;
}

}  // namespace luxforge
