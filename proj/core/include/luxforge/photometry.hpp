#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "luxforge/geometry.hpp"

namespace luxforge {

enum class MountKind { ceiling, wall, table };

std::string_view to_string(MountKind m);
std::optional<MountKind> parse_mount_kind(std::string_view s);

/// Point-source luminaire with an axially symmetric I0 * cos^m(theta) distribution.
struct LuminaireSpec {
    std::string name;
    double flux = 0.0;                   ///< lumens
    double distribution_exponent = 1.0;  ///< m; 1 is Lambertian
    double power = 0.0;                  ///< watts at full output
    MountKind mount = MountKind::ceiling;

    friend bool operator==(const LuminaireSpec&, const LuminaireSpec&) = default;
};

/// Throws InvalidLuminaire when flux, exponent or power is out of range.
void check_luminaire(const LuminaireSpec& spec);

struct PlacedFixture {
    std::string id;
    LuminaireSpec spec;
    Vec3 position;
    Vec3 axis{0.0, 0.0, -1.0};
    std::string zone;
    bool dimmable = true;

    friend bool operator==(const PlacedFixture&, const PlacedFixture&) = default;
};

/// Throws FixtureOutsideRoom / InvalidLuminaire when the fixture is not legal in `room`.
void check_fixture(const PlacedFixture& fixture, const ValidatedRoom& room);

struct FieldStats {
    double average = 0.0;
    double min = 0.0;
    double max = 0.0;
    double uniformity = 0.0;  ///< min / average, 0 when the average is 0

    friend bool operator==(const FieldStats&, const FieldStats&) = default;
};

struct IlluminanceField {
    double spacing = 0.0;
    double workplane_height = 0.0;
    Vec2 origin;  ///< grid anchor (bounding-box minimum)
    GridShape shape;
    std::vector<Vec3> points;
    std::vector<double> lux;
    FieldStats stats;
};

/// I0 = flux * (m + 1) / (2 pi), so the hemisphere integral of I0 cos^m equals the flux.
double peak_intensity(const LuminaireSpec& spec);

/// Intensity toward a direction making angle acos(cos_theta) with the axis; 0 behind the fixture.
double intensity(const LuminaireSpec& spec, double cos_theta);

/// Direct illuminance on a horizontal (upward facing) receiver at `p`.
/// `dims` scales each fixture's output and must match `fixtures` in length.
/// Throws CoincidentPoint when `p` coincides with a fixture position.
double direct_illuminance(std::span<const PlacedFixture> fixtures, std::span<const double> dims,
                          const ValidatedRoom& room, Vec3 p);

/// Area-weighted mean reflectance over floor, ceiling and walls.
double mean_reflectance(const ValidatedRoom& room);

/// Total interior surface area: floor + ceiling + walls.
double interior_surface_area(const ValidatedRoom& room);

/// Uniform single-bounce interreflection term: flux * rho / (area * (1 - rho)).
/// Throws ReflectanceSaturated when rho >= 1 - 1e-9.
double ambient_illuminance(double emitted_flux, double mean_rho, double total_area);

/// Ambient term for a set of fixtures in `room`.
double ambient_component(std::span<const PlacedFixture> fixtures, std::span<const double> dims,
                         const ValidatedRoom& room);

FieldStats field_stats(std::span<const double> lux);

/// Direct plus ambient illuminance on the workplane grid.
IlluminanceField illuminance_field(std::span<const PlacedFixture> fixtures, std::span<const double> dims,
                                   const ValidatedRoom& room, double spacing = kDefaultGridSpacing,
                                   double workplane_height = kDefaultWorkplaneHeight);

}  // namespace luxforge
