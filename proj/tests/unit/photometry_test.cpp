#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "luxforge/error.hpp"
#include "luxforge/photometry.hpp"
#include "oracle.hpp"
#include "scenarios.hpp"

using namespace luxforge;

namespace {

LuminaireSpec spec(double flux, double m) { return {"test", flux, m, 10.0, MountKind::ceiling}; }

RoomModel black_room() {
    RoomModel r = scenarios::rect_room();
    r.surfaces = {{SurfaceKind::floor, -1, 0}, {SurfaceKind::ceiling, -1, 0}, {SurfaceKind::wall, 0, 0},
                  {SurfaceKind::wall, 1, 0},   {SurfaceKind::wall, 2, 0},    {SurfaceKind::wall, 3, 0}};
    return r;
}

FurnitureObject box(Vec2 min, Vec2 max, double h) {
    FurnitureObject o;
    o.kind = ObjectKind::closet;
    o.footprint = {min, max};
    o.height = h;
    return o;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

}  // namespace

TEST(PeakIntensity, Examples) {
    EXPECT_NEAR(peak_intensity(spec(1000, 1)), 1000 / std::numbers::pi, 1e-12);
    EXPECT_NEAR(peak_intensity(spec(1000, 1)), 318.3099, 1e-4);
    EXPECT_NEAR(peak_intensity(spec(2 * std::numbers::pi, 0)), 1.0, 1e-15);
    EXPECT_NEAR(peak_intensity(spec(1000, 3)), 636.6198, 1e-4);
}

TEST(PeakIntensity, HemisphereIntegralRecoversFlux) {
    for (const double m : {0.0, 1.0, 3.0}) {
        const double flux = 1000.0;
        const double integral = oracle::hemisphere_flux(peak_intensity(spec(flux, m)), m, 2000, 64);
        EXPECT_LT(std::abs(integral - flux) / flux, 1e-3) << "m=" << m;
    }
}

TEST(Intensity, ZeroBehindTheFixture) {
    EXPECT_EQ(intensity(spec(1000, 1), -0.2), 0.0);
    EXPECT_DOUBLE_EQ(intensity(spec(1000, 2), 0.5), peak_intensity(spec(1000, 2)) * 0.25);
}

TEST(CheckLuminaire, RejectsBadSpecs) {
    EXPECT_THROW(check_luminaire(spec(0, 1)), Error);
    EXPECT_THROW(check_luminaire(spec(100, -1)), Error);
    EXPECT_THROW(check_luminaire({"x", 100, 1, 0, MountKind::wall}), Error);
    EXPECT_NO_THROW(check_luminaire(spec(100, 0)));
}

TEST(DirectIlluminance, LambertianExample) {
    const ValidatedRoom room = validate_room(scenarios::rect_room());
    const std::vector<PlacedFixture> f{scenarios::ceiling_fixture("f", {2, 2, 2.5}, 1000, 10)};
    const double e = direct_illuminance(f, std::vector<double>{1.0}, room, {2, 2, 0.8});
    EXPECT_NEAR(e, (1000 / std::numbers::pi) / (1.7 * 1.7), 1e-12);
    EXPECT_NEAR(e, 110.1419, 1e-4);
}

TEST(DirectIlluminance, OccludedIsZero) {
    RoomModel r = scenarios::rect_room();
    r.objects.push_back(box({1.5, 1.5}, {2.5, 2.5}, 2.0));
    const ValidatedRoom room = validate_room(r);
    const std::vector<PlacedFixture> f{scenarios::ceiling_fixture("f", {2, 2, 2.5}, 1000, 10)};
    EXPECT_EQ(direct_illuminance(f, std::vector<double>{1.0}, room, {2, 2, 0.8}), 0.0);
}

TEST(DirectIlluminance, ZeroDimsGiveZero) {
    const ValidatedRoom room = validate_room(scenarios::rect_room());
    const std::vector<PlacedFixture> f{scenarios::ceiling_fixture("a", {1, 1, 2.5}, 1000, 10),
                                       scenarios::ceiling_fixture("b", {3, 2, 2.5}, 800, 10)};
    for (const Vec3& p : workplane_grid(room, 0.5, 0.8)) {
        EXPECT_EQ(direct_illuminance(f, std::vector<double>{0.0, 0.0}, room, p), 0.0);
    }
}

TEST(DirectIlluminance, BackFacingReceiverAndCoincidentPoint) {
    const ValidatedRoom room = validate_room(scenarios::rect_room());
    const std::vector<PlacedFixture> f{scenarios::ceiling_fixture("f", {2, 2, 0.5}, 1000, 10)};
    // fixture below the receiver: xi > 90 degrees
    EXPECT_EQ(direct_illuminance(f, std::vector<double>{1.0}, room, {2, 2, 0.8}), 0.0);
    try {
        direct_illuminance(f, std::vector<double>{1.0}, room, {2, 2, 0.5});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::CoincidentPoint);
    }
    EXPECT_THROW(direct_illuminance(f, std::vector<double>{}, room, {1, 1, 0.8}), Error);
}

TEST(Ambient, Examples) {
    EXPECT_DOUBLE_EQ(ambient_illuminance(1000, 0.5, 50), 20.0);
    const ValidatedRoom black = validate_room(black_room());
    const std::vector<PlacedFixture> f{scenarios::ceiling_fixture("f", {2, 1.5, 2.5}, 1000, 10)};
    EXPECT_EQ(ambient_component(f, std::vector<double>{1.0}, black), 0.0);

    const ValidatedRoom room = validate_room(scenarios::rect_room());
    const double once = ambient_component(f, std::vector<double>{0.4}, room);
    EXPECT_NEAR(ambient_component(f, std::vector<double>{0.8}, room), 2 * once, 1e-12 * once);
}

TEST(Ambient, MeanReflectanceAndArea) {
    const ValidatedRoom room = validate_room(scenarios::rect_room());
    // floor 12 + ceiling 12 + walls 14 * 2.5 = 59 m^2
    EXPECT_DOUBLE_EQ(interior_surface_area(room), 59.0);
    EXPECT_NEAR(mean_reflectance(room), (12 * 0.2 + 12 * 0.7 + 35 * 0.5) / 59.0, 1e-15);
}

TEST(Ambient, SaturatedReflectance) {
    try {
        ambient_illuminance(1000, 1.0, 50);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ReflectanceSaturated);
    }
}

TEST(Field, NoFixtures) {
    const ValidatedRoom room = validate_room(scenarios::rect_room());
    const IlluminanceField field = illuminance_field({}, {}, room);
    ASSERT_FALSE(field.lux.empty());
    for (const double v : field.lux) EXPECT_EQ(v, 0.0);
    EXPECT_EQ(field.stats.uniformity, 0.0);
    EXPECT_EQ(field.stats.average, 0.0);
}

TEST(Field, MaxAtNadirOfCentralFixture) {
    const ValidatedRoom room = validate_room(scenarios::rect_room());
    const std::vector<PlacedFixture> f{scenarios::ceiling_fixture("f", {2, 1.5, 2.5}, 1600, 15)};
    const IlluminanceField field = illuminance_field(f, std::vector<double>{1.0}, room, 0.25, 0.8);
    const oracle::Field ref = oracle::field(oracle::make_scene(room.model(), f, {1.0}), 0.25, 0.8);
    ASSERT_EQ(ref.lux.size(), field.lux.size());
    const auto argmax = static_cast<std::size_t>(std::max_element(ref.lux.begin(), ref.lux.end()) - ref.lux.begin());
    // four cell centres are equidistant from (2, 1.5); the first in row-major order wins
    EXPECT_NEAR(norm(field.points[argmax].xy() - Vec2{2, 1.5}), std::hypot(0.125, 0.125), 1e-12);
    EXPECT_EQ(field.stats.max, ref.lux[argmax]);
}

TEST(Field, StatsOrdering) {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> x(0.2, 3.8);
    std::uniform_real_distribution<double> y(0.2, 2.8);
    std::uniform_real_distribution<double> dim(0.0, 1.0);
    const ValidatedRoom room = validate_room(scenarios::rect_room());
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<PlacedFixture> f;
        std::vector<double> dims;
        for (int i = 0; i < 3; ++i) {
            f.push_back(scenarios::ceiling_fixture("f" + std::to_string(i), {x(rng), y(rng), 2.5}, 1000, 10, "ambient", i));
            dims.push_back(dim(rng));
        }
        const IlluminanceField field = illuminance_field(f, dims, room, 0.3, 0.8);
        ASSERT_LE(field.stats.min, field.stats.average);
        ASSERT_LE(field.stats.average, field.stats.max);
        ASSERT_GE(field.stats.uniformity, 0.0);
        ASSERT_LE(field.stats.uniformity, 1.0);
        for (const double v : field.lux) ASSERT_GE(v, 0.0);
    }
}

TEST(Field, FieldStatsEdgeCases) {
    const FieldStats flat = field_stats(std::vector<double>{0.1, 0.1, 0.1});
    EXPECT_EQ(flat.min, flat.average);
    EXPECT_EQ(flat.average, flat.max);
    EXPECT_EQ(flat.uniformity, 1.0);
    EXPECT_EQ(field_stats(std::vector<double>{}).average, 0.0);
}

// ---- laws and properties ----

TEST(PhotometricLaws, InverseSquare) {
    const ValidatedRoom room = validate_room(scenarios::rect_room(10, 10, 10));
    const std::vector<double> one{1.0};
    for (const double d : {0.5, 1.0, 1.7, 3.0, 4.5}) {
        const std::vector<PlacedFixture> f{scenarios::ceiling_fixture("f", {5, 5, 0.5 + 2 * d}, 1000, 10, "a", 2)};
        const double near = direct_illuminance(f, one, room, {5, 5, 0.5 + d});
        const double far = direct_illuminance(f, one, room, {5, 5, 0.5});
        EXPECT_LE(rel(far, near / 4), 1e-12) << d;
    }
}

TEST(PhotometricLaws, CosineOfIncidence) {
    // Receiver at the origin of a large room; fixture at distance d along a direction
    // tilted xi from vertical, axis aimed at the receiver so theta = 0.
    const ValidatedRoom room = validate_room(scenarios::rect_room(20, 20, 10));
    const std::vector<double> one{1.0};
    const double d = 2.0;
    const Vec3 p{10, 10, 0.8};
    const double flux = 1200.0;
    const double e0 = peak_intensity(spec(flux, 1)) / (d * d);
    for (const double deg : {0.0, 30.0, 60.0}) {
        const double xi = deg * std::numbers::pi / 180.0;
        const Vec3 dir{std::sin(xi), 0, std::cos(xi)};
        PlacedFixture f = scenarios::ceiling_fixture("f", p + dir * d, flux, 10);
        f.axis = dir * -1.0;
        const double e = direct_illuminance(std::vector<PlacedFixture>{f}, one, room, p);
        EXPECT_LE(rel(e, e0 * std::cos(xi)), 1e-12) << deg;
    }
}

TEST(PhotometricLaws, Superposition) {
    std::mt19937_64 rng(22);
    std::uniform_real_distribution<double> x(0.2, 3.8);
    std::uniform_real_distribution<double> y(0.2, 2.8);
    const ValidatedRoom room = validate_room(scenarios::bedroom());
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<PlacedFixture> a{scenarios::ceiling_fixture("a", {x(rng), y(rng), 2.5}, 900, 9)};
        std::vector<PlacedFixture> b{scenarios::ceiling_fixture("b", {x(rng), y(rng), 2.5}, 1400, 12, "ambient", 3)};
        std::vector<PlacedFixture> both{a[0], b[0]};
        const std::vector<double> one{1.0};
        const std::vector<double> two{1.0, 1.0};
        const double amb = ambient_component(both, two, room);
        for (const Vec3& p : workplane_grid(room, 0.5, 0.8)) {
            const double sum = direct_illuminance(a, one, room, p) + direct_illuminance(b, one, room, p) + amb;
            const double joint = direct_illuminance(both, two, room, p) + amb;
            ASSERT_NEAR(joint, sum, 1e-12 * sum);
        }
    }
}

TEST(PhotometricLaws, MonotoneInDim) {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> dim(0.0, 1.0);
    const ValidatedRoom room = validate_room(scenarios::bedroom());
    const std::vector<PlacedFixture> f{scenarios::ceiling_fixture("a", {1, 1, 2.5}, 900, 9),
                                       scenarios::ceiling_fixture("b", {3, 2, 2.5}, 1400, 12, "ambient", 3)};
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> dims{dim(rng), dim(rng)};
        const IlluminanceField before = illuminance_field(f, dims, room, 0.5);
        const std::size_t k = trial % 2;
        dims[k] = std::min(1.0, dims[k] + dim(rng));
        const IlluminanceField after = illuminance_field(f, dims, room, 0.5);
        for (std::size_t i = 0; i < before.lux.size(); ++i) ASSERT_GE(after.lux[i], before.lux[i]);
    }
}

TEST(PhotometricLaws, MatchesOracleOnTestRooms) {
    struct Case {
        RoomModel room;
        std::vector<PlacedFixture> fixtures;
    };
    std::vector<Case> cases;
    cases.push_back({scenarios::rect_room(), {scenarios::ceiling_fixture("c", {2, 1.5, 2.5}, 1600, 15)}});
    cases.push_back({scenarios::l_room(),
                     {scenarios::ceiling_fixture("c", {1, 1, 2.7}, 1600, 15),
                      scenarios::ceiling_fixture("d", {3.5, 1.2, 2.7}, 800, 8, "task", 3)}});
    PlacedFixture sconce = scenarios::ceiling_fixture("w", {0.7, 3.0, 1.2}, 800, 8, "task", 3);
    sconce.axis = {0, -std::cos(std::numbers::pi / 6), -std::sin(std::numbers::pi / 6)};
    cases.push_back({scenarios::bedroom(), {scenarios::ceiling_fixture("c", {2, 1.5, 2.5}, 1600, 15), sconce}});
    for (const Case& c : cases) {
        const ValidatedRoom room = validate_room(c.room);
        const std::vector<double> dims(c.fixtures.size(), 0.75);
        const IlluminanceField field = illuminance_field(c.fixtures, dims, room, 0.25, 0.8);
        const oracle::Field ref = oracle::field(oracle::make_scene(c.room, c.fixtures, dims), 0.25, 0.8);
        ASSERT_EQ(field.points.size(), ref.points.size());
        for (std::size_t i = 0; i < ref.lux.size(); ++i) {
            ASSERT_EQ(field.points[i], (Vec3{ref.points[i][0], ref.points[i][1], ref.points[i][2]}));
            ASSERT_LE(std::abs(field.lux[i] - ref.lux[i]), 1e-9 * std::max(1.0, std::abs(ref.lux[i]))) << i;
        }
    }
}
