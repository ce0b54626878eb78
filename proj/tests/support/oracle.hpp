#pragma once

// Brute-force reference evaluator for the illuminance engine. Works on plain
// arrays and re-derives every geometric quantity from scratch; it shares no
// code with the library beyond reading the input structs.

#include <array>
#include <vector>

#include "luxforge/geometry.hpp"
#include "luxforge/photometry.hpp"

namespace oracle {

struct Box {
    double lo[3];
    double hi[3];
};

struct Source {
    double pos[3];
    double axis[3];
    double flux;
    double exponent;
    double dim;
};

struct Scene {
    std::vector<std::array<double, 2>> outline;
    double height = 0.0;
    std::vector<Box> boxes;
    double rho_floor = 0.0;
    double rho_ceiling = 0.0;
    std::vector<double> rho_walls;
    std::vector<Source> sources;
};

Scene make_scene(const luxforge::RoomModel& room, const std::vector<luxforge::PlacedFixture>& fixtures,
                 const std::vector<double>& dims);

/// Winding-number containment with an explicit boundary test.
bool inside(const Scene& s, double x, double y);

/// Open segment a-b passes through the open interior of the box.
bool blocked(const Box& b, const double a[3], const double c[3]);

std::vector<std::array<double, 3>> grid(const Scene& s, double spacing, double workplane);

double direct(const Scene& s, const double p[3]);
double ambient(const Scene& s);

struct Field {
    std::vector<std::array<double, 3>> points;
    std::vector<double> lux;
};

Field field(const Scene& s, double spacing, double workplane);

/// Midpoint-rule integral of I0 cos^m(theta) over the upper hemisphere.
double hemisphere_flux(double peak, double exponent, int theta_steps, int phi_steps);

}  // namespace oracle
