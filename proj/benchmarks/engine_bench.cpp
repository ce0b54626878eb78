#include <benchmark/benchmark.h>

#include "luxforge/control.hpp"
#include "luxforge/designer.hpp"
#include "luxforge/patterns.hpp"

using namespace luxforge;

namespace {

RoomModel bedroom() {
    RoomModel room;
    room.outline = {{0, 0}, {4, 0}, {4, 3}, {0, 3}};
    room.ceiling_height = 2.5;
    room.objects = {{ObjectKind::bed, {{1, 1.4}, {2, 3}}, 0.5, {0, -1}},
                    {ObjectKind::tv, {{1.4, 0}, {2.6, 0.1}}, 1.3, {0, 1}}};
    return room;
}

void BM_IlluminanceField(benchmark::State& state) {
    const ValidatedRoom room = validate_room(bedroom());
    const auto designs = generate_designs(room, default_pattern_library(), 1);
    const LightingDesign& d = designs.front();
    const double spacing = 1.0 / static_cast<double>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(illuminance_field(d.fixtures, d.dims, room, spacing));
    }
}
BENCHMARK(BM_IlluminanceField)->Arg(4)->Arg(10)->Arg(20);

void BM_GenerateRanked(benchmark::State& state) {
    const ValidatedRoom room = validate_room(bedroom());
    for (auto _ : state) benchmark::DoNotOptimize(generate_ranked(room, default_pattern_library(), 1));
}
BENCHMARK(BM_GenerateRanked);

void BM_SimulateDay(benchmark::State& state) {
    const ValidatedRoom room = validate_room(bedroom());
    const LightingDesign d = generate_designs(room, default_pattern_library(), 1).front();
    ControlPolicy p;
    p.sensor_point = {2, 1.5, 0.8};
    for (const auto& [zone, members] : d.zones()) {
        p.rules.push_back({0, rules::OccupancyOnOff{zone}});
        p.rules.push_back({1, rules::ConstantIlluminance{zone, 300}});
    }
    Schedule s;
    s.dt = static_cast<int>(state.range(0));
    for (const auto& [zone, members] : d.zones()) s.occupancy[zone] = {{1080, 1320}};
    s.daylight = {{360, 0}, {720, 800}, {1080, 0}};
    for (auto _ : state) benchmark::DoNotOptimize(simulate(d, room, p, s));
}
BENCHMARK(BM_SimulateDay)->Arg(1)->Arg(15);

}  // namespace
BENCHMARK_MAIN();
