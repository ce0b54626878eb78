#include "luxforge/control.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <numeric>
#include <set>

#include "luxforge/error.hpp"
#include "luxforge/photometry.hpp"

namespace luxforge {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

int normalize_clock(int minute) { return ((minute % kMinutesPerDay) + kMinutesPerDay) % kMinutesPerDay; }

[[noreturn]] void invalid_policy(std::size_t rule, const std::string& why) {
    throw Error(ErrorCode::InvalidPolicy, "rule " + std::to_string(rule) + ": " + why);
}

void check_dim(std::size_t rule, double d, const char* what) {
    if (!(d >= 0.0 && d <= 1.0)) invalid_policy(rule, std::string(what) + " must lie in [0,1]");
}

bool any_match(const Trigger& t, const std::vector<Event>& events) {
    return std::any_of(events.begin(), events.end(), [&](const Event& e) { return t.matches(e); });
}

}  // namespace

std::string_view to_string(EventKind k) {
    switch (k) {
        case EventKind::closet_open: return "closet_open";
        case EventKind::closet_close: return "closet_close";
        case EventKind::dresser_sit: return "dresser_sit";
        case EventKind::dresser_leave: return "dresser_leave";
        case EventKind::night_wake: return "night_wake";
        case EventKind::enter_room: return "enter_room";
        case EventKind::leave_room: return "leave_room";
    }
    return "unknown";
}

std::optional<EventKind> parse_event_kind(std::string_view s) {
    for (const EventKind k : {EventKind::closet_open, EventKind::closet_close, EventKind::dresser_sit,
                              EventKind::dresser_leave, EventKind::night_wake, EventKind::enter_room,
                              EventKind::leave_room}) {
        if (to_string(k) == s) return k;
    }
    return std::nullopt;
}

std::string_view rule_kind_name(const RuleBody& body) {
    return std::visit(overloaded{
                          [](const rules::OccupancyOnOff&) { return std::string_view{"occupancy_onoff"}; },
                          [](const rules::ConstantIlluminance&) { return std::string_view{"constant_illuminance"}; },
                          [](const rules::BlindControl&) { return std::string_view{"blind_control"}; },
                          [](const rules::Timing&) { return std::string_view{"timing"}; },
                          [](const rules::ThresholdTimer&) { return std::string_view{"threshold_timer"}; },
                          [](const rules::Scene&) { return std::string_view{"scene"}; },
                          [](const rules::Linkage&) { return std::string_view{"linkage"}; },
                      },
                      body);
}

std::optional<int> parse_clock(std::string_view text) {
    const auto colon = text.find(':');
    if (colon == std::string_view::npos || colon == 0 || text.size() - colon != 3) return std::nullopt;
    int h = 0;
    int m = 0;
    const auto hs = text.substr(0, colon);
    const auto ms = text.substr(colon + 1);
    if (std::from_chars(hs.data(), hs.data() + hs.size(), h).ptr != hs.data() + hs.size()) return std::nullopt;
    if (std::from_chars(ms.data(), ms.data() + ms.size(), m).ptr != ms.data() + ms.size()) return std::nullopt;
    if (h < 0 || m < 0 || m > 59 || h > 24 || (h == 24 && m != 0)) return std::nullopt;
    return h * 60 + m;
}

std::string format_clock(int minute) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%02d:%02d", minute / 60, minute % 60);
    return buf;
}

bool in_daily_window(int minute, int start, int end) {
    const int m = normalize_clock(minute);
    const int s = normalize_clock(start);
    const int e = normalize_clock(end);
    if (s < e) return m >= s && m < e;
    return m >= s || m < e;
}

double blind_transmission(double angle_degrees) {
    if (angle_degrees >= 90.0) return 0.0;
    if (angle_degrees <= 0.0) return 1.0;
    return std::cos(angle_degrees * std::numbers::pi / 180.0);
}

double sensor_reading(std::span<const PlacedFixture> fixtures, const ValidatedRoom& room, Vec3 sensor_point,
                      std::span<const double> dims, double blind_angle, double daylight_lux) {
    return direct_illuminance(fixtures, dims, room, sensor_point) + ambient_component(fixtures, dims, room) +
           daylight_lux * blind_transmission(blind_angle);
}

double Schedule::daylight_at(double minute) const {
    if (daylight.empty()) return 0.0;
    if (minute <= daylight.front().minute) return daylight.front().lux;
    if (minute >= daylight.back().minute) return daylight.back().lux;
    const auto hi = std::upper_bound(daylight.begin(), daylight.end(), minute,
                                     [](double m, const DaylightSample& s) { return m < s.minute; });
    const auto lo = hi - 1;
    const double f = (minute - lo->minute) / (hi->minute - lo->minute);
    return lo->lux + f * (hi->lux - lo->lux);
}

bool Schedule::occupied(const std::string& zone, int minute) const {
    const auto it = occupancy.find(zone);
    if (it == occupancy.end()) return false;
    return std::any_of(it->second.begin(), it->second.end(),
                       [&](const Interval& iv) { return minute >= iv.start && minute < iv.end; });
}

void check_schedule(const Schedule& s) {
    if (s.horizon <= 0 || s.dt <= 0) throw Error(ErrorCode::InvalidSchedule, "horizon and dt must be positive");
    if (s.horizon % s.dt != 0) throw Error(ErrorCode::InvalidSchedule, "dt must divide the horizon");
    for (const auto& [zone, intervals] : s.occupancy) {
        for (const Interval& iv : intervals) {
            if (iv.start < 0 || iv.end > s.horizon || iv.start >= iv.end) {
                throw Error(ErrorCode::InvalidSchedule, "occupancy interval for zone '" + zone +
                                                            "' must satisfy 0 <= start < end <= horizon");
            }
        }
    }
    for (std::size_t i = 0; i < s.daylight.size(); ++i) {
        if (!(s.daylight[i].lux >= 0.0)) throw Error(ErrorCode::InvalidSchedule, "daylight lux must be non-negative");
        if (i > 0 && !(s.daylight[i].minute > s.daylight[i - 1].minute)) {
            throw Error(ErrorCode::InvalidSchedule, "daylight samples must have increasing minutes");
        }
    }
    for (const Event& e : s.events) {
        if (e.minute < 0 || e.minute >= s.horizon) {
            throw Error(ErrorCode::InvalidSchedule,
                        "event " + std::string(to_string(e.kind)) + " at minute " + std::to_string(e.minute) +
                            " lies outside the horizon");
        }
    }
}

Controller::Controller(const LightingDesign& design, const ValidatedRoom& room, const ControlPolicy& policy)
    : design_(design), room_(room), policy_(policy) {
    if (!(policy_.gain > 0.0)) throw Error(ErrorCode::InvalidPolicy, "gain must be positive");
    if (!(policy_.occupancy_hold >= 0.0)) throw Error(ErrorCode::InvalidPolicy, "occupancy_hold must be >= 0");
    if (policy_.deadband && !(*policy_.deadband >= 0.0)) {
        throw Error(ErrorCode::InvalidPolicy, "deadband must be >= 0");
    }
    if (!inside_room_volume(room_, policy_.sensor_point)) {
        throw Error(ErrorCode::InvalidPolicy, "sensor point lies outside the room");
    }

    const auto zones = design_.zones();
    for (const auto& [name, members] : zones) zone_names_.push_back(name);
    auto zone_members = [&](std::size_t rule, const std::string& zone) {
        const auto it = zones.find(zone);
        if (it == zones.end()) {
            throw Error(ErrorCode::UnknownZone,
                        "rule " + std::to_string(rule) + " references zone '" + zone + "' absent from the design");
        }
        return it->second;
    };

    for (std::size_t i = 0; i < policy_.rules.size(); ++i) {
        BoundRule b;
        b.index = i;
        std::visit(overloaded{
                       [&](const rules::OccupancyOnOff& r) { b.fixtures = zone_members(i, r.zone); },
                       [&](const rules::ConstantIlluminance& r) {
                           b.fixtures = zone_members(i, r.zone);
                           if (!(r.setpoint > 0.0)) invalid_policy(i, "setpoint must be positive");
                       },
                       [&](const rules::BlindControl& r) {
                           if (!(r.daylight_threshold >= 0.0)) invalid_policy(i, "daylight threshold must be >= 0");
                       },
                       [&](const rules::Timing& r) {
                           b.fixtures = zone_members(i, r.zone);
                           if (normalize_clock(r.on_minute) == normalize_clock(r.off_minute)) {
                               invalid_policy(i, "on_time and off_time must differ");
                           }
                       },
                       [&](const rules::ThresholdTimer& r) {
                           b.fixtures = zone_members(i, r.zone);
                           if (normalize_clock(r.window_start) == normalize_clock(r.window_end)) {
                               invalid_policy(i, "threshold window must not be empty");
                           }
                       },
                       [&](const rules::Scene& r) {
                           for (const auto& [fixture_id, level] : r.levels) {
                               check_dim(i, level, "scene level");
                               const auto it = std::find_if(design_.fixtures.begin(), design_.fixtures.end(),
                                                            [&](const PlacedFixture& f) { return f.id == fixture_id; });
                               if (it == design_.fixtures.end()) {
                                   throw Error(ErrorCode::UnknownFixture, "rule " + std::to_string(i) +
                                                                              " references fixture '" + fixture_id +
                                                                              "' absent from the design");
                               }
                               b.scene_levels.emplace_back(
                                   static_cast<std::size_t>(it - design_.fixtures.begin()), level);
                           }
                       },
                       [&](const rules::Linkage& r) {
                           b.fixtures = zone_members(i, r.zone);
                           check_dim(i, r.dim_on, "dim_on");
                       },
                   },
                   policy_.rules[i].body);
        order_.push_back(std::move(b));
    }
    // ascending priority; ties keep list order
    std::stable_sort(order_.begin(), order_.end(), [&](const BoundRule& a, const BoundRule& b) {
        return policy_.rules[a.index].priority < policy_.rules[b.index].priority;
    });

    // surfaces CoincidentPoint at bind time rather than mid-run
    const std::vector<double> zero(design_.fixtures.size(), 0.0);
    sensor_reading(design_.fixtures, room_, policy_.sensor_point, zero, 0.0, 0.0);
}

double Controller::deadband_for(double setpoint) const {
    return policy_.deadband.value_or(kDefaultDeadbandFraction * setpoint);
}

ActuationState Controller::initial_state() const {
    ActuationState s;
    s.dims.assign(design_.fixtures.size(), 0.0);
    s.blind_angle = 0.0;
    for (const std::string& z : zone_names_) s.vacant_minutes[z] = std::numeric_limits<double>::infinity();
    s.latched.assign(policy_.rules.size(), false);
    return s;
}

TickResult Controller::step(const ActuationState& state, const TickInputs& in) const {
    TickResult result;
    ActuationState next = state;
    const auto is_occupied = [&](const std::string& zone) {
        return std::find(in.occupied_zones.begin(), in.occupied_zones.end(), zone) != in.occupied_zones.end();
    };
    for (const std::string& z : zone_names_) {
        next.vacant_minutes[z] = is_occupied(z) ? 0.0 : state.vacant_minutes.at(z) + in.dt;
    }

    // Shading acts on exterior daylight first; every other controller sees the
    // daylight transmitted through the resulting blind position.
    for (const BoundRule& b : order_) {
        if (const auto* r = std::get_if<rules::BlindControl>(&policy_.rules[b.index].body)) {
            next.blind_angle = in.daylight > r->daylight_threshold ? 90.0 : 0.0;
        }
    }
    const double transmitted = in.daylight * blind_transmission(next.blind_angle);
    const double reading = sensor_reading(design_.fixtures, room_, policy_.sensor_point, state.dims,
                                          next.blind_angle, in.daylight);
    result.sensor_before = reading;

    const auto write = [&](std::size_t f, double level) {
        level = std::clamp(level, 0.0, 1.0);
        if (!design_.fixtures[f].dimmable) level = level > 0.0 ? 1.0 : 0.0;
        next.dims[f] = level;
    };
    const auto write_zone = [&](const BoundRule& b, double level) {
        for (const std::size_t f : b.fixtures) write(f, level);
    };

    for (const BoundRule& b : order_) {
        const Rule& rule = policy_.rules[b.index];
        std::visit(overloaded{
                       [&](const rules::OccupancyOnOff& r) {
                           if (is_occupied(r.zone)) {
                               write_zone(b, 1.0);
                           } else if (next.vacant_minutes.at(r.zone) > policy_.occupancy_hold) {
                               write_zone(b, 0.0);
                           }
                       },
                       [&](const rules::ConstantIlluminance& r) {
                           if (!is_occupied(r.zone)) {
                               write_zone(b, 0.0);
                               return;
                           }
                           double level = 0.0;
                           for (const std::size_t f : b.fixtures) level += state.dims[f];
                           level /= static_cast<double>(b.fixtures.size());
                           const double error = r.setpoint - reading;
                           if (std::abs(error) > deadband_for(r.setpoint)) {
                               level += policy_.gain * error / r.setpoint;
                           }
                           write_zone(b, level);
                       },
                       [&](const rules::BlindControl&) {},
                       [&](const rules::Timing& r) {
                           write_zone(b, in_daily_window(in.minute, r.on_minute, r.off_minute) ? 1.0 : 0.0);
                       },
                       [&](const rules::ThresholdTimer& r) {
                           const bool on = in_daily_window(in.minute, r.window_start, r.window_end) &&
                                           transmitted < r.lux_threshold;
                           write_zone(b, on ? 1.0 : 0.0);
                       },
                       [&](const rules::Scene& r) {
                           if (!any_match(r.trigger, in.events)) return;
                           for (const auto& [f, level] : b.scene_levels) write(f, level);
                       },
                       [&](const rules::Linkage& r) {
                           if (any_match(r.trigger, in.events)) next.latched[b.index] = true;
                           if (r.off_trigger && any_match(*r.off_trigger, in.events)) {
                               next.latched[b.index] = false;
                               write_zone(b, 0.0);
                           }
                           if (next.latched[b.index]) write_zone(b, r.dim_on);
                       },
                   },
                   rule.body);
    }

    result.sensor_after = sensor_reading(design_.fixtures, room_, policy_.sensor_point, next.dims, next.blind_angle,
                                         in.daylight);
    result.state = std::move(next);
    return result;
}

SimulationTrace simulate(const LightingDesign& design, const ValidatedRoom& room, const ControlPolicy& policy,
                         const Schedule& schedule) {
    check_schedule(schedule);
    const Controller controller(design, room, policy);

    SimulationTrace trace;
    trace.design_id = design.id;
    trace.policy_name = policy.name;
    trace.dt = schedule.dt;
    for (const PlacedFixture& f : design.fixtures) {
        trace.fixture_ids.push_back(f.id);
        trace.fixture_zones.push_back(f.zone);
        trace.fixture_power.push_back(f.spec.power);
    }
    trace.fixture_energy_wh.assign(design.fixtures.size(), 0.0);

    std::set<std::string> zones;
    for (const auto& [zone, intervals] : schedule.occupancy) zones.insert(zone);
    for (const auto& [zone, members] : design.zones()) zones.insert(zone);

    ActuationState state = controller.initial_state();
    const int ticks = schedule.horizon / schedule.dt;
    trace.ticks.reserve(static_cast<std::size_t>(ticks));
    const double hours_per_tick = schedule.dt / 60.0;
    for (int t = 0; t < ticks; ++t) {
        TickInputs in;
        in.minute = t * schedule.dt;
        in.dt = schedule.dt;
        in.daylight = schedule.daylight_at(in.minute);
        for (const std::string& z : zones) {
            if (schedule.occupied(z, in.minute)) in.occupied_zones.push_back(z);
        }
        for (const Event& e : schedule.events) {
            if (e.minute >= in.minute && e.minute < in.minute + schedule.dt) in.events.push_back(e);
        }

        TickResult r = controller.step(state, in);
        state = std::move(r.state);

        TickRecord rec;
        rec.tick = t;
        rec.minute = in.minute;
        rec.dims = state.dims;
        rec.blind_angle = state.blind_angle;
        rec.sensor_lux = r.sensor_after;
        rec.occupied_zones = std::move(in.occupied_zones);
        rec.events = std::move(in.events);
        for (std::size_t f = 0; f < state.dims.size(); ++f) {
            trace.fixture_energy_wh[f] += trace.fixture_power[f] * state.dims[f] * hours_per_tick;
        }
        trace.ticks.push_back(std::move(rec));
    }
    trace.total_energy_wh = std::accumulate(trace.fixture_energy_wh.begin(), trace.fixture_energy_wh.end(), 0.0);
    return trace;
}

SavingsReport compare_policies(const LightingDesign& design, const ValidatedRoom& room,
                               std::span<const ControlPolicy> policies, const Schedule& schedule) {
    if (policies.size() < 2) {
        throw Error(ErrorCode::InvalidArgument, "comparison needs a baseline and at least one other policy");
    }
    SavingsReport report;
    for (std::size_t i = 0; i < policies.size(); ++i) {
        const SimulationTrace trace = simulate(design, room, policies[i], schedule);
        SavingsEntry e;
        e.name = policies[i].name.empty() ? "policy-" + std::to_string(i) : policies[i].name;
        e.energy_wh = trace.total_energy_wh;
        report.entries.push_back(std::move(e));
    }
    const double baseline = report.entries.front().energy_wh;
    if (!(baseline > 0.0)) {
        throw Error(ErrorCode::ZeroBaselineEnergy, "baseline policy '" + report.entries.front().name +
                                                       "' consumes no energy");
    }
    for (SavingsEntry& e : report.entries) e.savings_percent = 100.0 * (1.0 - e.energy_wh / baseline);
    return report;
}

}  // namespace luxforge
