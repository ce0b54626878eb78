#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "luxforge/designer.hpp"
#include "luxforge/geometry.hpp"

namespace luxforge {

inline constexpr double kDefaultGain = 0.5;
inline constexpr double kDefaultDeadbandFraction = 0.1;  ///< of the setpoint
inline constexpr double kNightWakeDim = 0.15;
inline constexpr int kMinutesPerDay = 1440;

enum class EventKind { closet_open, closet_close, dresser_sit, dresser_leave, night_wake, enter_room, leave_room };

std::string_view to_string(EventKind k);
std::optional<EventKind> parse_event_kind(std::string_view s);

struct Event {
    int minute = 0;
    EventKind kind = EventKind::closet_open;
    std::string zone;  ///< only for enter_room / leave_room

    friend bool operator==(const Event&, const Event&) = default;
};

/// Matches events of `kind`; an empty zone matches any zone.
struct Trigger {
    EventKind kind = EventKind::closet_open;
    std::string zone;

    bool matches(const Event& e) const { return e.kind == kind && (zone.empty() || zone == e.zone); }
    friend bool operator==(const Trigger&, const Trigger&) = default;
};

namespace rules {

/// Occupied zone -> full output; vacant longer than the policy's hold -> off.
struct OccupancyOnOff {
    std::string zone;
    friend bool operator==(const OccupancyOnOff&, const OccupancyOnOff&) = default;
};

/// Proportional dimming toward a sensor setpoint with a deadband, while occupied.
struct ConstantIlluminance {
    std::string zone;
    double setpoint = 300.0;
    friend bool operator==(const ConstantIlluminance&, const ConstantIlluminance&) = default;
};

/// Bang-bang shading: closes the blind (90 deg) when daylight exceeds the threshold.
struct BlindControl {
    double daylight_threshold = 0.0;
    friend bool operator==(const BlindControl&, const BlindControl&) = default;
};

/// Full output inside the daily [on, off) window, off outside.
struct Timing {
    std::string zone;
    int on_minute = 0;
    int off_minute = 0;
    friend bool operator==(const Timing&, const Timing&) = default;
};

/// On inside the daily window while transmitted daylight is below the threshold.
struct ThresholdTimer {
    std::string zone;
    double lux_threshold = 0.0;
    int window_start = 0;
    int window_end = 0;
    friend bool operator==(const ThresholdTimer&, const ThresholdTimer&) = default;
};

/// Applies a fixture-id -> dim map once when the trigger fires.
struct Scene {
    std::string name;
    Trigger trigger;
    std::map<std::string, double> levels;
    friend bool operator==(const Scene&, const Scene&) = default;
};

/// Latches the zone at `dim_on` from the trigger until the off trigger.
struct Linkage {
    Trigger trigger;
    std::string zone;
    double dim_on = 1.0;
    std::optional<Trigger> off_trigger;
    friend bool operator==(const Linkage&, const Linkage&) = default;
};

}  // namespace rules

using RuleBody = std::variant<rules::OccupancyOnOff, rules::ConstantIlluminance, rules::BlindControl, rules::Timing,
                              rules::ThresholdTimer, rules::Scene, rules::Linkage>;

std::string_view rule_kind_name(const RuleBody& body);

struct Rule {
    int priority = 0;  ///< higher wins
    RuleBody body;

    friend bool operator==(const Rule&, const Rule&) = default;
};

struct ControlPolicy {
    std::string name;
    std::vector<Rule> rules;
    Vec3 sensor_point{0.0, 0.0, kDefaultWorkplaneHeight};
    std::optional<double> deadband;  ///< lux; defaults to 10% of each setpoint
    double gain = kDefaultGain;
    double occupancy_hold = 0.0;     ///< minutes

    friend bool operator==(const ControlPolicy&, const ControlPolicy&) = default;
};

struct Interval {
    int start = 0;
    int end = 0;  ///< exclusive
    friend bool operator==(const Interval&, const Interval&) = default;
};

struct DaylightSample {
    double minute = 0.0;
    double lux = 0.0;
    friend bool operator==(const DaylightSample&, const DaylightSample&) = default;
};

struct Schedule {
    int horizon = kMinutesPerDay;
    int dt = 1;
    std::map<std::string, std::vector<Interval>> occupancy;
    std::vector<DaylightSample> daylight;  ///< piecewise linear, clamped at the ends
    std::vector<Event> events;

    double daylight_at(double minute) const;
    bool occupied(const std::string& zone, int minute) const;

    friend bool operator==(const Schedule&, const Schedule&) = default;
};

void check_schedule(const Schedule& schedule);

/// Parses "HH:MM" into minutes after midnight ("24:00" is 1440).
std::optional<int> parse_clock(std::string_view text);
std::string format_clock(int minute);

/// True when `minute` (taken modulo a day) falls in the daily window [start, end),
/// which may wrap past midnight.
bool in_daily_window(int minute, int start, int end);

/// Fraction of daylight passing a blind at `angle_degrees` (1 open, 0 closed).
double blind_transmission(double angle_degrees);

/// Sensor illuminance: fixtures (direct + ambient) plus transmitted daylight.
double sensor_reading(std::span<const PlacedFixture> fixtures, const ValidatedRoom& room, Vec3 sensor_point,
                      std::span<const double> dims, double blind_angle, double daylight_lux);

struct ActuationState {
    std::vector<double> dims;
    double blind_angle = 0.0;
    std::map<std::string, double> vacant_minutes;  ///< per zone
    std::vector<bool> latched;                     ///< per rule (linkage)

    friend bool operator==(const ActuationState&, const ActuationState&) = default;
};

struct TickInputs {
    int minute = 0;
    int dt = 1;
    double daylight = 0.0;
    std::vector<std::string> occupied_zones;
    std::vector<Event> events;
};

struct TickResult {
    ActuationState state;
    double sensor_before = 0.0;  ///< reading the controllers acted on
    double sensor_after = 0.0;   ///< reading with this tick's actuation applied
};

/// A policy bound to one design: zones and fixture ids resolved, rules in
/// evaluation order. Binding fails with UnknownZone / UnknownFixture / InvalidPolicy.
class Controller {
public:
    Controller(const LightingDesign& design, const ValidatedRoom& room, const ControlPolicy& policy);

    ActuationState initial_state() const;
    TickResult step(const ActuationState& state, const TickInputs& inputs) const;

    const ControlPolicy& policy() const { return policy_; }
    const LightingDesign& design() const { return design_; }

private:
    struct BoundRule {
        std::size_t index = 0;  ///< position in policy.rules
        std::vector<std::size_t> fixtures;  ///< zone members
        std::vector<std::pair<std::size_t, double>> scene_levels;
    };

    double deadband_for(double setpoint) const;

    LightingDesign design_;
    ValidatedRoom room_;
    ControlPolicy policy_;
    std::vector<BoundRule> order_;
    std::vector<std::string> zone_names_;
};

struct TickRecord {
    int tick = 0;
    int minute = 0;
    std::vector<double> dims;
    double blind_angle = 0.0;
    double sensor_lux = 0.0;
    std::vector<std::string> occupied_zones;
    std::vector<Event> events;

    friend bool operator==(const TickRecord&, const TickRecord&) = default;
};

struct SimulationTrace {
    std::string design_id;
    std::string policy_name;
    int dt = 1;
    std::vector<std::string> fixture_ids;
    std::vector<std::string> fixture_zones;
    std::vector<double> fixture_power;  ///< watts
    std::vector<TickRecord> ticks;
    std::vector<double> fixture_energy_wh;
    double total_energy_wh = 0.0;

    friend bool operator==(const SimulationTrace&, const SimulationTrace&) = default;
};

SimulationTrace simulate(const LightingDesign& design, const ValidatedRoom& room, const ControlPolicy& policy,
                         const Schedule& schedule);

struct SavingsEntry {
    std::string name;
    double energy_wh = 0.0;
    double savings_percent = 0.0;

    friend bool operator==(const SavingsEntry&, const SavingsEntry&) = default;
};

struct SavingsReport {
    std::vector<SavingsEntry> entries;  ///< baseline first

    friend bool operator==(const SavingsReport&, const SavingsReport&) = default;
};

/// Energy of each policy relative to the first (baseline) one.
/// Throws InvalidArgument for fewer than two policies and ZeroBaselineEnergy.
SavingsReport compare_policies(const LightingDesign& design, const ValidatedRoom& room,
                               std::span<const ControlPolicy> policies, const Schedule& schedule);

}  // namespace luxforge
