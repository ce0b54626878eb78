#include "json_codec.hpp"

#include <cmath>

namespace luxforge::codec {

namespace {

// Field access with errors that name the offending path.
class Reader {
public:
    Reader(const Json& j, ErrorCode code, std::string path) : j_(j), code_(code), path_(std::move(path)) {
        if (!j_.is_object()) fail("", "expected an object");
    }

    [[noreturn]] void fail(std::string_view field, const std::string& why) const {
        std::string where = path_;
        if (!field.empty()) where += (where.empty() ? "" : ".") + std::string(field);
        throw Error(code_, "field '" + (where.empty() ? std::string("<root>") : where) + "': " + why);
    }

    std::string path(std::string_view field) const {
        return path_.empty() ? std::string(field) : path_ + "." + std::string(field);
    }
    ErrorCode code() const { return code_; }

    bool has(const char* key) const { return j_.contains(key) && !j_.at(key).is_null(); }

    const Json& at(const char* key) const {
        if (!has(key)) fail(key, "missing");
        return j_.at(key);
    }

    double number(const char* key) const {
        const Json& v = at(key);
        if (!v.is_number()) fail(key, "expected a number");
        const double d = v.get<double>();
        if (!std::isfinite(d)) fail(key, "expected a finite number");
        return d;
    }
    double number_or(const char* key, double fallback) const { return has(key) ? number(key) : fallback; }
    std::optional<double> optional_number(const char* key) const {
        if (!has(key)) return std::nullopt;
        return number(key);
    }

    int integer(const char* key) const {
        const Json& v = at(key);
        if (!v.is_number_integer()) fail(key, "expected an integer");
        return v.get<int>();
    }

    std::string string(const char* key) const {
        const Json& v = at(key);
        if (!v.is_string()) fail(key, "expected a string");
        return v.get<std::string>();
    }
    std::string string_or(const char* key, std::string fallback) const {
        return has(key) ? string(key) : std::move(fallback);
    }

    bool boolean_or(const char* key, bool fallback) const {
        if (!has(key)) return fallback;
        const Json& v = j_.at(key);
        if (!v.is_boolean()) fail(key, "expected true or false");
        return v.get<bool>();
    }

    const Json& array(const char* key) const {
        const Json& v = at(key);
        if (!v.is_array()) fail(key, "expected an array");
        return v;
    }

    Reader child(const char* key) const {
        const Json& v = at(key);
        if (!v.is_object()) fail(key, "expected an object");
        return Reader(v, code_, path(key));
    }

    /// Clock value given either as "HH:MM" or as integer minutes.
    int clock(const char* key) const {
        const Json& v = at(key);
        if (v.is_number_integer()) return v.get<int>();
        if (v.is_string()) {
            if (const auto m = parse_clock(v.get<std::string>())) return *m;
        }
        fail(key, "expected \"HH:MM\" or integer minutes");
    }

    const Json& raw() const { return j_; }

private:
    const Json& j_;
    ErrorCode code_;
    std::string path_;
};

double element_number(const Reader& r, std::string_view field, const Json& v) {
    if (!v.is_number()) r.fail(field, "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) r.fail(field, "expected a finite number");
    return d;
}

Vec2 decode_vec2(const Reader& r, std::string_view field, const Json& v) {
    if (!v.is_array() || v.size() != 2) r.fail(field, "expected [x, y]");
    return {element_number(r, field, v[0]), element_number(r, field, v[1])};
}

Vec3 decode_vec3(const Reader& r, std::string_view field, const Json& v) {
    if (!v.is_array() || v.size() != 3) r.fail(field, "expected [x, y, z]");
    return {element_number(r, field, v[0]), element_number(r, field, v[1]), element_number(r, field, v[2])};
}

Json vec(Vec2 v) { return Json::array({v.x, v.y}); }
Json vec(Vec3 v) { return Json::array({v.x, v.y, v.z}); }

std::string indexed(std::string_view field, std::size_t i) {
    return std::string(field) + "[" + std::to_string(i) + "]";
}

template <typename Enum, typename Parser>
Enum decode_enum(const Reader& r, const char* key, Parser parse) {
    const std::string s = r.string(key);
    const auto v = parse(s);
    if (!v) r.fail(key, "unknown value '" + s + "'");
    return *v;
}

LuminaireSpec decode_spec(const Reader& r) {
    LuminaireSpec s;
    s.name = r.string_or("name", "");
    s.flux = r.number("flux");
    s.distribution_exponent = r.number_or("distribution_exponent", 1.0);
    s.power = r.number("power");
    s.mount = decode_enum<MountKind>(r, "mount", parse_mount_kind);
    return s;
}

Json encode_trigger(const Trigger& t) {
    if (t.zone.empty()) return Json(std::string(to_string(t.kind)));
    Json j = Json::object();
    j["kind"] = to_string(t.kind);
    j["zone"] = t.zone;
    return j;
}

Trigger decode_trigger(const Reader& r, const char* key) {
    const Json& v = r.at(key);
    Trigger t;
    std::string kind;
    if (v.is_string()) {
        kind = v.get<std::string>();
    } else if (v.is_object()) {
        const Reader c = r.child(key);
        kind = c.string("kind");
        t.zone = c.string_or("zone", "");
    } else {
        r.fail(key, "expected an event name or {kind, zone}");
    }
    const auto k = parse_event_kind(kind);
    if (!k) r.fail(key, "unknown event '" + kind + "'");
    t.kind = *k;
    return t;
}

Json encode_event(const Event& e) {
    Json j = Json::object();
    j["minute"] = e.minute;
    j["kind"] = to_string(e.kind);
    if (!e.zone.empty()) j["zone"] = e.zone;
    return j;
}

Event decode_event(const Reader& r) {
    Event e;
    e.minute = r.clock("minute");
    e.kind = decode_enum<EventKind>(r, "kind", parse_event_kind);
    e.zone = r.string_or("zone", "");
    return e;
}

Json encode_rule(const Rule& rule) {
    Json j = Json::object();
    j["priority"] = rule.priority;
    j["kind"] = rule_kind_name(rule.body);
    if (const auto* r = std::get_if<rules::OccupancyOnOff>(&rule.body)) {
        j["zone"] = r->zone;
    } else if (const auto* r = std::get_if<rules::ConstantIlluminance>(&rule.body)) {
        j["zone"] = r->zone;
        j["setpoint"] = r->setpoint;
    } else if (const auto* r = std::get_if<rules::BlindControl>(&rule.body)) {
        j["daylight_threshold"] = r->daylight_threshold;
    } else if (const auto* r = std::get_if<rules::Timing>(&rule.body)) {
        j["zone"] = r->zone;
        j["on_time"] = format_clock(r->on_minute);
        j["off_time"] = format_clock(r->off_minute);
    } else if (const auto* r = std::get_if<rules::ThresholdTimer>(&rule.body)) {
        j["zone"] = r->zone;
        j["lux_threshold"] = r->lux_threshold;
        j["window_start"] = format_clock(r->window_start);
        j["window_end"] = format_clock(r->window_end);
    } else if (const auto* r = std::get_if<rules::Scene>(&rule.body)) {
        j["name"] = r->name;
        j["trigger"] = encode_trigger(r->trigger);
        Json levels = Json::object();
        for (const auto& [id, level] : r->levels) levels[id] = level;
        j["levels"] = levels;
    } else if (const auto* r = std::get_if<rules::Linkage>(&rule.body)) {
        j["zone"] = r->zone;
        j["trigger"] = encode_trigger(r->trigger);
        j["dim_on"] = r->dim_on;
        j["off_trigger"] = r->off_trigger ? encode_trigger(*r->off_trigger) : Json(nullptr);
    }
    return j;
}

int checked_clock(const Reader& r, const char* key) {
    const int m = r.clock(key);
    if (m < 0 || m > kMinutesPerDay) r.fail(key, "time of day must lie in [00:00, 24:00]");
    return m;
}

Rule decode_rule(const Reader& r) {
    Rule rule;
    rule.priority = r.has("priority") ? r.integer("priority") : 0;
    const std::string kind = r.string("kind");
    if (kind == "occupancy_onoff") {
        rule.body = rules::OccupancyOnOff{r.string("zone")};
    } else if (kind == "constant_illuminance") {
        rule.body = rules::ConstantIlluminance{r.string("zone"), r.number("setpoint")};
    } else if (kind == "blind_control") {
        rule.body = rules::BlindControl{r.number("daylight_threshold")};
    } else if (kind == "timing") {
        rule.body = rules::Timing{r.string("zone"), checked_clock(r, "on_time"), checked_clock(r, "off_time")};
    } else if (kind == "threshold_timer") {
        rule.body = rules::ThresholdTimer{r.string("zone"), r.number("lux_threshold"), checked_clock(r, "window_start"),
                                          checked_clock(r, "window_end")};
    } else if (kind == "scene") {
        rules::Scene s;
        s.name = r.string_or("name", "");
        s.trigger = decode_trigger(r, "trigger");
        const Json& levels = r.at("levels");
        if (!levels.is_object()) r.fail("levels", "expected an object of fixture id -> dim");
        for (const auto& [id, v] : levels.items()) s.levels[id] = element_number(r, "levels." + id, v);
        rule.body = std::move(s);
    } else if (kind == "linkage") {
        rules::Linkage l;
        l.zone = r.string("zone");
        l.trigger = decode_trigger(r, "trigger");
        l.dim_on = r.number_or("dim_on", l.trigger.kind == EventKind::night_wake ? kNightWakeDim : 1.0);
        if (r.has("off_trigger")) l.off_trigger = decode_trigger(r, "off_trigger");
        rule.body = std::move(l);
    } else {
        r.fail("kind", "unknown rule kind '" + kind + "'");
    }
    return rule;
}

}  // namespace

Json parse(std::string_view text, ErrorCode code) {
    try {
        return Json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::exception& e) {
        throw Error(code, std::string("invalid JSON: ") + e.what());
    }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json encode(const RoomModel& room) {
    Json j = Json::object();
    Json outline = Json::array();
    for (const Vec2 v : room.outline) outline.push_back(vec(v));
    j["outline"] = outline;
    j["ceiling_height"] = room.ceiling_height;
    Json surfaces = Json::array();
    for (const Surface& s : room.surfaces) {
        Json sj = Json::object();
        sj["kind"] = to_string(s.kind);
        if (s.kind == SurfaceKind::wall) sj["index"] = s.wall_index;
        sj["reflectance"] = s.reflectance;
        surfaces.push_back(sj);
    }
    j["surfaces"] = surfaces;
    Json objects = Json::array();
    for (const FurnitureObject& o : room.objects) {
        Json oj = Json::object();
        oj["kind"] = to_string(o.kind);
        oj["footprint"] = Json::array({vec(o.footprint.min), vec(o.footprint.max)});
        oj["height"] = o.height;
        oj["facing"] = vec(o.facing);
        objects.push_back(oj);
    }
    j["objects"] = objects;
    j["function"] = to_string(room.function);
    return j;
}

RoomModel decode_room(const Json& j, ErrorCode code) {
    const Reader r(j, code, "");
    RoomModel room;
    const Json& outline = r.array("outline");
    for (std::size_t i = 0; i < outline.size(); ++i) {
        room.outline.push_back(decode_vec2(r, indexed("outline", i), outline[i]));
    }
    room.ceiling_height = r.number("ceiling_height");
    if (r.has("surfaces")) {
        const Json& surfaces = r.array("surfaces");
        for (std::size_t i = 0; i < surfaces.size(); ++i) {
            const Reader s(surfaces[i], code, indexed("surfaces", i));
            Surface surface;
            surface.kind = decode_enum<SurfaceKind>(s, "kind", parse_surface_kind);
            surface.wall_index = surface.kind == SurfaceKind::wall ? s.integer("index") : -1;
            surface.reflectance = s.number("reflectance");
            room.surfaces.push_back(surface);
        }
    }
    if (r.has("objects")) {
        const Json& objects = r.array("objects");
        for (std::size_t i = 0; i < objects.size(); ++i) {
            const Reader o(objects[i], code, indexed("objects", i));
            FurnitureObject obj;
            obj.kind = decode_enum<ObjectKind>(o, "kind", parse_object_kind);
            const Json& fp = o.array("footprint");
            if (fp.size() != 2) o.fail("footprint", "expected [[minx, miny], [maxx, maxy]]");
            obj.footprint.min = decode_vec2(o, "footprint", fp[0]);
            obj.footprint.max = decode_vec2(o, "footprint", fp[1]);
            obj.height = o.number("height");
            if (o.has("facing")) obj.facing = decode_vec2(o, "facing", o.at("facing"));
            room.objects.push_back(obj);
        }
    }
    room.function = decode_enum<RoomFunction>(r, "function", parse_room_function);
    return room;
}

Json encode(const LuminaireSpec& spec) {
    Json j = Json::object();
    j["name"] = spec.name;
    j["flux"] = spec.flux;
    j["distribution_exponent"] = spec.distribution_exponent;
    j["power"] = spec.power;
    j["mount"] = to_string(spec.mount);
    return j;
}

Json encode(const DesignPattern& p) {
    Json j = Json::object();
    j["id"] = p.id;
    j["family"] = to_string(p.family);
    j["target_function"] = to_string(p.target_function);
    Json pre = Json::array();
    for (const ObjectKind k : p.preconditions) pre.push_back(to_string(k));
    j["preconditions"] = pre;
    Json placement = Json::object();
    if (p.placement.anchor) placement["anchor"] = to_string(*p.placement.anchor);
    placement["mount_height"] = p.placement.mount_height;
    placement["flank_offset"] = p.placement.flank_offset;
    placement["tilt_degrees"] = p.placement.tilt_degrees;
    placement["table_offset"] = p.placement.table_offset;
    placement["table_height"] = p.placement.table_height;
    j["placement"] = placement;
    Json specs = Json::object();
    for (const auto& [role, spec] : p.specs) specs[role] = encode(spec);
    j["specs"] = specs;
    Json target = Json::object();
    target["ambient"] = p.target_lux.ambient;
    target["task"] = p.target_lux.task ? Json(*p.target_lux.task) : Json(nullptr);
    j["target_lux"] = target;
    return j;
}

Json encode(const PatternLibrary& library) {
    Json j = Json::object();
    j["version"] = library.version;
    Json patterns = Json::array();
    for (const DesignPattern& p : library.patterns) patterns.push_back(encode(p));
    j["patterns"] = patterns;
    return j;
}

PatternLibrary decode_library(const Json& j) {
    constexpr ErrorCode code = ErrorCode::MalformedPattern;
    const Reader r(j, code, "");
    PatternLibrary library;
    library.version = r.string_or("version", "");
    const Json& patterns = r.array("patterns");
    for (std::size_t i = 0; i < patterns.size(); ++i) {
        const Reader pr(patterns[i], code, indexed("patterns", i));
        DesignPattern p;
        p.id = pr.string("id");
        p.family = decode_enum<PatternFamily>(pr, "family", parse_pattern_family);
        p.target_function = decode_enum<RoomFunction>(pr, "target_function", parse_room_function);
        if (pr.has("preconditions")) {
            const Json& pre = pr.array("preconditions");
            for (std::size_t k = 0; k < pre.size(); ++k) {
                const auto kind = pre[k].is_string() ? parse_object_kind(pre[k].get<std::string>()) : std::nullopt;
                if (!kind) pr.fail(indexed("preconditions", k), "expected an object kind");
                p.preconditions.push_back(*kind);
            }
        }
        if (pr.has("placement")) {
            const Reader pl = pr.child("placement");
            if (pl.has("anchor")) p.placement.anchor = decode_enum<ObjectKind>(pl, "anchor", parse_object_kind);
            p.placement.mount_height = pl.number_or("mount_height", p.placement.mount_height);
            p.placement.flank_offset = pl.number_or("flank_offset", p.placement.flank_offset);
            p.placement.tilt_degrees = pl.number_or("tilt_degrees", p.placement.tilt_degrees);
            p.placement.table_offset = pl.number_or("table_offset", p.placement.table_offset);
            p.placement.table_height = pl.number_or("table_height", p.placement.table_height);
        }
        const Reader specs = pr.child("specs");
        for (const auto& [role, v] : specs.raw().items()) {
            p.specs[role] = decode_spec(Reader(v, code, specs.path(role)));
        }
        if (pr.has("target_lux")) {
            const Reader t = pr.child("target_lux");
            p.target_lux.ambient = t.number_or("ambient", p.target_lux.ambient);
            p.target_lux.task = t.optional_number("task");
        }
        library.patterns.push_back(std::move(p));
    }
    return library;
}

Json encode(const PlacedFixture& f, double dim) {
    Json j = Json::object();
    j["id"] = f.id;
    j["zone"] = f.zone;
    j["position"] = vec(f.position);
    j["axis"] = vec(f.axis);
    j["dimmable"] = f.dimmable;
    j["dim"] = dim;
    j["spec"] = encode(f.spec);
    return j;
}

Json encode(const LightingDesign& d) {
    Json j = Json::object();
    j["id"] = d.id;
    j["pattern_id"] = d.pattern_id;
    j["room_ref"] = d.room_ref;
    Json fixtures = Json::array();
    for (std::size_t i = 0; i < d.fixtures.size(); ++i) {
        fixtures.push_back(encode(d.fixtures[i], i < d.dims.size() ? d.dims[i] : 1.0));
    }
    j["fixtures"] = fixtures;
    j["room"] = encode(d.room);
    return j;
}

LightingDesign decode_design(const Json& j) {
    constexpr ErrorCode code = ErrorCode::MalformedDesign;
    const Reader r(j, code, "");
    LightingDesign d;
    d.id = r.string_or("id", "");
    d.pattern_id = r.string_or("pattern_id", "");
    d.room_ref = r.string_or("room_ref", "");
    const Json& fixtures = r.array("fixtures");
    for (std::size_t i = 0; i < fixtures.size(); ++i) {
        const Reader fr(fixtures[i], code, indexed("fixtures", i));
        PlacedFixture f;
        f.id = fr.string_or("id", "f" + std::to_string(i));
        f.zone = fr.string("zone");
        f.position = decode_vec3(fr, "position", fr.at("position"));
        if (fr.has("axis")) f.axis = decode_vec3(fr, "axis", fr.at("axis"));
        f.dimmable = fr.boolean_or("dimmable", true);
        f.spec = decode_spec(fr.child("spec"));
        d.dims.push_back(fr.number_or("dim", 1.0));
        d.fixtures.push_back(std::move(f));
    }
    try {
        d.room = decode_room(r.at("room"), code);
    } catch (const Error& e) {
        r.fail("room", e.detail());
    }
    return d;
}

Json encode(const DesignScore& s) {
    Json j = Json::object();
    j["average_lux"] = s.average_lux;
    j["min_lux"] = s.min_lux;
    j["max_lux"] = s.max_lux;
    j["uniformity"] = s.uniformity;
    j["task_lux"] = s.task_lux ? Json(*s.task_lux) : Json(nullptr);
    j["meets_ambient"] = s.meets_ambient;
    j["meets_task"] = s.meets_task;
    j["scalar_score"] = s.scalar_score;
    return j;
}

DesignScore decode_score(const Json& j) {
    const Reader r(j, ErrorCode::MalformedDocument, "");
    DesignScore s;
    s.average_lux = r.number("average_lux");
    s.min_lux = r.number("min_lux");
    s.max_lux = r.number("max_lux");
    s.uniformity = r.number("uniformity");
    s.task_lux = r.optional_number("task_lux");
    s.meets_ambient = r.boolean_or("meets_ambient", false);
    s.meets_task = r.boolean_or("meets_task", false);
    s.scalar_score = r.number("scalar_score");
    return s;
}

Json encode(const IlluminanceField& f) {
    Json j = Json::object();
    j["spacing"] = f.spacing;
    j["workplane_height"] = f.workplane_height;
    j["origin"] = vec(f.origin);
    j["columns"] = f.shape.columns;
    j["rows"] = f.shape.rows;
    Json stats = Json::object();
    stats["average"] = f.stats.average;
    stats["min"] = f.stats.min;
    stats["max"] = f.stats.max;
    stats["uniformity"] = f.stats.uniformity;
    j["stats"] = stats;
    Json samples = Json::array();
    for (std::size_t i = 0; i < f.points.size(); ++i) {
        samples.push_back(Json::array({f.points[i].x, f.points[i].y, f.lux[i]}));
    }
    j["samples"] = samples;
    return j;
}

IlluminanceField decode_field(const Json& j) {
    const Reader r(j, ErrorCode::MalformedDocument, "");
    IlluminanceField f;
    f.spacing = r.number("spacing");
    f.workplane_height = r.number("workplane_height");
    f.origin = decode_vec2(r, "origin", r.at("origin"));
    f.shape.columns = static_cast<std::size_t>(r.integer("columns"));
    f.shape.rows = static_cast<std::size_t>(r.integer("rows"));
    const Reader st = r.child("stats");
    f.stats.average = st.number("average");
    f.stats.min = st.number("min");
    f.stats.max = st.number("max");
    f.stats.uniformity = st.number("uniformity");
    const Json& samples = r.array("samples");
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const Vec3 s = decode_vec3(r, indexed("samples", i), samples[i]);
        f.points.push_back({s.x, s.y, f.workplane_height});
        f.lux.push_back(s.z);
    }
    return f;
}

Json encode(const ControlPolicy& p) {
    Json j = Json::object();
    j["name"] = p.name;
    j["sensor_point"] = vec(p.sensor_point);
    j["deadband"] = p.deadband ? Json(*p.deadband) : Json(nullptr);
    j["gain"] = p.gain;
    j["occupancy_hold"] = p.occupancy_hold;
    Json rules = Json::array();
    for (const Rule& r : p.rules) rules.push_back(encode_rule(r));
    j["rules"] = rules;
    return j;
}

ControlPolicy decode_policy(const Json& j) {
    constexpr ErrorCode code = ErrorCode::InvalidPolicy;
    const Reader r(j, code, "");
    ControlPolicy p;
    p.name = r.string_or("name", "");
    if (r.has("sensor_point")) p.sensor_point = decode_vec3(r, "sensor_point", r.at("sensor_point"));
    p.deadband = r.optional_number("deadband");
    p.gain = r.number_or("gain", kDefaultGain);
    p.occupancy_hold = r.number_or("occupancy_hold", 0.0);
    if (r.has("rules")) {
        const Json& rules = r.array("rules");
        for (std::size_t i = 0; i < rules.size(); ++i) {
            p.rules.push_back(decode_rule(Reader(rules[i], code, indexed("rules", i))));
        }
    }
    return p;
}

Json encode(const Schedule& s) {
    Json j = Json::object();
    j["horizon"] = s.horizon;
    j["dt"] = s.dt;
    Json occupancy = Json::object();
    for (const auto& [zone, intervals] : s.occupancy) {
        Json list = Json::array();
        for (const Interval& iv : intervals) list.push_back(Json::array({iv.start, iv.end}));
        occupancy[zone] = list;
    }
    j["occupancy"] = occupancy;
    Json daylight = Json::array();
    for (const DaylightSample& d : s.daylight) daylight.push_back(Json::array({d.minute, d.lux}));
    j["daylight"] = daylight;
    Json events = Json::array();
    for (const Event& e : s.events) events.push_back(encode_event(e));
    j["events"] = events;
    return j;
}

Schedule decode_schedule(const Json& j) {
    constexpr ErrorCode code = ErrorCode::InvalidSchedule;
    const Reader r(j, code, "");
    Schedule s;
    s.horizon = r.has("horizon") ? r.integer("horizon") : kMinutesPerDay;
    s.dt = r.has("dt") ? r.integer("dt") : 1;
    const auto minute_of = [&](std::string_view field, const Json& v) -> int {
        if (v.is_number_integer()) return v.get<int>();
        if (v.is_string()) {
            if (const auto m = parse_clock(v.get<std::string>())) return *m;
        }
        r.fail(field, "expected integer minutes or \"HH:MM\"");
    };
    if (r.has("occupancy")) {
        const Reader occ = r.child("occupancy");
        for (const auto& [zone, list] : occ.raw().items()) {
            if (!list.is_array()) occ.fail(zone, "expected a list of [start, end] intervals");
            auto& intervals = s.occupancy[zone];
            for (std::size_t i = 0; i < list.size(); ++i) {
                const std::string field = "occupancy." + zone + "[" + std::to_string(i) + "]";
                if (!list[i].is_array() || list[i].size() != 2) r.fail(field, "expected [start, end]");
                intervals.push_back({minute_of(field, list[i][0]), minute_of(field, list[i][1])});
            }
        }
    }
    if (r.has("daylight")) {
        const Json& daylight = r.array("daylight");
        for (std::size_t i = 0; i < daylight.size(); ++i) {
            const Json& d = daylight[i];
            const std::string field = indexed("daylight", i);
            if (!d.is_array() || d.size() != 2) r.fail(field, "expected [minute, lux]");
            const double minute = d[0].is_string() ? minute_of(field, d[0]) : element_number(r, field, d[0]);
            s.daylight.push_back({minute, element_number(r, field, d[1])});
        }
    }
    if (r.has("events")) {
        const Json& events = r.array("events");
        for (std::size_t i = 0; i < events.size(); ++i) {
            s.events.push_back(decode_event(Reader(events[i], code, indexed("events", i))));
        }
    }
    return s;
}

Json encode(const SimulationTrace& t) {
    Json j = Json::object();
    j["design_id"] = t.design_id;
    j["policy_name"] = t.policy_name;
    j["dt"] = t.dt;
    Json fixtures = Json::array();
    for (std::size_t f = 0; f < t.fixture_ids.size(); ++f) {
        Json fj = Json::object();
        fj["id"] = t.fixture_ids[f];
        fj["zone"] = t.fixture_zones[f];
        fj["power"] = t.fixture_power[f];
        fj["energy_wh"] = t.fixture_energy_wh[f];
        fixtures.push_back(fj);
    }
    j["fixtures"] = fixtures;
    j["total_energy_wh"] = t.total_energy_wh;
    Json ticks = Json::array();
    for (const TickRecord& r : t.ticks) {
        Json tj = Json::object();
        tj["tick"] = r.tick;
        tj["minute"] = r.minute;
        tj["dims"] = r.dims;
        tj["blind_angle"] = r.blind_angle;
        tj["sensor_lux"] = r.sensor_lux;
        tj["occupied"] = r.occupied_zones;
        Json events = Json::array();
        for (const Event& e : r.events) events.push_back(encode_event(e));
        tj["events"] = events;
        ticks.push_back(tj);
    }
    j["ticks"] = ticks;
    return j;
}

SimulationTrace decode_trace(const Json& j) {
    constexpr ErrorCode code = ErrorCode::MalformedDocument;
    const Reader r(j, code, "");
    SimulationTrace t;
    t.design_id = r.string_or("design_id", "");
    t.policy_name = r.string_or("policy_name", "");
    t.dt = r.integer("dt");
    const Json& fixtures = r.array("fixtures");
    for (std::size_t f = 0; f < fixtures.size(); ++f) {
        const Reader fr(fixtures[f], code, indexed("fixtures", f));
        t.fixture_ids.push_back(fr.string("id"));
        t.fixture_zones.push_back(fr.string("zone"));
        t.fixture_power.push_back(fr.number("power"));
        t.fixture_energy_wh.push_back(fr.number("energy_wh"));
    }
    t.total_energy_wh = r.number("total_energy_wh");
    const Json& ticks = r.array("ticks");
    for (std::size_t i = 0; i < ticks.size(); ++i) {
        const Reader tr(ticks[i], code, indexed("ticks", i));
        TickRecord rec;
        rec.tick = tr.integer("tick");
        rec.minute = tr.integer("minute");
        const Json& dims = tr.array("dims");
        if (dims.size() != t.fixture_ids.size()) tr.fail("dims", "length differs from the fixture list");
        for (const Json& d : dims) rec.dims.push_back(element_number(tr, "dims", d));
        rec.blind_angle = tr.number("blind_angle");
        rec.sensor_lux = tr.number("sensor_lux");
        for (const Json& z : tr.array("occupied")) {
            if (!z.is_string()) tr.fail("occupied", "expected zone names");
            rec.occupied_zones.push_back(z.get<std::string>());
        }
        const Json& events = tr.array("events");
        for (std::size_t e = 0; e < events.size(); ++e) {
            rec.events.push_back(decode_event(Reader(events[e], code, tr.path(indexed("events", e)))));
        }
        t.ticks.push_back(std::move(rec));
    }
    return t;
}

Json encode_summary(const SimulationTrace& t) {
    Json j = Json::object();
    j["design_id"] = t.design_id;
    j["policy_name"] = t.policy_name;
    j["ticks"] = t.ticks.size();
    j["dt"] = t.dt;
    Json per = Json::object();
    for (std::size_t f = 0; f < t.fixture_ids.size(); ++f) per[t.fixture_ids[f]] = t.fixture_energy_wh[f];
    j["fixture_energy_wh"] = per;
    j["total_energy_wh"] = t.total_energy_wh;
    return j;
}

Json encode(const SavingsReport& report) {
    Json j = Json::object();
    j["baseline"] = report.entries.empty() ? Json(nullptr) : Json(report.entries.front().name);
    Json list = Json::array();
    for (const SavingsEntry& e : report.entries) {
        Json ej = Json::object();
        ej["name"] = e.name;
        ej["energy_wh"] = e.energy_wh;
        ej["savings_percent"] = e.savings_percent;
        list.push_back(ej);
    }
    j["policies"] = list;
    return j;
}

SavingsReport decode_savings(const Json& j) {
    const Reader r(j, ErrorCode::MalformedDocument, "");
    SavingsReport report;
    const Json& list = r.array("policies");
    for (std::size_t i = 0; i < list.size(); ++i) {
        const Reader er(list[i], ErrorCode::MalformedDocument, indexed("policies", i));
        report.entries.push_back({er.string("name"), er.number("energy_wh"), er.number("savings_percent")});
    }
    return report;
}

void apply_fixture_edits(LightingDesign& design, const Json& j) {
    constexpr ErrorCode code = ErrorCode::MalformedDesign;
    const Reader r(j, code, "");
    const Json& edits = r.array("fixtures");
    for (std::size_t i = 0; i < edits.size(); ++i) {
        const Reader er(edits[i], code, indexed("fixtures", i));
        const std::string id = er.string("id");
        std::size_t k = 0;
        while (k < design.fixtures.size() && design.fixtures[k].id != id) ++k;
        if (k == design.fixtures.size()) throw Error(ErrorCode::UnknownFixture, "fixture '" + id + "' is not in the design");
        PlacedFixture& f = design.fixtures[k];
        if (er.has("position")) f.position = decode_vec3(er, "position", er.at("position"));
        if (er.has("axis")) f.axis = decode_vec3(er, "axis", er.at("axis"));
        if (er.has("spec")) f.spec = decode_spec(er.child("spec"));
        if (er.has("zone")) f.zone = er.string("zone");
        f.dimmable = er.boolean_or("dimmable", f.dimmable);
        if (er.has("dim")) design.dims[k] = er.number("dim");
    }
}

}  // namespace luxforge::codec
