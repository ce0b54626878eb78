#include "luxforge/service.hpp"

#include <vector>

#include "json_codec.hpp"
#include "luxforge/error.hpp"
#include "luxforge/formats.hpp"
#include "luxforge/patterns.hpp"

namespace luxforge {

namespace {

using codec::Json;

Response json_response(int status, const Json& j) { return {status, "application/json", codec::dump(j)}; }
Response text_response(std::string body, std::string type) { return {200, std::move(type), std::move(body)}; }

Response error_response(int status, std::string_view name, const std::string& message) {
    Json j = Json::object();
    j["error"] = name;
    j["message"] = message;
    return json_response(status, j);
}

std::vector<std::string_view> split_path(std::string_view path) {
    if (const auto q = path.find('?'); q != std::string_view::npos) path = path.substr(0, q);
    std::vector<std::string_view> parts;
    while (!path.empty()) {
        if (path.front() == '/') {
            path.remove_prefix(1);
            continue;
        }
        const auto slash = path.find('/');
        parts.push_back(path.substr(0, slash));
        if (slash == std::string_view::npos) break;
        path.remove_prefix(slash);
    }
    return parts;
}

Json body_object(std::string_view body, bool allow_empty = false) {
    if (allow_empty && body.find_first_not_of(" \t\r\n") == std::string_view::npos) return Json::object();
    Json j = codec::parse(body, ErrorCode::MalformedDocument);
    if (!j.is_object()) throw Error(ErrorCode::MalformedDocument, "request body must be an object");
    return j;
}

const Json& member(const Json& j, const char* key, ErrorCode code) {
    if (!j.contains(key) || j.at(key).is_null()) throw Error(code, std::string("field '") + key + "': missing");
    return j.at(key);
}

double number_or(const Json& j, const char* key, double fallback) {
    if (!j.contains(key) || j.at(key).is_null()) return fallback;
    if (!j.at(key).is_number()) throw Error(ErrorCode::MalformedDocument, std::string("field '") + key + "': expected a number");
    return j.at(key).get<double>();
}

std::uint64_t parse_seed(const Json& j) {
    const Json& v = member(j, "seed", ErrorCode::MalformedDocument);
    if (v.is_number_unsigned()) return v.get<std::uint64_t>();
    if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return static_cast<std::uint64_t>(v.get<std::int64_t>());
    throw Error(ErrorCode::MalformedDocument, "field 'seed': expected a non-negative integer");
}

class Router {
public:
    explicit Router(Workspace& ws) : ws_(ws) {}

    Response route(std::string_view method, const std::vector<std::string_view>& p, std::string_view body,
                   bool& mutated) {
        if (p.size() < 2 || p[0] != "api") return not_route();
        const std::string_view coll = p[1];

        if (coll == "rooms") {
            if (p.size() == 2) {
                if (method != "POST") return bad_method();
                mutated = true;
                return create_room(body);
            }
            if (p.size() == 3) {
                if (method != "GET") return bad_method();
                return get_room(std::string(p[2]));
            }
            if (p.size() == 4 && p[3] == "designs") {
                if (method != "POST") return bad_method();
                mutated = true;
                return generate(std::string(p[2]), body);
            }
        } else if (coll == "patterns" && p.size() == 2) {
            if (method != "GET") return bad_method();
            return text_response(std::string(default_pattern_library_document()), "application/json");
        } else if (coll == "designs" && p.size() >= 3) {
            const std::string id(p[2]);
            if (p.size() == 3) {
                if (method == "GET") return {200, "application/json", dump_design(*design(id))};
                if (method == "PATCH") {
                    mutated = true;
                    return patch_design(id, body);
                }
                return bad_method();
            }
            if (p.size() == 4) {
                if (method != "POST") return bad_method();
                if (p[3] == "illuminance") return illuminance(id, body);
                if (p[3] == "simulate") {
                    mutated = true;
                    return simulate(id, body);
                }
                if (p[3] == "compare") return compare(id, body);
            }
        } else if (coll == "traces" && p.size() == 3) {
            if (method != "GET") return bad_method();
            std::string_view name = p[2];
            if (name.ends_with(".csv")) {
                name.remove_suffix(4);
                return text_response(trace_csv(*trace(std::string(name))), "text/csv");
            }
            return {200, "application/json", dump_trace(*trace(std::string(name)))};
        }
        return not_route();
    }

private:
    static Response not_route() { return error_response(404, "NotFound", "no such endpoint"); }
    static Response bad_method() { return error_response(405, "MethodNotAllowed", "method not allowed here"); }

    std::shared_ptr<const RoomModel> room(const std::string& id) const {
        auto r = ws_.room(id);
        if (!r) throw Error(ErrorCode::NotFound, "room '" + id + "' does not exist");
        return r;
    }
    std::shared_ptr<const LightingDesign> design(const std::string& id) const {
        auto d = ws_.design(id);
        if (!d) throw Error(ErrorCode::NotFound, "design '" + id + "' does not exist");
        return d;
    }
    std::shared_ptr<const SimulationTrace> trace(const std::string& id) const {
        auto t = ws_.trace(id);
        if (!t) throw Error(ErrorCode::NotFound, "trace '" + id + "' does not exist");
        return t;
    }

    Response create_room(std::string_view body) {
        const std::string id = ws_.add_room(parse_room(body));
        Json j = Json::object();
        j["id"] = id;
        return json_response(200, j);
    }

    Response get_room(const std::string& id) const { return {200, "application/json", dump_room(*room(id))}; }

    Response generate(const std::string& room_id, std::string_view body) {
        const auto model = room(room_id);
        const std::uint64_t seed = parse_seed(body_object(body));
        const ValidatedRoom vr = validate_room(*model);
        const RankedDesigns ranked = generate_ranked(vr, default_pattern_library(), seed, room_id);
        std::vector<std::string> ids;
        for (const LightingDesign& d : ranked.designs) ids.push_back(ws_.add_design(d));
        Json j = Json::object();
        j["room_id"] = room_id;
        j["seed"] = seed;
        Json list = Json::array();
        for (std::size_t r = 0; r < ranked.order.size(); ++r) {
            const std::size_t i = ranked.order[r];
            Json e = Json::object();
            e["rank"] = r + 1;
            e["id"] = ids[i];
            e["design_id"] = ranked.designs[i].id;
            e["pattern_id"] = ranked.designs[i].pattern_id;
            e["score"] = codec::encode(ranked.scores[i]);
            e["design"] = codec::encode(ranked.designs[i]);
            list.push_back(e);
        }
        j["designs"] = list;
        return json_response(200, j);
    }

    Response patch_design(const std::string& id, std::string_view body) {
        LightingDesign edited = *design(id);
        codec::apply_fixture_edits(edited, codec::parse(body, ErrorCode::MalformedDesign));
        ws_.replace_design(id, edited);
        return {200, "application/json", dump_design(edited)};
    }

    Response illuminance(const std::string& id, std::string_view body) const {
        const auto d = design(id);
        const Json req = body_object(body, true);
        const double spacing = number_or(req, "spacing", kDefaultGridSpacing);
        const double height = number_or(req, "workplane_height", kDefaultWorkplaneHeight);
        const ValidatedRoom vr = validate_room(d->room);
        const IlluminanceField field = illuminance_field(d->fixtures, d->dims, vr, spacing, height);
        const std::string format = req.contains("format") && req.at("format").is_string()
                                       ? req.at("format").get<std::string>()
                                       : "json";
        if (format == "csv") return text_response(heatmap_csv(field), "text/csv");
        if (format == "pgm") return text_response(heatmap_pgm(field), "image/x-portable-graymap");
        if (format != "json") throw Error(ErrorCode::InvalidArgument, "format must be json, csv or pgm");
        return {200, "application/json", dump_field(field)};
    }

    Response simulate(const std::string& id, std::string_view body) {
        const auto d = design(id);
        const Json req = body_object(body);
        const ControlPolicy policy = codec::decode_policy(member(req, "policy", ErrorCode::InvalidPolicy));
        const Schedule schedule = codec::decode_schedule(member(req, "schedule", ErrorCode::InvalidSchedule));
        SimulationTrace trace = luxforge::simulate(*d, validate_room(d->room), policy, schedule);
        Json summary = codec::encode_summary(trace);
        const std::string trace_id = ws_.add_trace(std::move(trace));
        Json j = Json::object();
        j["trace_id"] = trace_id;
        j["summary"] = summary;
        return json_response(200, j);
    }

    Response compare(const std::string& id, std::string_view body) const {
        const auto d = design(id);
        const Json req = body_object(body);
        const Json& list = member(req, "policies", ErrorCode::InvalidPolicy);
        if (!list.is_array()) throw Error(ErrorCode::InvalidPolicy, "field 'policies': expected an array");
        std::vector<ControlPolicy> policies;
        for (const Json& p : list) policies.push_back(codec::decode_policy(p));
        const Schedule schedule = codec::decode_schedule(member(req, "schedule", ErrorCode::InvalidSchedule));
        return {200, "application/json",
                dump_savings(compare_policies(*d, validate_room(d->room), policies, schedule))};
    }

    Workspace& ws_;
};

}  // namespace

int status_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::NotFound: return 404;
        case ErrorCode::NoApplicablePattern: return 422;
        case ErrorCode::IoFailure: return 500;
        default: return 400;
    }
}

Service::Service(Workspace& workspace, std::optional<std::filesystem::path> autosave_dir)
    : workspace_(workspace), autosave_dir_(std::move(autosave_dir)) {}

void Service::autosave() const {
    if (autosave_dir_) workspace_.persist(*autosave_dir_);
}

Response Service::handle(std::string_view method, std::string_view path, std::string_view body) const {
    Router router(workspace_);
    bool mutated = false;
    try {
        Response r = router.route(method, split_path(path), body, mutated);
        if (mutated && r.status == 200) autosave();
        return r;
    } catch (const Error& e) {
        return error_response(status_for(e.code()), e.name(), e.detail());
    } catch (const std::exception& e) {
        return error_response(500, "InternalError", e.what());
    }
}

}  // namespace luxforge
