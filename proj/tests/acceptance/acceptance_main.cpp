// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.

#include <httplib.h>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <numbers>
#include <set>
#include <string>

#include "luxforge/control.hpp"
#include "luxforge/designer.hpp"
#include "luxforge/formats.hpp"
#include "luxforge/patterns.hpp"
#include "luxforge/service.hpp"
#include "oracle.hpp"
#include "scenarios.hpp"

using namespace luxforge;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Outcome {
    bool ok = true;
    std::string note;

    void check(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            note = what;
        }
    }
};

int failures = 0;

void criterion(const std::string& name, double budget_seconds, const std::function<void(Outcome&)>& body) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(o);
    } catch (const std::exception& e) {
        o.ok = false;
        o.note = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (budget_seconds > 0 && secs >= budget_seconds) o.check(false, "runtime over budget");
    if (!o.ok) ++failures;
    std::printf("%s  %-28s %8.3f s  %s\n", o.ok ? "PASS" : "FAIL", name.c_str(), secs, o.note.c_str());
    std::fflush(stdout);
}

bool rel_close(double a, double b, double tol) { return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b)); }

void case_study(Outcome& o) {
    const ValidatedRoom room = validate_room(scenarios::bedroom());
    const RankedDesigns ranked = generate_ranked(room, default_pattern_library(), 42, "bedroom");
    std::set<std::string> patterns;
    std::set<std::string> ids;
    for (const LightingDesign& d : ranked.designs) {
        patterns.insert(d.pattern_id);
        ids.insert(d.id);
        check_design(d, room);
    }
    const std::set<std::string> expected{"ceiling_central", "flank_bed", "flank_tv",
                                         "above_bed",       "above_tv",  "guideline_bedroom"};
    o.check(ranked.designs.size() >= 5, "fewer than 5 designs");
    o.check(ids.size() == ranked.designs.size(), "design ids are not distinct");
    o.check(patterns == expected, "pattern family set differs");
    if (o.ok) o.note = std::to_string(ranked.designs.size()) + " designs";
}

void photometric_laws(Outcome& o) {
    const ValidatedRoom room = validate_room(scenarios::rect_room(4, 3, 3));
    for (const double m : {0.0, 1.0, 3.0}) {
        PlacedFixture f = scenarios::ceiling_fixture("f", {2, 1.5, 3}, 1000, 10, "ambient", m);
        const std::vector<PlacedFixture> fx{f};
        const std::vector<double> dims{1.0};
        const double e1 = direct_illuminance(fx, dims, room, {2, 1.5, 2.0});
        const double e2 = direct_illuminance(fx, dims, room, {2, 1.5, 1.0});
        o.check(rel_close(e2, e1 / 4.0, 1e-12), "inverse-square");
        // theta = 0 (axis aimed at the receiver), receiver tilted by xi: E = I0 cos(xi) / d^2
        const double d = 1.5;
        for (const double xi_deg : {0.0, 30.0, 60.0}) {
            const double xi = xi_deg * std::numbers::pi / 180.0;
            const Vec3 p{2 + d * std::sin(xi), 1.5, 3 - d * std::cos(xi)};
            PlacedFixture aimed = f;
            aimed.axis = (p - f.position) * (1.0 / d);
            const std::vector<PlacedFixture> one{aimed};
            const double e = direct_illuminance(one, dims, room, p);
            const double expected = peak_intensity(f.spec) * std::cos(xi) / (d * d);
            o.check(rel_close(e, expected, 1e-12), "cosine scaling");
        }
        const double flux = oracle::hemisphere_flux(peak_intensity(f.spec), m, 2000, 64);
        o.check(std::abs(flux - 1000.0) <= 1e-3 * 1000.0, "hemisphere flux");
    }
}

void oracle_equivalence(Outcome& o) {
    struct Case {
        RoomModel room;
        std::vector<PlacedFixture> fixtures;
    };
    std::vector<Case> cases;
    cases.push_back({scenarios::rect_room(),
                     {scenarios::ceiling_fixture("a", {1, 1, 2.5}, 900, 9),
                      scenarios::ceiling_fixture("b", {3, 2, 2.5}, 1500, 14, "ambient", 2)}});
    cases.push_back({scenarios::l_room(),
                     {scenarios::ceiling_fixture("a", {1, 1, 2.7}, 1200, 12),
                      scenarios::ceiling_fixture("b", {3, 0.5, 2.7}, 700, 7, "ambient", 3),
                      scenarios::ceiling_fixture("c", {0.5, 3.5, 2.7}, 500, 5)}});
    const ValidatedRoom bed = validate_room(scenarios::bedroom());
    std::vector<PlacedFixture> all;
    int n = 0;
    for (const LightingDesign& d : generate_designs(bed, default_pattern_library(), 1)) {
        for (PlacedFixture f : d.fixtures) {
            f.id = "x" + std::to_string(n++);
            all.push_back(f);
        }
    }
    cases.push_back({scenarios::bedroom(), all});
    std::size_t samples = 0;
    for (const Case& c : cases) {
        const ValidatedRoom room = validate_room(c.room);
        const std::vector<double> dims(c.fixtures.size(), 1.0);
        const IlluminanceField f = illuminance_field(c.fixtures, dims, room, 0.1, 0.8);
        const oracle::Field g = oracle::field(oracle::make_scene(c.room, c.fixtures, dims), 0.1, 0.8);
        o.check(f.points.size() == g.points.size(), "sample count differs");
        if (f.points.size() != g.points.size()) return;
        for (std::size_t i = 0; i < f.points.size(); ++i) {
            o.check(f.points[i].x == g.points[i][0] && f.points[i].y == g.points[i][1], "sample position differs");
            o.check(rel_close(f.lux[i], g.lux[i], 1e-9),
                    "lux differs at (" + std::to_string(f.points[i].x) + ", " + std::to_string(f.points[i].y) +
                        "): " + std::to_string(f.lux[i]) + " vs " + std::to_string(g.lux[i]));
        }
        samples += f.points.size();
    }
    if (o.ok) o.note = std::to_string(samples) + " samples";
}

void energy_claim(Outcome& o) {
    const auto s = scenarios::energy_scenario();
    const std::vector<ControlPolicy> pair{s.baseline, s.smart};
    const SavingsReport r = compare_policies(s.design, validate_room(s.design.room), pair, s.schedule);
    const double savings = r.entries.at(1).savings_percent;
    o.check(std::abs(savings - 66.7) <= 0.1, "savings outside 66.7 +- 0.1");
    o.check(savings > 30.0, "savings below 30%");
    char buf[64];
    std::snprintf(buf, sizeof buf, "savings %.3f%%", savings);
    if (o.ok) o.note = buf;
}

void constant_illuminance(Outcome& o) {
    const auto s = scenarios::convergence_scenario();
    const SimulationTrace t = simulate(s.design, validate_room(s.design.room), s.policy, s.schedule);
    o.check(t.ticks.size() == 120, "run is not 120 ticks");
    int entered = -1;
    for (std::size_t k = 0; k < t.ticks.size(); ++k) {
        const bool in_band = std::abs(t.ticks[k].sensor_lux - 300.0) <= 30.0;
        if (in_band && entered < 0) entered = static_cast<int>(k);
        if (entered >= 0 && !in_band) o.check(false, "left the deadband at tick " + std::to_string(k));
    }
    o.check(entered >= 0 && entered < 20, "did not enter the deadband within 20 ticks");
    if (o.ok) o.note = "entered at tick " + std::to_string(entered);
}

void linkage_suite(Outcome& o) {
    const auto s = scenarios::linkage_scenario();
    const SimulationTrace t = simulate(s.design, validate_room(s.design.room), s.policy, s.schedule);
    const auto dim = [&](int minute, std::size_t f) { return t.ticks.at(static_cast<std::size_t>(minute)).dims[f]; };
    // closet
    o.check(dim(599, 0) == 0.0 && dim(600, 0) == 1.0 && dim(609, 0) == 1.0 && dim(610, 0) == 0.0, "closet");
    // dresser mirror 07:00-07:30 at 0.8
    o.check(dim(419, 1) == 0.0 && dim(420, 1) == 0.8 && dim(449, 1) == 0.8 && dim(450, 1) == 0.0, "dresser");
    // night-wake low light at 03:00
    o.check(dim(179, 2) == 0.0 && dim(180, 2) == kNightWakeDim && dim(180, 2) == 0.15, "night-wake");
    // enter/leave the hall
    o.check(dim(999, 3) == 0.0 && dim(1000, 3) == 1.0 && dim(1004, 3) == 1.0 && dim(1005, 3) == 0.0, "enter/leave");
}

int sh(const std::string& command) { return std::system((command + " >/dev/null 2>&1").c_str()); }

void determinism(Outcome& o) {
    const std::string bin = scenarios::cli_path();
    const std::string dir = scenarios::temp_dir("accept-det");
    const auto s = scenarios::energy_scenario();
    write_text_file(dir + "/policy.json", dump_policy(s.smart));
    write_text_file(dir + "/schedule.json", dump_schedule(s.schedule));
    for (const char* run : {"a", "b"}) {
        const std::string out = dir + "/" + run;
        o.check(sh(bin + " generate --room " + scenarios::data_path("bedroom.json") + " --seed 42 --out " + out) == 0,
                "generate failed");
        o.check(sh(bin + " illuminance --design " + out + "/s42-flank_bed.json --out " + out + "/field.csv") == 0,
                "illuminance failed");
        o.check(sh(bin + " illuminance --design " + out + "/s42-flank_bed.json --format pgm --out " + out +
                   "/field.pgm") == 0,
                "illuminance pgm failed");
        write_text_file(out + "/design.json", dump_design(s.design));
        o.check(sh(bin + " simulate --design " + out + "/design.json --policy " + dir + "/policy.json --schedule " +
                   dir + "/schedule.json --out " + out + "/trace.csv --json " + out + "/trace.json") == 0,
                "simulate failed");
    }
    std::size_t files = 0;
    for (const auto& e : fs::directory_iterator(dir + "/a")) {
        const fs::path other = fs::path(dir) / "b" / e.path().filename();
        o.check(fs::exists(other) && read_text_file(e.path()) == read_text_file(other),
                e.path().filename().string() + " differs");
        ++files;
    }
    if (o.ok) o.note = std::to_string(files) + " files compared";
}

void api_contract(Outcome& o) {
    const std::string dir = scenarios::temp_dir("accept-api");
    Workspace ws;
    const Service svc(ws, dir);
    HttpServer server(svc);
    const int port = server.start();
    o.check(port > 0, "server did not start");
    if (port <= 0) return;
    httplib::Client c("127.0.0.1", port);
    const auto expect = [&](const httplib::Result& r, int status, const std::string& what) -> json {
        if (!r) {
            o.check(false, what + ": no response");
            return json();
        }
        o.check(r->status == status, what + ": status " + std::to_string(r->status));
        if (r->get_header_value("Content-Type").rfind("application/json", 0) == 0) return json::parse(r->body);
        return json(r->body);
    };

    const RoomModel bedroom = scenarios::bedroom();
    const std::string room_id = expect(c.Post("/api/rooms", dump_room(bedroom), "application/json"), 200, "create room")["id"];
    const auto room_doc = c.Get("/api/rooms/" + room_id);
    o.check(room_doc && parse_room(room_doc->body) == bedroom, "room does not round-trip");

    const json gen = expect(c.Post("/api/rooms/" + room_id + "/designs", R"({"seed": 42})", "application/json"), 200,
                            "generate");
    o.check(gen["designs"].size() == 6, "generate did not return 6 designs");
    const std::string design_id = gen["designs"][0]["id"];
    const auto design_doc = c.Get("/api/designs/" + design_id);
    o.check(design_doc && json::parse(design_doc->body) == gen["designs"][0]["design"], "design does not round-trip");

    const json field = expect(c.Post("/api/designs/" + design_id + "/illuminance", R"({"spacing": 0.5})",
                                     "application/json"),
                              200, "illuminance");
    o.check(field.contains("samples") && !field["samples"].empty(), "illuminance has no samples");

    const auto s = scenarios::energy_scenario();
    LightingDesign energy = s.design;
    const std::string energy_room = expect(c.Post("/api/rooms", dump_room(energy.room), "application/json"), 200,
                                           "create energy room")["id"];
    energy.room_ref = energy_room;
    const std::string energy_id = ws.add_design(energy);
    json sim_req;
    sim_req["policy"] = json::parse(dump_policy(s.smart));
    sim_req["schedule"] = json::parse(dump_schedule(s.schedule));
    const json sim = expect(c.Post("/api/designs/" + energy_id + "/simulate", sim_req.dump(), "application/json"), 200,
                            "simulate");
    const std::string trace_id = sim["trace_id"];
    const auto trace_doc = c.Get("/api/traces/" + trace_id);
    o.check(trace_doc && dump_trace(parse_trace(trace_doc->body)) == trace_doc->body, "trace does not round-trip");
    const auto trace_csv_doc = c.Get("/api/traces/" + trace_id + ".csv");
    o.check(trace_csv_doc && trace_csv_doc->status == 200, "trace csv");

    json cmp_req;
    cmp_req["policies"] = json::array({json::parse(dump_policy(s.baseline)), json::parse(dump_policy(s.smart))});
    cmp_req["schedule"] = sim_req["schedule"];
    const json cmp = expect(c.Post("/api/designs/" + energy_id + "/compare", cmp_req.dump(), "application/json"), 200,
                            "compare");
    o.check(std::abs(cmp["policies"][1]["savings_percent"].get<double>() - 66.7) <= 0.1, "compare savings");

    RoomModel bow = scenarios::rect_room();
    bow.outline = {{0, 0}, {2, 2}, {2, 0}, {0, 2}};
    const json bad = expect(c.Post("/api/rooms", dump_room(bow), "application/json"), 400, "invalid room");
    o.check(bad.value("error", "") == "SelfIntersectingOutline", "invalid room error name");
    expect(c.Get("/api/designs/design-999"), 404, "unknown design");
    RoomModel corridor = scenarios::rect_room(6, 1.2);
    corridor.function = RoomFunction::corridor;
    const std::string cid = expect(c.Post("/api/rooms", dump_room(corridor), "application/json"), 200, "corridor")["id"];
    expect(c.Post("/api/rooms/" + cid + "/designs", R"({"seed": 1})", "application/json"), 422, "no pattern");
    server.stop();

    // persist/restore
    const WorkspaceSnapshot restored = Workspace::restore(dir);
    o.check(restored.same_contents(ws.snapshot()), "restored workspace differs");
}

}  // namespace

int main() {
    criterion("case-study", 1.0, case_study);
    criterion("photometric-laws", 1.0, photometric_laws);
    criterion("oracle-equivalence", 5.0, oracle_equivalence);
    criterion("energy-savings", 1.0, energy_claim);
    criterion("constant-illuminance", 0, constant_illuminance);
    criterion("linkage-suite", 0, linkage_suite);
    criterion("cli-determinism", 0, determinism);
    criterion("api-contract", 0, api_contract);
    std::printf("%s: %d failing\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
    return failures == 0 ? 0 : 1;
}
