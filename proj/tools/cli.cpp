#include "cli.hpp"

#include <csignal>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "luxforge/control.hpp"
#include "luxforge/designer.hpp"
#include "luxforge/error.hpp"
#include "luxforge/formats.hpp"
#include "luxforge/patterns.hpp"
#include "luxforge/photometry.hpp"
#include "luxforge/service.hpp"
#include "luxforge/workspace.hpp"

namespace luxforge::cli {

namespace fs = std::filesystem;

namespace {

constexpr int kDefaultPort = 8080;
constexpr const char* kWorkspaceEnv = "LUXFORGE_WORKSPACE";
constexpr const char* kDefaultWorkspace = "luxforge-workspace";

HttpServer* g_server = nullptr;

void on_signal(int) {
    if (g_server) g_server->stop();
}

// "-" or an empty path means standard output.
void emit(const std::string& path, const std::string& content, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << content;
    } else {
        write_text_file(path, content);
    }
}

struct GenerateArgs {
    std::string room;
    std::uint64_t seed = 0;
    std::string out;
};

struct IlluminanceArgs {
    std::string design;
    double grid = kDefaultGridSpacing;
    double workplane = kDefaultWorkplaneHeight;
    std::string format = "csv";
    std::string out;
};

struct SimulateArgs {
    std::string design;
    std::string policy;
    std::string schedule;
    std::string out;
    std::string json;
};

struct CompareArgs {
    std::string design;
    std::string baseline;
    std::vector<std::string> policies;
    std::string schedule;
    std::string json;
};

struct ServeArgs {
    int port = kDefaultPort;
    std::string host = "127.0.0.1";
    std::string workspace;
};

int do_generate(const GenerateArgs& a, std::ostream& out) {
    const RoomModel model = parse_room(read_text_file(a.room));
    const ValidatedRoom room = validate_room(model);
    const RankedDesigns ranked = generate_ranked(room, default_pattern_library(), a.seed, fs::path(a.room).stem().string());
    std::error_code ec;
    fs::create_directories(a.out, ec);
    if (ec) throw Error(ErrorCode::IoFailure, "cannot create " + a.out + ": " + ec.message());
    for (const LightingDesign& d : ranked.designs) {
        write_text_file(fs::path(a.out) / (d.id + ".json"), dump_design(d));
    }
    write_text_file(fs::path(a.out) / "ranking.json", dump_ranking(ranked, a.seed));
    for (std::size_t r = 0; r < ranked.order.size(); ++r) {
        const std::size_t i = ranked.order[r];
        out << r + 1 << ' ' << ranked.designs[i].id << ' ' << format_number(ranked.scores[i].scalar_score) << '\n';
    }
    return kExitOk;
}

int do_illuminance(const IlluminanceArgs& a, std::ostream& out) {
    const LightingDesign design = parse_design(read_text_file(a.design));
    const ValidatedRoom room = validate_room(design.room);
    check_design(design, room);
    const IlluminanceField field = illuminance_field(design.fixtures, design.dims, room, a.grid, a.workplane);
    std::string text;
    if (a.format == "csv") {
        text = heatmap_csv(field);
    } else if (a.format == "pgm") {
        text = heatmap_pgm(field);
    } else {
        text = dump_field(field);
    }
    emit(a.out, text, out);
    return kExitOk;
}

int do_simulate(const SimulateArgs& a, std::ostream& out) {
    const LightingDesign design = parse_design(read_text_file(a.design));
    const ControlPolicy policy = parse_policy(read_text_file(a.policy));
    const Schedule schedule = parse_schedule(read_text_file(a.schedule));
    const SimulationTrace trace = simulate(design, validate_room(design.room), policy, schedule);
    emit(a.out, trace_csv(trace), out);
    if (!a.json.empty()) write_text_file(a.json, dump_trace(trace));
    if (!a.out.empty() && a.out != "-") out << "total_energy_wh " << format_number(trace.total_energy_wh) << '\n';
    return kExitOk;
}

int do_compare(const CompareArgs& a, std::ostream& out) {
    const LightingDesign design = parse_design(read_text_file(a.design));
    std::vector<ControlPolicy> policies;
    policies.push_back(parse_policy(read_text_file(a.baseline)));
    for (const std::string& p : a.policies) policies.push_back(parse_policy(read_text_file(p)));
    const Schedule schedule = parse_schedule(read_text_file(a.schedule));
    const SavingsReport report = compare_policies(design, validate_room(design.room), policies, schedule);
    out << savings_table(report);
    if (!a.json.empty()) write_text_file(a.json, dump_savings(report));
    return kExitOk;
}

int do_serve(const ServeArgs& a, std::ostream& out, std::ostream& err) {
    std::string dir = a.workspace;
    if (dir.empty()) {
        const char* env = std::getenv(kWorkspaceEnv);
        dir = env && *env ? env : kDefaultWorkspace;
    }
    Workspace workspace(Workspace::restore(dir));
    Service service(workspace, fs::path(dir));
    HttpServer server(service);
    g_server = &server;
    std::signal(SIGINT, on_signal);
    std::signal(SIGTERM, on_signal);
    out << "serving on http://" << a.host << ':' << a.port << " workspace " << dir << std::endl;
    const bool ok = server.listen(a.host, a.port);
    g_server = nullptr;
    if (!ok) {
        err << "IoFailure: cannot listen on " << a.host << ':' << a.port << '\n';
        return kExitValidation;
    }
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"luxforge: lighting design and control workbench", "luxforge"};
    app.require_subcommand(1);

    GenerateArgs gen;
    auto* generate = app.add_subcommand("generate", "Generate one design per applicable pattern plus a ranking");
    generate->add_option("--room", gen.room, "Room document")->required();
    generate->add_option("--seed", gen.seed, "Seed used in design ids")->required();
    generate->add_option("--out", gen.out, "Output directory")->required();

    IlluminanceArgs ill;
    auto* illuminance = app.add_subcommand("illuminance", "Evaluate a design on the workplane grid");
    illuminance->add_option("--design", ill.design, "Design document")->required();
    illuminance->add_option("--grid", ill.grid, "Grid spacing (m)")->check(CLI::PositiveNumber);
    illuminance->add_option("--workplane", ill.workplane, "Workplane height (m)");
    illuminance->add_option("--format", ill.format, "csv, pgm or json")->check(CLI::IsMember({"csv", "pgm", "json"}));
    illuminance->add_option("--out", ill.out, "Output file (default stdout)");

    SimulateArgs sim;
    auto* simulate_cmd = app.add_subcommand("simulate", "Run a control policy over a schedule");
    simulate_cmd->add_option("--design", sim.design, "Design document")->required();
    simulate_cmd->add_option("--policy", sim.policy, "Policy document")->required();
    simulate_cmd->add_option("--schedule", sim.schedule, "Schedule document")->required();
    simulate_cmd->add_option("--out", sim.out, "Trace CSV (default stdout)");
    simulate_cmd->add_option("--json", sim.json, "Also write the trace document here");

    CompareArgs cmp;
    auto* compare = app.add_subcommand("compare", "Compare policies against a baseline");
    compare->add_option("--design", cmp.design, "Design document")->required();
    compare->add_option("--baseline", cmp.baseline, "Baseline policy")->required();
    compare->add_option("--policy", cmp.policies, "Policy to compare (repeatable)")->required();
    compare->add_option("--schedule", cmp.schedule, "Schedule document")->required();
    compare->add_option("--json", cmp.json, "Also write the savings report here");

    ServeArgs srv;
    auto* serve = app.add_subcommand("serve", "Run the HTTP API");
    serve->add_option("--port", srv.port, "Port")->check(CLI::Range(1, 65535));
    serve->add_option("--host", srv.host, "Bind address");
    serve->add_option("--workspace", srv.workspace, "Workspace directory (default $LUXFORGE_WORKSPACE)");

    std::string export_out;
    auto* patterns = app.add_subcommand("patterns", "Pattern library operations");
    patterns->require_subcommand(1);
    auto* pexport = patterns->add_subcommand("export", "Write the default pattern library");
    pexport->add_option("--out", export_out, "Output file (default stdout)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (generate->parsed()) return do_generate(gen, out);
        if (illuminance->parsed()) return do_illuminance(ill, out);
        if (simulate_cmd->parsed()) return do_simulate(sim, out);
        if (compare->parsed()) return do_compare(cmp, out);
        if (serve->parsed()) return do_serve(srv, out, err);
        if (pexport->parsed()) {
            emit(export_out, std::string(default_pattern_library_document()), out);
            return kExitOk;
        }
    } catch (const Error& e) {
        err << e.what() << '\n';
        return kExitValidation;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    }
    return kExitUsage;
}

}  // namespace luxforge::cli
