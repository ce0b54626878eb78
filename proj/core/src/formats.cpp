#include "luxforge/formats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json_codec.hpp"
#include "luxforge/error.hpp"

namespace luxforge {

RoomModel parse_room(std::string_view json) {
    return codec::decode_room(codec::parse(json, ErrorCode::MalformedDocument));
}
std::string dump_room(const RoomModel& room) { return codec::dump(codec::encode(room)); }

LightingDesign parse_design(std::string_view json) {
    return codec::decode_design(codec::parse(json, ErrorCode::MalformedDesign));
}
std::string dump_design(const LightingDesign& design) { return codec::dump(codec::encode(design)); }

ControlPolicy parse_policy(std::string_view json) {
    return codec::decode_policy(codec::parse(json, ErrorCode::InvalidPolicy));
}
std::string dump_policy(const ControlPolicy& policy) { return codec::dump(codec::encode(policy)); }

Schedule parse_schedule(std::string_view json) {
    return codec::decode_schedule(codec::parse(json, ErrorCode::InvalidSchedule));
}
std::string dump_schedule(const Schedule& schedule) { return codec::dump(codec::encode(schedule)); }

SimulationTrace parse_trace(std::string_view json) {
    return codec::decode_trace(codec::parse(json, ErrorCode::MalformedDocument));
}
std::string dump_trace(const SimulationTrace& trace) { return codec::dump(codec::encode(trace)); }

std::string dump_field(const IlluminanceField& field) { return codec::dump(codec::encode(field)); }
std::string dump_score(const DesignScore& score) { return codec::dump(codec::encode(score)); }
std::string dump_savings(const SavingsReport& report) { return codec::dump(codec::encode(report)); }

IlluminanceField parse_field(std::string_view json) {
    return codec::decode_field(codec::parse(json, ErrorCode::MalformedDocument));
}
DesignScore parse_score(std::string_view json) {
    return codec::decode_score(codec::parse(json, ErrorCode::MalformedDocument));
}
SavingsReport parse_savings(std::string_view json) {
    return codec::decode_savings(codec::parse(json, ErrorCode::MalformedDocument));
}

std::string dump_ranking(const RankedDesigns& ranked, std::uint64_t seed) {
    codec::Json j = codec::Json::object();
    j["seed"] = seed;
    codec::Json list = codec::Json::array();
    for (std::size_t r = 0; r < ranked.order.size(); ++r) {
        const std::size_t i = ranked.order[r];
        codec::Json e = codec::Json::object();
        e["rank"] = r + 1;
        e["design_id"] = ranked.designs[i].id;
        e["pattern_id"] = ranked.designs[i].pattern_id;
        e["file"] = ranked.designs[i].id + ".json";
        e["score"] = codec::encode(ranked.scores[i]);
        list.push_back(e);
    }
    j["ranking"] = list;
    return codec::dump(j);
}

std::string format_number(double v) {
    if (v == 0.0) v = 0.0;  // no "-0"
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string heatmap_csv(const IlluminanceField& field) {
    std::string out = "x,y,lux\n";
    for (std::size_t i = 0; i < field.points.size(); ++i) {
        out += format_number(field.points[i].x);
        out += ',';
        out += format_number(field.points[i].y);
        out += ',';
        out += format_number(field.lux[i]);
        out += '\n';
    }
    return out;
}

std::string heatmap_pgm(const IlluminanceField& field) {
    const std::size_t cols = field.shape.columns;
    const std::size_t rows = field.shape.rows;
    std::vector<int> pixels(cols * rows, 0);
    const double max = field.stats.max;
    for (std::size_t i = 0; i < field.points.size(); ++i) {
        const auto c = static_cast<long long>(std::llround((field.points[i].x - field.origin.x) / field.spacing - 0.5));
        const auto r = static_cast<long long>(std::llround((field.points[i].y - field.origin.y) / field.spacing - 0.5));
        if (c < 0 || r < 0 || static_cast<std::size_t>(c) >= cols || static_cast<std::size_t>(r) >= rows) continue;
        const int value = max > 0.0 ? static_cast<int>(std::lround(255.0 * field.lux[i] / max)) : 0;
        // image rows run from the largest y downward
        pixels[(rows - 1 - static_cast<std::size_t>(r)) * cols + static_cast<std::size_t>(c)] = value;
    }
    std::ostringstream os;
    os << "P2\n# luxforge illuminance max_lux=" << format_number(max) << "\n" << cols << ' ' << rows << "\n255\n";
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            if (c > 0) os << ' ';
            os << pixels[r * cols + c];
        }
        os << '\n';
    }
    return os.str();
}

std::string trace_csv(const SimulationTrace& trace) {
    std::string out = "tick,time,fixture_id,dim,blind_angle,sensor_lux,occupied,event\n";
    for (const TickRecord& rec : trace.ticks) {
        std::string events;
        for (const Event& e : rec.events) {
            if (!events.empty()) events += ';';
            events += to_string(e.kind);
            if (!e.zone.empty()) events += "(" + e.zone + ")";
        }
        for (std::size_t f = 0; f < trace.fixture_ids.size(); ++f) {
            const bool occupied = std::find(rec.occupied_zones.begin(), rec.occupied_zones.end(),
                                            trace.fixture_zones[f]) != rec.occupied_zones.end();
            out += std::to_string(rec.tick);
            out += ',';
            out += std::to_string(rec.minute);
            out += ',';
            out += trace.fixture_ids[f];
            out += ',';
            out += format_number(rec.dims[f]);
            out += ',';
            out += format_number(rec.blind_angle);
            out += ',';
            out += format_number(rec.sensor_lux);
            out += ',';
            out += occupied ? '1' : '0';
            out += ',';
            out += events;
            out += '\n';
        }
    }
    out += "\nfixture_id,energy_wh\n";
    for (std::size_t f = 0; f < trace.fixture_ids.size(); ++f) {
        out += trace.fixture_ids[f] + "," + format_number(trace.fixture_energy_wh[f]) + "\n";
    }
    out += "total," + format_number(trace.total_energy_wh) + "\n";
    return out;
}

std::string savings_table(const SavingsReport& report) {
    std::string out;
    char line[256];
    std::snprintf(line, sizeof line, "%-24s %14s %12s\n", "policy", "energy_wh", "savings");
    out += line;
    for (const SavingsEntry& e : report.entries) {
        std::snprintf(line, sizeof line, "%-24s %14.3f %11.1f%%\n", e.name.c_str(), e.energy_wh, e.savings_percent);
        out += line;
    }
    return out;
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoFailure, "cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw Error(ErrorCode::IoFailure, "error while reading " + path.string());
    return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoFailure, "cannot write " + path.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw Error(ErrorCode::IoFailure, "error while writing " + path.string());
}

}  // namespace luxforge
