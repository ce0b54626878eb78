#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "luxforge/control.hpp"
#include "luxforge/designer.hpp"
#include "luxforge/geometry.hpp"
#include "luxforge/photometry.hpp"

namespace luxforge {

// JSON documents. Parsers raise the document's error code (MalformedDocument,
// MalformedDesign, InvalidPolicy, InvalidSchedule) naming the bad field; they
// check structure only, semantic validation is left to the engine.
// Dumpers emit a stable field order with a trailing newline.

RoomModel parse_room(std::string_view json);
std::string dump_room(const RoomModel& room);

LightingDesign parse_design(std::string_view json);
std::string dump_design(const LightingDesign& design);

ControlPolicy parse_policy(std::string_view json);
std::string dump_policy(const ControlPolicy& policy);

Schedule parse_schedule(std::string_view json);
std::string dump_schedule(const Schedule& schedule);

SimulationTrace parse_trace(std::string_view json);
std::string dump_trace(const SimulationTrace& trace);

std::string dump_field(const IlluminanceField& field);
IlluminanceField parse_field(std::string_view json);
std::string dump_score(const DesignScore& score);
DesignScore parse_score(std::string_view json);
std::string dump_savings(const SavingsReport& report);
SavingsReport parse_savings(std::string_view json);

/// Ranking file written next to generated designs: best first, with scores.
std::string dump_ranking(const RankedDesigns& ranked, std::uint64_t seed);

/// Formats a number with 12 significant digits, as used by the CSV exports.
std::string format_number(double v);

/// `x,y,lux` header then one row per sample in grid order.
std::string heatmap_csv(const IlluminanceField& field);

/// Plain PGM (P2), top row = largest y; max lux maps to 255 and cells without a sample to 0.
std::string heatmap_pgm(const IlluminanceField& field);

/// One row per tick per fixture, then a blank line and a per-fixture energy summary.
std::string trace_csv(const SimulationTrace& trace);

/// Fixed-width table: policy name, energy (Wh), savings (%).
std::string savings_table(const SavingsReport& report);

/// Whole-file helpers raising IoFailure with the path.
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view content);

}  // namespace luxforge
