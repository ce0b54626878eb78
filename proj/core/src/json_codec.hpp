#pragma once

// JSON encoding of every document type. Private to the core library so the
// public headers stay free of the JSON dependency.

#include <string>
#include <string_view>

#include <json.hpp>

#include "luxforge/control.hpp"
#include "luxforge/designer.hpp"
#include "luxforge/error.hpp"
#include "luxforge/geometry.hpp"
#include "luxforge/patterns.hpp"
#include "luxforge/photometry.hpp"

namespace luxforge::codec {

using Json = nlohmann::ordered_json;

/// Parses JSON text; syntax errors become Error(code).
Json parse(std::string_view text, ErrorCode code);

/// Two-space indented text with a trailing newline.
std::string dump(const Json& j);

Json encode(const RoomModel& room);
RoomModel decode_room(const Json& j, ErrorCode code = ErrorCode::MalformedDocument);

Json encode(const LuminaireSpec& spec);
Json encode(const DesignPattern& pattern);
Json encode(const PatternLibrary& library);
PatternLibrary decode_library(const Json& j);

Json encode(const PlacedFixture& fixture, double dim);
Json encode(const LightingDesign& design);
LightingDesign decode_design(const Json& j);
/// Applies {"fixtures": [{"id", position?, axis?, spec?, zone?, dimmable?, dim?}]} in place.
void apply_fixture_edits(LightingDesign& design, const Json& j);

Json encode(const DesignScore& score);
DesignScore decode_score(const Json& j);
Json encode(const IlluminanceField& field);
IlluminanceField decode_field(const Json& j);

Json encode(const ControlPolicy& policy);
ControlPolicy decode_policy(const Json& j);

Json encode(const Schedule& schedule);
Schedule decode_schedule(const Json& j);

Json encode(const SimulationTrace& trace);
SimulationTrace decode_trace(const Json& j);

/// Totals only (no per-tick records).
Json encode_summary(const SimulationTrace& trace);

Json encode(const SavingsReport& report);
SavingsReport decode_savings(const Json& j);

}  // namespace luxforge::codec
