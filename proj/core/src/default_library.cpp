#include "luxforge/patterns.hpp"

namespace luxforge {

namespace {

// Residential bedroom patterns: one ceiling scenario, four wall-mounted
// scenarios anchored on the bed or the TV, and the ceiling-plus-table-lamps
// recommendation for bedrooms.
constexpr std::string_view kDefaultLibrary = R"json({
  "version": "residential-1",
  "patterns": [
    {
      "id": "ceiling_central",
      "family": "ceiling_central",
      "target_function": "bedroom",
      "preconditions": [],
      "placement": {},
      "specs": {
        "ceiling": {"name": "ceiling-1600", "flux": 1600, "distribution_exponent": 1, "power": 15, "mount": "ceiling"}
      },
      "target_lux": {"ambient": 100, "task": null}
    },
    {
      "id": "flank_bed",
      "family": "flank_object",
      "target_function": "bedroom",
      "preconditions": ["bed"],
      "placement": {"anchor": "bed", "mount_height": 1.2, "flank_offset": 0.3, "tilt_degrees": 30},
      "specs": {
        "wall": {"name": "sconce-800", "flux": 800, "distribution_exponent": 3, "power": 8, "mount": "wall"}
      },
      "target_lux": {"ambient": 100, "task": 300}
    },
    {
      "id": "flank_tv",
      "family": "flank_object",
      "target_function": "bedroom",
      "preconditions": ["tv"],
      "placement": {"anchor": "tv", "mount_height": 1.2, "flank_offset": 0.3, "tilt_degrees": 30},
      "specs": {
        "wall": {"name": "sconce-800", "flux": 800, "distribution_exponent": 3, "power": 8, "mount": "wall"}
      },
      "target_lux": {"ambient": 100, "task": 300}
    },
    {
      "id": "above_bed",
      "family": "above_object",
      "target_function": "bedroom",
      "preconditions": ["bed"],
      "placement": {"anchor": "bed", "mount_height": 1.8, "tilt_degrees": 30},
      "specs": {
        "wall": {"name": "sconce-800", "flux": 800, "distribution_exponent": 3, "power": 8, "mount": "wall"}
      },
      "target_lux": {"ambient": 100, "task": 300}
    },
    {
      "id": "above_tv",
      "family": "above_object",
      "target_function": "bedroom",
      "preconditions": ["tv"],
      "placement": {"anchor": "tv", "mount_height": 1.8, "tilt_degrees": 30},
      "specs": {
        "wall": {"name": "sconce-800", "flux": 800, "distribution_exponent": 3, "power": 8, "mount": "wall"}
      },
      "target_lux": {"ambient": 100, "task": 300}
    },
    {
      "id": "guideline_bedroom",
      "family": "guideline_bedroom",
      "target_function": "bedroom",
      "preconditions": ["bed"],
      "placement": {"anchor": "bed", "table_offset": 0.3, "table_height": 0.6},
      "specs": {
        "ceiling": {"name": "ceiling-1600", "flux": 1600, "distribution_exponent": 1, "power": 15, "mount": "ceiling"},
        "table": {"name": "table-470", "flux": 470, "distribution_exponent": 1, "power": 5, "mount": "table"}
      },
      "target_lux": {"ambient": 100, "task": 300}
    }
  ]
}
)json";

}  // namespace

std::string_view default_pattern_library_document() { return kDefaultLibrary; }

const PatternLibrary& default_pattern_library() {
    static const PatternLibrary library = load_pattern_library(kDefaultLibrary);
    return library;
}

}  // namespace luxforge
