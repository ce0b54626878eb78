#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "luxforge/error.hpp"
#include "luxforge/patterns.hpp"
#include "scenarios.hpp"

using namespace luxforge;

namespace {

FurnitureObject object(ObjectKind kind, Vec2 min, Vec2 max, double height) {
    FurnitureObject o;
    o.kind = kind;
    o.footprint = {min, max};
    o.height = height;
    return o;
}

ErrorCode load_error(std::string_view doc) {
    try {
        load_pattern_library(doc);
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "library loaded unexpectedly";
    return ErrorCode::InvalidArgument;
}

std::vector<std::string> ids(const std::vector<DesignPattern>& patterns) {
    std::vector<std::string> out;
    for (const auto& p : patterns) out.push_back(p.id);
    return out;
}

}  // namespace

TEST(AnalyzeRoom, BedAgainstNorthWall) {
    RoomModel r = scenarios::rect_room();
    r.objects.push_back(object(ObjectKind::bed, {1, 1.4}, {2, 3}, 0.5));
    const RoomAnalysis a = analyze_room(validate_room(r));
    ASSERT_EQ(a.anchors.size(), 1u);
    EXPECT_EQ(a.anchors[0].kind, ObjectKind::bed);
    EXPECT_EQ(a.anchors[0].center, (Vec2{1.5, 2.2}));
    EXPECT_EQ(a.anchors[0].wall_index, 2);  // edge (4,3)->(0,3)
    EXPECT_EQ(a.anchors[0].wall_distance, 0.0);
    EXPECT_TRUE(a.anchors[0].adjacent);
}

TEST(AnalyzeRoom, EmptySquareRoom) {
    const RoomAnalysis a = analyze_room(validate_room(scenarios::rect_room(3, 3)));
    EXPECT_TRUE(a.anchors.empty());
    EXPECT_EQ(a.free_ceiling_centroid, (Vec2{1.5, 1.5}));
    EXPECT_EQ(a.walls.size(), 4u);
}

TEST(AnalyzeRoom, CenteredBedIsNotAdjacent) {
    RoomModel r = scenarios::rect_room(4, 4);
    r.objects.push_back(object(ObjectKind::bed, {1.2, 0.7}, {2.8, 3.0}, 0.5));
    const RoomAnalysis a = analyze_room(validate_room(r));
    ASSERT_EQ(a.anchors.size(), 1u);
    EXPECT_NEAR(a.anchors[0].wall_distance, 0.7, 1e-12);
    EXPECT_FALSE(a.anchors[0].adjacent);
    EXPECT_EQ(a.anchors[0].wall_index, 0);
}

TEST(AnalyzeRoom, AdjacencyThreshold) {
    RoomModel r = scenarios::rect_room();
    r.objects.push_back(object(ObjectKind::dresser, {1, 0.05}, {2, 0.5}, 0.9));
    r.objects.push_back(object(ObjectKind::desk, {3, 1}, {3.94, 2}, 0.7));
    const RoomAnalysis a = analyze_room(validate_room(r));
    ASSERT_EQ(a.anchors.size(), 2u);
    EXPECT_TRUE(a.anchors[0].adjacent);
    EXPECT_FALSE(a.anchors[1].adjacent);
}

TEST(AnalyzeRoom, CentroidOutsideNonConvexFallsBackInside) {
    RoomModel r;
    // U shape whose area centroid lies in the gap between the arms
    r.outline = {{0, 0}, {5, 0}, {5, 4}, {4, 4}, {4, 1}, {1, 1}, {1, 4}, {0, 4}};
    r.ceiling_height = 2.5;
    const ValidatedRoom room = validate_room(r);
    const Vec2 c = polygon_centroid(room.model().outline);
    ASSERT_FALSE(point_in_room(room, c));
    const RoomAnalysis a = analyze_room(room);
    EXPECT_TRUE(point_in_room(room, a.free_ceiling_centroid));
}

TEST(AnalyzeRoom, NightstandsAndOtherAreNotAnchors) {
    const RoomAnalysis a = analyze_room(validate_room(scenarios::bedroom()));
    ASSERT_EQ(a.anchors.size(), 2u);
    EXPECT_EQ(a.anchors[0].kind, ObjectKind::bed);
    EXPECT_EQ(a.anchors[1].kind, ObjectKind::tv);
    EXPECT_EQ(a.anchors[1].wall_index, 0);
}

TEST(PatternLibrary, DefaultHasSixPatterns) {
    const PatternLibrary& lib = default_pattern_library();
    EXPECT_EQ(ids(lib.patterns), (std::vector<std::string>{"ceiling_central", "flank_bed", "flank_tv", "above_bed",
                                                           "above_tv", "guideline_bedroom"}));
    EXPECT_EQ(lib.find("flank_tv")->placement.anchor, ObjectKind::tv);
    EXPECT_EQ(lib.find("guideline_bedroom")->family, PatternFamily::guideline_bedroom);
    EXPECT_EQ(lib.find("nope"), nullptr);
}

TEST(PatternLibrary, DefaultConstants) {
    const PatternLibrary& lib = default_pattern_library();
    const DesignPattern& flank = *lib.find("flank_bed");
    EXPECT_EQ(flank.placement.mount_height, 1.2);
    EXPECT_EQ(flank.placement.flank_offset, 0.3);
    EXPECT_EQ(flank.placement.tilt_degrees, 30.0);
    EXPECT_EQ(flank.specs.at("wall").flux, 800.0);
    EXPECT_EQ(flank.specs.at("wall").distribution_exponent, 3.0);
    EXPECT_EQ(flank.specs.at("wall").power, 8.0);
    EXPECT_EQ(lib.find("above_tv")->placement.mount_height, 1.8);
    const DesignPattern& guide = *lib.find("guideline_bedroom");
    EXPECT_EQ(guide.specs.at("ceiling").flux, 1600.0);
    EXPECT_EQ(guide.specs.at("ceiling").power, 15.0);
    EXPECT_EQ(guide.specs.at("table").flux, 470.0);
    EXPECT_EQ(guide.specs.at("table").power, 5.0);
    EXPECT_EQ(guide.placement.table_height, 0.6);
    EXPECT_EQ(guide.target_lux.ambient, 100.0);
    EXPECT_EQ(guide.target_lux.task, 300.0);
}

TEST(PatternLibrary, DuplicateIds) {
    EXPECT_EQ(load_error(R"({"version": "x", "patterns": [
      {"id": "a", "family": "ceiling_central", "target_function": "bedroom", "preconditions": [],
       "specs": {"ceiling": {"flux": 1000, "power": 10, "mount": "ceiling"}}},
      {"id": "a", "family": "ceiling_central", "target_function": "bedroom", "preconditions": [],
       "specs": {"ceiling": {"flux": 1000, "power": 10, "mount": "ceiling"}}}]})"),
              ErrorCode::DuplicatePatternId);
}

TEST(PatternLibrary, EmptyList) {
    EXPECT_EQ(load_error(R"({"version": "x", "patterns": []})"), ErrorCode::MalformedPattern);
}

TEST(PatternLibrary, MalformedNamesTheField) {
    try {
        load_pattern_library(R"({"version": "x", "patterns": [
          {"id": "f", "family": "flank_object", "target_function": "bedroom", "preconditions": ["bed", "tv"],
           "placement": {"anchor": "bed", "mount_height": 1.2},
           "specs": {"wall": {"flux": 800, "power": 8, "mount": "wall"}}}]})");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::MalformedPattern);
        EXPECT_NE(e.detail().find("preconditions"), std::string::npos) << e.detail();
    }
    EXPECT_EQ(load_error(R"({"version": "x", "patterns": [
      {"id": "c", "family": "spotlight", "target_function": "bedroom", "preconditions": []}]})"),
              ErrorCode::MalformedPattern);
    EXPECT_EQ(load_error("not json"), ErrorCode::MalformedPattern);
}

TEST(PatternLibrary, RoundTrip) {
    const PatternLibrary& lib = default_pattern_library();
    const std::string text = dump_pattern_library(lib);
    const PatternLibrary again = load_pattern_library(text);
    EXPECT_EQ(again, lib);
    EXPECT_EQ(dump_pattern_library(again), text);
    EXPECT_EQ(load_pattern_library(default_pattern_library_document()), lib);
}

TEST(MatchPatterns, Examples) {
    const PatternLibrary& lib = default_pattern_library();
    EXPECT_EQ(match_patterns(analyze_room(validate_room(scenarios::bedroom())), lib).size(), 6u);
    EXPECT_EQ(ids(match_patterns(analyze_room(validate_room(scenarios::rect_room())), lib)),
              std::vector<std::string>{"ceiling_central"});
    RoomModel corridor = scenarios::rect_room();
    corridor.function = RoomFunction::corridor;
    try {
        match_patterns(analyze_room(validate_room(corridor)), lib);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NoApplicablePattern);
    }
}

// ---- properties ----

namespace {

RoomModel random_bedroom(std::mt19937_64& rng) {
    RoomModel r = scenarios::rect_room(6, 5);
    const ObjectKind kinds[] = {ObjectKind::bed, ObjectKind::tv, ObjectKind::desk, ObjectKind::dresser,
                                ObjectKind::closet, ObjectKind::nightstand, ObjectKind::other};
    std::uniform_int_distribution<int> count(0, 5);
    std::uniform_int_distribution<int> kind(0, 6);
    std::uniform_real_distribution<double> x(0.0, 5.0);
    std::uniform_real_distribution<double> y(0.0, 4.0);
    const int n = count(rng);
    for (int i = 0; i < n; ++i) {
        const double x0 = x(rng);
        const double y0 = y(rng);
        r.objects.push_back(object(kinds[kind(rng)], {x0, y0}, {x0 + 0.9, y0 + 0.9}, 0.6));
    }
    return r;
}

bool is_subsequence(const std::vector<std::string>& sub, const std::vector<std::string>& seq) {
    std::size_t k = 0;
    for (const auto& s : seq) {
        if (k < sub.size() && sub[k] == s) ++k;
    }
    return k == sub.size();
}

}  // namespace

TEST(PatternProperties, MatchIsSubsequenceAndAntiMonotone) {
    std::mt19937_64 rng(31);
    const PatternLibrary& lib = default_pattern_library();
    const auto all = ids(lib.patterns);
    for (int trial = 0; trial < 300; ++trial) {
        const RoomModel r = random_bedroom(rng);
        const auto matched = ids(match_patterns(analyze_room(validate_room(r)), lib));
        ASSERT_TRUE(is_subsequence(matched, all));
        for (std::size_t drop = 0; drop < r.objects.size(); ++drop) {
            RoomModel fewer = r;
            fewer.objects.erase(fewer.objects.begin() + static_cast<long>(drop));
            const auto sub = ids(match_patterns(analyze_room(validate_room(fewer)), lib));
            ASSERT_TRUE(is_subsequence(sub, matched));
        }
    }
}

TEST(PatternProperties, AnchorsAreFaithful) {
    std::mt19937_64 rng(32);
    for (int trial = 0; trial < 300; ++trial) {
        const RoomModel r = random_bedroom(rng);
        const RoomAnalysis a = analyze_room(validate_room(r));
        std::set<std::size_t> seen;
        for (const Anchor& anchor : a.anchors) {
            ASSERT_LT(anchor.object_index, r.objects.size());
            ASSERT_TRUE(seen.insert(anchor.object_index).second);
            ASSERT_EQ(anchor.kind, r.objects[anchor.object_index].kind);
            ASSERT_NE(anchor.kind, ObjectKind::nightstand);
            ASSERT_NE(anchor.kind, ObjectKind::other);
            ASSERT_EQ(anchor.adjacent, anchor.wall_distance <= kWallAdjacencyThreshold);
        }
        std::size_t anchorable = 0;
        for (const auto& o : r.objects) anchorable += o.kind != ObjectKind::nightstand && o.kind != ObjectKind::other;
        ASSERT_EQ(a.anchors.size(), anchorable);
    }
}
