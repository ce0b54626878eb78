#include "luxforge/workspace.hpp"

#include <system_error>

#include "json_codec.hpp"
#include "luxforge/error.hpp"
#include "luxforge/formats.hpp"

namespace luxforge {

namespace fs = std::filesystem;

namespace {

constexpr int kIndexVersion = 1;

template <typename T>
bool same_entities(const std::map<std::string, std::shared_ptr<const T>>& a,
                   const std::map<std::string, std::shared_ptr<const T>>& b) {
    if (a.size() != b.size()) return false;
    for (auto ia = a.begin(), ib = b.begin(); ia != a.end(); ++ia, ++ib) {
        if (ia->first != ib->first || !(*ia->second == *ib->second)) return false;
    }
    return true;
}

// Write to a sibling temp file and rename, so a reader of the directory never
// sees half a file.
void write_atomically(const fs::path& path, const std::string& content) {
    fs::path tmp = path;
    tmp += ".tmp";
    write_text_file(tmp, content);
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) throw Error(ErrorCode::IoFailure, "cannot rename " + tmp.string() + ": " + ec.message());
}

[[noreturn]] void corrupt(const std::string& id, const fs::path& file, const std::string& why) {
    throw Error(ErrorCode::CorruptEntity, id + " (" + file.filename().string() + "): " + why);
}

template <typename Load>
auto load_entity(const fs::path& dir, const std::string& id, Load load) {
    const fs::path file = dir / (id + ".json");
    if (!fs::exists(file)) corrupt(id, file, "file is missing");
    const std::string text = read_text_file(file);
    try {
        return load(text);
    } catch (const Error& e) {
        corrupt(id, file, e.what());
    }
}

std::vector<std::string> id_list(const codec::Json& index, const char* key) {
    std::vector<std::string> ids;
    if (!index.contains(key)) return ids;
    const auto& arr = index.at(key);
    if (!arr.is_array()) throw Error(ErrorCode::CorruptEntity, std::string("index.json: '") + key + "' is not a list");
    for (const auto& v : arr) {
        if (!v.is_string()) throw Error(ErrorCode::CorruptEntity, std::string("index.json: bad id in '") + key + "'");
        ids.push_back(v.get<std::string>());
    }
    return ids;
}

}  // namespace

bool WorkspaceSnapshot::same_contents(const WorkspaceSnapshot& other) const {
    return next_id == other.next_id && same_entities(rooms, other.rooms) && same_entities(designs, other.designs) &&
           same_entities(traces, other.traces);
}

Workspace::Workspace(WorkspaceSnapshot snapshot) : state_(std::move(snapshot)) {}

std::string Workspace::issue_id(const char* prefix) {
    return std::string(prefix) + "-" + std::to_string(state_.next_id++);
}

std::string Workspace::add_room(RoomModel room) {
    validate_room(room);
    auto entity = std::make_shared<const RoomModel>(std::move(room));
    std::unique_lock lock(mutex_);
    std::string id = issue_id("room");
    state_.rooms.emplace(id, std::move(entity));
    return id;
}

std::string Workspace::add_design(LightingDesign design) {
    check_design(design, validate_room(design.room));
    std::unique_lock lock(mutex_);
    if (!state_.rooms.contains(design.room_ref)) {
        throw Error(ErrorCode::NotFound, "room '" + design.room_ref + "' referenced by the design does not exist");
    }
    std::string id = issue_id("design");
    state_.designs.emplace(id, std::make_shared<const LightingDesign>(std::move(design)));
    return id;
}

void Workspace::replace_design(const std::string& id, LightingDesign design) {
    check_design(design, validate_room(design.room));
    auto entity = std::make_shared<const LightingDesign>(std::move(design));
    std::unique_lock lock(mutex_);
    auto it = state_.designs.find(id);
    if (it == state_.designs.end()) throw Error(ErrorCode::NotFound, "design '" + id + "' does not exist");
    if (!state_.rooms.contains(entity->room_ref)) {
        throw Error(ErrorCode::NotFound, "room '" + entity->room_ref + "' referenced by the design does not exist");
    }
    it->second = std::move(entity);
}

std::string Workspace::add_trace(SimulationTrace trace) {
    auto entity = std::make_shared<const SimulationTrace>(std::move(trace));
    std::unique_lock lock(mutex_);
    std::string id = issue_id("trace");
    state_.traces.emplace(id, std::move(entity));
    return id;
}

std::shared_ptr<const RoomModel> Workspace::room(const std::string& id) const {
    std::shared_lock lock(mutex_);
    auto it = state_.rooms.find(id);
    return it == state_.rooms.end() ? nullptr : it->second;
}

std::shared_ptr<const LightingDesign> Workspace::design(const std::string& id) const {
    std::shared_lock lock(mutex_);
    auto it = state_.designs.find(id);
    return it == state_.designs.end() ? nullptr : it->second;
}

std::shared_ptr<const SimulationTrace> Workspace::trace(const std::string& id) const {
    std::shared_lock lock(mutex_);
    auto it = state_.traces.find(id);
    return it == state_.traces.end() ? nullptr : it->second;
}

WorkspaceSnapshot Workspace::snapshot() const {
    std::shared_lock lock(mutex_);
    return state_;
}

void Workspace::persist(const fs::path& dir) const {
    const WorkspaceSnapshot snap = snapshot();
    std::lock_guard save(save_mutex_);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Error(ErrorCode::IoFailure, "cannot create " + dir.string() + ": " + ec.message());

    codec::Json index = codec::Json::object();
    index["version"] = kIndexVersion;
    index["next_id"] = snap.next_id;
    codec::Json rooms = codec::Json::array();
    codec::Json designs = codec::Json::array();
    codec::Json traces = codec::Json::array();
    for (const auto& [id, room] : snap.rooms) {
        write_atomically(dir / (id + ".json"), dump_room(*room));
        rooms.push_back(id);
    }
    for (const auto& [id, design] : snap.designs) {
        write_atomically(dir / (id + ".json"), dump_design(*design));
        designs.push_back(id);
    }
    for (const auto& [id, trace] : snap.traces) {
        write_atomically(dir / (id + ".json"), dump_trace(*trace));
        traces.push_back(id);
    }
    index["rooms"] = rooms;
    index["designs"] = designs;
    index["traces"] = traces;
    write_atomically(dir / "index.json", codec::dump(index));
}

WorkspaceSnapshot Workspace::restore(const fs::path& dir) {
    WorkspaceSnapshot snap;
    const fs::path index_path = dir / "index.json";
    if (!fs::exists(index_path)) return snap;

    codec::Json index;
    try {
        index = codec::parse(read_text_file(index_path), ErrorCode::CorruptEntity);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::IoFailure) throw;
        throw Error(ErrorCode::CorruptEntity, "index.json: " + e.detail());
    }
    if (!index.is_object() || !index.contains("next_id") || !index.at("next_id").is_number_unsigned()) {
        throw Error(ErrorCode::CorruptEntity, "index.json: missing next_id");
    }
    snap.next_id = index.at("next_id").get<std::uint64_t>();

    for (const std::string& id : id_list(index, "rooms")) {
        snap.rooms.emplace(id, load_entity(dir, id, [](const std::string& text) {
                               RoomModel room = parse_room(text);
                               validate_room(room);
                               return std::make_shared<const RoomModel>(std::move(room));
                           }));
    }
    for (const std::string& id : id_list(index, "designs")) {
        auto design = load_entity(dir, id, [](const std::string& text) {
            LightingDesign d = parse_design(text);
            check_design(d, validate_room(d.room));
            return std::make_shared<const LightingDesign>(std::move(d));
        });
        if (!snap.rooms.contains(design->room_ref)) {
            corrupt(id, dir / (id + ".json"), "room '" + design->room_ref + "' does not exist");
        }
        snap.designs.emplace(id, std::move(design));
    }
    for (const std::string& id : id_list(index, "traces")) {
        snap.traces.emplace(id, load_entity(dir, id, [](const std::string& text) {
                                return std::make_shared<const SimulationTrace>(parse_trace(text));
                            }));
    }
    return snap;
}

}  // namespace luxforge
