#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <vector>

#include "luxforge/control.hpp"
#include "luxforge/designer.hpp"
#include "luxforge/geometry.hpp"

namespace luxforge {

/// Immutable view of the store at one instant. Entities are shared, never mutated.
struct WorkspaceSnapshot {
    std::uint64_t next_id = 1;
    std::map<std::string, std::shared_ptr<const RoomModel>> rooms;
    std::map<std::string, std::shared_ptr<const LightingDesign>> designs;
    std::map<std::string, std::shared_ptr<const SimulationTrace>> traces;

    /// Compares entity contents and the id counter.
    bool same_contents(const WorkspaceSnapshot& other) const;
};

/// Entity store for rooms, designs and traces.
/// Writes are serialized; readers always see whole entities.
class Workspace {
public:
    Workspace() = default;
    explicit Workspace(WorkspaceSnapshot snapshot);

    Workspace(const Workspace&) = delete;
    Workspace& operator=(const Workspace&) = delete;

    /// Validates the room and stores it under a fresh id.
    std::string add_room(RoomModel room);
    /// Stores a design whose room_ref names a stored room (NotFound otherwise).
    std::string add_design(LightingDesign design);
    /// Replaces an existing design; NotFound for an unknown id.
    void replace_design(const std::string& id, LightingDesign design);
    std::string add_trace(SimulationTrace trace);

    std::shared_ptr<const RoomModel> room(const std::string& id) const;
    std::shared_ptr<const LightingDesign> design(const std::string& id) const;
    std::shared_ptr<const SimulationTrace> trace(const std::string& id) const;

    WorkspaceSnapshot snapshot() const;

    /// Writes `<id>.json` per entity plus `index.json`.
    void persist(const std::filesystem::path& dir) const;

    /// Loads a directory written by `persist`. A missing directory or index gives
    /// an empty workspace. Throws CorruptEntity naming the file, or IoFailure.
    static WorkspaceSnapshot restore(const std::filesystem::path& dir);

private:
    std::string issue_id(const char* prefix);

    mutable std::shared_mutex mutex_;
    mutable std::mutex save_mutex_;
    WorkspaceSnapshot state_;
};

}  // namespace luxforge
