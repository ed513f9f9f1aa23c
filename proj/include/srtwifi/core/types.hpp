#ifndef SRTWIFI_CORE_TYPES_HPP
#define SRTWIFI_CORE_TYPES_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace srtwifi::core {

/// Time is counted in atomic slots (AS) everywhere in this module.
/// Microsecond durations only appear in phyrate and netsim.
using Slot = std::int64_t;

constexpr Slot kUnscheduled = -1;

/// Periodic transmission task: U units of B atomic slots each, released
/// every T slots with a relative deadline of D slots.
struct Task {
    int cluster_id = 0;
    int task_id = 0;
    int unit_size = 1;   // B, atomic slots per transmission unit
    int unit_count = 1;  // U
    Slot deadline = 1;   // D, relative
    Slot period = 1;     // T

    bool valid() const
    {
        return unit_size > 0 && unit_count > 0 && period > 0 &&
               static_cast<Slot>(unit_size) * unit_count <= deadline &&
               deadline <= period;
    }
};

/// One transmission unit of one task instance. Releases are chained
/// forward at run time (r_p = f_{p-1}); deadlines are chained backward
/// from the instance deadline (d_q = d_{q+1} - B).
struct TransmissionUnit {
    int task_index = 0;  // index into the task vector the unit was expanded from
    int cluster_id = 0;
    int task_id = 0;
    int instance = 1;  // k, 1-based
    int unit = 1;      // l in [1, U]
    int size = 1;      // B

    Slot release = 0;         // current release (static estimate or deferred)
    Slot static_release = 0;  // instance release + (l-1)*B
    Slot deadline = 0;
    Slot start = kUnscheduled;
    Slot finish = kUnscheduled;

    bool scheduled() const { return start != kUnscheduled; }

    std::string label() const
    {
        return std::to_string(cluster_id) + "." + std::to_string(task_id) + "#" +
               std::to_string(instance) + "/" + std::to_string(unit);
    }
};

struct Cluster {
    int id = 0;
    std::vector<Task> tasks;
};

/// Total mapping cluster id -> channel in [1, H].
struct ChannelAssignment {
    int channel_count = 1;
    std::map<int, int> channel_of;

    int channel(int cluster_id) const
    {
        auto it = channel_of.find(cluster_id);
        if (it == channel_of.end())
            throw std::out_of_range("cluster " + std::to_string(cluster_id) +
                                    " has no channel assignment");
        return it->second;
    }
};

/// One hyper-period of one channel. Cells index into `units`; idle cells
/// hold -1. A unit of size B occupies exactly B consecutive cells.
struct Timeline {
    int channel = 1;
    Slot horizon = 0;
    std::vector<int> cells;  // horizon entries
    std::vector<TransmissionUnit> units;

    explicit Timeline(int chan = 1, Slot hor = 0)
        : channel(chan), horizon(hor), cells(static_cast<std::size_t>(hor), -1)
    {
    }

    void place(int unit_index)
    {
        const TransmissionUnit& u = units.at(static_cast<std::size_t>(unit_index));
        if (u.start < 0 || u.finish > horizon)
            throw std::out_of_range("unit " + u.label() + " outside horizon");
        for (Slot c = u.start; c < u.finish; ++c) {
            int& cell = cells[static_cast<std::size_t>(c)];
            if (cell != -1)
                throw std::logic_error("cell " + std::to_string(c) + " double-booked");
            cell = unit_index;
        }
    }
};

struct SuperframeConfig {
    int slot_count = 127;
    double atomic_slot_us = 174.0;
    std::set<int> beacon_slots;
    std::set<int> shared_slots;

    void validate() const
    {
        if (slot_count <= 0 || atomic_slot_us <= 0)
            throw std::invalid_argument("superframe: non-positive slot count or atomic slot");
        for (int s : beacon_slots)
            if (s < 0 || s >= slot_count)
                throw std::invalid_argument("superframe: beacon slot out of range");
        for (int s : shared_slots) {
            if (s < 0 || s >= slot_count)
                throw std::invalid_argument("superframe: shared slot out of range");
            if (beacon_slots.count(s))
                throw std::invalid_argument("superframe: slot both beacon and shared");
        }
    }
};

Slot hyper_period(const std::vector<Task>& tasks);

/// Expands each task into its transmission units over [0, horizon).
/// Instance k releases at (k-1)*T; the last unit's deadline is release+D
/// and earlier deadlines are chained backward by B. Throws on invalid
/// tasks or a horizon that is not a positive multiple of every period.
std::vector<TransmissionUnit> expand_instances(const std::vector<Task>& tasks,
                                               Slot horizon);

}  // namespace srtwifi::core

#endif
