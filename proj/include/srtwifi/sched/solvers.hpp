#ifndef SRTWIFI_SCHED_SOLVERS_HPP
#define SRTWIFI_SCHED_SOLVERS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "srtwifi/core/types.hpp"

namespace srtwifi::sched {

using core::Slot;
using core::Task;
using core::Timeline;
using core::TransmissionUnit;

/// Exact rational B*U/T.
struct Utilization {
    std::int64_t num = 0;
    std::int64_t den = 1;  // reduced, den > 0
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

Utilization task_utilization(const Task& task);
Utilization cluster_utilization(const core::Cluster& cluster);

/// Heuristic cluster scheduler: clusters sorted by utilization descending,
/// each assigned greedily to the currently least-utilized channel. Ties
/// break toward the lowest channel id, then the lowest cluster id.
core::ChannelAssignment assign_channels_hcs(const std::vector<core::Cluster>& clusters,
                                            int channel_count);

/// Random cluster scheduler baseline: uniform assignment, reproducible
/// from the seed.
core::ChannelAssignment assign_channels_rcs(const std::vector<core::Cluster>& clusters,
                                            int channel_count, std::uint64_t seed);

/// Release/deadline interval of one pending transmission unit.
struct Interval {
    Slot start = 0;
    Slot end = 0;
};

/// One interval per pending unit, duplicates coalesced.
std::vector<Interval> build_interval_set(const std::vector<TransmissionUnit>& pending);

/// Demand of [s, e]: total size of pending units whose current release and
/// deadline both lie inside the interval.
Slot interval_demand(const std::vector<TransmissionUnit>& pending, Interval iv);

struct ScheduleResult {
    bool feasible = false;
    Timeline timeline;
    std::string failure;  // label and window of the violating unit
};

/// Heuristic task scheduler: non-preemptive EDF over unit deadlines with
/// idle-time insertion. Before scheduling a unit at time t, any interval
/// I = [s, e] strictly inside [t, d] with t + B + D_I > e defers the
/// unit's release to the latest such s. Deterministic tie-break: smaller
/// deadline, then cluster id, task id, instance.
ScheduleResult schedule_hts(const std::vector<Task>& tasks, int channel = 1);

/// The same machinery with the idle-insertion rule disabled
/// (plain non-preemptive, work-conserving EDF).
ScheduleResult schedule_edf(const std::vector<Task>& tasks, int channel = 1);

enum class ExactStatus { Feasible, Infeasible, BudgetExhausted };

struct ExactResult {
    ExactStatus status = ExactStatus::Infeasible;
    Timeline timeline;  // populated iff Feasible
    std::uint64_t nodes_visited = 0;
};

/// Exhaustive depth-first search over unit start times in deadline order.
/// Infeasible is only reported when the full space was covered within the
/// node budget; exhaustion is a distinct verdict.
ExactResult schedule_exact(const std::vector<Task>& tasks,
                           std::uint64_t node_budget = 5'000'000,
                           int channel = 1);

}  // namespace srtwifi::sched

#endif
