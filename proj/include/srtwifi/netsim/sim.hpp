#ifndef SRTWIFI_NETSIM_SIM_HPP
#define SRTWIFI_NETSIM_SIM_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "srtwifi/core/types.hpp"
#include "srtwifi/netsim/scenario.hpp"
#include "srtwifi/phyrate/rate_table.hpp"

namespace srtwifi::netsim {

/// Per-link totals over the whole run. Every link owns its own FIFO in
/// this simulator; the queue policy comparison lives in queueing.hpp.
struct LinkMetrics {
    int cluster_id = 0;
    int task_id = 0;
    std::int64_t transmitted = 0;
    std::int64_t delivered = 0;
    std::int64_t lost = 0;
    double pdr = 0;
    double throughput_mbps = 0;
    double mean_delay_slots = 0;
    core::Slot max_delay_slots = 0;
    int final_rate_mbps = 0;
    /// transmitted/delivered per superframe, for staged-trace analysis.
    std::vector<std::pair<std::int64_t, std::int64_t>> per_superframe;
};

struct RateChange {
    core::Slot slot = 0;  // activation slot (a schedule boundary)
    int cluster_id = 0;
    int task_id = 0;
    int old_rate_mbps = 0;
    int new_rate_mbps = 0;
};

struct ScheduleUpdate {
    core::Slot eval_slot = 0;
    bool feasible = false;
    core::Slot activation_slot = core::kUnscheduled;  // unset when infeasible
    std::string detail;  // solver failure text when infeasible
};

enum class RunStatus { Ok, InfeasibleInitial, InfeasibleAborted };

struct SimulationResult {
    RunStatus status = RunStatus::Ok;
    std::uint64_t seed = 0;
    core::Slot duration_slots = 0;
    std::vector<LinkMetrics> links;
    std::vector<RateChange> rate_changes;
    std::vector<ScheduleUpdate> schedule_updates;
    int infeasible_events = 0;
    std::string detail;  // populated for non-Ok statuses

    const LinkMetrics* link(int cluster_id, int task_id) const;
};

/// Deterministic slot-granularity run. Channels are assigned once up
/// front; unit sizes follow each link's current rate (unless the task
/// pins unit_size), adaptation is evaluated at superframe boundaries and
/// a changed schedule activates at the next hyper-period boundary of its
/// channel. An infeasible reschedule keeps the old schedule and rates.
SimulationResult run_simulation(const Scenario& scenario,
                                const phyrate::RateTable& table);
SimulationResult run_simulation(const Scenario& scenario);

std::string metrics_to_json(const SimulationResult& result);
void write_link_metrics_csv(std::ostream& out, const SimulationResult& result);
void write_rate_changes_csv(std::ostream& out, const SimulationResult& result);

}  // namespace srtwifi::netsim

#endif
