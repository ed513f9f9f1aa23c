#ifndef SRTWIFI_NETSIM_SCENARIO_HPP
#define SRTWIFI_NETSIM_SCENARIO_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "srtwifi/core/types.hpp"
#include "srtwifi/phyrate/airtime.hpp"

namespace srtwifi::netsim {

/// Piecewise-constant interference trace for one link, in dB over
/// microseconds. Segments must tile [0, duration) without gaps.
struct TraceSegment {
    double start_us = 0;
    double end_us = 0;
    double snr_db = 0;
};

struct LinkTrace {
    int cluster_id = 0;
    int task_id = 0;
    std::vector<TraceSegment> segments;

    double snr_at(double t_us) const;
};

struct PdrModelParams {
    double slope_per_db = 2.0;
    /// Logistic midpoint relative to each rate's SNR threshold.
    double midpoint_offset_db = -2.0;

    double pdr(double snr_db, double rate_threshold_db) const;
};

struct AdaptationConfig {
    bool enabled = true;
    std::size_t window = 20;
    int eval_period_superframes = 1;
};

struct QueuePolicyConfig {
    enum class Policy { Assigned, Dynamic };
    Policy policy = Policy::Assigned;
    int count = 16;  // queues or buffer slots
};

struct DeviceClockSpec {
    std::string device;
    double drift_ppm = 0;
    double initial_offset_us = 0;
    int level = 1;  // 1 syncs to the MAP, 2 syncs to a level-1 device
};

struct Scenario {
    core::SuperframeConfig superframe;
    int channel_count = 1;
    int payload_bytes = 500;
    std::vector<core::Cluster> clusters;
    std::vector<LinkTrace> traces;
    PdrModelParams pdr_model;
    AdaptationConfig adaptation;
    QueuePolicyConfig queues;
    std::vector<DeviceClockSpec> clocks;
    std::uint64_t seed = 0;
    bool seed_given = false;
    int duration_superframes = 100;
    bool fail_on_infeasible = false;
    phyrate::AirtimeParams airtime;

    const LinkTrace* trace_for(int cluster_id, int task_id) const;
    void validate() const;
};

Scenario scenario_from_json(const std::string& text);
std::string scenario_to_json(const Scenario& scenario);
Scenario load_scenario(const std::string& path);

}  // namespace srtwifi::netsim

#endif
