#ifndef SRTWIFI_NETSIM_QUEUEING_HPP
#define SRTWIFI_NETSIM_QUEUEING_HPP

#include <cstdint>

#include "srtwifi/core/types.hpp"
#include "srtwifi/netsim/scenario.hpp"

namespace srtwifi::netsim {

/// Head-of-line queueing study on a single-channel superframe where every
/// link owns one slot per superframe at a random position. Packet arrival
/// and service rates are equal, so all delay comes from slot placement
/// and queue contention.
struct QueueDelayConfig {
    int link_count = 16;
    int queue_count = 16;
    QueuePolicyConfig::Policy policy = QueuePolicyConfig::Policy::Assigned;
    std::uint64_t seed = 1;
    core::Slot duration_slots = 20'000;
};

struct QueueDelayResult {
    std::int64_t packets_sent = 0;
    std::int64_t packets_pending = 0;  // still queued at the end of the run
    double mean_delay_slots = 0;
    core::Slot max_delay_slots = 0;
};

/// Assigned policy: link i feeds FIFO queue i mod queue_count and a slot
/// is wasted when the head of the queue belongs to another link. Dynamic
/// policy: queue_count single-packet buffer slots shared by all links,
/// served oldest-first per link; arrivals overflow to a FIFO backlog and
/// are never dropped.
QueueDelayResult queue_delay_experiment(const QueueDelayConfig& config);

}  // namespace srtwifi::netsim

#endif
