#ifndef SRTWIFI_NETSIM_RTT_HPP
#define SRTWIFI_NETSIM_RTT_HPP

#include <cstdint>
#include <vector>

#include "srtwifi/core/types.hpp"

namespace srtwifi::netsim {

/// Request/response latency over an alternating uplink/downlink slot
/// layout: slot 0 carries the beacon, then the pattern
/// [STA_1..STA_k, AP_1..AP_k] repeats for the rest of the superframe.
struct RttConfig {
    int stations = 1;
    int superframe_slots = 121;
    double atomic_slot_us = 174;
    double processing_delay_us = 100;  // request arrival to response ready
    int requests = 1000;
    /// Requests are spread over this many superframes so every slot phase
    /// is exercised.
    int phase_superframes = 7;
};

struct RttResult {
    double mean_us = 0;
    double min_us = 0;
    double max_us = 0;
    std::vector<double> samples_us;  // per request, station-major order
};

/// A request generated at time g is sent in the station's next uplink
/// slot starting at or after g, arrives at the end of that slot, and the
/// response goes out in the AP's next matching downlink slot once the
/// processing delay has elapsed. RTT is response arrival minus g.
RttResult rtt_experiment(const RttConfig& config);

}  // namespace srtwifi::netsim

#endif
