#include "srtwifi/netsim/rtt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace srtwifi::netsim {

namespace {

// Role of a slot in the repeating superframe: -1 beacon, station index
// with uplink flag otherwise.
struct SlotRole {
    int station = -1;
    bool uplink = false;
};

SlotRole role_of(std::int64_t slot, const RttConfig& config)
{
    const std::int64_t phase = slot % config.superframe_slots;
    if (phase == 0)
        return {};
    const int k = config.stations;
    const int pos = static_cast<int>((phase - 1) % (2 * k));
    if (pos < k)
        return {pos, true};
    return {pos - k, false};
}

double next_slot_end(double ready_us, int station, bool uplink,
                     const RttConfig& config)
{
    const double as = config.atomic_slot_us;
    for (std::int64_t s = static_cast<std::int64_t>(std::ceil(ready_us / as) - 1);;
         ++s) {
        if (s < 0 || static_cast<double>(s) * as < ready_us)
            continue;
        const SlotRole role = role_of(s, config);
        if (role.station == station && role.uplink == uplink)
            return static_cast<double>(s) * as + as;
    }
}

}  // namespace

RttResult rtt_experiment(const RttConfig& config)
{
    const int k = config.stations;
    if (k <= 0 || config.requests <= 0 || config.phase_superframes <= 0)
        throw std::invalid_argument("rtt: non-positive station or request count");
    if (config.superframe_slots < 1 + 2 * k)
        throw std::invalid_argument("rtt: superframe too short for the slot pattern");

    const double span = static_cast<double>(config.phase_superframes) *
                        config.superframe_slots * config.atomic_slot_us;

    RttResult result;
    result.min_us = std::numeric_limits<double>::infinity();
    double sum = 0;
    for (int station = 0; station < k; ++station)
        for (int j = 0; j < config.requests; ++j) {
            // Offset by an odd fraction so request times sweep slot phases
            // instead of aliasing onto slot boundaries.
            const double g =
                (static_cast<double>(j) + 0.37) * span / config.requests;
            const double uplink_arrival = next_slot_end(g, station, true, config);
            const double ready = uplink_arrival + config.processing_delay_us;
            const double rtt = next_slot_end(ready, station, false, config) - g;

            result.samples_us.push_back(rtt);
            result.min_us = std::min(result.min_us, rtt);
            result.max_us = std::max(result.max_us, rtt);
            sum += rtt;
        }
    result.mean_us = sum / static_cast<double>(result.samples_us.size());
    return result;
}

}  // namespace srtwifi::netsim
