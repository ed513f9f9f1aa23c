#ifndef SRTWIFI_NETSIM_SYNC_HPP
#define SRTWIFI_NETSIM_SYNC_HPP

#include <vector>

#include "srtwifi/netsim/scenario.hpp"

namespace srtwifi::netsim {

struct SyncConfig {
    double beacon_period_us = 63'500;
    double duration_us = 635'000;
    /// Offset of level-2 parent beacons inside the root beacon period.
    /// Defaults to half a period when negative.
    double relay_phase_us = -1;
    int samples_per_period = 100;
};

struct DeviceSyncSeries {
    DeviceClockSpec clock;
    std::vector<double> times_us;
    std::vector<double> errors_us;  // absolute error versus the root clock
    double max_error_us = 0;
    double mean_error_us = 0;
};

/// Drift-only clock model: a device accumulates drift_ppm error since its
/// last beacon and resets to its reference at each beacon. Level-1
/// devices hear the root directly; level-2 devices inherit their level-1
/// parent's error at the relay phase. Sample times include the instants
/// just before each beacon, so max_error is exact for level 1:
/// drift_ppm * 1e-6 * beacon_period.
std::vector<DeviceSyncSeries> simulate_sync(const std::vector<DeviceClockSpec>& clocks,
                                            const SyncConfig& config);

}  // namespace srtwifi::netsim

#endif
