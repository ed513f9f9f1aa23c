#include "srtwifi/netsim/sync.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace srtwifi::netsim {

std::vector<DeviceSyncSeries> simulate_sync(const std::vector<DeviceClockSpec>& clocks,
                                            const SyncConfig& config)
{
    if (config.beacon_period_us <= 0 || config.duration_us <= 0 ||
        config.samples_per_period <= 0)
        throw std::invalid_argument("sync: non-positive period, duration or sampling");
    const double period = config.beacon_period_us;
    const double phase =
        config.relay_phase_us < 0 ? period / 2 : config.relay_phase_us;
    if (phase >= period)
        throw std::invalid_argument("sync: relay phase must be inside the period");

    // All level-2 devices relay off the first level-1 device; its error at
    // the relay beacon becomes their reference error.
    const DeviceClockSpec* parent = nullptr;
    for (const DeviceClockSpec& c : clocks)
        if (c.level == 1) {
            parent = &c;
            break;
        }
    auto parent_error_at = [&](double t) {
        if (!parent)
            return 0.0;
        const double since = std::fmod(t, period);
        return parent->drift_ppm * 1e-6 * since;
    };

    std::vector<DeviceSyncSeries> series;
    for (const DeviceClockSpec& clock : clocks) {
        if (clock.level != 1 && clock.level != 2)
            throw std::invalid_argument("sync: clock level must be 1 or 2");
        DeviceSyncSeries s;
        s.clock = clock;
        const double drift = clock.drift_ppm * 1e-6;
        const double first_sync = clock.level == 1 ? 0.0 : phase;

        double last_sync = -1;  // none yet: the initial offset still applies
        double error_at_sync = 0;
        double sum = 0;
        auto sample = [&](double t) {
            double err;
            if (last_sync < 0)
                err = clock.initial_offset_us + drift * t;
            else
                err = error_at_sync + drift * (t - last_sync);
            err = std::abs(err);
            s.times_us.push_back(t);
            s.errors_us.push_back(err);
            s.max_error_us = std::max(s.max_error_us, err);
            sum += err;
        };

        const double step = period / config.samples_per_period;
        double next_sync = first_sync;
        for (double t = 0; t < config.duration_us; t += step) {
            // Sample the sup of each ramp just before resetting at the
            // beacon, then apply the sync.
            while (next_sync <= t) {
                sample(next_sync);
                error_at_sync = clock.level == 1 ? 0.0 : parent_error_at(next_sync);
                last_sync = next_sync;
                next_sync += period;
            }
            sample(t);
        }
        s.mean_error_us =
            s.errors_us.empty() ? 0.0 : sum / static_cast<double>(s.errors_us.size());
        series.push_back(std::move(s));
    }
    return series;
}

}  // namespace srtwifi::netsim
