#ifndef SRTWIFI_PHYRATE_RATE_TABLE_HPP
#define SRTWIFI_PHYRATE_RATE_TABLE_HPP

#include <optional>
#include <string>
#include <vector>

#include "srtwifi/phyrate/airtime.hpp"

namespace srtwifi::phyrate {

struct RateEntry {
    int rate_mbps = 6;
    double snr_threshold_db = 0;
    int ndbps = 24;
    std::int64_t slot_length_us = 0;
    int atomic_slot_usage = 1;
};

/// SNR-threshold rate table, ascending by rate. Entries are strictly
/// ordered: higher rate, higher threshold, shorter slot.
class RateTable {
public:
    RateTable() = default;
    explicit RateTable(std::vector<RateEntry> entries);

    /// Default table for a 500-byte packet at 174 us atomic slots:
    /// thresholds {7,10,13,15,17,19,22,25} dB for rates {6..54} Mbps.
    static RateTable defaults(int payload_bytes = 500,
                              std::int64_t atomic_slot_us = 174,
                              const AirtimeParams& params = {});

    /// Loads {"entries":[{"rate":..,"threshold":..,"slot_length":optional}]},
    /// deriving slot lengths from the airtime model when not overridden.
    static RateTable from_json(const std::string& text, int payload_bytes = 500,
                               std::int64_t atomic_slot_us = 174,
                               const AirtimeParams& params = {});

    const std::vector<RateEntry>& entries() const { return entries_; }
    const RateEntry& entry_for_rate(int rate_mbps) const;

    /// Highest rate whose threshold is <= snr; nullopt below the lowest
    /// threshold (no-link).
    std::optional<RateEntry> rate_for_snr(double snr_db) const;

    /// Position of a rate in the table (0 = lowest). Used to reason about
    /// step sizes in adaptation logs.
    int position_of(int rate_mbps) const;

private:
    std::vector<RateEntry> entries_;
};

/// Fixed-capacity ring of recent SNR samples for one link.
class SnrWindow {
public:
    explicit SnrWindow(std::size_t capacity = 20);
    void push(double snr_db);
    bool empty() const { return samples_.empty(); }
    bool full() const { return samples_.size() == capacity_; }
    std::size_t size() const { return samples_.size(); }
    double min() const;

    const std::vector<double>& samples() const { return samples_; }

private:
    std::size_t capacity_;
    std::vector<double> samples_;  // oldest first
};

/// Conservative windowed adaptation: downgrade immediately to the rate of
/// the window minimum; upgrade only when every sample in the window clears
/// the higher rate's threshold. Returns nullopt when even the lowest rate
/// cannot be sustained (no-link).
std::optional<RateEntry> adapt_rate(const SnrWindow& window, const RateEntry& current,
                                    const RateTable& table);

}  // namespace srtwifi::phyrate

#endif
