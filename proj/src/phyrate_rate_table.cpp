#include "srtwifi/phyrate/rate_table.hpp"

#include <json.hpp>

#include <algorithm>
#include <stdexcept>

namespace srtwifi::phyrate {

namespace {

const std::vector<std::pair<int, double>> kDefaultThresholds = {
    {6, 7}, {9, 10}, {12, 13}, {18, 15}, {24, 17}, {36, 19}, {48, 22}, {54, 25}};

}  // namespace

RateTable::RateTable(std::vector<RateEntry> entries) : entries_(std::move(entries))
{
    std::sort(entries_.begin(), entries_.end(),
              [](const RateEntry& a, const RateEntry& b) {
                  return a.rate_mbps < b.rate_mbps;
              });
    for (std::size_t i = 1; i < entries_.size(); ++i) {
        const RateEntry& lo = entries_[i - 1];
        const RateEntry& hi = entries_[i];
        if (hi.rate_mbps == lo.rate_mbps)
            throw std::invalid_argument("rate table: duplicate rate");
        if (hi.snr_threshold_db <= lo.snr_threshold_db)
            throw std::invalid_argument("rate table: thresholds must increase with rate");
        if (hi.slot_length_us >= lo.slot_length_us)
            throw std::invalid_argument("rate table: slot lengths must shrink with rate");
    }
}

RateTable RateTable::defaults(int payload_bytes, std::int64_t atomic_slot_us,
                              const AirtimeParams& params)
{
    std::vector<RateEntry> entries;
    for (auto [rate, threshold] : kDefaultThresholds) {
        RateEntry e;
        e.rate_mbps = rate;
        e.snr_threshold_db = threshold;
        e.ndbps = ndbps_for_rate(rate);
        e.slot_length_us = slot_length_us(payload_bytes, rate, params);
        e.atomic_slot_usage = atomic_slot_usage(e.slot_length_us, atomic_slot_us);
        entries.push_back(e);
    }
    return RateTable(std::move(entries));
}

RateTable RateTable::from_json(const std::string& text, int payload_bytes,
                               std::int64_t atomic_slot_us, const AirtimeParams& params)
{
    const nlohmann::json doc = nlohmann::json::parse(text);
    std::vector<RateEntry> entries;
    for (const auto& je : doc.at("entries")) {
        RateEntry e;
        e.rate_mbps = je.at("rate").get<int>();
        e.snr_threshold_db = je.at("threshold").get<double>();
        e.ndbps = ndbps_for_rate(e.rate_mbps);
        e.slot_length_us = je.contains("slot_length")
                               ? je.at("slot_length").get<std::int64_t>()
                               : slot_length_us(payload_bytes, e.rate_mbps, params);
        e.atomic_slot_usage = atomic_slot_usage(e.slot_length_us, atomic_slot_us);
        entries.push_back(e);
    }
    return RateTable(std::move(entries));
}

const RateEntry& RateTable::entry_for_rate(int rate_mbps) const
{
    for (const RateEntry& e : entries_)
        if (e.rate_mbps == rate_mbps)
            return e;
    throw std::out_of_range("rate " + std::to_string(rate_mbps) + " not in table");
}

std::optional<RateEntry> RateTable::rate_for_snr(double snr_db) const
{
    std::optional<RateEntry> best;
    for (const RateEntry& e : entries_)
        if (e.snr_threshold_db <= snr_db)
            best = e;  // entries ascend, last match is the highest rate
    return best;
}

int RateTable::position_of(int rate_mbps) const
{
    for (std::size_t i = 0; i < entries_.size(); ++i)
        if (entries_[i].rate_mbps == rate_mbps)
            return static_cast<int>(i);
    throw std::out_of_range("rate " + std::to_string(rate_mbps) + " not in table");
}

SnrWindow::SnrWindow(std::size_t capacity) : capacity_(capacity)
{
    if (capacity_ < 1)
        throw std::invalid_argument("SnrWindow: capacity must be at least 1");
}

void SnrWindow::push(double snr_db)
{
    if (samples_.size() == capacity_)
        samples_.erase(samples_.begin());
    samples_.push_back(snr_db);
}

double SnrWindow::min() const
{
    if (samples_.empty())
        throw std::logic_error("SnrWindow: min of empty window");
    return *std::min_element(samples_.begin(), samples_.end());
}

std::optional<RateEntry> adapt_rate(const SnrWindow& window, const RateEntry& current,
                                    const RateTable& table)
{
    if (window.empty())
        throw std::invalid_argument("adapt_rate: window must be non-empty");
    // Rate of the window minimum: a downgrade applies immediately; an
    // upgrade requires every sample to clear the target threshold, which
    // is exactly the same bound.
    return table.rate_for_snr(window.min());
}

}  // namespace srtwifi::phyrate
