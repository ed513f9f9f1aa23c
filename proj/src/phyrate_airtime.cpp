#include "srtwifi/phyrate/airtime.hpp"

#include <stdexcept>
#include <string>

namespace srtwifi::phyrate {

int ndbps_for_rate(int rate_mbps)
{
    switch (rate_mbps) {
        case 6: return 24;
        case 9: return 36;
        case 12: return 48;
        case 18: return 72;
        case 24: return 96;
        case 36: return 144;
        case 48: return 192;
        case 54: return 216;
        default:
            throw std::invalid_argument("unknown 802.11a rate: " +
                                        std::to_string(rate_mbps) + " Mbps");
    }
}

std::int64_t frame_airtime_us(int frame_bytes, int rate_mbps,
                              const AirtimeParams& params)
{
    if (frame_bytes <= 0)
        throw std::invalid_argument("frame_airtime_us: frame must be non-empty");
    const std::int64_t bits = 8ll * frame_bytes + params.service_tail_bits;
    const int ndbps = ndbps_for_rate(rate_mbps);
    const std::int64_t symbols = (bits + ndbps - 1) / ndbps;
    return params.preamble_signal_us + params.symbol_us * symbols;
}

std::int64_t slot_length_us(int payload_bytes, int rate_mbps,
                            const AirtimeParams& params)
{
    if (payload_bytes <= 0)
        throw std::invalid_argument("slot_length_us: payload must be non-empty");
    return frame_airtime_us(payload_bytes + params.frame_overhead_bytes, rate_mbps,
                            params) +
           params.sifs_us +
           frame_airtime_us(params.ack_bytes, params.ack_rate_mbps, params) +
           params.guard_us;
}

int atomic_slot_usage(std::int64_t slot_length_us, std::int64_t atomic_slot_us)
{
    if (slot_length_us <= 0 || atomic_slot_us <= 0)
        throw std::invalid_argument("atomic_slot_usage: lengths must be positive");
    return static_cast<int>((slot_length_us + atomic_slot_us - 1) / atomic_slot_us);
}

double expected_throughput_mbps(int slots_for_link, int superframe_slots,
                                double atomic_slot_us, int payload_bytes,
                                const AirtimeParams& params)
{
    if (slots_for_link < 0 || slots_for_link > superframe_slots)
        throw std::invalid_argument("expected_throughput: slot allocation exceeds superframe");
    const double bits_per_superframe =
        static_cast<double>(slots_for_link) * 8.0 *
        (payload_bytes + params.frame_overhead_bytes);
    return bits_per_superframe / (superframe_slots * atomic_slot_us);
}

std::int64_t sampling_rate_hz(std::int64_t slot_length_us)
{
    if (slot_length_us <= 0)
        throw std::invalid_argument("sampling_rate_hz: slot length must be positive");
    return 1'000'000ll / slot_length_us;
}

}  // namespace srtwifi::phyrate
