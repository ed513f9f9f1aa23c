#ifndef SRTWIFI_PHYRATE_AIRTIME_HPP
#define SRTWIFI_PHYRATE_AIRTIME_HPP

#include <cstdint>
#include <optional>
#include <vector>

namespace srtwifi::phyrate {

/// 802.11a OFDM airtime parameters. The defaults reproduce the slot
/// lengths of a 500-byte packet at 174 us atomic slots exactly.
struct AirtimeParams {
    std::int64_t preamble_signal_us = 20;
    std::int64_t symbol_us = 4;
    int service_tail_bits = 22;
    std::int64_t sifs_us = 16;
    int ack_bytes = 14;
    int ack_rate_mbps = 6;
    std::int64_t guard_us = 10;
    int frame_overhead_bytes = 64;  // headers above the UDP payload
};

/// Data bits per OFDM symbol for the 802.11a rates.
int ndbps_for_rate(int rate_mbps);

/// preamble + symbols covering (8*bytes + service/tail) bits.
std::int64_t frame_airtime_us(int frame_bytes, int rate_mbps,
                              const AirtimeParams& params = {});

/// Data frame + SIFS + ACK + guard.
std::int64_t slot_length_us(int payload_bytes, int rate_mbps,
                            const AirtimeParams& params = {});

/// ceil(slot_length / atomic_slot).
int atomic_slot_usage(std::int64_t slot_length_us, std::int64_t atomic_slot_us);

/// Link-layer rate for a periodic slot allocation, in Mbps. Counts the
/// frame overhead above the payload, not just the payload bytes.
double expected_throughput_mbps(int slots_for_link, int superframe_slots,
                                double atomic_slot_us, int payload_bytes,
                                const AirtimeParams& params = {});

/// Packets per second achievable at one packet per slot (floor).
std::int64_t sampling_rate_hz(std::int64_t slot_length_us);

}  // namespace srtwifi::phyrate

#endif
