#ifndef SRTWIFI_CORE_REGISTERS_HPP
#define SRTWIFI_CORE_REGISTERS_HPP

#include <array>
#include <cstdint>
#include <vector>

namespace srtwifi::core {

/// 16 32-bit schedule registers, 4 bits per slot, 128 slots.
/// Slot i lives in word i/8, nibble i%8, least-significant nibble first.
using RegisterImage = std::array<std::uint32_t, 16>;

constexpr int kIdleCode = 15;     // unfilled / idle slots
constexpr int kBeaconQueue = 0;   // reserved queue codes
constexpr int kSharedQueue = 1;

/// Packs per-slot queue codes into the register image. Slots beyond the
/// given vector encode as idle. Throws on more than 128 slots or a code
/// outside [0, 15].
RegisterImage encode_register_image(const std::vector<int>& slot_codes);

/// Inverse of encode_register_image; always yields 128 codes.
std::vector<int> decode_register_image(const RegisterImage& image);

}  // namespace srtwifi::core

#endif
