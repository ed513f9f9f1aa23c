#include "srtwifi/core/registers.hpp"

#include <stdexcept>
#include <string>

namespace srtwifi::core {

RegisterImage encode_register_image(const std::vector<int>& slot_codes)
{
    if (slot_codes.size() > 128)
        throw std::invalid_argument("register image supports at most 128 slots, got " +
                                    std::to_string(slot_codes.size()));
    RegisterImage image;
    image.fill(0xFFFFFFFFu);  // all idle
    for (std::size_t i = 0; i < slot_codes.size(); ++i) {
        const int code = slot_codes[i];
        if (code < 0 || code > 15)
            throw std::invalid_argument("slot " + std::to_string(i) +
                                        ": code " + std::to_string(code) +
                                        " does not fit in 4 bits");
        const std::size_t word = i / 8;
        const unsigned shift = 4u * static_cast<unsigned>(i % 8);
        image[word] &= ~(0xFu << shift);
        image[word] |= static_cast<std::uint32_t>(code) << shift;
    }
    return image;
}

std::vector<int> decode_register_image(const RegisterImage& image)
{
    std::vector<int> codes(128);
    for (std::size_t i = 0; i < 128; ++i)
        codes[i] = static_cast<int>((image[i / 8] >> (4u * (i % 8))) & 0xFu);
    return codes;
}

}  // namespace srtwifi::core
