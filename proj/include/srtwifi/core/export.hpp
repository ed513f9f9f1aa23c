#ifndef SRTWIFI_CORE_EXPORT_HPP
#define SRTWIFI_CORE_EXPORT_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "srtwifi/core/registers.hpp"
#include "srtwifi/core/types.hpp"

namespace srtwifi::core {

/// Gantt rows: channel,slot_start,slot_len,cluster,task,instance,unit
void write_gantt_csv(std::ostream& out, const std::vector<Timeline>& timelines);

/// Timeline JSON document; round-trips through read_timelines_json.
std::string timelines_to_json(const std::vector<Timeline>& timelines);
std::vector<Timeline> timelines_from_json(const std::string& text);

/// Register image as 16 little-endian 32-bit words.
void write_register_image_binary(std::ostream& out, const RegisterImage& image);
RegisterImage read_register_image_binary(std::istream& in);

/// One 0x-prefixed hex word per line.
void write_register_image_hex(std::ostream& out, const RegisterImage& image);

/// Maps a timeline onto per-slot queue codes for the register image.
/// Beacon slots get code 0, shared slots code 1, idle cells 15; occupied
/// cells get 2 + (unit's task position modulo 13) so distinct links map
/// to distinct data queues where possible.
std::vector<int> slot_codes_from_timeline(const Timeline& timeline,
                                          const SuperframeConfig& superframe);

}  // namespace srtwifi::core

#endif
