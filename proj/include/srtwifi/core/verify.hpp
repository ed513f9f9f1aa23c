#ifndef SRTWIFI_CORE_VERIFY_HPP
#define SRTWIFI_CORE_VERIFY_HPP

#include <string>
#include <vector>

#include "srtwifi/core/types.hpp"

namespace srtwifi::core {

struct Violation {
    enum class Kind { Conflict, Window, Completeness, Malformed };
    Kind kind;
    std::string detail;
};

struct Verdict {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

/// Independent schedule checker. Reports:
///  - conflict: two units overlap on the same channel or in the same cluster
///  - window: a unit scheduled outside [r, d], with releases chained at
///    run time (r_1 = instance release, r_p = f_{p-1})
///  - completeness: an expected unit is missing from the timelines
/// Pure function of its inputs; never throws on bad schedules (malformed
/// placements are reported as violations).
Verdict verify_schedule(const std::vector<Timeline>& timelines,
                        const std::vector<Task>& tasks,
                        const ChannelAssignment& assignment);

}  // namespace srtwifi::core

#endif
