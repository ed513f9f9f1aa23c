#include "srtwifi/core/types.hpp"

#include <numeric>

namespace srtwifi::core {

Slot hyper_period(const std::vector<Task>& tasks)
{
    Slot h = 1;
    for (const Task& t : tasks)
        h = std::lcm(h, t.period);
    return h;
}

std::vector<TransmissionUnit> expand_instances(const std::vector<Task>& tasks,
                                               Slot horizon)
{
    if (horizon <= 0)
        throw std::invalid_argument("expand_instances: horizon must be positive");

    std::vector<TransmissionUnit> units;
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        const Task& t = tasks[i];
        if (!t.valid())
            throw std::invalid_argument(
                "task " + std::to_string(t.cluster_id) + "." + std::to_string(t.task_id) +
                ": requires B*U <= D <= T");
        if (horizon % t.period != 0)
            throw std::invalid_argument(
                "expand_instances: horizon " + std::to_string(horizon) +
                " is not a multiple of period " + std::to_string(t.period));

        const Slot instances = horizon / t.period;
        for (Slot k = 1; k <= instances; ++k) {
            const Slot rel = (k - 1) * t.period;
            const Slot inst_deadline = rel + t.deadline;
            for (int l = 1; l <= t.unit_count; ++l) {
                TransmissionUnit u;
                u.task_index = static_cast<int>(i);
                u.cluster_id = t.cluster_id;
                u.task_id = t.task_id;
                u.instance = static_cast<int>(k);
                u.unit = l;
                u.size = t.unit_size;
                u.static_release = rel + static_cast<Slot>(l - 1) * t.unit_size;
                u.release = u.static_release;
                u.deadline = inst_deadline -
                             static_cast<Slot>(t.unit_count - l) * t.unit_size;
                units.push_back(u);
            }
        }
    }
    return units;
}

}  // namespace srtwifi::core
