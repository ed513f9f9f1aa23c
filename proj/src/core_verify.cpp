#include "srtwifi/core/verify.hpp"

#include <algorithm>
#include <map>
#include <tuple>

namespace srtwifi::core {

namespace {

struct Entry {
    const TransmissionUnit* unit;
    int channel;
};

bool overlap(const TransmissionUnit& a, const TransmissionUnit& b)
{
    return a.start < b.finish && b.start < a.finish;
}

}  // namespace

Verdict verify_schedule(const std::vector<Timeline>& timelines,
                        const std::vector<Task>& tasks,
                        const ChannelAssignment& assignment)
{
    Verdict v;
    auto add = [&v](Violation::Kind k, std::string d) {
        v.violations.push_back({k, std::move(d)});
    };

    std::map<int, const Task*> task_by_key;  // (cluster, task) packed
    auto key = [](int cluster, int task) { return cluster * 100000 + task; };
    for (const Task& t : tasks)
        task_by_key[key(t.cluster_id, t.task_id)] = &t;

    std::vector<Entry> scheduled;
    for (const Timeline& tl : timelines)
        for (const TransmissionUnit& u : tl.units) {
            if (!u.scheduled())
                continue;
            scheduled.push_back({&u, tl.channel});
            if (u.finish != u.start + u.size)
                add(Violation::Kind::Malformed,
                    "unit " + u.label() + ": finish != start + size");
            if (u.start < 0 || u.finish > tl.horizon)
                add(Violation::Kind::Malformed,
                    "unit " + u.label() + ": outside horizon");
        }

    // Conflict condition: overlapping units on the same channel or in the
    // same cluster.
    for (std::size_t a = 0; a < scheduled.size(); ++a)
        for (std::size_t b = a + 1; b < scheduled.size(); ++b) {
            const TransmissionUnit& ua = *scheduled[a].unit;
            const TransmissionUnit& ub = *scheduled[b].unit;
            const bool related = scheduled[a].channel == scheduled[b].channel ||
                                 ua.cluster_id == ub.cluster_id;
            if (related && overlap(ua, ub))
                add(Violation::Kind::Conflict,
                    "units " + ua.label() + " and " + ub.label() + " overlap");
        }

    // Window condition with run-time chained releases, and completeness.
    for (const Timeline& tl : timelines) {
        // Tasks expected on this channel.
        std::vector<Task> expected_tasks;
        for (const Task& t : tasks)
            if (assignment.channel(t.cluster_id) == tl.channel)
                expected_tasks.push_back(t);

        std::map<std::tuple<int, int, int, int>, const TransmissionUnit*> present;
        for (const TransmissionUnit& u : tl.units) {
            if (!u.scheduled())
                continue;
            auto k = std::make_tuple(u.cluster_id, u.task_id, u.instance, u.unit);
            if (present.count(k))
                add(Violation::Kind::Malformed, "unit " + u.label() + " scheduled twice");
            present[k] = &u;
        }

        for (const Task& t : expected_tasks) {
            if (tl.horizon % t.period != 0) {
                add(Violation::Kind::Malformed,
                    "timeline horizon not a multiple of period of task " +
                        std::to_string(t.cluster_id) + "." + std::to_string(t.task_id));
                continue;
            }
            for (Slot k = 1; k <= tl.horizon / t.period; ++k) {
                const Slot rel = (k - 1) * t.period;
                Slot chained_release = rel;
                for (int l = 1; l <= t.unit_count; ++l) {
                    const Slot d = rel + t.deadline -
                                   static_cast<Slot>(t.unit_count - l) * t.unit_size;
                    auto it = present.find(std::make_tuple(
                        t.cluster_id, t.task_id, static_cast<int>(k), l));
                    if (it == present.end()) {
                        add(Violation::Kind::Completeness,
                            "missing unit " + std::to_string(t.cluster_id) + "." +
                                std::to_string(t.task_id) + "#" + std::to_string(k) +
                                "/" + std::to_string(l));
                        break;  // later releases in the chain are undefined
                    }
                    const TransmissionUnit& u = *it->second;
                    if (u.start < chained_release || u.finish > d)
                        add(Violation::Kind::Window,
                            "unit " + u.label() + " scheduled [" +
                                std::to_string(u.start) + "," + std::to_string(u.finish) +
                                "] outside window [" + std::to_string(chained_release) +
                                "," + std::to_string(d) + "]");
                    chained_release = u.finish;
                }
            }
        }
    }

    return v;
}

}  // namespace srtwifi::core
