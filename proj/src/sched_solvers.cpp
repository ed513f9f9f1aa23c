#include "srtwifi/sched/solvers.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <tuple>

namespace srtwifi::sched {

Utilization task_utilization(const Task& task)
{
    if (!task.valid())
        throw std::invalid_argument("task_utilization: invalid task");
    std::int64_t num = static_cast<std::int64_t>(task.unit_size) * task.unit_count;
    std::int64_t den = task.period;
    const std::int64_t g = std::gcd(num, den);
    return {num / g, den / g};
}

Utilization cluster_utilization(const core::Cluster& cluster)
{
    Utilization sum{0, 1};
    for (const Task& t : cluster.tasks) {
        const Utilization u = task_utilization(t);
        const std::int64_t den = std::lcm(sum.den, u.den);
        const std::int64_t num = sum.num * (den / sum.den) + u.num * (den / u.den);
        const std::int64_t g = std::gcd(num, den);
        sum = {num / g, den / g};
    }
    return sum;
}

core::ChannelAssignment assign_channels_hcs(const std::vector<core::Cluster>& clusters,
                                            int channel_count)
{
    if (channel_count < 1)
        throw std::invalid_argument("assign_channels_hcs: need at least one channel");

    struct Item {
        double util;
        int cluster_id;
    };
    std::vector<Item> order;
    order.reserve(clusters.size());
    for (const core::Cluster& c : clusters)
        order.push_back({cluster_utilization(c).value(), c.id});
    std::stable_sort(order.begin(), order.end(), [](const Item& a, const Item& b) {
        if (a.util != b.util)
            return a.util > b.util;
        return a.cluster_id < b.cluster_id;
    });

    std::vector<double> load(static_cast<std::size_t>(channel_count), 0.0);
    core::ChannelAssignment assignment;
    assignment.channel_count = channel_count;
    for (const Item& item : order) {
        int best = 0;
        for (int h = 1; h < channel_count; ++h)
            if (load[static_cast<std::size_t>(h)] < load[static_cast<std::size_t>(best)])
                best = h;
        load[static_cast<std::size_t>(best)] += item.util;
        assignment.channel_of[item.cluster_id] = best + 1;
    }
    return assignment;
}

core::ChannelAssignment assign_channels_rcs(const std::vector<core::Cluster>& clusters,
                                            int channel_count, std::uint64_t seed)
{
    if (channel_count < 1)
        throw std::invalid_argument("assign_channels_rcs: need at least one channel");
    std::mt19937_64 rng(seed);
    core::ChannelAssignment assignment;
    assignment.channel_count = channel_count;
    for (const core::Cluster& c : clusters)
        assignment.channel_of[c.id] =
            1 + static_cast<int>(rng() % static_cast<std::uint64_t>(channel_count));
    return assignment;
}

std::vector<Interval> build_interval_set(const std::vector<TransmissionUnit>& pending)
{
    std::set<std::pair<Slot, Slot>> seen;
    for (const TransmissionUnit& u : pending)
        if (!u.scheduled())
            seen.emplace(u.release, u.deadline);
    std::vector<Interval> out;
    out.reserve(seen.size());
    for (auto [s, e] : seen)
        out.push_back({s, e});
    return out;
}

Slot interval_demand(const std::vector<TransmissionUnit>& pending, Interval iv)
{
    Slot demand = 0;
    for (const TransmissionUnit& u : pending)
        if (!u.scheduled() && u.release >= iv.start && u.deadline <= iv.end)
            demand += u.size;
    return demand;
}

namespace {

// A task whose B*U exceeds D can never fit its window: that is a
// scheduling verdict, not malformed input (D > T or non-positive fields
// still throw in expand_instances).
const Task* unfit_task(const std::vector<Task>& tasks)
{
    for (const Task& t : tasks)
        if (t.unit_size > 0 && t.unit_count > 0 && t.deadline > 0 && t.period > 0 &&
            t.deadline <= t.period &&
            static_cast<Slot>(t.unit_size) * t.unit_count > t.deadline)
            return &t;
    return nullptr;
}

std::string unfit_message(const Task& t)
{
    return "task " + std::to_string(t.cluster_id) + "." + std::to_string(t.task_id) +
           ": units of total size " +
           std::to_string(static_cast<Slot>(t.unit_size) * t.unit_count) +
           " cannot fit deadline window " + std::to_string(t.deadline);
}

// Shared EDF engine; `insert_idle` switches HTS behaviour on.
ScheduleResult run_edf(const std::vector<Task>& tasks, int channel, bool insert_idle)
{
    if (const Task* bad = unfit_task(tasks)) {
        ScheduleResult result;
        result.failure = unfit_message(*bad);
        return result;
    }
    ScheduleResult result;
    const Slot horizon = core::hyper_period(tasks);
    Timeline timeline(channel, horizon);
    timeline.units = core::expand_instances(tasks, horizon);
    auto& units = timeline.units;

    // Instances, each tracking its next unscheduled unit.
    struct Instance {
        std::vector<int> unit_indices;  // in unit order
        std::size_t cursor = 0;
        int cluster_id = 0, task_id = 0, instance = 0;
    };
    std::map<std::tuple<int, int, int>, Instance> by_key;
    for (std::size_t i = 0; i < units.size(); ++i) {
        const TransmissionUnit& u = units[i];
        Instance& inst = by_key[{u.cluster_id, u.task_id, u.instance}];
        inst.cluster_id = u.cluster_id;
        inst.task_id = u.task_id;
        inst.instance = u.instance;
        inst.unit_indices.push_back(static_cast<int>(i));
    }
    std::vector<Instance> instances;
    instances.reserve(by_key.size());
    for (auto& [key, inst] : by_key)
        instances.push_back(std::move(inst));

    auto current_unit = [&](const Instance& inst) -> TransmissionUnit& {
        return units[static_cast<std::size_t>(inst.unit_indices[inst.cursor])];
    };

    Slot t = 0;
    for (;;) {
        // Pick the released instance with the earliest current-unit deadline.
        Instance* pick = nullptr;
        Slot next_release = -1;
        bool any_pending = false;
        for (Instance& inst : instances) {
            if (inst.cursor >= inst.unit_indices.size())
                continue;
            any_pending = true;
            TransmissionUnit& u = current_unit(inst);
            if (u.release <= t) {
                if (pick == nullptr) {
                    pick = &inst;
                } else {
                    TransmissionUnit& p = current_unit(*pick);
                    auto key = [](const TransmissionUnit& x, const Instance& i) {
                        return std::make_tuple(x.deadline, i.cluster_id, i.task_id,
                                               i.instance);
                    };
                    if (key(u, inst) < key(p, *pick))
                        pick = &inst;
                }
            } else if (next_release < 0 || u.release < next_release) {
                next_release = u.release;
            }
        }
        if (!any_pending)
            break;
        if (pick == nullptr) {
            t = next_release;  // inserted idle: nothing released yet
            continue;
        }

        TransmissionUnit& u = current_unit(*pick);

        if (insert_idle) {
            // Defer the release to the latest interval start that the unit
            // would otherwise squeeze.
            Slot defer_to = -1;
            for (const Interval& iv : build_interval_set(units)) {
                const bool strict_subset =
                    iv.start >= t && iv.end <= u.deadline &&
                    !(iv.start == t && iv.end == u.deadline);
                if (!strict_subset)
                    continue;
                if (t + u.size + interval_demand(units, iv) > iv.end)
                    defer_to = std::max(defer_to, iv.start);
            }
            if (defer_to > t) {
                u.release = std::max(u.release, defer_to);
                continue;  // back to the ready queue with the deferred release
            }
        }

        if (t + u.size > u.deadline) {
            result.failure = "unit " + u.label() + " misses window [" +
                             std::to_string(u.release) + "," +
                             std::to_string(u.deadline) + "] at t=" + std::to_string(t);
            return result;
        }

        u.start = t;
        u.finish = t + u.size;
        t = u.finish;
        pick->cursor++;
        if (pick->cursor < pick->unit_indices.size()) {
            TransmissionUnit& next = current_unit(*pick);
            next.release = std::max(next.release, u.finish);  // r_p = f_{p-1}
        }
    }

    for (std::size_t i = 0; i < units.size(); ++i)
        timeline.place(static_cast<int>(i));
    result.feasible = true;
    result.timeline = std::move(timeline);
    return result;
}

}  // namespace

ScheduleResult schedule_hts(const std::vector<Task>& tasks, int channel)
{
    return run_edf(tasks, channel, true);
}

ScheduleResult schedule_edf(const std::vector<Task>& tasks, int channel)
{
    return run_edf(tasks, channel, false);
}

namespace {

struct ExactSearch {
    std::vector<TransmissionUnit>* units;
    std::vector<int> order;           // unit indices in deadline order
    std::vector<char> occupied;       // one flag per slot in the horizon
    std::uint64_t budget;
    std::uint64_t nodes = 0;
    bool exhausted = false;

    // prev_in_instance[i] = index of unit l-1 of the same instance, or -1.
    std::vector<int> prev_in_instance;

    bool dfs(std::size_t depth)
    {
        if (depth == order.size())
            return true;
        if (++nodes > budget) {
            exhausted = true;
            return false;
        }
        const int idx = order[depth];
        TransmissionUnit& u = (*units)[static_cast<std::size_t>(idx)];
        Slot lo = u.static_release;
        if (prev_in_instance[static_cast<std::size_t>(idx)] >= 0)
            lo = std::max(lo, (*units)[static_cast<std::size_t>(
                                  prev_in_instance[static_cast<std::size_t>(idx)])]
                                  .finish);
        for (Slot s = lo; s + u.size <= u.deadline; ++s) {
            bool free = true;
            for (Slot c = s; c < s + u.size; ++c)
                if (occupied[static_cast<std::size_t>(c)]) {
                    free = false;
                    break;
                }
            if (!free)
                continue;
            for (Slot c = s; c < s + u.size; ++c)
                occupied[static_cast<std::size_t>(c)] = 1;
            u.start = s;
            u.finish = s + u.size;
            if (dfs(depth + 1))
                return true;
            for (Slot c = s; c < s + u.size; ++c)
                occupied[static_cast<std::size_t>(c)] = 0;
            u.start = u.finish = core::kUnscheduled;
            if (exhausted)
                return false;
        }
        return false;
    }
};

}  // namespace

ExactResult schedule_exact(const std::vector<Task>& tasks, std::uint64_t node_budget,
                           int channel)
{
    ExactResult result;
    if (unfit_task(tasks)) {
        result.status = ExactStatus::Infeasible;
        return result;
    }
    const Slot horizon = core::hyper_period(tasks);
    Timeline timeline(channel, horizon);
    timeline.units = core::expand_instances(tasks, horizon);
    auto& units = timeline.units;

    // Necessary demand condition: units fully inside [s, e] cannot exceed
    // the interval length. Sound to reject outright.
    {
        std::set<Slot> starts, ends;
        for (const TransmissionUnit& u : units) {
            starts.insert(u.static_release);
            ends.insert(u.deadline);
        }
        for (Slot s : starts)
            for (Slot e : ends) {
                if (e <= s)
                    continue;
                Slot demand = 0;
                for (const TransmissionUnit& u : units)
                    if (u.static_release >= s && u.deadline <= e)
                        demand += u.size;
                if (demand > e - s) {
                    result.status = ExactStatus::Infeasible;
                    return result;
                }
            }
    }

    ExactSearch search;
    search.units = &units;
    search.budget = node_budget;
    search.occupied.assign(static_cast<std::size_t>(horizon), 0);
    search.order.resize(units.size());
    std::iota(search.order.begin(), search.order.end(), 0);
    std::sort(search.order.begin(), search.order.end(), [&](int a, int b) {
        const TransmissionUnit& ua = units[static_cast<std::size_t>(a)];
        const TransmissionUnit& ub = units[static_cast<std::size_t>(b)];
        return std::make_tuple(ua.deadline, ua.cluster_id, ua.task_id, ua.instance,
                               ua.unit) < std::make_tuple(ub.deadline, ub.cluster_id,
                                                          ub.task_id, ub.instance,
                                                          ub.unit);
    });

    std::map<std::tuple<int, int, int, int>, int> index_of;
    for (std::size_t i = 0; i < units.size(); ++i) {
        const TransmissionUnit& u = units[i];
        index_of[{u.cluster_id, u.task_id, u.instance, u.unit}] = static_cast<int>(i);
    }
    search.prev_in_instance.assign(units.size(), -1);
    for (std::size_t i = 0; i < units.size(); ++i) {
        const TransmissionUnit& u = units[i];
        if (u.unit > 1)
            search.prev_in_instance[i] =
                index_of.at({u.cluster_id, u.task_id, u.instance, u.unit - 1});
    }

    const bool found = search.dfs(0);
    result.nodes_visited = search.nodes;
    if (found) {
        for (std::size_t i = 0; i < units.size(); ++i)
            timeline.place(static_cast<int>(i));
        result.status = ExactStatus::Feasible;
        result.timeline = std::move(timeline);
    } else {
        result.status = search.exhausted ? ExactStatus::BudgetExhausted
                                         : ExactStatus::Infeasible;
    }
    return result;
}

}  // namespace srtwifi::sched
