#include "srtwifi/netsim/sim.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <ostream>
#include <stdexcept>

#include "json.hpp"
#include "srtwifi/core/verify.hpp"
#include "srtwifi/phyrate/airtime.hpp"
#include "srtwifi/sched/solvers.hpp"

namespace srtwifi::netsim {

using core::Slot;

const LinkMetrics* SimulationResult::link(int cluster_id, int task_id) const
{
    for (const LinkMetrics& m : links)
        if (m.cluster_id == cluster_id && m.task_id == task_id)
            return &m;
    return nullptr;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() { return state = splitmix64(state); }
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

struct LinkState {
    int cluster_id = 0;
    int task_id = 0;
    int channel = 1;
    const LinkTrace* trace = nullptr;
    const core::Task* spec_task = nullptr;  // unit_size 0 means rate-derived
    phyrate::RateEntry rate;
    phyrate::SnrWindow window{20};
    Rng rng{0};
    std::deque<Slot> queue;  // generation slots, oldest first

    std::int64_t transmitted = 0, delivered = 0, lost = 0;
    double delay_sum = 0;
    Slot delay_max = 0;
    std::vector<std::pair<std::int64_t, std::int64_t>> per_superframe;

    int unit_size() const
    {
        return spec_task->unit_size > 0 ? spec_task->unit_size : rate.atomic_slot_usage;
    }
};

struct ChannelState {
    int channel = 1;
    std::vector<std::size_t> links;  // indices into the link vector
    core::Timeline active;
    std::vector<core::Task> active_tasks;
    bool has_pending = false;
    core::Timeline pending;
    std::vector<core::Task> pending_tasks;
    Slot pending_activation = 0;
    std::vector<std::pair<std::size_t, phyrate::RateEntry>> pending_rates;
};

core::Task effective_task(const LinkState& link)
{
    core::Task t = *link.spec_task;
    t.unit_size = link.unit_size();
    return t;
}

void check_schedule(const ChannelState& ch, const std::vector<core::Task>& tasks)
{
    core::ChannelAssignment one;
    one.channel_count = ch.channel;
    for (const core::Task& t : tasks)
        one.channel_of[t.cluster_id] = ch.channel;
    const core::Verdict verdict = core::verify_schedule({ch.active}, tasks, one);
    if (!verdict.ok())
        throw std::logic_error("simulator produced an invalid schedule: " +
                               verdict.violations.front().detail);
}

}  // namespace

SimulationResult run_simulation(const Scenario& scenario)
{
    return run_simulation(
        scenario, phyrate::RateTable::defaults(
                      scenario.payload_bytes,
                      static_cast<std::int64_t>(scenario.superframe.atomic_slot_us),
                      scenario.airtime));
}

SimulationResult run_simulation(const Scenario& scenario,
                                const phyrate::RateTable& table)
{
    scenario.validate();
    const int sf_slots = scenario.superframe.slot_count;
    const double as_us = scenario.superframe.atomic_slot_us;
    const Slot duration_slots =
        static_cast<Slot>(scenario.duration_superframes) * sf_slots;

    SimulationResult result;
    result.seed = scenario.seed;
    result.duration_slots = duration_slots;

    // Link table with initial rates from the trace value at t = 0.
    std::vector<LinkState> links;
    for (const core::Cluster& cluster : scenario.clusters)
        for (const core::Task& task : cluster.tasks) {
            LinkState link;
            link.cluster_id = cluster.id;
            link.task_id = task.task_id;
            link.trace = scenario.trace_for(cluster.id, task.task_id);
            link.spec_task = &task;
            const auto initial = table.rate_for_snr(link.trace->snr_at(0));
            link.rate = initial ? *initial : table.entries().front();
            link.window = phyrate::SnrWindow(scenario.adaptation.window);
            link.rng = Rng(splitmix64(scenario.seed ^
                                      (0x51A4ull + 1'000'003ull * cluster.id +
                                       static_cast<std::uint64_t>(task.task_id))));
            link.per_superframe.assign(
                static_cast<std::size_t>(scenario.duration_superframes), {0, 0});
            links.push_back(link);
        }

    // Channel assignment is fixed for the whole run; only schedules and
    // rates react to SNR changes.
    std::vector<core::Cluster> effective;
    for (const core::Cluster& cluster : scenario.clusters) {
        core::Cluster c;
        c.id = cluster.id;
        for (const LinkState& link : links)
            if (link.cluster_id == cluster.id)
                c.tasks.push_back(effective_task(link));
        effective.push_back(c);
    }
    // A demand that cannot fit its own deadline makes the whole scenario
    // infeasible before any channel or slot assignment is attempted.
    for (const core::Cluster& cluster : effective)
        for (const core::Task& task : cluster.tasks)
            if (static_cast<std::int64_t>(task.unit_size) * task.unit_count >
                task.deadline) {
                result.status = RunStatus::InfeasibleInitial;
                result.detail = "task " + std::to_string(cluster.id) + "." +
                                std::to_string(task.task_id) +
                                " demands more slots than its deadline holds";
                return result;
            }

    const core::ChannelAssignment assignment =
        sched::assign_channels_hcs(effective, scenario.channel_count);

    std::vector<ChannelState> channels;
    for (int ch = 1; ch <= scenario.channel_count; ++ch) {
        ChannelState state;
        state.channel = ch;
        for (std::size_t i = 0; i < links.size(); ++i)
            if (assignment.channel(links[i].cluster_id) == ch) {
                links[i].channel = ch;
                state.links.push_back(i);
            }
        if (state.links.empty())
            continue;

        for (std::size_t i : state.links)
            state.active_tasks.push_back(effective_task(links[i]));
        const sched::ScheduleResult sr = sched::schedule_hts(state.active_tasks, ch);
        if (!sr.feasible) {
            result.status = RunStatus::InfeasibleInitial;
            result.detail = "initial schedule infeasible on channel " +
                            std::to_string(ch) + ": " + sr.failure;
            return result;
        }
        state.active = sr.timeline;
        check_schedule(state, state.active_tasks);
        channels.push_back(std::move(state));
    }

    auto link_at = [&](int cluster_id, int task_id) -> LinkState& {
        for (LinkState& l : links)
            if (l.cluster_id == cluster_id && l.task_id == task_id)
                return l;
        throw std::logic_error("scheduled unit belongs to no link");
    };

    const Slot eval_every =
        static_cast<Slot>(scenario.adaptation.eval_period_superframes) * sf_slots;

    for (Slot t = 0; t < duration_slots; ++t) {
        // Activate a pending schedule at its hyper-period boundary.
        for (ChannelState& ch : channels)
            if (ch.has_pending && t == ch.pending_activation) {
                ch.active = ch.pending;
                ch.active_tasks = ch.pending_tasks;
                ch.has_pending = false;
                for (const auto& [li, entry] : ch.pending_rates) {
                    result.rate_changes.push_back({t, links[li].cluster_id,
                                                   links[li].task_id,
                                                   links[li].rate.rate_mbps,
                                                   entry.rate_mbps});
                    links[li].rate = entry;
                }
                ch.pending_rates.clear();
                check_schedule(ch, ch.active_tasks);
            }

        // Instance releases: the whole instance's packets become available
        // at the period boundary.
        for (LinkState& link : links)
            if (t % link.spec_task->period == 0)
                for (int u = 0; u < link.spec_task->unit_count; ++u)
                    link.queue.push_back(t);

        // Transmissions: one packet per transmission unit, started at the
        // unit's first cell. SNR is sampled per attempt (the preamble is
        // decodable even when the payload is lost).
        for (ChannelState& ch : channels) {
            const Slot local = t % ch.active.horizon;
            const int idx = ch.active.cells[static_cast<std::size_t>(local)];
            if (idx < 0)
                continue;
            const core::TransmissionUnit& unit =
                ch.active.units[static_cast<std::size_t>(idx)];
            if (unit.start != local)
                continue;
            LinkState& link = link_at(unit.cluster_id, unit.task_id);
            if (link.queue.empty())
                continue;

            const Slot gen = link.queue.front();
            link.queue.pop_front();
            const double snr = link.trace->snr_at(static_cast<double>(t) * as_us);
            link.window.push(snr);

            const double p =
                scenario.pdr_model.pdr(snr, link.rate.snr_threshold_db);
            const bool ok = link.rng.uniform01() < p;
            link.transmitted++;
            auto& sf = link.per_superframe[static_cast<std::size_t>(t / sf_slots)];
            sf.first++;
            if (ok) {
                link.delivered++;
                sf.second++;
                const Slot delay = t - gen;
                link.delay_sum += static_cast<double>(delay);
                link.delay_max = std::max(link.delay_max, delay);
            } else {
                link.lost++;
            }
        }

        // Rate adaptation at superframe boundaries; schedule changes are
        // all-or-nothing across channels.
        const Slot next = t + 1;
        if (!scenario.adaptation.enabled || next >= duration_slots ||
            next % eval_every != 0)
            continue;

        std::vector<phyrate::RateEntry> desired(links.size());
        bool any_change = false;
        for (std::size_t i = 0; i < links.size(); ++i) {
            desired[i] = links[i].rate;
            if (links[i].window.empty())
                continue;
            const auto target =
                phyrate::adapt_rate(links[i].window, links[i].rate, table);
            desired[i] = target ? *target : table.entries().front();
            if (desired[i].rate_mbps != links[i].rate.rate_mbps)
                any_change = true;
        }
        if (!any_change)
            continue;

        // Tentative reschedule of every channel whose unit sizes change.
        struct Proposal {
            ChannelState* channel;
            std::vector<core::Task> tasks;
            core::Timeline timeline{1, 0};
        };
        std::vector<Proposal> proposals;
        bool all_feasible = true;
        std::string failure;
        for (ChannelState& ch : channels) {
            std::vector<core::Task> tasks;
            bool resized = false;
            for (std::size_t k = 0; k < ch.links.size(); ++k) {
                LinkState probe = links[ch.links[k]];
                probe.rate = desired[ch.links[k]];
                core::Task t2 = effective_task(probe);
                if (t2.unit_size != ch.active_tasks[k].unit_size)
                    resized = true;
                tasks.push_back(t2);
            }
            if (!resized)
                continue;
            const sched::ScheduleResult sr = sched::schedule_hts(tasks, ch.channel);
            if (!sr.feasible) {
                all_feasible = false;
                failure = "channel " + std::to_string(ch.channel) + ": " + sr.failure;
                break;
            }
            proposals.push_back({&ch, std::move(tasks), sr.timeline});
        }

        if (!all_feasible) {
            result.infeasible_events++;
            result.schedule_updates.push_back({next, false, core::kUnscheduled, failure});
            if (scenario.fail_on_infeasible) {
                result.status = RunStatus::InfeasibleAborted;
                result.detail = "reschedule at slot " + std::to_string(next) +
                                " infeasible: " + failure;
                break;
            }
            continue;  // keep the old schedule and rates
        }

        std::vector<bool> rescheduled(links.size(), false);
        for (Proposal& prop : proposals) {
            ChannelState& ch = *prop.channel;
            const Slot h = prop.timeline.horizon;
            ch.pending = std::move(prop.timeline);
            ch.pending_tasks = std::move(prop.tasks);
            ch.pending_activation = ((next + h - 1) / h) * h;
            ch.has_pending = true;
            ch.pending_rates.clear();
            for (std::size_t i : ch.links) {
                rescheduled[i] = true;
                if (desired[i].rate_mbps != links[i].rate.rate_mbps)
                    ch.pending_rates.push_back({i, desired[i]});
            }
            result.schedule_updates.push_back(
                {next, true, ch.pending_activation,
                 "channel " + std::to_string(ch.channel)});
        }
        // Rate-only changes (pinned unit sizes) take effect at the boundary.
        for (std::size_t i = 0; i < links.size(); ++i)
            if (!rescheduled[i] && desired[i].rate_mbps != links[i].rate.rate_mbps) {
                result.rate_changes.push_back({next, links[i].cluster_id,
                                               links[i].task_id,
                                               links[i].rate.rate_mbps,
                                               desired[i].rate_mbps});
                links[i].rate = desired[i];
            }
    }

    const double duration_us = static_cast<double>(duration_slots) * as_us;
    for (const LinkState& link : links) {
        LinkMetrics m;
        m.cluster_id = link.cluster_id;
        m.task_id = link.task_id;
        m.transmitted = link.transmitted;
        m.delivered = link.delivered;
        m.lost = link.lost;
        m.pdr = link.transmitted
                    ? static_cast<double>(link.delivered) /
                          static_cast<double>(link.transmitted)
                    : 0.0;
        m.throughput_mbps =
            static_cast<double>(link.delivered) * 8.0 *
            (scenario.payload_bytes + scenario.airtime.frame_overhead_bytes) /
            duration_us;
        m.mean_delay_slots =
            link.delivered ? link.delay_sum / static_cast<double>(link.delivered) : 0.0;
        m.max_delay_slots = link.delay_max;
        m.final_rate_mbps = link.rate.rate_mbps;
        m.per_superframe = link.per_superframe;
        result.links.push_back(std::move(m));
    }
    return result;
}

std::string metrics_to_json(const SimulationResult& result)
{
    using nlohmann::json;
    json j;
    switch (result.status) {
    case RunStatus::Ok: j["status"] = "ok"; break;
    case RunStatus::InfeasibleInitial: j["status"] = "infeasible_initial"; break;
    case RunStatus::InfeasibleAborted: j["status"] = "infeasible_aborted"; break;
    }
    j["seed"] = result.seed;
    j["duration_slots"] = result.duration_slots;
    j["infeasible_events"] = result.infeasible_events;
    if (!result.detail.empty())
        j["detail"] = result.detail;

    j["links"] = nlohmann::json::array();
    for (const LinkMetrics& m : result.links)
        j["links"].push_back({{"cluster", m.cluster_id},
                              {"task", m.task_id},
                              {"transmitted", m.transmitted},
                              {"delivered", m.delivered},
                              {"lost", m.lost},
                              {"pdr", m.pdr},
                              {"throughput_mbps", m.throughput_mbps},
                              {"mean_delay_slots", m.mean_delay_slots},
                              {"max_delay_slots", m.max_delay_slots},
                              {"final_rate_mbps", m.final_rate_mbps}});
    j["rate_changes"] = nlohmann::json::array();
    for (const RateChange& rc : result.rate_changes)
        j["rate_changes"].push_back({{"slot", rc.slot},
                                     {"cluster", rc.cluster_id},
                                     {"task", rc.task_id},
                                     {"old_rate", rc.old_rate_mbps},
                                     {"new_rate", rc.new_rate_mbps}});
    j["schedule_updates"] = nlohmann::json::array();
    for (const ScheduleUpdate& su : result.schedule_updates)
        j["schedule_updates"].push_back({{"eval_slot", su.eval_slot},
                                         {"feasible", su.feasible},
                                         {"activation_slot", su.activation_slot},
                                         {"detail", su.detail}});
    return j.dump(2);
}

void write_link_metrics_csv(std::ostream& out, const SimulationResult& result)
{
    out << "cluster,task,transmitted,delivered,lost,pdr,throughput_mbps,"
           "mean_delay_slots,max_delay_slots,final_rate_mbps\n";
    for (const LinkMetrics& m : result.links)
        out << m.cluster_id << ',' << m.task_id << ',' << m.transmitted << ','
            << m.delivered << ',' << m.lost << ',' << m.pdr << ','
            << m.throughput_mbps << ',' << m.mean_delay_slots << ','
            << m.max_delay_slots << ',' << m.final_rate_mbps << '\n';
}

void write_rate_changes_csv(std::ostream& out, const SimulationResult& result)
{
    out << "slot,cluster,task,old_rate,new_rate\n";
    for (const RateChange& rc : result.rate_changes)
        out << rc.slot << ',' << rc.cluster_id << ',' << rc.task_id << ','
            << rc.old_rate_mbps << ',' << rc.new_rate_mbps << '\n';
}

}  // namespace srtwifi::netsim
