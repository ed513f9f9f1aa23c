#include "srtwifi/sched/sweep.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>
#include <thread>

#include "srtwifi/core/verify.hpp"

namespace srtwifi::sched {

namespace {

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// Small deterministic generator; avoids the implementation-defined
// sequences of the standard distributions.
struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() { return state = splitmix64(state); }
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi)  // inclusive
    {
        return lo + static_cast<std::int64_t>(
                        next() % static_cast<std::uint64_t>(hi - lo + 1));
    }
};

}  // namespace

std::vector<Task> generate_task_set(const GeneratorConfig& config,
                                    double target_utilization, std::uint64_t seed)
{
    Rng rng(seed);
    const int n = static_cast<int>(rng.uniform_int(config.min_tasks, config.max_tasks));

    // Uniform partition of the target utilization.
    std::vector<double> weights(static_cast<std::size_t>(n));
    double total = 0;
    for (double& w : weights) {
        w = rng.uniform01() + 1e-9;
        total += w;
    }

    std::vector<Task> tasks;
    tasks.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double u = weights[static_cast<std::size_t>(i)] / total * target_utilization;
        const Slot period = config.periods[static_cast<std::size_t>(
            rng.uniform_int(0, static_cast<std::int64_t>(config.periods.size()) - 1))];
        const std::int64_t max_cost =
            static_cast<std::int64_t>(config.max_unit_size) * config.max_unit_count;
        const std::int64_t cost = std::clamp<std::int64_t>(
            std::llround(u * static_cast<double>(period)), 1, max_cost);

        // Factor the cost into B*U, preferring the closest product with the
        // smallest unit count.
        int best_b = 1, best_u = 1;
        std::int64_t best_err = -1;
        for (int uc = 1; uc <= config.max_unit_count; ++uc)
            for (int b = 1; b <= config.max_unit_size; ++b) {
                const std::int64_t err = std::llabs(static_cast<std::int64_t>(b) * uc - cost);
                if (best_err < 0 || err < best_err ||
                    (err == best_err && std::make_pair(uc, b) < std::make_pair(best_u, best_b))) {
                    best_err = err;
                    best_b = b;
                    best_u = uc;
                }
            }

        Task t;
        t.cluster_id = 1;
        t.task_id = i + 1;
        t.unit_size = best_b;
        t.unit_count = best_u;
        t.period = period;
        const Slot exec = static_cast<Slot>(best_b) * best_u;
        const Slot dmin = std::max<Slot>(
            exec, static_cast<Slot>(
                      std::ceil(config.min_deadline_frac * static_cast<double>(period))));
        t.deadline = rng.uniform_int(dmin, period);
        tasks.push_back(t);
    }
    return tasks;
}

namespace {

struct SetOutcome {
    bool edf = false, hts = false;
    ExactStatus exact = ExactStatus::BudgetExhausted;
    bool exact_ran = false;
    double time_edf_us = 0, time_hts_us = 0, time_exact_us = 0;
    int verifier_violations = 0;
};

SetOutcome run_one(const SweepConfig& config, double bucket, std::uint64_t seed)
{
    SetOutcome out;
    const std::vector<Task> tasks = generate_task_set(config.generator, bucket, seed);

    core::ChannelAssignment single;
    single.channel_count = 1;
    single.channel_of[1] = 1;

    auto timed = [](auto&& fn, double& us) {
        const auto t0 = std::chrono::steady_clock::now();
        auto r = fn();
        us = std::chrono::duration<double, std::micro>(
                 std::chrono::steady_clock::now() - t0)
                 .count();
        return r;
    };

    const ScheduleResult edf =
        timed([&] { return schedule_edf(tasks); }, out.time_edf_us);
    const ScheduleResult hts =
        timed([&] { return schedule_hts(tasks); }, out.time_hts_us);
    out.edf = edf.feasible;
    out.hts = hts.feasible;

    if (config.verify_solutions) {
        for (const ScheduleResult* r : {&edf, &hts})
            if (r->feasible &&
                !core::verify_schedule({r->timeline}, tasks, single).ok())
                out.verifier_violations++;
    }

    if (config.run_exact) {
        out.exact_ran = true;
        const ExactResult exact = timed(
            [&] { return schedule_exact(tasks, config.exact_node_budget); },
            out.time_exact_us);
        out.exact = exact.status;
        if (config.verify_solutions && exact.status == ExactStatus::Feasible &&
            !core::verify_schedule({exact.timeline}, tasks, single).ok())
            out.verifier_violations++;
    }
    return out;
}

}  // namespace

SchedulabilityReport schedulability_sweep(const SweepConfig& config)
{
    SchedulabilityReport report;
    const int jobs = std::max(1, config.jobs);

    for (std::size_t bi = 0; bi < config.utilization_buckets.size(); ++bi) {
        const double bucket = config.utilization_buckets[bi];
        std::vector<SetOutcome> outcomes(
            static_cast<std::size_t>(config.sets_per_bucket));

        auto worker = [&](int first, int step) {
            for (int s = first; s < config.sets_per_bucket; s += step) {
                const std::uint64_t sub_seed = splitmix64(
                    splitmix64(config.seed ^ (0xB0C4u + bi)) + static_cast<std::uint64_t>(s));
                outcomes[static_cast<std::size_t>(s)] = run_one(config, bucket, sub_seed);
            }
        };
        if (jobs == 1) {
            worker(0, 1);
        } else {
            std::vector<std::thread> pool;
            for (int j = 0; j < jobs; ++j)
                pool.emplace_back(worker, j, jobs);
            for (auto& th : pool)
                th.join();
        }

        BucketStats stats;
        stats.utilization = bucket;
        stats.generated = config.sets_per_bucket;
        for (const SetOutcome& o : outcomes) {
            stats.schedulable_edf += o.edf ? 1 : 0;
            stats.schedulable_hts += o.hts ? 1 : 0;
            if (o.exact_ran) {
                stats.schedulable_exact += o.exact == ExactStatus::Feasible ? 1 : 0;
                stats.exact_budget_exhausted +=
                    o.exact == ExactStatus::BudgetExhausted ? 1 : 0;
            }
            stats.mean_time_edf_us += o.time_edf_us;
            stats.mean_time_hts_us += o.time_hts_us;
            stats.mean_time_exact_us += o.time_exact_us;
            stats.verifier_violations += o.verifier_violations;
        }
        const double n = std::max(1, stats.generated);
        stats.mean_time_edf_us /= n;
        stats.mean_time_hts_us /= n;
        stats.mean_time_exact_us /= n;
        report.buckets.push_back(stats);
    }
    return report;
}

void write_sweep_csv(std::ostream& out, const SchedulabilityReport& report)
{
    // Timing means are deliberately excluded: the file must be
    // byte-identical across runs with the same seed.
    out << "bucket,generated,edf,hts,exact,exact_exhausted\n";
    for (const BucketStats& b : report.buckets)
        out << b.utilization << ',' << b.generated << ',' << b.schedulable_edf << ','
            << b.schedulable_hts << ',' << b.schedulable_exact << ','
            << b.exact_budget_exhausted << '\n';
}

}  // namespace srtwifi::sched
