#ifndef SRTWIFI_SCHED_SWEEP_HPP
#define SRTWIFI_SCHED_SWEEP_HPP

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "srtwifi/sched/solvers.hpp"

namespace srtwifi::sched {

/// Random task-set generator parameters. The utilization split is an
/// iterative uniform partition normalized to the bucket target; periods
/// come from a divisor-friendly set so hyper-periods stay bounded.
struct GeneratorConfig {
    int min_tasks = 8;
    int max_tasks = 12;
    std::vector<Slot> periods = {10, 15, 20, 30, 60};
    int max_unit_size = 4;   // B in [1, max]
    int max_unit_count = 3;  // U in [1, max]
    /// Deadline drawn uniformly in [max(B*U, ceil(T*min_deadline_frac)), T].
    /// The default admits tight deadlines, which is where idle-insertion
    /// separates from plain EDF.
    double min_deadline_frac = 0.0;
};

std::vector<Task> generate_task_set(const GeneratorConfig& config,
                                    double target_utilization, std::uint64_t seed);

struct SweepConfig {
    GeneratorConfig generator;
    std::vector<double> utilization_buckets = {0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
    int sets_per_bucket = 2000;
    std::uint64_t seed = 1;
    bool run_exact = false;
    std::uint64_t exact_node_budget = 2'000'000;
    int jobs = 1;  // parallel workers; results are identical for any value
    bool verify_solutions = true;
};

struct BucketStats {
    double utilization = 0;
    int generated = 0;
    int schedulable_edf = 0;
    int schedulable_hts = 0;
    int schedulable_exact = 0;
    int exact_budget_exhausted = 0;
    double mean_time_edf_us = 0;
    double mean_time_hts_us = 0;
    double mean_time_exact_us = 0;
    int verifier_violations = 0;
};

struct SchedulabilityReport {
    std::vector<BucketStats> buckets;
};

/// Runs EDF/HTS (and optionally the exact oracle) over randomly generated
/// task sets per utilization bucket. Deterministic from the seed and
/// independent of the parallelism degree: each set's sub-seed is derived
/// from (seed, bucket, set index).
SchedulabilityReport schedulability_sweep(const SweepConfig& config);

/// CSV: bucket,generated,edf,hts,exact,exact_exhausted. Timing means are
/// not written; the file is byte-identical for a given seed.
void write_sweep_csv(std::ostream& out, const SchedulabilityReport& report);

}  // namespace srtwifi::sched

#endif
