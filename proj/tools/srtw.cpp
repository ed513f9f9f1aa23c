// srtw: scheduling, simulation and export front end.
//
// Exit codes: 0 success, 1 input or configuration error, 2 infeasible
// schedule, 3 simulation aborted on an infeasible reschedule when the
// scenario requests fail-on-infeasible.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "srtwifi/core/export.hpp"
#include "srtwifi/core/types.hpp"
#include "srtwifi/core/verify.hpp"
#include "srtwifi/netsim/scenario.hpp"
#include "srtwifi/netsim/sim.hpp"
#include "srtwifi/phyrate/rate_table.hpp"
#include "srtwifi/sched/solvers.hpp"
#include "srtwifi/sched/sweep.hpp"
#include "srtwifi/snr/bench.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace srtwifi;

namespace {

int log_level()
{
    const char* v = std::getenv("SRTW_LOG_LEVEL");
    return v ? std::atoi(v) : 1;
}

void note(const std::string& message)
{
    if (log_level() >= 1)
        std::cerr << "srtw: " << message << "\n";
}

// --out beats SRTW_OUT_DIR beats the current directory.
fs::path resolve_out_dir(const std::string& out_flag)
{
    fs::path dir;
    if (!out_flag.empty())
        dir = out_flag;
    else if (const char* env = std::getenv("SRTW_OUT_DIR"))
        dir = env;
    else
        dir = ".";
    fs::create_directories(dir);
    return dir;
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const fs::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    out << text;
}

// Tasks as the solvers see them: unit_size 0 means "derive from the rate
// the link sustains at t = 0", matching the simulator's initial schedule.
std::vector<core::Cluster> effective_clusters(const netsim::Scenario& scenario,
                                              const phyrate::RateTable& table)
{
    std::vector<core::Cluster> out;
    for (const core::Cluster& cluster : scenario.clusters) {
        core::Cluster c;
        c.id = cluster.id;
        for (core::Task task : cluster.tasks) {
            if (task.unit_size == 0) {
                const netsim::LinkTrace* trace =
                    scenario.trace_for(cluster.id, task.task_id);
                const auto entry = table.rate_for_snr(trace->snr_at(0));
                const phyrate::RateEntry rate =
                    entry ? *entry : table.entries().front();
                task.unit_size = rate.atomic_slot_usage;
            }
            c.tasks.push_back(task);
        }
        out.push_back(c);
    }
    return out;
}

struct SolvedSchedule {
    bool feasible = false;
    std::string failure;
    std::vector<core::Timeline> timelines;
    std::vector<core::Task> tasks;
    core::ChannelAssignment assignment;
};

SolvedSchedule solve(const netsim::Scenario& scenario, const std::string& solver,
                     std::uint64_t seed)
{
    SolvedSchedule solved;
    const phyrate::RateTable table = phyrate::RateTable::defaults(
        scenario.payload_bytes,
        static_cast<std::int64_t>(scenario.superframe.atomic_slot_us),
        scenario.airtime);
    const std::vector<core::Cluster> clusters = effective_clusters(scenario, table);

    // A unit demand that overflows its own deadline is a verdict, not an
    // input error: report it before channel assignment can reject the task.
    for (const core::Cluster& c : clusters)
        for (const core::Task& t : c.tasks)
            if (static_cast<core::Slot>(t.unit_size) * t.unit_count > t.deadline) {
                solved.failure = "unit " + std::to_string(c.id) + "." +
                                 std::to_string(t.task_id) + "#1/1 needs " +
                                 std::to_string(t.unit_size * t.unit_count) +
                                 " slots inside a deadline of " +
                                 std::to_string(t.deadline);
                return solved;
            }

    solved.assignment =
        solver == "rcs"
            ? sched::assign_channels_rcs(clusters, scenario.channel_count, seed)
            : sched::assign_channels_hcs(clusters, scenario.channel_count);

    for (int ch = 1; ch <= scenario.channel_count; ++ch) {
        std::vector<core::Task> channel_tasks;
        for (const core::Cluster& c : clusters)
            if (solved.assignment.channel(c.id) == ch)
                for (const core::Task& t : c.tasks)
                    channel_tasks.push_back(t);
        if (channel_tasks.empty())
            continue;
        solved.tasks.insert(solved.tasks.end(), channel_tasks.begin(),
                            channel_tasks.end());

        if (solver == "exact") {
            const sched::ExactResult r = sched::schedule_exact(
                channel_tasks, 5'000'000, ch);
            if (r.status == sched::ExactStatus::Feasible) {
                solved.timelines.push_back(r.timeline);
            } else {
                solved.failure =
                    r.status == sched::ExactStatus::BudgetExhausted
                        ? "exact search exhausted its node budget on channel " +
                              std::to_string(ch)
                        : "no feasible schedule exists on channel " +
                              std::to_string(ch);
                return solved;
            }
        } else {
            const sched::ScheduleResult r =
                solver == "edf" ? sched::schedule_edf(channel_tasks, ch)
                                : sched::schedule_hts(channel_tasks, ch);
            if (!r.feasible) {
                solved.failure = "channel " + std::to_string(ch) + ": " + r.failure;
                return solved;
            }
            solved.timelines.push_back(r.timeline);
        }
    }
    solved.feasible = true;
    return solved;
}

void write_register_images(const std::vector<core::Timeline>& timelines,
                           const core::SuperframeConfig& superframe,
                           const fs::path& dir)
{
    for (const core::Timeline& tl : timelines) {
        const std::vector<int> codes = core::slot_codes_from_timeline(tl, superframe);
        const core::RegisterImage image = core::encode_register_image(codes);
        const std::string stem = "regs_ch" + std::to_string(tl.channel);
        std::ofstream bin(dir / (stem + ".bin"), std::ios::binary);
        core::write_register_image_binary(bin, image);
        std::ofstream hex(dir / (stem + ".hex"));
        core::write_register_image_hex(hex, image);
    }
}

int cmd_schedule(const std::string& scenario_path, const std::string& solver,
                 std::optional<std::uint64_t> seed, const std::string& out_flag)
{
    const netsim::Scenario scenario = netsim::load_scenario(scenario_path);
    const fs::path dir = resolve_out_dir(out_flag);
    const SolvedSchedule solved =
        solve(scenario, solver, seed.value_or(scenario.seed));

    if (!solved.feasible) {
        write_file(dir / "verdict.txt", "infeasible: " + solved.failure + "\n");
        std::cerr << "infeasible: " << solved.failure << "\n";
        return 2;
    }

    const core::Verdict verdict =
        core::verify_schedule(solved.timelines, solved.tasks, solved.assignment);
    std::ostringstream verdict_text;
    verdict_text << (verdict.ok() ? "feasible, verified" : "feasible, NOT verified")
                 << "\n";
    for (const core::Violation& v : verdict.violations)
        verdict_text << v.detail << "\n";
    write_file(dir / "verdict.txt", verdict_text.str());

    std::ofstream gantt(dir / "gantt.csv");
    core::write_gantt_csv(gantt, solved.timelines);
    write_file(dir / "timelines.json", core::timelines_to_json(solved.timelines));
    write_register_images(solved.timelines, scenario.superframe, dir);

    note("schedule written to " + dir.string());
    if (!verdict.ok()) {
        std::cerr << "verifier rejected the schedule; see verdict.txt\n";
        return 2;
    }
    return 0;
}

int cmd_verify(const std::string& scenario_path, const std::string& timelines_path)
{
    const netsim::Scenario scenario = netsim::load_scenario(scenario_path);
    const std::vector<core::Timeline> timelines =
        core::timelines_from_json(read_file(timelines_path));
    const phyrate::RateTable table = phyrate::RateTable::defaults(
        scenario.payload_bytes,
        static_cast<std::int64_t>(scenario.superframe.atomic_slot_us),
        scenario.airtime);
    const std::vector<core::Cluster> clusters = effective_clusters(scenario, table);
    const core::ChannelAssignment assignment =
        sched::assign_channels_hcs(clusters, scenario.channel_count);
    std::vector<core::Task> tasks;
    for (const core::Cluster& c : clusters)
        tasks.insert(tasks.end(), c.tasks.begin(), c.tasks.end());

    const core::Verdict verdict = core::verify_schedule(timelines, tasks, assignment);
    if (verdict.ok()) {
        std::cout << "ok\n";
        return 0;
    }
    for (const core::Violation& v : verdict.violations)
        std::cout << v.detail << "\n";
    return 2;
}

sched::SweepConfig sweep_config_from_json(const std::string& text)
{
    const json doc = json::parse(text);
    sched::SweepConfig config;
    if (doc.contains("buckets"))
        config.utilization_buckets = doc["buckets"].get<std::vector<double>>();
    config.sets_per_bucket = doc.value("sets_per_bucket", config.sets_per_bucket);
    config.seed = doc.value("seed", config.seed);
    config.run_exact = doc.value("run_exact", config.run_exact);
    config.exact_node_budget =
        doc.value("exact_node_budget", config.exact_node_budget);
    config.jobs = doc.value("jobs", config.jobs);
    if (doc.contains("generator")) {
        const json& g = doc["generator"];
        sched::GeneratorConfig& gen = config.generator;
        gen.min_tasks = g.value("min_tasks", gen.min_tasks);
        gen.max_tasks = g.value("max_tasks", gen.max_tasks);
        if (g.contains("periods"))
            gen.periods = g["periods"].get<std::vector<sched::Slot>>();
        gen.max_unit_size = g.value("max_unit_size", gen.max_unit_size);
        gen.max_unit_count = g.value("max_unit_count", gen.max_unit_count);
        gen.min_deadline_frac = g.value("min_deadline_frac", gen.min_deadline_frac);
    }
    return config;
}

int cmd_sweep(const std::string& config_path, std::optional<std::uint64_t> seed,
              int jobs, bool exact, const std::string& out_flag)
{
    sched::SweepConfig config;
    if (!config_path.empty())
        config = sweep_config_from_json(read_file(config_path));
    if (seed)
        config.seed = *seed;
    if (jobs > 0)
        config.jobs = jobs;
    if (exact)
        config.run_exact = true;

    const sched::SchedulabilityReport report = sched::schedulability_sweep(config);
    const fs::path dir = resolve_out_dir(out_flag);
    std::ofstream csv(dir / "sweep.csv");
    sched::write_sweep_csv(csv, report);
    note("sweep written to " + (dir / "sweep.csv").string());
    return 0;
}

int cmd_simulate(const std::string& scenario_path, std::optional<std::uint64_t> seed,
                 bool fail_on_infeasible, const std::string& out_flag,
                 const std::string& format)
{
    netsim::Scenario scenario = netsim::load_scenario(scenario_path);
    if (seed) {
        scenario.seed = *seed;
        scenario.seed_given = true;
    }
    if (!scenario.seed_given) {
        scenario.seed = std::random_device{}();
        scenario.seed_given = true;
        note("no seed given; drew " + std::to_string(scenario.seed));
    }
    if (fail_on_infeasible)
        scenario.fail_on_infeasible = true;

    const netsim::SimulationResult result = netsim::run_simulation(scenario);
    const fs::path dir = resolve_out_dir(out_flag);
    write_file(dir / "summary.json", netsim::metrics_to_json(result));
    if (format != "json") {
        std::ofstream metrics(dir / "metrics.csv");
        netsim::write_link_metrics_csv(metrics, result);
        std::ofstream rates(dir / "rate_changes.csv");
        netsim::write_rate_changes_csv(rates, result);
    }
    std::cout << "seed " << result.seed << "\n";

    switch (result.status) {
    case netsim::RunStatus::Ok:
        note("simulation complete, artifacts in " + dir.string());
        return 0;
    case netsim::RunStatus::InfeasibleInitial:
        std::cerr << "infeasible: " << result.detail << "\n";
        return 2;
    case netsim::RunStatus::InfeasibleAborted:
        std::cerr << "aborted: " << result.detail << "\n";
        return 3;
    }
    return 1;
}

int cmd_snr_bench(std::uint64_t seed, int captures, const std::string& out_flag)
{
    snr::BenchConfig config;
    config.seed = seed;
    if (captures > 0)
        config.captures_per_point = captures;
    const std::vector<snr::BenchPoint> points = snr::estimator_bench(config);
    const fs::path dir = resolve_out_dir(out_flag);
    std::ofstream csv(dir / "snr_bench.csv");
    snr::write_bench_csv(csv, points);
    note("bench written to " + (dir / "snr_bench.csv").string());
    return 0;
}

int cmd_rate_table(const std::string& table_path)
{
    const phyrate::RateTable table =
        table_path.empty() ? phyrate::RateTable::defaults()
                           : phyrate::RateTable::from_json(read_file(table_path));
    std::cout << "rate_mbps,snr_threshold_db,slot_length_us,atomic_slot_usage\n";
    for (const phyrate::RateEntry& e : table.entries())
        std::cout << e.rate_mbps << "," << e.snr_threshold_db << ","
                  << e.slot_length_us << "," << e.atomic_slot_usage << "\n";
    return 0;
}

int cmd_export_regs(const std::string& timelines_path,
                    const std::string& scenario_path, const std::string& out_flag)
{
    const std::vector<core::Timeline> timelines =
        core::timelines_from_json(read_file(timelines_path));
    core::SuperframeConfig superframe;
    if (!scenario_path.empty())
        superframe = netsim::load_scenario(scenario_path).superframe;
    const fs::path dir = resolve_out_dir(out_flag);
    write_register_images(timelines, superframe, dir);
    note("register images written to " + dir.string());
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{
        "TDMA wireless schedule and simulation toolkit.\n"
        "Environment: SRTW_OUT_DIR sets the output directory when --out is\n"
        "absent; SRTW_LOG_LEVEL sets stderr verbosity (0 silent, 1 normal)."};
    app.require_subcommand(1);

    std::string scenario_path, timelines_path, config_path, table_path;
    std::string out_dir, format = "csv", solver = "hts";
    std::optional<std::uint64_t> seed;
    int jobs = 0, captures = 0;
    bool exact = false, fail_on_infeasible = false;

    CLI::App* schedule = app.add_subcommand(
        "schedule", "Build and verify a static schedule for a scenario");
    schedule->add_option("--scenario", scenario_path, "scenario JSON path")
        ->required();
    schedule->add_option("--solver", solver, "hts, edf or exact")
        ->check(CLI::IsMember({"hts", "edf", "exact"}));
    schedule->add_option("--seed", seed, "seed override");
    schedule->add_option("--out", out_dir, "output directory");

    CLI::App* verify = app.add_subcommand(
        "verify", "Check a timeline document against its scenario");
    verify->add_option("--scenario", scenario_path, "scenario JSON path")
        ->required();
    verify->add_option("--timelines", timelines_path, "timeline JSON path")
        ->required();

    CLI::App* sweep =
        app.add_subcommand("sweep", "Schedulability sweep over random task sets");
    sweep->add_option("--config", config_path, "sweep config JSON path");
    sweep->add_option("--seed", seed, "seed override");
    sweep->add_option("--jobs", jobs, "parallel workers");
    sweep->add_flag("--exact", exact, "also run the exact oracle");
    sweep->add_option("--out", out_dir, "output directory");

    CLI::App* simulate =
        app.add_subcommand("simulate", "Run the slot-granularity simulator");
    simulate->add_option("--scenario", scenario_path, "scenario JSON path")
        ->required();
    simulate->add_option("--seed", seed, "seed override");
    simulate->add_flag("--fail-on-infeasible", fail_on_infeasible,
                       "abort when a reschedule becomes infeasible");
    simulate->add_option("--out", out_dir, "output directory");
    simulate->add_option("--format", format, "csv (default, plus summary) or json")
        ->check(CLI::IsMember({"csv", "json"}));

    CLI::App* bench =
        app.add_subcommand("snr-bench", "Monte Carlo SNR estimator comparison");
    bench->add_option("--seed", seed, "seed override");
    bench->add_option("--captures", captures, "captures per SNR point");
    bench->add_option("--out", out_dir, "output directory");

    CLI::App* rate_table =
        app.add_subcommand("rate-table", "Print the active rate mapping");
    rate_table->add_option("--table", table_path, "rate table JSON path");

    CLI::App* export_regs = app.add_subcommand(
        "export-regs", "Pack a timeline document into schedule registers");
    export_regs->add_option("--timelines", timelines_path, "timeline JSON path")
        ->required();
    export_regs->add_option("--scenario", scenario_path,
                            "scenario JSON path for superframe layout");
    export_regs->add_option("--out", out_dir, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (schedule->parsed())
            return cmd_schedule(scenario_path, solver, seed, out_dir);
        if (verify->parsed())
            return cmd_verify(scenario_path, timelines_path);
        if (sweep->parsed())
            return cmd_sweep(config_path, seed, jobs, exact, out_dir);
        if (simulate->parsed())
            return cmd_simulate(scenario_path, seed, fail_on_infeasible, out_dir,
                                format);
        if (bench->parsed())
            return cmd_snr_bench(seed.value_or(12345), captures, out_dir);
        if (rate_table->parsed())
            return cmd_rate_table(table_path);
        if (export_regs->parsed())
            return cmd_export_regs(timelines_path, scenario_path, out_dir);
    } catch (const std::exception& e) {
        std::cerr << "srtw: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
