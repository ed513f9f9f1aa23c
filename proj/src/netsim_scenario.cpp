#include "srtwifi/netsim/scenario.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace srtwifi::netsim {

using nlohmann::json;

double LinkTrace::snr_at(double t_us) const
{
    for (const TraceSegment& seg : segments)
        if (t_us >= seg.start_us && t_us < seg.end_us)
            return seg.snr_db;
    if (!segments.empty())
        return segments.back().snr_db;  // hold the last value past the trace
    throw std::logic_error("empty trace queried");
}

double PdrModelParams::pdr(double snr_db, double rate_threshold_db) const
{
    const double midpoint = rate_threshold_db + midpoint_offset_db;
    return 1.0 / (1.0 + std::exp(-slope_per_db * (snr_db - midpoint)));
}

const LinkTrace* Scenario::trace_for(int cluster_id, int task_id) const
{
    for (const LinkTrace& t : traces)
        if (t.cluster_id == cluster_id && t.task_id == task_id)
            return &t;
    return nullptr;
}

void Scenario::validate() const
{
    superframe.validate();
    if (channel_count < 1)
        throw std::invalid_argument("scenario: channel_count must be >= 1");
    if (payload_bytes <= 0)
        throw std::invalid_argument("scenario: payload_bytes must be positive");
    if (duration_superframes <= 0)
        throw std::invalid_argument("scenario: duration must be positive");
    if (clusters.empty())
        throw std::invalid_argument("scenario: no clusters");
    for (const core::Cluster& c : clusters) {
        if (c.tasks.empty())
            throw std::invalid_argument("scenario: cluster " + std::to_string(c.id) +
                                        " has no tasks");
        for (const core::Task& t : c.tasks) {
            if (t.unit_count <= 0 || t.period <= 0 || t.deadline <= 0)
                throw std::invalid_argument("scenario: malformed task " +
                                            std::to_string(c.id) + "." +
                                            std::to_string(t.task_id));
            if (!trace_for(c.id, t.task_id))
                throw std::invalid_argument("scenario: no trace for link " +
                                            std::to_string(c.id) + "." +
                                            std::to_string(t.task_id));
        }
    }
    for (const LinkTrace& t : traces) {
        if (t.segments.empty())
            throw std::invalid_argument("scenario: empty trace");
        double cursor = 0;
        for (const TraceSegment& seg : t.segments) {
            if (seg.start_us != cursor || seg.end_us <= seg.start_us)
                throw std::invalid_argument("scenario: trace segments must tile "
                                            "[0, end) without gaps");
            cursor = seg.end_us;
        }
    }
    if (adaptation.window == 0 || adaptation.eval_period_superframes <= 0)
        throw std::invalid_argument("scenario: malformed adaptation config");
    if (queues.count <= 0)
        throw std::invalid_argument("scenario: queue count must be positive");
    for (const DeviceClockSpec& c : clocks)
        if (c.level != 1 && c.level != 2)
            throw std::invalid_argument("scenario: clock level must be 1 or 2");
}

namespace {

QueuePolicyConfig::Policy policy_from_string(const std::string& s)
{
    if (s == "assigned")
        return QueuePolicyConfig::Policy::Assigned;
    if (s == "dynamic")
        return QueuePolicyConfig::Policy::Dynamic;
    throw std::invalid_argument("scenario: unknown queue policy '" + s + "'");
}

std::string policy_to_string(QueuePolicyConfig::Policy p)
{
    return p == QueuePolicyConfig::Policy::Assigned ? "assigned" : "dynamic";
}

}  // namespace

Scenario scenario_from_json(const std::string& text)
{
    const json j = json::parse(text);
    Scenario s;

    if (j.contains("superframe")) {
        const json& sf = j.at("superframe");
        s.superframe.slot_count = sf.value("slot_count", s.superframe.slot_count);
        s.superframe.atomic_slot_us =
            sf.value("atomic_slot_us", s.superframe.atomic_slot_us);
        for (int b : sf.value("beacon_slots", std::vector<int>{}))
            s.superframe.beacon_slots.insert(b);
        for (int b : sf.value("shared_slots", std::vector<int>{}))
            s.superframe.shared_slots.insert(b);
    }
    s.channel_count = j.value("channel_count", s.channel_count);
    s.payload_bytes = j.value("payload_bytes", s.payload_bytes);
    s.duration_superframes = j.value("duration_superframes", s.duration_superframes);
    s.fail_on_infeasible = j.value("fail_on_infeasible", s.fail_on_infeasible);
    if (j.contains("seed")) {
        s.seed = j.at("seed").get<std::uint64_t>();
        s.seed_given = true;
    }

    for (const json& jc : j.at("clusters")) {
        core::Cluster cluster;
        cluster.id = jc.at("id").get<int>();
        for (const json& jt : jc.at("tasks")) {
            core::Task t;
            t.cluster_id = cluster.id;
            t.task_id = jt.at("task_id").get<int>();
            t.unit_size = jt.value("unit_size", 0);  // 0: derive from the rate
            t.unit_count = jt.at("unit_count").get<int>();
            t.deadline = jt.at("deadline").get<core::Slot>();
            t.period = jt.at("period").get<core::Slot>();
            cluster.tasks.push_back(t);
        }
        s.clusters.push_back(cluster);
    }

    for (const json& jt : j.value("traces", json::array())) {
        LinkTrace trace;
        trace.cluster_id = jt.at("cluster_id").get<int>();
        trace.task_id = jt.at("task_id").get<int>();
        for (const json& js : jt.at("segments")) {
            TraceSegment seg;
            seg.start_us = js.at("start_us").get<double>();
            seg.end_us = js.at("end_us").get<double>();
            seg.snr_db = js.at("snr_db").get<double>();
            trace.segments.push_back(seg);
        }
        s.traces.push_back(trace);
    }

    if (j.contains("pdr_model")) {
        const json& jp = j.at("pdr_model");
        s.pdr_model.slope_per_db = jp.value("slope_per_db", s.pdr_model.slope_per_db);
        s.pdr_model.midpoint_offset_db =
            jp.value("midpoint_offset_db", s.pdr_model.midpoint_offset_db);
    }
    if (j.contains("adaptation")) {
        const json& ja = j.at("adaptation");
        s.adaptation.enabled = ja.value("enabled", s.adaptation.enabled);
        s.adaptation.window = ja.value("window", s.adaptation.window);
        s.adaptation.eval_period_superframes =
            ja.value("eval_period_superframes", s.adaptation.eval_period_superframes);
    }
    if (j.contains("queues")) {
        const json& jq = j.at("queues");
        s.queues.policy = policy_from_string(jq.value("policy", std::string("assigned")));
        s.queues.count = jq.value("count", s.queues.count);
    }
    for (const json& jc : j.value("clocks", json::array())) {
        DeviceClockSpec clk;
        clk.device = jc.at("device").get<std::string>();
        clk.drift_ppm = jc.at("drift_ppm").get<double>();
        clk.initial_offset_us = jc.value("initial_offset_us", 0.0);
        clk.level = jc.value("level", 1);
        s.clocks.push_back(clk);
    }

    s.validate();
    return s;
}

std::string scenario_to_json(const Scenario& s)
{
    json j;
    j["superframe"] = {{"slot_count", s.superframe.slot_count},
                       {"atomic_slot_us", s.superframe.atomic_slot_us},
                       {"beacon_slots", s.superframe.beacon_slots},
                       {"shared_slots", s.superframe.shared_slots}};
    j["channel_count"] = s.channel_count;
    j["payload_bytes"] = s.payload_bytes;
    j["duration_superframes"] = s.duration_superframes;
    j["fail_on_infeasible"] = s.fail_on_infeasible;
    if (s.seed_given)
        j["seed"] = s.seed;

    j["clusters"] = json::array();
    for (const core::Cluster& c : s.clusters) {
        json jc = {{"id", c.id}, {"tasks", json::array()}};
        for (const core::Task& t : c.tasks) {
            json jt = {{"task_id", t.task_id},
                       {"unit_count", t.unit_count},
                       {"deadline", t.deadline},
                       {"period", t.period}};
            if (t.unit_size > 0)
                jt["unit_size"] = t.unit_size;
            jc["tasks"].push_back(jt);
        }
        j["clusters"].push_back(jc);
    }

    j["traces"] = json::array();
    for (const LinkTrace& t : s.traces) {
        json jt = {{"cluster_id", t.cluster_id},
                   {"task_id", t.task_id},
                   {"segments", json::array()}};
        for (const TraceSegment& seg : t.segments)
            jt["segments"].push_back({{"start_us", seg.start_us},
                                      {"end_us", seg.end_us},
                                      {"snr_db", seg.snr_db}});
        j["traces"].push_back(jt);
    }

    j["pdr_model"] = {{"slope_per_db", s.pdr_model.slope_per_db},
                      {"midpoint_offset_db", s.pdr_model.midpoint_offset_db}};
    j["adaptation"] = {{"enabled", s.adaptation.enabled},
                       {"window", s.adaptation.window},
                       {"eval_period_superframes", s.adaptation.eval_period_superframes}};
    j["queues"] = {{"policy", policy_to_string(s.queues.policy)},
                   {"count", s.queues.count}};
    if (!s.clocks.empty()) {
        j["clocks"] = json::array();
        for (const DeviceClockSpec& c : s.clocks)
            j["clocks"].push_back({{"device", c.device},
                                   {"drift_ppm", c.drift_ppm},
                                   {"initial_offset_us", c.initial_offset_us},
                                   {"level", c.level}});
    }
    return j.dump(2);
}

Scenario load_scenario(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open scenario file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return scenario_from_json(buf.str());
}

}  // namespace srtwifi::netsim
