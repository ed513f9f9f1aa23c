#include "srtwifi/core/export.hpp"

#include <json.hpp>

#include <cstring>
#include <iomanip>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace srtwifi::core {

void write_gantt_csv(std::ostream& out, const std::vector<Timeline>& timelines)
{
    out << "channel,slot_start,slot_len,cluster,task,instance,unit\n";
    for (const Timeline& tl : timelines)
        for (const TransmissionUnit& u : tl.units) {
            if (!u.scheduled())
                continue;
            out << tl.channel << ',' << u.start << ',' << u.size << ','
                << u.cluster_id << ',' << u.task_id << ',' << u.instance << ','
                << u.unit << '\n';
        }
}

namespace {

nlohmann::json unit_to_json(const TransmissionUnit& u)
{
    return {{"task_index", u.task_index}, {"cluster", u.cluster_id},
            {"task", u.task_id},          {"instance", u.instance},
            {"unit", u.unit},             {"size", u.size},
            {"release", u.release},       {"static_release", u.static_release},
            {"deadline", u.deadline},     {"start", u.start},
            {"finish", u.finish}};
}

TransmissionUnit unit_from_json(const nlohmann::json& j)
{
    TransmissionUnit u;
    u.task_index = j.at("task_index").get<int>();
    u.cluster_id = j.at("cluster").get<int>();
    u.task_id = j.at("task").get<int>();
    u.instance = j.at("instance").get<int>();
    u.unit = j.at("unit").get<int>();
    u.size = j.at("size").get<int>();
    u.release = j.at("release").get<Slot>();
    u.static_release = j.at("static_release").get<Slot>();
    u.deadline = j.at("deadline").get<Slot>();
    u.start = j.at("start").get<Slot>();
    u.finish = j.at("finish").get<Slot>();
    return u;
}

}  // namespace

std::string timelines_to_json(const std::vector<Timeline>& timelines)
{
    nlohmann::json doc = nlohmann::json::array();
    for (const Timeline& tl : timelines) {
        nlohmann::json units = nlohmann::json::array();
        for (const TransmissionUnit& u : tl.units)
            units.push_back(unit_to_json(u));
        doc.push_back({{"channel", tl.channel},
                       {"horizon", tl.horizon},
                       {"units", std::move(units)}});
    }
    return doc.dump(2) + "\n";
}

std::vector<Timeline> timelines_from_json(const std::string& text)
{
    nlohmann::json doc = nlohmann::json::parse(text);
    std::vector<Timeline> timelines;
    for (const auto& jtl : doc) {
        Timeline tl(jtl.at("channel").get<int>(), jtl.at("horizon").get<Slot>());
        for (const auto& ju : jtl.at("units"))
            tl.units.push_back(unit_from_json(ju));
        for (std::size_t i = 0; i < tl.units.size(); ++i)
            if (tl.units[i].scheduled())
                tl.place(static_cast<int>(i));
        timelines.push_back(std::move(tl));
    }
    return timelines;
}

void write_register_image_binary(std::ostream& out, const RegisterImage& image)
{
    for (std::uint32_t word : image) {
        unsigned char bytes[4] = {
            static_cast<unsigned char>(word & 0xFF),
            static_cast<unsigned char>((word >> 8) & 0xFF),
            static_cast<unsigned char>((word >> 16) & 0xFF),
            static_cast<unsigned char>((word >> 24) & 0xFF)};
        out.write(reinterpret_cast<const char*>(bytes), 4);
    }
}

RegisterImage read_register_image_binary(std::istream& in)
{
    RegisterImage image{};
    for (std::uint32_t& word : image) {
        unsigned char bytes[4];
        if (!in.read(reinterpret_cast<char*>(bytes), 4))
            throw std::runtime_error("register image: truncated input");
        word = static_cast<std::uint32_t>(bytes[0]) |
               (static_cast<std::uint32_t>(bytes[1]) << 8) |
               (static_cast<std::uint32_t>(bytes[2]) << 16) |
               (static_cast<std::uint32_t>(bytes[3]) << 24);
    }
    return image;
}

void write_register_image_hex(std::ostream& out, const RegisterImage& image)
{
    for (std::uint32_t word : image)
        out << "0x" << std::hex << std::uppercase << std::setw(8)
            << std::setfill('0') << word << std::dec << '\n';
}

std::vector<int> slot_codes_from_timeline(const Timeline& timeline,
                                          const SuperframeConfig& superframe)
{
    std::vector<int> codes(static_cast<std::size_t>(timeline.horizon), kIdleCode);

    std::map<std::pair<int, int>, int> queue_of_link;
    auto data_queue = [&queue_of_link](int cluster, int task) {
        auto [it, inserted] = queue_of_link.try_emplace(
            {cluster, task}, 2 + static_cast<int>(queue_of_link.size()) % 13);
        return it->second;
    };

    for (Slot c = 0; c < timeline.horizon; ++c) {
        const int idx = timeline.cells[static_cast<std::size_t>(c)];
        if (idx >= 0) {
            const TransmissionUnit& u = timeline.units[static_cast<std::size_t>(idx)];
            codes[static_cast<std::size_t>(c)] = data_queue(u.cluster_id, u.task_id);
        }
    }
    for (int s : superframe.beacon_slots)
        if (s < timeline.horizon)
            codes[static_cast<std::size_t>(s)] = kBeaconQueue;
    for (int s : superframe.shared_slots)
        if (s < timeline.horizon)
            codes[static_cast<std::size_t>(s)] = kSharedQueue;
    return codes;
}

}  // namespace srtwifi::core
