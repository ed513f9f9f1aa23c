#include "srtwifi/netsim/queueing.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

namespace srtwifi::netsim {

using core::Slot;

namespace {

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

struct Packet {
    int link = 0;
    Slot generated = 0;
};

}  // namespace

QueueDelayResult queue_delay_experiment(const QueueDelayConfig& config)
{
    if (config.link_count <= 0 || config.queue_count <= 0)
        throw std::invalid_argument("queue experiment: counts must be positive");

    const int n = config.link_count;
    const Slot frame = n;  // one slot per link per superframe

    // Random slot permutation and per-link arrival offsets, fixed for the
    // whole run.
    std::uint64_t state = config.seed;
    auto next = [&] { return state = splitmix64(state); };
    std::vector<int> slot_owner(static_cast<std::size_t>(n));
    std::iota(slot_owner.begin(), slot_owner.end(), 0);
    for (int i = n - 1; i > 0; --i)
        std::swap(slot_owner[static_cast<std::size_t>(i)],
                  slot_owner[next() % static_cast<std::uint64_t>(i + 1)]);
    std::vector<Slot> offset(static_cast<std::size_t>(n));
    for (Slot& o : offset)
        o = static_cast<Slot>(next() % static_cast<std::uint64_t>(frame));

    const bool assigned = config.policy == QueuePolicyConfig::Policy::Assigned;
    std::vector<std::deque<Packet>> queues(
        assigned ? static_cast<std::size_t>(config.queue_count) : 0);
    std::vector<std::optional<Packet>> buffer(
        assigned ? 0 : static_cast<std::size_t>(config.queue_count));
    std::deque<Packet> backlog;  // dynamic policy overflow, never dropped

    QueueDelayResult result;
    double delay_sum = 0;
    std::int64_t queued = 0;

    auto admit = [&](Packet p) {
        ++queued;
        if (assigned) {
            queues[static_cast<std::size_t>(p.link % config.queue_count)].push_back(p);
            return;
        }
        for (auto& slot : buffer)
            if (!slot) {
                slot = p;
                return;
            }
        backlog.push_back(p);
    };

    auto record = [&](const Packet& p, Slot t) {
        --queued;
        result.packets_sent++;
        const Slot d = t - p.generated;
        delay_sum += static_cast<double>(d);
        result.max_delay_slots = std::max(result.max_delay_slots, d);
    };

    for (Slot t = 0; t < config.duration_slots; ++t) {
        const Slot phase = t % frame;
        for (int link = 0; link < n; ++link)
            if (offset[static_cast<std::size_t>(link)] == phase)
                admit({link, t});

        const int owner = slot_owner[static_cast<std::size_t>(phase)];
        if (assigned) {
            auto& q = queues[static_cast<std::size_t>(owner % config.queue_count)];
            // Head-of-line blocking: the slot is wasted unless the head
            // packet belongs to the slot's owner.
            if (!q.empty() && q.front().link == owner) {
                record(q.front(), t);
                q.pop_front();
            }
            continue;
        }

        // Dynamic policy: serve the owner's oldest buffered packet and
        // refill the freed slot from the backlog.
        std::size_t best = buffer.size();
        for (std::size_t i = 0; i < buffer.size(); ++i)
            if (buffer[i] && buffer[i]->link == owner &&
                (best == buffer.size() || buffer[i]->generated < buffer[best]->generated))
                best = i;
        if (best != buffer.size()) {
            record(*buffer[best], t);
            buffer[best].reset();
            if (!backlog.empty()) {
                buffer[best] = backlog.front();
                backlog.pop_front();
            }
        }
    }

    result.packets_pending = queued;
    result.mean_delay_slots =
        result.packets_sent ? delay_sum / static_cast<double>(result.packets_sent) : 0.0;
    return result;
}

}  // namespace srtwifi::netsim
