#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "srtwifi/phyrate/airtime.hpp"
#include "srtwifi/phyrate/rate_table.hpp"

using namespace srtwifi::phyrate;

TEST_CASE("frame airtime: OFDM symbol arithmetic")
{
    CHECK(frame_airtime_us(564, 54) == 104);
    CHECK(frame_airtime_us(14, 6) == 44);  // the ACK frame
    CHECK(ndbps_for_rate(54) == 216);
    CHECK_THROWS(ndbps_for_rate(11));  // not an OFDM rate
}

TEST_CASE("slot lengths: 500-byte packet across all eight rates")
{
    const int rates[] = {54, 48, 36, 24, 18, 12, 9, 6};
    const std::int64_t lengths[] = {174, 186, 218, 282, 342, 470, 594, 846};
    const int usages[] = {1, 2, 2, 2, 2, 3, 4, 5};
    for (int i = 0; i < 8; ++i) {
        CHECK(slot_length_us(500, rates[i]) == lengths[i]);
        CHECK(atomic_slot_usage(lengths[i], 174) == usages[i]);
    }
}

TEST_CASE("slot lengths: payload sweep at 54 Mbps")
{
    const int payloads[] = {50, 100, 150, 200, 300, 400, 500};
    const std::int64_t lengths[] = {110, 118, 126, 130, 146, 162, 174};
    const std::int64_t sampling[] = {9090, 8474, 7936, 7692, 6849, 6172, 5747};
    for (int i = 0; i < 7; ++i) {
        CHECK(slot_length_us(payloads[i], 54) == lengths[i]);
        CHECK(sampling_rate_hz(lengths[i]) == sampling[i]);
    }
    CHECK(sampling_rate_hz(1'000'000) == 1);
}

TEST_CASE("atomic slot usage edge cases")
{
    CHECK(atomic_slot_usage(174, 174) == 1);
    CHECK(atomic_slot_usage(175, 174) == 2);
    CHECK(atomic_slot_usage(470, 174) == 3);
}

TEST_CASE("expected throughput for the three measured allocations")
{
    CHECK(expected_throughput_mbps(125, 127, 174, 500) ==
          doctest::Approx(25.52).epsilon(0.0004));
    CHECK(expected_throughput_mbps(60, 127, 174, 500) ==
          doctest::Approx(12.25).epsilon(0.0009));
    CHECK(expected_throughput_mbps(40, 127, 174, 500) ==
          doctest::Approx(8.17).epsilon(0.0013));
}

TEST_CASE("default rate table: thresholds and ordering invariants")
{
    const RateTable table = RateTable::defaults();
    REQUIRE(table.entries().size() == 8);
    const int rates[] = {6, 9, 12, 18, 24, 36, 48, 54};
    const double thresholds[] = {7, 10, 13, 15, 17, 19, 22, 25};
    for (int i = 0; i < 8; ++i) {
        CHECK(table.entries()[static_cast<std::size_t>(i)].rate_mbps == rates[i]);
        CHECK(table.entries()[static_cast<std::size_t>(i)].snr_threshold_db ==
              thresholds[i]);
    }
    for (std::size_t i = 1; i < table.entries().size(); ++i) {
        CHECK(table.entries()[i].snr_threshold_db >
              table.entries()[i - 1].snr_threshold_db);
        CHECK(table.entries()[i].slot_length_us <
              table.entries()[i - 1].slot_length_us);
    }
}

TEST_CASE("rate_for_snr picks the highest cleared threshold")
{
    const RateTable table = RateTable::defaults();
    REQUIRE(table.rate_for_snr(26));
    CHECK(table.rate_for_snr(26)->rate_mbps == 54);
    REQUIRE(table.rate_for_snr(14));
    CHECK(table.rate_for_snr(14)->rate_mbps == 12);
    CHECK_FALSE(table.rate_for_snr(6.9));  // no-link

    // Monotone in SNR.
    int prev = 0;
    for (double snr = 0; snr <= 40; snr += 0.25) {
        const auto e = table.rate_for_snr(snr);
        const int rate = e ? e->rate_mbps : 0;
        CHECK(rate >= prev);
        prev = rate;
    }
}

TEST_CASE("rate table loads from JSON with derived slot lengths")
{
    const RateTable table = RateTable::from_json(
        R"({"entries":[{"rate":6,"threshold":5},{"rate":54,"threshold":20}]})");
    REQUIRE(table.entries().size() == 2);
    CHECK(table.entries()[0].slot_length_us == 846);
    CHECK(table.entries()[1].slot_length_us == 174);
    CHECK(table.rate_for_snr(21)->rate_mbps == 54);
}

TEST_CASE("SnrWindow evicts oldest-first and tracks the minimum")
{
    SnrWindow window(3);
    CHECK(window.empty());
    window.push(20);
    window.push(18);
    window.push(25);
    CHECK(window.full());
    CHECK(window.min() == 18);
    window.push(30);  // evicts 20
    CHECK(window.min() == 18);
    window.push(30);  // evicts 18
    CHECK(window.min() == 25);
}

TEST_CASE("adapt_rate: downgrade to the window minimum's rate")
{
    const RateTable table = RateTable::defaults();
    SnrWindow window(3);
    for (double s : {21.0, 19.0, 23.0})
        window.push(s);
    const auto next = adapt_rate(window, table.entry_for_rate(54), table);
    REQUIRE(next);
    CHECK(next->rate_mbps == 36);  // min 19 clears exactly the 36 Mbps threshold
}

TEST_CASE("adapt_rate: unanimous window upgrades")
{
    const RateTable table = RateTable::defaults();
    SnrWindow window(3);
    for (double s : {26.0, 27.0, 25.0})
        window.push(s);
    const auto next = adapt_rate(window, table.entry_for_rate(36), table);
    REQUIRE(next);
    CHECK(next->rate_mbps == 54);
}

TEST_CASE("adapt_rate: one low sample caps the upgrade")
{
    // Window [26, 24, 27] at 36 Mbps: 24 dB blocks 54 Mbps (threshold 25)
    // but every sample clears 22 dB, so the upgrade stops at 48 Mbps.
    const RateTable table = RateTable::defaults();
    SnrWindow window(3);
    for (double s : {26.0, 24.0, 27.0})
        window.push(s);
    const auto next = adapt_rate(window, table.entry_for_rate(36), table);
    REQUIRE(next);
    CHECK(next->rate_mbps == 48);
}

TEST_CASE("adapt_rate: no-link verdict below the lowest threshold")
{
    const RateTable table = RateTable::defaults();
    SnrWindow window(2);
    window.push(5);
    window.push(6);
    CHECK_FALSE(adapt_rate(window, table.entry_for_rate(6), table));
}

TEST_CASE("adapt_rate trace is step-shaped on a fall-then-rise SNR ramp")
{
    const RateTable table = RateTable::defaults();
    SnrWindow window(5);
    RateEntry current = table.entry_for_rate(54);

    std::vector<double> trace;
    for (double s = 27; s >= 9; s -= 1)
        trace.push_back(s);
    for (double s = 9; s <= 27; s += 1)
        trace.push_back(s);
    // Hold the plateau long enough for the window to become unanimous.
    for (int i = 0; i < 5; ++i)
        trace.push_back(27);

    std::vector<int> rates;
    for (double s : trace) {
        window.push(s);
        const auto next = adapt_rate(window, current, table);
        REQUIRE(next);
        // Downgrades never exceed what the window minimum sustains.
        CHECK(next->snr_threshold_db <= window.min());
        current = *next;
        rates.push_back(current.rate_mbps);
    }
    // Monotone down then monotone up: exactly one direction change.
    int changes = 0;
    for (std::size_t i = 2; i < rates.size(); ++i) {
        const int a = rates[i - 2], b = rates[i - 1], c = rates[i];
        if ((b < a && c > b) || (b > a && c < b))
            ++changes;
    }
    CHECK(changes <= 1);
    CHECK(rates.back() == 54);
}
