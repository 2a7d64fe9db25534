#include <doctest.h>

#include <numeric>
#include <vector>

#include "pdvsim/netmodel.hpp"
#include "pdvsim/rng.hpp"

using namespace pdvsim;

TEST_SUITE("netmodel") {

TEST_CASE("header overhead from the standard encodings") {
    CHECK(header_overhead(4, 0, Transport::RtpOverUdp) == 40);
    CHECK(header_overhead(6, 0, Transport::RtpOverUdp) == 60);
    CHECK(header_overhead(4, 1, Transport::Udp) == 32);
    CHECK(header_overhead(6, 2, Transport::Udp) == 56);
}

TEST_CASE("serialization delay") {
    CHECK(serialization_delay(1500, 4e6) == doctest::Approx(3.0e-3));
    CHECK(serialization_delay(0, 4e6) == 0.0);
    CHECK(serialization_delay(80, 10e6) == doctest::Approx(6.4e-5));
}

TEST_CASE("segmentation splits greedily and preserves totals") {
    CHECK(segment(4000, 1500) == std::vector<int>{1500, 1500, 1000});
    CHECK(segment(1500, 1500) == std::vector<int>{1500});
    CHECK(segment(80, 1500) == std::vector<int>{80});

    RngStream rng(1, "segment");
    for (int trial = 0; trial < 200; ++trial) {
        int total = 1 + static_cast<int>(rng.next_u64() % 20000);
        int max_seg = 1 + static_cast<int>(rng.next_u64() % 3000);
        auto sizes = segment(total, max_seg);
        CHECK(std::accumulate(sizes.begin(), sizes.end(), 0) == total);
        for (std::size_t i = 0; i + 1 < sizes.size(); ++i) CHECK(sizes[i] == max_seg);
        CHECK(sizes.back() <= max_seg);
        CHECK(sizes.back() >= 1);
    }
}

TEST_CASE("back-to-back frames on one link are spaced by serialization") {
    Simulator sim;
    LinkTx link(4e6, 0.0);
    std::vector<simtime_ns> arrivals;
    for (int i = 0; i < 3; ++i)
        link.transmit(sim, 1500, 0, [&] { arrivals.push_back(sim.now()); });
    sim.run_until(ns_from_seconds(1.0));
    REQUIRE(arrivals.size() == 3);
    CHECK(arrivals[1] - arrivals[0] == ns_from_seconds(3.0e-3));
    CHECK(arrivals[2] - arrivals[1] == ns_from_seconds(3.0e-3));
}

TEST_CASE("voice packet serialization matches the header math") {
    // 80 B payload + IPv4/UDP/RTP (40) + 7 B framing on 4 Mbps
    Simulator sim;
    LinkTx v4(4e6, 0.0);
    Packet p;
    p.payload_bytes = 80;
    p.ip_version = 4;
    p.transport = Transport::RtpOverUdp;
    simtime_ns t4 = v4.transmit(sim, wire_bytes(p, 7), 0, [] {});
    CHECK(seconds_from_ns(t4) == doctest::Approx(2.54e-4));

    LinkTx v6(4e6, 0.0);
    p.ip_version = 6;
    simtime_ns t6 = v6.transmit(sim, wire_bytes(p, 7), 0, [] {});
    CHECK(seconds_from_ns(t6) == doctest::Approx(2.94e-4));
}

TEST_CASE("per-link FIFO: arrival order equals departure order") {
    Simulator sim;
    LinkTx link(10e6, 5e-5);
    RngStream rng(3, "fifo");
    std::vector<int> sent, received;
    simtime_ns t = 0;
    for (int i = 0; i < 100; ++i) {
        t += static_cast<simtime_ns>(rng.next_u64() % 200000);
        int bytes = 40 + static_cast<int>(rng.next_u64() % 1500);
        sent.push_back(i);
        link.transmit(sim, bytes, t, [&received, i] { received.push_back(i); });
    }
    sim.run_until(t + ns_from_seconds(1.0));
    CHECK(received == sent);
}

TEST_CASE("a fixed stream is strictly slower over IPv6 than IPv4") {
    // identical payloads and links, only the header size changes
    auto total_delay = [](int ip_version) {
        Simulator sim;
        LinkTx hop1(4e6, 1e-4), hop2(4e6, 1e-4);
        Packet p;
        p.ip_version = static_cast<std::uint8_t>(ip_version);
        p.transport = Transport::Udp;
        simtime_ns last = 0;
        for (int i = 0; i < 20; ++i) {
            p.payload_bytes = 200 + 100 * (i % 5);
            int bytes = wire_bytes(p, 7);
            simtime_ns depart = ns_from_seconds(i * 1e-3);
            hop1.transmit(sim, bytes, depart, [] {});
            simtime_ns mid = hop1.busy_until() + ns_from_seconds(1e-4);
            last = hop2.transmit(sim, bytes, mid, [] {});
        }
        sim.run_until(last + 1);
        return last;
    };
    CHECK(total_delay(6) > total_delay(4));
}

TEST_CASE("label stack keeps exactly one bottom flag") {
    Packet p;
    p.push_label({100, 3, false, 255});
    CHECK(p.label_stack[0].bottom);
    p.push_label({200, 3, false, 255});
    CHECK_FALSE(p.label_stack[0].bottom);
    CHECK(p.label_stack[1].bottom);
    LabelEntry top = p.pop_label();
    CHECK(top.label == 200);
    CHECK(p.label_stack[0].bottom);
    p.pop_label();
    CHECK_FALSE(p.labeled());
    CHECK_THROWS_AS(p.pop_label(), SimError);
}

TEST_CASE("ipv4 parsing round-trips and rejects junk") {
    CHECK(parse_ipv4("192.0.17.1").has_value());
    CHECK(format_ipv4(*parse_ipv4("192.0.17.1")) == "192.0.17.1");
    CHECK_FALSE(parse_ipv4("192.0.17").has_value());
    CHECK_FALSE(parse_ipv4("192.0.17.300").has_value());
    CHECK_FALSE(parse_ipv4("foo").has_value());
}

} // TEST_SUITE
