#include <doctest.h>

#include <map>
#include <set>
#include <vector>

#include "pdvsim/network.hpp"

using namespace pdvsim;

namespace {

RunReport short_run(const std::string& name, double duration, RunOptions opts = {}) {
    ScenarioSpec spec = builtin_scenario(name);
    spec.util_window_start_s = duration / 2;
    opts.duration_s = duration;
    return run_scenario(spec, opts);
}

} // namespace

TEST_SUITE("runs") {

TEST_CASE("identical seeds give identical runs") {
    RunReport a = short_run("scenario1", 200);
    RunReport b = short_run("scenario1", 200);
    REQUIRE(a.series.size() == b.series.size());
    for (const auto& [d, s] : a.series) {
        CHECK(s.owd_s == b.series.at(d).owd_s);
        CHECK(s.arrival_s == b.series.at(d).arrival_s);
    }
    RunOptions other_seed;
    other_seed.seed = 43;
    RunReport c = short_run("scenario1", 200, other_seed);
    CHECK(c.series.at(Dscp::EF).owd_s != a.series.at(Dscp::EF).owd_s);
}

TEST_CASE("packet conservation holds per class and in total") {
    for (const char* name : {"scenario1", "scenario3", "scenario5"}) {
        RunReport r = short_run(name, 220);
        std::uint64_t in_flight_total = 0;
        for (const auto& [d, c] : r.counts) {
            CHECK(c.created >= c.delivered + c.dropped());
            in_flight_total += c.in_flight();
        }
        CHECK(in_flight_total == r.in_flight_observed);
    }
}

TEST_CASE("samples are recorded in arrival order") {
    RunReport r = short_run("scenario3", 200);
    for (const auto& [d, s] : r.series) {
        for (std::size_t i = 1; i < s.arrival_s.size(); ++i)
            REQUIRE(s.arrival_s[i] >= s.arrival_s[i - 1]);
    }
}

TEST_CASE("voice delays include the codec time, video delays do not") {
    RunReport r = short_run("scenario1", 200);
    const DelaySeries& ef = r.series.at(Dscp::EF);
    REQUIRE(ef.size() > 100);
    for (double owd : ef.owd_s) REQUIRE(owd >= 0.04);
    const DelaySeries& af11 = r.series.at(Dscp::AF11);
    REQUIRE(af11.size() > 100);
    int below = 0;
    for (double owd : af11.owd_s)
        if (owd < 0.04) ++below;
    CHECK(below > 0); // uncongested early video beats the codec floor
}

TEST_CASE("marking happens once at the DS-domain ingress") {
    std::map<Dscp, std::set<int>> dscp_seen;
    RunOptions opts;
    opts.delivery_hook = [&](const Packet& p, simtime_ns) {
        dscp_seen[p.dscp].insert(p.ip_version);
    };
    short_run("scenario3", 200, opts);
    // every delivered packet carries its class codepoint, none stayed BE
    CHECK(dscp_seen.count(Dscp::BE) == 0);
    CHECK(dscp_seen.count(Dscp::AF11) == 1);
    CHECK(dscp_seen.count(Dscp::EF) == 1);

    dscp_seen.clear();
    short_run("scenario1", 200, opts);
    // best-effort network: nothing marks
    CHECK(dscp_seen.size() == 1);
    CHECK(dscp_seen.count(Dscp::BE) == 1);
}

TEST_CASE("ipv6 runs carry the codepoint in the same values") {
    std::set<int> versions;
    std::set<Dscp> classes;
    RunOptions opts;
    opts.delivery_hook = [&](const Packet& p, simtime_ns) {
        versions.insert(p.ip_version);
        classes.insert(p.dscp);
    };
    short_run("scenario4", 200, opts);
    CHECK(versions == std::set<int>{6});
    CHECK(classes.count(Dscp::AF41) == 1);
    CHECK(classes.count(Dscp::EF) == 1);
}

TEST_CASE("scenario 5 pins every class to its LSP") {
    const std::map<Dscp, std::vector<std::string>> expected = {
        {Dscp::AF11, {"LER1", "LSR2", "LSR5", "LSR8", "LER2"}},
        {Dscp::AF12, {"LER1", "LSR2", "LSR5", "LSR8", "LER2"}},
        {Dscp::AF13, {"LER1", "LSR4", "LSR6", "LSR9", "LER2"}},
        {Dscp::AF41, {"LER1", "LSR4", "LSR6", "LSR9", "LER2"}},
        {Dscp::AF42, {"LER1", "LSR1", "LSR3", "LSR7", "LER2"}},
        {Dscp::AF43, {"LER1", "LSR1", "LSR3", "LSR7", "LER2"}},
        {Dscp::EF, {"LER1", "LSR1", "LSR3", "LSR7", "LER2"}},
    };

    ScenarioSpec spec = builtin_scenario("scenario5");
    const Topology topo = spec.topology;
    int checked = 0;
    RunOptions opts;
    opts.trace_paths = true;
    opts.duration_s = 160;
    opts.delivery_hook = [&](const Packet& p, simtime_ns) {
        REQUIRE(p.trace);
        REQUIRE_FALSE(p.labeled()); // the tail LER popped the stack
        std::vector<std::string> core;
        bool in_core = false;
        for (const auto& stamp : *p.trace) {
            const std::string& id = topo.nodes[stamp.node].id;
            if (id == "LER1") in_core = true;
            if (in_core) core.push_back(id);
            if (id == "LER2") break;
        }
        REQUIRE(core == expected.at(p.dscp));
        ++checked;
    };
    spec.util_window_start_s = 80;
    run_scenario(spec, opts);
    CHECK(checked > 5000);
}

TEST_CASE("the trunk meter never changes the delivered traffic") {
    RunOptions with, without;
    with.meter_trunks = true;
    without.meter_trunks = false;
    RunReport a = short_run("scenario5", 160, with);
    RunReport b = short_run("scenario5", 160, without);
    for (const auto& [d, c] : a.counts) {
        CHECK(c.delivered == b.counts.at(d).delivered);
        CHECK(c.dropped() == b.counts.at(d).dropped());
    }
    for (const auto& [d, s] : a.series) CHECK(s.owd_s == b.series.at(d).owd_s);
    // metering on: the trunk counters actually counted something
    std::uint64_t metered = 0;
    for (const auto& t : a.trunks) metered += t.in_profile + t.out_of_profile;
    CHECK(metered > 0);
}

TEST_CASE("an unknown label is a counted drop") {
    ScenarioSpec spec = builtin_scenario("scenario5");
    RunOptions opts;
    opts.duration_s = 1;
    Network net(spec, opts);
    Packet p;
    p.flow = 0; // first video flow, class AF11
    p.dst_node = static_cast<std::int16_t>(spec.topology.node_index("VC_Dst1"));
    p.src_node = static_cast<std::int16_t>(spec.topology.node_index("VC_Src1"));
    p.payload_bytes = 100;
    p.push_label({99999, 1, false, 255});
    net.inject(spec.topology.node_index("LSR4"), std::move(p),
               spec.topology.node_index("LER1"));
    RunReport r = net.run();
    CHECK(r.counts.at(Dscp::AF11).dropped_nolabel == 1);
}

TEST_CASE("popping at the tail restores the original codepoint") {
    // inject a labeled packet at the LSP tail and watch it arrive unlabeled
    ScenarioSpec spec = builtin_scenario("scenario5");
    RunOptions opts;
    opts.duration_s = 1;
    std::vector<std::pair<Dscp, bool>> seen;
    opts.delivery_hook = [&](const Packet& p, simtime_ns) {
        seen.push_back({p.dscp, p.labeled()});
    };
    Network net(spec, opts);

    // LSP1_0 tail is LER2; find the label LER2 expects from LSR8
    LabelTables tables = build_label_tables(spec.topology, spec.te->lsps);
    int ler2 = spec.topology.node_index("LER2");
    std::uint32_t tail_label = 0;
    for (const auto& [label, action] : tables.by_node[ler2])
        if (action.pop && action.lsp == "LSP1_0") tail_label = label;
    REQUIRE(tail_label != 0);

    Packet p;
    p.flow = 0;
    p.dscp = Dscp::AF11;
    p.src_node = static_cast<std::int16_t>(spec.topology.node_index("VC_Src1"));
    p.dst_node = static_cast<std::int16_t>(spec.topology.node_index("VC_Dst1"));
    p.payload_bytes = 100;
    p.push_label({tail_label, 1, false, 255});
    net.inject(ler2, std::move(p), spec.topology.node_index("LSR8"));
    net.run();
    REQUIRE(seen.size() == 1);
    CHECK(seen[0].first == Dscp::AF11);
    CHECK_FALSE(seen[0].second);
}

TEST_CASE("offered video rate over a steady window tracks the configured rates") {
    // constant frame clocks make the 60 s window rates exact to well
    // within 1%
    ScenarioSpec spec = builtin_scenario("scenario1");
    spec.apps.video_clock = FrameClock::Constant;
    spec.util_window_start_s = 720.0;
    RunOptions opts;
    opts.duration_s = 780.0; // one 60 s window with all three calls up
    RunReport r = run_scenario(spec, opts);
    const std::map<Dscp, double> expected = {
        {Dscp::AF11, 1760}, {Dscp::AF12, 1320}, {Dscp::AF13, 880},
        {Dscp::AF41, 1540}, {Dscp::AF42, 1100}, {Dscp::AF43, 660},
    };
    for (const auto& [d, kbps] : expected)
        CHECK(r.offered_kbps.at(d) == doctest::Approx(kbps).epsilon(0.01));
}

} // TEST_SUITE

namespace {

// minimal two-workstation scenario for source-level checks
ScenarioSpec mini_video_scenario(int frame_bytes, double fps, double duration) {
    ScenarioSpec spec;
    spec.name = "mini";
    spec.qos_mode = QosMode::BestEffort;
    spec.duration_s = duration;
    spec.util_window_start_s = 0.0;
    spec.topology.nodes = {{"src", NodeKind::Workstation, 1},
                           {"dst", NodeKind::Workstation, 2}};
    spec.topology.links = {{"src", "dst", 4e6, 0.0, 7, 1.0}};
    spec.apps.profile = {"p", 0.0, true, true};
    spec.apps.video_clock = FrameClock::Constant;
    VideoAppSpec v;
    v.name = "call";
    v.dscp = Dscp::AF13;
    v.src = "src";
    v.dst = "dst";
    v.frame_bytes = frame_bytes;
    v.frame_rate = fps;
    v.start_offset_s = 0.0;
    spec.apps.video.push_back(v);
    return spec;
}

} // namespace

TEST_SUITE("runs") {

TEST_CASE("a lone 10-frame call emits one frame every 100 ms, segmented") {
    ScenarioSpec spec = mini_video_scenario(2000, 10, 5.0);
    std::vector<std::pair<simtime_ns, int>> packets; // (created, payload)
    RunOptions opts;
    opts.delivery_hook = [&](const Packet& p, simtime_ns) {
        packets.push_back({p.created_at, static_cast<int>(p.payload_bytes)});
    };
    run_scenario(spec, opts);
    REQUIRE(packets.size() >= 2 * 49);
    // 2000 B per frame splits into 1500 + 500
    for (std::size_t i = 0; i + 1 < packets.size(); i += 2) {
        CHECK(packets[i].second == 1500);
        CHECK(packets[i + 1].second == 500);
        CHECK(packets[i].first == packets[i + 1].first);
        if (i >= 2)
            CHECK(packets[i].first - packets[i - 2].first == ns_from_seconds(0.100));
    }
}

TEST_CASE("link utilization matches the serialization arithmetic") {
    // 100 pps of 92 B payloads: 92 + 28 (IPv4/UDP) + 7 framing = 127 B on
    // the wire, so a 4 Mbps link is busy 100*127*8/4e6 = 2.54% of the time
    ScenarioSpec spec = mini_video_scenario(92, 100, 20.0);
    RunReport r = run_scenario(spec);
    const LinkUtilization* fwd = nullptr;
    for (const auto& u : r.utilization)
        if (u.from == "src") fwd = &u;
    REQUIRE(fwd != nullptr);
    CHECK(fwd->busy_fraction == doctest::Approx(0.0254).epsilon(0.01));
    // reverse direction idle
    for (const auto& u : r.utilization)
        if (u.from == "dst") CHECK(u.busy_fraction == 0.0);
}

TEST_CASE("scenario 5 core load matches the fluid-rate oracle") {
    RunReport r = short_run("scenario5", 1800);
    // wire rates per LSP head link from the configured app rates + headers
    const std::map<std::string, double> expected = {
        {"LSR2", (1806.2 + 1350.8) / 4000.0},          // AF11 + AF12
        {"LSR4", (910.8 + 1586.2) / 4000.0},           // AF13 + AF41
        {"LSR1", (1130.8 + 675.4 + 113.0) / 4000.0},   // AF42 + AF43 + voice
    };
    for (const auto& u : r.utilization) {
        if (u.from != "LER1") continue;
        auto it = expected.find(u.to);
        if (it == expected.end()) continue;
        CHECK(u.busy_fraction == doctest::Approx(it->second).epsilon(0.05));
        CHECK(u.busy_fraction < 0.95);
    }
}

TEST_CASE("EF keeps strict priority inside the MPLS core") {
    // voice shares LSP1_2 with AF42 and AF43; its delay stays at the
    // serialization floor while the video classes queue
    RunReport r = short_run("scenario5", 400);
    auto avg_owd = [&](Dscp d) {
        const auto& s = r.series.at(d).owd_s;
        double sum = 0;
        for (double x : s) sum += x;
        return sum / static_cast<double>(s.size());
    };
    // subtract the 40 ms codec allowance from voice before comparing
    CHECK(avg_owd(Dscp::EF) - 0.04 < avg_owd(Dscp::AF43));
    CHECK(avg_owd(Dscp::EF) - 0.04 < avg_owd(Dscp::AF42));
}

TEST_CASE("MPLS TE lowers every AF class's PDV at full length") {
    ScenarioSpec s3 = builtin_scenario("scenario3");
    ScenarioSpec s5 = builtin_scenario("scenario5");
    RunReport r3 = run_scenario(s3);
    RunReport r5 = run_scenario(s5);
    for (Dscp d : {Dscp::AF11, Dscp::AF12, Dscp::AF13, Dscp::AF41, Dscp::AF42, Dscp::AF43}) {
        CHECK(r5.pdv_summary(d, PdvMode::ConsecutiveAbsolute).avg <
              r3.pdv_summary(d, PdvMode::ConsecutiveAbsolute).avg);
        CHECK(r5.pdv_summary(d, PdvMode::Variance).avg <
              r3.pdv_summary(d, PdvMode::Variance).avg);
    }
}

} // TEST_SUITE
