#include "pdvsim/network.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

namespace pdvsim {

const char* const kBuildId = "pdvsim 0.1.0";

Network::Network(ScenarioSpec spec, RunOptions opts)
    : spec_(std::move(spec)), opts_(std::move(opts)) {
    validate_scenario(spec_);
    seed_ = opts_.seed.value_or(spec_.seed);
    duration_s_ = opts_.duration_s.value_or(spec_.duration_s);
    horizon_ = ns_from_seconds(duration_s_);
    window_start_ = ns_from_seconds(std::min(spec_.util_window_start_s, duration_s_));
    spf_ = compute_spf(spec_.topology, spec_.tie_break);
    build_egresses();
    build_te();
    build_flows();
    start_sources();
}

void Network::build_egresses() {
    const Topology& topo = spec_.topology;
    // policy attachment lookup: (node, neighbor) egresses carrying CBWFQ
    auto attached = [&](int from, int to) {
        if (!spec_.uses_policy()) return false;
        for (const auto& a : spec_.policy.attachments) {
            if (topo.node_index(a.node) != from) continue;
            if (a.neighbor == "*" || topo.node_index(a.neighbor) == to) return true;
        }
        return false;
    };

    for (std::size_t l = 0; l < topo.links.size(); ++l) {
        const LinkSpec& link = topo.links[l];
        int a = topo.node_index(link.node_a);
        int b = topo.node_index(link.node_b);
        for (auto [from, to] : {std::pair{a, b}, std::pair{b, a}}) {
            EgressState e(link.rate_bps, link.prop_delay_s);
            e.from = from;
            e.to = to;
            e.link = static_cast<int>(l);
            e.l2_bytes = link.l2_overhead_bytes;
            if (attached(from, to)) {
                RngStream rng(seed_, "wred/" + topo.nodes[from].id + "->" + topo.nodes[to].id);
                e.queue = CbwfqScheduler(spec_.policy.classes, rng);
            } else {
                e.queue = FifoQueue(spec_.fifo_queue_limit);
            }
            egress_index_[{from, to}] = static_cast<int>(egress_.size());
            egress_.push_back(std::move(e));
        }
    }
}

void Network::build_te() {
    if (!spec_.te) return;
    labels_ = build_label_tables(spec_.topology, spec_.te->lsps);
    for (const auto& t : spec_.te->trunks) {
        meter_index_[t.name] = static_cast<int>(meters_.size());
        meters_.push_back(TokenBucketMeter(t));
    }
}

void Network::build_flows() {
    const Topology& topo = spec_.topology;
    for (const auto& v : spec_.apps.video) {
        FlowInfo f;
        f.voice = false;
        f.dscp = v.dscp;
        f.src = static_cast<std::int16_t>(topo.node_index(v.src));
        f.dst = static_cast<std::int16_t>(topo.node_index(v.dst));
        f.src_addr = topo.nodes[f.src].address;
        f.transport = v.transport;
        flows_.push_back(f);

        VideoFlowState st;
        st.spec = &v;
        st.start = ns_from_seconds(spec_.apps.profile.start_s + v.start_offset_s);
        st.rng = std::make_unique<RngStream>(seed_, "video/" + v.name);
        video_states_.push_back(std::move(st));
    }
    for (const auto& v : spec_.apps.voice) {
        FlowInfo f;
        f.voice = true;
        f.dscp = Dscp::EF;
        f.src = static_cast<std::int16_t>(topo.node_index(v.src));
        f.dst = static_cast<std::int16_t>(topo.node_index(v.dst));
        f.src_addr = topo.nodes[f.src].address;
        f.transport = v.transport;
        f.codec_delays_s = v.compression_delay_s + v.decompression_delay_s;
        flows_.push_back(f);

        VoiceFlowState st;
        st.spec = &v;
        auto pk = voice_packetization(v.codec_rate_bps, v.sample_interval_s);
        st.payload_bytes = pk.payload_bytes;
        st.sample_interval = ns_from_seconds(v.sample_interval_s);
        st.rng = std::make_unique<RngStream>(seed_, "voice/" + v.name);
        voice_states_.push_back(std::move(st));
    }
    for (const auto& f : flows_) {
        counts_[f.dscp];
        series_[f.dscp];
        offered_bytes_[f.dscp];
    }
}

void Network::start_sources() {
    for (std::size_t i = 0; i < video_states_.size(); ++i) {
        int flow_idx = static_cast<int>(i);
        sim_.schedule(video_states_[i].start,
                      [this, flow_idx, i] { emit_video_frame(flow_idx, static_cast<int>(i)); });
    }
    int voice_flow_base = static_cast<int>(video_states_.size());
    for (std::size_t i = 0; i < voice_states_.size(); ++i) {
        int flow_idx = voice_flow_base + static_cast<int>(i);
        simtime_ns start =
            ns_from_seconds(spec_.apps.profile.start_s + voice_states_[i].spec->start_offset_s);
        sim_.schedule(start,
                      [this, flow_idx, i] { voice_talk_start(flow_idx, static_cast<int>(i)); });
    }
}

void Network::emit_video_frame(int flow_idx, int state_idx) {
    VideoFlowState& st = video_states_[state_idx];
    const VideoAppSpec& app = *st.spec;

    if (sim_.now() >= window_start_ && sim_.now() <= horizon_)
        offered_bytes_[app.dscp] += app.frame_bytes;

    auto sizes = segment(app.frame_bytes, spec_.apps.max_segment_bytes);
    auto app_seq = static_cast<std::uint32_t>(st.frame);
    for (std::size_t s = 0; s < sizes.size(); ++s)
        source_packet(flow_idx, sizes[s], app_seq, static_cast<std::uint8_t>(s),
                      static_cast<std::uint8_t>(sizes.size()));

    ++st.frame;
    simtime_ns next;
    if (spec_.apps.video_clock == FrameClock::Constant)
        next = st.start + static_cast<simtime_ns>(std::llround(st.frame * 1e9 / app.frame_rate));
    else
        next = sim_.now() + ns_from_seconds(st.rng->exponential(1.0 / app.frame_rate));
    if (next <= horizon_)
        sim_.schedule(next, [this, flow_idx, state_idx] { emit_video_frame(flow_idx, state_idx); });
}

void Network::voice_talk_start(int flow_idx, int state_idx) {
    VoiceFlowState& st = voice_states_[state_idx];
    double dwell = st.rng->exponential(st.spec->talkspurt_mean_s);
    simtime_ns talk_end = sim_.now() + ns_from_seconds(dwell);
    int packets = static_cast<int>(dwell / st.spec->sample_interval_s) + 1;
    voice_emit(flow_idx, state_idx, talk_end, packets);
}

void Network::voice_emit(int flow_idx, int state_idx, simtime_ns talk_end, int packets_left) {
    VoiceFlowState& st = voice_states_[state_idx];
    if (sim_.now() >= window_start_) offered_bytes_[Dscp::EF] += st.payload_bytes;
    source_packet(flow_idx, st.payload_bytes, st.next_app_seq++, 0, 1);
    if (packets_left > 1) {
        simtime_ns next = sim_.now() + st.sample_interval;
        if (next <= horizon_)
            sim_.schedule(next, [this, flow_idx, state_idx, talk_end, packets_left] {
                voice_emit(flow_idx, state_idx, talk_end, packets_left - 1);
            });
        return;
    }
    // talkspurt over; silence, then the next spurt
    double silence = st.rng->exponential(st.spec->silence_mean_out_s);
    simtime_ns next_talk = std::max(sim_.now(), talk_end) + ns_from_seconds(silence);
    if (next_talk <= horizon_)
        sim_.schedule(next_talk,
                      [this, flow_idx, state_idx] { voice_talk_start(flow_idx, state_idx); });
}

void Network::source_packet(int flow_idx, int payload, std::uint32_t app_seq,
                            std::uint8_t seg_index, std::uint8_t seg_count) {
    FlowInfo& f = flows_[flow_idx];
    Packet p;
    p.flow = static_cast<std::uint32_t>(flow_idx);
    p.dscp = Dscp::BE; // marked at the DS-domain ingress, not at the source
    p.ip_version = static_cast<std::uint8_t>(spec_.ip_version);
    p.transport = f.transport;
    p.src_node = f.src;
    p.dst_node = f.dst;
    p.src_addr = f.src_addr;
    p.seq = f.next_seq++;
    p.app_seq = app_seq;
    p.seg_index = seg_index;
    p.seg_count = seg_count;
    p.payload_bytes = static_cast<std::uint32_t>(payload);
    p.created_at = sim_.now();
    if (opts_.trace_paths) {
        p.trace = std::make_shared<std::vector<HopStamp>>();
        p.stamp(f.src, sim_.now());
    }
    ++counts_[f.dscp].created;
    forward(f.src, std::move(p), -1);
}

bool Network::access_side(int node) const {
    NodeKind k = spec_.topology.nodes[node].kind;
    return k == NodeKind::Workstation || k == NodeKind::Switch;
}

Dscp Network::scheduling_class(const Packet& p) const {
    if (p.labeled() && spec_.te) return spec_.te->exp_map.phb_of(p.label_stack[0].exp);
    return p.dscp;
}

void Network::deliver_or_forward(int node, Packet&& p, int in_node) {
    p.stamp(static_cast<std::int16_t>(node), sim_.now());
    if (node == p.dst_node) {
        deliver(std::move(p));
        return;
    }
    forward(node, std::move(p), in_node);
}

void Network::forward(int node, Packet&& p, int in_node) {
    if (p.labeled()) {
        auto& table = labels_->by_node[node];
        auto it = table.find(p.label_stack[0].label);
        if (it == table.end()) {
            ++counts_[flows_[p.flow].dscp].dropped_nolabel;
            return;
        }
        if (it->second.pop) {
            p.pop_label(); // tail LER: back to plain IP with the original DSCP
        } else {
            p.label_stack[0].label = it->second.out_label;
            if (p.label_stack[0].ttl > 0) --p.label_stack[0].ttl;
            send_to(node, it->second.next_hop, std::move(p));
            return;
        }
    }

    const NodeSpec& here = spec_.topology.nodes[node];
    if (here.kind == NodeKind::EdgeRouter && in_node >= 0 && access_side(in_node)) {
        // DS-domain ingress: classify and mark once
        if (spec_.uses_policy()) p.dscp = classify(p.src_addr, spec_.acl);
        if (spec_.te) {
            const TeBinding* b =
                find_binding(spec_.te->bindings, here.id, p.dscp,
                             spec_.topology.nodes[in_node].id);
            if (b) {
                if (opts_.meter_trunks) {
                    double bits =
                        (p.payload_bytes + header_overhead(p.ip_version, 0, p.transport)) * 8.0;
                    meters_[meter_index_.at(b->trunk)].meter(bits, sim_.now());
                }
                const LabelPush& push = labels_->push_by_node[node].at(b->lsp);
                LabelEntry e;
                e.label = push.label;
                e.exp = spec_.te->exp_map.exp_of(p.dscp);
                p.push_label(e);
                send_to(node, push.next_hop, std::move(p));
                return;
            }
        }
    }

    send_to(node, spf_.next(node, p.dst_node), std::move(p));
}

void Network::deliver(Packet&& p) {
    FlowInfo& f = flows_[p.flow];
    ++counts_[f.dscp].delivered;
    if (opts_.delivery_hook) opts_.delivery_hook(p, sim_.now());

    double owd = one_way_delay_s(p.created_at, sim_.now(), f.codec_delays_s);
    series_[f.dscp].append(seconds_from_ns(sim_.now()), owd);
    ++counts_[f.dscp].samples;
}

void Network::send_to(int from, int to, Packet&& p) {
    int idx = egress_index_.at({from, to});
    EgressState& e = egress_[idx];
    Dscp cls = scheduling_class(p);
    double bits = wire_bytes(p, e.l2_bytes) * 8.0;
    Dscp report_class = flows_[p.flow].dscp;

    EnqueueResult r;
    if (auto* fifo = std::get_if<FifoQueue>(&e.queue))
        r = fifo->enqueue(std::move(p));
    else
        r = std::get<CbwfqScheduler>(e.queue).enqueue(std::move(p), cls, bits);

    if (r == EnqueueResult::DroppedWred)
        ++counts_[report_class].dropped_wred;
    else if (r == EnqueueResult::DroppedTail)
        ++counts_[report_class].dropped_tail;
    else
        try_transmit(idx);
}

void Network::try_transmit(int egress_idx) {
    EgressState& e = egress_[egress_idx];
    if (e.transmitting) return;

    std::optional<Packet> next;
    if (auto* fifo = std::get_if<FifoQueue>(&e.queue))
        next = fifo->dequeue();
    else
        next = std::get<CbwfqScheduler>(e.queue).dequeue();
    if (!next) return;

    e.transmitting = true;
    int bytes = wire_bytes(*next, e.l2_bytes);
    double bits = bytes * 8.0;
    simtime_ns start = sim_.now();
    simtime_ns ser = ns_from_seconds(serialization_delay(bytes, e.tx.rate_bps()));
    simtime_ns lo = std::max(start, window_start_);
    simtime_ns hi = std::min(start + ser, horizon_);
    if (hi > lo) e.busy_window_s += seconds_from_ns(hi - lo);
    e.bits_total += bits;

    int to = e.to;
    int from = e.from;
    ++in_transit_;
    Packet p = std::move(*next);
    e.tx.transmit(sim_, bytes, start, [this, to, from, p = std::move(p)]() mutable {
        --in_transit_;
        deliver_or_forward(to, std::move(p), from);
    });
    sim_.schedule(e.tx.busy_until(), [this, egress_idx] {
        egress_[egress_idx].transmitting = false;
        try_transmit(egress_idx);
    });
}

void Network::inject(int node, Packet&& p, int in_node) {
    deliver_or_forward(node, std::move(p), in_node);
}

RunReport Network::run() {
    auto wall_start = std::chrono::steady_clock::now();
    sim_.run_until(horizon_);

    RunReport r;
    r.scenario = spec_.name;
    r.ip_version = spec_.ip_version;
    r.qos_mode = qos_mode_name(spec_.qos_mode);
    r.seed = seed_;
    r.duration_s = duration_s_;
    r.build = kBuildId;
    r.util_window_start_s = seconds_from_ns(window_start_);
    r.util_window_end_s = duration_s_;
    r.series = std::move(series_);
    r.counts = counts_;

    double window_s = duration_s_ - seconds_from_ns(window_start_);
    for (const auto& [d, bytes] : offered_bytes_)
        r.offered_kbps[d] = window_s > 0 ? bytes * 8.0 / window_s / 1e3 : 0.0;

    for (const auto& e : egress_) {
        LinkUtilization u;
        u.from = spec_.topology.nodes[e.from].id;
        u.to = spec_.topology.nodes[e.to].id;
        u.busy_fraction = window_s > 0 ? e.busy_window_s / window_s : 0.0;
        u.bits_carried = e.bits_total;
        r.utilization.push_back(std::move(u));
    }

    if (spec_.te)
        for (const auto& t : spec_.te->trunks) {
            const TokenBucketMeter& m = meters_[meter_index_.at(t.name)];
            r.trunks.push_back({t.name, m.in_profile_packets, m.out_of_profile_packets});
        }

    std::uint64_t queued = 0;
    for (const auto& e : egress_) {
        if (auto* fifo = std::get_if<FifoQueue>(&e.queue))
            queued += fifo->depth();
        else
            queued += std::get<CbwfqScheduler>(e.queue).depth();
    }
    r.in_flight_observed = queued + in_transit_;

    r.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - wall_start).count();
    return r;
}

RunReport run_scenario(const ScenarioSpec& spec, RunOptions opts) {
    Network net(spec, std::move(opts));
    return net.run();
}

} // namespace pdvsim
