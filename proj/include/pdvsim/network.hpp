#ifndef PDVSIM_NETWORK_HPP
#define PDVSIM_NETWORK_HPP

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pdvsim/diffserv.hpp"
#include "pdvsim/engine.hpp"
#include "pdvsim/metrics.hpp"
#include "pdvsim/mpls.hpp"
#include "pdvsim/netmodel.hpp"
#include "pdvsim/report.hpp"
#include "pdvsim/routing.hpp"
#include "pdvsim/rng.hpp"
#include "pdvsim/scenario.hpp"
#include "pdvsim/traffic.hpp"

namespace pdvsim {

extern const char* const kBuildId;

struct RunOptions {
    std::optional<std::uint64_t> seed;
    std::optional<double> duration_s;
    bool trace_paths = false;  // per-packet hop timestamps (tests)
    bool meter_trunks = true;
    // test hook: observes every packet delivered to its sink
    std::function<void(const Packet&, simtime_ns)> delivery_hook;
};

// One scenario run: builds the node/egress runtime from the spec, drives
// the event kernel to the horizon and assembles the report. Single
// threaded; independent instances share nothing.
class Network {
  public:
    explicit Network(ScenarioSpec spec, RunOptions opts = {});

    RunReport run();

    // test hook: hand a packet to a node as if it had just arrived there
    void inject(int node, Packet&& p, int in_node);

    const Topology& topology() const { return spec_.topology; }
    const ForwardingTables& forwarding() const { return spf_; }

  private:
    struct FlowInfo {
        bool voice = false;
        Dscp dscp = Dscp::BE; // reporting class of the flow
        std::int16_t src = -1;
        std::int16_t dst = -1;
        std::uint32_t src_addr = 0;
        Transport transport = Transport::Udp;
        double codec_delays_s = 0.0;
        std::uint32_t next_seq = 0;
    };

    struct VideoFlowState {
        const VideoAppSpec* spec = nullptr;
        simtime_ns start = 0;
        std::uint64_t frame = 0;
        std::unique_ptr<RngStream> rng; // drives the interarrival draw
    };

    struct VoiceFlowState {
        const VoiceAppSpec* spec = nullptr;
        int payload_bytes = 0;
        simtime_ns sample_interval = 0;
        std::unique_ptr<RngStream> rng;
        std::uint32_t next_app_seq = 0;
    };

    struct EgressState {
        int from = -1;
        int to = -1;
        int link = -1;
        int l2_bytes = 0;
        LinkTx tx;
        std::variant<FifoQueue, CbwfqScheduler> queue;
        bool transmitting = false;
        double busy_window_s = 0.0;
        double bits_total = 0.0;

        EgressState(double rate, double prop) : tx(rate, prop), queue(FifoQueue(500)) {}
    };

    void build_egresses();
    void build_te();
    void build_flows();
    void start_sources();

    void emit_video_frame(int flow_idx, int state_idx);
    void voice_talk_start(int flow_idx, int state_idx);
    void voice_emit(int flow_idx, int state_idx, simtime_ns talk_end, int packets_left);
    void source_packet(int flow_idx, int payload, std::uint32_t app_seq, std::uint8_t seg_index,
                       std::uint8_t seg_count);

    void deliver_or_forward(int node, Packet&& p, int in_node);
    void forward(int node, Packet&& p, int in_node);
    void deliver(Packet&& p);
    void send_to(int from, int to, Packet&& p);
    void try_transmit(int egress_idx);
    Dscp scheduling_class(const Packet& p) const;
    bool access_side(int node) const;

    ScenarioSpec spec_;
    RunOptions opts_;
    std::uint64_t seed_;
    double duration_s_;
    simtime_ns window_start_ = 0;
    simtime_ns horizon_ = 0;

    Simulator sim_;
    ForwardingTables spf_;
    std::optional<LabelTables> labels_;

    std::vector<EgressState> egress_;
    std::map<std::pair<int, int>, int> egress_index_;

    std::vector<TokenBucketMeter> meters_;
    std::map<std::string, int> meter_index_;

    std::vector<FlowInfo> flows_;
    std::vector<VideoFlowState> video_states_;
    std::vector<VoiceFlowState> voice_states_;

    std::map<Dscp, DelaySeries> series_;
    std::map<Dscp, ClassCounts> counts_;
    std::map<Dscp, double> offered_bytes_;
    std::uint64_t in_transit_ = 0;
};

RunReport run_scenario(const ScenarioSpec& spec, RunOptions opts = {});

} // namespace pdvsim

#endif
